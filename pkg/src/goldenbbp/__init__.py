"""Golden-ratio arctangent identities, BBP-type formulas, and base-phi digits."""

from .bbp import (
    BBPFormula,
    DigitWindow,
    RealScalar,
    bbp_digits,
    bbp_eval,
    digit_eligibility,
    digits_from_value,
    general_arctan_formula,
    linear_combine,
    rebase,
    scale,
    stretch,
)
from .bigfixed import FixedReal, fx_arctan, fx_log, fx_pi, fx_sqrt
from .catalog import (
    IdentityRecord,
    VerifyResult,
    catalog_list,
    get_record,
    verify_all,
    verify_exact_args,
    verify_infinite,
    verify_numeric,
)
from .errors import (
    DegenerateArgument,
    DigitBoundaryRisk,
    IneligibleFormula,
    MalformedDigits,
    OutOfDomain,
    PrecisionTooLow,
)
from .expr import eval_expr, parse_expr
from .formulas import formula_catalog, formula_names, get_formula
from .golden import QPhi, ZPhi, arctan_arg_combine, fib, lucas, phi_pow
from .phinary import GoldenDigits, from_golden_base, to_golden_base, to_golden_base_exact

__version__ = "1.0.0"

__all__ = [
    "BBPFormula", "DigitWindow", "RealScalar", "bbp_digits", "bbp_eval",
    "digit_eligibility", "digits_from_value", "general_arctan_formula",
    "linear_combine", "rebase", "scale", "stretch",
    "FixedReal", "fx_arctan", "fx_log", "fx_pi", "fx_sqrt",
    "IdentityRecord", "VerifyResult", "catalog_list", "get_record",
    "verify_all", "verify_exact_args", "verify_infinite", "verify_numeric",
    "DegenerateArgument", "DigitBoundaryRisk", "IneligibleFormula",
    "MalformedDigits", "OutOfDomain", "PrecisionTooLow",
    "eval_expr", "parse_expr",
    "formula_catalog", "formula_names", "get_formula",
    "QPhi", "ZPhi", "arctan_arg_combine", "fib", "lucas", "phi_pow",
    "GoldenDigits", "from_golden_base", "to_golden_base", "to_golden_base_exact",
]
