"""Named formula registry, parsed from the shipped data table at startup."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .bbp import BBPFormula, RealScalar
from .expr import parse_expr

PHINARY_NAMES = (
    "pi-phinary",
    "pi-phinary-12",
    "log-phi",
    "log2-phinary",
    "arctan-inv-phi",
    "sqrt3-arctan-sqrt3over5",
    "sqrt3-arctan-sqrt3-phi3",
    "arctan-inv-sqrt5",
    "arctan-inv-phi3",
    "sqrt2-arctan-sqrt2",
    "27sqrt3-arctan-inv-sqrt15",
    "27sqrt3-arctan-inv-3phi3",
)

BINARY_NAMES = ("arctan-phi", "arctan-phi3", "arctan-phi5", "arctan-phi7", "arctan-phi9")

BASE5_NAMES = (
    "sqrt5-arctan-phi2-plus-phi4",
    "sqrt5-arctan-phi2-plus-phi6",
    "sqrt5-arctan-phi4-minus-phi6",
)


def _parse_block(lines: list[str]) -> BBPFormula:
    fields: dict[str, str] = {}
    for ln in lines:
        key, _, val = ln.partition(":")
        fields[key.strip()] = val.strip()
    return BBPFormula(
        name=fields["name"],
        s=int(fields["s"]),
        base=RealScalar.parse(fields["base"]),
        l=int(fields["length"]),
        a=tuple(RealScalar.parse(tok) for tok in fields["coeffs"].split()),
        prefactor=RealScalar.parse(fields["prefactor"]),
        lhs=parse_expr(fields["lhs"]),
        anchor=fields.get("anchor", ""),
    )


def parse_catalog(text: str) -> dict[str, BBPFormula]:
    out: dict[str, BBPFormula] = {}
    block: list[str] = []
    for raw in text.splitlines() + [""]:
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                f = _parse_block(block)
                if f.name in out:
                    raise ValueError(f"duplicate formula name {f.name!r}")
                out[f.name] = f
                block = []
            continue
        block.append(line)
    return out


@lru_cache(maxsize=None)
def formula_catalog() -> dict[str, BBPFormula]:
    text = resources.files("goldenbbp").joinpath("data/formulas.txt").read_text()
    return parse_catalog(text)


def get_formula(name: str) -> BBPFormula:
    cat = formula_catalog()
    if name not in cat:
        raise KeyError(name)
    return cat[name]


def formula_names() -> list[str]:
    return list(formula_catalog())
