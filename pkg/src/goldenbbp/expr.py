"""Expression trees for identity sides and formula left-hand values.

Nodes evaluate to FixedReal at a requested precision.  Indices and
exponents may depend affinely on a record's integer parameter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import golden
from .bigfixed import FixedReal, fx_add, fx_arctan, fx_div, fx_log, fx_mul, fx_pi, fx_sqrt
from .errors import DegenerateArgument


@dataclass(frozen=True)
class Affine:
    """const + sum(coef * param) over named integer parameters."""

    const: int = 0
    terms: tuple[tuple[str, int], ...] = ()

    def __call__(self, env: dict[str, int]) -> int:
        return self.const + sum(c * env[n] for n, c in self.terms)


def aff(const: int = 0, **coefs: int) -> Affine:
    return Affine(const, tuple(sorted(coefs.items())))


class Node:
    """Base class; subclasses are frozen dataclasses."""

    __slots__ = ()


@dataclass(frozen=True)
class Rat(Node):
    value: Fraction

    def __init__(self, value):
        object.__setattr__(self, "value", Fraction(value))


@dataclass(frozen=True)
class Pi(Node):
    pass


@dataclass(frozen=True)
class PhiPow(Node):
    exp: Affine


@dataclass(frozen=True)
class Sqrt(Node):
    n: int


@dataclass(frozen=True)
class FibRef(Node):
    idx: Affine


@dataclass(frozen=True)
class LucasRef(Node):
    idx: Affine


@dataclass(frozen=True)
class Arctan(Node):
    arg: Node


@dataclass(frozen=True)
class Log(Node):
    arg: Node


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class Inv(Node):
    arg: Node


@dataclass(frozen=True)
class Mul(Node):
    scalar: Fraction
    arg: Node

    def __init__(self, scalar, arg):
        object.__setattr__(self, "scalar", Fraction(scalar))
        object.__setattr__(self, "arg", arg)


@dataclass(frozen=True)
class Prod(Node):
    args: tuple[Node, ...]


@dataclass(frozen=True)
class Sum(Node):
    args: tuple[Node, ...]


@dataclass(frozen=True)
class AltSign(Node):
    """(-1)^index * arg; index is affine in the parameters."""

    idx: Affine
    arg: Node


@dataclass(frozen=True)
class IdxSum(Node):
    """Finite sum of body over var in [lo, hi]; empty when hi < lo."""

    var: str
    lo: Affine
    hi: Affine
    body: Node


def phi_pow_node(c0: int = 0, **coefs: int) -> PhiPow:
    return PhiPow(aff(c0, **coefs))


def _fold_rational(node: Node, env: dict[str, int]) -> Fraction | None:
    """Exact value of a rational-valued subtree, or None.

    Folding ratios like F_(2n-1)/F_(2n) exactly matters: dividing first and
    multiplying by a huge integer afterwards amplifies truncation error.
    """
    if isinstance(node, Rat):
        return node.value
    if isinstance(node, FibRef):
        return Fraction(golden.fib(node.idx(env)))
    if isinstance(node, LucasRef):
        return Fraction(golden.lucas(node.idx(env)))
    if isinstance(node, Neg):
        v = _fold_rational(node.arg, env)
        return None if v is None else -v
    if isinstance(node, Inv):
        v = _fold_rational(node.arg, env)
        if v is None:
            return None
        if v == 0:
            raise DegenerateArgument("reciprocal of a vanishing sub-expression")
        return 1 / v
    if isinstance(node, Mul):
        v = _fold_rational(node.arg, env)
        return None if v is None else node.scalar * v
    if isinstance(node, (Prod, Sum)):
        acc = Fraction(1) if isinstance(node, Prod) else Fraction(0)
        for a in node.args:
            v = _fold_rational(a, env)
            if v is None:
                return None
            acc = acc * v if isinstance(node, Prod) else acc + v
        return acc
    return None


def eval_expr(node: Node, env: dict[str, int], p: int) -> FixedReal:
    """Evaluate to a FixedReal with absolute error well under 2^(-p + 8)."""
    folded = _fold_rational(node, env)
    if folded is not None:
        return FixedReal.from_fraction(folded, p)
    if isinstance(node, Rat):
        return FixedReal.from_fraction(node.value, p)
    if isinstance(node, Pi):
        return fx_pi(p)
    if isinstance(node, PhiPow):
        return golden.phi_pow(node.exp(env)).embed(p)
    if isinstance(node, Sqrt):
        return fx_sqrt(FixedReal.from_int(node.n, p), p)
    if isinstance(node, FibRef):
        return FixedReal.from_int(golden.fib(node.idx(env)), p)
    if isinstance(node, LucasRef):
        return FixedReal.from_int(golden.lucas(node.idx(env)), p)
    if isinstance(node, Arctan):
        return fx_arctan(eval_expr(node.arg, env, p), p)
    if isinstance(node, Log):
        return fx_log(eval_expr(node.arg, env, p), p)
    if isinstance(node, Neg):
        return -eval_expr(node.arg, env, p)
    if isinstance(node, Inv):
        v = eval_expr(node.arg, env, p)
        if v.is_zero():
            raise DegenerateArgument("reciprocal of a vanishing sub-expression")
        return fx_div(FixedReal.from_int(1, p), v, p)
    if isinstance(node, Mul):
        return fx_mul(FixedReal.from_fraction(node.scalar, p), eval_expr(node.arg, env, p), p)
    if isinstance(node, Prod):
        acc = FixedReal.from_int(1, p)
        for a in node.args:
            acc = fx_mul(acc, eval_expr(a, env, p), p)
        return acc
    if isinstance(node, Sum):
        acc = FixedReal.zero(p)
        for a in node.args:
            acc = fx_add(acc, eval_expr(a, env, p), p)
        return acc
    if isinstance(node, AltSign):
        v = eval_expr(node.arg, env, p)
        return -v if node.idx(env) & 1 else v
    if isinstance(node, IdxSum):
        lo, hi = node.lo(env), node.hi(env)
        acc = FixedReal.zero(p)
        for i in range(lo, hi + 1):
            acc = fx_add(acc, eval_expr(node.body, {**env, node.var: i}, p), p)
        return acc
    raise TypeError(f"unknown node {node!r}")


# -- tiny parser for constant (parameter-free) expressions ----------------
#
# Grammar:  expr   := term (('+'|'-') term)*
#           term   := ['-'] factor ('*' factor)*
#           factor := INT['/'INT] | 'pi' | 'phi'['^'['-']INT]
#                   | 'sqrt'INT | ('arctan'|'log') '(' expr ')' | '(' expr ')'


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[str] = []
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif c.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum()):
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif c in "+-*/^()":
                self.toks.append(c)
                i += 1
            else:
                raise ValueError(f"bad character {c!r} in expression {text!r}")
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        t = self.peek()
        if t is None:
            raise ValueError("unexpected end of expression")
        self.pos += 1
        return t

    def expect(self, t: str) -> None:
        got = self.next()
        if got != t:
            raise ValueError(f"expected {t!r}, got {got!r}")


def _parse_int(tk: _Tokens) -> int:
    neg = False
    if tk.peek() == "-":
        tk.next()
        neg = True
    t = tk.next()
    if not t.isdigit():
        raise ValueError(f"expected integer, got {t!r}")
    return -int(t) if neg else int(t)


def _parse_factor(tk: _Tokens) -> Node:
    t = tk.next()
    if t == "(":
        e = _parse_expr(tk)
        tk.expect(")")
        return e
    if t.isdigit():
        num = int(t)
        if tk.peek() == "/":
            tk.next()
            den = tk.next()
            if not den.isdigit():
                raise ValueError(f"expected integer denominator, got {den!r}")
            return Rat(Fraction(num, int(den)))
        return Rat(num)
    if t == "pi":
        return Pi()
    if t == "phi":
        e = 1
        if tk.peek() == "^":
            tk.next()
            e = _parse_int(tk)
        return PhiPow(aff(e))
    if t.startswith("sqrt") and t[4:].isdigit():
        return Sqrt(int(t[4:]))
    if t == "sqrt":
        tk.expect("(")
        n = _parse_int(tk)
        tk.expect(")")
        return Sqrt(n)
    if t in ("arctan", "log"):
        tk.expect("(")
        e = _parse_expr(tk)
        tk.expect(")")
        return Arctan(e) if t == "arctan" else Log(e)
    raise ValueError(f"unexpected token {t!r}")


def _parse_term(tk: _Tokens) -> Node:
    neg = False
    if tk.peek() == "-":
        tk.next()
        neg = True
    factors = [_parse_factor(tk)]
    while tk.peek() == "*":
        tk.next()
        factors.append(_parse_factor(tk))
    node = factors[0] if len(factors) == 1 else Prod(tuple(factors))
    return Neg(node) if neg else node


def _parse_expr(tk: _Tokens) -> Node:
    terms = [_parse_term(tk)]
    while tk.peek() in ("+", "-"):
        op = tk.next()
        t = _parse_term(tk)
        terms.append(Neg(t) if op == "-" else t)
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def parse_expr(text: str) -> Node:
    tk = _Tokens(text)
    node = _parse_expr(tk)
    if tk.peek() is not None:
        raise ValueError(f"trailing input at {tk.peek()!r} in {text!r}")
    return node
