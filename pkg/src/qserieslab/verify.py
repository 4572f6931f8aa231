"""Identity registry, checker, and exact linear-relation discovery.

Every checkable equation ships as an IdentityRecord holding two expression
trees.  check() evaluates both sides to at least the requested truncation
order (re-evaluating with a larger working order when an operation such as
inversion or a negative-prefactor product loses range) and compares them
coefficient by coefficient.  A PASS is never reported beyond the certified
order.

discover() finds the exact rational nullspace of the coefficient matrix of a
family of series (rows are exponents in the union of supports, columns are
the series) by fraction-free Gaussian elimination.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional, Sequence, Union

from . import bivariate as bv
from .characters import named_series
from .lattice import ThetaBranch, ThetaSumSpec, theta_sum
from .products import ProductFactor, ProductSpec, expand_product
from .series import (
    InsufficientOrderError,
    Mismatch,
    PuiseuxSeries,
    Rational,
    _frac,
    add,
    compare,
    invert,
    monomial,
    mul,
    sub,
    substitute,
    substitute_signed,
)

__all__ = [
    "Expr",
    "Name",
    "Add",
    "Sub",
    "Mul",
    "Inv",
    "Subst",
    "SubstSigned",
    "Mono",
    "ProductExpr",
    "ThetaExpr",
    "QuintupleLHS",
    "QuintupleRHS",
    "BivariateThetaExpr",
    "Specialize",
    "IdentityRecord",
    "Status",
    "VerificationReport",
    "Relation",
    "UnknownIdentityError",
    "InsufficientRowsError",
    "evaluate",
    "registry",
    "check",
    "check_record",
    "discover",
    "parse_expression",
    "parse_registry_text",
    "load_registry",
]


class UnknownIdentityError(KeyError):
    """No registry record with the requested id."""


class InsufficientRowsError(ValueError):
    """discover() needs more usable coefficient rows than it was given."""


class EvaluationError(ValueError):
    """An expression tree combines values of incompatible kinds."""


# --------------------------------------------------------------------------
# Expression trees
# --------------------------------------------------------------------------


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Name(Expr):
    name: str


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Inv(Expr):
    child: Expr


@dataclass(frozen=True)
class Subst(Expr):
    child: Expr
    ratio: Fraction


@dataclass(frozen=True)
class SubstSigned(Expr):
    child: Expr
    ratio: Fraction


@dataclass(frozen=True)
class Mono(Expr):
    coefficient: Fraction
    exponent: Fraction


@dataclass(frozen=True)
class ProductExpr(Expr):
    spec: ProductSpec


@dataclass(frozen=True)
class ThetaExpr(Expr):
    spec: ThetaSumSpec


@dataclass(frozen=True)
class QuintupleLHS(Expr):
    zmin: int
    zmax: int


@dataclass(frozen=True)
class QuintupleRHS(Expr):
    zmin: int
    zmax: int


@dataclass(frozen=True)
class BivariateThetaExpr(Expr):
    branches: tuple[tuple[int, Fraction, Fraction, Fraction, int, int], ...]
    zmin: int
    zmax: int


@dataclass(frozen=True)
class Specialize(Expr):
    child: Expr
    q_rescale: Fraction
    z_as_q_power: Fraction


Value = Union[PuiseuxSeries, bv.BivariateSeries]


def evaluate(expr: Expr, order: Rational) -> Value:
    """Evaluate an expression tree with all leaves built at the given order.

    The result's own certified order can fall below (inversion, negative
    leading exponents) or rise above the request; callers that need a specific
    certified order should retry with a bumped request (check() does).
    """
    o = _frac(order)
    if isinstance(expr, Name):
        return named_series(expr.name, o)
    if isinstance(expr, (Add, Sub)):
        lhs, rhs = evaluate(expr.left, o), evaluate(expr.right, o)
        scalar = isinstance(lhs, PuiseuxSeries)
        if scalar != isinstance(rhs, PuiseuxSeries):
            raise EvaluationError("cannot mix one- and two-variable series in a sum")
        if scalar:
            return add(lhs, rhs) if isinstance(expr, Add) else sub(lhs, rhs)
        return bv.add_bivariate(lhs, rhs) if isinstance(expr, Add) else bv.sub_bivariate(lhs, rhs)
    if isinstance(expr, Mul):
        lhs, rhs = evaluate(expr.left, o), evaluate(expr.right, o)
        if not (isinstance(lhs, PuiseuxSeries) and isinstance(rhs, PuiseuxSeries)):
            raise EvaluationError("products of two-variable series are not supported")
        return mul(lhs, rhs)
    if isinstance(expr, Inv):
        child = evaluate(expr.child, o)
        if not isinstance(child, PuiseuxSeries):
            raise EvaluationError("cannot invert a two-variable series")
        return invert(child)
    if isinstance(expr, Subst):
        child = evaluate(expr.child, o / expr.ratio)
        return substitute(child, expr.ratio)
    if isinstance(expr, SubstSigned):
        child = evaluate(expr.child, o / expr.ratio)
        return substitute_signed(child, expr.ratio)
    if isinstance(expr, Mono):
        return monomial(expr.coefficient, expr.exponent, expr.exponent.denominator, o)
    if isinstance(expr, ProductExpr):
        return expand_product(expr.spec, o)
    if isinstance(expr, ThetaExpr):
        return theta_sum(expr.spec, o)
    if isinstance(expr, QuintupleLHS):
        return bv.quintuple_lhs(o, (expr.zmin, expr.zmax))
    if isinstance(expr, QuintupleRHS):
        return bv.quintuple_rhs(o, (expr.zmin, expr.zmax))
    if isinstance(expr, BivariateThetaExpr):
        return bv.bivariate_theta(expr.branches, o, (expr.zmin, expr.zmax))
    if isinstance(expr, Specialize):
        child = evaluate(expr.child, o / expr.q_rescale)
        if not isinstance(child, bv.BivariateSeries):
            raise EvaluationError("specialize needs a two-variable series")
        return bv.specialize(child, expr.q_rescale, expr.z_as_q_power)
    raise EvaluationError(f"unknown expression node {expr!r}")


# --------------------------------------------------------------------------
# Records, reports, checking
# --------------------------------------------------------------------------


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INSUFFICIENT_ORDER = "INSUFFICIENT_ORDER"


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: Expr
    rhs: Expr
    default_order: Fraction
    description: str = ""


@dataclass(frozen=True)
class VerificationReport:
    id: str
    status: Status
    order_checked: Fraction
    mismatch: Optional[Mismatch]
    elapsed_ms: int

    def __post_init__(self) -> None:
        if self.status is Status.FAIL and self.mismatch is None:
            raise ValueError("FAIL reports must carry the mismatch")


_MAX_PASSES = 5


def check_record(record: IdentityRecord, order: Optional[Rational] = None) -> VerificationReport:
    """Evaluate both sides and compare below min(order, certified orders)."""
    target = _frac(order) if order is not None else record.default_order
    started = time.perf_counter()
    request = target
    lhs: Value
    rhs: Value
    try:
        for _ in range(_MAX_PASSES):
            lhs = evaluate(record.lhs, request)
            rhs = evaluate(record.rhs, request)
            certified = min(lhs.order, rhs.order)
            if certified >= target:
                break
            request = request + (target - certified)
    except bv.InsufficientWindowError:
        elapsed = int((time.perf_counter() - started) * 1000)
        return VerificationReport(record.id, Status.INSUFFICIENT_ORDER, Fraction(0), None, elapsed)
    checked = min(target, lhs.order, rhs.order)
    if isinstance(lhs, PuiseuxSeries) != isinstance(rhs, PuiseuxSeries):
        raise EvaluationError(f"record {record.id} compares incompatible kinds")
    if isinstance(lhs, PuiseuxSeries):
        mismatch = compare(lhs, rhs, checked)
    else:
        mismatch = bv.compare_bivariate(lhs, rhs, checked)
    elapsed = int((time.perf_counter() - started) * 1000)
    if mismatch is not None:
        return VerificationReport(record.id, Status.FAIL, checked, mismatch, elapsed)
    if checked < target:
        return VerificationReport(record.id, Status.INSUFFICIENT_ORDER, checked, None, elapsed)
    return VerificationReport(record.id, Status.PASS, target, None, elapsed)


def check(
    identity_id: str,
    order: Optional[Rational] = None,
    records: Optional[Sequence[IdentityRecord]] = None,
) -> VerificationReport:
    table = registry() if records is None else records
    for record in table:
        if record.id == identity_id:
            return check_record(record, order)
    raise UnknownIdentityError(identity_id)


# --------------------------------------------------------------------------
# The built-in registry
# --------------------------------------------------------------------------

_DEFAULT_ORDER = Fraction(50)

# Scalar records in the same line format the --registry override accepts.
_BUILTIN_TEXT = """
RR-1     | 50 | chi:2,5,1,1 | rr:1
RR-2     | 50 | chi:2,5,1,2 | rr:2
MIN-1    | 50 | chi:5,6,1,2 + chi:5,6,1,4 | chi:2,5,1,1@q^1/2
MIN-2    | 50 | chi:5,6,2,2 + chi:5,6,2,4 | chi:2,5,1,2@q^1/2
MIN-3    | 50 | chi:5,6,2,1 - chi:5,6,2,5 | chi:2,5,1,1@q^2
MIN-4    | 50 | chi:5,6,1,1 - chi:5,6,1,5 | chi:2,5,1,2@q^2
FKW-50   | 50 | fkw | chi:5,6,1,1 + chi:5,6,1,5
FKW-REMARK | 50 | fkw | w:0
RAMANUJAN  | 50 | a22:basic | chi:2,5,1,2@q^1/3 * chi:2,5,1,2@q^1/2 + chi:2,5,1,1@q^1/3 * chi:2,5,1,1@q^1/2
DECOMP-1.4 | 50 | a22:basic * a22:basic | a22:2L1 * chi:2,5,1,2@q^1/2 + mono(1,-1/6) * a22:L0 * chi:2,5,1,1@q^1/2
SIGNED-1/2-40 | 50 | chi:5,6,2,2 - chi:5,6,2,4 | chi:2,5,1,2@-q^1/2
SIGNED-1/2-8  | 50 | chi:5,6,1,2 - chi:5,6,1,4 | chi:2,5,1,1@-q^1/2
"""

_DESCRIPTIONS = {
    "RR-1": "first Rogers-Ramanujan series: (2,5) vacuum character equals the {2,3} mod 5 product",
    "RR-2": "second Rogers-Ramanujan series: (2,5) character equals the {1,4} mod 5 product",
    "MIN-1": "sum of (5,6) characters at h=1/8,13/8 equals the first (2,5) character at sqrt q",
    "MIN-2": "sum of (5,6) characters at h=1/40,21/40 equals the second (2,5) character at sqrt q",
    "MIN-3": "difference of (5,6) characters at h=2/5,7/5 equals the first (2,5) character at q squared",
    "MIN-4": "difference of (5,6) characters at h=0,3 equals the second (2,5) character at q squared",
    "FKW-50": "lattice-sum vacuum character equals the h=0 plus h=3 (5,6) characters",
    "FKW-REMARK": "lattice-sum vacuum character equals the vacuum W-module character",
    "RAMANUJAN": "sixth-root product character as a bilinear combination of rescaled (2,5) characters",
    "DECOMP-1.4": "square of the basic twisted character against the level-two decomposition, "
    "with the second summand renormalized by q^(-1/6)",
    "QPI": "quintuple product identity, series side against product side",
    "WANTED": "four-branch theta sum equals the Euler function over the half-integer {2,3} mod 5 product",
    "WANTED3": "even/odd reindexing of the quintuple series side as four sums in z^(6m+r)",
    "EASY": "specialized quintuple product side rewritten as the Euler function over a product",
    "SPECIALIZE-L": "q->q^(5/2), z->q^(-3/2) specialization of the quintuple series side, times q^(3/2)",
    "SPECIALIZE-R": "q->q^(5/2), z->q^(-3/2) specialization of the quintuple product side, times q^(3/2)",
    "APPENDIX-DISPLAY": "four-branch theta sum with prefactor over the Euler function equals two (5,6) characters",
    "SIGNED-1/2-40": "signed trace at h=1/40 equals the signed sqrt-q substitution of the second (2,5) character",
    "SIGNED-1/2-8": "signed trace at h=1/8 equals the signed sqrt-q substitution of the first (2,5) character",
}

_WINDOW = (-25, 25)

# Theta data for the four-branch sum: A = 30, branches (B, C, sign).
_WANTED_THETA = ThetaSumSpec(
    Fraction(30),
    (
        ThetaBranch(Fraction(-4), Fraction(0), 1),
        ThetaBranch(Fraction(16), Fraction(2), -1),
        ThetaBranch(Fraction(-14), Fraction(3, 2), 1),
        ThetaBranch(Fraction(26), Fraction(11, 2), -1),
    ),
)

# (q)_inf divided by the product of (1-q^((5n+2)/2)) and (1-q^((5n+3)/2)).
_WANTED_PRODUCT = ProductSpec(
    (
        ProductFactor(1, Fraction(1), Fraction(1), 1),
        ProductFactor(1, Fraction(1), Fraction(5, 2), -1),
        ProductFactor(1, Fraction(3, 2), Fraction(5, 2), -1),
    )
)

# (1+q^(3/2)) prod (1-q^(5n))(1-q^(10n-8))(1-q^(10n-2))(1+q^(5n-3/2))(1+q^(5n+3/2)),
# with the lone (1+q^(3/2)) folded into the (1+q^(5n+3/2)) progression.
_EASY_PRODUCT = ProductSpec(
    (
        ProductFactor(-1, Fraction(3, 2), Fraction(5), 1),
        ProductFactor(1, Fraction(5), Fraction(5), 1),
        ProductFactor(1, Fraction(2), Fraction(10), 1),
        ProductFactor(1, Fraction(8), Fraction(10), 1),
        ProductFactor(-1, Fraction(7, 2), Fraction(5), 1),
    )
)

# Euler function as a plain product, for expression-tree building.
_PHI_PRODUCT = ProductSpec((ProductFactor(1, Fraction(1), Fraction(1), 1),))

_WANTED3_BRANCHES = (
    (1, Fraction(12), Fraction(2), Fraction(0), 6, 1),
    (-1, Fraction(12), Fraction(14), Fraction(4), 6, 4),
    (1, Fraction(12), Fraction(-2), Fraction(0), 6, 0),
    (-1, Fraction(12), Fraction(10), Fraction(2), 6, 3),
)


@lru_cache(maxsize=1)
def registry() -> tuple[IdentityRecord, ...]:
    """The built-in identity table; ids and order are stable across runs."""
    records = list(parse_registry_text(_BUILTIN_TEXT))
    zmin, zmax = _WINDOW
    q_lhs = QuintupleLHS(zmin, zmax)
    q_rhs = QuintupleRHS(zmin, zmax)
    chain_l = Mul(Mono(Fraction(1), Fraction(3, 2)), Specialize(q_lhs, Fraction(5, 2), Fraction(-3, 2)))
    chain_r = Mul(Mono(Fraction(1), Fraction(3, 2)), Specialize(q_rhs, Fraction(5, 2), Fraction(-3, 2)))
    records.extend(
        [
            IdentityRecord("QPI", q_lhs, q_rhs, _DEFAULT_ORDER),
            IdentityRecord("WANTED", ThetaExpr(_WANTED_THETA), ProductExpr(_WANTED_PRODUCT), _DEFAULT_ORDER),
            IdentityRecord("WANTED3", q_lhs, BivariateThetaExpr(_WANTED3_BRANCHES, zmin, zmax), _DEFAULT_ORDER),
            IdentityRecord("EASY", ProductExpr(_EASY_PRODUCT), ProductExpr(_WANTED_PRODUCT), _DEFAULT_ORDER),
            IdentityRecord("SPECIALIZE-L", chain_l, ThetaExpr(_WANTED_THETA), _DEFAULT_ORDER),
            IdentityRecord("SPECIALIZE-R", chain_r, ProductExpr(_EASY_PRODUCT), _DEFAULT_ORDER),
            IdentityRecord(
                "APPENDIX-DISPLAY",
                Mul(
                    Mul(Mono(Fraction(1), Fraction(11, 120)), ThetaExpr(_WANTED_THETA)),
                    Inv(ProductExpr(_PHI_PRODUCT)),
                ),
                parse_expression("chi:5,6,1,2 + chi:5,6,1,4"),
                _DEFAULT_ORDER,
            ),
        ]
    )
    with_notes = [
        IdentityRecord(r.id, r.lhs, r.rhs, r.default_order, _DESCRIPTIONS.get(r.id, r.description))
        for r in records
    ]
    return tuple(with_notes)


# --------------------------------------------------------------------------
# Relation discovery
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """Nullspace vector: sum of coefficients[i] * series[i] vanishes mod the order."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        lead = next((c for c in self.coefficients if c != 0), None)
        if lead is None:
            raise ValueError("a relation must have a nonzero coefficient")
        if lead != 1:
            object.__setattr__(
                self, "coefficients", tuple(c / lead for c in self.coefficients)
            )


def discover(series: Sequence[PuiseuxSeries], order: Rational) -> list[Relation]:
    """Basis of exact rational linear relations among the series, below `order`.

    Rows are the exponents present in any of the series below the order;
    missing coefficients are zero.  An empty list means the sampled rows have
    full column rank.  Evidence is truncation-level only: a relation found at
    order O is not a proven identity.
    """
    o = _frac(order)
    cols = len(series)
    if cols == 0:
        return []
    for s in series:
        if s.order < o:
            raise InsufficientOrderError(
                f"series certified to {s.order} cannot be sampled to {o}"
            )
    exponents = sorted({e for s in series for e, _ in s.terms if e < o})
    if len(exponents) < cols + 8:
        raise InsufficientRowsError(
            f"need at least {cols + 8} coefficient rows, have {len(exponents)}"
        )
    lookups = [dict(s.terms) for s in series]
    matrix: list[list[int]] = []
    for e in exponents:
        row = [lookups[j].get(e, Fraction(0)) for j in range(cols)]
        den = lcm(*(c.denominator for c in row)) if cols > 1 else row[0].denominator
        matrix.append([int(c * den) for c in row])
    echelon, pivot_cols = _bareiss_echelon(matrix, cols)
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    relations = []
    for f in free_cols:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for i in range(len(pivot_cols) - 1, -1, -1):
            p = pivot_cols[i]
            acc = Fraction(0)
            for c in range(p + 1, cols):
                if echelon[i][c]:
                    acc += echelon[i][c] * x[c]
            x[p] = -acc / echelon[i][p]
        relations.append(Relation(tuple(x)))
    return relations


def _bareiss_echelon(matrix: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination; returns pivot rows and pivot columns."""
    rows = [row[:] for row in matrix]
    n = len(rows)
    pivot_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        for i in range(r + 1, n):
            if any(rows[i][c:]):
                factor = rows[i][c]
                rows[i] = [
                    (lead * rows[i][j] - factor * rows[r][j]) // prev for j in range(cols)
                ]
        prev = lead
        pivot_cols.append(c)
        r += 1
        if r == cols:
            break
    return rows[: len(pivot_cols)], pivot_cols


# --------------------------------------------------------------------------
# Registry text format
# --------------------------------------------------------------------------

_NAME_TOKEN = re.compile(
    r"(?:chi:\d+,\d+,\d+,\d+|rr:[12]|a22:(?:basic|2L1|L0)"
    r"|w:(?:tau1/40|tau1/8|2/5|0)|fkw)"
    r"(?:@-?q\^\d+(?:/\d+)?)?"
)
_NUMBER_TOKEN = re.compile(r"-?\d+(?:/\d+)?")
_FUNC_TOKEN = re.compile(r"(subsigned|sub|inv|mono)\s*\(")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NAME_TOKEN.match(text, i)
        if m:
            tokens.append(("name", m.group()))
            i = m.end()
            continue
        m = _FUNC_TOKEN.match(text, i)
        if m:
            tokens.append(("func", m.group(1)))
            tokens.append(("punct", "("))
            i = m.end()
            continue
        m = _NUMBER_TOKEN.match(text, i)
        if m:
            tokens.append(("number", m.group()))
            i = m.end()
            continue
        if ch in "+-*(),":
            tokens.append(("punct", ch))
            i += 1
            continue
        raise ValueError(f"unexpected character {ch!r} in expression: {text!r}")
    return tokens


class _ExprParser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    def parse(self) -> Expr:
        expr = self._expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing tokens after expression: {self.tokens[self.pos:]}")
        return expr

    def _peek(self) -> Optional[tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, kind: str, value: Optional[str] = None) -> str:
        tok = self._peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or kind}, got {tok}")
        self.pos += 1
        return tok[1]

    def _expr(self) -> Expr:
        node = self._term()
        while True:
            tok = self._peek()
            if tok not in (("punct", "+"), ("punct", "-")):
                return node
            self.pos += 1
            rhs = self._term()
            node = Add(node, rhs) if tok[1] == "+" else Sub(node, rhs)

    def _term(self) -> Expr:
        node = self._factor()
        while self._peek() == ("punct", "*"):
            self.pos += 1
            node = Mul(node, self._factor())
        return node

    def _factor(self) -> Expr:
        tok = self._peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        kind, value = tok
        if kind == "name":
            self.pos += 1
            return Name(value)
        if kind == "punct" and value == "(":
            self.pos += 1
            inner = self._expr()
            self._take("punct", ")")
            return inner
        if kind == "func":
            self.pos += 1
            self._take("punct", "(")
            if value == "inv":
                child = self._expr()
                self._take("punct", ")")
                return Inv(child)
            if value in ("sub", "subsigned"):
                child = self._expr()
                self._take("punct", ",")
                ratio = Fraction(self._take("number"))
                self._take("punct", ")")
                return Subst(child, ratio) if value == "sub" else SubstSigned(child, ratio)
            coeff = Fraction(self._take("number"))
            self._take("punct", ",")
            exponent = Fraction(self._take("number"))
            self._take("punct", ")")
            return Mono(coeff, exponent)
        raise ValueError(f"unexpected token {tok} in expression")


def parse_expression(text: str) -> Expr:
    """Parse the line grammar: names, e+e, e-e, e*e, inv(e), sub(e,r),
    subsigned(e,r), mono(c,e), with parentheses allowed."""
    return _ExprParser(text).parse()


def parse_registry_text(text: str) -> list[IdentityRecord]:
    """Parse `id | order | lhs | rhs` lines; blank lines and # comments skipped."""
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'id | order | lhs | rhs', got {raw!r}")
        rec_id, order_text, lhs_text, rhs_text = parts
        if not rec_id:
            raise ValueError(f"line {lineno}: empty identity id")
        records.append(
            IdentityRecord(
                rec_id,
                parse_expression(lhs_text),
                parse_expression(rhs_text),
                Fraction(order_text),
            )
        )
    return records


def load_registry(path: str) -> tuple[IdentityRecord, ...]:
    with open(path, "r", encoding="utf-8") as fh:
        return tuple(parse_registry_text(fh.read()))
