"""Laurent series in z with exact q-series coefficients.

Just enough bivariate machinery to state the quintuple product identity, its
even/odd reindexing, and the substitution step that turns it into a single-
variable theta/product identity: a window of z-layers, each an exact
PuiseuxSeries sharing one q-truncation order.

Layers outside the window are in general unknown (clipped).  To let
`specialize` certify a truncation order anyway, a series may carry quadratic
floor metadata: for layers z^(M*m + r) every q-exponent is at least
A*m^2 + B*m + C, and layers matching no residue are identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .series import (
    InsufficientOrderError,
    Mismatch,
    PuiseuxSeries,
    Rational,
    SeriesError,
    _build,
    _frac,
    compare,
    zero,
)

__all__ = [
    "BivariateSeries",
    "LayerFloorBranch",
    "LayerFloor",
    "COMPLETE_SUPPORT",
    "QUINTUPLE_FLOOR",
    "InsufficientWindowError",
    "bivariate_from_layers",
    "quintuple_lhs",
    "quintuple_rhs",
    "bivariate_theta",
    "add_bivariate",
    "sub_bivariate",
    "compare_bivariate",
    "specialize",
]


class InsufficientWindowError(SeriesError):
    """The z-window cannot certify any truncation order under specialize."""


@dataclass(frozen=True)
class LayerFloorBranch:
    residue: int
    quad: Fraction
    lin: Fraction
    const: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "quad", _frac(self.quad))
        object.__setattr__(self, "lin", _frac(self.lin))
        object.__setattr__(self, "const", _frac(self.const))
        if self.quad <= 0:
            raise ValueError("floor quadratic coefficient must be positive")


@dataclass(frozen=True)
class LayerFloor:
    modulus: int
    branches: tuple[LayerFloorBranch, ...]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("floor modulus must be positive")
        for br in self.branches:
            if not 0 <= br.residue < self.modulus:
                raise ValueError(f"residue {br.residue} outside [0, {self.modulus})")


# No mass at all outside the stored window.
COMPLETE_SUPPORT = LayerFloor(1, ())

# The quintuple identity lives on layers z^(3m) and z^(3m+1) with minimal
# q-exponents 3m^2 - m and 3m^2 + m.
QUINTUPLE_FLOOR = LayerFloor(
    3,
    (
        LayerFloorBranch(0, Fraction(3), Fraction(-1), Fraction(0)),
        LayerFloorBranch(1, Fraction(3), Fraction(1), Fraction(0)),
    ),
)


@dataclass(frozen=True)
class BivariateSeries:
    zmin: int
    zmax: int
    order: Fraction
    layers: tuple[tuple[int, PuiseuxSeries], ...]
    floor: Optional[LayerFloor] = None

    def __post_init__(self) -> None:
        if self.zmin > self.zmax:
            raise ValueError(f"empty z-window [{self.zmin}, {self.zmax}]")
        prev = None
        for k, layer in self.layers:
            if not self.zmin <= k <= self.zmax:
                raise ValueError(f"layer z^{k} outside window [{self.zmin}, {self.zmax}]")
            if prev is not None and k <= prev:
                raise ValueError("z-exponents must be strictly increasing")
            if layer.order != self.order:
                raise ValueError("all layers must share the common truncation order")
            prev = k

    def layer(self, k: int) -> PuiseuxSeries:
        for kk, layer in self.layers:
            if kk == k:
                return layer
        return zero(self.order)


def bivariate_from_layers(
    layers: Mapping[int, PuiseuxSeries],
    window: tuple[int, int],
    order: Rational,
    floor: Optional[LayerFloor] = None,
) -> BivariateSeries:
    o = _frac(order)
    zmin, zmax = window
    packed = []
    for k in sorted(layers):
        if not zmin <= k <= zmax:
            raise ValueError(f"layer z^{k} outside window [{zmin}, {zmax}]")
        ser = layers[k]
        if ser.order != o:
            ser = _build(dict(ser.terms), o) if ser.order > o else _insufficient(ser, o)
        if not ser.is_zero:
            packed.append((k, ser))
    return BivariateSeries(zmin, zmax, o, tuple(packed), floor)


def _insufficient(ser: PuiseuxSeries, o: Fraction) -> PuiseuxSeries:
    raise InsufficientOrderError(f"layer certified to {ser.order} cannot be extended to {o}")


def quintuple_lhs(q_order: Rational, window: tuple[int, int]) -> BivariateSeries:
    """Series side of the quintuple product identity.

    sum over m of (-1)^m q^(3m^2+m) z^(3m+1) + (-1)^m q^(3m^2-m) z^(3m):
    each window layer holds at most one monomial.
    """
    o = _frac(q_order)
    zmin, zmax = window
    layers: dict[int, PuiseuxSeries] = {}
    for k in range(zmin, zmax + 1):
        if k % 3 == 0:
            m = k // 3
            exponent = Fraction(3 * m * m - m)
        elif k % 3 == 1:
            m = (k - 1) // 3
            exponent = Fraction(3 * m * m + m)
        else:
            continue
        if exponent < o:
            coeff = Fraction(1 if m % 2 == 0 else -1)
            layers[k] = PuiseuxSeries(1, o, ((exponent, coeff),))
    return bivariate_from_layers(layers, window, o, QUINTUPLE_FLOOR)


def quintuple_rhs(q_order: Rational, window: tuple[int, int]) -> BivariateSeries:
    """Product side of the quintuple product identity.

    (1+z) * prod over n >= 1 of (1-q^(2n)) (1-q^(4n-2)z^2) (1-q^(4n-2)z^-2)
    (1+q^(2n)z) (1+q^(2n)z^-1), expanded with factors in ascending q-exponent
    order.  Intermediate layers are never clipped (the q-truncation already
    bounds how far mass can travel in z); the final result is clipped to the
    requested window.  The floor metadata is the identity's layer support.
    """
    o = _frac(q_order)
    zmin, zmax = window
    factors: list[tuple[int, int, int]] = []  # (q-exponent, z-shift, sign)
    n = 1
    while 2 * n < o:
        factors.append((2 * n, 0, -1))
        factors.append((2 * n, 1, 1))
        factors.append((2 * n, -1, 1))
        n += 1
    n = 1
    while 4 * n - 2 < o:
        factors.append((4 * n - 2, 2, -1))
        factors.append((4 * n - 2, -2, -1))
        n += 1
    factors.sort()
    state: dict[int, dict[int, int]] = {0: {0: 1}, 1: {0: 1}}  # the (1+z) prefactor
    for q_exp, z_shift, sign in factors:
        addition: dict[int, dict[int, int]] = {}
        for k, layer in state.items():
            target = addition.setdefault(k + z_shift, {})
            for e, c in layer.items():
                if e + q_exp < o:
                    target[e + q_exp] = target.get(e + q_exp, 0) + sign * c
        for k, extra in addition.items():
            layer = state.setdefault(k, {})
            for e, c in extra.items():
                val = layer.get(e, 0) + c
                if val:
                    layer[e] = val
                elif e in layer:
                    del layer[e]
    layers = {
        k: _build({Fraction(e): Fraction(c) for e, c in layer.items()}, o)
        for k, layer in state.items()
        if zmin <= k <= zmax
    }
    return bivariate_from_layers(layers, window, o, QUINTUPLE_FLOOR)


def bivariate_theta(
    branches: Iterable[tuple[int, Rational, Rational, Rational, int, int]],
    q_order: Rational,
    window: tuple[int, int],
) -> BivariateSeries:
    """Z-indexed sums with a z-power linear in the index:

    sum over m of sigma * q^(A m^2 + B m + C) * z^(E m + F)
    for each branch (sigma, A, B, C, E, F) with A > 0 and E > 0.

    When the branches share one z-step E and hit distinct residues mod E, the
    exact per-layer floor is attached automatically.
    """
    o = _frac(q_order)
    zmin, zmax = window
    spread = max(abs(zmin), abs(zmax))
    layers: dict[int, dict[Fraction, Fraction]] = {}
    normalized = []
    for sigma, a, b, c, e_step, f_off in branches:
        a, b, c = _frac(a), _frac(b), _frac(c)
        if a <= 0 or e_step <= 0:
            raise ValueError("need positive quadratic coefficient and z-step")
        normalized.append((sigma, a, b, c, e_step, f_off))
        m_max = (spread + abs(f_off)) // e_step + 1
        for m in range(-m_max, m_max + 1):
            k = e_step * m + f_off
            if not zmin <= k <= zmax:
                continue
            exponent = a * m * m + b * m + c
            if exponent < o:
                layer = layers.setdefault(k, {})
                layer[exponent] = layer.get(exponent, Fraction(0)) + sigma
    floor = _theta_floor(normalized)
    packed = {k: _build(vals, o) for k, vals in layers.items()}
    return bivariate_from_layers(packed, window, o, floor)


def _theta_floor(branches: list) -> Optional[LayerFloor]:
    steps = {e for _, _, _, _, e, _ in branches}
    if len(steps) != 1:
        return None
    step = steps.pop()
    seen: dict[int, LayerFloorBranch] = {}
    for _, a, b, c, _, f_off in branches:
        res = f_off % step
        shift = (f_off - res) // step  # k = step*m + f = step*(m + shift) + res
        floor_branch = LayerFloorBranch(res, a, b - 2 * a * shift, a * shift * shift - b * shift + c)
        if res in seen:
            prev = seen[res]
            # keep the pointwise smaller candidate only if comparable; give up otherwise
            if (prev.quad, prev.lin, prev.const) != (
                floor_branch.quad,
                floor_branch.lin,
                floor_branch.const,
            ):
                return None
        seen[res] = floor_branch
    return LayerFloor(step, tuple(seen[r] for r in sorted(seen)))


def add_bivariate(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    return _combine(a, b, 1)


def sub_bivariate(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    return _combine(a, b, -1)


def _combine(a: BivariateSeries, b: BivariateSeries, sign: int) -> BivariateSeries:
    if (a.zmin, a.zmax) != (b.zmin, b.zmax):
        raise ValueError("bivariate addition requires identical z-windows")
    o = min(a.order, b.order)
    acc: dict[int, dict[Fraction, Fraction]] = {}
    for source, s in ((a, 1), (b, sign)):
        for k, layer in source.layers:
            target = acc.setdefault(k, {})
            for e, c in layer.terms:
                target[e] = target.get(e, Fraction(0)) + s * c
    layers = {k: _build(vals, o) for k, vals in acc.items()}
    floor = a.floor if a.floor == b.floor else None
    return bivariate_from_layers(layers, (a.zmin, a.zmax), o, floor)


def compare_bivariate(a: BivariateSeries, b: BivariateSeries, order: Rational) -> Optional[Mismatch]:
    """Layerwise comparison on the overlap of the two windows, below `order`.

    Returns the first mismatch scanning z ascending, each layer by ascending
    q-exponent; None when everything certified agrees.
    """
    o = _frac(order)
    if o > a.order or o > b.order:
        raise InsufficientOrderError(
            f"compare to {o} exceeds certified orders ({a.order}, {b.order})"
        )
    for k in range(max(a.zmin, b.zmin), min(a.zmax, b.zmax) + 1):
        found = compare(a.layer(k), b.layer(k), o)
        if found is not None:
            return Mismatch(found.exponent, found.lhs, found.rhs, z_exponent=k)
    return None


def specialize(
    b: BivariateSeries,
    q_rescale: Rational,
    z_as_q_power: Rational,
) -> PuiseuxSeries:
    """Substitute q -> q^r and z -> q^w, collapsing layers into one series.

    The certified order is the tighter of two bounds: every included layer is
    exact only below r*O + k*w, and layers excluded by the window could
    contribute exponents as low as their floor allows.  Without floor metadata
    no order can be certified and the call fails.
    """
    r = _frac(q_rescale)
    w = _frac(z_as_q_power)
    if r <= 0:
        raise ValueError(f"q rescale must be positive, got {r}")
    edge = b.zmin if w >= 0 else b.zmax
    certified = r * b.order + edge * w
    excluded = _excluded_floor(b, r, w)
    if excluded is None:
        raise InsufficientWindowError(
            "layers outside the z-window are unbounded; cannot certify any order"
        )
    certified = min(certified, excluded) if excluded is not True else certified
    acc: dict[Fraction, Fraction] = {}
    for k, layer in b.layers:
        shift = k * w
        for e, c in layer.terms:
            exponent = r * e + shift
            if exponent < certified:
                acc[exponent] = acc.get(exponent, Fraction(0)) + c
    return _build(acc, certified)


def _excluded_floor(b: BivariateSeries, r: Fraction, w: Fraction):
    """Lower bound on exponents coming from layers outside the window.

    Returns True when no such layers exist, None when they are unbounded, or
    the minimal possible exponent as a Fraction.
    """
    if b.floor is None:
        return None
    if not b.floor.branches:
        return True
    mod = b.floor.modulus
    best: Optional[Fraction] = None
    for br in b.floor.branches:
        quad = r * br.quad
        lin = r * br.lin + w * mod
        const = r * br.const + w * br.residue

        def value(m: int) -> Fraction:
            return quad * m * m + lin * m + const

        hi_start = (b.zmax - br.residue) // mod + 1
        lo_end = -((br.residue - b.zmin) // mod) - 1
        vertex = -lin / (2 * quad)
        for candidate in _ray_minima(vertex, hi_start, lo_end):
            v = value(candidate)
            if best is None or v < best:
                best = v
    return best if best is not None else True


def _ray_minima(vertex: Fraction, hi_start: int, lo_end: int) -> list[int]:
    """Integer minimizer candidates on the rays m >= hi_start and m <= lo_end."""
    out = [hi_start, lo_end]
    floor_v = vertex.numerator // vertex.denominator
    for m in (floor_v, floor_v + 1):
        if m >= hi_start:
            out.append(m)
        if m <= lo_end:
            out.append(m)
    return out
