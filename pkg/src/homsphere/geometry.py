"""Curvature, volume, diameters, and the scale-invariant lambda1 * diam^2.

Diameters are exact whenever at least two parameters coincide; otherwise
squeezing the metric between two such metrics yields certified two-sided
bounds, and every estimate downstream is phrased so that intervals
suffice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GroupKind, HomsphereError, MetricClass, MetricTriple, classify
from .spectrum import lambda1_closed

# tolerance for float dust on closed-form boundary comparisons
_REL_SLACK = 1e-12

SU2_PRODUCT_CAP = 8.0 * math.pi**2
SO3_PRODUCT_CAP = (9.0 - 4.0 * math.sqrt(2.0)) * math.pi**2


class BoundViolation(HomsphereError, ArithmeticError):
    """A certified interval escaped a range that is mathematically guaranteed."""


class EmptyProduct(HomsphereError, ValueError):
    """A product estimate was requested with no factors."""


@dataclass(frozen=True)
class DiamBounds:
    """Diameter as an exact value or a certified [lower, upper] interval."""

    lower: float
    upper: float
    exact: float | None = None

    def __post_init__(self) -> None:
        if self.exact is not None and not (self.lower == self.exact == self.upper):
            raise ValueError("exact diameter requires lower = exact = upper")
        if self.lower > self.upper:
            raise ValueError("diameter lower bound exceeds upper bound")


@dataclass(frozen=True)
class ProductSpec:
    """Factors of a Riemannian product, one metric triple per factor."""

    su2_factors: tuple[MetricTriple, ...] = ()
    so3_factors: tuple[MetricTriple, ...] = ()


@dataclass(frozen=True)
class ProductEstimate:
    """Lowest eigenvalue and diameter-squared interval of a product metric."""

    lambda1: float
    diam2_lower: float
    diam2_upper: float
    product_lower: float
    product_upper: float
    cap: float


@dataclass(frozen=True)
class BergerExtremaReport:
    """Extrema of lambda1 * diam^2 over the metrics with two equal parameters."""

    min_value: float
    min_triple: MetricTriple
    max_value: float
    max_triple: MetricTriple


def scalar_curvature(t: MetricTriple) -> float:
    """Scalar curvature 4(a^2+b^2+c^2) - 2(b^2c^2/a^2 + a^2c^2/b^2 + a^2b^2/c^2).

    The same value holds for SU(2) and SO(3), and at every point (the
    metrics are homogeneous).
    """
    a2, b2, c2 = t.a * t.a, t.b * t.b, t.c * t.c
    return 4.0 * (a2 + b2 + c2) - 2.0 * (b2 * c2 / a2 + a2 * c2 / b2 + a2 * b2 / c2)


def volume(t: MetricTriple, g: GroupKind) -> float:
    """Total volume: 2 pi^2 / (abc) for SU(2), half that for SO(3).

    The normalization makes (1,1,1) the unit round 3-sphere; volume depends
    on the triple only through the product abc.
    """
    base = 2.0 * math.pi**2 / (t.a * t.b * t.c)
    return base if g is GroupKind.SU2 else 0.5 * base


def _su2_lower_diameter(t: MetricTriple) -> float:
    # diameter of the squeezed metric (a, b, b)
    if t.a * t.a <= 2.0 * t.b * t.b:
        return math.pi / t.a
    return math.pi / (2.0 * t.b * math.sqrt(1.0 - (t.b * t.b) / (t.a * t.a)))


def _so3_upper_diameter(t: MetricTriple) -> float:
    # diameter of the stretched metric (b, b, c)
    if 2.0 * t.c * t.c >= t.b * t.b:
        return math.pi / (2.0 * t.c)
    x = (t.c * t.c) / (t.b * t.b)
    return (math.pi / t.b) * math.sqrt(1.0 + 1.0 / (4.0 * (x - 1.0)))


def diameter(t: MetricTriple, g: GroupKind) -> DiamBounds:
    """Diameter, exact when two parameters coincide, else a certified interval.

    Exact values (SU(2)): pi/b if a = b; pi/a if a > b = c >= a/sqrt(2);
    pi / (2b sqrt(1 - b^2/a^2)) if b = c < a/sqrt(2).
    Exact values (SO(3)): pi/(2b) if a > b = c; pi/(2c) if a = b and
    c >= b/sqrt(2); (pi/b) sqrt(1 + 1/(4(c^2/b^2 - 1))) if a = b, c < b/sqrt(2).
    Generic triples are squeezed between (a,b,b) and (b,b,c), whose exact
    diameters bound the true one on both sides.  Adjacent exact formulas
    agree at the case boundaries, so exact comparisons are safe.
    """
    cls = classify(t)
    if g is GroupKind.SU2:
        if cls in (MetricClass.ROUND, MetricClass.BERGER_AB):
            d = math.pi / t.b
            return DiamBounds(d, d, d)
        if cls is MetricClass.BERGER_BC:
            d = _su2_lower_diameter(t)
            return DiamBounds(d, d, d)
        return DiamBounds(_su2_lower_diameter(t), math.pi / t.b)
    if cls is MetricClass.BERGER_BC:
        d = math.pi / (2.0 * t.b)
        return DiamBounds(d, d, d)
    if cls in (MetricClass.ROUND, MetricClass.BERGER_AB):
        d = _so3_upper_diameter(t)
        return DiamBounds(d, d, d)
    return DiamBounds(math.pi / (2.0 * t.b), _so3_upper_diameter(t))


def product_cap(n_su2: int, n_so3: int) -> float:
    """Upper bound (8m + 6n) pi^2 for lambda1 * diam^2 on an m+n fold product."""
    return (8.0 * n_su2 + 6.0 * n_so3) * math.pi**2


def lambda1_diam2(t: MetricTriple, g: GroupKind) -> tuple[float, float]:
    """Certified interval for lambda1 * diam^2 (a point when diam is exact).

    The result always lies in (pi^2, 8 pi^2] for SU(2) and in
    (pi^2, (9 - 4 sqrt(2)) pi^2] for SO(3); escaping that range would mean
    an implementation bug, reported as BoundViolation.
    """
    lam = lambda1_closed(t, g).value
    d = diameter(t, g)
    lo = lam * d.lower * d.lower
    hi = lam * d.upper * d.upper
    cap = SU2_PRODUCT_CAP if g is GroupKind.SU2 else SO3_PRODUCT_CAP
    if not (lo > math.pi**2 and hi <= cap * (1.0 + _REL_SLACK)):
        raise BoundViolation(
            f"lambda1*diam^2 interval [{lo}, {hi}] escapes (pi^2, {cap}]"
        )
    return lo, hi


def _golden_min(f, lo: float, hi: float, rel_tol: float = 1e-13) -> tuple[float, float]:
    """Golden-section minimum of a unimodal function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > rel_tol * max(1.0, abs(lo) + abs(hi)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
    x = 0.5 * (lo + hi)
    return x, f(x)


def berger_lambda1_diam2_extrema(grid: int = 4000) -> BergerExtremaReport:
    """Sweep lambda1 * diam^2 over both two-equal-parameter families.

    The product is scale invariant, so the families are parametrized at
    unit scale: (1, 1, c) for 0 < c <= 1 and (a, 1, 1) for a >= 1.  A dense
    grid locates the candidate extrema and golden-section refines the
    interior ones.  The maximum 3 pi^2 sits at the round metric; the
    minimum (1 + sqrt(3)/2) pi^2 at a stretched b = c metric.
    """

    def prod_ab(c: float) -> float:
        return lambda1_diam2(MetricTriple(1.0, 1.0, c), GroupKind.SU2)[0]

    def prod_bc(a: float) -> float:
        return lambda1_diam2(MetricTriple(a, 1.0, 1.0), GroupKind.SU2)[0]

    cs = [0.02 + (1.0 - 0.02) * i / (grid - 1) for i in range(grid)]
    a_s = [1.0 + (12.0 - 1.0) * i / (grid - 1) for i in range(grid)]
    families = (
        (prod_ab, cs, lambda c: MetricTriple(1.0, 1.0, c)),
        (prod_bc, a_s, lambda a: MetricTriple(a, 1.0, 1.0)),
    )

    candidates: list[tuple[float, MetricTriple]] = []
    for fn, xs, make in families:
        vals = [(fn(x), x) for x in xs]
        for pick in (min, max):
            v0, x0 = pick(vals)
            candidates.append((v0, make(x0)))
            i = xs.index(x0)
            lo = xs[max(i - 1, 0)]
            hi = xs[min(i + 1, len(xs) - 1)]
            if pick is min:
                x, v = _golden_min(fn, lo, hi)
            else:
                x, negv = _golden_min(lambda y: -fn(y), lo, hi)
                v = -negv
            candidates.append((v, make(x)))

    min_value, min_triple = min(candidates, key=lambda p: p[0])
    max_value, max_triple = max(candidates, key=lambda p: p[0])
    return BergerExtremaReport(
        min_value=min_value,
        min_triple=min_triple,
        max_value=max_value,
        max_triple=max_triple,
    )


def product_estimate(p: ProductSpec) -> ProductEstimate:
    """Estimate lambda1 * diam^2 for a direct product of these metrics.

    lambda1 of the product is the minimum of the factor values; the squared
    diameter is the sum of the factor squares (an interval when any factor
    is generic).  The certified product interval always lies in
    (pi^2, (8m + 6n) pi^2].

    Raises:
        EmptyProduct: if ``p`` has no factors.
        BoundViolation: if the certified interval escapes the range above.
    """
    factors = [(t, GroupKind.SU2) for t in p.su2_factors]
    factors += [(t, GroupKind.SO3) for t in p.so3_factors]
    if not factors:
        raise EmptyProduct("a product needs at least one factor")
    lam = min(lambda1_closed(t, g).value for t, g in factors)
    lo2 = hi2 = 0.0
    for t, g in factors:
        d = diameter(t, g)
        lo2 += d.lower * d.lower
        hi2 += d.upper * d.upper
    cap = product_cap(len(p.su2_factors), len(p.so3_factors))
    p_lo, p_hi = lam * lo2, lam * hi2
    if not (p_lo > math.pi**2 and p_hi <= cap * (1.0 + _REL_SLACK)):
        raise BoundViolation(
            f"product interval [{p_lo}, {p_hi}] escapes (pi^2, {cap}]"
        )
    return ProductEstimate(
        lambda1=lam,
        diam2_lower=lo2,
        diam2_upper=hi2,
        product_lower=p_lo,
        product_upper=p_hi,
        cap=cap,
    )


def yamabe_gap(t: MetricTriple, g: GroupKind) -> float:
    """The gap lambda1 - Scal/2.

    Nonnegative on SU(2) with equality exactly at the round metrics, and
    strictly positive on SO(3); positivity rules out nearby constant
    scalar curvature metrics in the conformal class.
    """
    return lambda1_closed(t, g).value - 0.5 * scalar_curvature(t)
