"""Domain types shared by every module: metric parameters, groups, spectra.

A left-invariant metric on SU(2) or SO(3) is described by three positive
parameters ``(a, b, c)``; permuting them does not change the isometry
class, so triples are stored in canonical descending order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class HomsphereError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveParameter(HomsphereError, ValueError):
    """A metric parameter was zero, negative, or not finite."""


class GroupKind(enum.Enum):
    """The two groups carrying the metrics: SU(2) ~ S^3, SO(3) ~ RP^3."""

    SU2 = "su2"
    SO3 = "so3"


class MetricClass(enum.Enum):
    """Coarse classification of a canonical triple by parameter equalities."""

    ROUND = "Round"          # a = b = c
    BERGER_AB = "BergerAB"   # a = b > c
    BERGER_BC = "BergerBC"   # a > b = c
    GENERIC = "Generic"      # a > b > c


@dataclass(frozen=True)
class MetricTriple:
    """Canonical parameters of the metric making {aX1, bX2, cX3} orthonormal.

    The constructor sorts the inputs descending, so ``a >= b >= c > 0``
    always holds.  Sorting is safe because any permutation of the
    parameters yields an isometric metric.
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        vals = (float(self.a), float(self.b), float(self.c))
        for v in vals:
            if not math.isfinite(v) or v <= 0.0:
                raise NonPositiveParameter(
                    f"metric parameters must be finite and positive, got {vals}"
                )
        a, b, c = sorted(vals, reverse=True)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def scaled(self, s: float) -> "MetricTriple":
        """Triple (s*a, s*b, s*c); eigenvalues scale by s^2, lengths by 1/s."""
        return MetricTriple(s * self.a, s * self.b, s * self.c)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def normalize_triple(a: float, b: float, c: float) -> MetricTriple:
    """Return the canonical descending-sorted triple for the inputs.

    Raises:
        NonPositiveParameter: if any input is <= 0 or not finite.
    """
    return MetricTriple(a, b, c)


def classify(t: MetricTriple) -> MetricClass:
    """Classify a canonical triple by exact equality of its stored values.

    Equality is exact on the stored floats by design: the class gates which
    closed formulas apply downstream, and fuzzy gating would silently change
    outputs.  Callers wanting tolerance-based detection must round their
    inputs before constructing the triple.
    """
    if t.a == t.b == t.c:
        return MetricClass.ROUND
    if t.a == t.b:
        return MetricClass.BERGER_AB
    if t.b == t.c:
        return MetricClass.BERGER_BC
    return MetricClass.GENERIC


@dataclass(frozen=True)
class EigenPair:
    """A distinct Laplace eigenvalue together with its multiplicity."""

    value: float
    multiplicity: int

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise ValueError(f"eigenvalue must be nonnegative, got {self.value}")
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")


@dataclass(frozen=True)
class SpectrumTable:
    """Sorted distinct eigenvalues <= truncation_bound, with multiplicities.

    The table is complete below ``truncation_bound``: every eigenvalue of the
    metric not exceeding the bound appears.  ``k_sources[i]`` lists the
    irrep labels k whose blocks contributed to ``entries[i]``.
    """

    entries: tuple[EigenPair, ...]
    truncation_bound: float
    group: GroupKind
    triple: MetricTriple
    k_sources: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        vals = [e.value for e in self.entries]
        if vals != sorted(vals) or len(set(vals)) != len(vals):
            raise ValueError("spectrum entries must be strictly increasing")
        if self.entries:
            first = self.entries[0]
            if first.value != 0.0 or first.multiplicity != 1:
                raise ValueError("first spectrum entry must be (0, 1)")
            if vals[-1] > self.truncation_bound:
                raise ValueError("spectrum entry exceeds the truncation bound")

    def counting_function(self, lam: float) -> int:
        """Number of eigenvalues <= lam, counted with multiplicity."""
        return sum(e.multiplicity for e in self.entries if e.value <= lam)


@dataclass(frozen=True)
class SpectralInvariants:
    """The rigidity fingerprint: (abc, scalar curvature, lambda_1, mult).

    For metrics in this family ``mult1`` is one of {3, 4, 6, 7, 9}; the
    inverse solver rejects fingerprints no metric can produce.
    """

    vol_param: float
    scal: float
    lambda1: float
    mult1: int
