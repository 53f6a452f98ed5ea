"""Spectra of homogeneous metrics on the 3-sphere and projective 3-space.

A left-invariant metric on SU(2) or SO(3) is determined by three positive
parameters (a, b, c).  This package computes truncated Laplace-Beltrami
spectra for any such metric, closed forms for the lowest eigenvalue and
for all spectra with two equal parameters, diameters with certified
bounds, scale-invariant eigenvalue-diameter estimates, and the inverse
map recovering the metric from its spectral invariants.
"""

from .casimir import (
    AsymmetryResidue,
    GershgorinIntervals,
    ImaginaryResidue,
    IrrepBlock,
    PatternViolation,
    TridiagBlock,
    build_irrep_block,
    casimir_matrix,
    casimir_matrix_oracle,
    generator_matrices,
    gershgorin,
    symmetrize,
    tridiagonal_split,
)
from .core import (
    EigenPair,
    GroupKind,
    HomsphereError,
    MetricClass,
    MetricTriple,
    NonPositiveParameter,
    SpectralInvariants,
    SpectrumTable,
    classify,
    normalize_triple,
)
from .eigensolve import (
    EigenList,
    NonConvergence,
    eigen_block,
    eigenvalues,
    eigenvalues_batch,
    sturm_count,
)
from .geometry import (
    BergerExtremaReport,
    BoundViolation,
    DiamBounds,
    EmptyProduct,
    ProductEstimate,
    ProductSpec,
    berger_lambda1_diam2_extrema,
    diameter,
    lambda1_diam2,
    product_estimate,
    scalar_curvature,
    volume,
    yamabe_gap,
)
from .rigidity import (
    InconsistentInvariants,
    IsospectralResult,
    IsospectralVerdict,
    invariants,
    isospectral_check,
    mult3_auxiliary_root,
    recover_triple,
)
from .spectrum import (
    BergerEigen,
    ClusterMergeWarning,
    CutoffTooLarge,
    Lambda1Result,
    NotFound,
    Regime,
    berger_eigenvalue,
    berger_spectrum_up_to,
    k_cutoff,
    lambda1_closed,
    low_irrep_eigenvalues,
    mu_index_of,
    spectrum_up_to,
    sum_eigenvalue_positions,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetryResidue",
    "BergerEigen",
    "BergerExtremaReport",
    "BoundViolation",
    "ClusterMergeWarning",
    "CutoffTooLarge",
    "DiamBounds",
    "EigenList",
    "EigenPair",
    "EmptyProduct",
    "GershgorinIntervals",
    "GroupKind",
    "HomsphereError",
    "ImaginaryResidue",
    "InconsistentInvariants",
    "IrrepBlock",
    "IsospectralResult",
    "IsospectralVerdict",
    "Lambda1Result",
    "MetricClass",
    "MetricTriple",
    "NonConvergence",
    "NonPositiveParameter",
    "NotFound",
    "PatternViolation",
    "ProductEstimate",
    "ProductSpec",
    "Regime",
    "SpectralInvariants",
    "SpectrumTable",
    "TridiagBlock",
    "berger_eigenvalue",
    "berger_lambda1_diam2_extrema",
    "berger_spectrum_up_to",
    "build_irrep_block",
    "casimir_matrix",
    "casimir_matrix_oracle",
    "classify",
    "diameter",
    "eigen_block",
    "eigenvalues",
    "eigenvalues_batch",
    "generator_matrices",
    "gershgorin",
    "invariants",
    "isospectral_check",
    "k_cutoff",
    "lambda1_closed",
    "lambda1_diam2",
    "low_irrep_eigenvalues",
    "mu_index_of",
    "mult3_auxiliary_root",
    "normalize_triple",
    "product_estimate",
    "recover_triple",
    "scalar_curvature",
    "spectrum_up_to",
    "sturm_count",
    "sum_eigenvalue_positions",
    "symmetrize",
    "tridiagonal_split",
    "volume",
    "yamabe_gap",
]
