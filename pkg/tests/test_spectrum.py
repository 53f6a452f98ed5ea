import math

import numpy as np
import pytest

from homsphere.core import GroupKind, MetricTriple, normalize_triple
from homsphere.eigensolve import eigen_block
from homsphere.spectrum import (
    CutoffTooLarge,
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

SU2 = GroupKind.SU2
SO3 = GroupKind.SO3


@pytest.mark.parametrize(
    "triple,group,value,mult,regime",
    [
        ((2, 1, 1), SU2, 6.0, 4, Regime.SUM_DOMINATES),
        ((3, 1, 1), SU2, 8.0, 3, Regime.FOUR_BC),
        ((1, 1, 1), SU2, 3.0, 4, Regime.SUM_DOMINATES),
        ((1, 1, 1), SO3, 8.0, 9, Regime.SO3),
        ((2, 1, 1), SO3, 8.0, 3, Regime.SO3),
        ((2, 2, 1), SO3, 20.0, 6, Regime.SO3),
    ],
)
def test_lambda1_closed_cases(triple, group, value, mult, regime):
    got = lambda1_closed(MetricTriple(*triple), group)
    assert got.value == value
    assert got.multiplicity == mult
    assert got.regime is regime


def test_lambda1_boundary_multiplicity_seven():
    # dyadic b, c make 3(b^2+c^2) exact; a is kept only if squaring is exact
    b = c = 1.0
    a = np.sqrt(3.0 * (b * b + c * c))
    if a * a == 3.0 * (b * b + c * c):
        got = lambda1_closed(MetricTriple(a, b, c), SU2)
        assert got.multiplicity == 7
        assert got.regime is Regime.BOUNDARY


def test_lambda1_scaling_covariance():
    t = MetricTriple(3.2, 1.7, 0.9)
    for g in (SU2, SO3):
        base = lambda1_closed(t, g)
        scaled = lambda1_closed(t.scaled(2.0), g)
        assert scaled.value == pytest.approx(4.0 * base.value, rel=1e-15)
        assert scaled.multiplicity == base.multiplicity


def test_berger_eigenvalue_closed_values():
    assert berger_eigenvalue(1, 0, 2.0, 1.5) == 4.0 + 2 * 2.25
    assert berger_eigenvalue(2, 1, 9.9, 2.0) == 8 * 4.0
    assert berger_eigenvalue(0, 0, 3.3, 4.4) == 0.0
    with pytest.raises(ValueError):
        berger_eigenvalue(2, 3, 1.0, 1.0)


def test_berger_eigen_record():
    from homsphere.spectrum import BergerEigen

    entry = BergerEigen(k=2, j=1, value=berger_eigenvalue(2, 1, 3.0, 1.0))
    assert entry.value == 8.0
    assert (entry.k, entry.j) == (2, 1)


def test_k_cutoff_examples():
    t = MetricTriple(5, 1, 1)
    assert k_cutoff(10.0, t, SU2) == 2
    assert k_cutoff(3.0, t, SU2) == 1
    assert k_cutoff(0.5, t, SU2) == 0
    assert k_cutoff(10.0, t, SO3) == 2
    assert k_cutoff(3.0, t, SO3) == 0


def test_k_cutoff_cap():
    with pytest.raises(CutoffTooLarge):
        k_cutoff(1e9, MetricTriple(1, 1, 1), SU2, k_cap=100)


def test_round_spectrum_su2():
    table = spectrum_up_to(15.0, MetricTriple(1, 1, 1), SU2)
    assert [(e.value, e.multiplicity) for e in table.entries] == [
        (0.0, 1),
        (3.0, 4),
        (8.0, 9),
        (15.0, 16),
    ]
    assert table.k_sources == ((0,), (1,), (2,), (3,))


def test_round_spectrum_so3_even_blocks_only():
    table = spectrum_up_to(15.0, MetricTriple(1, 1, 1), SO3)
    assert [(e.value, e.multiplicity) for e in table.entries] == [(0.0, 1), (8.0, 9)]


def test_generic_spectrum_smallest_entry_matches_closed_form():
    t = MetricTriple(3, 1, 1)
    table = spectrum_up_to(9.0, t, SU2)
    assert table.entries[1].value == pytest.approx(8.0, rel=1e-12)
    assert table.entries[1].multiplicity == 3


def test_spectrum_completeness_under_cutoff_doubling():
    t = MetricTriple(2.6, 1.4, 0.7)
    lam = 30.0
    cutoff = k_cutoff(lam, t, SU2)
    for k in range(cutoff + 1, 2 * cutoff + 3):
        assert min(eigen_block(k, t).values) > lam


def test_berger_consistency_is_exact():
    for a, b in [(2.0, 1.0), (1.0, 1.0), (3.7, 0.9)]:
        for g in (SU2, SO3):
            closed = berger_spectrum_up_to(50.0, a, b, g)
            numeric = spectrum_up_to(50.0, normalize_triple(a, b, b), g)
            assert closed.entries == numeric.entries
            assert closed.k_sources == numeric.k_sources


def test_berger_round_matches_k_law():
    table = berger_spectrum_up_to(35.0, 1.0, 1.0, SU2)
    assert [(e.value, e.multiplicity) for e in table.entries] == [
        (float(k * (k + 2)), (k + 1) ** 2) for k in range(6)
    ]


def test_berger_spectrum_handles_swapped_parameters():
    # (a, b, b) with a < b normalizes to a metric with its two large
    # parameters equal; closed form and solver must still agree
    closed = berger_spectrum_up_to(40.0, 0.5, 1.3, SU2)
    numeric = spectrum_up_to(40.0, normalize_triple(0.5, 1.3, 1.3), SU2)
    assert len(closed.entries) == len(numeric.entries)
    for x, y in zip(closed.entries, numeric.entries):
        assert x.value == pytest.approx(y.value, rel=1e-10)
        assert x.multiplicity == y.multiplicity


def test_mu_index_examples():
    round_table = spectrum_up_to(16.0, MetricTriple(1, 1, 1), SU2)
    assert mu_index_of(3.0, round_table) == 1
    assert mu_index_of(8.0, round_table) == 2
    stretched = spectrum_up_to(9.0, MetricTriple(3, 1, 1), SU2)
    assert mu_index_of(8.0, stretched) == 1
    with pytest.raises(NotFound):
        mu_index_of(5.0, round_table)
    with pytest.raises(NotFound):
        mu_index_of(0.0, round_table)


def test_four_bc_value_is_first_or_second():
    rng = np.random.default_rng(3)
    for _ in range(50):
        t = MetricTriple(*(10.0 ** rng.uniform(-1, 1, size=3)))
        f = 4.0 * (t.b * t.b + t.c * t.c)
        table = spectrum_up_to(f * 1.000001, t, SU2)
        assert mu_index_of(f, table) in (1, 2)


def test_low_irrep_eigenvalues():
    t = MetricTriple(2, 1, 1)
    low = low_irrep_eigenvalues(t)
    assert low[0] == (0.0,)
    assert low[1] == (6.0, 6.0)
    assert low[2] == (8.0, 20.0, 20.0)
    assert low_irrep_eigenvalues(MetricTriple(3, 2, 1))[2] == (20.0, 40.0, 52.0)


def test_low_irrep_agrees_with_solver():
    t = MetricTriple(2.4, 1.9, 0.8)
    low = low_irrep_eigenvalues(t)
    for k in (0, 1, 2):
        got = eigen_block(k, t).values
        assert got == pytest.approx(low[k], rel=1e-11)


def test_sum_eigenvalue_positions_nondecreasing():
    positions = sum_eigenvalue_positions()
    js = [j for _, j in positions]
    assert js[0] == 1
    assert all(a <= b for a, b in zip(js, js[1:]))
    assert js[-1] > js[0]


def test_suspicious_cluster_merges_are_reported():
    import warnings as _warnings

    from homsphere.spectrum import ClusterMergeWarning

    # 4a^2 + 4b^2 and a^2 + 14b^2 collide when 3a^2 = 10b^2; nudging a
    # leaves a gap far above solver noise yet inside the clustering window
    a = math.sqrt(10.0 / 3.0) * (1.0 + 3e-9)
    with pytest.warns(ClusterMergeWarning):
        berger_spectrum_up_to(20.0, a, 1.0, SU2)
    # clean spectra merge only exactly repeated values: no warning
    with _warnings.catch_warnings():
        _warnings.simplefilter("error", ClusterMergeWarning)
        berger_spectrum_up_to(20.0, 1.0, 1.0, SU2)
        spectrum_up_to(20.0, MetricTriple(3, 2, 1), SU2)
