import numpy as np
import pytest

from src.errors import InvalidInputError
from src.koszul.complex import (
    KoszulComplex,
    filtration_components,
    parse_beta,
    spectral_sequence_trace,
    su2_invariant_stalk,
    su2_support_report,
    twisted_cohomology_dims,
)

NONDEGENERATE = [
    ((2,),),
    ((3, 0), (0, 3)),
    ((2, 1), (1, 2)),
    ((1, 2, 0), (0, 1, 0), (0, 0, 3)),
    ((2, 0, 0), (0, 2, 0), (0, 0, 2)),
    ((10, 1, 0), (1, 10, 1), (0, 1, 10)),
]


@pytest.mark.parametrize("beta", NONDEGENERATE, ids=str)
def test_nondegenerate_beta_gives_one_class_in_degree_n(beta):
    n = len(beta)
    dims = twisted_cohomology_dims(n, beta, n + 2)
    assert dims.total == 1
    assert (dims.odd if n % 2 else dims.even) == 1
    assert dims.stable
    assert dims.d_squared_zero
    assert dims.by_bidegree[(n, 0)] == 1


@pytest.mark.parametrize("k", range(1, 6))
def test_rank_one_line(k):
    dims = twisted_cohomology_dims(1, [[2 * k]], 3)
    assert (dims.even, dims.odd) == (0, 1)


def test_rank_two_identity():
    dims = twisted_cohomology_dims(2, [[4, 0], [0, 4]], 4)
    assert (dims.even, dims.odd) == (1, 0)


def test_untwisted_grows():
    dims = twisted_cohomology_dims(1, [[0]], 3)
    assert dims.total == 6
    assert not dims.stable


def test_degenerate_beta_is_unstable():
    dims = twisted_cohomology_dims(2, [[1, 0], [0, 0]], 4)
    assert not dims.stable


def test_truncation_precondition():
    with pytest.raises(InvalidInputError):
        twisted_cohomology_dims(2, [[1, 0], [0, 1]], 3)
    with pytest.raises(InvalidInputError):
        KoszulComplex(2, ((1, 0),), 4)


def test_differential_shape_and_square():
    cx = KoszulComplex(3, ((1, 2, 0), (0, 1, 1), (3, 0, 1)), 4)
    d = cx.differential(1, 1)
    assert d.shape == (len(cx.basis(2, 2)), len(cx.basis(1, 1)))
    assert cx.d_squared_zero()
    assert cx.differential(3, 0).size == 0


def test_invariant_subcomplex_keeps_even_total_parity():
    cx = KoszulComplex(1, ((4,),), 6, invariant=True)
    assert cx.basis(0, 1) == [] and cx.basis(1, 0) == []
    assert len(cx.basis(0, 2)) == len(cx.basis(1, 1)) == 1


@pytest.mark.parametrize("k", range(1, 6))
def test_su2_invariant_stalk_vanishes(k):
    assert su2_invariant_stalk(k) == 0
    # the same point without the invariance condition carries the line C theta
    assert twisted_cohomology_dims(1, [[2 * k]], 6).odd == 1


def test_su2_invariant_stalk_rejects_k_zero():
    with pytest.raises(InvalidInputError):
        su2_invariant_stalk(0)


def test_pages_rank_one():
    pages = spectral_sequence_trace(1, [[2]], 3)
    assert sum(pages.e4.values()) == 1
    assert pages.delta2_zero
    assert pages.e3 == pages.e2
    assert all(v == 0 for v in pages.odd_rows.values())


def test_pages_nondegenerate_rank_two():
    pages = spectral_sequence_trace(2, [[2, 0], [0, 2]], 4)
    assert pages.degenerates_at_e4
    assert pages.e_inf == {"even": 1, "odd": 0}
    assert pages.e4 == {2: 1}


def test_pages_zero_twist():
    pages = spectral_sequence_trace(2, [[0, 0], [0, 0]], 4)
    assert pages.e4 == pages.e2
    doc = pages.to_json()
    assert set(doc) >= {"E2", "E3", "E4", "E_inf", "delta2_zero"}


@pytest.mark.parametrize("h", range(1, 9))
def test_su2_support(h):
    report = su2_support_report(h)
    assert report.tau == h + 2
    assert report.support_count == report.tau - 1
    assert report.stalk_odd_dims == [1] * (h + 1)
    assert report.invariant_stalk_dims == (0, 0)
    assert (report.k0_rank, report.k1_rank) == (0, h + 1)


def test_parse_beta():
    assert parse_beta("2,0;0,2") == ((2, 0), (0, 2))
    with pytest.raises(InvalidInputError):
        parse_beta("2,x")
    assert np.array(parse_beta("1")).shape == (1, 1)


@pytest.mark.parametrize("beta", [[[0]], [[1, 0], [0, 0]]], ids=str)
def test_degeneration_undecided_while_unstable(beta):
    n = len(beta)
    assert not twisted_cohomology_dims(n, beta, n + 2).stable
    pages = spectral_sequence_trace(n, beta, n + 2)
    assert pages.degenerates_at_e4 is None
    assert pages.to_json()["degenerates_at_E4"] is None


@pytest.mark.parametrize("beta", NONDEGENERATE, ids=str)
def test_differential_raises_filtration_by_three(beta):
    n = len(beta)
    cx = KoszulComplex(n, beta, n + 2)
    comps = filtration_components(cx)
    assert list(comps) == [3]
    # the jump-3 blocks are exactly the bidegree differentials
    for ((e, s), tgt), block in comps[3].items():
        assert tgt == (e + 1, s + 1)
        assert np.array_equal(block, cx.differential(e, s))
    pages = spectral_sequence_trace(n, beta, n + 2)
    assert pages.jumps == (3,) and pages.delta2_zero
    assert pages.degenerates_at_e4 is True
    assert sum(pages.e4.values()) == 1


def test_zero_twist_has_no_differential():
    cx = KoszulComplex(2, ((0, 0), (0, 0)), 4)
    assert filtration_components(cx) == {}
    assert spectral_sequence_trace(2, [[0, 0], [0, 0]], 4).jumps == ()


def test_page_trace_rejects_short_truncation():
    with pytest.raises(InvalidInputError):
        spectral_sequence_trace(2, [[1, 0], [0, 1]], 3)
