from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtcoh.exact import GradedSeries
from dtcoh.groups import Kind, Partition, partitions_of
from dtcoh.integrality import (
    block_series,
    bps_poincare,
    bps_rank,
    dt_cohomology,
    is_prime,
    langlands_check,
    levi_contribution,
    parity_of_degree,
    plethystic_exponential,
    verify_integrality,
)
from dtcoh.molien import Parity


def test_bps_anchors():
    assert bps_poincare(Kind.GL, 4) == GradedSeries.from_dict({-3: 1, -2: 3, -1: 3, 0: 1})
    assert bps_poincare(Kind.GL_ADD, 2) == GradedSeries.monomial(-3)
    assert bps_poincare(Kind.SL, 2).total() == 8
    assert bps_poincare(Kind.PGL, 3) == GradedSeries.monomial(0)
    with pytest.raises(ValueError):
        bps_poincare(Kind.PGL, 4)


def test_block_series():
    block = block_series(Kind.GL, 1, 6)
    assert block.hi == 6
    assert block.coeffs_between(-2, 6) == [1, 3, 4, 4, 4, 4, 4, 4, 4]
    assert block_series(Kind.GL_ADD, 3, 4).coeffs_between(-2, 4) == [1, 0, 1, 0, 1, 0, 1]
    with pytest.raises(ValueError):
        block_series(Kind.SL, 2, 4)


def test_levi_contribution_examples():
    assert levi_contribution(Kind.SL, 3, Partition.of(3), 6) == GradedSeries.monomial(0, 27).truncate(6)
    with pytest.raises(ValueError):
        levi_contribution(Kind.GL, 3, Partition.of(2, 1, 1), 6)


def test_sl2_by_hand():
    # (2): centre, 8 points in degree 0.  (1,1): S_2 acts by -1 on the one-dimensional
    # lattice, so invariants are Lambda^k (x) u^j with k + j even, placed in degree k + 2j - 2.
    series = dt_cohomology(Kind.SL, 2, 2)
    assert series.coeffs_between(-2, 2) == [1, 0, 3 + 8, 3, 1]


def test_pe_of_a_point():
    pe = plethystic_exponential({1: GradedSeries.monomial(0), 2: GradedSeries.zero(), 3: GradedSeries.zero()},
                                3, 5)
    for n in range(4):
        assert pe.coefficient(n).terms() == {0: 1}


def test_pe_odd_point_is_exterior():
    pe = plethystic_exponential({1: GradedSeries.monomial(1), 2: GradedSeries.zero()}, 2, 5)
    assert pe.coefficient(1).terms() == {1: 1}
    assert pe.coefficient(2).terms() == {}


def test_pe_first_coefficient_is_block():
    blocks = {n: block_series(Kind.GL, n, 12) for n in (1, 2)}
    pe = plethystic_exponential(blocks, 2, 8)
    assert pe.coefficient(1) == blocks[1].truncate(8)
    with pytest.raises(ValueError):
        pe.coefficient(3)


def test_pe_rejects_negative_blocks():
    with pytest.raises(ValueError):
        plethystic_exponential({1: GradedSeries.monomial(0, -1)}, 1, 4)


@pytest.mark.parametrize("parity", list(Parity))
def test_pe_matches_levi_sum_for_gl2(parity):
    blocks = {n: block_series(Kind.GL, n, 14) for n in (1, 2)}
    pe = plethystic_exponential(blocks, 2, 12, parity)
    levi = sum((levi_contribution(Kind.GL, 2, lam, 12, parity) for lam in partitions_of(2)), GradedSeries.zero(12))
    assert pe.coefficient(2).agrees_with(levi, -8, 12)


@pytest.mark.parametrize("kind", [Kind.GL, Kind.GL_ADD])
@pytest.mark.parametrize("parity", list(Parity))
def test_verify_integrality(kind, parity):
    report = verify_integrality(kind, 4, (-10, 16), parity)
    assert report.ok
    js = report.to_json()
    assert set(js) == {"kind", "parity", "window", "results"}
    assert js["window"] == {"min": -10, "max": 16}
    assert [r["n"] for r in js["results"]] == [1, 2, 3, 4]


def test_verify_integrality_rejects_sl():
    with pytest.raises(ValueError):
        verify_integrality(Kind.SL, 2)


def test_parity_of_degree():
    assert parity_of_degree(-3) == 1
    assert parity_of_degree(-3, Parity.UNSHIFTED) == 0
    assert parity_of_degree(2, Parity.UNSHIFTED) == 1


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("kind", [Kind.GL, Kind.GL_ADD, Kind.SL])
def test_dt_series_are_dimensions(kind, n):
    series = dt_cohomology(kind, n, 12)
    assert series.nonnegative_integral()
    assert all(k >= -2 * n for k in series.terms())
    if kind == Kind.GL:
        assert series.coeff(-2 * n) == 1


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("parity", list(Parity))
def test_langlands(n, parity):
    res = langlands_check(n, (-12, 20), parity)
    assert res.equal and res.twisted_difference_ok
    assert (res.sl - res.pgl_untwisted) == GradedSeries.monomial(0, n**3 - 1).truncate(20)


def test_twisted_flag_misuse_and_composite_n():
    with pytest.raises(ValueError):
        dt_cohomology(Kind.SL, 2, 6, include_twisted=True)
    with pytest.raises(ValueError):
        dt_cohomology(Kind.PGL, 4, 6)
    with pytest.raises(ValueError):
        langlands_check(9)
    assert (dt_cohomology(Kind.PGL, 2, 6, include_twisted=True) - dt_cohomology(Kind.PGL, 2, 6)) == \
        GradedSeries.monomial(0, 7).truncate(6)


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("l, k, expected", [(1, 0, 1), (1, 7, 1), (2, 3, 4), (4, 2, 10)])
def test_bps_rank_examples(l, k, expected):  # noqa: E741
    assert bps_rank(l, k) == expected


@given(st.integers(1, 8), st.integers(0, 20))
def test_bps_rank_closed_form(l, k):  # noqa: E741
    assert bps_rank(l, k) == comb(k + l - 1, k)


def test_bps_rank_domain():
    with pytest.raises(ValueError):
        bps_rank(0, 1)
