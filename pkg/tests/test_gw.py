import pytest
from hypothesis import given, strategies as st

from cyinvariants import (
    DomainError,
    GwSequence,
    InconsistentInvariantsError,
    InstantonSeries,
    ValidationError,
    gw_brute,
    gw_sequence,
    gw_total,
    invert_gw,
    moebius,
    series_sums,
)

from conftest import instanton_series


def test_series_sums():
    assert series_sums(InstantonSeries()) == (0, 0)
    assert series_sums(InstantonSeries({1: 1})) == (1, 1)
    assert series_sums(InstantonSeries({1: 2, 2: -2})) == (-2, -14)


def test_series_drops_zeros_and_validates():
    s = InstantonSeries({1: 0, 2: -2})
    assert s.support == (2,) and s[1] == 0 and s[2] == -2
    assert not InstantonSeries({3: 0})
    with pytest.raises(ValidationError):
        InstantonSeries({0: 1})
    assert InstantonSeries.from_list([2, -2]) == InstantonSeries({1: 2, 2: -2})


def test_gw_total_examples():
    assert gw_total(InstantonSeries({1: 1}), 1, 1) == 1
    assert gw_total(InstantonSeries({1: 2, 2: -2}), 3, 2) == -378
    assert gw_total(InstantonSeries(), 7, 5) == 0


def test_gw_brute_examples():
    assert gw_brute(InstantonSeries({2: -2}), 3, 2) == -432
    assert gw_brute(InstantonSeries({1: 2, 2: -2}), 3, 2) == -378
    assert gw_brute(InstantonSeries({1: 5}), 1, 1) == 5
    # triple cover of one rigid curve
    assert gw_brute(InstantonSeries({1: 1}), 1, 3) == 1


@pytest.mark.parametrize("func", [gw_total, gw_brute])
def test_degree_must_be_positive(func):
    with pytest.raises(DomainError):
        func(InstantonSeries({1: 1}), 1, 0)


@pytest.mark.parametrize("k, mu", [(1, 1), (2, -1), (3, -1), (4, 0), (5, -1), (6, 1), (12, 0), (30, -1), (210, 1), (49, 0)])
def test_moebius(k, mu):
    assert moebius(k) == mu


def test_moebius_domain():
    with pytest.raises(DomainError):
        moebius(0)


@pytest.mark.parametrize("n", range(2, 60))
def test_moebius_sums_vanish(n):
    # sum_{d | n} mu(d) = 0 for n > 1
    assert sum(moebius(d) for d in range(1, n + 1) if n % d == 0) == 0


def test_invert_gw_examples():
    assert invert_gw([2, -14]) == InstantonSeries({1: 2, 2: -2})
    assert invert_gw(GwSequence((9,))) == InstantonSeries({1: 9})


def test_invert_gw_rejects_unrealizable():
    # G_2 - G_1 must be divisible by 8
    with pytest.raises(InconsistentInvariantsError, match=r"n_2=1/8"):
        invert_gw([0, 1])
    with pytest.raises(ValidationError):
        invert_gw([])


@given(instanton_series, st.integers(-5, 5), st.integers(1, 12))
def test_oracle_equivalence(series, p, m):
    assert gw_total(series, p, m) == gw_brute(series, p, m)


@given(instanton_series, st.integers(1, 12))
def test_round_trip(series, length):
    truncated = InstantonSeries({d: n for d, n in series if d <= length})
    assert invert_gw(gw_sequence(series, length)) == truncated


@given(instanton_series, st.integers(-5, 5), st.integers(-4, 4), st.integers(1, 12))
def test_homogeneity(series, p, t, m):
    assert gw_total(series, t * p, m) == t**3 * gw_total(series, p, m)


@given(st.dictionaries(st.integers(1, 12), st.integers(0, 50)).map(InstantonSeries), st.integers(1, 12))
def test_nonnegative_series_give_nonnegative_gw(series, length):
    assert series.is_nonnegative()
    assert all(g >= 0 for g in gw_sequence(series, length).normalized)
