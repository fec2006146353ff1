import pytest
from hypothesis import given, strategies as st

from artin_homology.series import (
    FormalSeries,
    compare,
    series_braid_f2,
    series_braid_fp,
    series_braid_q,
    series_odd_poincare,
    series_stable,
)


def test_odd_series_examples():
    S = series_odd_poincare(11, 13)
    assert S.coeff(1, 3) == 1
    assert S.coeff(2, 5) == 1
    assert S.coeff(3, 9) == 2
    assert [S.coeff(i, 13) for i in range(1, 12)] == [1, 1, 2, 3, 4, 5, 6, 6, 5, 3, 1]


def test_odd_series_support():
    # the product includes 1/(1-t), so even t-degrees are populated too;
    # only the odd ones carry meaning
    S = series_odd_poincare(12, 25)
    for (i, n), v in S.items():
        assert v >= 0
        if v:
            assert n >= 3 and 1 <= i < n
    assert all(S.coeff(1, n) == 1 for n in range(3, 26))
    assert S.coeff(1, 4) == 1


def test_stable_series():
    assert series_stable(11).q_list() == [0, 1, 1, 2, 3, 4, 5, 7, 9, 11, 14, 17]


def test_stable_limit_of_odd_series():
    S = series_odd_poincare(8, 25)
    T = series_stable(8)
    for i in range(1, 9):
        for n in range(2 * i + 3, 26, 2):
            assert S.coeff(i, n) == T.coeff(i)


def test_braid_series_examples():
    S = series_braid_f2(6, 12)
    assert all(S.coeff(0, n) == 1 for n in range(13))
    assert S.coeff(1, 2) == 1
    assert S.coeff(1, 1) == 0
    Q = series_braid_q(5, 8)
    assert Q.coeff(0, 1) == 1 and Q.coeff(1, 2) == 1 and Q.coeff(2, 4) == 0
    assert series_braid_fp(3, 4, 6).coeff(0, 5) == 1


@given(st.integers(1, 8), st.integers(1, 15), st.integers(0, 4), st.integers(0, 6))
def test_truncation_consistency(maxq, maxt, dq, dt):
    a = series_odd_poincare(maxq, maxt)
    b = series_odd_poincare(maxq + dq, maxt + dt)
    assert all(b.coeff(i, n) == v for (i, n), v in a.items())
    c = series_braid_f2(maxq, maxt)
    d = series_braid_f2(maxq + dq, maxt + dt)
    assert all(d.coeff(i, n) == v for (i, n), v in c.items())


def test_series_arithmetic():
    one = FormalSeries.one(4, 4)
    q = FormalSeries.monomial(1, 0, 4, 4)
    assert (one + q).coeff(1) == 1
    assert (q * q).coeff(2) == 1
    assert (q * q * q * q).coeff(4) == 1
    with pytest.raises(IndexError):
        (q * q).coeff(5)
    assert q.shift(1, 1).coeff(2, 1) == 1


def test_compare_reports_mismatches():
    S = series_odd_poincare(4, 7)
    good = {(i, n): S.coeff(i, n) for i in range(5) for n in range(8)}
    assert compare(S, good).ok
    bad = dict(good)
    bad[(2, 5)] = 7
    diff = compare(S, bad)
    assert not diff.ok and len(diff.lines()) == 1 and "7" in diff.lines()[0]


def test_bounds_are_checked():
    with pytest.raises(ValueError):
        series_odd_poincare(0, 5)
