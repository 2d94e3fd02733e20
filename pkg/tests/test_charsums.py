import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import gf
from kloomo import charsums as cs
from kloomo.errors import BudgetExceeded, NotIrreducible, RangeError, ZeroParameter
from reference_values import MOMENTS_Q16, MOMENTS_Q32


def naive_k(f, a):
    return sum(f.character(x ^ f.mul(a, f.inv(x))) for x in f.nonzero())


def naive_km(f, m, a):
    total = 0
    for xs in itertools.product(range(1, f.q), repeat=m):
        p, s = 1, 0
        for x in xs:
            p = f.mul(p, x)
            s ^= x
        total += f.character(s ^ f.mul(a, f.inv(p)))
    return total


def test_small_values():
    assert cs.kloosterman(gf(1), 1) == 1
    assert cs.kloosterman(gf(2), 1) == 3
    assert cs.kloosterman_m(gf(2), 1, 1) == 3
    assert cs.kloosterman_m(gf(2), 2, 1) == 5
    assert cs.carlitz_k2(gf(2), 1) == 5
    assert cs.carlitz_k2(gf(1), 1) == -1


def test_zero_parameter():
    with pytest.raises(ZeroParameter):
        cs.kloosterman(gf(2), 0)
    with pytest.raises(ZeroParameter):
        cs.kloosterman_m(gf(2), 2, 0)
    with pytest.raises(RangeError):
        cs.kloosterman_m(gf(2), 0, 1)


@pytest.mark.parametrize("r", range(1, 8))
def test_kloosterman_matches_naive(r):
    f = gf(r)
    table = cs.kloosterman_table(f)
    assert all(table[a] == naive_k(f, a) for a in f.nonzero())


@pytest.mark.parametrize("r, m", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_kloosterman_m_matches_naive(r, m):
    f = gf(r)
    assert all(cs.kloosterman_m(f, m, a) == naive_km(f, m, a) for a in f.nonzero())


@pytest.mark.parametrize("r", [2, 3, 4])
def test_carlitz(r):
    f = gf(r)
    assert all(cs.kloosterman_m(f, 2, a) == cs.carlitz_k2(f, a) for a in f.nonzero())


def test_kloosterman_m_budget():
    with pytest.raises(BudgetExceeded):
        cs.kloosterman_m(gf(12), 3, 1)


def test_kgl_values():
    f = gf(2)
    assert cs.kgl(f, 0, 1) == 1
    assert cs.kgl(f, 1, 1) == 3
    assert cs.kgl(f, 2, 1) == 84
    assert cs.kgl_closed(f, 1, 1) == 3
    assert cs.kgl_closed(f, 2, 1) == 84
    assert cs.kgl_closed(f, 3, 1) == cs.kgl(f, 3, 1)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_kgl_closed_equals_recursion(r):
    f = gf(r)
    for a in f.nonzero():
        for t in range(1, 5):
            assert cs.kgl_closed(f, t, a) == cs.kgl(f, t, a)


@given(st.integers(-12, 12), st.sampled_from([2, 4, 8, 16, 32]), st.integers(1, 9))
def test_kgl_closed_polynomial_identity(k, q, t):
    assert cs.kgl_closed_from_k(k, q, t) == cs.kgl_from_k(k, q, t)


@pytest.mark.parametrize("r", range(1, 13))
def test_weil_and_frobenius(r):
    f = gf(r)
    table = cs.kloosterman_table(f)
    for a, k in table.items():
        assert k * k <= 4 * f.q
        assert r == 1 or k % 4 == 3
        assert table[f.mul(a, a)] == k


def test_value_profiles():
    assert cs.value_profile(gf(2)).multiplicities == {-1: 2, 3: 1}
    prof = cs.value_profile(gf(4))
    assert set(prof.multiplicities) == {-5, -1, 3, 7}
    assert prof.total == 15


@pytest.mark.parametrize("r", range(2, 7))
def test_range_and_attainment(r):
    q = 1 << r
    prof = cs.value_profile(gf(r))
    assert sorted(prof.multiplicities) == cs.admissible_values(q)
    assert all(t * t < 4 * q and t % 4 == 3 for t in prof.multiplicities)
    assert prof.total == q - 1


def test_admissible_values_brute():
    for q in (2, 4, 8, 16, 32, 64, 1024):
        assert cs.admissible_values(q) == [t for t in range(-100, 100) if t * t < 4 * q and t % 4 == 3]


def test_moment_direct_values():
    assert cs.moment_direct(gf(4), 1, 0) == 15
    assert cs.moment_direct(gf(4), 1, 2) == MOMENTS_Q16[2]
    assert cs.moment_direct(gf(5), 1, 3) == MOMENTS_Q32[3]
    for r in range(1, 10):
        assert cs.moment_direct(gf(r), 1, 1) == 1


def test_moment_direct_matches_table_sum():
    f = gf(6)
    vals = [k for _, k in cs.kloosterman_table(f).items()]
    for h in range(8):
        assert cs.moment_direct(f, 1, h) == sum(k ** h for k in vals)
        assert cs.moment_direct(f, 2, h) == sum((k * k - f.q) ** h for k in vals)


def test_convolution_identity():
    f = gf(2)
    assert cs.convolution_identity_sides(f, 1, 0) == (1, 1)
    # tr(1) = 0 in GF(4), so the right side is 4 * 1 + 1
    assert cs.convolution_identity_sides(f, 1, 1) == (5, 5)
    for r in (1, 2, 3, 4):
        g = gf(r)
        for m in (1, 2):
            assert all(cs.convolution_identity_check(g, m, b) for b in g.elements())


def test_convolution_identity_m3():
    f = gf(3)
    assert all(cs.convolution_identity_check(f, 3, b) for b in f.elements())


def naive_as(f, beta, b):
    # sum over alpha not in {0,1} of lambda(beta / (alpha^2 + alpha)), and over all alpha with + b
    sa = sum(f.character(f.div(beta, f.mul(x, x) ^ x)) for x in range(2, f.q))
    sb = sum(f.character(f.div(beta, f.mul(x, x) ^ x ^ b)) for x in f.elements())
    return sa, sb


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_artin_schreier(r):
    f = gf(r)
    b = f.smallest_trace_one()
    for beta in f.nonzero():
        got = cs.artin_schreier_sums(f, beta, b)
        assert got["a"][0] == got["a"][1]
        assert got["b"][0] == got["b"][1]
        assert (got["a"][0], got["b"][0]) == naive_as(f, beta, b)


def test_artin_schreier_needs_trace_one():
    f = gf(4)
    with pytest.raises(NotIrreducible):
        cs.artin_schreier_sums(f, 1, 1)
    assert cs.artin_schreier_sums_check(gf(2), 1, 0b10)


def test_table_memoized():
    f = gf(7)
    assert cs.kloosterman_table(f) is cs.kloosterman_table(f)
