from math import isqrt

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from _naive import hyperelliptic_count
from rigidzeta import RunConfig, builtin_hyperelliptic, counts_from_lpoly, lpoly_from_counts, run
from rigidzeta.cohomology import FrobMatrixF, ReductionStats
from rigidzeta.errors import BoundBreach, NegativeCount, NotRational
from rigidzeta.padic import make_context
from rigidzeta.zeta import LPolynomial, char_poly_reverse, lpoly_from_power_sums, power_sums, recover_integer_lpoly, twisted_norm


def _F(stored, E=8, shift=0):
    return FrobMatrixF(stored=stored, shift=shift, E=E, delta=0, min_val=0, stats=ReductionStats(),
                       extra_coords_val=E, column_shifts=[shift] * len(stored))


def test_twisted_norm_n1_is_identity_map():
    ctx = make_context(5, 1, 8, [0, 1])
    F = _F([[[3], [1]], [[4], [2]]])
    M, S, _ = twisted_norm(F, ctx)
    assert S == 0 and M == F.stored


def test_twisted_norm_n2_applies_sigma():
    # F = [[t]]: F^sigma F = sigma(t) t = -t^2 = 2 for t^2 = -2
    ctx = make_context(5, 2, 6, [2, 0, 1])
    F = _F([[[0, 1]]], E=6)
    M, _, E2 = twisted_norm(F, ctx)
    assert [c % 5**6 for c in M[0][0]] == [2, 0]


def test_char_poly_reverse_small():
    ring = make_context(7, 1, 6, [0, 1]).ring
    zero = [[[0], [0]], [[0], [0]]]
    assert [c[0] for c in char_poly_reverse(zero, ring)] == [1, 0, 0]
    diag = [[[2], [0]], [[0], [3]]]
    # (1 - 2T)(1 - 3T) = 1 - 5T + 6T^2
    assert [c[0] % 7**6 for c in char_poly_reverse(diag, ring)] == [1, (-5) % 7**6, 6]


def test_elliptic_over_f5_recovers_point_count():
    res = run(builtin_hyperelliptic([1, 1, 0, 1], 5))
    assert res.lpoly.coeffs == [1, 3, 5]
    assert res.lpoly.coeffs[1] == hyperelliptic_count([1, 1, 0, 1], 5, 1) - 6
    assert res.counts == [9]


def test_elliptic_over_f7_pattern():
    res = run(builtin_hyperelliptic([1, 1, 0, 1], 7))
    a = hyperelliptic_count([1, 1, 0, 1], 7, 1) - 8
    assert res.lpoly.coeffs == [1, a, 7]


def test_genus1_over_f9_twisted_norm():
    res = run(builtin_hyperelliptic([1, 1, 0, 1], 3, n=2), RunConfig(count_depth=2))
    assert res.counts == [hyperelliptic_count([1, 1, 0, 1], 3, 2), hyperelliptic_count([1, 1, 0, 1], 3, 4)]


def test_exact_approximation_passes_through():
    approx = [[1], [2], [5]]
    L, checks = recover_integer_lpoly(approx, 1, 5, 1, [2])
    assert L.coeffs == [1, 2, 5] and checks["fe_congruence"]


def test_recovery_rejects_irrational_and_out_of_window():
    with pytest.raises(NotRational):
        recover_integer_lpoly([[1, 0], [2, 1], [25, 0]], 1, 5, 2, [2])
    with pytest.raises(BoundBreach):
        # a_1 = 12 mod 5^3 has no representative in the Weil window for q = 5
        recover_integer_lpoly([[1], [12], [5]], 1, 5, 1, [3])


def test_counts_for_genus_zero_and_hasse_window():
    L0 = LPolynomial([1], 0, 7)
    assert counts_from_lpoly(L0, 3) == [8, 50, 344]
    L = LPolynomial([1, 3, 5], 1, 5)
    for i, c in enumerate(counts_from_lpoly(L, 6), start=1):
        assert (5**i + 1 - c) ** 2 <= 4 * 5**i
    assert counts_from_lpoly(L, 2) == [9, hyperelliptic_count([1, 1, 0, 1], 5, 2)]


def test_lpolynomial_invariants_enforced():
    with pytest.raises(BoundBreach):
        LPolynomial([1, 3, 6], 1, 5)  # functional equation
    with pytest.raises(BoundBreach):
        LPolynomial([1, 5, 5], 1, 5)  # Weil bound
    with pytest.raises(BoundBreach):
        LPolynomial([2, 3, 5], 1, 5)


@st.composite
def weil_polys(draw):
    """Products of Weil polynomials 1 + a T + q T^2 with |a| <= 2 sqrt(q)."""
    q = draw(st.sampled_from([2, 3, 4, 5, 7, 9, 11, 25]))
    g = draw(st.integers(1, 4))
    bound = isqrt(4 * q)
    coeffs = [1]
    for _ in range(g):
        a = draw(st.integers(-bound, bound))
        f = [1, a, q]
        out = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            for j, d in enumerate(f):
                out[i + j] += c * d
        coeffs = out
    L = LPolynomial(coeffs, g, q)
    # not every Weil polynomial is the L-polynomial of a curve; drop those with negative counts
    try:
        counts_from_lpoly(L, 2 * g)
    except NegativeCount:
        assume(False)
    return L


@given(weil_polys())
def test_round_trip_through_counts(L):
    g, q = L.genus, L.q
    counts = counts_from_lpoly(L, 2 * g)
    assert all(c >= 0 for c in counts)
    assert lpoly_from_counts(counts, q, g).coeffs == L.coeffs
    assert lpoly_from_power_sums(power_sums(L.coeffs, g), g, q).coeffs == L.coeffs
    assert L(1) > 0


@given(weil_polys())
def test_recovery_from_truncated_approximation(L):
    # feed a_i modulo the digit requirement only; recovery must be exact
    from rigidzeta.precision import chi_digits_for

    g, q = L.genus, L.q
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n = {p**k: k for k in range(1, 6)}[q]
    digits = [chi_digits_for(g, n, p, i) for i in range(1, g + 1)]
    mod = p ** max(digits)
    approx = [[c % mod] + [0] * (n - 1) for c in L.coeffs]
    got, checks = recover_integer_lpoly(approx, g, p, n, digits)
    assert got.coeffs == L.coeffs and checks["fe_congruence"]
