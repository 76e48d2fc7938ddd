import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidzeta.errors import NotAUnit, NotPrime, PrecisionTooSmall, ReducibleDefiningPolynomial, SingularToPrecision
from rigidzeta.padic import (
    Ring,
    discriminant_y,
    frobenius_sigma,
    make_context,
    matrix_solve_mod_r,
    poly_resultant_y,
    zq_invert,
)


def test_make_context_n1_sigma_is_identity():
    ctx = make_context(7, 1, 5, [0, 1])
    a = ctx.elem([12345])
    assert frobenius_sigma(a) == a


def test_sigma_t_is_conjugate_for_t2_plus_2():
    ctx = make_context(5, 2, 4, [2, 0, 1])
    t = ctx.elem([0, 1])
    assert frobenius_sigma(t) == -t
    assert frobenius_sigma(t, 2) == t


def test_sigma_t_newton_residual_degree3():
    ctx = make_context(3, 3, 3, [1, -1, 0, 1])
    ring = ctx.ring
    s = list(ctx.sigma_image)
    # f(sigma(t)) = 0 mod 27
    val = ring.eadd(ring.emul(ring.emul(s, s), s), ring.eadd(ring.eneg(s), ring.elem(1)))
    assert not any(val)
    # sigma(t) = t^3 mod 3
    t = [0, 1, 0]
    t3 = ring.emul(ring.emul(t, t), t)
    assert all((a - b) % 3 == 0 for a, b in zip(s, t3))


def test_sigma_of_t_plus_one():
    ctx = make_context(3, 3, 6, [1, -1, 0, 1])
    a = ctx.elem([1, 1, 0])
    expect = ctx.elem(1) + ctx.elem(list(ctx.sigma_image))
    assert frobenius_sigma(a) == expect


def test_context_errors():
    with pytest.raises(NotPrime):
        make_context(6, 1, 3, [0, 1])
    with pytest.raises(ReducibleDefiningPolynomial):
        make_context(5, 2, 3, [1, 0, 1])  # t^2 + 1 = (t - 2)(t + 2) mod 5
    with pytest.raises(PrecisionTooSmall):
        make_context(5, 1, 0, [0, 1])


def test_zq_invert_examples():
    ctx = make_context(5, 1, 3, [0, 1])
    assert zq_invert(ctx.elem(2)).coeffs == (63,)
    assert zq_invert(ctx.elem(1)) == ctx.elem(1)
    ctx2 = make_context(5, 2, 2, [2, 0, 1])
    t = ctx2.elem([0, 1])
    assert t * zq_invert(t) == ctx2.elem(1)
    with pytest.raises(NotAUnit):
        zq_invert(ctx.elem(10))


def test_resultant_of_hyperelliptic_model():
    ring = Ring(1, [0, 1], 7, 6)
    f = [1, 1, 0, 1]
    A = [ring.neg(ring.norm(f)), [], [1]]
    B = [[], [2]]
    assert poly_resultant_y(ring, A, B) == ring.norm([-4 * c for c in f])
    assert discriminant_y(ring, A) == ring.norm([4 * c for c in f])


def test_resultant_degree_one_in_y():
    ring = Ring(1, [0, 1], 7, 6)
    A = [ring.norm([0, -1]), [1]]
    assert poly_resultant_y(ring, A, [[1]]) == [1]


def test_discriminant_of_cube_root():
    ring = Ring(1, [0, 1])
    A = [[0, -1], [], [], [1]]
    assert discriminant_y(ring, A) == [0, 0, -27]
    assert poly_resultant_y(ring, A, [[], [], [3]]) == [0, 0, 27]


def test_resultant_multiplicative_in_first_argument():
    rng = random.Random(7)
    ring = Ring(1, [0, 1], 11, 8)
    for _ in range(5):
        A1 = [ring.norm([rng.randint(0, 10) for _ in range(3)]), [1]]
        A2 = [ring.norm([rng.randint(0, 10) for _ in range(2)]), ring.norm([rng.randint(0, 10)]), [1]]
        B = [ring.norm([rng.randint(0, 10) for _ in range(2)]), ring.norm([rng.randint(1, 10)]), [1]]
        prod = [[] for _ in range(4)]
        for i, a in enumerate(A1):
            for j, b in enumerate(A2):
                prod[i + j] = ring.add(prod[i + j], ring.mul(a, b))
        lhs = poly_resultant_y(ring, prod, B)
        rhs = ring.mul(poly_resultant_y(ring, A1, B), poly_resultant_y(ring, A2, B))
        assert lhs == rhs


def test_matrix_solve_identity_and_diagonal():
    ring = Ring(1, [0, 1], 7, 5)
    r = [1, 0, 1]
    I = [[[1], []], [[], [1]]]
    b = [[3, 4], [5]]
    x, loss = matrix_solve_mod_r(ring, I, b, r)
    assert loss == 0 and x == b
    D = [[[2], []], [[], [3]]]
    x, loss = matrix_solve_mod_r(ring, D, b, r)
    assert ring.mod_monic(ring.mul([2], x[0]), r) == ring.norm(b[0])
    assert ring.mod_monic(ring.mul([3], x[1]), r) == ring.norm(b[1])


def test_matrix_solve_random_3x3_residual():
    rng = random.Random(3)
    ring = Ring(1, [0, 1], 7, 6)
    r = [1, 0, 1]
    M = [[ring.norm([rng.randint(0, 48), rng.randint(0, 48)]) for _ in range(3)] for _ in range(3)]
    b = [ring.norm([rng.randint(0, 48), rng.randint(0, 48)]) for _ in range(3)]
    x, loss = matrix_solve_mod_r(ring, M, b, r)
    m = ring.modulus
    for i in range(3):
        acc = []
        for j in range(3):
            acc = ring.add(acc, ring.mul(M[i][j], x[j]))
        acc = ring.mod_monic(acc, r)
        want = ring.norm([c * 7**loss for c in b[i]])
        got = ring.norm(acc)
        assert all((u - v) % (m // 7**loss) == 0 for u, v in zip(got + [0] * 4, want + [0] * 4))


def test_matrix_solve_singular():
    ring = Ring(1, [0, 1], 7, 5)
    r = [1, 0, 1]
    M = [[[1], [1]], [[1], [1]]]
    with pytest.raises(SingularToPrecision):
        matrix_solve_mod_r(ring, M, [[1], [2]], r)


CASES = [(5, 1, [0, 1]), (5, 2, [2, 0, 1]), (3, 3, [1, 2, 0, 1])]


@pytest.mark.parametrize("p,n,f", CASES)
@settings(max_examples=60)
@given(data=st.data())
def test_sigma_is_frobenius_mod_p(p, n, f, data):
    ctx = make_context(p, n, 6, f)
    a = ctx.elem(data.draw(st.lists(st.integers(0, p**6 - 1), min_size=n, max_size=n)))
    s = frobenius_sigma(a)
    ap = a**p
    assert all((u - v) % p == 0 for u, v in zip(s.coeffs, ap.coeffs))


@pytest.mark.parametrize("p,n,f", CASES)
@settings(max_examples=40)
@given(data=st.data())
def test_higher_precision_truncates_to_lower(p, n, f, data):
    lo, hi = make_context(p, n, 4, f), make_context(p, n, 9, f)
    c1 = data.draw(st.lists(st.integers(0, p**9 - 1), min_size=n, max_size=n))
    c2 = data.draw(st.lists(st.integers(0, p**9 - 1), min_size=n, max_size=n))
    big = frobenius_sigma(hi.elem(c1) * hi.elem(c2))
    small = frobenius_sigma(lo.elem(c1) * lo.elem(c2))
    assert tuple(v % p**4 for v in big.coeffs) == small.coeffs


@settings(max_examples=40)
@given(st.lists(st.integers(-(10**6), 10**6), min_size=8, max_size=20),
       st.lists(st.integers(-(10**6), 10**6), min_size=8, max_size=20))
def test_kronecker_product_matches_schoolbook(a, b):
    ring = Ring(1, [0, 1])
    want = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            want[i + j] += u * v
    while want and want[-1] == 0:
        want.pop()
    assert ring.mul(ring.trim(list(a)), ring.trim(list(b))) == want
