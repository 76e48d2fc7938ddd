import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _naive import random_squarefree
from rigidzeta import builtin_hyperelliptic, builtin_superelliptic
from rigidzeta.frobenius import (
    DaggerArith,
    LiftLog,
    _eval_frob_bivar,
    _frob_exact_poly,
    _powers,
    frobenius_matrices,
    lift_inverse_r,
    lift_y,
    newton_schedule,
    push_forward_forms,
)
from rigidzeta.pipeline import prepare


def _alpha_residual(cd, alpha, N):
    da = DaggerArith(cd, N)
    ring = da.ring
    rs = _frob_exact_poly(cd, cd.r, N)
    return ring.sub(ring.mul(ring.norm(alpha.num), rs), da.rpow(alpha.K))


def _beta_residual(cd, beta, N):
    da = DaggerArith(cd, N)
    Qp = [da.ring.norm(c) for c in cd.Q]
    pw = _powers(da, beta, Qp, cd.d_x)
    return _eval_frob_bivar(da, cd, cd.Q, pw).nums


@pytest.mark.parametrize("N", [1, 2, 3, 5, 8, 13])
def test_newton_schedule_length(N):
    sched = newton_schedule(N)
    assert sched[0] == 1 and sched[-1] == N
    assert len(sched) - 1 == math.ceil(math.log2(N))
    assert all(b <= 2 * a for a, b in zip(sched, sched[1:]))


def test_inverse_r_elliptic_p5_N2():
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 5))
    alpha = lift_inverse_r(cd, 2)
    assert not _alpha_residual(cd, alpha, 2)
    ring = cd.ring(2)
    assert alpha.pole_order(ring, cd.padic_poly(cd.r, 2)) <= 10


def test_inverse_r_reduces_to_r_power():
    # Frob(1/r) = 1/r^p modulo p
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 5))
    alpha = lift_inverse_r(cd, 4)
    ring = cd.ring(4)
    r = cd.padic_poly(cd.r, 4)
    diff = ring.sub(ring.norm(alpha.num), ring.pow(r, alpha.K - 5))
    assert all(c % 5 == 0 for c in diff)


def test_lift_y_p3_N3():
    f = [1, -1, 0, 1]
    cd = prepare(builtin_hyperelliptic(f, 3))
    alpha = lift_inverse_r(cd, 3)
    beta = lift_y(cd, alpha, 3)
    assert not any(_beta_residual(cd, beta, 3))
    ring = cd.ring(3)
    # beta = b y / r^K with b^2 f = f(x^p) r^(2K) modulo 27 (here r = f)
    assert not beta.nums[0]
    b = ring.norm(beta.nums[1])
    r = cd.padic_poly(cd.r, 3)
    got = ring.mul(ring.mul(b, b), r)
    want = ring.mul(_frob_exact_poly(cd, cd.r, 3), ring.pow(r, 2 * beta.K))
    assert ring.sub(got, want) == []


def test_lift_y_reduces_to_y_power():
    # y^3 = f y on y^2 = f, so beta = f y r^K / r^K modulo 3
    f = [1, -1, 0, 1]
    cd = prepare(builtin_hyperelliptic(f, 3))
    beta = lift_y(cd, lift_inverse_r(cd, 4), 4)
    ring = cd.ring(4)
    r = cd.padic_poly(cd.r, 4)
    want = ring.mul(r, ring.pow(r, beta.K))
    assert all(c % 3 == 0 for c in ring.norm(beta.nums[0]))
    assert all(c % 3 == 0 for c in ring.sub(ring.norm(beta.nums[1]), want))


def test_lift_log_shows_doubling():
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 7))
    log = LiftLog([])
    alpha = lift_inverse_r(cd, 9, log)
    lift_y(cd, alpha, 9, log)
    assert log.schedule == [1, 2, 3, 5, 9]
    for prev, v in log.alpha_residuals + log.beta_residuals:
        assert v >= prev


def test_phi_first_row_is_one():
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 5))
    N = 4
    alpha = lift_inverse_r(cd, N)
    beta = lift_y(cd, alpha, N)
    fm = frobenius_matrices(cd, alpha, beta, N)
    assert fm.Phi[0][0].num == [1] and fm.Phi[0][0].K == 0
    assert not fm.Phi[0][1].num
    assert fm.Phi[1][1].num == cd.ring(N).norm(beta.nums[1])


def test_push_forward_zero_and_factor_p():
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 5))
    N = 4
    alpha = lift_inverse_r(cd, N)
    beta = lift_y(cd, alpha, N)
    fm = frobenius_matrices(cd, alpha, beta, N)
    zero, form = push_forward_forms(cd, fm, [[[], []], [[], [1]]], N)
    assert not any(zero.nums)
    assert any(form.nums)
    assert all(c % 5 == 0 for x in form.nums for c in x)


def _lift_strategy():
    @st.composite
    def build(draw):
        rng = random.Random(draw(st.integers(0, 10**6)))
        N = draw(st.integers(1, 6))
        if draw(st.booleans()):
            p = draw(st.sampled_from([3, 5, 7]))
            return builtin_hyperelliptic(random_squarefree(rng, p, draw(st.sampled_from([3, 5]))), p), N
        return builtin_superelliptic(random_squarefree(rng, 7, 4, monic=True), 3, 7), N

    return build()


@settings(max_examples=20)
@given(_lift_strategy())
def test_lift_residuals_and_reduction(case):
    inp, N = case
    cd = prepare(inp)
    log = LiftLog([])
    alpha = lift_inverse_r(cd, N, log)
    beta = lift_y(cd, alpha, N, log)
    assert not _alpha_residual(cd, alpha, N)
    assert not any(_beta_residual(cd, beta, N))
    # every Newton step gains at least what the schedule promised
    for prev, v in log.alpha_residuals + log.beta_residuals:
        assert v >= prev
    ring = cd.ring(N)
    assert alpha.pole_order(ring, cd.padic_poly(cd.r, N)) <= cd.p * N


def test_extension_field_residuals():
    cd = prepare(builtin_hyperelliptic([1, 2, 0, 0, 0, 1], 5, n=2))
    alpha = lift_inverse_r(cd, 5)
    beta = lift_y(cd, alpha, 5)
    assert not _alpha_residual(cd, alpha, 5)
    assert not any(_beta_residual(cd, beta, 5))
    # Frob(y) stays in the y-line for a hyperelliptic model
    assert not beta.nums[0]
