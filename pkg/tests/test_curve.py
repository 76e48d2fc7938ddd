import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _naive import random_squarefree
from rigidzeta import builtin_hyperelliptic, builtin_superelliptic
from rigidzeta.curve import CurveInput, _bivar_mul, audit_assumptions, residue_matrices
from rigidzeta.errors import DegenerateCurve, NotMonicInY, NotSquarefreeModP, SupportChangedModP
from rigidzeta.exact import QPoly
from rigidzeta.padic import bivar_deriv_y, reduce_mod_Q
from rigidzeta.pipeline import prepare

ELLIPTIC = [1, 1, 0, 1]  # x^3 + x + 1, discriminant -31


def test_elliptic_derived_objects():
    cd = prepare(builtin_hyperelliptic(ELLIPTIC, 7))
    assert cd.Delta == QPoly([4, 4, 0, 4])
    assert cd.r == QPoly(ELLIPTIC)
    assert cd.m == 1
    assert cd.gpoly == QPoly([1], 4)
    assert cd.s == [[], [2]]
    assert cd.genus == 1


def test_elliptic_connection_matrix():
    # d(y) = f'/(2y) dx, so r G0 = diag(0, f'/2)
    cd = prepare(builtin_hyperelliptic(ELLIPTIC, 7))
    zero = QPoly([])
    assert cd.rG0[0] == [zero, zero]
    assert cd.rG0[1][0] == zero
    assert cd.rG0[1][1] == QPoly([1, 0, 3], 2)


def test_audit_passes_at_7_and_fails_at_31():
    good = prepare(builtin_hyperelliptic(ELLIPTIC, 7)).audit
    assert all(good.clauses.values())
    # the builtin constructor refuses p = 31 outright, so build the input by hand
    inp = builtin_hyperelliptic(ELLIPTIC, 7)
    inp.p = 31
    bad = prepare(inp).audit
    assert not bad.clauses["a_disc_r_unit"]


def test_audit_is_rerunnable():
    cd = prepare(builtin_hyperelliptic(ELLIPTIC, 7))
    assert audit_assumptions(cd).clauses == cd.audit.clauses


def test_hyperelliptic_residue_exponents():
    cd = prepare(builtin_hyperelliptic(ELLIPTIC, 7))
    rd = residue_matrices(cd, 6)
    assert sorted(rd.exponents0) == [Fraction(0), Fraction(1, 2)]
    assert sorted(rd.exponents_inf) == [Fraction(0), Fraction(1, 2)]


@pytest.mark.parametrize("f,p,k", [(ELLIPTIC, 7, 2), ([1, 1, 0, 0, 0, 1], 11, 3)])
def test_builtin_infinite_basis(f, p, k):
    cd = prepare(builtin_hyperelliptic(f, p))
    W = cd.Winf
    assert W[0][1].is_zero() and W[1][0].is_zero()
    assert W[0][0].num == QPoly([1]) and W[0][0].xs == 0
    assert W[1][1].num == QPoly([1]) and W[1][1].xs == -k and W[1][1].rp == 0


def test_builtin_rejects_nonsquarefree():
    with pytest.raises(NotSquarefreeModP):
        builtin_hyperelliptic([0, 0, 1], 7)
    with pytest.raises(NotSquarefreeModP):
        builtin_hyperelliptic([1, -1, -1, 1], 7)  # (x - 1)^2 (x + 1)


def test_degenerate_and_malformed_inputs():
    one = [[[1]]]
    line = CurveInput(p=7, n=1, f_mod=[0, 1], Q=[[[0], [-1]], [[1]]], W0=one, Winf=one)
    with pytest.raises(DegenerateCurve):
        prepare(line)
    bad = builtin_hyperelliptic(ELLIPTIC, 7)
    bad.Q[-1] = [[2]]
    with pytest.raises(NotMonicInY):
        prepare(bad)
    gone = builtin_hyperelliptic(ELLIPTIC, 7)
    gone.Q[0][1] = [-7]  # the x y^0 monomial vanishes mod 7
    with pytest.raises(SupportChangedModP):
        prepare(gone)


def _curve_strategy():
    @st.composite
    def build(draw):
        seed = draw(st.integers(0, 10**6))
        rng = random.Random(seed)
        kind = draw(st.sampled_from(["hyp3", "hyp5", "super"]))
        if kind == "super":
            p = draw(st.sampled_from([7, 13]))
            return builtin_superelliptic(random_squarefree(rng, p, 4, monic=True), 3, p)
        p = draw(st.sampled_from([5, 7, 11]))
        deg = 3 if kind == "hyp3" else 5
        return builtin_hyperelliptic(random_squarefree(rng, p, deg), p)

    return build()


@settings(max_examples=25)
@given(_curve_strategy())
def test_setup_invariants(inp):
    cd = prepare(inp)
    qa, ring = cd.qa, cd.qa.ring
    # r^m = g Delta exactly
    assert qa.pow(cd.r, cd.m) == qa.mul(cd.gpoly, cd.Delta)
    # s dQ/dy = Delta mod Q
    rem = reduce_mod_Q(ring, cd.Q, _bivar_mul(ring, cd.s, bivar_deriv_y(ring, cd.Q)))
    while rem and not rem[-1]:
        rem.pop()
    assert rem == [cd.Delta.num]
    # degree bounds
    assert qa.deg(cd.Delta) <= 2 * (cd.d_x - 1) * cd.d_y
    assert qa.deg(cd.r) <= qa.deg(cd.Delta)
    assert 1 <= cd.genus <= (cd.d_x - 1) * (cd.d_y - 1)
    assert cd.e0 <= cd.d_x and cd.einf <= cd.d_x
    # r G0 is polynomial with p-integral coefficients
    for row in cd.rG0:
        for e in row:
            assert e.den % cd.p != 0
    assert all(cd.audit.clauses.values())
    # exponents in [0, 1), stable under more precision
    rd = residue_matrices(cd, 6)
    for lam in rd.exponents0 + rd.exponents_inf:
        assert 0 <= lam < 1 and lam.denominator % cd.p != 0
    rd2 = residue_matrices(cd, 12)
    assert sorted(rd.exponents0) == sorted(rd2.exponents0)
    assert sorted(rd.exponents_inf) == sorted(rd2.exponents_inf)


def test_finite_residue_matrix_is_constant_half():
    # M0 = (f'/2) (f')^-1 mod f, so every root sees diag(0, 1/2)
    cd = prepare(builtin_hyperelliptic([-3, 2, 0, 1], 7))
    zero = QPoly([])
    assert cd.M0 == [[zero, zero], [zero, QPoly([1], 2)]]
