import pytest

from _naive import hyperelliptic_count, superelliptic_count
from conftest import genus1_suite, genus2_suite
from rigidzeta import builtin_hyperelliptic, builtin_superelliptic, count_points, lpoly_from_counts
from rigidzeta.errors import BudgetExceeded, InconsistentCounts
from rigidzeta.oracle import boundary_algebras, count_affine, make_fq
from rigidzeta.pipeline import prepare


def test_elliptic_p5_matches_hand_count():
    # y^2 = x^3 + x + 1 over F_5: x = 0,2,3,4 give squares, x = 1 gives 3
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 5))
    c = count_points(cd, 1)
    assert c == {"affine": 8, "finite_boundary": 0, "infinite_boundary": 1, "total": 9}


@pytest.mark.parametrize("f,p", genus1_suite()[:5] + genus2_suite()[:3])
@pytest.mark.parametrize("k", [1, 2])
def test_hyperelliptic_counts_agree_with_character_sums(f, p, k):
    cd = prepare(builtin_hyperelliptic(f, p))
    assert count_points(cd, k)["total"] == hyperelliptic_count(f, p, k)


def test_even_degree_points_at_infinity():
    # deg 6, leading coefficient 1: two points at infinity over every field
    f, p = [1, 2, 0, 0, 0, 0, 1], 11
    cd = prepare(builtin_hyperelliptic(f, p))
    for k in (1, 2):
        c = count_points(cd, k)
        assert c["infinite_boundary"] == 2
        assert c["total"] == hyperelliptic_count(f, p, k)


def test_even_degree_nonsquare_leading_coefficient():
    f, p = [1, 2, 0, 0, 0, 0, 2], 5  # 2 is not a square mod 5
    cd = prepare(builtin_hyperelliptic(f, p))
    assert count_points(cd, 1)["infinite_boundary"] == 0
    assert count_points(cd, 2)["infinite_boundary"] == 2
    assert count_points(cd, 1)["total"] == hyperelliptic_count(f, p, 1)


@pytest.mark.parametrize("f,d,p", [([1, 0, 0, 0, 1], 3, 7), ([0, 1, 0, 0, 1], 3, 7), ([2, 1, 0, 1], 4, 5)])
def test_superelliptic_counts(f, d, p):
    cd = prepare(builtin_superelliptic(f, d, p))
    for k in (1, 2):
        assert count_points(cd, k)["total"] == superelliptic_count(f, d, p, k)


def test_root_of_r_at_origin_counted_once():
    # f(0) = 0: the Weierstrass point over x = 0 sits on the finite boundary
    cd = prepare(builtin_hyperelliptic([0, 1, 0, 1], 5))
    c = count_points(cd, 1)
    assert c["finite_boundary"] >= 1
    assert c["total"] == hyperelliptic_count([0, 1, 0, 1], 5, 1)


def test_extension_field_embedding():
    # over F_9 the count must equal the F_3-model count over F_9
    f = [1, 1, 0, 1]
    cd = prepare(builtin_hyperelliptic(f, 3, n=2))
    assert count_points(cd, 1)["total"] == hyperelliptic_count(f, 3, 2)
    assert count_points(cd, 2)["total"] == hyperelliptic_count(f, 3, 4)


def test_fq_tau_is_root_of_f_mod():
    fq = make_fq(5, 2, [2, 0, 1], 2)
    L = fq.field
    t = fq.tau
    assert L.add(L.mul(t, t), L(2)) == L.zero


def test_boundary_algebra_ranks():
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 7))
    A0, Ainf = boundary_algebras(cd)
    assert A0.rank == 2 * 3 and Ainf.rank == 2


def test_budget_is_enforced():
    cd = prepare(builtin_hyperelliptic([1, 1, 0, 1], 5))
    with pytest.raises(BudgetExceeded):
        count_affine(cd, 3, budget=100)


def test_lpoly_from_counts_round_trip():
    # y^2 = x^3 + x + 1 over F_5 has 9 points, chi = 1 + 3T + 5T^2
    L = lpoly_from_counts([9], 5, 1)
    assert L.coeffs == [1, 3, 5]


def test_lpoly_from_counts_rejects_weil_violation():
    with pytest.raises(InconsistentCounts):
        lpoly_from_counts([40], 5, 1)
    with pytest.raises(InconsistentCounts):
        lpoly_from_counts([9], 5, 2)
