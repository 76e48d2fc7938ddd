"""Brute-force point counts on the smooth model, for verification.

Affine points with r(x) != 0 come straight from the plane equation.  Points
above r = 0 and above x = infinity are counted as homomorphisms out of the
boundary algebras R0/(r) and Rinf/(1/x); these factor through the reduced
quotients, which the audit requires to be etale.  Both algebras are handled through their structure constants in the
integral bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ffield as ff
from .curve import CurveData
from .errors import BudgetExceeded, CurveError, InconsistentCounts, NoPrimitiveElement
from .exact import QPoly
from .padic import berkowitz
from .zeta import LPolynomial, lpoly_from_power_sums

DEFAULT_BUDGET = 10**8


@dataclass
class FqContext:
    """F_{q^i} as F_p[t]/(irreducible of degree n i), with F_q embedded via tau."""

    p: int
    n: int
    i: int
    field: ff.GF
    tau: tuple  # image of the generator of Z_q / p

    @property
    def order(self) -> int:
        return self.field.order

    def embed(self, c) -> tuple:
        """Image of a residue-field element given by its t-coordinates mod p."""
        L = self.field
        acc = L.zero
        for v in reversed(list(c)):
            acc = L.add(L.mul(acc, self.tau), L(v % self.p))
        return acc


def make_fq(p: int, n: int, f_mod: list, i: int) -> FqContext:
    if i == 1:
        L = ff.GF(p, [c % p for c in f_mod])
        tau = L([0, 1]) if n > 1 else L(0)
        return FqContext(p, n, i, L, tau)
    L = ff.GF(p, ff.find_irreducible(p, n * i))
    if n == 1:
        return FqContext(p, n, i, L, L(0))
    fm = [L(c % p) for c in f_mod]
    tau = ff.poly_find_root(L, fm)
    if tau is None:
        raise CurveError("defining polynomial has no root in the extension")
    return FqContext(p, n, i, L, tau)


def _elem_mod_p(c: tuple, p: int) -> list:
    """An exact K element (tuple of Fractions) reduced mod p."""
    out = []
    for v in c:
        v = Fraction(v)
        if v.denominator % p == 0:
            raise CurveError("coefficient is not p-integral")
        out.append(v.numerator * pow(v.denominator, -1, p) % p)
    return out


def _poly_to_L(cd: CurveData, a, fq: FqContext) -> list:
    """A QPoly as a list of F_{q^i} coefficients."""
    p, n = cd.p, cd.n
    if a.den % p == 0:
        raise CurveError("polynomial is not p-integral")
    inv = pow(a.den, -1, p)
    out = [fq.embed([v * inv % p for v in a.num[k : k + n]]) for k in range(0, len(a.num), n)]
    return ff.poly_trim(out)


def count_affine(cd: CurveData, i: int, budget: int = DEFAULT_BUDGET, fq: FqContext | None = None) -> int:
    """Points (x0, y0) over F_{q^i} on the plane model with r(x0) != 0."""
    fq = fq or make_fq(cd.p, cd.n, cd.ctx.f_mod, i)
    L = fq.field
    if L.order * cd.d_x > budget:
        raise BudgetExceeded(f"{L.order} x-values exceed the enumeration budget")
    Qc = [_poly_to_L(cd, QPoly(c), fq) for c in cd.Q]
    rbar = _poly_to_L(cd, cd.r, fq)
    total = 0
    for x0 in L.elements():
        if not any(ff.poly_eval(L, rbar, x0)):
            continue
        fy = ff.poly_trim([ff.poly_eval(L, c, x0) for c in Qc])
        total += len(ff.poly_frobenius_gcd(L, fy, 1)) - 1
    return total


# -- boundary algebras -----------------------------------------------------------


@dataclass
class BoundaryAlgebra:
    """Structure constants C[i][j][k]: b_i b_j = sum_k C[i][j][k] b_k.

    For the finite boundary the constants are exact polynomials in x, to be
    reduced at each root of r; at infinity they are exact K elements.
    """

    kind: str  # "finite" or "infinite"
    C: list
    rank: int


def _products(cd: CurveData, Wm: list, Wminv: list) -> list:
    ra, d = cd.ra, cd.d_x
    qa = cd.qa
    Qc = [ra.from_poly(qa.make(c)) for c in cd.Q]  # monic: Qc[d] = 1
    C = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            prod = [ra.zero] * (2 * d - 1)
            for a in range(d):
                if Wm[a][i].is_zero():
                    continue
                for b in range(d):
                    if Wm[b][j].is_zero():
                        continue
                    prod[a + b] = ra.add(prod[a + b], ra.mul(Wm[a][i], Wm[b][j]))
            for e in range(2 * d - 2, d - 1, -1):
                c = prod[e]
                if c.is_zero():
                    continue
                prod[e] = ra.zero
                for t in range(d):
                    if not Qc[t].is_zero():
                        prod[e - d + t] = ra.sub(prod[e - d + t], ra.mul(c, Qc[t]))
            coords = []
            for k in range(d):
                acc = ra.zero
                for c in range(d):
                    if not Wminv[k][c].is_zero() and not prod[c].is_zero():
                        acc = ra.add(acc, ra.mul(Wminv[k][c], prod[c]))
                coords.append(acc)
            C[i][j] = C[j][i] = coords
    return C


def boundary_algebras(cd: CurveData) -> tuple[BoundaryAlgebra, BoundaryAlgebra]:
    ra, qa, d = cd.ra, cd.qa, cd.d_x
    C0 = _products(cd, cd.W0, cd.W0inv)
    for row in C0:
        for coords in row:
            for e in coords:
                if not ra.is_poly(e):
                    raise CurveError("structure constants of b0 are not polynomial")
    C0 = [[[ra.to_poly(e) for e in coords] for coords in row] for row in C0]
    Ci = _products(cd, cd.Winf, cd.Winfinv)
    dr = cd.deg_r
    Cinf = []
    for row in Ci:
        out_row = []
        for coords in row:
            vals = []
            for e in coords:
                o = ra.ord_inf(e)
                if o is None or o > 0:
                    vals.append(qa.nf.zero)
                elif o == 0:
                    vals.append(qa.coeff(e.num, qa.deg(e.num)))
                else:
                    raise CurveError("structure constants of binf have a pole at infinity")
            out_row.append(vals)
        Cinf.append(out_row)
    return BoundaryAlgebra("finite", C0, d * dr), BoundaryAlgebra("infinite", Cinf, d)


def _mult_matrix(F, C: list, theta: list) -> list:
    """Matrix of multiplication by theta (column k = image of b_k)."""
    d = len(theta)
    M = [[F.zero] * d for _ in range(d)]
    for j in range(d):
        if not any(theta[j]):
            continue
        for i in range(d):
            for k in range(d):
                c = C[j][i][k]
                if any(c):
                    M[k][i] = F.add(M[k][i], F.mul(theta[j], c))
    return M


def _theta_candidates(F, d: int):
    for j in range(d):
        v = [F.zero] * d
        v[j] = F.one
        yield v
    for j in range(d):
        for k in range(j + 1, d):
            for c in range(1, min(F.order, 8)):
                v = [F.zero] * d
                v[j] = F.one
                v[k] = F.from_index(c)
                yield v


def _rank(F, M: list) -> int:
    M = [list(row) for row in M]
    rank, rows = 0, len(M)
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if any(M[i][c])), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = [F.mul(inv, v) for v in M[rank]]
        for i in range(rows):
            if i != rank and any(M[i][c]):
                f = M[i][c]
                M[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(M[i], M[rank])]
        rank += 1
    return rank


def geometric_points(F, C: list) -> int:
    """Rank of the trace form: the number of geometric points of Spec A.

    Nilpotents lie in its radical; multiplicities are prime to p here, so
    each reduced point contributes exactly one.
    """
    d = len(C)
    tr = [F.zero] * d
    for k in range(d):
        for i in range(d):
            tr[k] = F.add(tr[k], C[k][i][i])
    G = [[F.zero] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            acc = F.zero
            for k in range(d):
                if any(C[i][j][k]) and any(tr[k]):
                    acc = F.add(acc, F.mul(C[i][j][k], tr[k]))
            G[i][j] = acc
    return _rank(F, G)


def _separating_charpoly(F, C: list) -> list:
    """Squarefree part of the characteristic polynomial of an element that
    takes distinct values at all geometric points (coefficients low to high)."""
    d = len(C)
    target = geometric_points(F, C)
    for theta in _theta_candidates(F, d):
        M = _mult_matrix(F, C, theta)
        cp = ff.poly_trim(berkowitz(M, F.add, F.sub, F.mul, F.zero, F.one))
        sq = ff.poly_squarefree_part(F, cp)
        if len(sq) - 1 == target:
            return sq
    raise NoPrimitiveElement("no element separates the boundary points")


def count_boundary(cd: CurveData, A: BoundaryAlgebra, i: int, fq: FqContext | None = None) -> int:
    """Number of F_q-algebra maps from A to F_{q^i}."""
    if A.kind == "infinite":
        F = make_fq(cd.p, cd.n, cd.ctx.f_mod, 1).field
        C = [[[F(_elem_mod_p(c, cd.p)) for c in coords] for coords in row] for row in A.C]
        cp = _separating_charpoly(F, C)
        return len(ff.poly_frobenius_gcd(F, cp, i)) - 1
    fq = fq or make_fq(cd.p, cd.n, cd.ctx.f_mod, i)
    L = fq.field
    rbar = _poly_to_L(cd, cd.r, fq)
    Cx = [[[_poly_to_L(cd, c, fq) for c in coords] for coords in row] for row in A.C]
    total = 0
    roots = ff.poly_frobenius_gcd(L, rbar, 1)
    if len(roots) <= 1:
        return 0
    for x0 in L.elements():
        if any(ff.poly_eval(L, roots, x0)):
            continue
        C = [[[ff.poly_eval(L, c, x0) for c in coords] for coords in row] for row in Cx]
        cp = _separating_charpoly(L, C)
        total += len(ff.poly_frobenius_gcd(L, cp, 1)) - 1
    return total


def count_points(cd: CurveData, i: int, budget: int = DEFAULT_BUDGET, algebras=None) -> dict:
    """#X(F_{q^i}) split into its affine, finite-boundary and infinite parts."""
    fq = make_fq(cd.p, cd.n, cd.ctx.f_mod, i)
    A0, Ainf = algebras or boundary_algebras(cd)
    aff = count_affine(cd, i, budget, fq)
    b0 = count_boundary(cd, A0, i, fq)
    binf = count_boundary(cd, Ainf, i)
    return {"affine": aff, "finite_boundary": b0, "infinite_boundary": binf, "total": aff + b0 + binf}


def lpoly_from_counts(counts: list, q: int, g: int) -> LPolynomial:
    """Recover chi from #X(F_{q^i}), i = 1..g."""
    if len(counts) < g:
        raise InconsistentCounts(f"need {g} counts, got {len(counts)}")
    s = []
    for i, c in enumerate(counts[:g], start=1):
        si = q**i + 1 - c
        if si * si > 4 * g * g * q**i:
            raise InconsistentCounts(f"#X(F_q^{i}) = {c} violates the Weil bound")
        s.append(si)
    try:
        return lpoly_from_power_sums(s, g, q)
    except Exception as exc:
        raise InconsistentCounts(str(exc)) from exc
