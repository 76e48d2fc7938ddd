"""Exact arithmetic over K = Q[t]/(f_mod), used to set up curve data.

Two representations coexist:

* :class:`NF` is K itself (elements are tuples of Fractions) and plugs into
  the generic ``poly_*`` routines of :mod:`rigidzeta.ffield`; it is used for
  gcd computations.
* :class:`QPoly` is a polynomial over K stored as a flat integer polynomial
  over Z[t]/(f_mod) together with one positive integer denominator, so that
  products run through the fast Kronecker multiplication of the exact ring.

:class:`RFunc` adds a power of x and a power of a fixed monic r(x) to a
``QPoly``; matrices of these model W0, Winf and their relatives.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from . import ffield as ff
from .errors import NotAUnit
from .padic import Ring, berkowitz


class NF:
    """The number field Q[t]/(f) for an irreducible monic integer f."""

    def __init__(self, f_mod: Sequence[int]):
        self.f_mod = tuple(f_mod)
        self.k = len(f_mod) - 1
        self.zero = (Fraction(0),) * self.k
        self.one = (Fraction(1),) + (Fraction(0),) * (self.k - 1)
        self.p = 0

    def __call__(self, c) -> tuple:
        if isinstance(c, (int, Fraction)):
            return (Fraction(c),) + (Fraction(0),) * (self.k - 1)
        c = [Fraction(v) for v in c]
        return self._fold(c)

    def _fold(self, c: list) -> tuple:
        k, f = self.k, self.f_mod
        for J in range(len(c) - 1, k - 1, -1):
            v = c[J]
            if v:
                for i in range(k):
                    if f[i]:
                        c[J - k + i] -= v * f[i]
        c = c[:k] + [Fraction(0)] * (k - len(c[:k]))
        return tuple(c)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return (a[0] * b[0],)
        prod = [Fraction(0)] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._fold(prod)

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in number field")
        if self.k == 1:
            return (1 / a[0],)
        # solve a * b = 1 through the multiplication matrix
        cols = []
        e = self.one
        for _ in range(self.k):
            cols.append(self.mul(a, e))
            e = self.mul(e, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.k - 2))
        mat = [[cols[j][i] for j in range(self.k)] + [self.one[i]] for i in range(self.k)]
        return tuple(_solve_fraction(mat))

    def from_ints(self, c: Sequence[int]) -> tuple:
        return tuple(Fraction(v) for v in c)


def _solve_fraction(aug: list[list[Fraction]]) -> list[Fraction]:
    n = len(aug)
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [a - fac * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


class QPoly:
    """num / den with num a flat integer polynomial over Z[t]/(f), den > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: list[int], den: int = 1):
        if den < 0:
            num, den = [-v for v in num], -den
        g = gcd(den, *num) if num else den
        if g > 1:
            num = [v // g for v in num]
            den //= g
        self.num = num
        self.den = den if num else 1

    def __repr__(self) -> str:
        return f"QPoly({self.num}, {self.den})"

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num), self.den))


class QArith:
    """Operations on :class:`QPoly` values over a fixed exact ring."""

    def __init__(self, n: int, f_mod: Sequence[int]):
        self.ring = Ring(n, f_mod)
        self.n = n
        self.nf = NF(f_mod)
        self.zero = QPoly([])
        self.one = QPoly(self.ring.const(1))

    def make(self, num: Sequence[int], den: int = 1) -> QPoly:
        return QPoly(self.ring.norm(list(num)), den)

    def add(self, a: QPoly, b: QPoly) -> QPoly:
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den == b.den:
            return QPoly(self.ring.add(a.num, b.num), a.den)
        L = lcm(a.den, b.den)
        return QPoly(self.ring.add(self.ring.scale_int(a.num, L // a.den), self.ring.scale_int(b.num, L // b.den)), L)

    def neg(self, a: QPoly) -> QPoly:
        return QPoly(self.ring.neg(a.num), a.den)

    def sub(self, a: QPoly, b: QPoly) -> QPoly:
        return self.add(a, self.neg(b))

    def mul(self, a: QPoly, b: QPoly) -> QPoly:
        if not a.num or not b.num:
            return self.zero
        return QPoly(self.ring.mul(a.num, b.num), a.den * b.den)

    def scale(self, a: QPoly, c: QPoly) -> QPoly:
        return self.mul(a, c)

    def scale_frac(self, a: QPoly, c: Fraction) -> QPoly:
        c = Fraction(c)
        return QPoly(self.ring.scale_int(a.num, c.numerator), a.den * c.denominator)

    def deriv(self, a: QPoly) -> QPoly:
        return QPoly(self.ring.deriv(a.num), a.den)

    def shift(self, a: QPoly, k: int) -> QPoly:
        return QPoly(self.ring.shift(a.num, k), a.den)

    def deg(self, a: QPoly) -> int:
        return self.ring.deg(a.num)

    def low_order(self, a: QPoly) -> int:
        """Largest k with x^k dividing a (a nonzero)."""
        n = self.n
        k = 0
        while not any(a.num[k * n : (k + 1) * n]):
            k += 1
        return k

    def coeff(self, a: QPoly, i: int) -> tuple:
        blk = self.ring.coeff(a.num, i)
        return tuple(Fraction(v, a.den) for v in blk)

    def pow(self, a: QPoly, e: int) -> QPoly:
        return QPoly(self.ring.pow(a.num, e), a.den**e)

    def to_nf(self, a: QPoly) -> list:
        n = self.n
        return [tuple(Fraction(v, a.den) for v in a.num[i : i + n]) for i in range(0, len(a.num), n)]

    def from_nf(self, coeffs: Sequence[tuple]) -> QPoly:
        den = 1
        for c in coeffs:
            for v in c:
                den = lcm(den, v.denominator)
        num = []
        for c in coeffs:
            num.extend(int(v * den) for v in c)
        return QPoly(self.ring.trim(num), den)

    def const(self, c) -> QPoly:
        """A constant from an int, Fraction or NF element."""
        if isinstance(c, (int, Fraction)):
            c = self.nf(c)
        return self.from_nf([c])

    def divmod_monic(self, a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
        """Division by b, whose leading coefficient is 1.

        With b = B/d the substitution x = z/d turns B into a monic integer
        polynomial, so the division itself runs over the integers.
        """
        ring, n = self.ring, self.n
        db, da = ring.deg(b.num), ring.deg(a.num)
        assert ring.coeff(b.num, db) == [b.den] + [0] * (n - 1), "divisor must be monic"
        if da < db:
            return self.zero, a
        d = b.den
        if d == 1:
            q, r = ring.divmod_monic(a.num, b.num)
            return QPoly(q, a.den), QPoly(r, a.den)
        Bt = self._var_scale(b.num, d, db - 1, -1)
        At = self._var_scale(a.num, d, da, -1)
        qt, rt = ring.divmod_monic(At, Bt)
        q = QPoly(self._var_scale(qt, d, 0, 1), a.den * d ** (da - db))
        r = QPoly(self._var_scale(rt, d, 0, 1), a.den * d**da)
        return q, r

    def _var_scale(self, num, d, base, sign):
        """Multiply the coefficient of x^i by d^(base + sign*i) (exponents >= 0)."""
        n = self.n
        out = []
        for i in range(len(num) // n):
            e = base + sign * i
            if e >= 0:
                out.extend(v * d**e for v in num[i * n : (i + 1) * n])
            else:
                # only the leading coefficient of a monic divisor lands here
                de = d**-e
                assert all(v % de == 0 for v in num[i * n : (i + 1) * n])
                out.extend(v // de for v in num[i * n : (i + 1) * n])
        return out

    def mod_monic(self, a: QPoly, b: QPoly) -> QPoly:
        return self.divmod_monic(a, b)[1]

    def exact_div(self, a: QPoly, b: QPoly) -> Optional[QPoly]:
        """a / b if b divides a over K, else None (b need not be monic)."""
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lc = self.coeff(b, self.deg(b))
        inv = self.const(self.nf.inv(lc))
        bm = self.mul(b, inv)
        q, r = self.divmod_monic(a, bm)
        if not r.is_zero():
            return None
        return self.mul(q, inv)

    def monic(self, a: QPoly) -> QPoly:
        lc = self.coeff(a, self.deg(a))
        return self.mul(a, self.const(self.nf.inv(lc)))

    def gcd(self, a: QPoly, b: QPoly) -> QPoly:
        """Monic gcd over K."""
        F = self.nf
        g = ff.poly_gcd(F, self.to_nf(a), self.to_nf(b))
        return self.from_nf(g)

    def xgcd_inverse(self, a: QPoly, m: QPoly) -> QPoly:
        """Inverse of a modulo the monic polynomial m over K."""
        F = self.nf
        r0, r1 = self.to_nf(m), ff.poly_mod(F, self.to_nf(a), self.to_nf(m))
        s0, s1 = [], [F.one]
        while r1:
            q, r = ff.poly_divmod(F, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, ff.poly_sub(F, s0, ff.poly_mul(F, q, s1))
        if len(r0) != 1:
            raise NotAUnit("polynomial is not invertible modulo m")
        inv = F.inv(r0[0])
        return self.from_nf(ff.poly_scale(F, s0, inv))

    def radical(self, a: QPoly) -> QPoly:
        """Monic squarefree part over K (characteristic zero)."""
        g = self.gcd(a, self.deriv(a))
        q = self.exact_div(a, g)
        return self.monic(q)

    def charpoly(self, mat: list[list[QPoly]]) -> list[QPoly]:
        return berkowitz(mat, self.add, self.sub, self.mul, self.zero, self.one)


class RFunc:
    """num * x^xs / r^rp for a QPoly num (normalized by :meth:`RArith.norm`)."""

    __slots__ = ("num", "xs", "rp")

    def __init__(self, num: QPoly, xs: int = 0, rp: int = 0):
        self.num, self.xs, self.rp = num, xs, rp

    def __repr__(self) -> str:
        return f"RFunc({self.num!r}, x^{self.xs}, r^-{self.rp})"

    def is_zero(self) -> bool:
        return self.num.is_zero()


class RArith:
    """Arithmetic on :class:`RFunc` for a fixed monic r."""

    def __init__(self, qa: QArith, r: QPoly):
        self.qa = qa
        self.r = r
        self.rpows = [qa.one, r]
        # with x | r, 1/x = r1/r and cancellation runs through r1 = r/x
        self.r1 = qa.shift(r, -1) if not r.is_zero() and qa.low_order(r) > 0 else None
        self.r1pows = [qa.one]
        self.zero = RFunc(qa.zero)
        self.one = RFunc(qa.one)

    def rpow(self, k: int) -> QPoly:
        while len(self.rpows) <= k:
            self.rpows.append(self.qa.mul(self.rpows[-1], self.r))
        return self.rpows[k]

    def norm(self, f: RFunc) -> RFunc:
        qa = self.qa
        num, xs, rp = f.num, f.xs, f.rp
        if num.is_zero():
            return self.zero
        k = qa.low_order(num)
        if k:
            num = qa.shift(num, -k)
            xs += k
        if rp < 0:
            num = qa.mul(num, self.rpow(-rp))
            rp = 0
        div, dx = (self.r, 0) if self.r1 is None else (self.r1, 1)
        while rp > 0 and qa.deg(num) >= qa.deg(div):
            q, rem = qa.divmod_monic(num, div)
            if not rem.is_zero():
                break
            num, rp, xs = q, rp - 1, xs - dx
        return RFunc(num, xs, rp)

    def r1pow(self, k: int) -> QPoly:
        while len(self.r1pows) <= k:
            self.r1pows.append(self.qa.mul(self.r1pows[-1], self.r1))
        return self.r1pows[k]

    def polar_form(self, f: RFunc) -> RFunc:
        """The same function written without negative powers of x, which is
        possible exactly when x | r or the x-shift is already >= 0."""
        if f.is_zero() or f.xs >= 0 or self.r1 is None:
            return f
        k = -f.xs
        return RFunc(self.qa.mul(f.num, self.r1pow(k)), 0, f.rp + k)

    def from_poly(self, a: QPoly) -> RFunc:
        return self.norm(RFunc(a))

    def add(self, a: RFunc, b: RFunc) -> RFunc:
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        qa = self.qa
        xs, rp = min(a.xs, b.xs), max(a.rp, b.rp)
        na = qa.mul(qa.shift(a.num, a.xs - xs), self.rpow(rp - a.rp))
        nb = qa.mul(qa.shift(b.num, b.xs - xs), self.rpow(rp - b.rp))
        return self.norm(RFunc(qa.add(na, nb), xs, rp))

    def neg(self, a: RFunc) -> RFunc:
        return RFunc(self.qa.neg(a.num), a.xs, a.rp)

    def sub(self, a: RFunc, b: RFunc) -> RFunc:
        return self.add(a, self.neg(b))

    def mul(self, a: RFunc, b: RFunc) -> RFunc:
        if a.is_zero() or b.is_zero():
            return self.zero
        return self.norm(RFunc(self.qa.mul(a.num, b.num), a.xs + b.xs, a.rp + b.rp))

    def deriv(self, a: RFunc) -> RFunc:
        """d/dx of num x^xs / r^rp."""
        if a.is_zero():
            return a
        qa = self.qa
        num, xs, rp = a.num, a.xs, a.rp
        # ((x num' + xs num) r - rp x num r') x^(xs-1) / r^(rp+1)
        t1 = qa.add(qa.shift(qa.deriv(num), 1), qa.scale_frac(num, Fraction(xs)))
        t1 = qa.mul(t1, self.r)
        t2 = qa.scale_frac(qa.mul(qa.shift(num, 1), qa.deriv(self.r)), Fraction(rp))
        return self.norm(RFunc(qa.sub(t1, t2), xs - 1, rp + 1))

    def is_poly(self, a: RFunc) -> bool:
        return a.is_zero() or (a.xs >= 0 and a.rp == 0)

    def to_poly(self, a: RFunc) -> QPoly:
        """Polynomial value (requires :meth:`is_poly`)."""
        if a.is_zero():
            return self.qa.zero
        assert self.is_poly(a), a
        return self.qa.shift(a.num, a.xs)

    def ord_inf(self, a: RFunc) -> Optional[int]:
        """-(degree) at infinity; None for zero."""
        if a.is_zero():
            return None
        return -(self.qa.deg(a.num) + a.xs - a.rp * self.qa.deg(self.r))

    def ord_zero(self, a: RFunc) -> Optional[int]:
        """Order at x = 0."""
        if a.is_zero():
            return None
        return a.xs - (a.rp if self.r1 is not None else 0)

    # -- matrices --------------------------------------------------------
    def mat_mul(self, A, B):
        n, k, m = len(A), len(B), len(B[0])
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = self.zero
                for t in range(k):
                    if not A[i][t].is_zero() and not B[t][j].is_zero():
                        acc = self.add(acc, self.mul(A[i][t], B[t][j]))
                row.append(acc)
            out.append(row)
        return out

    def mat_add(self, A, B):
        return [[self.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]

    def mat_deriv(self, A):
        return [[self.deriv(a) for a in row] for row in A]

    def mat_scale(self, A, c: RFunc):
        return [[self.mul(a, c) for a in row] for row in A]

    def identity(self, d: int):
        return [[self.one if i == j else self.zero for j in range(d)] for i in range(d)]

    def mat_inv(self, A):
        """Inverse of a matrix over K[x, 1/x, 1/r] whose determinant is a unit there."""
        qa = self.qa
        d = len(A)
        xs = min((a.xs for row in A for a in row if not a.is_zero()), default=0)
        rp = max((a.rp for row in A for a in row if not a.is_zero()), default=0)
        # P = A * x^-xs * r^rp has polynomial entries
        P = []
        for row in A:
            prow = []
            for a in row:
                if a.is_zero():
                    prow.append(qa.zero)
                else:
                    prow.append(qa.mul(qa.shift(a.num, a.xs - xs), self.rpow(rp - a.rp)))
            P.append(prow)
        cp = qa.charpoly(P)  # low to high, cp[d] = 1
        det = cp[0] if d % 2 == 0 else qa.neg(cp[0])
        if det.is_zero():
            raise NotAUnit("singular matrix")
        # adj(P) = (-1)^(d-1) (P^(d-1) + c_{d-1} P^(d-2) + ... + c_1 I)
        adj = [[qa.zero] * d for _ in range(d)]
        power = [[qa.one if i == j else qa.zero for j in range(d)] for i in range(d)]
        for k in range(1, d + 1):
            c = cp[k]
            if not c.is_zero():
                for i in range(d):
                    for j in range(d):
                        if not power[i][j].is_zero():
                            adj[i][j] = qa.add(adj[i][j], qa.mul(c, power[i][j]))
            if k < d:
                power = _qmat_mul(qa, power, P)
        if (d - 1) % 2:
            adj = [[qa.neg(a) for a in row] for row in adj]
        # det = c * x^a * h with h | r^j
        a0 = qa.low_order(det)
        h = qa.shift(det, -a0)
        j = 0
        while True:
            cof = qa.exact_div(self.rpow(j), h)
            if cof is not None:
                break
            j += 1
            if j > 64:
                raise NotAUnit("determinant is not a unit in K[x,1/x,1/r]")
        # A^-1 = P^-1 x^-xs r^rp = adj * cof / (x^a0 r^j) * x^-xs * r^rp
        out = []
        for row in adj:
            orow = []
            for a in row:
                orow.append(self.norm(RFunc(qa.mul(a, cof), -a0 - xs, j - rp)))
            out.append(orow)
        return out


def _qmat_mul(qa: QArith, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = qa.zero
            for t in range(k):
                if not A[i][t].is_zero() and not B[t][j].is_zero():
                    acc = qa.add(acc, qa.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out
