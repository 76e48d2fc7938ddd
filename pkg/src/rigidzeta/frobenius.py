"""Frobenius lift on the overconvergent rings via Newton iteration.

Elements of S-dagger are stored as ``num / r^K`` with ``num`` a flat
Z_q[x]-polynomial reduced modulo p^prec.  Elements of R-dagger are vectors of
d_x such numerators over a common r-power (coordinates in 1, y, ..., y^(d-1)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .curve import CurveData
from .errors import NonConvergence, ShapeViolation
from .padic import Ring, reduce_mod_Q


@dataclass
class DaggerSeries:
    """num / r^K over Z_q at precision ``prec``."""

    num: list
    K: int
    prec: int

    def expansion(self, ring: Ring, r: list) -> tuple[list, dict]:
        """(poly_part, {k: rho_k}) with value = poly_part + sum rho_k / r^k."""
        poles = {}
        a = self.num
        for k in range(self.K, 0, -1):
            a, rem = ring.divmod_monic(a, r)
            if rem:
                poles[k] = rem
        if self.K < 0:
            a = ring.mul(a, ring.pow(r, -self.K))
        return a, poles

    def pole_order(self, ring: Ring, r: list) -> int:
        _, poles = self.expansion(ring, r)
        return max(poles, default=0)


@dataclass
class RElem:
    """sum_j nums[j] y^j / r^K."""

    nums: list
    K: int


@dataclass
class FrobMatrices:
    Phi: list  # Phi[i][j]: coefficient of y^j in Frob(y^i), as DaggerSeries
    Psi: list  # Psi[i][j]: coefficient of b0_j / r in Frob(b0_i / r)
    prec: int
    bounds: dict


@dataclass
class LiftLog:
    schedule: list
    alpha_residuals: list = field(default_factory=list)
    beta_residuals: list = field(default_factory=list)


class DaggerArith:
    """r-adic bookkeeping at a fixed precision."""

    def __init__(self, cd: CurveData, prec: int):
        self.cd = cd
        self.prec = prec
        self.ring = cd.ring(prec)
        self.r = cd.padic_poly(cd.r, prec)
        self.dr = self.ring.deg(self.r)
        self._rpow = {0: self.ring.const(1), 1: self.r}

    def rpow(self, k: int) -> list:
        # binary splitting; only the O(log k) powers on the way are kept
        got = self._rpow.get(k)
        if got is None:
            got = self.ring.mul(self.rpow(k // 2), self.rpow(k - k // 2))
            self._rpow[k] = got
        return got

    def alpha_power(self, alpha: "DaggerSeries", k: int) -> tuple[list, int]:
        """Frob(1/r^k) = alpha^k as (num, K) with K <= p (k + prec - 1)."""
        ring = self.ring
        a = ring.norm(alpha.num)
        bound = alpha_power_bound(self.cd.p, k, self.prec)
        num, K = ring.const(1), 0
        base, bK, e = a, alpha.K, k
        while e:
            if e & 1:
                num, K = self.normalize(ring.mul(num, base), K + bK, bound, "Frob(1/r^k)")
            e >>= 1
            if e:
                base, bK = self.normalize(ring.mul(base, base), 2 * bK, bound, "Frob(1/r^k)")
        return num, K

    def lift(self, a: list) -> list:
        return self.ring.norm(a)

    def raise_K(self, num: list, K: int, K2: int) -> list:
        if K2 == K:
            return num
        return self.ring.mul(num, self.rpow(K2 - K))

    def normalize(self, num: list, K: int, bound: int, what: str) -> tuple[list, int]:
        """Rewrite num/r^K with pole order at most ``bound``."""
        if K <= bound:
            return num, K
        q, rem = self.ring.divmod_monic(num, self.rpow(K - bound))
        if rem:
            raise ShapeViolation(f"{what}: pole order exceeds {bound} at precision {self.prec}")
        return q, bound

    def rmul(self, a: RElem, b: RElem, Q: list) -> RElem:
        ring = self.ring
        d = len(Q) - 1
        out = [[] for _ in range(len(a.nums) + len(b.nums) - 1)]
        for i, x in enumerate(a.nums):
            if not x:
                continue
            for j, y in enumerate(b.nums):
                if y:
                    out[i + j] = ring.add(out[i + j], ring.mul(x, y))
        red = reduce_mod_Q(ring, Q, out)
        red = red + [[] for _ in range(d - len(red))]
        return RElem(red, a.K + b.K)

    def radd(self, a: RElem, b: RElem) -> RElem:
        K = max(a.K, b.K)
        na = [self.raise_K(x, a.K, K) if x else [] for x in a.nums]
        nb = [self.raise_K(x, b.K, K) if x else [] for x in b.nums]
        return RElem([self.ring.add(x, y) for x, y in zip(na, nb)], K)

    def rnormalize(self, a: RElem, bound: int, what: str) -> RElem:
        if a.K <= bound:
            return a
        div = self.rpow(a.K - bound)
        out = []
        for x in a.nums:
            q, rem = self.ring.divmod_monic(x, div)
            if rem:
                raise ShapeViolation(f"{what}: pole order exceeds {bound} at precision {self.prec}")
            out.append(q)
        return RElem(out, bound)


def newton_schedule(N: int) -> list[int]:
    sched = [N]
    while sched[-1] > 1:
        sched.append((sched[-1] + 1) // 2)
    return sched[::-1]


def _frob_exact_poly(cd: CurveData, a, prec: int) -> list:
    """sigma on coefficients and x -> x^p of an exact polynomial."""
    return cd.ctx.frob_poly(cd.padic_poly(a, prec), prec)


def alpha_bound(p: int, N: int) -> int:
    return p * N


def alpha_power_bound(p: int, k: int, N: int) -> int:
    # 1/(r^p + p h)^k = sum_j binom(-k, j) (p h)^j / r^(p(k + j)), j < N
    return p * (k + N - 1)


def phi_bound(cd: CurveData, N: int) -> int:
    o = cd.ords
    return max(0, cd.p * (N - 1) - o["ordneq_inf_W0"] - cd.p * o["ordneq_inf_W0inv"])


def psi_bound(p: int, N: int) -> int:
    return p * N - 1


def lift_inverse_r(cd: CurveData, N: int, log: Optional[LiftLog] = None) -> DaggerSeries:
    """Frob_p(1/r) modulo p^N."""
    from .exact import QPoly

    p = cd.p
    sched = newton_schedule(N)
    if log is not None:
        log.schedule = sched
    da = DaggerArith(cd, sched[0])
    num, K = da.ring.const(1), p  # 1 / r^p
    for i in range(1, len(sched)):
        prec = sched[i]
        da = DaggerArith(cd, prec)
        ring = da.ring
        num = ring.norm(num)
        rs = _frob_exact_poly(cd, cd.r, prec)
        # residual of the previous iterate, checked at the new precision
        res = ring.sub(ring.mul(num, rs), da.rpow(K))
        v = _poly_val(res, p, prec)
        if v < sched[i - 1]:
            raise NonConvergence(f"1/r iteration: residual valuation {v} < {sched[i - 1]}")
        if log is not None:
            log.alpha_residuals.append((sched[i - 1], v))
        # alpha (2 - alpha r^sigma(x^p)) = A (2 r^K - A rs) / r^(2K)
        new = ring.mul(num, ring.sub(ring.scale_int(da.rpow(K), 2), ring.mul(num, rs)))
        num, K = da.normalize(new, 2 * K, alpha_bound(p, prec), "Frob(1/r)")
    da = DaggerArith(cd, N)
    rs = _frob_exact_poly(cd, cd.r, N)
    res = da.ring.sub(da.ring.mul(num, rs), da.rpow(K))
    if res:
        raise NonConvergence("1/r iteration: final residual is nonzero")
    if log is not None:
        log.alpha_residuals.append((N, N))
    return DaggerSeries(num, K, N)


def _poly_val(a: list, p: int, cap: int) -> int:
    from .padic import valuation_of

    return valuation_of(a, p, cap)


def _powers(da: DaggerArith, beta: RElem, Q: list, upto: int) -> list[RElem]:
    d = len(Q) - 1
    one = RElem([da.ring.const(1)] + [[] for _ in range(d - 1)], 0)
    pw = [one, beta]
    while len(pw) <= upto:
        pw.append(da.rmul(pw[-1], beta, Q))
    return pw[: upto + 1]


def _eval_frob_bivar(da: DaggerArith, cd: CurveData, B: list, powers: list[RElem]) -> RElem:
    """B^sigma(x^p, beta) for an exact bivariate B, using precomputed powers of beta."""
    ring = da.ring
    d = cd.d_x
    K = max((powers[k].K for k in range(len(B)) if B[k]), default=0)
    acc = [[] for _ in range(d)]
    for k, c in enumerate(B):
        if not c:
            continue
        cs = cd.ctx.frob_poly(ring.norm(c), da.prec)
        pk = powers[k]
        for j, x in enumerate(pk.nums):
            if x:
                acc[j] = ring.add(acc[j], ring.mul(cs, da.raise_K(x, pk.K, K)))
    return RElem(acc, K)


def lift_y(cd: CurveData, alpha: DaggerSeries, N: int, log: Optional[LiftLog] = None) -> RElem:
    """Frob_p(y) modulo p^N, as coordinates over 1, y, ..., y^(d-1)."""
    p, d = cd.p, cd.d_x
    sched = newton_schedule(N)
    Q = cd.Q
    # y^p reduced modulo Q
    da = DaggerArith(cd, sched[0])
    ring = da.ring
    Qp = [ring.norm(c) for c in Q]
    y = RElem([[], ring.const(1)] + [[] for _ in range(d - 2)], 0)
    beta = RElem([ring.const(1)] + [[] for _ in range(d - 1)], 0)
    e, base = p, y
    while e:
        if e & 1:
            beta = da.rmul(beta, base, Qp)
        e >>= 1
        if e:
            base = da.rmul(base, base, Qp)
    beta = RElem([ring.norm(x) for x in beta.nums], beta.K)
    for i in range(1, len(sched)):
        prec = sched[i]
        da = DaggerArith(cd, prec)
        ring = da.ring
        Qp = [ring.norm(c) for c in Q]
        beta = RElem([ring.norm(x) for x in beta.nums], beta.K)
        pw = _powers(da, beta, Qp, d)
        Qv = _eval_frob_bivar(da, cd, Q, pw)
        v = min((_poly_val(x, p, prec) for x in Qv.nums if x), default=prec)
        if v < sched[i - 1]:
            raise NonConvergence(f"y iteration: residual valuation {v} < {sched[i - 1]}")
        if log is not None:
            log.beta_residuals.append((sched[i - 1], v))
        sv = _eval_frob_bivar(da, cd, cd.s, pw)
        corr = da.rmul(Qv, sv, Qp)
        gs = _frob_exact_poly(cd, cd.gpoly, prec)
        am, amK = da.alpha_power(alpha, cd.m)
        scale = ring.mul(gs, am)
        corr = RElem([ring.mul(x, scale) if x else [] for x in corr.nums], corr.K + amK)
        neg = RElem([ring.neg(x) for x in corr.nums], corr.K)
        beta = da.rnormalize(da.radd(beta, neg), phi_bound(cd, prec), "Frob(y)")
    # final residual at full precision
    da = DaggerArith(cd, N)
    Qp = [da.ring.norm(c) for c in Q]
    pw = _powers(da, beta, Qp, d)
    Qv = _eval_frob_bivar(da, cd, Q, pw)
    if any(x for x in Qv.nums):
        raise NonConvergence("y iteration: final residual is nonzero")
    if log is not None:
        log.beta_residuals.append((N, N))
    return beta


def frobenius_matrices(cd: CurveData, alpha: DaggerSeries, beta: RElem, N: int) -> FrobMatrices:
    """Phi in the y-basis and Psi in the basis b0_j / r."""
    d, p = cd.d_x, cd.p
    da = DaggerArith(cd, N)
    ring = da.ring
    Qp = [ring.norm(c) for c in cd.Q]
    pw = _powers(da, beta, Qp, d - 1)
    bphi = phi_bound(cd, N)
    Phi = []
    for i in range(d):
        row = da.rnormalize(pw[i], bphi, "Phi")
        Phi.append(row)
    # (W0[a][i] / r)^Fp: sigma(num)(x^p) x^(p xs) alpha^(rp + 1)
    apow: dict = {}

    def alpha_pow(k: int) -> tuple[list, int]:
        if k not in apow:
            apow[k] = da.alpha_power(alpha, k)
        return apow[k]

    W0F = []
    for a in range(d):
        row = []
        for i in range(d):
            e = cd.ra.polar_form(cd.W0[a][i])
            if e.is_zero():
                row.append(None)
                continue
            num = ring.shift(_frob_exact_poly(cd, e.num, N), p * e.xs)
            an, aK = alpha_pow(e.rp + 1)
            row.append((ring.mul(num, an), aK))
        W0F.append(row)
    # r * W0^-1[j][c] = num x^xs / r^(rp - 1)
    RW = []
    for j in range(d):
        row = []
        for c in range(d):
            e = cd.ra.polar_form(cd.W0inv[j][c])
            if e.is_zero():
                row.append(None)
                continue
            num = ring.shift(cd.padic_poly(e.num, N), e.xs)
            K = e.rp - 1
            if K < 0:
                num, K = ring.mul(num, da.r), 0
            row.append((num, K))
        RW.append(row)
    # T[a][j] = sum_c Phi[a][c] * RW[j][c]
    T = []
    for a in range(d):
        trow = []
        for j in range(d):
            terms = []
            for c in range(d):
                x = Phi[a].nums[c]
                if x and RW[j][c] is not None:
                    n2, K2 = RW[j][c]
                    terms.append((ring.mul(x, n2), Phi[a].K + K2))
            trow.append(_sum_terms(da, terms))
        T.append(trow)
    bpsi = psi_bound(p, N)
    Psi = []
    for i in range(d):
        prow = []
        for j in range(d):
            terms = []
            for a in range(d):
                if W0F[a][i] is not None and T[a][j] is not None:
                    n1, K1 = W0F[a][i]
                    n2, K2 = T[a][j]
                    terms.append((ring.mul(n1, n2), K1 + K2))
            s = _sum_terms(da, terms)
            if s is None:
                prow.append(DaggerSeries([], 0, N))
            else:
                num, K = da.normalize(s[0], s[1], bpsi, "Psi")
                prow.append(DaggerSeries(num, K, N))
        Psi.append(prow)
    PhiS = [[DaggerSeries(Phi[i].nums[j], Phi[i].K, N) for j in range(d)] for i in range(d)]
    bounds = {"alpha": alpha_bound(p, N), "phi": bphi, "psi": bpsi}
    return FrobMatrices(Phi=PhiS, Psi=Psi, prec=N, bounds=bounds)


def _sum_terms(da: DaggerArith, terms: list) -> Optional[tuple]:
    if not terms:
        return None
    K = max(t[1] for t in terms)
    acc = []
    for num, k in terms:
        acc = da.ring.add(acc, da.raise_K(num, k, K))
    return acc, K


def push_forward_forms(cd: CurveData, fm: FrobMatrices, forms: list, N: int) -> list[RElem]:
    """Frob_p of (sum_k u_k b0_k) dx/r, in the same frame, modulo p^N.

    Each form is a list of d_x flat polynomials u_k (Z_q coefficients).  The
    result is an :class:`RElem` whose coordinates multiply b0_j dx / r.
    """
    d, p = cd.d_x, cd.p
    da = DaggerArith(cd, N)
    ring = da.ring
    out = []
    for u in forms:
        # p x^(p-1) u_k^sigma(x^p)
        fu = []
        for k in range(d):
            uk = ring.norm(u[k]) if k < len(u) else []
            if uk:
                fu.append(ring.scale_int(ring.shift(cd.ctx.frob_poly(uk, N), p - 1), p))
            else:
                fu.append([])
        coords = []
        for j in range(d):
            terms = []
            for k in range(d):
                ps = fm.Psi[k][j]
                if fu[k] and ps.num:
                    terms.append((ring.mul(fu[k], ps.num), ps.K))
            coords.append(_sum_terms(da, terms))
        K = max((c[1] for c in coords if c is not None), default=0)
        nums = [da.raise_K(c[0], c[1], K) if c is not None else [] for c in coords]
        out.append(RElem(nums, K))
    return out
