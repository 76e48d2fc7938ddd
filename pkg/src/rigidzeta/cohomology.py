"""Reduction of 1-forms and the Frobenius matrix on H^1.

Forms are written as (sum_i u_i b_i) dx/r.  p-adic values live in a
fixed-point representation: a vector of Z_q-coefficient polynomials stored
modulo p^E together with a shift S, the true value being stored / p^S.
Whenever a reduction step divides by a non-unit, the shift of the affected
vector grows; common p-content is stripped again right away, so S tracks the
actual denominators.  ``peak`` records the largest shift ever needed, which
bounds the digits lost to rounding.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curve import CurveData, ResidueData, frac_to_padic
from .errors import RankDeficient, ShapeViolation, SystemSingular, ValuationBreach
from .frobenius import RElem
from .linalg import mat_mul, snf
from .padic import Ring, valuation_of


# -- small helpers on vectors of flat polynomials ------------------------------


def _vec_val(vec: list, p: int, cap: int) -> int:
    return min((valuation_of(a, p, cap) for a in vec if a), default=cap)


def _vec_is_zero(vec: list) -> bool:
    return not any(a for a in vec)


def _strip(ring: Ring, vec: list, S: int) -> tuple[list, int]:
    """Remove common p-content (never going below shift 0)."""
    if S <= 0 or _vec_is_zero(vec):
        return vec, (S if not _vec_is_zero(vec) else 0)
    j = min(_vec_val(vec, ring.p, S), S)
    if j == 0:
        return vec, S
    pj = ring.p**j
    return [[c // pj for c in a] for a in vec], S - j


def _rescale(ring: Ring, vec: list, k: int) -> list:
    if k == 0:
        return vec
    pk = ring.p**k
    return [ring.scale_int(a, pk) if a else [] for a in vec]


def _align(ring: Ring, a: list, Sa: int, b: list, Sb: int) -> tuple[list, list, int]:
    S = max(Sa, Sb)
    return _rescale(ring, a, S - Sa), _rescale(ring, b, S - Sb), S


@dataclass
class Annihilator:
    """mu(T) = prod (T - lambda)^k over the exponents, with p-adic lambdas."""

    lambdas: list  # Fractions
    mult: int
    coeffs: list  # low to high, ints mod p^E

    def value_at(self, ell: int, p: int, E: int) -> tuple[int, int, int]:
        """mu(ell) as (valuation, unit part mod p^E, exact rational)."""
        val = Fraction(1)
        for lam in self.lambdas:
            val *= (ell - lam) ** self.mult
        if val == 0:
            raise SystemSingular(f"exponent collides with {ell}")
        num, den = val.numerator, val.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        m = p**E
        return v, num * pow(den, -1, m) % m, val

    def quotient(self, ell: int, m: int) -> list:
        """h with mu(T) - mu(ell) = (T - ell) h(T), coefficients low to high."""
        c = self.coeffs
        deg = len(c) - 1
        h = [0] * deg
        acc = 0
        for i in range(deg, 0, -1):
            acc = (acc * ell + c[i]) % m
            h[i - 1] = acc
        return h


def _poly_from_roots(lams: list, mult: int, m: int) -> list:
    out = [1]
    for lam in lams:
        lp = frac_to_padic(lam, m)
        for _ in range(mult):
            new = [0] * (len(out) + 1)
            for i, c in enumerate(out):
                new[i + 1] = (new[i + 1] + c) % m
                new[i] = (new[i] - lp * c) % m
            out = new
    return out


# -- the reducer -----------------------------------------------------------------


@dataclass
class ReductionStats:
    peak: int = 0
    finite_steps: int = 0
    infinite_steps: int = 0
    max_level: int = 0
    final_shift: int = 0


class Reducer:
    """Finite and infinite reductions at working precision E."""

    def __init__(self, cd: CurveData, rd: ResidueData, E: int):
        self.cd, self.rd, self.E = cd, rd, E
        self.p = cd.p
        self.ring = cd.ring(E)
        self.m = self.ring.modulus
        ring = self.ring
        self.d = cd.d_x
        self.r = cd.padic_poly(cd.r, E)
        self.dr = ring.deg(self.r)
        self.rd1 = ring.deriv(self.r)
        self.rG0 = cd.padic_qmat(cd.rG0, E)
        self.R = cd.padic_poly(cd.R, E)
        self.M0 = cd.padic_qmat(cd.M0, E)
        self.Minf = [[cd.padic_elem(c, E) for c in row] for row in cd.Minf]
        # rG_inf as Laurent polynomials (num, low exponent)
        self.rGinf = [[self._laurent(e) for e in row] for row in cd.rGinf]
        self.W = [[self._laurent(e) for e in row] for row in cd.W]
        self.Winv = [[self._laurent(e) for e in row] for row in cd.Winv]
        self.mu0 = self._annihilator(rd.exponents0, self._apply_M0_poly, finite=True)
        self.muinf = self._annihilator(rd.exponents_inf, self._apply_Minf_poly, finite=False)
        self.ord0W = cd.ords["ord0_W"]
        self.stats = ReductionStats()

    # -- conversions ----------------------------------------------------
    def _laurent(self, e) -> Optional[tuple]:
        if e.is_zero():
            return None
        assert e.rp == 0
        return (self.cd.padic_poly(e.num, self.E), e.xs)

    # -- matrix actions -------------------------------------------------
    def apply_M0(self, vec: list) -> list:
        ring, r = self.ring, self.r
        out = []
        for i in range(self.d):
            acc = []
            for j in range(self.d):
                if self.M0[i][j] and vec[j]:
                    acc = ring.add(acc, ring.mul(self.M0[i][j], vec[j]))
            out.append(ring.mod_monic(acc, r) if acc else [])
        return out

    def apply_Minf(self, vec: list) -> list:
        ring = self.ring
        out = []
        for i in range(self.d):
            acc = ring.zero_elem
            for j in range(self.d):
                acc = ring.eadd(acc, ring.emul(self.Minf[i][j], vec[j]))
            out.append(acc)
        return out

    def _apply_M0_poly(self, coeffs: list, vec: list) -> list:
        """h(M0) vec for h with Z_p coefficients (Horner)."""
        ring = self.ring
        acc = [[] for _ in range(self.d)]
        for c in reversed(coeffs):
            acc = self.apply_M0(acc) if not _vec_is_zero(acc) else acc
            if c:
                acc = [ring.add(a, ring.scale_int(v, c)) for a, v in zip(acc, vec)]
        return acc

    def _apply_Minf_poly(self, coeffs: list, vec: list) -> list:
        ring = self.ring
        acc = [list(ring.zero_elem) for _ in range(self.d)]
        for c in reversed(coeffs):
            acc = self.apply_Minf(acc)
            if c:
                acc = [ring.eadd(a, ring.elem([x * c for x in v])) for a, v in zip(acc, vec)]
        return acc

    def _annihilator(self, lams: list, apply, finite: bool) -> Annihilator:
        d, m = self.d, self.m
        for k in range(1, d + 1):
            coeffs = _poly_from_roots(lams, k, m)
            ok = True
            for j in range(d):
                if finite:
                    e = [[] for _ in range(d)]
                    e[j] = self.ring.const(1)
                    res = apply(coeffs, e)
                    ok = _vec_is_zero(res)
                else:
                    e = [list(self.ring.zero_elem) for _ in range(d)]
                    e[j] = list(self.ring.one)
                    res = apply(coeffs, e)
                    ok = not any(any(x) for x in res)
                if not ok:
                    break
            if ok:
                return Annihilator(list(lams), k, coeffs)
        where = "finite" if finite else "infinite"
        raise SystemSingular(f"no annihilating polynomial for the {where} residue matrix from the detected exponents")

    def nonzero_part(self, finite: bool) -> list:
        """Coefficients of prod over nonzero exponents of (T - lambda)^k."""
        ann = self.mu0 if finite else self.muinf
        lams = [l for l in ann.lambdas if l != 0]
        return _poly_from_roots(lams, ann.mult, self.m)

    # -- finite reduction ---------------------------------------------------
    def D_finite(self, v: list, ell: int) -> list:
        """r v' + rG0 v - ell r' v."""
        ring = self.ring
        out = []
        for i in range(self.d):
            acc = ring.mul(self.r, ring.deriv(v[i])) if v[i] else []
            for j in range(self.d):
                if self.rG0[i][j] and v[j]:
                    acc = ring.add(acc, ring.mul(self.rG0[i][j], v[j]))
            if v[i]:
                acc = ring.sub(acc, ring.scale_int(ring.mul(self.rd1, v[i]), ell))
            out.append(acc)
        return out

    def finite_step(self, w: list, ell: int) -> tuple[list, list, int]:
        """Solve w/r^ell b dx/r = d(v b / r^ell) + u/r^(ell-1) b dx/r.

        ``w`` has entries of degree < deg r (stored units).  Returns (u, v, k)
        with u, v scaled by p^k relative to w.
        """
        ring = self.ring
        if _vec_is_zero(w):
            return [[] for _ in range(self.d)], [[] for _ in range(self.d)], 0
        ann = self.mu0
        k, unit, _ = ann.value_at(ell, self.p, self.E)
        if k < 0:
            k = 0  # denominators of mu(ell) only help; treat as a unit scaling
            unit = unit * 1
        h = ann.quotient(ell, self.m)
        Rw = [ring.mod_monic(ring.mul(self.R, a), self.r) if a else [] for a in w]
        y = self._apply_M0_poly(h, Rw)
        # v = -y / mu(ell) = -(y * unit^-1) / p^k ; work at shift k
        uinv = pow(unit, -1, self.m)
        v = [ring.scale_int(a, -uinv) if a else [] for a in y]
        wk = _rescale(ring, w, k)
        Dv = self.D_finite(v, ell)
        diff = [ring.sub(a, b) for a, b in zip(wk, Dv)]
        u = []
        for a in diff:
            q, rem = ring.divmod_monic(a, self.r) if a else ([], [])
            if rem and valuation_of(rem, self.p, self.E) < self.E - k:
                raise SystemSingular(f"finite reduction at level {ell} left a remainder")
            u.append(q)
        self.stats.finite_steps += 1
        return u, v, k

    # -- infinite reduction --------------------------------------------------
    def D_infinite(self, c: list, kexp: int) -> tuple[list, int]:
        """r v' + rGinf v for v = c x^k (c a vector of Z_q elements), as Laurent (polys, low)."""
        ring = self.ring
        out_terms = []
        for i in range(self.d):
            if any(c[i]) and kexp != 0:
                out_terms.append((i, ring.scale_int(ring.scale(self.r, c[i]), kexp), kexp - 1))
            for j in range(self.d):
                e = self.rGinf[i][j]
                if e is not None and any(c[j]):
                    out_terms.append((i, ring.scale(e[0], c[j]), e[1] + kexp))
        return _laurent_collect(ring, self.d, out_terms)

    def infinite_step(self, top: list, deg: int) -> tuple[list, int, list, int, int]:
        """Kill the x^deg coefficient ``top`` (vector of Z_q elements) in the b_inf frame.

        Returns (correction polys, correction low, c, kexp, shift k): the
        caller replaces w by p^k w - correction.
        """
        ring = self.ring
        kexp = deg - self.dr + 1
        ann = self.muinf
        kv, unit, _ = ann.value_at(kexp, self.p, self.E)
        kv = max(kv, 0)
        h = ann.quotient(kexp, self.m)
        y = self._apply_Minf_poly(h, top)
        uinv = pow(unit, -1, self.m)
        c = [ring.elem([x * uinv for x in e]) for e in y]  # (k - Minf)^-1 top * p^kv
        polys, low = self.D_infinite(c, kexp)
        self.stats.infinite_steps += 1
        return polys, low, c, kexp, kv

    # -- full reductions --------------------------------------------------------
    def expand(self, rel: RElem) -> tuple[dict, list]:
        """r-adic expansion: {level: vector of deg < deg r}, polynomial part."""
        ring = self.ring
        levels: dict = {}
        poly = [[] for _ in range(self.d)]
        for i, num in enumerate(rel.nums):
            if not num:
                continue
            digits = _radic_digits(ring, ring.norm(num), self.r, self.dr)
            for t, c in enumerate(digits):
                if not c:
                    continue
                lev = rel.K - t
                if lev >= 1:
                    levels.setdefault(lev, [[] for _ in range(self.d)])[i] = c
                else:
                    poly[i] = ring.add(poly[i], ring.mul(c, ring.pow(self.r, -lev)))
        return levels, poly

    def reduce_finite_all(self, levels: dict, poly: list, S: int = 0) -> tuple[list, int]:
        """Cascade all pole levels down to a polynomial-coefficient form.

        All levels and ``poly`` share the shift S on entry.
        """
        ring = self.ring
        shifts = {lev: S for lev in levels}
        Spoly = S
        if levels:
            self.stats.max_level = max(self.stats.max_level, max(levels))
        while levels:
            ell = max(levels)
            w = levels.pop(ell)
            Sw = shifts.pop(ell)
            w = [ring.norm(a) for a in w]
            if _vec_is_zero(w):
                continue
            u, _, k = self.finite_step(w, ell)
            Su = Sw + k
            self.stats.peak = max(self.stats.peak, Su)
            u, Su = _strip(ring, u, Su)
            # fold u / r^(ell-1) into lower levels / polynomial part
            target = ell - 1
            for i, a in enumerate(u):
                if not a:
                    continue
                digits = _radic_digits(ring, a, self.r, self.dr) if ring.deg(a) >= self.dr else [a]
                for t, c in enumerate(digits):
                    if not c:
                        continue
                    lev = target - t
                    vec = [[] for _ in range(self.d)]
                    vec[i] = c
                    if lev >= 1:
                        old = levels.get(lev)
                        if old is None:
                            levels[lev], shifts[lev] = vec, Su
                        else:
                            a1, a2, Sn = _align(ring, old, shifts[lev], vec, Su)
                            levels[lev] = [ring.add(x, y) for x, y in zip(a1, a2)]
                            shifts[lev] = Sn
                    else:
                        vec[i] = ring.mul(c, ring.pow(self.r, -lev)) if lev < 0 else c
                        a1, a2, Sn = _align(ring, poly, Spoly, vec, Su)
                        poly = [ring.add(x, y) for x, y in zip(a1, a2)]
                        Spoly = Sn
        poly, Spoly = _strip(ring, [ring.norm(a) for a in poly], Spoly)
        return poly, Spoly

    def to_inf_frame(self, u: list) -> tuple[list, int]:
        """W^-1 u as a Laurent vector (polys, low)."""
        return _mat_laurent_apply(self.ring, self.Winv, [(a, 0) if a else None for a in u], self.d)

    def to_fin_frame(self, polys: list, low: int) -> tuple[list, int]:
        return _mat_laurent_apply(self.ring, self.W, [(a, low) if a else None for a in polys], self.d)

    def reduce_infinite_all(self, polys: list, low: int, S: int, stop_deg: int) -> tuple[list, int, int]:
        """Lower the degree (b_inf frame) until it is at most ``stop_deg``."""
        ring = self.ring
        n = ring.n
        while True:
            deg = max((ring.deg(a) for a in polys if a), default=-1)
            if deg < 0:
                return polys, low, 0
            top_deg = deg + low
            if top_deg <= stop_deg:
                return polys, low, S
            top = [ring.coeff(a, deg) if a and ring.deg(a) == deg else list(ring.zero_elem) for a in polys]
            corr, clow, _, _, kv = self.infinite_step(top, top_deg)
            if kv:
                polys = _rescale(ring, polys, kv)
                S += kv
            self.stats.peak = max(self.stats.peak, S)
            polys, low = _laurent_sub(ring, self.d, polys, low, corr, clow)
            # the top coefficient must now vanish
            chk = [ring.coeff(a, top_deg - low) if a else [] for a in polys]
            if any(any(c) and valuation_of(c, self.p, self.E) < self.E - S for c in chk):
                raise SystemSingular("infinite reduction failed to cancel the leading term")
            polys = [ring.truncate(a, top_deg - low) if a else [] for a in polys]
            polys = [ring.trim(a) for a in polys]
            polys, S = _strip(ring, polys, S)


def _radic_digits(ring: Ring, a: list, r: list, dr: int) -> list:
    """Digits c_t (deg < dr) with a = sum c_t r^t (divide and conquer)."""
    if not a:
        return []
    if ring.deg(a) < dr:
        return [a]
    # split at the largest power r^(2^j) not exceeding a
    k = 1
    pw = r
    while 2 * k * dr <= ring.deg(a):
        pw = ring.mul(pw, pw)
        k *= 2
    hi, lo = ring.divmod_monic(a, pw)
    dl = _radic_digits(ring, lo, r, dr)
    dl += [[] for _ in range(k - len(dl))]
    return dl + _radic_digits(ring, hi, r, dr)


def _laurent_collect(ring: Ring, d: int, terms: list) -> tuple[list, int]:
    low = min((t[2] for t in terms if t[1]), default=0)
    out = [[] for _ in range(d)]
    for i, poly, lo in terms:
        if poly:
            out[i] = ring.add(out[i], ring.shift(poly, lo - low))
    return out, low


def _laurent_sub(ring: Ring, d: int, a: list, alow: int, b: list, blow: int) -> tuple[list, int]:
    low = min(alow, blow)
    out = []
    for x, y in zip(a, b):
        xs = ring.shift(x, alow - low) if x else []
        ys = ring.shift(y, blow - low) if y else []
        out.append(ring.sub(xs, ys))
    # renormalize low
    n = ring.n
    k = 0
    while all(not o or not any(o[k * n : (k + 1) * n]) for o in out) and any(o for o in out) and k < 10**6:
        k += 1
    if k and any(o for o in out):
        out = [ring.shift(o, -k) if o else [] for o in out]
        low += k
    return out, low


def _mat_laurent_apply(ring: Ring, M: list, vec: list, d: int) -> tuple[list, int]:
    terms = []
    for i in range(d):
        for j in range(d):
            e = M[i][j]
            if e is not None and vec[j] is not None:
                terms.append((i, ring.mul(e[0], vec[j][0]), e[1] + vec[j][1]))
    if not terms:
        return [[] for _ in range(d)], 0
    return _laurent_collect(ring, d, terms)


# -- the cohomology basis ---------------------------------------------------------


@dataclass
class CohomologyBasis:
    E: int
    degE: int  # max degree of u in E0 cap Einf
    omegas: list  # kappa vectors of flat polys (b0 frame), integral; first 2g span H^1(X)
    kernel_count: int  # 2g
    kappa: int
    Linv: list  # rows: lattice coordinates of E0 cap Einf from flattened u
    proj: list  # kappa x dimE: class coordinates from lattice coordinates
    stop_deg: int  # maximal degree in the b_inf frame for E_inf
    dimE: int
    dimB: int
    notes: dict = field(default_factory=dict)


def _flatten(ring: Ring, u: list, d: int, deg: int) -> list:
    """u (d polys of degree <= deg) -> list of d*(deg+1) Z_q elements."""
    out = []
    for i in range(d):
        a = u[i] if i < len(u) else []
        for k in range(deg + 1):
            out.append(ring.coeff(a, k) if a else list(ring.zero_elem))
    return out


def _unflatten(ring: Ring, vals: list, d: int, deg: int) -> list:
    out = []
    for i in range(d):
        blk = []
        for k in range(deg + 1):
            blk.extend(vals[i * (deg + 1) + k])
        out.append(ring.trim(blk))
    return out


def _degree_constraints(red: Reducer, d: int, deg: int, maxdeg: int) -> list:
    """Rows: coefficients of x^e, e > maxdeg, of W^-1 u as linear forms in flattened u."""
    ring = red.ring
    cols = []
    for j in range(d):
        for k in range(deg + 1):
            u = [[] for _ in range(d)]
            u[j] = ring.monomial(k)
            polys, low = red.to_inf_frame(u)
            cols.append((polys, low))
    top = max((ring.deg(a) + low for polys, low in cols for a in polys if a), default=maxdeg)
    rows = []
    for i in range(d):
        for e in range(maxdeg + 1, top + 1):
            row = []
            for polys, low in cols:
                a = polys[i]
                row.append(ring.coeff(a, e - low) if a and e - low >= 0 else list(ring.zero_elem))
            rows.append(row)
    return rows


def _saturated_kernel(ring: Ring, A: list, ncols: int, cutoff: int) -> tuple[list, list]:
    """(K, Linv): columns of K span the saturated kernel; Linv K = I."""
    if not A:
        K = [[list(ring.one) if i == j else list(ring.zero_elem) for j in range(ncols)] for i in range(ncols)]
        return K, [row[:] for row in K]
    dec = snf(ring, A, cutoff=cutoff, track_P=False)
    rk = dec.rank
    K = [[dec.Q[i][j] for j in range(rk, ncols)] for i in range(ncols)]
    Linv = [dec.Qinv[i] for i in range(rk, ncols)]
    return K, Linv


def build_basis(cd: CurveData, rd: ResidueData, E: int) -> CohomologyBasis:
    red = Reducer(cd, rd, E)
    ring, d = red.ring, cd.d_x
    o = cd.ords
    dr = red.dr
    cutoff = max(1, E // 2)
    # E0 cap Einf
    degE = dr - 2 - o["ord0_W"] - o["ordinf_W"]
    stop = dr - 2 - o["ord0_W"]
    if degE < 0:
        raise RankDeficient("empty space of forms")
    CE = _degree_constraints(red, d, degE, stop)
    KE, LinvE = _saturated_kernel(ring, CE, d * (degE + 1), cutoff)
    dimE = len(LinvE)
    # B0 cap Binf
    degB = -o["ordinf_W"] - o["ord0_W"] - 1
    dimB = 0
    Dcols = []
    if degB >= 0:
        CB = _degree_constraints(red, d, degB, -o["ord0_W"] - 1)
        KB, _ = _saturated_kernel(ring, CB, d * (degB + 1), cutoff)
        dimB = len(KB[0]) if KB else 0
        for j in range(dimB):
            v = _unflatten(ring, [KB[i][j] for i in range(len(KB))], d, degB)
            dv = red.D_finite(v, 0)
            flat = _flatten(ring, dv, d, degE)
            if any(ring.deg(a) > degE for a in dv if a):
                raise RankDeficient("d(B0 cap Binf) leaves the degree window")
            coords = [row[0] for row in mat_mul(ring, LinvE, [[x] for x in flat])]
            # membership check: KE coords == flat
            back = [row[0] for row in mat_mul(ring, KE, [[x] for x in coords])]
            if any(ring.esub(a, b) != list(ring.zero_elem) and valuation_of(ring.esub(a, b), cd.p, E) < cutoff for a, b in zip(back, flat)):
                raise RankDeficient("exact form outside E0 cap Einf")
            Dcols.append(coords)
    # quotient
    if Dcols:
        Dm = [[Dcols[j][i] for j in range(len(Dcols))] for i in range(dimE)]
        dec = snf(ring, Dm, cutoff=cutoff, track_Q=False)
        rk = dec.rank
        proj = [dec.P[i] for i in range(rk, dimE)]
        lift = [[dec.Pinv[i][j] for j in range(rk, dimE)] for i in range(dimE)]
        notes = {"exact_pivots": dec.pivot_vals}
    else:
        proj = [[list(ring.one) if i == j else list(ring.zero_elem) for j in range(dimE)] for i in range(dimE)]
        lift = [row[:] for row in proj]
        notes = {"exact_pivots": []}
    kappa = len(proj)
    expected = cd.kappa
    if kappa != expected:
        raise RankDeficient(f"cohomology dimension {kappa}, expected {expected}")
    # omegas in flattened u coordinates: KE * lift
    Om = mat_mul(ring, KE, lift)
    omegas = [_unflatten(ring, [Om[i][j] for i in range(len(Om))], d, degE) for j in range(kappa)]
    basis = CohomologyBasis(
        E=E, degE=degE, omegas=omegas, kernel_count=2 * cd.genus, kappa=kappa, Linv=LinvE,
        proj=proj, stop_deg=stop, dimE=dimE, dimB=dimB, notes=notes,
    )
    _arrange_residue_kernel(cd, rd, basis, red)
    return basis


def residue_vectors(cd: CurveData, red: Reducer, u: list, S: int = 0) -> list:
    """Linear residue conditions (stored units at shift S) of (sum u_i b0_i) dx/r."""
    ring = red.ring
    d, dr = red.d, red.dr
    out = []
    # finite: prod_{lambda != 0} (M0 - lambda)^k u mod r
    nz0 = red.nonzero_part(True)
    um = [ring.mod_monic(a, red.r) if a else [] for a in u]
    f = red._apply_M0_poly(nz0, um)
    for a in f:
        for k in range(dr):
            out.append(ring.coeff(a, k) if a else list(ring.zero_elem))
    # infinite: reduce to degree <= deg r - 1 in the b_inf frame, read x^(deg r - 1)
    polys, low = red.to_inf_frame(u)
    polys, low, S2 = red.reduce_infinite_all(polys, low, 0, dr - 1)
    top = [ring.coeff(a, dr - 1 - low) if a and dr - 1 - low >= 0 else list(ring.zero_elem) for a in polys]
    nzi = red.nonzero_part(False)
    g = red._apply_Minf_poly(nzi, top)
    # bring the finite part to the same shift
    pk = cd.p**S2
    out = [ring.elem([x * pk for x in e]) for e in out]
    out.extend(g)
    return out, S2


def _arrange_residue_kernel(cd: CurveData, rd: ResidueData, basis: CohomologyBasis, red: Reducer) -> None:
    ring = red.ring
    cols, shifts = [], []
    for u in basis.omegas:
        v, S = residue_vectors(cd, red, u)
        cols.append(v)
        shifts.append(S)
    Smax = max(shifts, default=0)
    cols = [[ring.elem([x * cd.p ** (Smax - S) for x in e]) for e in col] for col, S in zip(cols, shifts)]
    rows = len(cols[0]) if cols else 0
    A = [[cols[j][i] for j in range(len(cols))] for i in range(rows)]
    kappa = basis.kappa
    dec = snf(ring, A, cutoff=max(1, basis.E // 2), track_P=False)
    rk = dec.rank
    ker = kappa - rk
    if ker != 2 * cd.genus:
        raise RankDeficient(f"residue kernel has dimension {ker}, expected {2 * cd.genus}")
    order = list(range(rk, kappa)) + list(range(rk))
    U = [[dec.Q[i][j] for j in order] for i in range(kappa)]
    Uinv = [dec.Qinv[j] for j in order]
    flat = [_flatten(ring, u, red.d, basis.degE) for u in basis.omegas]
    Om = [[flat[j][i] for j in range(kappa)] for i in range(len(flat[0]))]
    Om = mat_mul(ring, Om, U)
    basis.omegas = [_unflatten(ring, [Om[i][j] for i in range(len(Om))], red.d, basis.degE) for j in range(kappa)]
    basis.proj = mat_mul(ring, Uinv, basis.proj)
    basis.notes["residue_rank"] = rk
    basis.notes["residue_pivots"] = dec.pivot_vals


# -- assembling F ----------------------------------------------------------------


@dataclass
class FrobMatrixF:
    stored: list  # 2g x 2g Z_q elements (ints mod p^E)
    shift: int  # value = stored / p^shift
    E: int
    delta: int
    min_val: int
    stats: ReductionStats
    extra_coords_val: int  # valuation of the coordinates outside H^1(X)
    column_shifts: list


def coordinates(cd: CurveData, red: Reducer, basis: CohomologyBasis, rel: RElem) -> tuple[list, int]:
    """Class coordinates (stored, shift) of the form sum rel_j b0_j dx/r."""
    ring = red.ring
    levels, poly = red.expand(rel)
    u0, S = red.reduce_finite_all(levels, poly, 0)
    polys, low = red.to_inf_frame(u0)
    polys, low, S = red.reduce_infinite_all(polys, low, S, basis.stop_deg)
    back, blow = red.to_fin_frame(polys, low)
    # negative powers of x must cancel
    tol = red.E - max(S, red.stats.peak)
    if blow < 0:
        for a in back:
            for k in range(0, min(-blow, ring.deg(a) + 1) if a else 0):
                c = ring.coeff(a, k)
                if any(c) and valuation_of(c, cd.p, red.E) < min(tol, red.E) - 1 - S and valuation_of(c, cd.p, red.E) < tol:
                    raise ShapeViolation("reduced form has a pole at x = 0")
        back = [ring.shift(a, blow) if a else [] for a in back]
    else:
        back = [ring.shift(a, blow) if a else [] for a in back]
    if any(ring.deg(a) > basis.degE for a in back if a):
        raise ShapeViolation("reduced form exceeds the degree window")
    flat = _flatten(ring, back, red.d, basis.degE)
    lat = [row[0] for row in mat_mul(ring, basis.Linv, [[x] for x in flat])]
    cls = [row[0] for row in mat_mul(ring, basis.proj, [[x] for x in lat])]
    return cls, S


def reduce_to_matrix(cd: CurveData, rd: ResidueData, basis: CohomologyBasis, pushed: list, E: int,
                     delta: int, threads: int = 1) -> FrobMatrixF:
    """Reduce each pushed form and assemble F column by column.

    Forms are independent, so with ``threads > 1`` they run on a pool; each
    worker owns its reducer and the result does not depend on scheduling.
    """
    g2 = basis.kernel_count

    def one(rel):
        red = Reducer(cd, rd, E)
        cls, S = coordinates(cd, red, basis, rel)
        return cls, S, red.stats

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, pushed))
    else:
        results = [one(rel) for rel in pushed]
    ring = cd.ring(E)
    shifts = [S for _, S, _ in results]
    Sm = max(shifts, default=0)
    F = [[None] * g2 for _ in range(g2)]
    extra = E
    stats = ReductionStats(final_shift=Sm)
    for i, (cls, S, st) in enumerate(results):
        pk = cd.p ** (Sm - S)
        for j in range(g2):
            F[j][i] = ring.elem([x * pk for x in cls[j]])
        for c in cls[g2:]:
            if any(c):
                extra = min(extra, valuation_of(c, cd.p, E) - S)
        stats.peak = max(stats.peak, st.peak)
        stats.finite_steps += st.finite_steps
        stats.infinite_steps += st.infinite_steps
        stats.max_level = max(stats.max_level, st.max_level)
    mv = min((valuation_of(e, cd.p, E) for row in F for e in row if any(e)), default=E) - Sm
    if mv < -delta:
        raise ValuationBreach(f"Frobenius matrix has valuation {mv} < -{delta}")
    return FrobMatrixF(stored=F, shift=Sm, E=E, delta=delta, min_val=mv, stats=stats,
                       extra_coords_val=extra, column_shifts=shifts)


# -- single-step wrappers (used by tests and the API) -------------------------------


def reduce_finite_step(cd: CurveData, rd: ResidueData, w: list, ell: int, E: int):
    """(u, v, k): w/r^ell b0 dx/r = d(v b0/r^ell) + u/r^(ell-1) b0 dx/r with u, v scaled by p^k."""
    red = Reducer(cd, rd, E)
    return red.finite_step([red.ring.norm(a) for a in w], ell)


def reduce_infinite_step(cd: CurveData, rd: ResidueData, w: list, low: int, E: int):
    """One infinite step on a Laurent vector (b_inf frame).

    Returns (u_polys, u_low, c, kexp, k): p^k w = d(c x^kexp b_inf)*r/dx + u.
    A no-op (k = 0, c = None) when the order at infinity is already above -deg r.
    """
    red = Reducer(cd, rd, E)
    ring = red.ring
    w = [ring.norm(a) for a in w]
    deg = max((ring.deg(a) for a in w if a), default=-1)
    if deg < 0 or deg + low < red.dr:
        return w, low, None, None, 0
    top_deg = deg + low
    top = [ring.coeff(a, deg) if a and ring.deg(a) == deg else list(ring.zero_elem) for a in w]
    corr, clow, c, kexp, kv = red.infinite_step(top, top_deg)
    wk = _rescale(ring, w, kv)
    u, ulow = _laurent_sub(ring, red.d, wk, low, corr, clow)
    return u, ulow, c, kexp, kv
