"""Integral bases W0, Winf for a plane model, written out as a curve document.

Round-2 closure over Q[x] (and over Q[1/x] for Winf), restricted to the
case where every prime whose square divides the discriminant is linear,
x - a with a rational.  That covers the models shipped in examples/ but is
not a general integral-basis algorithm.

usage: python3 scripts/integral_basis.py MODEL.json P OUT.json

MODEL.json holds {"name": ..., "Q": [[c_00, c_01, ...], ...]} with integer
coefficients indexed [y-degree][x-degree] and Q monic in y.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from math import lcm, gcd

# -- polynomials over Q: lists of Fractions, low to high, trimmed -------------


def ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return ptrim(out)


def pneg(a):
    return [-v for v in a]


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return ptrim(out)


def pscale(a, c):
    return ptrim([v * c for v in a]) if c else []


def pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for i, v in enumerate(b):
                a[k + i] -= c * v
    return ptrim(q), ptrim(a[: len(b) - 1])


def pexact(a, b):
    q, r = pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def pmonic(a):
    return pscale(a, 1 / a[-1])


def pgcdx(a, b):
    """(g, s, t) with s a + t b = g monic."""
    r0, r1, s0, s1, t0, t1 = list(a), list(b), [Fraction(1)], [], [], [Fraction(1)]
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    c = 1 / r0[-1]
    return pscale(r0, c), pscale(s0, c), pscale(t0, c)


def peval(a, x):
    acc = Fraction(0)
    for v in reversed(a):
        acc = acc * x + v
    return acc


def ppow(a, e):
    out = [Fraction(1)]
    for _ in range(e):
        out = pmul(out, a)
    return out


# -- the function field Q(x)[y]/(Q) --------------------------------------------


class Field:
    def __init__(self, Q):
        self.Q = [ptrim([Fraction(c) for c in row]) for row in Q]
        self.d = len(Q) - 1
        assert self.Q[-1] == [1], "model must be monic in y"

    def mul(self, a, b):
        """Product of numerator vectors (coefficients of y^0..y^(d-1))."""
        d = self.d
        prod = [[] for _ in range(2 * d - 1)]
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        prod[i + j] = padd(prod[i + j], pmul(u, v))
        for e in range(2 * d - 2, d - 1, -1):
            c = prod[e]
            if c:
                for t in range(d):
                    if self.Q[t]:
                        prod[e - d + t] = psub(prod[e - d + t], pmul(c, self.Q[t]))
        return prod[:d]


# -- lattices: rows B (numerators), common denominator D -------------------------


def hnf(rows, d):
    """Lower-triangular basis (row i supported on columns 0..i) of the Q[x]-span."""
    rows = [list(r) for r in rows if any(r)]
    basis = [None] * d
    for j in range(d - 1, -1, -1):
        live = [r for r in rows if r[j]]
        rest = [r for r in rows if not r[j]]
        if not live:
            raise ArithmeticError("lattice is not of full rank")
        piv = live[0]
        for r in live[1:]:
            g, s, t = pgcdx(piv[j], r[j])
            a, b = pexact(piv[j], g), pexact(r[j], g)
            new_piv = [padd(pmul(s, u), pmul(t, v)) for u, v in zip(piv, r)]
            other = [psub(pmul(b, u), pmul(a, v)) for u, v in zip(piv, r)]
            piv = new_piv
            if any(other):
                rest.append(other)
        c = 1 / piv[j][-1]
        piv = [pscale(u, c) for u in piv]
        basis[j] = piv
        rows = rest
    # reduce entries above the diagonal
    for i in range(d):
        for k in range(i - 1, -1, -1):
            if basis[i][k] and len(basis[i][k]) >= len(basis[k][k]):
                q, _ = pdivmod(basis[i][k], basis[k][k])
                basis[i] = [psub(u, pmul(q, v)) for u, v in zip(basis[i], basis[k])]
    return basis


def coords(B, v):
    """c with sum c_i B_i = v (B lower triangular), c polynomial."""
    d = len(B)
    v = [list(u) for u in v]
    c = [[] for _ in range(d)]
    for i in range(d - 1, -1, -1):
        if v[i]:
            c[i] = pexact(v[i], B[i][i])
            for k in range(i + 1):
                v[k] = psub(v[k], pmul(c[i], B[i][k]))
    return c


def nullspace(M, ncols):
    """Kernel of a matrix over Q (rows given), as a list of vectors."""
    M = [list(r) for r in M]
    piv_cols, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [u - f * w for u, w in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv_cols]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -M[i][fc]
        out.append(v)
    return out


def _table(K, B, D):
    """Structure constants: omega_i omega_j = sum_k T[i][j][k] omega_k."""
    d = K.d
    T = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            prod = K.mul(B[i], B[j])
            T[i][j] = T[j][i] = coords(B, [pexact(u, D) if u else [] for u in prod])
    return T


def enlarge_at(K, B, D, a):
    """One round-2 step at x - a.  Returns (B', D') or None when maximal there."""
    d = K.d
    pi = [Fraction(-a), Fraction(1)]
    T = _table(K, B, D)
    Tm = [[[peval(c, a) for c in T[i][j]] for j in range(d)] for i in range(d)]
    tr = [sum(Tm[l][k][k] for k in range(d)) for l in range(d)]
    G = [[sum(Tm[i][j][l] * tr[l] for l in range(d)) for j in range(d)] for i in range(d)]
    rad = nullspace(G, d)
    if not rad:
        return None
    gens = [[pmul(pi, u) for u in row] for row in B]
    for c in rad:
        gens.append([_combo(B, c, k) for k in range(d)])
    E = hnf(gens, d)
    TI = _table(K, E, D)
    rows = []
    for k in range(d):
        for l in range(d):
            rows.append([peval(TI[j][k][l], a) for j in range(d)])
    ker = nullspace(rows, d)
    new = [[pmul(pi, u) for u in row] for row in E]
    for c in ker:
        new.append([_combo(E, c, k) for k in range(d)])
    B2 = hnf(new, d)
    # same index as before: nothing was added
    if sum(len(B2[i][i]) for i in range(d)) == sum(len(B[i][i]) for i in range(d)) + d:
        return None
    return _normalize(B2, pmul(D, pi), a)


def _combo(B, c, k):
    acc = []
    for i in range(len(B)):
        if c[i] and B[i][k]:
            acc = padd(acc, pscale(B[i][k], c[i]))
    return acc


def _normalize(B, D, a):
    """Cancel powers of x - a common to D and every numerator."""
    pi = [Fraction(-a), Fraction(1)]
    while len(D) > 1:
        try:
            B2 = [[pexact(u, pi) if u else [] for u in row] for row in B]
        except ArithmeticError:
            break
        qd, rd = pdivmod(D, pi)
        if rd:
            break
        B, D = B2, qd
    return B, D


def maximal_order(K, primes):
    d = K.d
    B = [[[Fraction(1)] if i == k else [] for k in range(d)] for i in range(d)]
    D = [Fraction(1)]
    for a in primes:
        while True:
            step = enlarge_at(K, B, D, a)
            if step is None:
                break
            B, D = step
    return B, D


# -- driver ----------------------------------------------------------------------


def ramified_linear_primes(Q):
    """Rational roots a with (x - a)^2 dividing disc_y(Q), via sympy."""
    import sympy

    x, y = sympy.symbols("x y")
    expr = sum(sympy.Integer(c) * x**j * y**i for i, row in enumerate(Q) for j, c in enumerate(row))
    disc = sympy.discriminant(expr, y)
    _, factors = sympy.factor_list(disc)
    out, bad = [], []
    for f, e in factors:
        if e < 2:
            continue
        pf = sympy.Poly(f, x)
        if pf.degree() != 1:
            bad.append(str(f))
            continue
        c1, c0 = pf.all_coeffs()
        out.append(Fraction(int(-c0), int(c1)))
    if bad:
        raise SystemExit(f"non-linear repeated discriminant factors: {bad}")
    return sorted(out)


def infinite_model(Q):
    """(Q', k) with Q'(z, y') = z^(d k) Q(1/z, y'/z^k) monic integral in y'."""
    d = len(Q) - 1
    k = 0
    for i, row in enumerate(Q[:-1]):
        deg = max((j for j, c in enumerate(row) if c), default=-1)
        if deg >= 0:
            k = max(k, -(-deg // (d - i)))
    Qz = []
    for i, row in enumerate(Q):
        # coefficient of y'^i: z^(k(d-i)) * Q_i(1/z)
        shift = k * (d - i)
        out = [0] * (shift + 1)
        for j, c in enumerate(row):
            if c:
                out[shift - j] += c
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        Qz.append(out)
    return Qz, k


def _to_int_columns(cols):
    """Scale each column (list of Fraction Laurent numerators) to primitive integers."""
    out = []
    for col in cols:
        dens = [v.denominator for num, _, _ in col for v in num]
        m = lcm(*dens) if dens else 1
        ints = [[int(v * m) for v in num] for num, _, _ in col]
        g = 0
        for row in ints:
            for v in row:
                g = gcd(g, v)
        g = g or 1
        out.append([([v // g for v in ints[i]], col[i][1], col[i][2]) for i in range(len(col))])
    return out


def build_document(Q, p, name=""):
    import sympy

    d = len(Q) - 1
    primes = ramified_linear_primes(Q)
    K0 = Field(Q)
    B0, D0 = maximal_order(K0, primes)
    Qz, k = infinite_model(Q)
    zprimes = ramified_linear_primes(Qz)
    Kz = Field(Qz)
    Bz, Dz = maximal_order(Kz, zprimes)

    # the monic radical r of disc_y(Q)
    x, y = sympy.symbols("x y")
    expr = sum(sympy.Integer(c) * x**j * y**i for i, row in enumerate(Q) for j, c in enumerate(row))
    rad = sympy.Poly(sympy.sqf_part(sympy.discriminant(expr, y)), x).monic()
    r = [Fraction(int(c.p), int(c.q)) for c in reversed(rad.all_coeffs())]

    def split_den(D, at_zero_var):
        """D = c * prod (x - a)^e; return list of (a, e) and the constant."""
        facs, rest = [], list(D)
        for a in sorted(set(primes) | set(zprimes) | {Fraction(0)}):
            pi = [Fraction(-a), Fraction(1)]
            e = 0
            while len(rest) > 1:
                q, rr = pdivmod(rest, pi)
                if rr:
                    break
                rest, e = q, e + 1
            if e:
                facs.append((a, e))
        assert len(rest) == 1, "denominator has non-linear factors"
        return facs, rest[0]

    def fold(num, facs, const, shift, laurent=True):
        """num x^shift / (const prod (x - a)^e) as (numerator, shift, rpow).
        With ``laurent`` x-powers go into the shift; every other factor goes
        into a power of r."""
        num = pscale(num, 1 / const)
        den = [Fraction(1)]
        rp = 0
        for a, e in facs:
            if a == 0 and laurent:
                shift -= e
            else:
                den = pmul(den, ppow([Fraction(-a), Fraction(1)], e))
                rp = max(rp, e)
        if rp:
            num = pmul(num, pexact(ppow(r, rp), den))
        return num, shift, rp

    # W0: column j = b0_j, row i = coefficient of y^i
    facs0, c0 = split_den(D0, False)
    cols0 = [[fold(B0[j][i], facs0, c0, 0, laurent=False) for i in range(d)] for j in range(d)]

    # Winf: b_j = sum_i A_i(z) y'^i / Dz(z), y' = y / x^k, z = 1/x
    def zx(poly):
        """A(1/x) as (coeffs, shift)."""
        if not poly:
            return [], 0
        return list(reversed(poly)), -(len(poly) - 1)

    # Dz(z) = cz prod (z - a)^e and z - a = -a (x - 1/a) / x
    facsz, cz = split_den(Dz, True)
    xfacs, const, xsh = [], cz, 0
    for a, e in facsz:
        xsh += e
        if a != 0:
            xfacs.append((1 / a, e))
            const *= (-a) ** e
    colsinf = []
    for j in range(d):
        col = []
        for i in range(d):
            A = Bz[j][i]
            if not A:
                col.append(([], 0, 0))
                continue
            num, sh = zx(A)
            col.append(fold(num, xfacs, const, sh - k * i + xsh))
        colsinf.append(col)

    def matrix(cols):
        cols = _to_int_columns(cols)
        return [[{"num": {"coeffs": [str(v) for v in cols[j][i][0]], "shift": cols[j][i][1]},
                  "rpow": cols[j][i][2]} for j in range(d)] for i in range(d)]

    return {
        "schema": "rigid-zeta/1",
        "name": name,
        "p": p,
        "n": 1,
        "f_mod": ["0", "1"],
        "Q": [[str(c) for c in row] for row in Q],
        "W0": matrix(cols0),
        "Winf": matrix(colsinf),
    }


def main(argv=None):
    argv = argv or sys.argv[1:]
    if len(argv) != 3:
        raise SystemExit(__doc__)
    with open(argv[0]) as fh:
        model = json.load(fh)
    Q = [[int(c) for c in row] for row in model["Q"]]
    doc = build_document(Q, int(argv[1]), model.get("name", ""))
    with open(argv[2], "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
