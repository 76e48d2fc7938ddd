"""Arithmetic in Z_q = Z_p[t]/(f_mod) truncated at p^N, and polynomials over it.

Storage is flat: a Z_q element is a length-n list of ints (coordinates in
1, t, ..., t^(n-1)); a polynomial in x over Z_q is one list of length L*n
holding the coefficient of x^i t^j at index i*n + j.  Trailing zero blocks
are trimmed, so the zero polynomial is ``[]``.

A :class:`Ring` bundles (n, f_mod, p, prec).  ``prec=None`` gives the exact
ring Z[t]/(f_mod), which is used to build curve data before passing to p-adics.
Multiplication goes through Kronecker substitution into a single big integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import gmpy2

from .errors import NotAUnit, NotPrime, PrecisionTooSmall, ReducibleDefiningPolynomial, SingularToPrecision, SystemSingular
from .ffield import GF, fp_is_irreducible, is_prime

_GMP_BITS = 4000


def _bigmul(a: int, b: int) -> int:
    if a.bit_length() > _GMP_BITS and b.bit_length() > _GMP_BITS:
        return int(gmpy2.mpz(a) * gmpy2.mpz(b))
    return a * b


def _pack(vals: Sequence[int], nb: int) -> int:
    """Pack non-negative ints < 256**nb into one integer, little endian."""
    return int.from_bytes(b"".join(v.to_bytes(nb, "little") for v in vals), "little")


def _pack_signed(vals: Sequence[int], nb: int) -> int:
    if all(v >= 0 for v in vals):
        return _pack(vals, nb)
    pos = _pack([v if v > 0 else 0 for v in vals], nb)
    neg = _pack([-v if v < 0 else 0 for v in vals], nb)
    return pos - neg


def _unpack(z: int, nb: int, count: int) -> list[int]:
    raw = z.to_bytes(nb * count, "little")
    fb = int.from_bytes
    return [fb(raw[k : k + nb], "little") for k in range(0, nb * count, nb)]


def _unpack_signed(z: int, nb: int, count: int) -> list[int]:
    half = 1 << (8 * nb - 1)
    off = _pack([half] * count, nb)
    return [v - half for v in _unpack(z + off, nb, count)]


class Ring:
    """Z[t]/(f_mod) reduced mod ``modulus`` (or exact when modulus is None)."""

    def __init__(self, n: int, f_mod: Sequence[int], p: Optional[int] = None, prec: Optional[int] = None):
        self.n = n
        self.f_mod = tuple(f_mod)
        self.p = p
        self.prec = prec
        self.modulus = None if prec is None else p**prec
        if len(self.f_mod) != n + 1 or self.f_mod[-1] != 1:
            raise ValueError("f_mod must be monic of degree n")
        self.one = [1] + [0] * (n - 1)
        self.zero_elem = [0] * n

    def at(self, prec: Optional[int]) -> "Ring":
        """Same ring at another precision (None for exact)."""
        return Ring(self.n, self.f_mod, self.p, prec)

    # -- element level -------------------------------------------------
    def elem(self, c) -> list[int]:
        """Coerce an int or coordinate list to a reduced element."""
        n = self.n
        if isinstance(c, int):
            out = [c] + [0] * (n - 1)
        else:
            out = list(c) + [0] * (n - len(c))
            if len(out) > n:
                out = self._fold_t(out, 1, len(out))
        return self._reduce(out)

    def _reduce(self, a: list[int]) -> list[int]:
        m = self.modulus
        if m is not None:
            return [c % m for c in a]
        return a

    def emul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        n = self.n
        if n == 1:
            v = a[0] * b[0]
            return [v % self.modulus if self.modulus is not None else v]
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return self._reduce(self._fold_t(prod, 1, 2 * n - 1))

    def _fold_t(self, c: list[int], blocks: int, stride: int) -> list[int]:
        """Reduce blocks of ``stride`` t-coefficients modulo f_mod to length n."""
        n, f = self.n, self.f_mod
        out = []
        for b in range(blocks):
            blk = c[b * stride : (b + 1) * stride]
            for J in range(len(blk) - 1, n - 1, -1):
                v = blk[J]
                if v:
                    base = J - n
                    for k in range(n):
                        if f[k]:
                            blk[base + k] -= v * f[k]
            out.extend(blk[:n] + [0] * (n - len(blk[:n])))
        return out

    def eadd(self, a, b):
        return self._reduce([x + y for x, y in zip(a, b)])

    def esub(self, a, b):
        return self._reduce([x - y for x, y in zip(a, b)])

    def eneg(self, a):
        return self._reduce([-x for x in a])

    def eis_zero(self, a) -> bool:
        m = self.modulus
        if m is None:
            return not any(a)
        return all(x % m == 0 for x in a)

    # -- polynomial level ----------------------------------------------
    def trim(self, a: list[int]) -> list[int]:
        n = self.n
        while a and not any(a[-n:]):
            del a[-n:]
        return a

    def norm(self, a: Sequence[int]) -> list[int]:
        return self.trim(self._reduce(list(a)))

    def deg(self, a: Sequence[int]) -> int:
        return len(a) // self.n - 1

    def coeff(self, a: Sequence[int], i: int) -> list[int]:
        n = self.n
        blk = list(a[i * n : (i + 1) * n])
        return blk + [0] * (n - len(blk))

    def from_elems(self, elems) -> list[int]:
        out = []
        for e in elems:
            out.extend(self.elem(e))
        return self.trim(out)

    def const(self, c) -> list[int]:
        return self.trim(self.elem(c))

    def monomial(self, k: int, c=1) -> list[int]:
        return self.trim([0] * (k * self.n) + self.elem(c))

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return self.trim(self._reduce(out))

    def sub(self, a, b):
        out = list(a) + [0] * (len(b) - len(a))
        for i, v in enumerate(b):
            out[i] -= v
        return self.trim(self._reduce(out))

    def neg(self, a):
        return self.trim(self._reduce([-v for v in a]))

    def scale_int(self, a, c: int):
        return self.trim(self._reduce([v * c for v in a]))

    def scale(self, a, c: Sequence[int]):
        """Multiply a polynomial by a Z_q element."""
        n = self.n
        if n == 1:
            return self.scale_int(a, c[0])
        out = []
        for i in range(0, len(a), n):
            out.extend(self.emul(a[i : i + n], c))
        return self.trim(out)

    def shift(self, a, k: int):
        """Multiply by x^k (k >= 0) or drop the lowest -k coefficients."""
        if not a:
            return []
        if k >= 0:
            return [0] * (k * self.n) + list(a)
        return self.trim(list(a[-k * self.n :]))

    def truncate(self, a, k: int):
        """a mod x^k."""
        return self.trim(list(a[: k * self.n]))

    def deriv(self, a):
        n = self.n
        out = []
        for i in range(1, len(a) // n):
            out.extend(v * i for v in a[i * n : (i + 1) * n])
        return self.trim(self._reduce(out))

    def _bound_bytes(self, a, b, length: int) -> tuple[int, bool]:
        m = self.modulus
        if m is not None:
            ma = mb = m - 1
            signed = False
        else:
            ma = max(abs(v) for v in a)
            mb = max(abs(v) for v in b)
            signed = any(v < 0 for v in a) or any(v < 0 for v in b)
        bound = ma * mb * length * self.n
        bits = bound.bit_length() + (2 if signed else 0)
        return (bits + 7) // 8, signed

    def mul(self, a, b):
        if not a or not b:
            return []
        n = self.n
        la, lb = len(a) // n, len(b) // n
        if n == 1:
            if la < 8 or lb < 8:
                return self._school(a, b)
            nb, signed = self._bound_bytes(a, b, min(la, lb))
            if signed:
                z = _bigmul(_pack_signed(a, nb), _pack_signed(b, nb))
                out = _unpack_signed(z, nb, la + lb - 1)
            else:
                z = _bigmul(_pack(a, nb), _pack(b, nb))
                out = _unpack(z, nb, la + lb - 1)
            return self.trim(self._reduce(out))
        stride = 2 * n - 1
        pad = [0] * (n - 1)
        aa, bb = [], []
        for i in range(la):
            aa.extend(a[i * n : (i + 1) * n])
            aa.extend(pad)
        for i in range(lb):
            bb.extend(b[i * n : (i + 1) * n])
            bb.extend(pad)
        nb, signed = self._bound_bytes(a, b, min(la, lb))
        L = (la + lb - 1) * stride
        if signed:
            z = _bigmul(_pack_signed(aa, nb), _pack_signed(bb, nb))
            c = _unpack_signed(z, nb, L)
        else:
            z = _bigmul(_pack(aa, nb), _pack(bb, nb))
            c = _unpack(z, nb, L)
        return self.trim(self._reduce(self._fold_t(c, la + lb - 1, stride)))

    def _school(self, a, b):
        la, lb = len(a), len(b)
        out = [0] * (la + lb - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return self.trim(self._reduce(out))

    def sqr(self, a):
        return self.mul(a, a)

    def pow(self, a, e: int):
        result = self.const(1)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def divmod_monic(self, a, b):
        """Quotient and remainder on division by b, whose leading coefficient is 1."""
        n = self.n
        db = len(b) // n - 1
        la = len(a) // n
        if la <= db:
            return [], list(a)
        lq = la - db
        if db <= 24 or lq <= 24:
            return self._divmod_school(a, b)
        rb = self._reverse(b, db + 1)
        inv = self.series_inverse(rb, lq)
        ra = self._reverse(a, la)
        q = self._reverse(self.truncate(self.mul(ra, inv), lq), lq)
        r = self.sub(a, self.mul(q, b))
        return q, r

    def _divmod_school(self, a, b):
        n = self.n
        db = len(b) // n - 1
        rem = list(a)
        la = len(rem) // n
        quo = [0] * ((la - db) * n)
        bl = [b[j * n : (j + 1) * n] for j in range(db)]
        m = self.modulus
        for k in range(la - 1, db - 1, -1):
            c = rem[k * n : (k + 1) * n]
            if m is not None:
                c = [v % m for v in c]
            if not any(c):
                continue
            quo[(k - db) * n : (k - db + 1) * n] = c
            base = (k - db) * n
            if n == 1:
                cv = c[0]
                for j in range(db):
                    rem[base + j] -= cv * bl[j][0]
            else:
                for j in range(db):
                    prod = self.emul(c, bl[j])
                    off = base + j * n
                    for t in range(n):
                        rem[off + t] -= prod[t]
            rem[k * n : (k + 1) * n] = [0] * n
        return self.trim(self._reduce(quo)), self.trim(self._reduce(rem[: db * n]))

    def mod_monic(self, a, b):
        return self.divmod_monic(a, b)[1]

    def _reverse(self, a, length: int):
        n = self.n
        blocks = [a[i * n : (i + 1) * n] for i in range(len(a) // n)]
        blocks += [[0] * n] * (length - len(blocks))
        out = []
        for blk in reversed(blocks[:length]):
            out.extend(blk)
        return self.trim(out)

    def series_inverse(self, a, k: int):
        """Inverse of a power series with unit constant term, mod x^k."""
        c0 = self.coeff(a, 0)
        inv0 = self.einv(c0)
        g = self.const(inv0)
        prec = 1
        two = self.const(2)
        while prec < k:
            prec = min(2 * prec, k)
            e = self.truncate(self.mul(self.truncate(a, prec), g), prec)
            g = self.truncate(self.mul(g, self.sub(two, e)), prec)
        return g

    def einv(self, a: Sequence[int]) -> list[int]:
        """Inverse of a unit of Z_q (modular ring) or of +-1 (exact ring)."""
        m = self.modulus
        if m is None:
            if self.n == 1 and a[0] in (1, -1):
                return [a[0]]
            if list(a) == self.one:
                return list(self.one)
            raise NotAUnit("exact inverse only defined for +-1")
        if self.n == 1:
            try:
                return [pow(a[0], -1, m)]
            except ValueError:
                raise NotAUnit(f"{a[0]} is not a unit mod {m}") from None
        p = self.p
        F = GF(p, [c % p for c in self.f_mod])
        a0 = F(list(a))
        if not any(a0):
            raise NotAUnit("element is divisible by p")
        b = list(F.inv(a0))
        two = [2] + [0] * (self.n - 1)
        prec = p
        while True:
            b = self.emul(b, self.esub(two, self.emul(a, b)))
            if prec >= m:
                break
            prec *= prec
        return b

    def horner_elem(self, coeffs: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
        acc = list(self.zero_elem)
        for c in reversed(coeffs):
            acc = self.eadd(self.emul(acc, x), c)
        return acc

    def eval_elem(self, a, x: Sequence[int]) -> list[int]:
        n = self.n
        return self.horner_elem([a[i : i + n] for i in range(0, len(a), n)], x)


@dataclass(frozen=True)
class PadicContext:
    """Z_q at absolute precision N with its Frobenius sigma."""

    p: int
    n: int
    N: int
    f_mod: tuple
    sigma_image: tuple
    sigma_matrix: tuple = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def ring(self) -> Ring:
        return Ring(self.n, self.f_mod, self.p, self.N)

    def ring_at(self, prec: Optional[int]) -> Ring:
        return Ring(self.n, self.f_mod, self.p, prec)

    @property
    def residue_field(self) -> GF:
        return GF(self.p, [c % self.p for c in self.f_mod])

    def with_precision(self, N: int) -> "PadicContext":
        return make_context(self.p, self.n, N, self.f_mod)

    def elem(self, c) -> "ZqElem":
        return ZqElem(self, tuple(self.ring.elem(c)))

    def sigma(self, a: Sequence[int], k: int = 1, prec: Optional[int] = None) -> list[int]:
        """sigma^k of a coordinate vector (reduced mod p^prec, default N)."""
        m = self.modulus if prec is None else self.p**prec
        a = [v % m for v in a]
        if self.n == 1:
            return a
        S = self.sigma_matrix if prec is None or prec <= self.N else _sigma_matrix(self.p, self.n, self.f_mod, prec)
        for _ in range(k % self.n):
            a = [sum(S[i][j] * a[j] for j in range(self.n)) % m for i in range(self.n)]
        return a

    def sigma_poly(self, a: Sequence[int], k: int = 1, prec: Optional[int] = None) -> list[int]:
        """Apply sigma^k coefficientwise to a flat polynomial."""
        n = self.n
        if n == 1 or k % n == 0:
            m = self.modulus if prec is None else self.p**prec
            return [v % m for v in a]
        out = []
        for i in range(0, len(a), n):
            out.extend(self.sigma(a[i : i + n], k, prec))
        return out

    def frob_poly(self, a: Sequence[int], prec: Optional[int] = None) -> list[int]:
        """a^sigma(x^p): sigma on coefficients and x -> x^p."""
        n, p = self.n, self.p
        s = self.sigma_poly(a, 1, prec)
        L = len(s) // n
        if L == 0:
            return []
        out = [0] * (((L - 1) * p + 1) * n)
        for i in range(L):
            out[i * p * n : i * p * n + n] = s[i * n : (i + 1) * n]
        return out

    def valuation(self, a: Sequence[int]) -> int:
        """p-adic valuation of an element (N if it is zero at this precision)."""
        return valuation_of(a, self.p, self.N)


def valuation_of(a: Sequence[int], p: int, cap: int) -> int:
    v = cap
    for c in a:
        if c:
            k = 0
            while k < v and c % p == 0:
                c //= p
                k += 1
            v = min(v, k)
            if v == 0:
                return 0
    return v


def poly_valuation(a: Sequence[int], p: int, cap: int) -> int:
    return valuation_of(a, p, cap)


def make_context(p: int, n: int, N: int, f_mod: Optional[Sequence[int]] = None) -> PadicContext:
    """Build Z_q at precision N; the default f_mod is the smallest irreducible."""
    from .ffield import find_irreducible

    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if N < 1:
        raise PrecisionTooSmall("precision N must be at least 1")
    if n < 1:
        raise ValueError("extension degree must be positive")
    if f_mod is None:
        f_mod = find_irreducible(p, n)
    f_mod = tuple(int(c) for c in f_mod)
    if len(f_mod) != n + 1 or f_mod[-1] != 1:
        raise ReducibleDefiningPolynomial("f_mod must be monic of degree n")
    if n > 1 and not fp_is_irreducible([c % p for c in f_mod], p):
        raise ReducibleDefiningPolynomial("f_mod is reducible modulo p")
    sig = _sigma_of_t(p, n, N, f_mod)
    return PadicContext(p, n, N, f_mod, tuple(sig), _sigma_matrix(p, n, f_mod, N))


@lru_cache(maxsize=64)
def _sigma_matrix(p: int, n: int, f_mod: tuple, N: int) -> tuple:
    """Matrix of sigma on the basis 1, t, ..., t^(n-1); column j is sigma(t^j)."""
    sig = _sigma_of_t(p, n, N, f_mod)
    ring = Ring(n, f_mod, p, N)
    powers = [ring.one]
    for _ in range(1, n):
        powers.append(ring.emul(powers[-1], sig))
    return tuple(tuple(powers[j][i] for j in range(n)) for i in range(n))


def _sigma_of_t(p: int, n: int, N: int, f_mod) -> list[int]:
    if n == 1:
        return [0]
    F = GF(p, [c % p for c in f_mod])
    x = list(F.pow(F([0, 1]), p))
    fd = [k * f_mod[k] for k in range(1, n + 1)]
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        ring = Ring(n, f_mod, p, prec)
        fx = ring.horner_elem([ring.elem(c) for c in f_mod], x)
        dfx = ring.horner_elem([ring.elem(c) for c in fd], x)
        x = ring.esub(x, ring.emul(fx, ring.einv(dfx)))
    ring = Ring(n, f_mod, p, N)
    x = ring.elem(x)
    assert ring.eis_zero(ring.horner_elem([ring.elem(c) for c in f_mod], x))
    return x


def frobenius_sigma(a: "ZqElem", k: int = 1) -> "ZqElem":
    ctx = a.ctx
    return ZqElem(ctx, tuple(ctx.sigma(a.coeffs, k)))


def zq_invert(a: "ZqElem") -> "ZqElem":
    ctx = a.ctx
    if ctx.valuation(a.coeffs) > 0:
        raise NotAUnit("element has positive valuation")
    return ZqElem(ctx, tuple(ctx.ring.einv(list(a.coeffs))))


@dataclass(frozen=True)
class ZqElem:
    """An element of Z_q / p^N with coordinates in [0, p^N)."""

    ctx: PadicContext
    coeffs: tuple

    def _other(self, o) -> tuple:
        if isinstance(o, ZqElem):
            return o.coeffs
        return tuple(self.ctx.ring.elem(o))

    def __add__(self, o):
        return ZqElem(self.ctx, tuple(self.ctx.ring.eadd(self.coeffs, self._other(o))))

    __radd__ = __add__

    def __sub__(self, o):
        return ZqElem(self.ctx, tuple(self.ctx.ring.esub(self.coeffs, self._other(o))))

    def __rsub__(self, o):
        return ZqElem(self.ctx, tuple(self.ctx.ring.esub(self._other(o), self.coeffs)))

    def __neg__(self):
        return ZqElem(self.ctx, tuple(self.ctx.ring.eneg(self.coeffs)))

    def __mul__(self, o):
        return ZqElem(self.ctx, tuple(self.ctx.ring.emul(self.coeffs, self._other(o))))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ctx.elem(1)
        base = self
        if e < 0:
            base, e = zq_invert(self), -e
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, o):
        if not isinstance(o, (ZqElem, int, list, tuple)):
            return NotImplemented
        return self.coeffs == self._other(o)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.N, self.coeffs))

    @property
    def valuation(self) -> int:
        return self.ctx.valuation(self.coeffs)

    def sigma(self, k: int = 1) -> "ZqElem":
        return frobenius_sigma(self, k)


def berkowitz(mat: list[list], add: Callable, sub: Callable, mul: Callable, zero, one) -> list:
    """Coefficients c_0..c_d of det(T*I - M) (c_d = 1), division free.

    Works over any commutative ring given by the callables; entries of ``mat``
    must be ring elements.
    """
    d = len(mat)
    if d == 0:
        return [one]
    # vector C holds the char poly of the leading k x k block, highest first
    C = [one, sub(zero, mat[0][0])]
    for k in range(1, d):
        # block: A = mat[:k][:k], R = mat[k][:k], S = mat[:k][k], a = mat[k][k]
        R = mat[k][:k]
        S = [mat[i][k] for i in range(k)]
        a = mat[k][k]
        # Toeplitz column: 1, -a, -R S, -R A S, ..., -R A^(k-1) S
        col = [one, sub(zero, a)]
        v = S
        for _ in range(k):
            rv = zero
            for i in range(k):
                rv = add(rv, mul(R[i], v[i]))
            col.append(sub(zero, rv))
            v = [_dot(mat[i][:k], v, add, mul, zero) for i in range(k)]
        # new C = T * C where T is (k+2) x (k+1) lower triangular Toeplitz
        newC = []
        for i in range(k + 2):
            acc = zero
            for j in range(min(i, k) + 1):
                acc = add(acc, mul(col[i - j], C[j]))
            newC.append(acc)
        C = newC
    return list(reversed(C))


def _dot(row, v, add, mul, zero):
    acc = zero
    for a, b in zip(row, v):
        acc = add(acc, mul(a, b))
    return acc


def poly_charpoly(ring: Ring, mat: list[list[list[int]]]) -> list[list[int]]:
    """Characteristic polynomial (low to high) of a matrix of polynomials."""
    zero = []
    one = ring.const(1)
    return berkowitz(mat, ring.add, ring.sub, ring.mul, zero, one)


def poly_det(ring: Ring, mat: list[list[list[int]]]) -> list[int]:
    d = len(mat)
    c = poly_charpoly(ring, mat)
    return c[0] if d % 2 == 0 else ring.neg(c[0])


# bivariate polynomials: list indexed by y-degree of flat x-polynomials


def mult_matrix(ring: Ring, Q: list, B: list) -> list:
    """Matrix (column convention) of multiplication by B in R[x][y]/(Q), Q monic in y."""
    d = len(Q) - 1
    cols = []
    cur = reduce_mod_Q(ring, Q, list(B))
    for _ in range(d):
        cols.append(cur + [[]] * (d - len(cur)))
        cur = reduce_mod_Q(ring, Q, [[]] + cur)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def reduce_mod_Q(ring: Ring, Q: list, A: list) -> list:
    """Reduce a bivariate polynomial modulo Q (monic in y of degree d)."""
    d = len(Q) - 1
    A = list(A)
    for k in range(len(A) - 1, d - 1, -1):
        c = A[k]
        if c:
            for i in range(d):
                if Q[i]:
                    A[k - d + i] = ring.sub(A[k - d + i], ring.mul(c, Q[i]))
        A[k] = []
    A = A[:d] if len(A) > d else A
    while A and not A[-1]:
        A.pop()
    return A


def bivar_deriv_y(ring: Ring, A: list) -> list:
    return [ring.scale_int(A[i], i) for i in range(1, len(A))]


def bivar_deriv_x(ring: Ring, A: list) -> list:
    return [ring.deriv(c) for c in A]


def poly_resultant_y(ring: Ring, A: list, B: list) -> list[int]:
    """Res_y(A, B) for A monic in y, as the determinant of the Sylvester matrix.

    Computed as (-1)^(deg A * deg B) ... via the norm of B in R[x][y]/(A):
    Res(A, B) = det(multiplication by B) for monic A.
    """
    if not B or all(not c for c in B):
        return []
    if len(A) - 1 == 0:
        return ring.const(1)
    return poly_det(ring, mult_matrix(ring, A, B))


def discriminant_y(ring: Ring, Q: list) -> list[int]:
    """(-1)^(d(d-1)/2) Res_y(Q, dQ/dy): the discriminant of Q in y."""
    d = len(Q) - 1
    res = poly_resultant_y(ring, Q, bivar_deriv_y(ring, Q))
    return ring.neg(res) if (d * (d - 1) // 2) % 2 else res


def matrix_solve_mod_r(ring: Ring, M: list, b: list, r: list) -> tuple[list, int]:
    """Solve M x = b over Z_q[x]/(r), r monic.

    Returns (y, loss) with x = y / p^loss; each y_j is reduced mod r.  The
    system is unrolled into a square one over Z_q on the coefficients.
    """
    from .linalg import solve

    k, dr = len(M), len(r) // ring.n - 1
    cols = []
    for j in range(k):
        for c in range(dr):
            col = []
            for i in range(k):
                e = ring.mod_monic(ring.shift(M[i][j], c), r) if M[i][j] else []
                col.extend(ring.coeff(e, t) for t in range(dr))
            cols.append(col)
    A = [[cols[j][i] for j in range(k * dr)] for i in range(k * dr)]
    rhs = []
    for i in range(k):
        e = ring.mod_monic(b[i], r) if b[i] else []
        rhs.extend(ring.coeff(e, t) for t in range(dr))
    try:
        y, loss = solve(ring, A, rhs, full_rank=True)
    except SystemSingular as exc:
        raise SingularToPrecision(str(exc)) from exc
    out = [ring.from_elems(y[j * dr : (j + 1) * dr]) for j in range(k)]
    return out, loss
