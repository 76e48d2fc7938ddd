"""From the Frobenius matrix to the integer L-polynomial and point counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, isqrt

from .cohomology import FrobMatrixF
from .errors import BoundBreach, NegativeCount, NotRational
from .padic import PadicContext, berkowitz


@dataclass
class LPolynomial:
    coeffs: list  # a_0 .. a_2g
    genus: int
    q: int

    def __post_init__(self):
        check_lpoly(self.coeffs, self.genus, self.q)

    def __call__(self, T: int) -> int:
        return sum(c * T**i for i, c in enumerate(self.coeffs))


def check_lpoly(a: list, g: int, q: int) -> None:
    if len(a) != 2 * g + 1 or a[0] != 1:
        raise BoundBreach("L-polynomial must have degree 2g and constant term 1")
    for i in range(g + 1):
        if a[2 * g - i] != q ** (g - i) * a[i]:
            raise BoundBreach(f"functional equation fails at degree {i}")
    for i in range(1, 2 * g + 1):
        if not within_weil(a[i], comb(2 * g, i), q, i):
            raise BoundBreach(f"|a_{i}| exceeds the Weil bound")


def within_weil(a: int, c: int, q: int, i: int) -> bool:
    """|a| <= c q^(i/2), compared on squares."""
    return a * a <= c * c * q**i


@dataclass
class ZetaReport:
    lpoly: LPolynomial
    point_counts: list
    precision_plan: object = None
    audit: object = None
    timings: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)


def twisted_norm(F: FrobMatrixF, ctx: PadicContext) -> tuple[list, int, int]:
    """F^(n) = F^(sigma^(n-1)) ... F^sigma F.

    Returns (stored matrix, shift, modulus exponent).  The stored entries of F
    are treated as exact integers, so the product is formed at a modulus
    large enough that nothing wraps around.
    """
    n = ctx.n
    g2 = len(F.stored)
    E2 = F.E + (n + g2 * n) * F.shift + 10
    ring = ctx.ring_at(E2)
    M = [[list(e) for e in row] for row in F.stored]
    acc = M
    for k in range(1, n):
        tw = [[ctx.sigma(e, k, E2) for e in row] for row in M]
        acc = _mat_mul(ring, tw, acc)
    return acc, n * F.shift, E2


def _mat_mul(ring, A, B):
    k = len(B)
    out = []
    for row in A:
        out.append([_dot(ring, row, [B[t][j] for t in range(k)]) for j in range(len(B[0]))])
    return out


def _dot(ring, a, b):
    acc = list(ring.zero_elem)
    for x, y in zip(a, b):
        if any(x) and any(y):
            acc = ring.eadd(acc, ring.emul(x, y))
    return acc


def char_poly_reverse(M: list, ring) -> list:
    """Coefficients of det(1 - M T), low to high, via division-free Berkowitz."""
    if not M:
        return [list(ring.one)]
    cp = berkowitz(M, ring.eadd, ring.esub, ring.emul, list(ring.zero_elem), list(ring.one))
    return list(reversed(cp))


def approximate_coeffs(F: FrobMatrixF, ctx: PadicContext) -> tuple[list, int]:
    """a_i in Z_p as integers mod p^prec_i, plus the working exponent."""
    M, S, E2 = twisted_norm(F, ctx)
    ring = ctx.ring_at(E2)
    rev = char_poly_reverse(M, ring)
    p = ctx.p
    out = []
    for i, c in enumerate(rev):
        sh = i * S
        if any(x % p**sh for x in c):
            raise BoundBreach(f"coefficient {i} of the characteristic polynomial is not integral")
        out.append([x // p**sh for x in c])
    return out, E2


def recover_integer_lpoly(approx: list, g: int, p: int, n: int, digits: list) -> tuple[LPolynomial, dict]:
    """Round a_1..a_g through power sums, then fill by the functional equation.

    ``approx[i]`` is a Z_q element (length-n int list) approximating a_i;
    ``digits[i-1]`` is the number of correct p-adic digits for i = 1..g.
    s_i is pinned down modulo i p^k and lies in [-2g q^(i/2), 2g q^(i/2)],
    a window shorter than i p^k.
    """
    q = p**n
    a = [1] + [0] * (2 * g)
    s = [0] * (g + 1)
    checks = {"fe_congruence": True, "not_rational": False}
    for i in range(1, g + 1):
        k = digits[i - 1]
        mod = p**k
        c = approx[i]
        if any(x % mod for x in c[1:]):
            checks["not_rational"] = True
            raise NotRational(f"a_{i} has nonzero t-coordinates")
        ai_mod = c[0] % mod
        rest = sum(a[j] * s[i - j] for j in range(1, i))
        modulus = i * mod
        base = (-i * ai_mod - rest) % modulus
        bound = isqrt(4 * g * g * q**i)
        first = -bound + (base + bound) % modulus
        cands = list(range(first, bound + 1, modulus))
        if len(cands) != 1:
            raise BoundBreach(f"a_{i}: {len(cands)} power-sum candidates in the Weil window")
        s[i] = cands[0]
        num = -s[i] - rest
        if num % i:
            raise BoundBreach(f"a_{i} is not integral")
        a[i] = num // i
        if (a[i] - ai_mod) % mod:
            raise BoundBreach(f"a_{i} disagrees with its approximation")
        if not within_weil(a[i], comb(2 * g, i), q, i):
            raise BoundBreach(f"a_{i} outside the Weil bound")
    # pre-rounding functional-equation congruence on the upper half
    mod = p ** max(digits)
    for i in range(g):
        lhs = approx[2 * g - i][0] % mod
        rhs = q ** (g - i) * (approx[i][0] if i else 1) % mod
        if lhs != rhs or any(x % mod for x in approx[2 * g - i][1:]):
            checks["fe_congruence"] = False
    for i in range(g + 1, 2 * g + 1):
        a[i] = q ** (i - g) * a[2 * g - i]
    return LPolynomial(a, g, q), checks


def power_sums(a: list, kmax: int) -> list:
    """s_1..s_kmax of the inverse roots of 1 + a_1 T + ... (Newton)."""
    deg = len(a) - 1
    s = [0] * (kmax + 1)
    for k in range(1, kmax + 1):
        acc = -k * a[k] if k <= deg else 0
        for j in range(1, min(k, deg + 1)):
            acc -= a[j] * s[k - j]
        s[k] = acc
    return s[1:]


def counts_from_lpoly(L: LPolynomial, imax: int) -> list:
    s = power_sums(L.coeffs, imax)
    out = []
    for i in range(1, imax + 1):
        c = L.q**i + 1 - s[i - 1]
        if c < 0:
            raise NegativeCount(f"#X(F_q^{i}) = {c}")
        out.append(c)
    return out


def lpoly_from_power_sums(s: list, g: int, q: int) -> LPolynomial:
    """a_1..a_g from s_1..s_g, rest from the functional equation."""
    a = [1] + [0] * (2 * g)
    for i in range(1, g + 1):
        acc = -s[i - 1] - sum(a[j] * s[i - j - 1] for j in range(1, i))
        if acc % i:
            raise BoundBreach("power sums do not come from an integer polynomial")
        a[i] = acc // i
    for i in range(g + 1, 2 * g + 1):
        a[i] = q ** (i - g) * a[2 * g - i]
    return LPolynomial(a, g, q)


def zeta_presentation(L: LPolynomial) -> dict:
    return {
        "numerator": [str(c) for c in L.coeffs],
        "denominator": ["1", str(-(L.q + 1)), str(L.q)],
    }
