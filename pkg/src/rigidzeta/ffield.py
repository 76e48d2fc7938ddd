"""Finite fields F_p[t]/(m) and dense polynomials over them.

Polynomials are lists of coefficients, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).  Two layers live here:

* ``fp_*`` functions act on polynomials over the prime field (plain ints).
* :class:`GF` is an extension field whose elements are tuples of ints, and the
  ``poly_*`` functions act on polynomials over any :class:`GF`.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence


def fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return fp_trim(out)


def fp_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return fp_trim(out)


def fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return fp_trim([c % p for c in out])


def fp_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    b = fp_trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = fp_trim([c % p for c in a])
    db = len(b) - 1
    if len(rem) <= db:
        return [], rem
    inv = pow(b[-1], -1, p)
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] * inv % p
        if c:
            quo[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = (rem[k - db + j] - c * b[j]) % p
    return fp_trim(quo), fp_trim(rem[:db])


def fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return fp_divmod(a, b, p)[1]


def fp_monic(a: Sequence[int], p: int) -> list[int]:
    a = fp_trim([c % p for c in a])
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = fp_trim([c % p for c in a]), fp_trim([c % p for c in b])
    while b:
        a, b = b, fp_mod(a, b, p)
    return fp_monic(a, p)


def fp_xgcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = fp_trim([c % p for c in a]), fp_trim([c % p for c in b])
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


def fp_deriv(a: Sequence[int], p: int) -> list[int]:
    return fp_trim([i * a[i] % p for i in range(1, len(a))])


def fp_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = fp_mod([1], m, p)
    base = fp_mod(a, m, p)
    while e:
        if e & 1:
            result = fp_mod(fp_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = fp_mod(fp_mul(base, base, p), m, p)
    return result


def fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test over F_p."""
    f = fp_monic(f, p)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    powers = []
    h = x
    for _ in range(d):
        h = fp_powmod(h, p, f, p)
        powers.append(h)
    if fp_sub(powers[d - 1], x, p):
        return False
    for q in prime_factors(d):
        if len(fp_gcd(f, fp_sub(powers[d // q - 1], x, p), p)) > 1:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, which covers every use here."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def find_irreducible(p: int, d: int) -> list[int]:
    """Smallest monic irreducible of degree d over F_p.

    Candidates are ordered by their coefficient tuple read from the constant
    term upwards, so the choice is reproducible.
    """
    if d == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=d):
        f = list(tail) + [1]
        if f[0] and fp_is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")


class GF:
    """The field F_p[t]/(modulus); elements are k-tuples of ints."""

    def __init__(self, p: int, modulus: Sequence[int]):
        self.p = p
        self.modulus = fp_monic(modulus, p)
        self.k = len(self.modulus) - 1
        if self.k < 1:
            raise ValueError("modulus must have positive degree")
        self.order = p**self.k
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def __call__(self, c) -> tuple:
        if isinstance(c, int):
            return (c % self.p,) + (0,) * (self.k - 1)
        c = fp_mod(list(c), self.modulus, self.p)
        return tuple(c) + (0,) * (self.k - len(c))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return (a[0] * b[0] % self.p,)
        return self(fp_mul(a, b, self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return (pow(a[0], -1, self.p),)
        _, s, _ = fp_xgcd(list(a), self.modulus, self.p)
        return self(s)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def elements(self) -> Iterator[tuple]:
        return itertools.product(range(self.p), repeat=self.k)

    def from_index(self, idx: int) -> tuple:
        out = []
        for _ in range(self.k):
            idx, c = divmod(idx, self.p)
            out.append(c)
        return tuple(out)


def poly_trim(a: list) -> list:
    while a and not any(a[-1]):
        a.pop()
    return a


def poly_add(F: GF, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return poly_trim(out)


def poly_sub(F: GF, a, b):
    out = list(a) + [F.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return poly_trim(out)


def poly_scale(F: GF, a, c):
    return poly_trim([F.mul(x, c) for x in a])


def poly_mul(F: GF, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not any(ai):
            continue
        for j, bj in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return poly_trim(out)


def poly_divmod(F: GF, a, b):
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = poly_trim(list(a))
    db = len(b) - 1
    if len(rem) <= db:
        return [], rem
    inv = F.inv(b[-1])
    quo = [F.zero] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = F.mul(rem[k], inv)
        if any(c):
            quo[k - db] = c
            for j in range(db + 1):
                rem[k - db + j] = F.sub(rem[k - db + j], F.mul(c, b[j]))
    return poly_trim(quo), poly_trim(rem[:db])


def poly_mod(F: GF, a, b):
    return poly_divmod(F, a, b)[1]


def poly_monic(F: GF, a):
    a = poly_trim(list(a))
    if not a:
        return []
    return poly_scale(F, a, F.inv(a[-1]))


def poly_gcd(F: GF, a, b):
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_deriv(F: GF, a):
    return poly_trim([F.mul(F(i), a[i]) for i in range(1, len(a))])


def poly_powmod(F: GF, a, e: int, m):
    result = poly_mod(F, [F.one], m)
    base = poly_mod(F, a, m)
    while e:
        if e & 1:
            result = poly_mod(F, poly_mul(F, result, base), m)
        e >>= 1
        if e:
            base = poly_mod(F, poly_mul(F, base, base), m)
    return result


def poly_eval(F: GF, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_frobenius_gcd(F: GF, f, e: int):
    """gcd(f, X^(|F|^e) - X) for nonzero f: the product of the distinct
    linear factors of f over the degree-e extension of F."""
    f = poly_monic(F, f)
    if len(f) <= 1:
        return [F.one]
    x = [F.zero, F.one]
    h = poly_mod(F, x, f)
    for _ in range(e):
        h = poly_powmod(F, h, F.order, f)
    return poly_gcd(F, f, poly_sub(F, h, x))


def poly_squarefree_part(F: GF, f):
    """Product of the distinct monic irreducible factors of f."""
    f = poly_monic(F, f)
    if len(f) <= 2:
        return f
    d = poly_deriv(F, f)
    if not d:
        # f = h^p where h has the p-th roots of f's coefficients at x^(i/p)
        root = F.order // F.p
        h = [F.pow(f[i], root) for i in range(0, len(f), F.p)]
        return poly_squarefree_part(F, h)
    g = poly_gcd(F, f, d)
    w = poly_divmod(F, f, g)[0]
    rest = g
    while True:
        c = poly_gcd(F, rest, w)
        if len(c) <= 1:
            break
        rest = poly_divmod(F, rest, c)[0]
    if len(rest) > 1:
        return poly_monic(F, poly_mul(F, w, poly_squarefree_part(F, rest)))
    return poly_monic(F, w)


def poly_find_root(F: GF, f, seed: int = 1):
    """A root of f in F via equal-degree splitting, or None if f has none."""
    g = poly_frobenius_gcd(F, f, 1)
    if len(g) <= 1:
        return None
    counter = seed
    while len(g) > 2:
        counter += 1
        shift = [F.from_index(counter % F.order), F.one]
        if F.p == 2:
            h, acc = shift, list(shift)
            for _ in range(F.k - 1):
                h = poly_mod(F, poly_mul(F, h, h), g)
                acc = poly_add(F, acc, h)
            cand = acc
        else:
            cand = poly_sub(F, poly_powmod(F, shift, (F.order - 1) // 2, g), [F.one])
        d = poly_gcd(F, g, cand)
        if 1 < len(d) < len(g):
            other = poly_divmod(F, g, d)[0]
            g = d if len(d) <= len(other) else poly_monic(F, other)
    return F.neg(g[0])
