"""Naive point counts for the test curves, independent of the package's oracle.

Hyperelliptic curves are counted with quadratic characters over F_{q^i};
smooth superelliptic models y^d = f with gcd(d, deg f) = 1 by enumerating
all affine pairs and adding the single point at infinity.
"""

from __future__ import annotations

import random

from rigidzeta import ffield as ff


def extension(p: int, n: int, i: int):
    return ff.GF(p, ff.find_irreducible(p, n * i))


def _eval(F, coeffs, x):
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), F(c % F.p))
    return acc


def hyperelliptic_count(f: list, p: int, k: int) -> int:
    """#X(F_{p^k}) for y^2 = f(x) with integer f, p odd.

    Only for curves defined over the prime field.
    """
    F = extension(p, 1, k)
    half = (F.order - 1) // 2
    one = F.one
    total = 0
    for x in F.elements():
        v = _eval(F, f, x)
        if not any(v):
            total += 1
        elif F.pow(v, half) == one:
            total += 2
    deg = max(i for i, c in enumerate(f) if c % p)
    if deg % 2:
        total += 1
    else:
        lc = F(f[deg] % p)
        total += 2 if F.pow(lc, half) == one else 0
    return total


def superelliptic_count(f: list, d: int, p: int, k: int) -> int:
    """#X(F_{p^k}) for y^d = f(x), gcd(d, deg f) = 1."""
    F = extension(p, 1, k)
    powers = {}
    for y in F.elements():
        v = F.pow(y, d)
        powers[v] = powers.get(v, 0) + 1
    total = 1
    for x in F.elements():
        total += powers.get(_eval(F, f, x), 0)
    return total


def random_squarefree(rng: random.Random, p: int, deg: int, monic: bool = False) -> list:
    """Random integer f of exact degree deg, squarefree modulo p, with
    balanced coefficients (so no monomial vanishes modulo p)."""
    h = (p - 1) // 2
    while True:
        f = [rng.randint(-h, h) for _ in range(deg)] + [1 if monic else rng.choice([c for c in range(1, h + 1)])]
        fp = ff.fp_trim([c % p for c in f])
        if len(fp) - 1 != deg:
            continue
        if len(ff.fp_gcd(fp, ff.fp_deriv(fp, p), p)) == 1:
            return f
