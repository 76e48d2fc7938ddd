"""Precision bookkeeping: digits needed on chi, the lattice gap delta, loss bounds and N.

Every floor(log_p(x)) is evaluated with exact integer or rational comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .curve import CurveData


def floor_log(p: int, x) -> int:
    """floor(log_p x) for rational x, with 0 for x <= 1."""
    x = Fraction(x)
    if x <= 1:
        return 0
    k = 0
    pk = p
    while pk <= x:
        k += 1
        pk *= p
    return k


def chi_digits_for(g: int, n: int, p: int, i: int) -> int:
    """floor(log_p(4g/i) + n i / 2) + 1.

    With k the floor, p^k <= (4g/i) p^(ni/2)  <=>  i^2 p^(2k) <= 16 g^2 p^(ni).
    """
    rhs = 16 * g * g * p ** (n * i)
    k = 0
    while i * i * p ** (2 * (k + 1)) <= rhs:
        k += 1
    return k + 1


def chi_precision(g: int, n: int, p: int) -> int:
    if g < 1:
        return 0
    return max(chi_digits_for(g, n, p, i) for i in range(1, g + 1))


def loss_functions(cd: CurveData) -> tuple[Callable[[int], int], int]:
    p, e0, einf = cd.p, cd.e0, cd.einf
    o = cd.ords
    tail = floor_log(p, -(o["ordinf_Winv"] + 1) * einf)

    # a term of valuation m sits at pole order below p m
    def f1(m: int) -> int:
        return floor_log(p, p * m * e0) + tail

    f2 = floor_log(p, -p * (o["ord0_W"] + 1) * einf)
    return f1, f2


def deltas(cd: CurveData) -> tuple[int, int]:
    p, einf, g = cd.p, cd.einf, cd.genus
    d1 = floor_log(p, -(cd.ords["ord0_W"] + 1) * einf)
    d2 = floor_log(p, ((2 * g - 2) // cd.d_x + 1) * einf)
    return d1, d2


@dataclass
class PrecisionPlan:
    chi_digits: int
    chi_digits_per_i: list
    F_digits: int
    delta1: int
    delta2: int
    delta: int
    N_min: int
    N: int
    margin: int
    e0: int
    einf: int
    f2: int
    ords: dict = field(default_factory=dict)
    forced: bool = False

    def to_json(self) -> dict:
        return {
            "chi_digits": self.chi_digits,
            "chi_digits_per_i": self.chi_digits_per_i,
            "F_digits": self.F_digits,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "delta": self.delta,
            "N_min": self.N_min,
            "N": self.N,
            "margin": self.margin,
            "forced_N": self.forced,
            "e0": self.e0,
            "einf": self.einf,
            "f2": self.f2,
            "ords": dict(self.ords),
        }


def minimal_N(f1: Callable[[int], int], f2: int, target: int) -> int:
    """Least N with m - max(f1(m), f2) >= target for every m >= N.

    For m >= 2 the function m - f1(m) never decreases (the argument of the
    log grows by a factor below p from m to m+1), so after the first m >= 2
    that works, all larger ones do; m = 1 is checked separately.
    """
    m = 2
    while m - max(f1(m), f2) < target:
        m += 1
    if m == 2 and 1 - max(f1(1), f2) >= target:
        return 1
    return m


def choose_N(cd: CurveData, margin: int = 1, force_N: int | None = None) -> PrecisionPlan:
    g, n, p = cd.genus, cd.n, cd.p
    per_i = [chi_digits_for(g, n, p, i) for i in range(1, g + 1)]
    chi = max(per_i)
    d1, d2 = deltas(cd)
    delta = d1 + d2
    f1, f2 = loss_functions(cd)
    Nmin = minimal_N(f1, f2, chi + delta)
    N = force_N if force_N is not None else Nmin + margin
    return PrecisionPlan(
        chi_digits=chi, chi_digits_per_i=per_i, F_digits=chi + delta, delta1=d1, delta2=d2,
        delta=delta, N_min=Nmin, N=N, margin=margin, e0=cd.e0, einf=cd.einf, f2=f2,
        ords=dict(cd.ords), forced=force_N is not None,
    )


def loss_bound(cd: CurveData, N: int) -> int:
    """Largest loss the reductions may incur on forms pushed at precision N."""
    f1, f2 = loss_functions(cd)
    return max(f1(N), f2)
