"""Linear algebra over Z_q / p^E: Smith decomposition with transforms.

Matrices are lists of rows whose entries are Z_q elements (length-n int
lists reduced modulo p^E).  All routines take the :class:`~rigidzeta.padic.Ring`
that fixes n, the defining polynomial and the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import SystemSingular
from .padic import Ring, valuation_of


@dataclass
class Smith:
    """P A Q = D with D diagonal, D[i][i] = p^pivot_vals[i] for i < len(pivot_vals).

    ``rank`` counts pivots of valuation below the cutoff; everything past it
    is treated as zero.
    """

    P: Optional[list]
    Pinv: Optional[list]
    Q: Optional[list]
    Qinv: Optional[list]
    pivot_vals: list
    rank: int
    rows: int
    cols: int


def identity(ring: Ring, k: int) -> list:
    return [[list(ring.one) if i == j else list(ring.zero_elem) for j in range(k)] for i in range(k)]


def mat_mul(ring: Ring, A: list, B: list) -> list:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    emul, eadd = ring.emul, ring.eadd
    for row in A:
        acc = [list(ring.zero_elem) for _ in range(cols)]
        for k in range(inner):
            a = row[k]
            if not any(a):
                continue
            Bk = B[k]
            for j in range(cols):
                b = Bk[j]
                if any(b):
                    acc[j] = eadd(acc[j], emul(a, b))
        out.append(acc)
    return out


def mat_vec(ring: Ring, A: list, v: list) -> list:
    return [row[0] for row in mat_mul(ring, A, [[x] for x in v])]


def elem_val(ring: Ring, a, cap: int) -> int:
    return valuation_of(a, ring.p, cap)


def unit_part_inverse(ring: Ring, a, v: int):
    """Inverse of a / p^v (a unit) modulo p^(prec)."""
    pv = ring.p**v
    u = [c // pv for c in a]
    return ring.einv(u)


def snf(
    ring: Ring,
    A: list,
    cutoff: Optional[int] = None,
    track_P: bool = True,
    track_Q: bool = True,
) -> Smith:
    """Smith decomposition with full pivoting on valuation.

    Pivots of valuation >= cutoff (default: the working precision) are
    treated as zero and end the elimination.
    """
    E = ring.prec
    p = ring.p
    if cutoff is None:
        cutoff = E
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[list(e) for e in row] for row in A]
    P = identity(ring, rows) if track_P else None
    Pinv = identity(ring, rows) if track_P else None
    Q = identity(ring, cols) if track_Q else None
    Qinv = identity(ring, cols) if track_Q else None
    emul, esub, eadd, eneg = ring.emul, ring.esub, ring.eadd, ring.eneg
    vals = []
    # cached valuations
    V = [[elem_val(ring, e, E) for e in row] for row in M]
    for k in range(min(rows, cols)):
        best, bi, bj = E, -1, -1
        for i in range(k, rows):
            Vi = V[i]
            for j in range(k, cols):
                if Vi[j] < best:
                    best, bi, bj = Vi[j], i, j
                    if best == 0:
                        break
            if best == 0:
                break
        if bi < 0 or best >= cutoff:
            break
        if bi != k:
            M[k], M[bi] = M[bi], M[k]
            V[k], V[bi] = V[bi], V[k]
            if track_P:
                P[k], P[bi] = P[bi], P[k]
                for row in Pinv:
                    row[k], row[bi] = row[bi], row[k]
        if bj != k:
            for i in range(rows):
                M[i][k], M[i][bj] = M[i][bj], M[i][k]
                V[i][k], V[i][bj] = V[i][bj], V[i][k]
            if track_Q:
                for row in Q:
                    row[k], row[bj] = row[bj], row[k]
                Qinv[k], Qinv[bj] = Qinv[bj], Qinv[k]
        v = best
        uinv = unit_part_inverse(ring, M[k][k], v)
        u = ring.einv(uinv)
        # scale row k by uinv so the pivot is exactly p^v
        M[k] = [emul(e, uinv) for e in M[k]]
        if track_P:
            P[k] = [emul(e, uinv) for e in P[k]]
            for row in Pinv:
                row[k] = emul(row[k], u)
        pv = p**v
        Mk = M[k]
        # eliminate below: row_i -= (a_ik / p^v) row_k
        for i in range(k + 1, rows):
            a = M[i][k]
            if not any(a):
                continue
            c = [x // pv for x in a]
            Mi = M[i]
            for j in range(k, cols):
                if any(Mk[j]):
                    Mi[j] = esub(Mi[j], emul(c, Mk[j]))
            V[i] = [elem_val(ring, e, E) for e in Mi]
            if track_P:
                P[i] = [esub(x, emul(c, y)) for x, y in zip(P[i], P[k])]
                for row in Pinv:
                    if any(row[i]):
                        row[k] = eadd(row[k], emul(c, row[i]))
        # eliminate right: col_j -= (a_kj / p^v) col_k
        for j in range(k + 1, cols):
            a = Mk[j]
            if not any(a):
                continue
            c = [x // pv for x in a]
            Mk[j] = list(ring.zero_elem)
            V[k][j] = E
            if track_Q:
                for row in Q:
                    if any(row[k]):
                        row[j] = esub(row[j], emul(c, row[k]))
                Qinv[k] = [eadd(x, emul(c, y)) for x, y in zip(Qinv[k], Qinv[j])]
        vals.append(v)
    return Smith(P, Pinv, Q, Qinv, vals, len(vals), rows, cols)


def solve(ring: Ring, A: list, b: list, cutoff: Optional[int] = None, full_rank: bool = False) -> tuple[list, int]:
    """Solve A x = b.  Returns (y, loss) with x = y / p^loss.

    Raises :class:`SystemSingular` when b is not in the column span to the
    available precision, or (with ``full_rank``) when A has a kernel.
    """
    dec = snf(ring, A, cutoff=cutoff)
    if full_rank and dec.rank < dec.cols:
        raise SystemSingular(f"matrix has rank {dec.rank} < {dec.cols} to precision")
    Pb = mat_vec(ring, dec.P, b)
    E = ring.prec
    loss = max(dec.pivot_vals, default=0)
    for i in range(dec.rank, len(Pb)):
        if elem_val(ring, Pb[i], E) < E - loss:
            raise SystemSingular("right-hand side is outside the column span")
    y = []
    p = ring.p
    for i in range(dec.cols):
        if i < dec.rank:
            v = dec.pivot_vals[i]
            y.append([c * p ** (loss - v) % ring.modulus for c in Pb[i]])
        else:
            y.append(list(ring.zero_elem))
    return mat_vec(ring, dec.Q, y), loss


def kernel(ring: Ring, A: list, cutoff: Optional[int] = None) -> tuple[list, Smith]:
    """Saturated basis (as columns of a cols x k matrix) of the kernel of A."""
    dec = snf(ring, A, cutoff=cutoff, track_P=False)
    cols = dec.cols
    K = [[dec.Q[i][j] for j in range(dec.rank, cols)] for i in range(cols)]
    return K, dec


def transpose(A: list) -> list:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def vec_val(ring: Ring, v: list, cap: int) -> int:
    return min((elem_val(ring, e, cap) for e in v), default=cap)
