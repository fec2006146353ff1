"""Smith normal form over Euclidean rings and exact rank over fields.

Invariant factors without transforms go through a sparse pass that pivots on
unit entries (Markowitz-style: short columns first, then the shortest row),
which on boundary matrices of the Artin complexes removes nearly everything.
What is left is handed to a dense Euclidean reduction that pivots on the
entry of minimal norm and re-sweeps until every remaining entry is divisible
by the pivot.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .rings import (
    ZZ,
    QQ,
    IntegerRing,
    LaurentRing,
    Poly,
    PolyRing,
    PrimeField,
    RationalField,
    Ring,
    UnsupportedRingError,
)
from .sparse import SparseMatrix


@dataclass
class SNFResult:
    """Invariant factors of a matrix, optionally with transforms.

    ``invariant_factors`` are normalized (positive over Z, monic and free of
    t-powers over F[t^+-1]) and form a divisibility chain. When transforms are
    requested, ``U @ A @ V`` equals ``diag(diagonal)`` exactly; ``diagonal``
    differs from ``invariant_factors`` only by units.
    """

    invariant_factors: list
    rank: int
    U: SparseMatrix | None = None
    V: SparseMatrix | None = None
    U_inv: SparseMatrix | None = None
    V_inv: SparseMatrix | None = None
    diagonal: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# sparse unit elimination

def _eliminate_units(ring: Ring, cols: list[dict[int, Any]]):
    """Pivot on unit entries until none is left.

    Returns ``(number_of_pivots, remaining_columns)`` where the remaining
    columns (a dict ``j -> {row: value}``) contain no unit entries.
    """
    is_unit, inv, mul, sub, neg, is_zero = (
        ring.is_unit, ring.inv, ring.mul, ring.sub, ring.neg, ring.is_zero)
    work = {j: dict(c) for j, c in enumerate(cols) if c}
    rows: dict[int, set[int]] = defaultdict(set)
    for j, c in work.items():
        for r in c:
            rows[r].add(j)
    pivots = 0
    while True:
        heap = [(len(c), j) for j, c in work.items()]
        heapq.heapify(heap)
        progressed = False
        while heap:
            length, j = heapq.heappop(heap)
            col = work.get(j)
            if col is None or len(col) != length:
                continue
            best = None
            for r, v in col.items():
                if is_unit(v):
                    rl = len(rows[r])
                    if best is None or rl < best[0] or (rl == best[0] and r < best[1]):
                        best = (rl, r, v)
            if best is None:
                continue
            _, r, v = best
            vinv = inv(v)
            for k in sorted(rows[r]):
                if k == j:
                    continue
                ck = work[k]
                f = mul(ck[r], vinv)
                for rr, w in col.items():
                    old = ck.get(rr)
                    new = neg(mul(f, w)) if old is None else sub(old, mul(f, w))
                    if is_zero(new):
                        if old is not None:
                            del ck[rr]
                            rows[rr].discard(k)
                    else:
                        ck[rr] = new
                        if old is None:
                            rows[rr].add(k)
                if ck:
                    heapq.heappush(heap, (len(ck), k))
                else:
                    del work[k]
            for rr in col:
                rows[rr].discard(j)
            del work[j]
            pivots += 1
            progressed = True
        if not progressed:
            return pivots, work


def _compress(work: dict[int, dict[int, Any]], ring: Ring) -> list[list[Any]]:
    row_ids = sorted({r for c in work.values() for r in c})
    rindex = {r: i for i, r in enumerate(row_ids)}
    col_ids = sorted(work)
    dense = [[ring.zero] * len(col_ids) for _ in row_ids]
    for jj, j in enumerate(col_ids):
        for r, v in work[j].items():
            dense[rindex[r]][jj] = v
    return dense


# ---------------------------------------------------------------------------
# dense Euclidean SNF

class _Tracker:
    """Holds A together with optional U, U^-1, V, V^-1 as dense lists."""

    def __init__(self, ring: Ring, A: list[list[Any]], ncols: int, transforms: bool):
        self.ring = ring
        self.A = [list(r) for r in A]
        self.m = len(A)
        self.n = ncols
        self.t = transforms
        if transforms:
            self.U = _eye(ring, self.m)
            self.Ui = _eye(ring, self.m)
            self.V = _eye(ring, self.n)
            self.Vi = _eye(ring, self.n)

    # row_i += f * row_j
    def row_add(self, i, j, f):
        R = self.ring
        A = self.A
        A[i] = [R.add(x, R.mul(f, y)) for x, y in zip(A[i], A[j])]
        if self.t:
            self.U[i] = [R.add(x, R.mul(f, y)) for x, y in zip(self.U[i], self.U[j])]
            for row in self.Ui:
                row[j] = R.sub(row[j], R.mul(f, row[i]))

    def row_swap(self, i, j):
        if i == j:
            return
        A = self.A
        A[i], A[j] = A[j], A[i]
        if self.t:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            for row in self.Ui:
                row[i], row[j] = row[j], row[i]

    def row_scale(self, i, u):
        R = self.ring
        ui = R.inv(u)
        self.A[i] = [R.mul(u, x) for x in self.A[i]]
        if self.t:
            self.U[i] = [R.mul(u, x) for x in self.U[i]]
            for row in self.Ui:
                row[i] = R.mul(row[i], ui)

    # col_i += f * col_j
    def col_add(self, i, j, f):
        R = self.ring
        for row in self.A:
            if not R.is_zero(row[j]):
                row[i] = R.add(row[i], R.mul(f, row[j]))
        if self.t:
            for row in self.V:
                row[i] = R.add(row[i], R.mul(f, row[j]))
            self.Vi[j] = [R.sub(x, R.mul(f, y)) for x, y in zip(self.Vi[j], self.Vi[i])]

    def col_swap(self, i, j):
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        if self.t:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
            self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]


def _eye(ring, n):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def _dense_diagonalize(ring: Ring, A: list[list[Any]], ncols: int, transforms: bool):
    if not ring.is_euclidean:
        raise UnsupportedRingError(f"Smith normal form is not supported over {ring}")
    tr = _Tracker(ring, A, ncols, transforms)
    M = tr.A
    m, n = tr.m, tr.n
    norm, is_zero = ring.norm, ring.is_zero
    diag = []
    s = 0
    while s < min(m, n):
        best = None
        for i in range(s, m):
            row = M[i]
            for j in range(s, n):
                v = row[j]
                if not is_zero(v):
                    nv = norm(v)
                    if best is None or nv < best[0]:
                        best = (nv, i, j)
                        if nv == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        tr.row_swap(s, best[1])
        tr.col_swap(s, best[2])
        while True:
            p = M[s][s]
            dirty = False
            for i in range(s + 1, m):
                v = M[i][s]
                if not is_zero(v):
                    q, r = ring.divmod(v, p)
                    tr.row_add(i, s, ring.neg(q))
                    if not is_zero(r):
                        dirty = True
            if dirty:
                k = min((i for i in range(s, m) if not is_zero(M[i][s])), key=lambda i: norm(M[i][s]))
                tr.row_swap(s, k)
                continue
            for j in range(s + 1, n):
                v = M[s][j]
                if not is_zero(v):
                    q, r = ring.divmod(v, p)
                    tr.col_add(j, s, ring.neg(q))
                    if not is_zero(r):
                        dirty = True
            if dirty:
                k = min((j for j in range(s, n) if not is_zero(M[s][j])), key=lambda j: norm(M[s][j]))
                tr.col_swap(s, k)
                continue
            bad = None
            for i in range(s + 1, m):
                for j in range(s + 1, n):
                    v = M[i][j]
                    if not is_zero(v) and not is_zero(ring.divmod(v, p)[1]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            tr.row_add(s, bad, ring.one)
        _, u = ring.canonical(M[s][s])
        if not u == ring.one:
            tr.row_scale(s, ring.inv(u))
        diag.append(M[s][s])
        s += 1
    return diag, tr


def dense_snf(ring: Ring, A: list[list[Any]], ncols: int | None = None, transforms: bool = False):
    """SNF of a dense matrix. Returns ``(diagonal, tracker)``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    return _dense_diagonalize(ring, A, ncols, transforms)


def _to_sparse(ring, rows, ncols=None):
    return SparseMatrix.from_dense(ring, rows, ncols)


# ---------------------------------------------------------------------------
# public entry points

def _snf_ring(ring: Ring) -> Ring:
    if isinstance(ring, (IntegerRing, RationalField, PrimeField, PolyRing)):
        return ring
    if isinstance(ring, LaurentRing):
        if not ring.base.is_field:
            raise UnsupportedRingError(f"{ring} is not a PID; SNF needs Z, F[t] or F[t^+-1]")
        return PolyRing(ring.base)
    raise UnsupportedRingError(f"Smith normal form is not supported over {ring}")


def _normalize_factor(ring: Ring, d):
    # for F[t^+-1] this also strips the t-power, which is a unit there
    return ring.canonical(d)[0]


def snf(A: SparseMatrix, transforms: bool = False) -> SNFResult:
    """Smith normal form of ``A`` over Z, a field, F[t] or F[t^+-1]."""
    ring = A.ring
    work_ring = _snf_ring(ring)
    cols = A.columns()
    if transforms:
        dense = SparseMatrix(work_ring, A.nrows, A.ncols, cols).to_dense()
        diag, tr = _dense_diagonalize(work_ring, dense, A.ncols, True)
        return SNFResult(
            invariant_factors=[_normalize_factor(ring, d) for d in diag],
            rank=len(diag),
            U=_retag(_to_sparse(work_ring, tr.U, A.nrows), ring),
            V=_retag(_to_sparse(work_ring, tr.V, A.ncols), ring),
            U_inv=_retag(_to_sparse(work_ring, tr.Ui, A.nrows), ring),
            V_inv=_retag(_to_sparse(work_ring, tr.Vi, A.ncols), ring),
            diagonal=diag,
        )
    if isinstance(ring, LaurentRing):
        # divide each column by its common t-power (a unit column operation)
        cols = [_clear_t_power(c) for c in cols]
    pivots, rest = _eliminate_units(work_ring, cols)
    factors = [work_ring.one] * pivots
    if rest:
        dense = _compress(rest, work_ring)
        diag, _ = _dense_diagonalize(work_ring, dense, len(dense[0]), False)
        factors.extend(diag)
    factors = [_normalize_factor(ring, d) for d in factors]
    return SNFResult(invariant_factors=factors, rank=len(factors), diagonal=list(factors))


def _retag(M: SparseMatrix, ring: Ring) -> SparseMatrix:
    return SparseMatrix._raw(ring, M.nrows, M.ncols, M.columns())


def _clear_t_power(col: dict[int, Poly]) -> dict[int, Poly]:
    if not col:
        return col
    k = min(v.valuation() for v in col.values())
    if k == 0:
        return col
    return {r: v.shift(-k) for r, v in col.items()}


def rank(A: SparseMatrix, exact: bool = False) -> int:
    """Exact rank over a field.

    Over Q the default path clears denominators column by column and runs the
    integer pivoting pass, finishing any non-unit remainder with rational
    elimination. ``exact=True`` runs rational elimination on the whole matrix.
    """
    ring = A.ring
    if isinstance(ring, PrimeField):
        pivots, rest = _eliminate_units(ring, A.columns())
        assert not rest
        return pivots
    if isinstance(ring, RationalField):
        if exact:
            pivots, rest = _eliminate_units(QQ, [{r: Fraction(v) for r, v in c.items()} for c in A.columns()])
            assert not rest
            return pivots
        cols = []
        for c in A.columns():
            den = 1
            for v in c.values():
                den = den * Fraction(v).denominator // _gcd(den, Fraction(v).denominator)
            cols.append({r: int(Fraction(v) * den) for r, v in c.items()})
        pivots, rest = _eliminate_units(ZZ, cols)
        if rest:
            fcols = [{r: Fraction(v) for r, v in c.items()} for c in rest.values()]
            p2, rest2 = _eliminate_units(QQ, fcols)
            assert not rest2
            pivots += p2
        return pivots
    if isinstance(ring, IntegerRing):
        return snf(A).rank
    if isinstance(ring, (PolyRing, LaurentRing)):
        return snf(A).rank
    raise UnsupportedRingError(f"rank is not supported over {ring}")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)
