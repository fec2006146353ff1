"""Column-stored sparse matrices over an exact ring."""

from __future__ import annotations

from typing import Any, Callable, Iterable, Mapping

from .rings import Poly, QuotientRing, Ring, UnsupportedRingError


class SparseMatrix:
    """An ``nrows x ncols`` matrix; column j is a dict ``row -> nonzero scalar``.

    Instances are treated as immutable once built.
    """

    __slots__ = ("ring", "nrows", "ncols", "_cols")

    def __init__(self, ring: Ring, nrows: int, ncols: int, cols: list[dict[int, Any]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        elif len(cols) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(cols)}")
        is_zero = ring.is_zero
        clean = []
        for col in cols:
            d = {}
            for r, v in col.items():
                if not 0 <= r < nrows:
                    raise IndexError(f"row {r} out of range for {nrows} rows")
                if not is_zero(v):
                    d[r] = v
            clean.append(d)
        self._cols = clean

    @classmethod
    def _raw(cls, ring, nrows, ncols, cols):
        m = cls.__new__(cls)
        m.ring, m.nrows, m.ncols, m._cols = ring, nrows, ncols, cols
        return m

    @classmethod
    def from_entries(cls, ring: Ring, nrows: int, ncols: int,
                     entries: Mapping[tuple[int, int], Any]) -> SparseMatrix:
        cols: list[dict[int, Any]] = [{} for _ in range(ncols)]
        for (r, c), v in entries.items():
            if not 0 <= c < ncols:
                raise IndexError(f"column {c} out of range for {ncols} columns")
            cols[c][r] = v
        return cls(ring, nrows, ncols, cols)

    @classmethod
    def from_dense(cls, ring: Ring, rows: list[list[Any]], ncols: int | None = None) -> SparseMatrix:
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: list[dict[int, Any]] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                cols[j][i] = v
        return cls(ring, nrows, ncols, cols)

    @classmethod
    def zero(cls, ring: Ring, nrows: int, ncols: int) -> SparseMatrix:
        return cls._raw(ring, nrows, ncols, [{} for _ in range(ncols)])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> SparseMatrix:
        return cls._raw(ring, n, n, [{i: ring.one} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def column(self, j: int) -> dict[int, Any]:
        return dict(self._cols[j])

    def columns(self) -> list[dict[int, Any]]:
        return [dict(c) for c in self._cols]

    def entries(self) -> dict[tuple[int, int], Any]:
        return {(r, j): v for j, col in enumerate(self._cols) for r, v in col.items()}

    def get(self, r: int, c: int):
        return self._cols[c].get(r, self.ring.zero)

    def to_dense(self) -> list[list[Any]]:
        out = [[self.ring.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for r, v in col.items():
                out[r][j] = v
        return out

    def is_zero(self) -> bool:
        return all(not c for c in self._cols)

    def apply(self, vec: Mapping[int, Any]) -> dict[int, Any]:
        """Matrix times a sparse column vector ``{index: scalar}``."""
        ring = self.ring
        out: dict[int, Any] = {}
        for j, s in vec.items():
            for r, v in self._cols[j].items():
                out[r] = ring.add(out.get(r, ring.zero), ring.mul(v, s)) if r in out else ring.mul(v, s)
        return {r: v for r, v in out.items() if not ring.is_zero(v)}

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.ring != other.ring:
            raise UnsupportedRingError(f"ring mismatch {self.ring} vs {other.ring}")
        cols = [self.apply(c) for c in other._cols]
        return SparseMatrix._raw(self.ring, self.nrows, other.ncols, cols)

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        ring = self.ring
        cols = []
        for a, b in zip(self._cols, other._cols):
            d = dict(a)
            for r, v in b.items():
                d[r] = ring.add(d[r], v) if r in d else v
            cols.append({r: v for r, v in d.items() if not ring.is_zero(v)})
        return SparseMatrix._raw(ring, self.nrows, self.ncols, cols)

    def __neg__(self) -> SparseMatrix:
        ring = self.ring
        return SparseMatrix._raw(ring, self.nrows, self.ncols,
                                 [{r: ring.neg(v) for r, v in c.items()} for c in self._cols])

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        return self + (-other)

    def scale(self, s) -> SparseMatrix:
        ring = self.ring
        return SparseMatrix(ring, self.nrows, self.ncols,
                            [{r: ring.mul(s, v) for r, v in c.items()} for c in self._cols])

    def transpose(self) -> SparseMatrix:
        cols: list[dict[int, Any]] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for r, v in col.items():
                cols[r][j] = v
        return SparseMatrix._raw(self.ring, self.ncols, self.nrows, cols)

    def map(self, fn: Callable[[Any], Any], ring: Ring) -> SparseMatrix:
        """Apply a scalar map entrywise, landing in ``ring``."""
        return SparseMatrix(ring, self.nrows, self.ncols,
                            [{r: fn(v) for r, v in c.items()} for c in self._cols])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> SparseMatrix:
        rows = list(rows)
        rindex = {r: i for i, r in enumerate(rows)}
        out = []
        for j in cols:
            out.append({rindex[r]: v for r, v in self._cols[j].items() if r in rindex})
        return SparseMatrix._raw(self.ring, len(rows), len(out), out)

    @staticmethod
    def hstack(blocks: list[SparseMatrix]) -> SparseMatrix:
        ring = blocks[0].ring
        nrows = blocks[0].nrows
        cols: list[dict[int, Any]] = []
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError("hstack: row counts differ")
            cols.extend(dict(c) for c in b._cols)
        return SparseMatrix._raw(ring, nrows, len(cols), cols)

    @staticmethod
    def block(grid: list[list[SparseMatrix]]) -> SparseMatrix:
        """Assemble a block matrix; blocks in one row share nrows, in one column share ncols."""
        ring = grid[0][0].ring
        row_heights = [row[0].nrows for row in grid]
        col_widths = [b.ncols for b in grid[0]]
        offsets = [sum(row_heights[:k]) for k in range(len(row_heights))]
        cols: list[dict[int, Any]] = [{} for _ in range(sum(col_widths))]
        c0 = 0
        for bj, w in enumerate(col_widths):
            for bi, row in enumerate(grid):
                b = row[bj]
                if b.nrows != row_heights[bi] or b.ncols != w:
                    raise ValueError("block: inconsistent block shapes")
                off = offsets[bi]
                for j, col in enumerate(b._cols):
                    target = cols[c0 + j]
                    for r, v in col.items():
                        target[off + r] = v
            c0 += w
        return SparseMatrix._raw(ring, sum(row_heights), len(cols), cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.ring == other.ring
                and self._cols == other._cols)

    def __repr__(self):
        return f"SparseMatrix({self.ring}, {self.nrows}x{self.ncols}, nnz={self.nnz})"


def scalar_block(ring: QuotientRing, a: Poly) -> list[list[Any]]:
    """Matrix of multiplication by ``a`` on the basis {1, t} (or {1}) of the quotient."""
    a = ring.reduce(a)
    if ring.rank == 1:
        return [[a.coeff(0)]]
    x, y = a.coeff(0), a.coeff(1)
    # 1 -> x + y t, t -> y + x t   (t^2 = 1)
    return [[x, y], [y, x]]


def restrict_scalars(A: SparseMatrix) -> SparseMatrix:
    """View a matrix over R[t]/(m) as a matrix over R.

    Basis element k of the free module becomes the pair (2k, 2k+1) standing for
    (e_k, t e_k); for the rank-one moduli 1+t and 1-t the size is unchanged.
    """
    ring = A.ring
    if not isinstance(ring, QuotientRing):
        raise UnsupportedRingError(f"restrict_scalars needs a quotient ring, got {ring}")
    k = ring.rank
    base = ring.base
    cols: list[dict[int, Any]] = [{} for _ in range(A.ncols * k)]
    for j, col in enumerate(A._cols):
        for r, v in col.items():
            blk = scalar_block(ring, v)
            for a in range(k):
                for b in range(k):
                    if not base.is_zero(blk[a][b]):
                        cols[j * k + b][r * k + a] = blk[a][b]
    return SparseMatrix(base, A.nrows * k, A.ncols * k, cols)
