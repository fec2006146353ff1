"""Homology of chain complexes: Betti numbers, torsion, bases, coordinates.

Over a PID the torsion of H_i is read from the non-unit invariant factors of
d_{i+1}; since C_i / ker d_i is free, these are exactly the torsion of
ker d_i / im d_{i+1}. Bases are opt-in. Over a field they come from a sparse
column reduction (the usual persistence-style "low" pivots); over Z and
F[t^+-1] from SNF transforms of d_i and of d_{i+1} written in kernel
coordinates.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable

from .algebra.rings import (
    IntegerRing,
    LaurentRing,
    Poly,
    PolyRing,
    PrimeField,
    RationalField,
    Ring,
    UnsupportedRingError,
)
from .algebra.snf import rank as field_rank
from .algebra.snf import snf
from .algebra.sparse import SparseMatrix
from .complexes import ChainComplex, label_to_json, scalar_to_json

Chain = dict  # sparse vector: basis index -> scalar


class NotACycleError(ValueError):
    pass


def is_field(ring: Ring) -> bool:
    return isinstance(ring, (RationalField, PrimeField))


@dataclass
class HomologyResult:
    """H_i of a complex over its scalar ring.

    Over F[t^+-1], ``betti`` is the free rank and ``torsion`` lists monic
    polynomials free of t-powers. ``basis`` (when requested) lists one
    representing cycle per free summand and per torsion factor.
    """

    degree: int
    ring: Ring
    betti: int
    torsion: list = field(default_factory=list)
    basis: list[Chain] | None = None
    basis_hash: str | None = None

    def torsion_counts(self) -> list[tuple[Any, int]]:
        """Torsion as ``[(factor, multiplicity)]`` in divisibility order."""
        out: list[list] = []
        for d in self.torsion:
            if out and out[-1][0] == d:
                out[-1][1] += 1
            else:
                out.append([d, 1])
        return [(d, m) for d, m in out]

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def rank_mod(self, p: int) -> int:
        """Number of integral torsion factors divisible by p."""
        if not isinstance(self.ring, IntegerRing):
            raise UnsupportedRingError("rank_mod needs integral homology")
        return sum(1 for d in self.torsion if d % p == 0)

    def describe(self) -> str:
        r = self.ring
        if isinstance(r, LaurentRing):
            free = f"{r.base.name}[t^±1]"
        else:
            free = r.name
        parts = []
        if self.betti:
            parts.append(free if self.betti == 1 else f"{free}^{self.betti}")
        for d, m in self.torsion_counts():
            if isinstance(r, IntegerRing):
                g = f"Z/{d}"
            else:
                g = f"{free}/({r.fmt(d)})"
            parts.append(g if m == 1 else f"({g})^{m}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# dimensions and invariant factors

def _check_ring(ring: Ring):
    if is_field(ring) or isinstance(ring, IntegerRing):
        return
    if isinstance(ring, LaurentRing) and ring.base.is_field:
        return
    raise UnsupportedRingError(f"homology over {ring} is not supported; restrict scalars first")


def _rank_and_factors(M: SparseMatrix, exact: bool) -> tuple[int, list]:
    if M.nrows == 0 or M.ncols == 0 or M.nnz == 0:
        return 0, []
    if is_field(M.ring):
        return field_rank(M, exact=exact), []
    res = snf(M)
    return res.rank, [d for d in res.invariant_factors if not M.ring.is_unit(d)]


def homology_all(C: ChainComplex, exact: bool = False, basis: bool = False) -> dict[int, HomologyResult]:
    """H_i for every degree of C; each boundary matrix is reduced once."""
    _check_ring(C.ring)
    degs = C.degrees
    if not degs:
        return {}
    info = {}
    for i in range(degs[0], degs[-1] + 2):
        info[i] = _rank_and_factors(C.boundary(i), exact)
    out = {}
    for i in degs:
        rk_in, _ = info[i]
        rk_out, tors = info[i + 1]
        out[i] = HomologyResult(i, C.ring, C.dim(i) - rk_in - rk_out, tors)
        if basis:
            _attach_basis(C, out[i])
    return out


def homology(C: ChainComplex, i: int, exact: bool = False, basis: bool = False) -> HomologyResult:
    """H_i(C). Degrees outside the complex give the zero group."""
    _check_ring(C.ring)
    if C.dim(i) == 0:
        return HomologyResult(i, C.ring, 0, [], [] if basis else None)
    rk_in, _ = _rank_and_factors(C.boundary(i), exact)
    rk_out, tors = _rank_and_factors(C.boundary(i + 1), exact)
    res = HomologyResult(i, C.ring, C.dim(i) - rk_in - rk_out, tors)
    if basis:
        _attach_basis(C, res)
    return res


def homology_over_laurent(C: ChainComplex, i: int, basis: bool = False) -> HomologyResult:
    if not (isinstance(C.ring, LaurentRing) and C.ring.base.is_field):
        raise UnsupportedRingError(f"expected a complex over F[t^±1], got {C.ring}")
    return homology(C, i, basis=basis)


def field_dims(C: ChainComplex, exact: bool = False) -> dict[int, int]:
    """dim H_i over a field for all i."""
    if not is_field(C.ring):
        raise UnsupportedRingError(f"field_dims needs a field, got {C.ring}")
    return {i: h.betti for i, h in homology_all(C, exact).items()}


# ---------------------------------------------------------------------------
# bases and coordinates

def _vec_add(ring: Ring, a: dict, b: dict, f) -> None:
    """a += f * b in place."""
    for k, v in b.items():
        w = ring.add(a[k], ring.mul(f, v)) if k in a else ring.mul(f, v)
        if ring.is_zero(w):
            a.pop(k, None)
        else:
            a[k] = w


def _reduce(ring: Ring, cols: list[dict], track: bool):
    """Left-to-right column reduction; returns (R, V, lows) with R = M V."""
    R = [dict(c) for c in cols]
    V = [{j: ring.one} for j in range(len(cols))] if track else None
    lows: dict[int, int] = {}
    for j, col in enumerate(R):
        while col:
            low = max(col)
            k = lows.get(low)
            if k is None:
                lows[low] = j
                break
            f = ring.neg(ring.mul(col[low], ring.inv(R[k][low])))
            _vec_add(ring, col, R[k], f)
            if track:
                _vec_add(ring, V[j], V[k], f)
    return R, V, lows


class HomologyBasis:
    """A basis of H_i with coordinate extraction for arbitrary cycles."""

    ring: Ring
    degree: int
    generators: list[Chain]
    orders: list  # None for free summands, else the torsion order

    def coordinates(self, z: Chain) -> list:
        raise NotImplementedError

    def is_boundary(self, z: Chain) -> bool:
        return all(self.ring.is_zero(c) for c in self.coordinates(z))

    @property
    def size(self) -> int:
        return len(self.generators)

    def hash(self, labels: list | None = None) -> str:
        """Stable digest of the generator chains (with labels when given)."""
        payload = []
        for g, o in zip(self.generators, self.orders):
            items = sorted(g.items())
            if labels is not None:
                items = [(label_to_json(labels[k]), scalar_to_json(self.ring, v)) for k, v in items]
            else:
                items = [(k, scalar_to_json(self.ring, v)) for k, v in items]
            payload.append([items, None if o is None else scalar_to_json(self.ring, o)])
        blob = json.dumps([self.ring.name, self.degree, payload], sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


class FieldHomologyBasis(HomologyBasis):
    def __init__(self, C: ChainComplex, i: int):
        ring = C.ring
        self.ring, self.degree = ring, i
        din = C.boundary(i)
        dout = C.boundary(i + 1)
        R_in, V_in, _ = _reduce(ring, din.columns(), True)
        R_out, _, lows_out = _reduce(ring, dout.columns(), False)
        self._kernel = {j: V_in[j] for j in range(len(R_in)) if not R_in[j]}
        self._R_out = R_out
        self._lows_out = lows_out
        self._gen_index = {}
        self.generators, self.orders = [], []
        for j in sorted(self._kernel):
            if j not in lows_out:
                self._gen_index[j] = len(self.generators)
                self.generators.append(dict(self._kernel[j]))
                self.orders.append(None)

    def coordinates(self, z: Chain) -> list:
        ring = self.ring
        z = {k: v for k, v in z.items() if not ring.is_zero(v)}
        coords = [ring.zero] * len(self.generators)
        while z:
            low = max(z)
            k = self._lows_out.get(low)
            if k is not None:
                col = self._R_out[k]
                _vec_add(ring, z, col, ring.neg(ring.mul(z[low], ring.inv(col[low]))))
                continue
            v = self._kernel.get(low)
            if v is None:
                raise NotACycleError(f"chain is not a cycle in degree {self.degree}")
            f = z[low]  # v[low] == 1
            coords[self._gen_index[low]] = f
            _vec_add(ring, z, v, ring.neg(f))
        return coords


class SNFHomologyBasis(HomologyBasis):
    def __init__(self, C: ChainComplex, i: int):
        ring = C.ring
        self.ring, self.degree = ring, i
        m = C.dim(i)
        din = C.boundary(i)
        if din.nnz:
            s_in = snf(din, transforms=True)
            r, V, Vinv = s_in.rank, s_in.V, s_in.V_inv
        else:
            r, V, Vinv = 0, SparseMatrix.identity(ring, m), SparseMatrix.identity(ring, m)
        self._r = r
        self._Vinv = Vinv
        k = m - r
        K = V.submatrix(range(m), range(r, m))
        dout = C.boundary(i + 1)
        M = Vinv @ dout
        if M.submatrix(range(r), range(M.ncols)).nnz:
            raise ArithmeticError("boundaries do not lie in the kernel; is d^2 = 0?")
        M = M.submatrix(range(r, m), range(M.ncols))
        if M.nnz:
            s_out = snf(M, transforms=True)
            r2, U, Uinv, diag = s_out.rank, s_out.U, s_out.U_inv, s_out.diagonal
        else:
            r2, U, Uinv, diag = 0, SparseMatrix.identity(ring, k), SparseMatrix.identity(ring, k), []
        self._U = U
        self._work = PolyRing(ring.base) if isinstance(ring, LaurentRing) else ring
        G = K @ Uinv
        self.generators, self.orders, self._slots = [], [], []
        for j in range(k):
            if j < r2:
                d = diag[j]
                if self._work.is_unit(d) or (isinstance(ring, LaurentRing) and ring.is_unit(d)):
                    continue
                order = ring.canonical(d)[0]
            else:
                order = None
            self.generators.append(dict(G.column(j)))
            self.orders.append(order)
            self._slots.append(j)

    def coordinates(self, z: Chain) -> list:
        ring = self.ring
        c = self._Vinv.apply(z)
        if any(k < self._r for k in c):
            raise NotACycleError(f"chain is not a cycle in degree {self.degree}")
        c = {k - self._r: v for k, v in c.items()}
        y = self._U.apply(c)
        out = []
        for j, o in zip(self._slots, self.orders):
            v = y.get(j, ring.zero)
            if o is not None:
                v = self._reduce_mod(v, o)
            out.append(v)
        return out

    def _reduce_mod(self, v, o):
        ring = self.ring
        if isinstance(ring, IntegerRing):
            return v % o
        if isinstance(ring, LaurentRing):
            # t is invertible modulo o, so clear negative powers first
            k = v.valuation() if not v.is_zero() else 0
            if k < 0:
                tinv = _t_inverse_mod(o)
                v = v.shift(-k)
                for _ in range(-k):
                    v = (v * tinv) % o
                return v
            return v % o
        return ring.divmod(v, o)[1]


def _t_inverse_mod(o: Poly) -> Poly:
    # o = c0 + t*g  =>  t * (-g/c0) = 1 mod o
    base = o.base
    c0 = o.coeff(0)
    g = Poly(base, o.c[1:])
    return g.scale(base.neg(base.inv(c0)))


def homology_basis(C: ChainComplex, i: int) -> HomologyBasis:
    _check_ring(C.ring)
    if is_field(C.ring):
        return FieldHomologyBasis(C, i)
    return SNFHomologyBasis(C, i)


def _attach_basis(C: ChainComplex, res: HomologyResult) -> None:
    B = homology_basis(C, res.degree)
    res.basis = B.generators
    res.basis_hash = B.hash(C.basis.get(res.degree))
    free = sum(1 for o in B.orders if o is None)
    if free != res.betti or len(B.orders) - free != len(res.torsion):
        raise ArithmeticError(f"basis size mismatch in degree {res.degree} of {C.name}")


def is_boundary(C: ChainComplex, i: int, z: Chain, basis: HomologyBasis | None = None) -> bool:
    """True iff the cycle z in C_i is a boundary."""
    basis = basis or homology_basis(C, i)
    return basis.is_boundary(z)


def is_cycle(C: ChainComplex, i: int, z: Chain) -> bool:
    return not C.boundary(i).apply(z)


# ---------------------------------------------------------------------------
# universal coefficients

@dataclass
class UCTReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def uct_check(integral: dict[int, HomologyResult],
              mod_p: dict[int, dict[int, int]],
              rational: dict[int, int] | None = None) -> UCTReport:
    """Check dim_{F_p} H_i = b_i + t_i(p) + t_{i-1}(p) and b_i = dim_Q H_i.

    ``integral`` maps degree to the Z-result; ``mod_p`` maps a prime to
    ``{degree: dim}``; ``rational`` is ``{degree: dim}``.
    """
    rep = UCTReport()
    for p, dims in mod_p.items():
        for i, d in dims.items():
            h = integral.get(i)
            b = h.betti if h else 0
            t_i = h.rank_mod(p) if h else 0
            t_prev = integral[i - 1].rank_mod(p) if i - 1 in integral else 0
            rep.checked += 1
            if d != b + t_i + t_prev:
                rep.violations.append(
                    f"p={p} degree {i}: dim {d} != betti {b} + t_i {t_i} + t_(i-1) {t_prev}")
    if rational is not None:
        for i, d in rational.items():
            b = integral[i].betti if i in integral else 0
            rep.checked += 1
            if d != b:
                rep.violations.append(f"Q degree {i}: dim {d} != integral betti {b}")
    return rep
