"""Chain maps between Artin complexes, mapping cones and induced maps.

A ``ChainMap`` of degree d stores ``f[i]: C_i(source) -> C_{i+d}(target)``
and is a chain map when ``f[i-1] @ d_i == d_{i+d} @ f[i]`` for every i.

Mapping cones use the convention

    Cone(f)_k = S_{k-1} (+) T_{k+d},    D(a, b) = (-da, f(a) + db),

so that H_*(Cone) sits in the long exact sequence of f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable

from .algebra.rings import Poly, Ring, ZZ
from .algebra.sparse import SparseMatrix, scalar_block
from .complexes import (
    CellString,
    ChainComplex,
    CoefficientSpec,
    build_A,
    build_B,
    label_to_json,
    scalar_to_json,
)
from .homology import HomologyBasis, homology_basis


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    degree: int
    f: dict[int, SparseMatrix]
    name: str = ""

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise TypeError(f"{self.name}: source ring {self.source.ring} != target ring {self.target.ring}")
        for i, M in self.f.items():
            want = (self.target.dim(i + self.degree), self.source.dim(i))
            if M.shape != want:
                raise ValueError(f"{self.name}: f[{i}] has shape {M.shape}, expected {want}")

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def matrix(self, i: int) -> SparseMatrix:
        M = self.f.get(i)
        if M is None:
            return SparseMatrix.zero(self.ring, self.target.dim(i + self.degree), self.source.dim(i))
        return M

    def apply(self, i: int, z: dict) -> dict:
        return self.matrix(i).apply(z)


@dataclass
class ChainMapCheck:
    ok: bool
    degree: int | None = None
    cell: Hashable | None = None

    def __bool__(self):
        return self.ok


def verify_chain_map(f: ChainMap) -> ChainMapCheck:
    """Check f d = d f degree by degree; report the first failing source cell."""
    S, T, d = f.source, f.target, f.degree
    if S.ring != T.ring:
        raise TypeError("chain map between complexes over different rings")
    for i in S.degrees:
        lhs = f.matrix(i - 1) @ S.boundary(i)
        rhs = T.boundary(i + d) @ f.matrix(i)
        if lhs != rhs:
            for j in range(lhs.ncols):
                if lhs.column(j) != rhs.column(j):
                    return ChainMapCheck(False, i, S.basis[i][j])
    return ChainMapCheck(True)


def compose(g: ChainMap, f: ChainMap, name: str = "") -> ChainMap:
    """g after f."""
    if f.target is not g.source and f.target.key() != g.source.key():
        raise ValueError("composed maps do not match")
    mats = {i: g.matrix(i + f.degree) @ f.matrix(i) for i in f.source.degrees}
    return ChainMap(f.source, g.target, f.degree + g.degree, mats, name or f"{g.name}*{f.name}")


def zero_map(S: ChainComplex, T: ChainComplex, degree: int = 0) -> ChainMap:
    return ChainMap(S, T, degree, {}, "zero")


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, 0, {i: SparseMatrix.identity(C.ring, C.dim(i)) for i in C.degrees}, "id")


def map_from_cells(S: ChainComplex, T: ChainComplex, degree: int,
                   image: Callable[[Hashable], dict[Hashable, Any]], name: str) -> ChainMap:
    """Assemble a chain map from the image of each basis label."""
    mats = {}
    for i in S.degrees:
        cols = []
        for lab in S.basis[i]:
            cols.append({T.index(i + degree, k): v for k, v in image(lab).items()})
        mats[i] = SparseMatrix(S.ring, T.dim(i + degree), S.dim(i), cols)
    return ChainMap(S, T, degree, mats, name)


# ---------------------------------------------------------------------------
# maps between Artin complexes

def _suffix_images(coeff: CoefficientSpec, p: Poly) -> dict[str, dict[str, Any]]:
    """Columns of multiplication by p on the module basis suffixes."""
    blk = coeff.block(p)
    sfx = coeff.basis_suffixes()
    return {s: {sfx[a]: blk[a][b] for a in range(len(sfx))} for b, s in enumerate(sfx)}


def st_A(n: int, coeff: CoefficientSpec | None = None) -> ChainMap:
    """Stabilization A(n) -> A(n+1): x |-> x0."""
    coeff = coeff or CoefficientSpec()
    S, T = build_A(n, coeff), build_A(n + 1, coeff)
    one = coeff.base.one
    return map_from_cells(S, T, 0, lambda lab: {(CellString(lab[0].bits + "0"), lab[1]): one}, f"st_A({n})")


def st_B(n: int, coeff: CoefficientSpec | None = None) -> ChainMap:
    """Stabilization B(n) -> B(n+1): x |-> x0, identity on coefficients."""
    S = build_B(n, coeff)
    T = build_B(n + 1, S.coeff)
    one = S.ring.one
    return map_from_cells(S, T, 0, lambda lab: {(CellString(lab[0].bits + "0", True), lab[1]): one},
                          f"st_B({n})")


def juxtaposition(x: dict[str, Any], y: dict[str, Any], ring: Ring = ZZ) -> dict[str, Any]:
    """Bilinear product on A-chains given as ``{bits: scalar}``: (A, B) |-> A0B."""
    out: dict[str, Any] = {}
    for a, u in x.items():
        for b, v in y.items():
            k = a + "0" + b
            w = ring.mul(u, v)
            out[k] = ring.add(out[k], w) if k in out else w
    return {k: v for k, v in out.items() if not ring.is_zero(v)}


def tau(n: int, base: Ring = ZZ) -> ChainMap:
    """B(n; R[t]/(1+t)) -> B(n; R[t]/(1-t^2)), multiplication by (1-t) on coefficients."""
    S = build_B(n, CoefficientSpec(base, "mod1+t"))
    T = build_B(n, CoefficientSpec(base, "mod1-t2"))
    one, m1 = base.one, base.neg(base.one)
    return map_from_cells(S, T, 0, lambda lab: {(lab[0], "1"): one, (lab[0], "t"): m1}, f"tau({n})")


SECTION_UNITS = {"1": [1], "1+t": [1, 1], "1-t": [1, -1]}


def section_model(n: int, base: Ring = ZZ, u: str = "1") -> ChainMap:
    """A(n-1; R) -> B(n; R[t]/(1-t^2)), A |-> 0A (x) u with the first slot marked."""
    if u not in SECTION_UNITS:
        raise ValueError(f"section coefficient must be one of {sorted(SECTION_UNITS)}, got {u!r}")
    S = build_A(n - 1, CoefficientSpec(base, "trivial"))
    coeff = CoefficientSpec(base, "mod1-t2")
    T = build_B(n, coeff)
    col = _suffix_images(coeff, Poly(ZZ, SECTION_UNITS[u]).change_base(base))["1"]
    return map_from_cells(S, T, 0, lambda lab: {(CellString("0" + lab[0].bits, True), s): v
                                                for s, v in col.items()}, f"s({n};u={u})")


# ---------------------------------------------------------------------------
# candidate chain models for mu_*(- (x) [S^1])

@dataclass(frozen=True)
class MuCandidate:
    """A degree +1 map B(n-1; R[t]/(1+t)) -> B(n; R[t]/(1+t)) on cells.

    ``insert`` says where the new 1-bit goes: "before-pole" makes it the new
    marked slot (c |-> 1c); "after-pole" puts it right after the marked slot.
    ``weight`` is an integer polynomial in t, read in R[t]/(1+t). The sign
    (-1)^|c| is the Koszul sign of moving the degree-one class past c.
    """

    name: str
    version: int
    insert: str
    weight: tuple[int, ...] = (1,)
    koszul: bool = True
    description: str = ""

    @property
    def key(self) -> str:
        return f"{self.name}/v{self.version}"

    def image(self, bits: str) -> str:
        if self.insert == "before-pole":
            return "1" + bits
        if self.insert == "after-pole":
            return bits[0] + "1" + bits[1:]
        raise ValueError(f"unknown insertion rule {self.insert!r}")


MU_CANDIDATES: dict[str, MuCandidate] = {}


def register_candidate(c: MuCandidate) -> MuCandidate:
    MU_CANDIDATES[c.name] = c
    return c


register_candidate(MuCandidate("prepend-pole", 1, "before-pole", (1,),
                               description="c |-> (-1)^|c| 1c, new marked slot in front"))
register_candidate(MuCandidate("prepend-pole-w2", 1, "before-pole", (2,),
                               description="twice prepend-pole"))
register_candidate(MuCandidate("prepend-pole-w1pt", 1, "before-pole", (1, 1),
                               description="prepend-pole weighted by (1+t); zero mod (1+t)"))
register_candidate(MuCandidate("insert-after-pole", 1, "after-pole", (1,),
                               description="c |-> (-1)^|c| c_0 1 c_rest"))
register_candidate(MuCandidate("insert-after-pole-w2", 1, "after-pole", (2,),
                               description="twice insert-after-pole"))

DEFAULT_CANDIDATE = "prepend-pole"


def get_candidate(name: str) -> MuCandidate:
    try:
        return MU_CANDIDATES[name]
    except KeyError:
        raise KeyError(f"unknown mu candidate {name!r}; registered: {sorted(MU_CANDIDATES)}") from None


def mu_model(n: int, base: Ring = ZZ, candidate: str = DEFAULT_CANDIDATE) -> ChainMap:
    """Degree +1 chain model B(n-1; R[t]/(1+t)) -> B(n; R[t]/(1+t))."""
    cand = get_candidate(candidate)
    coeff = CoefficientSpec(base, "mod1+t")
    S, T = build_B(n - 1, coeff), build_B(n, coeff)
    w = coeff.block(Poly(ZZ, list(cand.weight)))[0][0]

    def image(lab):
        c = lab[0]
        v = base.neg(w) if cand.koszul and c.degree % 2 else w
        return {(CellString(cand.image(c.bits), True), "1"): v}

    return map_from_cells(S, T, 1, image, f"mu({n};{cand.key})")


# ---------------------------------------------------------------------------
# mapping cones

def cone(f: ChainMap, name: str = "") -> ChainComplex:
    """Cone(f)_k = S_{k-1} (+) T_{k+d} with D(a, b) = (-da, f(a) + db)."""
    S, T, d = f.source, f.target, f.degree
    ring = S.ring
    degs = set(k + 1 for k in S.degrees) | set(k - d for k in T.degrees)
    basis = {k: [("s", a) for a in S.basis.get(k - 1, [])] + [("t", b) for b in T.basis.get(k + d, [])]
             for k in sorted(degs)}
    D = {}
    for k in sorted(degs):
        if k - 1 not in basis:
            continue
        top = [[-S.boundary(k - 1), SparseMatrix.zero(ring, S.dim(k - 2), T.dim(k + d))],
               [f.matrix(k - 1), T.boundary(k + d)]]
        D[k] = SparseMatrix.block(top)
    return ChainComplex(ring, basis, D, name=name or f"Cone({f.name})")


def cone_inclusion(f: ChainMap, C: ChainComplex | None = None) -> ChainMap:
    """T -> Cone(f), b |-> (0, b); a chain map of degree -d."""
    C = C or cone(f)
    one = f.ring.one
    return map_from_cells(f.target, C, -f.degree, lambda lab: {("t", lab): one}, f"J({f.name})")


def cone_projection(f: ChainMap, C: ChainComplex | None = None) -> ChainMap:
    """Cone(f) -> S, (a, b) |-> a; a chain map of degree -1 up to the sign on d."""
    C = C or cone(f)
    S = f.source
    one = f.ring.one
    mats = {}
    for k in C.degrees:
        cols = []
        for lab in C.basis[k]:
            cols.append({S.index(k - 1, lab[1]): one} if lab[0] == "s" else {})
        mats[k] = SparseMatrix(f.ring, S.dim(k - 1), C.dim(k), cols)
    return ChainMap(C, S, -1, mats, f"P({f.name})")


# ---------------------------------------------------------------------------
# induced maps

@dataclass
class InducedMap:
    """Matrix of f_* : H_i(S) -> H_{i+d}(T); rows index target generators."""

    matrix: list[list[Any]]
    source_orders: list
    target_orders: list
    source_hash: str
    target_hash: str

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_orders), len(self.source_orders)


def induced_on_homology(f: ChainMap, i: int, source_basis: HomologyBasis | None = None,
                        target_basis: HomologyBasis | None = None) -> InducedMap:
    sb = source_basis or homology_basis(f.source, i)
    tb = target_basis or homology_basis(f.target, i + f.degree)
    if sb.degree != i or tb.degree != i + f.degree:
        raise ValueError("homology bases are in the wrong degrees")
    cols = [tb.coordinates(f.apply(i, g)) for g in sb.generators]
    rows = [[cols[j][r] for j in range(len(cols))] for r in range(tb.size)]
    return InducedMap(rows, list(sb.orders), list(tb.orders),
                      sb.hash(f.source.basis.get(i)), tb.hash(f.target.basis.get(i + f.degree)))


def map_to_triplets(f: ChainMap, candidate: str | None = None) -> dict:
    trip = []
    for i in sorted(f.f):
        M = f.f[i]
        for j in range(M.ncols):
            col = M.column(j)
            for r in sorted(col):
                trip.append([i, label_to_json(f.target.basis[i + f.degree][r]),
                             label_to_json(f.source.basis[i][j]), scalar_to_json(f.ring, col[r])])
    return {
        "format": "artin-homology/map-triplets-v1",
        "name": f.name,
        "source": f.source.key(),
        "target": f.target.key(),
        "degree": f.degree,
        "candidate": candidate,
        "entries": trip,
    }
