"""Algebraic chain complexes for Artin groups of type A and B.

Generators are 0/1 strings of length n; the boundary of a block of ones is
given by q-binomials at q = -1 and extends to arbitrary strings by the
Leibniz rule at a separating zero:

    d(A0B) = (dA)0B + (-1)^|A| A0(dB).

Type-B strings carry a marked first slot whose block picks up the primed
binomials, i.e. the local system where the first standard generator acts by
-t. Strings are stored with trailing zeros kept; dropping the final zero is a
display convention for monomials only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Hashable, Iterable

from .algebra.rings import (
    ZZ,
    QQ,
    IntegerRing,
    LaurentRing,
    Poly,
    PrimeField,
    QuotientRing,
    RationalField,
    Ring,
    UnsupportedRingError,
    parse_ring,
)
from .algebra.sparse import SparseMatrix, scalar_block
from .qcalc import gauss_binomial, primed_binomial, specialize

MODULES = ("trivial", "laurent", "mod1+t", "mod1-t", "mod1-t2")
_OVERLINE = "̅"


class UnsupportedCoefficientsError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CellString:
    """A generator of an Artin complex.

    ``bits`` is a string over {0, 1}; ``marked`` is true for type-B cells,
    whose first slot is the special one.
    """

    bits: str
    marked: bool = False

    def __post_init__(self):
        if set(self.bits) - {"0", "1"}:
            raise ValueError(f"cell bits must be 0/1, got {self.bits!r}")
        if self.marked and not self.bits:
            raise ValueError("a marked cell needs at least one slot")

    @property
    def degree(self) -> int:
        return self.bits.count("1")

    def __len__(self):
        return len(self.bits)

    @property
    def code(self) -> str:
        """ASCII form used in serialized output: ``b:1101`` or ``a:1101``."""
        return ("b:" if self.marked else "a:") + self.bits

    @classmethod
    def from_code(cls, code: str) -> CellString:
        tag, _, bits = code.partition(":")
        if tag not in ("a", "b"):
            raise ValueError(f"bad cell code {code!r}")
        return cls(bits, tag == "b")

    def monomial(self) -> str:
        """Display form with the final 0 dropped, as in the monomial notation."""
        s = self.bits[:-1] if self.bits.endswith("0") and len(self.bits) > 1 else self.bits
        return self._fmt(s)

    def _fmt(self, s: str) -> str:
        if self.marked and s:
            return s[0] + _OVERLINE + s[1:]
        return s

    def __str__(self):
        return self._fmt(self.bits)


# ---------------------------------------------------------------------------
# boundary formulas on raw strings

@lru_cache(maxsize=None)
def _gauss_at_minus_one(m: int, i: int) -> int:
    return specialize(gauss_binomial(m, i)).coeff(0)


@lru_cache(maxsize=None)
def _primed_at_minus_one(m: int, i: int) -> Poly:
    return specialize(primed_binomial(m, i))


@lru_cache(maxsize=None)
def boundary_A(s: str) -> dict[str, int]:
    """Boundary of a type-A generator, as ``{string: integer coefficient}``."""
    k = s.find("0")
    if k < 0:
        l = len(s)
        out = {}
        for h in range(l):
            c = (-1) ** h * _gauss_at_minus_one(l + 1, h + 1)
            if c:
                out["1" * h + "0" + "1" * (l - h - 1)] = c
        return out
    a, b = s[:k], s[k + 1:]
    out: dict[str, int] = {}
    for x, c in boundary_A(a).items():
        key = x + "0" + b
        out[key] = out.get(key, 0) + c
    sign = -1 if a.count("1") % 2 else 1
    for x, c in boundary_A(b).items():
        key = a + "0" + x
        out[key] = out.get(key, 0) + sign * c
    return {x: c for x, c in out.items() if c}


@lru_cache(maxsize=None)
def boundary_B(s: str) -> dict[str, Poly]:
    """Boundary of a type-B generator (first slot marked), coefficients in Z[t].

    The image is over Z[t^+-1]; only nonnegative powers occur.
    """
    if not s:
        raise ValueError("type-B strings have length >= 1")
    if s[0] == "0":
        return {"0" + x: Poly(ZZ, [c]) for x, c in boundary_A(s[1:]).items()}
    k = s.find("0")
    if k < 0:
        l = len(s)
        out = {"0" + "1" * (l - 1): _primed_at_minus_one(l, 0)}
        for h in range(1, l):
            c = _primed_at_minus_one(l, h).scale((-1) ** h)
            if not c.is_zero():
                out["1" * h + "0" + "1" * (l - h - 1)] = c
        return {x: c for x, c in out.items() if not c.is_zero()}
    a, b = s[:k], s[k + 1:]
    out: dict[str, Poly] = {}
    for x, c in boundary_B(a).items():
        key = x + "0" + b
        out[key] = out[key] + c if key in out else c
    sign = -1 if a.count("1") % 2 else 1
    for x, c in boundary_A(b).items():
        key = a + "0" + x
        term = Poly(ZZ, [sign * c])
        out[key] = out[key] + term if key in out else term
    return {x: c for x, c in out.items() if not c.is_zero()}


# ---------------------------------------------------------------------------
# coefficient modules

@dataclass(frozen=True)
class CoefficientSpec:
    """Base ring (Z, Q or F_p) plus the module on which G_{B_n} acts.

    The first standard generator acts by -t, all others by 1. ``mod1+t`` and
    ``mod1-t`` are the rank-one quotients (t = -1, resp. t = 1); ``mod1-t2``
    is free of rank two over the base on {1, t}.
    """

    base: Ring = ZZ
    module: str = "trivial"

    def __post_init__(self):
        if self.module not in MODULES:
            raise UnsupportedCoefficientsError(
                f"unknown coefficient module {self.module!r}; expected one of {MODULES}")
        if not isinstance(self.base, (IntegerRing, RationalField, PrimeField)):
            raise UnsupportedCoefficientsError(f"base ring must be Z, Q or F_p, got {self.base}")

    @classmethod
    def parse(cls, module: str, ring: str = "Z") -> CoefficientSpec:
        return cls(parse_ring(ring), module)

    @property
    def scalar_ring(self) -> Ring:
        """The ring the boundary matrices live over."""
        if self.module == "laurent":
            return LaurentRing(self.base)
        return self.base

    @property
    def rank(self) -> int:
        """Rank of one summand M.x over the matrix ring."""
        return 2 if self.module == "mod1-t2" else 1

    @property
    def quotient(self) -> QuotientRing | None:
        return {
            "mod1+t": QuotientRing(self.base, "1+t"),
            "mod1-t": QuotientRing(self.base, "1-t"),
            "mod1-t2": QuotientRing(self.base, "1-t^2"),
        }.get(self.module)

    def basis_suffixes(self) -> tuple[str, ...]:
        return ("1", "t") if self.module == "mod1-t2" else ("1",)

    def block(self, p: Poly) -> list[list[Any]]:
        """Matrix over ``scalar_ring`` of multiplication by an integer polynomial p(t)."""
        base = self.base
        if self.module == "trivial":
            if p.degree > 0:
                raise UnsupportedCoefficientsError("t-dependent coefficient in a trivial-module complex")
            return [[base.from_int(p.coeff(0))]]
        if self.module == "laurent":
            return [[p.change_base(base) if base != ZZ else p]]
        return scalar_block(self.quotient, p.change_base(base) if base != ZZ else p)

    def __str__(self):
        return f"{self.module}/{self.base.name}"


# ---------------------------------------------------------------------------
# chain complexes

@dataclass
class ChainComplex:
    """Graded free modules with sparse boundaries ``d[i]: C_i -> C_{i-1}``.

    ``basis[i]`` lists hashable labels for the basis of C_i. For the Artin
    complexes the labels are ``(CellString, suffix)`` pairs with suffix "1" or
    "t"; for derived complexes (cones) they are tagged tuples.
    """

    ring: Ring
    basis: dict[int, list[Hashable]]
    d: dict[int, SparseMatrix]
    family: str | None = None
    n: int | None = None
    coeff: CoefficientSpec | None = None
    name: str = ""
    _index: dict[int, dict[Hashable, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for i, M in self.d.items():
            if M.ncols != self.dim(i) or M.nrows != self.dim(i - 1):
                raise ValueError(
                    f"{self.name}: d[{i}] has shape {M.shape}, expected ({self.dim(i - 1)}, {self.dim(i)})")

    @property
    def degrees(self) -> list[int]:
        return sorted(k for k, v in self.basis.items() if v)

    def dim(self, i: int) -> int:
        return len(self.basis.get(i, ()))

    def boundary(self, i: int) -> SparseMatrix:
        M = self.d.get(i)
        if M is None:
            return SparseMatrix.zero(self.ring, self.dim(i - 1), self.dim(i))
        return M

    def index(self, i: int, label: Hashable) -> int:
        idx = self._index.get(i)
        if idx is None:
            idx = {lab: k for k, lab in enumerate(self.basis.get(i, ()))}
            self._index[i] = idx
        return idx[label]

    def total_dim(self) -> int:
        return sum(len(v) for v in self.basis.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * len(v) for i, v in self.basis.items())

    def check_d2(self) -> list[int]:
        """Degrees i where d[i-1] @ d[i] is nonzero (empty list when d^2 = 0)."""
        bad = []
        for i in self.degrees:
            if self.dim(i - 2) == 0 and self.dim(i - 1) == 0:
                continue
            if not (self.boundary(i - 1) @ self.boundary(i)).is_zero():
                bad.append(i)
        return bad

    def chain(self, i: int, terms: dict[Hashable, Any]) -> dict[int, Any]:
        """Sparse vector in C_i from ``{label: scalar}``."""
        return {self.index(i, lab): v for lab, v in terms.items() if not self.ring.is_zero(v)}

    def key(self) -> str:
        if self.family is None:
            return self.name or "complex"
        return f"{self.family}{self.n}:{self.coeff}"


def cells(n: int, k: int, marked: bool = False) -> list[CellString]:
    """All strings of length n with k ones, in lexicographic order."""
    out = []
    for ones in itertools.combinations(range(n), k):
        bits = ["0"] * n
        for j in ones:
            bits[j] = "1"
        out.append("".join(bits))
    out.sort()
    return [CellString(b, marked) for b in out]


@lru_cache(maxsize=64)
def _build(n: int, coeff: CoefficientSpec, marked: bool) -> ChainComplex:
    # built complexes are shared; callers must not mutate them
    boundary = boundary_B if marked else boundary_A
    ring = coeff.scalar_ring
    sfx = coeff.basis_suffixes()
    r = len(sfx)
    by_deg = {k: cells(n, k, marked) for k in range(n + 1)}
    basis = {k: [(c, s) for c in cs for s in sfx] for k, cs in by_deg.items()}
    d = {}
    for k in range(1, n + 1):
        row_of = {c.bits: i for i, c in enumerate(by_deg[k - 1])}
        cols: list[dict[int, Any]] = [{} for _ in range(len(basis[k]))]
        for j, c in enumerate(by_deg[k]):
            for x, p in boundary(c.bits).items():
                if not isinstance(p, Poly):
                    p = Poly(ZZ, [p])
                blk = coeff.block(p)
                i = row_of[x]
                for a in range(r):
                    for b in range(r):
                        v = blk[a][b]
                        if not ring.is_zero(v):
                            cols[j * r + b][i * r + a] = v
        d[k] = SparseMatrix(ring, len(basis[k - 1]), len(basis[k]), cols)
    fam = "B" if marked else "A"
    return ChainComplex(ring, basis, d, family=fam, n=n, coeff=coeff, name=f"C({fam}{n}; {coeff})")


def build_A(n: int, coeff: CoefficientSpec | None = None) -> ChainComplex:
    """The complex C_*(G_{A_n}, M) on strings of length n.

    Strings of length n model the braid group on n+1 strands. ``n = 0`` gives
    the one-cell complex of the trivial group Br_1.
    """
    coeff = coeff or CoefficientSpec()
    if coeff.module != "trivial":
        raise UnsupportedCoefficientsError("type-A complexes take trivial coefficients only")
    if n < 0:
        raise ValueError(f"build_A needs n >= 0, got {n}")
    return _build(n, coeff, False)


def build_B(n: int, coeff: CoefficientSpec | None = None) -> ChainComplex:
    """The complex C_*(G_{B_n}, M) on marked strings of length n."""
    coeff = coeff or CoefficientSpec(ZZ, "laurent")
    if n < 1:
        raise ValueError(f"build_B needs n >= 1, got {n}")
    if coeff.module == "trivial":
        # trivial action of the first generator means -t = 1
        coeff = CoefficientSpec(coeff.base, "mod1+t")
    return _build(n, coeff, True)


def braid_complex(strands: int, base: Ring = ZZ) -> ChainComplex:
    """Complex for Br(strands) = G_{A_{strands-1}} with trivial coefficients."""
    if strands < 1:
        raise ValueError(f"braid groups need at least one strand, got {strands}")
    return build_A(strands - 1, CoefficientSpec(base, "trivial"))


# ---------------------------------------------------------------------------
# sparse triplet format

def scalar_to_json(ring: Ring, v) -> Any:
    if isinstance(v, Poly):
        return [scalar_to_json(v.base, c) for c in v.c]
    if isinstance(v, Fraction):
        return str(v)
    return str(int(v))


def scalar_from_json(ring: Ring, x) -> Any:
    if isinstance(ring, LaurentRing):
        return Poly(ring.base, [scalar_from_json(ring.base, c) for c in x])
    if isinstance(ring, RationalField):
        return Fraction(x)
    return ring.from_int(int(x))


def label_to_json(label) -> Any:
    if isinstance(label, tuple) and len(label) == 2 and isinstance(label[0], CellString):
        c, s = label
        return c.code if s == "1" else f"{c.code}@{s}"
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    if isinstance(label, CellString):
        return label.code
    return label


def label_from_json(x) -> Any:
    if isinstance(x, str) and (x.startswith("a:") or x.startswith("b:")):
        code, _, s = x.partition("@")
        return (CellString.from_code(code), s or "1")
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


def to_triplets(C: ChainComplex) -> dict:
    """Serialize as a header plus ``[degree, row_label, col_label, scalar]`` rows.

    Rows come sorted by degree, then column index, then row index, so the
    output is reproducible byte for byte.
    """
    trip = []
    for i in sorted(C.d):
        M = C.d[i]
        for j in range(M.ncols):
            col = M.column(j)
            for r in sorted(col):
                trip.append([i, label_to_json(C.basis[i - 1][r]), label_to_json(C.basis[i][j]),
                             scalar_to_json(C.ring, col[r])])
    return {
        "format": "artin-homology/triplets-v1",
        "name": C.name,
        "family": C.family,
        "n": C.n,
        "module": C.coeff.module if C.coeff else None,
        "base": C.coeff.base.name if C.coeff else None,
        "ring": C.ring.name,
        "basis": {str(i): [label_to_json(b) for b in C.basis[i]] for i in sorted(C.basis)},
        "entries": trip,
    }


def from_triplets(data: dict) -> ChainComplex:
    coeff = None
    if data.get("module"):
        coeff = CoefficientSpec(parse_ring(data["base"]), data["module"])
        ring = coeff.scalar_ring
    else:
        ring = parse_ring(data["ring"])
    basis = {int(i): [label_from_json(b) for b in labs] for i, labs in data["basis"].items()}
    index = {i: {b: k for k, b in enumerate(labs)} for i, labs in basis.items()}
    entries: dict[int, dict[tuple[int, int], Any]] = {}
    for deg, rl, cl, v in data["entries"]:
        r = index[deg - 1][label_from_json(rl)]
        c = index[deg][label_from_json(cl)]
        entries.setdefault(deg, {})[(r, c)] = scalar_from_json(ring, v)
    d = {}
    for i in basis:
        if i - 1 in basis:
            d[i] = SparseMatrix.from_entries(ring, len(basis[i - 1]), len(basis[i]), entries.get(i, {}))
    return ChainComplex(ring, basis, d, family=data.get("family"), n=data.get("n"), coeff=coeff,
                        name=data.get("name", ""))
