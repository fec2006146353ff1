"""Distinguished homology classes written as cell strings.

Monomials follow the display convention: z_c is the marked string 1^c0
(first slot marked), x_i is 1^(2^i - 1)0 (or 1^(2p^i - 1)0 for odd p),
h is 0, a monomial is the concatenation and the final 0 is dropped. So
z_c x_{i_1}...x_{i_k} has length c + sum(2^{i_j}).

A ``GeneratorExpr`` stores an integral numerator (cell -> polynomial in t)
and a divisor; ``resolve`` divides exactly in R[t] for the requested base
ring R and only then maps into the coefficient module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .algebra.rings import ZZ, GF, IntegerRing, LaurentRing, Poly, PrimeField, QQ, Ring
from .algebra.snf import rank as field_rank
from .algebra.snf import snf
from .algebra.sparse import SparseMatrix
from .complexes import (
    CellString,
    ChainComplex,
    CoefficientSpec,
    boundary_A,
    boundary_B,
    build_A,
    build_B,
)
from .homology import HomologyBasis, NotACycleError, homology, homology_basis, is_field

ONE_PLUS_T = (1, 1)
ONE_MINUS_T = (1, -1)
ONE_MINUS_T2 = (1, 0, -1)


class MalformedMonomialError(ValueError):
    pass


def _poly(c: Sequence[int]) -> Poly:
    return Poly(ZZ, list(c))


def _one_minus_t2_power(k: int) -> tuple[int, ...]:
    return tuple((_poly(ONE_MINUS_T2) ** k).to_list())


def x_string(i: int, p: int = 2) -> str:
    """x_i as a cell: 2^i - 1 ones (2p^i - 1 for odd p) then a 0."""
    ones = 2 ** i - 1 if p == 2 else 2 * p ** i - 1
    return "1" * ones + "0"


def monomial_bits(c: int | None, xs: Sequence[int], p: int = 2) -> str:
    """Bits of z_c x_{xs...} (or of the pure x-monomial when c is None), final 0 dropped."""
    s = ("1" * c + "0") if c is not None else ""
    s += "".join(x_string(i, p) for i in xs)
    if not s.endswith("0"):
        raise MalformedMonomialError("a monomial ends in 0 before the last 0 is dropped")
    return s[:-1]


def monomial_label(c: int | None, xs: Sequence[int]) -> str:
    parts = [f"z{c}"] if c is not None else []
    k = 0
    while k < len(xs):
        j = k
        while j < len(xs) and xs[j] == xs[k]:
            j += 1
        e = j - k
        parts.append(f"x{xs[k]}" + (f"^{e}" if e > 1 else ""))
        k = j
    return "".join(parts) or "1"


@dataclass(frozen=True)
class GeneratorExpr:
    """A symbolic class: numerator / divisor in a type-A or type-B complex."""

    label: str
    family: str  # "A" or "B"
    n: int
    degree: int
    numerator: tuple[tuple[str, tuple[int, ...]], ...]
    divisor: tuple[int, ...] = (1,)
    torsion: tuple[int, ...] | None = None  # stated order over the Laurent ring

    def terms(self) -> dict[str, Poly]:
        return {b: _poly(c) for b, c in self.numerator}

    def complex(self, coeff: CoefficientSpec) -> ChainComplex:
        if self.family == "A":
            return build_A(self.n, coeff)
        return build_B(self.n, coeff)

    def resolve(self, coeff: CoefficientSpec) -> dict[int, Any]:
        """The chain in ``self.complex(coeff)``; raises on inexact division."""
        C = self.complex(coeff)
        base = coeff.base
        div = _poly(self.divisor).change_base(base)
        if div.is_zero():
            raise ArithmeticError(f"{self.label}: divisor vanishes over {base.name}")
        sfx = coeff.basis_suffixes()
        out: dict[int, Any] = {}
        for bits, p in self.terms().items():
            q, r = _divmod(p.change_base(base), div)
            if not r.is_zero():
                raise ArithmeticError(f"{self.label}: coefficient of {bits} is not divisible by "
                                      f"{_poly(self.divisor)} over {base.name}")
            if q.is_zero():
                continue
            blk = coeff.block(q.change_base(ZZ, _lift(base)) if base != ZZ else q) \
                if coeff.module != "laurent" else [[q]]
            cell = CellString(bits, self.family == "B")
            for a, s in enumerate(sfx):
                v = blk[a][0]
                if not C.ring.is_zero(v):
                    k = C.index(self.degree, (cell, s))
                    out[k] = C.ring.add(out[k], v) if k in out else v
        return {k: v for k, v in out.items() if not C.ring.is_zero(v)}


def _divmod(p: Poly, div: Poly) -> tuple[Poly, Poly]:
    if div.degree == 0 and isinstance(p.base, IntegerRing):
        # a constant divisor over Z: exact coefficientwise division
        d = div.c[0]
        if any(c % d for c in p.c):
            return Poly(p.base), p
        return Poly(p.base, [c // d for c in p.c]), Poly(p.base)
    return p.divmod(div)


def _lift(base: Ring):
    # lift base-ring scalars to integers; block() reduces them again
    if isinstance(base, PrimeField):
        return lambda v: int(v)
    return lambda v: v


def _expr(label, family, n, degree, terms: dict[str, Poly], divisor=(1,), torsion=None) -> GeneratorExpr:
    num = tuple(sorted((b, tuple(p.to_list())) for b, p in terms.items() if not p.is_zero()))
    return GeneratorExpr(label, family, n, degree, num, tuple(divisor), None if torsion is None else tuple(torsion))


def _check_chain(xs: Sequence[int], lower: int = 0) -> None:
    prev = lower
    for i in xs:
        if i < prev:
            raise MalformedMonomialError(f"indices must satisfy {lower} <= i_1 <= ... <= i_k, got {list(xs)}")
        prev = i


# ---------------------------------------------------------------------------
# constructors

def z_cell(c: int, xs: Sequence[int] = (), weight: Sequence[int] = (1,), label: str | None = None,
           torsion=None) -> GeneratorExpr:
    """weight(t) * z_c x_{xs}, a chain in the type-B complex."""
    if c < 1:
        raise MalformedMonomialError("z_c needs c >= 1")
    bits = monomial_bits(c, xs)
    lab = label or (monomial_label(c, xs) if tuple(weight) == (1,) else f"({_poly(weight)}){monomial_label(c, xs)}")
    return _expr(lab, "B", len(bits), bits.count("1"), {bits: _poly(weight)}, (1,), torsion)


def boundary_quotient(c: int, xs: Sequence[int], divisor: Sequence[int], torsion=None,
                      label: str | None = None) -> GeneratorExpr:
    """d(z_c x_{xs}) / divisor."""
    if c < 1:
        raise MalformedMonomialError("z_c needs c >= 1")
    bits = monomial_bits(c, xs)
    terms = boundary_B(bits)
    lab = label or f"d({monomial_label(c, xs)})/({_poly(divisor)})"
    return _expr(lab, "B", len(bits), bits.count("1") - 1, terms, divisor, torsion)


def y_generator(i: int, p: int) -> GeneratorExpr:
    """d(x_i)/p in the type-A complex, x_i = 1^(2p^i - 1) with the last 0 dropped."""
    if i < 1 or p < 3:
        raise MalformedMonomialError("y_i needs i >= 1 and an odd prime p")
    bits = "1" * (2 * p ** i - 1)
    terms = {b: Poly(ZZ, [v]) for b, v in boundary_A(bits).items()}
    return _expr(f"y{i}", "A", len(bits), len(bits) - 1, terms, (p,))


def make_generator(kind: str, **kw) -> GeneratorExpr:
    """Dispatch by kind: cell, boundary-quotient, multiple, omega, omega-tilde,
    gamma-tilde, gamma-hat, y, mod2-first, mod2-second."""
    builders = {
        "cell": lambda c, xs=(): z_cell(c, xs),
        "boundary-quotient": lambda c, xs, divisor, torsion=None: boundary_quotient(c, xs, divisor, torsion),
        "multiple": lambda c, xs, weight: z_cell(c, xs, weight),
        "omega": omega,
        "omega-tilde": omega_tilde,
        "gamma-tilde": gamma_tilde,
        "gamma-hat": gamma_hat,
        "y": lambda i, p: y_generator(i, p),
        "mod2-first": mod2_first,
        "mod2-second": mod2_second,
    }
    if kind not in builders:
        raise ValueError(f"unknown generator kind {kind!r}; expected one of {sorted(builders)}")
    return builders[kind](**kw)


def omega(e: int, i: int, j: int, with_x1: bool) -> GeneratorExpr:
    """d(z_{2i+1} x0^(j-1) [x1]) / (1+t), j > 0."""
    if j < 1 or e not in (1, 2):
        raise MalformedMonomialError("omega needs j > 0 and e in {1, 2}")
    xs = [0] * (j - 1) + ([1] if with_x1 else [])
    g = boundary_quotient(2 * i + 1, xs, ONE_PLUS_T, ONE_PLUS_T)
    return _relabel(g, f"w{e}[{2 * i},{j},{int(with_x1)}]")


def omega_tilde(e: int, i: int, j: int, with_x1: bool) -> GeneratorExpr:
    """(1-(-t)^e)/(1+t) * z_{2i+1} x0^(j-1) [x1], j > 0: weight 1 for e=1, 1-t for e=2."""
    if j < 1 or e not in (1, 2):
        raise MalformedMonomialError("omega-tilde needs j > 0 and e in {1, 2}")
    xs = [0] * (j - 1) + ([1] if with_x1 else [])
    w = (1,) if e == 1 else ONE_MINUS_T
    g = z_cell(2 * i + 1, xs, w, torsion=ONE_PLUS_T)
    return _relabel(g, f"w~{e}[{2 * i},{j},{int(with_x1)}]")


def gamma_tilde(c: int, xs: Sequence[int]) -> GeneratorExpr:
    """gamma~(z_c, x0 x_{i_1}...) = (1-t) z_{c+1} x_{i_1}...; c even, xs = (0, i_1, ...)."""
    _check_gamma(c, xs)
    return z_cell(c + 1, xs[1:], ONE_MINUS_T, label=f"g~({monomial_label(c, xs)})", torsion=ONE_PLUS_T)


def gamma_hat(c: int, xs: Sequence[int]) -> GeneratorExpr:
    """gamma^(z_c, x0 x_{i_1}...) = d(z_{c+1} x_{i_1}...)/(1+t)."""
    _check_gamma(c, xs)
    return boundary_quotient(c + 1, xs[1:], ONE_PLUS_T, ONE_PLUS_T, label=f"g^({monomial_label(c, xs)})")


def _check_gamma(c: int, xs: Sequence[int]):
    if c < 0 or c % 2:
        raise MalformedMonomialError(f"c must be even and >= 0, got {c}")
    if not xs or xs[0] != 0:
        raise MalformedMonomialError("the monomial must start with x0")
    _check_chain(xs[1:])


def mod2_first(c: int, xs: Sequence[int]) -> GeneratorExpr:
    """d(z_c x_{i_1}...)/(1+t) with c - 1 = 2^(h+1)(2m+1) or c - 1 = 0, i.e. c odd."""
    _check_chain(xs)
    if c < 1 or c % 2 == 0:
        raise MalformedMonomialError(f"c = {c}: c - 1 must be 0 or 2^(h+1)(2m+1)")
    return boundary_quotient(c, xs, ONE_PLUS_T, ONE_PLUS_T)


def mod2_second(c: int, i: int, xs: Sequence[int]) -> GeneratorExpr:
    """d(z_c x_{i_1}...)/(1-t^2)^(2^(i-1)), i >= 1, i <= i_1 <= ... <= i_k.

    c = E + 2^i where E = 2^(h+1)(2m+1) with i <= h, or E = 0; equivalently
    2^(i+1) divides c - 2^i.
    """
    if i < 1:
        raise MalformedMonomialError(f"need i >= 1, got {i}")
    E = c - 2 ** i
    if E < 0 or E % 2 ** (i + 1):
        raise MalformedMonomialError(f"c = {c}: c - 2^{i} must be 0 or 2^(h+1)(2m+1) with h >= {i}")
    _check_chain(xs, i)
    order = _one_minus_t2_power(2 ** (i - 1))
    return boundary_quotient(c, xs, order, order)


def _relabel(g: GeneratorExpr, label: str) -> GeneratorExpr:
    return GeneratorExpr(label, g.family, g.n, g.degree, g.numerator, g.divisor, g.torsion)


# ---------------------------------------------------------------------------
# predicted families for a fixed length n

def rational_laurent_family(n: int) -> list[GeneratorExpr]:
    """Char 0 generators of H_*(G_{B_n}; F[t^+-1]) of length n."""
    out = []
    for i in range(0, n):
        j = n - 2 * i
        if j >= 1:
            out.append(boundary_quotient(2 * i + 1, [0] * (j - 1), ONE_PLUS_T, ONE_PLUS_T))
        j = n - 2 * i - 2
        if j >= 1:
            out.append(boundary_quotient(2 * i + 1, [0] * (j - 1) + [1], ONE_PLUS_T, ONE_PLUS_T))
    if n % 2 == 0 and n >= 2:
        out.append(boundary_quotient(n, [], ONE_MINUS_T2, ONE_MINUS_T2))
    return out


def _monomials(total: int, lower: int = 0) -> Iterable[tuple[int, ...]]:
    """Nondecreasing index tuples (>= lower) with sum of 2^i equal to total."""
    if total == 0:
        yield ()
        return
    i = lower
    while 2 ** i <= total:
        for rest in _monomials(total - 2 ** i, i):
            yield (i,) + rest
        i += 1


def mod2_laurent_family(n: int) -> list[GeneratorExpr]:
    """Char 2 generators of H_*(G_{B_n}; F_2[t^+-1]) of length n."""
    out = []
    for c in range(1, n + 1, 2):
        for xs in _monomials(n - c):
            out.append(mod2_first(c, xs))
    i = 1
    while 2 ** i <= n:
        for c in range(2 ** i, n + 1, 2 ** (i + 1)):
            for xs in _monomials(n - c, i):
                out.append(mod2_second(c, i, xs))
        i += 1
    return out


def bprime_family(n: int, e: int) -> list[GeneratorExpr]:
    """The omega / omega-tilde classes for odd n (e=1: R[t]/(1+t), e=2: R[t]/(1-t^2))."""
    if n % 2 == 0:
        raise ValueError("defined for odd n only")
    out = []
    for i in range(0, n):
        for with_x1 in (False, True):
            j = n - 2 * i - (2 if with_x1 else 0)
            if j >= 1:
                out.append(omega(e, i, j, with_x1))
                out.append(omega_tilde(e, i, j, with_x1))
    return out


def gamma_family(n: int) -> list[GeneratorExpr]:
    """gamma~ and gamma^ classes of length n (odd n), over F_2[t]/(1-t^2)."""
    out = []
    for c in range(0, n, 2):
        for rest in _monomials(n - c - 1):
            xs = (0,) + rest
            out.append(gamma_tilde(c, xs))
            out.append(gamma_hat(c, xs))
    return out


# ---------------------------------------------------------------------------
# verification

@dataclass
class BasisReport:
    ok: bool = True
    lines: list[str] = field(default_factory=list)

    def fail(self, msg: str):
        self.ok = False
        self.lines.append("FAIL " + msg)

    def note(self, msg: str):
        self.lines.append(msg)


def _by_degree(gens: Iterable[GeneratorExpr]) -> dict[int, list[GeneratorExpr]]:
    out: dict[int, list[GeneratorExpr]] = {}
    for g in gens:
        out.setdefault(g.degree, []).append(g)
    return out


def verify_field_basis(gens: Sequence[GeneratorExpr], module: str, base: Ring, claim_basis: bool,
                       report: BasisReport | None = None) -> BasisReport:
    """Cycles, independence in homology over the field, optionally full size."""
    rep = report or BasisReport()
    coeff = CoefficientSpec(base, module)
    if not gens:
        rep.note(f"{module}/{base.name}: empty set")
        return rep
    n = gens[0].n
    C = gens[0].complex(coeff)
    degrees = set(_by_degree(gens))
    if claim_basis:
        degrees |= set(C.degrees)
    by_deg = _by_degree(gens)
    for d in sorted(degrees):
        gs = by_deg.get(d, [])
        B = homology_basis(C, d)
        rows = []
        for g in gs:
            z = g.resolve(coeff)
            if C.boundary(d).apply(z):
                rep.fail(f"{g.label} is not a cycle over {module}/{base.name}")
                continue
            rows.append(B.coordinates(z))
        r = field_rank(SparseMatrix.from_dense(base, rows, B.size)) if rows and B.size else 0
        if r != len(gs):
            rep.fail(f"n={n} degree {d} {module}/{base.name}: {len(gs)} classes span rank {r}")
        if claim_basis and B.size != len(gs):
            rep.fail(f"n={n} degree {d} {module}/{base.name}: {len(gs)} classes but dim H = {B.size}")
    if rep.ok:
        rep.note(f"n={n} {module}/{base.name}: {len(gens)} classes independent"
                 + (" and spanning" if claim_basis else ""))
    return rep


def verify_laurent_basis(gens: Sequence[GeneratorExpr], base: Ring, report: BasisReport | None = None,
                         n: int | None = None) -> BasisReport:
    """Check that the classes form a basis of the torsion module H_*(G_{B_n}; F[t^+-1]).

    Per degree: each class is a cycle; order * class is a boundary; together
    with im d_{i+1} the classes span ker d_i; and the stated orders account
    for the full F-dimension of H_i.
    """
    rep = report or BasisReport()
    coeff = CoefficientSpec(base, "laurent")
    if n is None:
        if not gens:
            rep.note("empty set")
            return rep
        n = gens[0].n
    C = build_B(n, coeff)
    R = C.ring
    by_deg = _by_degree(gens)
    for d in C.degrees:
        gs = by_deg.get(d, [])
        H = homology(C, d)
        dim_f = sum(t.degree for t in H.torsion)
        if H.betti:
            rep.fail(f"n={n} degree {d}: homology has free rank {H.betti}")
        chains = []
        for g in gs:
            z = g.resolve(coeff)
            if C.boundary(d).apply(z):
                rep.fail(f"{g.label} is not a cycle")
            chains.append((g, z))
        Bz = homology_basis(C, d) if gs else None
        for g, z in chains:
            order = _poly(g.torsion).change_base(base)
            if not Bz.is_boundary({k: R.mul(order, v) for k, v in z.items()}):
                rep.fail(f"{g.label}: ({_poly(g.torsion)}) * class is not a boundary")
        kernel_rank = C.dim(d) - (snf(C.boundary(d)).rank if C.boundary(d).nnz else 0)
        D = C.boundary(d + 1)
        cols = D.columns() + [z for _, z in chains]
        M = SparseMatrix(R, C.dim(d), len(cols), cols)
        s = snf(M) if M.nnz else None
        rk = s.rank if s else 0
        if rk != kernel_rank or (s and any(not R.is_unit(f) for f in s.invariant_factors)):
            rep.fail(f"n={n} degree {d}: classes and boundaries do not span the cycles")
        stated = sum(_poly(g.torsion).degree for g in gs)
        if stated != dim_f:
            rep.fail(f"n={n} degree {d}: stated orders have total degree {stated}, dim H = {dim_f}")
    if rep.ok:
        rep.note(f"n={n} laurent/{base.name}: {len(gens)} classes form a basis")
    return rep


def verify_basis(gens: Sequence[GeneratorExpr], module: str = "laurent", bases: Sequence[Ring] = (QQ,),
                 claim_basis: bool = True, n: int | None = None) -> BasisReport:
    """Run the Laurent-module check or field checks for each base ring."""
    rep = BasisReport()
    for base in bases:
        if module == "laurent":
            verify_laurent_basis(gens, base, rep, n)
        else:
            verify_field_basis(gens, module, base, claim_basis, rep)
    return rep


def predicted_torsion(gens: Sequence[GeneratorExpr], base: Ring) -> dict[int, list[Poly]]:
    """Stated orders per degree, normalized like SNF output (monic, sorted)."""
    R = LaurentRing(base)
    out: dict[int, list[Poly]] = {}
    for g in gens:
        out.setdefault(g.degree, []).append(R.canonical(_poly(g.torsion).change_base(base))[0])
    return {d: sorted(v, key=lambda p: (p.degree, p.to_list())) for d, v in out.items()}
