"""Published reference values, loaded read-only with their citations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from sympy import factorint


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus elementary divisors."""

    betti: int
    elementary: tuple[int, ...] = ()  # sorted prime powers

    @classmethod
    def parse(cls, text: str) -> AbelianGroup:
        text = text.strip()
        if text in ("0", ""):
            return cls(0)
        betti, elem = 0, []
        for part in text.split("*"):
            part = part.strip()
            base, _, mult = part.partition("^")
            m = int(mult) if mult else 1
            if base == "Z":
                betti += m
            else:
                elem.extend([int(base)] * m)
        return cls(betti, tuple(sorted(elem)))

    @classmethod
    def from_invariant_factors(cls, betti: int, factors) -> AbelianGroup:
        elem = []
        for d in factors:
            for p, e in factorint(int(d)).items():
                elem.append(p ** e)
        return cls(betti, tuple(sorted(elem)))

    def rank_mod(self, p: int) -> int:
        """Number of cyclic summands of order divisible by p."""
        return sum(1 for d in self.elementary if d % p == 0)

    def invariant_factors(self) -> list[int]:
        by_prime: dict[int, list[int]] = {}
        for d in self.elementary:
            (p,) = factorint(d).keys()
            by_prime.setdefault(p, []).append(d)
        k = max((len(v) for v in by_prime.values()), default=0)
        out = [1] * k
        for powers in by_prime.values():
            powers = sorted(powers, reverse=True)
            for j, d in enumerate(powers):
                out[k - 1 - j] *= d
        return out

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.elementary

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        counts: dict[int, int] = {}
        for d in self.elementary:
            counts[d] = counts.get(d, 0) + 1
        for d in sorted(counts):
            m = counts[d]
            parts.append(f"Z_{d}" if m == 1 else f"Z_{d}^{m}")
        return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _raw() -> dict:
    return json.loads(resources.files("artin_homology").joinpath("data/table1.json").read_text())


@dataclass(frozen=True)
class Fixture:
    name: str
    citation: str
    value: object


def table1_citation() -> str:
    return _raw()["citation"]


def table1_range() -> tuple[int, int]:
    ns = sorted(int(n) for n in _raw()["rows"])
    return ns[0], ns[-1]


@lru_cache(maxsize=None)
def table1() -> dict[int, dict[int, AbelianGroup]]:
    """``{n: {i: group}}`` for i = 0..11; blank cells and i = 0 are the zero group."""
    out = {}
    for n, row in _raw()["rows"].items():
        groups = {0: AbelianGroup(0)}
        for i in range(1, 12):
            groups[i] = AbelianGroup.parse(row[i - 1]) if i - 1 < len(row) else AbelianGroup(0)
        out[int(n)] = groups
    return out


def table1_group(n: int, i: int) -> AbelianGroup:
    row = table1().get(n)
    if row is None:
        raise KeyError(f"no tabulated row for n = {n}")
    return row.get(i, AbelianGroup(0))


def table1_first_stable() -> dict[int, int]:
    return {int(i): n for i, n in _raw()["first_stable"].items()}


def table1_field_dim(n: int, i: int, p: int | None, table: dict | None = None) -> int:
    """dim H_i(Br_n; H_1(Sigma_n; F_p)) from the integral table (p=None for Q)."""
    row = (table or table1())[n]
    g = row.get(i, AbelianGroup(0))
    if p is None:
        return g.betti
    prev = row.get(i - 1, AbelianGroup(0))
    return g.betti + g.rank_mod(p) + prev.rank_mod(p)


def stable_terms() -> Fixture:
    st = _raw()["stable_terms"]
    return Fixture("stable-series-terms", st["citation"], {int(k): v for k, v in st["coefficients"].items()})


# statements about type-B homology used as validation targets

MINUS_T_POINCARE = Fixture(
    "mod1-t-poincare",
    "rational homology of G_{B_n} with coefficients F[t]/(1-t), n even: Poincare polynomial (1+q)q^(n-1)",
    lambda n: {n - 1: 1, n: 1},
)

RATIONAL_TORSION = Fixture(
    "rational-laurent-basis",
    "char 0 basis of H_*(G_{B_n}; F[t^+-1]): d(z_{2i+1}x0^(j-1))/(1+t), d(z_{2i+1}x0^(j-1)x1)/(1+t), d(z_{2i+2})/(1-t^2)",
    None,
)

MOD2_TORSION = Fixture(
    "mod2-laurent-basis",
    "char 2 basis of H_*(G_{B_n}; F_2[t^+-1]): d(z_c x..)/(1+t) for c-1 = 2^(h+1)(2m+1), "
    "d(z_c x..)/(1-t^2)^(2^(i-1)) for c = 2^(h+1)(2m+1)+2^i, i <= h, i <= i_1 <= ... <= i_k",
    None,
)

STABILIZATION = Fixture(
    "type-B-stabilization",
    "st_* on H_i(G_{B_n}; F[t]/(1+t)) and F[t]/(1-t^2): p=2 iso for 2i < n; p>2 iso for p(i-1)/(p-1)+2 < n; "
    "p=0 iso for i+1 < n (epimorphism with <= instead of <)",
    None,
)


def stabilization_iso(p: int, i: int, n: int) -> bool:
    """Whether st_*: H_i(n) -> H_i(n+1) is asserted to be an isomorphism."""
    if p == 2:
        return 2 * i < n
    if p == 0:
        return i + 1 < n
    return p * (i - 1) + 2 * (p - 1) < n * (p - 1)


def stabilization_epi(p: int, i: int, n: int) -> bool:
    if p == 2:
        return 2 * i <= n
    if p == 0:
        return i + 1 <= n
    return p * (i - 1) + 2 * (p - 1) <= n * (p - 1)
