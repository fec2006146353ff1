"""Scalar rings used by the engine.

Scalars are plain Python values: ``int`` for the integers and for prime fields
(kept reduced to ``range(p)``), ``Fraction`` for the rationals and :class:`Poly`
for polynomial, Laurent and quotient rings. Each ring object supplies the
arithmetic so that the linear algebra in :mod:`.snf` can stay generic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from sympy import isprime


class UnsupportedRingError(TypeError):
    """An operation was asked for over a ring it does not support."""


class Ring:
    name = "ring"
    is_field = False
    is_euclidean = False

    zero: Any
    one: Any

    def from_int(self, k: int):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def norm(self, a) -> int:
        """Euclidean size; only meaningful for Euclidean rings."""
        raise UnsupportedRingError(f"{self.name} is not Euclidean")

    def divmod(self, a, b):
        raise UnsupportedRingError(f"{self.name} has no division with remainder")

    def canonical(self, a):
        """Return ``(c, u)`` with ``a == u * c``, ``u`` a unit, ``c`` the chosen associate."""
        return a, self.one

    def divides(self, a, b) -> bool:
        """True when a divides b."""
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.divmod(b, a)[1])

    def exact_div(self, a, b):
        qq, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise ArithmeticError(f"{self.fmt(b)} does not divide {self.fmt(a)} in {self.name}")
        return qq

    def fmt(self, a) -> str:
        return str(a)

    def __repr__(self):
        return self.name


class IntegerRing(Ring):
    name = "Z"
    is_euclidean = True
    zero = 0
    one = 1
    characteristic = 0

    def from_int(self, k):
        return int(k)

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a == 1 or a == -1

    def inv(self, a):
        if a == 1 or a == -1:
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def norm(self, a):
        return abs(a)

    def divmod(self, a, b):
        return divmod(a, b)

    def canonical(self, a):
        return (-a, -1) if a < 0 else (a, 1)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")


class RationalField(Ring):
    name = "Q"
    is_field = True
    is_euclidean = True
    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    def from_int(self, k):
        return Fraction(k)

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        return 1 / Fraction(a)

    def norm(self, a):
        return 0 if a == 0 else 1

    def divmod(self, a, b):
        return Fraction(a) / b, self.zero

    def canonical(self, a):
        if a == 0:
            return a, self.one
        return self.one, Fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Ring):
    is_field = True
    is_euclidean = True
    zero = 0
    one = 1

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def from_int(self, k):
        return int(k) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def is_unit(self, a):
        return a % self.p != 0

    def inv(self, a):
        return pow(a, -1, self.p)

    def norm(self, a):
        return 0 if a % self.p == 0 else 1

    def divmod(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p, 0

    def canonical(self, a):
        a %= self.p
        if a == 0:
            return 0, 1
        return 1, a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


ZZ = IntegerRing()
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class Poly:
    """Univariate polynomial in t, coefficients listed from t^0 upward.

    The coefficient ring is carried along; arithmetic delegates to it.
    """

    __slots__ = ("base", "c")

    def __init__(self, base: Ring, coeffs: Iterable = ()):
        cs = [base.from_int(x) if isinstance(x, int) and not isinstance(base, IntegerRing) else x
              for x in coeffs]
        while cs and base.is_zero(cs[-1]):
            cs.pop()
        self.base = base
        self.c = tuple(cs)

    @classmethod
    def monomial(cls, base: Ring, k: int, coeff=None) -> Poly:
        return cls(base, [base.zero] * k + [base.one if coeff is None else coeff])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self):
        return self.c[-1] if self.c else self.base.zero

    def valuation(self) -> int:
        """Exponent of the lowest nonzero term (-1 for zero)."""
        for k, v in enumerate(self.c):
            if not self.base.is_zero(v):
                return k
        return -1

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else self.base.zero

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.base != self.base:
                raise UnsupportedRingError(f"mixing coefficient rings {self.base} and {other.base}")
            return other
        return Poly(self.base, [self.base.from_int(other) if isinstance(other, int) else other])

    def __add__(self, other):
        other = self._lift(other)
        b = self.base
        n = max(len(self.c), len(other.c))
        return Poly(b, [b.add(self.coeff(k), other.coeff(k)) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.base, [self.base.neg(v) for v in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        b = self.base
        if not isinstance(other, Poly):
            other = self._lift(other)
        if other.base != b:
            raise UnsupportedRingError(f"mixing coefficient rings {b} and {other.base}")
        if not self.c or not other.c:
            return Poly(b)
        out = [b.zero] * (len(self.c) + len(other.c) - 1)
        for i, u in enumerate(self.c):
            if b.is_zero(u):
                continue
            for j, v in enumerate(other.c):
                out[i + j] = b.add(out[i + j], b.mul(u, v))
        return Poly(b, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = Poly(self.base, [self.base.one])
        for _ in range(e):
            r = r * self
        return r

    def scale(self, s) -> Poly:
        return Poly(self.base, [self.base.mul(s, v) for v in self.c])

    def shift(self, k: int) -> Poly:
        """Multiply by t^k (k may be negative if the low terms vanish)."""
        if k >= 0:
            return Poly(self.base, [self.base.zero] * k + list(self.c))
        if self.c and any(not self.base.is_zero(v) for v in self.c[:-k]):
            raise ArithmeticError("negative shift would drop nonzero terms")
        return Poly(self.base, self.c[-k:])

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        b = self.base
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lc = other.lead
        if not b.is_unit(lc):
            raise ArithmeticError(f"leading coefficient {lc} of divisor is not a unit in {b}")
        lc_inv = b.inv(lc)
        rem = list(self.c)
        dq = other.degree
        quot = [b.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            v = rem[k]
            if b.is_zero(v):
                continue
            f = b.mul(v, lc_inv)
            quot[k - dq] = f
            for j, w in enumerate(other.c):
                rem[k - dq + j] = b.sub(rem[k - dq + j], b.mul(f, w))
        return Poly(b, quot), Poly(b, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def evaluate(self, x):
        b = self.base
        acc = b.zero
        for v in reversed(self.c):
            acc = b.add(b.mul(acc, x), v)
        return acc

    def change_base(self, base: Ring, convert=None) -> Poly:
        convert = convert or base.from_int
        return Poly(base, [convert(v) for v in self.c])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.base == other.base and self.c == other.c
        if isinstance(other, int):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.base, self.c))

    def to_list(self) -> list:
        return list(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for k, v in enumerate(self.c):
            if self.base.is_zero(v):
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                terms.append(str(v))
            elif v == 1:
                terms.append(mono)
            elif v == -1 and not isinstance(self.base, PrimeField):
                terms.append("-" + mono)
            else:
                terms.append(f"{v}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class PolyRing(Ring):
    """F[t] for a field F."""

    field: Ring

    def __post_init__(self):
        if not self.field.is_field:
            raise UnsupportedRingError(f"F[t] needs a field, got {self.field}")

    is_euclidean = True

    @property
    def name(self):
        return f"{self.field.name}[t]"

    @property
    def zero(self):
        return Poly(self.field)

    @property
    def one(self):
        return Poly(self.field, [self.field.one])

    @property
    def characteristic(self):
        return self.field.characteristic

    def from_int(self, k):
        return Poly(self.field, [self.field.from_int(k)])

    def element(self, coeffs: Sequence) -> Poly:
        return Poly(self.field, [self.field.from_int(v) if isinstance(v, int) else v for v in coeffs])

    def is_zero(self, a):
        return a.is_zero()

    def is_unit(self, a):
        return a.degree == 0

    def inv(self, a):
        if a.degree != 0:
            raise ZeroDivisionError(f"{a} is not a unit")
        return Poly(self.field, [self.field.inv(a.c[0])])

    def norm(self, a):
        return a.degree

    def divmod(self, a, b):
        return a.divmod(b)

    def canonical(self, a):
        if a.is_zero():
            return a, self.one
        lc = a.lead
        return a.scale(self.field.inv(lc)), Poly(self.field, [lc])

    def fmt(self, a):
        return repr(a)

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class LaurentRing(Ring):
    """R[t, t^-1], with elements stored as polynomials.

    Boundary coefficients never carry negative powers, so a polynomial
    representative suffices; units t^k are stripped when normalizing. Over a
    field this ring is a PID and SNF runs through :class:`PolyRing`.
    """

    base: Ring

    @property
    def name(self):
        return f"{self.base.name}[t^+-1]"

    @property
    def is_euclidean(self):
        return self.base.is_field

    @property
    def zero(self):
        return Poly(self.base)

    @property
    def one(self):
        return Poly(self.base, [self.base.one])

    @property
    def characteristic(self):
        return self.base.characteristic

    def poly_ring(self) -> PolyRing:
        return PolyRing(self.base)

    def from_int(self, k):
        return Poly(self.base, [self.base.from_int(k)])

    def element(self, coeffs: Sequence) -> Poly:
        return Poly(self.base, [self.base.from_int(v) if isinstance(v, int) else v for v in coeffs])

    def is_zero(self, a):
        return a.is_zero()

    def is_unit(self, a):
        # units of R[t^+-1] for a domain R: u t^k with u a unit of R
        if a.is_zero():
            return False
        v = a.valuation()
        return a.degree == v and self.base.is_unit(a.c[v])

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit")
        if a.degree != 0:
            raise ArithmeticError("inverse of t^k needs negative exponents")
        return Poly(self.base, [self.base.inv(a.c[0])])

    def strip(self, a: Poly) -> Poly:
        """Remove the largest power of t dividing a."""
        if a.is_zero():
            return a
        return a.shift(-a.valuation())

    def norm(self, a):
        if not self.base.is_field:
            raise UnsupportedRingError(f"{self.name} is not Euclidean")
        a = self.strip(a)
        return a.degree

    def divmod(self, a, b):
        if not self.base.is_field:
            raise UnsupportedRingError(f"{self.name} is not Euclidean")
        return self.strip(a).divmod(self.strip(b))

    def canonical(self, a):
        if a.is_zero():
            return a, self.one
        s = self.strip(a)
        lc = s.lead
        if self.base.is_field:
            return s.scale(self.base.inv(lc)), Poly(self.base, [self.base.zero] * a.valuation() + [lc])
        return s, Poly.monomial(self.base, a.valuation())

    def fmt(self, a):
        return repr(a)

    def __repr__(self):
        return self.name


_MODULI = {
    "1+t": (1, 1),
    "1-t": (1, -1),
    "1-t^2": (1, 0, -1),
}


@dataclass(frozen=True)
class QuotientRing(Ring):
    """R[t]/(m) for m one of 1+t, 1-t, 1-t^2; elements are reduced polynomials."""

    base: Ring
    modulus: str

    def __post_init__(self):
        if self.modulus not in _MODULI:
            raise ValueError(f"modulus must be one of {sorted(_MODULI)}, got {self.modulus!r}")

    @property
    def name(self):
        return f"{self.base.name}[t]/({self.modulus})"

    @property
    def modulus_poly(self) -> Poly:
        return Poly(self.base, [self.base.from_int(v) for v in _MODULI[self.modulus]])

    @property
    def rank(self) -> int:
        return self.modulus_poly.degree

    @property
    def zero(self):
        return Poly(self.base)

    @property
    def one(self):
        return Poly(self.base, [self.base.one])

    def reduce(self, a: Poly) -> Poly:
        if a.base != self.base:
            a = a.change_base(self.base)
        m = self.modulus_poly
        # the moduli have unit leading coefficient (+-1), so this is exact over Z too
        return a.divmod(m)[1]

    def from_int(self, k):
        return Poly(self.base, [self.base.from_int(k)])

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def mul(self, a, b):
        return self.reduce(a * b)

    def is_zero(self, a):
        return self.reduce(a).is_zero()

    def is_unit(self, a):
        raise UnsupportedRingError(f"{self.name}: use restrict_scalars before linear algebra")

    def fmt(self, a):
        return repr(a)

    def __repr__(self):
        return self.name


def parse_ring(text: str) -> Ring:
    """Parse Z, Q, F2, F3, F5 or Fp:<p>."""
    s = text.strip()
    if s in ("Z", "ZZ"):
        return ZZ
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("Fp:"):
        return GF(int(s[3:]))
    if s.startswith("F") and s[1:].isdigit():
        return GF(int(s[1:]))
    raise ValueError(f"unknown ring {text!r}")
