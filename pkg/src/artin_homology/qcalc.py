"""q-analogs and (q,t)-analogs with exact integer coefficients.

Everything here is a polynomial in two commuting variables q and t, stored as a
mapping ``(q_exponent, t_exponent) -> int``. The boundary coefficients of the
Artin complexes are obtained by specializing these at q = -1, and the Gaussian
binomials must be formed as honest polynomials first because the defining
quotient of factorials is 0/0 at q = -1.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Mapping

from .algebra.rings import ZZ, Poly

__all__ = [
    "QTPoly",
    "Q",
    "T",
    "ONE",
    "q_integer",
    "q_factorial",
    "gauss_binomial",
    "primed_binomial",
    "specialize",
    "exact_divide",
]


class QTPoly:
    """Immutable polynomial in q and t with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        c = {}
        for (i, j), v in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            v = int(v)
            if v:
                c[(i, j)] = v
        self._c = c
        self._hash = None

    @classmethod
    def constant(cls, k: int) -> QTPoly:
        return cls({(0, 0): k})

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._c)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._c.items()))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._c.get(key, 0)

    def is_zero(self) -> bool:
        return not self._c

    def q_degree(self) -> int:
        return max((i for i, _ in self._c), default=-1)

    def t_degree(self) -> int:
        return max((j for _, j in self._c), default=-1)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return QTPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QTPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (a, b), u in self._c.items():
            for (c, d), v in other._c.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + u * v
        return QTPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        r = ONE
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, int):
            other = QTPoly.constant(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def evaluate(self, q: int | None = None, t: int | None = None) -> QTPoly:
        """Substitute integer values for q and/or t."""
        out: dict[tuple[int, int], int] = {}
        for (i, j), v in self._c.items():
            if q is not None:
                v *= q**i
                i = 0
            if t is not None:
                v *= t**j
                j = 0
            out[(i, j)] = out.get((i, j), 0) + v
        return QTPoly(out)

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for (i, j), v in sorted(self._c.items()):
            mono = "".join(
                s for s in (
                    "" if i == 0 else ("q" if i == 1 else f"q^{i}"),
                    "" if j == 0 else ("t" if j == 1 else f"t^{j}"),
                )
            )
            if not mono:
                terms.append(str(v))
            elif v == 1:
                terms.append(mono)
            elif v == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{v}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _coerce(x) -> QTPoly:
    if isinstance(x, QTPoly):
        return x
    if isinstance(x, int):
        return QTPoly.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QTPoly")


ONE = QTPoly.constant(1)
Q = QTPoly({(1, 0): 1})
T = QTPoly({(0, 1): 1})


def q_integer(m: int) -> QTPoly:
    """[m]_q = 1 + q + ... + q^(m-1), with the convention [0]_q = 1."""
    if m < 0:
        raise ValueError(f"q_integer needs m >= 0, got {m}")
    if m == 0:
        return ONE
    return QTPoly({(k, 0): 1 for k in range(m)})


@lru_cache(maxsize=None)
def q_factorial(m: int) -> QTPoly:
    if m < 0:
        raise ValueError(f"q_factorial needs m >= 0, got {m}")
    r = ONE
    for k in range(1, m + 1):
        r = r * q_integer(k)
    return r


@lru_cache(maxsize=None)
def gauss_binomial(m: int, i: int) -> QTPoly:
    """Gaussian binomial [m choose i]_q via the Pascal recurrence

        [m, i] = [m-1, i-1] + q^i [m-1, i].

    No division is performed, so the result is exact for every m.
    """
    if m < 0 or i < 0 or i > m:
        raise ValueError(f"gauss_binomial needs 0 <= i <= m, got (m={m}, i={i})")
    if i == 0 or i == m:
        return ONE
    return gauss_binomial(m - 1, i - 1) + Q**i * gauss_binomial(m - 1, i)


@lru_cache(maxsize=None)
def primed_binomial(m: int, i: int) -> QTPoly:
    """[m choose i]'_{q,t} = [m choose i]_q * prod_{j=i}^{m-1} (1 + t q^j)."""
    if m < 0 or i < 0 or i > m:
        raise ValueError(f"primed_binomial needs 0 <= i <= m, got (m={m}, i={i})")
    r = gauss_binomial(m, i)
    for j in range(i, m):
        r = r * (ONE + T * Q**j)
    return r


def specialize(p: QTPoly, q_value: int = -1) -> Poly:
    """Substitute q = q_value and return the result as an integer polynomial in t."""
    coeffs: dict[int, int] = {}
    for (i, j), v in p.items():
        coeffs[j] = coeffs.get(j, 0) + v * q_value**i
    top = max(coeffs, default=-1)
    return Poly(ZZ, [coeffs.get(k, 0) for k in range(top + 1)])


def exact_divide(num: QTPoly, den: QTPoly) -> QTPoly:
    """Divide num by den as polynomials, raising if the remainder is nonzero.

    Division is done with respect to q (t is carried as a coefficient), so den
    must have a leading q-coefficient that is +-1 and free of t.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    dq = den.q_degree()
    lead = {j: v for (i, j), v in den._c.items() if i == dq}
    if list(lead) != [0] or abs(lead[0]) != 1:
        raise ValueError("divisor must have a unit, t-free leading q-coefficient")
    lc = lead[0]
    rem = num
    quot = QTPoly()
    while not rem.is_zero() and rem.q_degree() >= dq:
        rq = rem.q_degree()
        top = QTPoly({(rq - dq, j): v * lc for (i, j), v in rem._c.items() if i == rq})
        quot = quot + top
        rem = rem - top * den
    if not rem.is_zero():
        raise ArithmeticError(f"{num!r} is not divisible by {den!r}")
    return quot
