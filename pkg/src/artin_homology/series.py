"""Truncated bivariate power series in (q, t) and the generating functions.

Coefficients are exact Python integers stored densely as ``c[i][n]`` for the
monomial q^i t^n, 0 <= i <= maxq, 0 <= n <= maxt.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class FormalSeries:
    maxq: int
    maxt: int
    c: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, maxq: int, maxt: int) -> FormalSeries:
        return cls(maxq, maxt, tuple((0,) * (maxt + 1) for _ in range(maxq + 1)))

    @classmethod
    def monomial(cls, i: int, n: int, maxq: int, maxt: int, coeff: int = 1) -> FormalSeries:
        rows = [[0] * (maxt + 1) for _ in range(maxq + 1)]
        if i <= maxq and n <= maxt:
            rows[i][n] = coeff
        return cls._of(maxq, maxt, rows)

    @classmethod
    def one(cls, maxq: int, maxt: int) -> FormalSeries:
        return cls.monomial(0, 0, maxq, maxt)

    @classmethod
    def _of(cls, maxq, maxt, rows) -> FormalSeries:
        return cls(maxq, maxt, tuple(tuple(r) for r in rows))

    def coeff(self, i: int, n: int = 0) -> int:
        if i < 0 or n < 0:
            return 0
        if i > self.maxq or n > self.maxt:
            raise IndexError(f"coefficient (q^{i}, t^{n}) is beyond the truncation ({self.maxq}, {self.maxt})")
        return self.c[i][n]

    def _bounds(self, other: FormalSeries) -> tuple[int, int]:
        return min(self.maxq, other.maxq), min(self.maxt, other.maxt)

    def __add__(self, other: FormalSeries) -> FormalSeries:
        mq, mt = self._bounds(other)
        return self._of(mq, mt, [[self.c[i][n] + other.c[i][n] for n in range(mt + 1)] for i in range(mq + 1)])

    def __mul__(self, other: FormalSeries) -> FormalSeries:
        mq, mt = self._bounds(other)
        rows = [[0] * (mt + 1) for _ in range(mq + 1)]
        for i1 in range(mq + 1):
            for n1 in range(mt + 1):
                a = self.c[i1][n1]
                if not a:
                    continue
                for i2 in range(mq + 1 - i1):
                    r2 = other.c[i2]
                    row = rows[i1 + i2]
                    for n2 in range(mt + 1 - n1):
                        if r2[n2]:
                            row[n1 + n2] += a * r2[n2]
        return self._of(mq, mt, rows)

    def shift(self, i: int, n: int) -> FormalSeries:
        """Multiply by q^i t^n."""
        rows = [[0] * (self.maxt + 1) for _ in range(self.maxq + 1)]
        for a in range(self.maxq + 1 - i):
            for b in range(self.maxt + 1 - n):
                rows[a + i][b + n] = self.c[a][b]
        return self._of(self.maxq, self.maxt, rows)

    def items(self) -> Iterable[tuple[tuple[int, int], int]]:
        for i, row in enumerate(self.c):
            for n, v in enumerate(row):
                if v:
                    yield (i, n), v

    def column(self, n: int) -> list[int]:
        """Coefficients of t^n as a list indexed by the q-degree."""
        return [self.c[i][n] for i in range(self.maxq + 1)]

    def q_list(self) -> list[int]:
        """For univariate series in q: the coefficient list."""
        return self.column(0)


def geometric(i: int, n: int, maxq: int, maxt: int) -> FormalSeries:
    """1 / (1 - q^i t^n), truncated. Needs (i, n) != (0, 0)."""
    if i == 0 and n == 0:
        raise ValueError("1/(1-1) is not a power series")
    rows = [[0] * (maxt + 1) for _ in range(maxq + 1)]
    k = 0
    while k * i <= maxq and k * n <= maxt:
        rows[k * i][k * n] = 1
        k += 1
    return FormalSeries._of(maxq, maxt, rows)


def _product(factors: Iterable[tuple[int, int]], maxq: int, maxt: int) -> FormalSeries:
    out = FormalSeries.one(maxq, maxt)
    for i, n in factors:
        out = out * geometric(i, n, maxq, maxt)
    return out


def _binary_factors(maxq: int, maxt: int, start: int = 0):
    # factors 1/(1 - q^(2^k - 1) t^(2^k)); once 2^k > maxt (or, with no t,
    # 2^k - 1 > maxq) every later factor is 1 + O(beyond truncation)
    k = start
    while True:
        qi, tn = 2 ** k - 1, 2 ** k
        if tn > maxt:
            assert all(2 ** j > maxt for j in range(k, k + 4))
            return
        yield qi, tn
        k += 1


def series_braid_f2(maxq: int, maxt: int) -> FormalSeries:
    """prod_{i>=0} 1/(1 - q^(2^i-1) t^(2^i)): bigraded dims of H_*(Br; F_2)."""
    _check_bounds(maxq, maxt)
    return _product(_binary_factors(maxq, maxt), maxq, maxt)


def series_odd_poincare(maxq: int, maxt: int) -> FormalSeries:
    """q t^3 / (1 - t^2 q^2) * prod_{i>=0} 1/(1 - q^(2^i-1) t^(2^i))."""
    _check_bounds(maxq, maxt)
    base = series_braid_f2(maxq, maxt) * geometric(2, 2, maxq, maxt)
    return base.shift(1, 3)


def series_stable(maxq: int) -> FormalSeries:
    """q / (1 - q^2) * prod_{j>=1} 1/(1 - q^(2^j-1)), univariate in q."""
    if maxq < 1:
        raise ValueError("maxq must be >= 1")
    factors = []
    j = 1
    while 2 ** j - 1 <= maxq:
        factors.append((2 ** j - 1, 0))
        j += 1
    return (_product(factors, maxq, 0) * geometric(2, 0, maxq, 0)).shift(1, 0)


def series_braid_q(maxq: int, maxt: int) -> FormalSeries:
    """Q[x0, x1]/(x1^2): x0 in (q^0, t^1), x1 in (q^1, t^2)."""
    _check_bounds(maxq, maxt)
    g = geometric(0, 1, maxq, maxt)
    return g + g.shift(1, 2)


def series_braid_fp(p: int, maxq: int, maxt: int) -> FormalSeries:
    """F_p[h, y_1, y_2, ...] (x) Lambda[x_0, x_1, ...] for odd p.

    h sits in (q^0, t^1), y_i in (q^(2p^i-2), t^(2p^i)), x_i in
    (q^(2p^i-1), t^(2p^i)).
    """
    if p == 2:
        return series_braid_f2(maxq, maxt)
    _check_bounds(maxq, maxt)
    out = geometric(0, 1, maxq, maxt)
    k = 0
    while 2 * p ** k <= maxt:
        deg = 2 * p ** k
        out = out * (FormalSeries.one(maxq, maxt) + FormalSeries.monomial(deg - 1, deg, maxq, maxt))
        if k >= 1:
            out = out * geometric(deg - 2, deg, maxq, maxt)
        k += 1
    return out


def _check_bounds(maxq: int, maxt: int):
    if maxq < 1 or maxt < 1:
        raise ValueError(f"series bounds must be >= 1, got ({maxq}, {maxt})")


@dataclass
class SeriesDiff:
    checked: int = 0
    mismatches: list[tuple[int, int, int, int]] = field(default_factory=list)  # (i, n, series, computed)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self) -> list[str]:
        return [f"(q^{i}, t^{n}): series {s} != computed {c}" for i, n, s, c in self.mismatches]


def compare(series: FormalSeries, computed: Mapping[tuple[int, int], int]) -> SeriesDiff:
    """Compare coefficients at the (i, n) keys of ``computed`` that lie in range."""
    rep = SeriesDiff()
    for (i, n), v in sorted(computed.items()):
        if i > series.maxq or n > series.maxt:
            continue
        rep.checked += 1
        s = series.coeff(i, n)
        if s != v:
            rep.mismatches.append((i, n, s, v))
    return rep
