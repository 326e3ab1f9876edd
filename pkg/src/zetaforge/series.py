"""Generating series built from count sequences.

Count arguments may be a ``CountSequence`` or a plain list of integers;
a plain list is read as N_1, N_2, ... for Weil counts and as
N_0, N_1, ... for Igusa and Serre counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import TruncSeries, series_exp
from .counting import CountSequence


class SeriesError(ValueError):
    pass


def _weil_values(counts, order: int) -> list[int]:
    if isinstance(counts, CountSequence):
        if counts.kind != "weil":
            raise SeriesError(f"expected Weil counts, got {counts.kind}")
        vals = list(counts.values)
    else:
        vals = [int(v) for v in counts]
    if len(vals) < order:
        raise SeriesError(f"need N_1..N_{order}, have {len(vals)} counts")
    return vals[:order]


def _level_values(counts, order: int, kind: str) -> list[int]:
    if isinstance(counts, CountSequence):
        if counts.kind != kind:
            raise SeriesError(f"expected {kind} counts, got {counts.kind}")
        if kind == "serre" and any(m.startswith("unstable") for m in counts.meta):
            raise SeriesError("unstable liftable count in range")
        vals = list(counts.values)
    else:
        vals = list(counts)
    if len(vals) < order + 1:
        raise SeriesError(f"need counts for n = 0..{order}, have {len(vals)}")
    return [int(v) for v in vals[:order + 1]]


def hasse_weil(counts, order: int) -> TruncSeries:
    """Z(T) = exp(sum N_n T^n / n) up to T^order."""
    vals = _weil_values(counts, order)
    z = series_exp(TruncSeries([0] + [Fraction(v, n) for n, v in enumerate(vals, 1)]))
    for n, c in enumerate(z):
        if c.denominator != 1 or c < 0:
            raise AssertionError(f"Z(T) coefficient {n} is {c}, not a nonnegative integer")
    return z


def igusa_series(counts, order: int) -> TruncSeries:
    """Q(T) = sum N~_n T^n."""
    return TruncSeries(_level_values(counts, order, "igusa"))


def serre_series(counts, order: int) -> TruncSeries:
    """P(T) = sum N-bar_n T^n."""
    return TruncSeries(_level_values(counts, order, "serre"))


@dataclass(frozen=True)
class ClosedPointTable:
    counts: tuple[int, ...]  # M_1..M_D

    def __getitem__(self, d: int) -> int:
        return self.counts[d - 1]

    @property
    def D(self) -> int:
        return len(self.counts)

    def resynthesize(self) -> list[int]:
        """N_n = sum_{d | n} d M_d for n = 1..D."""
        return [sum(d * self[d] for d in range(1, n + 1) if n % d == 0)
                for n in range(1, self.D + 1)]


def closed_points(counts, D: int) -> ClosedPointTable:
    """Closed points of each degree d <= D from N_1..N_D (Moebius inversion by induction)."""
    vals = _weil_values(counts, D)
    M: list[int] = []
    for n in range(1, D + 1):
        rest = vals[n - 1] - sum(d * M[d - 1] for d in range(1, n) if n % d == 0)
        if rest % n:
            raise SeriesError(f"N_{n} inconsistent: {rest} not divisible by {n}")
        m = rest // n
        if m < 0:
            raise SeriesError(f"negative number of closed points of degree {n}")
        M.append(m)
    return ClosedPointTable(tuple(M))


def euler_product(table: ClosedPointTable, order: int) -> list[int]:
    """Coefficients of prod_d (1 - T^d)^(-M_d) up to T^order."""
    if table.D < order:
        raise SeriesError("closed-point table too short")
    out = [1] + [0] * order
    for d in range(1, order + 1):
        M = table[d]
        if not M:
            continue
        # (1 - T^d)^(-M) = sum_k C(M + k - 1, k) T^(dk)
        factor = [0] * (order + 1)
        for k in range(order // d + 1):
            factor[d * k] = comb(M + k - 1, k)
        out = [sum(out[i] * factor[n - i] for i in range(n + 1)) for n in range(order + 1)]
    return out


def sym_product_counts(counts, order: int) -> list[int]:
    """b_n = |X^(n)(F_q)|, the number of degree-n effective zero cycles, for n = 0..order."""
    b = euler_product(closed_points(counts, order), order)
    z = hasse_weil(counts, order)
    if [int(c) for c in z] != b:
        raise AssertionError("Euler product over closed points disagrees with exp formula")
    return b
