"""Truncated power series with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .poly import QPoly, format_poly


class TruncSeries:
    """Coefficients c_0..c_N of a power series known modulo T^(N+1).

    ``order`` is N.  Binary operations require equal orders; mixing
    precisions is rejected rather than silently truncated.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = tuple(Fraction(x) for x in coeffs)
        if not c:
            raise ValueError("a truncated series needs at least c_0")
        self.coeffs = c

    @classmethod
    def zero(cls, order: int) -> TruncSeries:
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> TruncSeries:
        return cls([1] + [0] * order)

    @classmethod
    def from_poly(cls, p: QPoly, order: int) -> TruncSeries:
        return cls(p[i] for i in range(order + 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _check(self, other: TruncSeries) -> None:
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries")
        if other.order != self.order:
            raise ValueError(
                f"truncation orders differ ({self.order} vs {other.order})")

    def __add__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        return TruncSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> TruncSeries:
        return TruncSeries(-a for a in self.coeffs)

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = len(a)
        out = [Fraction(0)] * n
        for i in range(n):
            if a[i]:
                ai = a[i]
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return TruncSeries(out)

    def scale(self, r) -> TruncSeries:
        return TruncSeries(c * r for c in self.coeffs)

    def invert(self) -> TruncSeries:
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            s = sum((a[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
            out.append(-s * inv0)
        return TruncSeries(out)

    def derivative(self) -> list[Fraction]:
        return [k * c for k, c in enumerate(self.coeffs)][1:]

    def to_poly(self) -> QPoly:
        return QPoly(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncSeries({format_poly(self.coeffs)} + O(T^{self.order + 1}))"


def series_arith(a: TruncSeries, b: TruncSeries | None, op: str) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        if b is not None:
            a._check(b)
        return a.invert()
    raise ValueError(f"unknown series op {op!r}")


def series_exp(s: TruncSeries) -> TruncSeries:
    """exp(s) for s(0) = 0, via n e_n = sum_k k s_k e_{n-k}."""
    c = s.coeffs
    if c[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    out = [Fraction(1)]
    for n in range(1, len(c)):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if c[k]:
                acc += k * c[k] * out[n - k]
        out.append(acc / n)
    return TruncSeries(out)


def series_log(s: TruncSeries) -> TruncSeries:
    c = s.coeffs
    if c[0] != 1:
        raise ValueError("series_log needs constant term 1")
    # n l_n = n c_n - sum_{k<n} k l_k c_{n-k}
    out = [Fraction(0)]
    for n in range(1, len(c)):
        acc = n * c[n]
        for k in range(1, n):
            if out[k] and c[n - k]:
                acc -= k * out[k] * c[n - k]
        out.append(acc / n)
    return TruncSeries(out)
