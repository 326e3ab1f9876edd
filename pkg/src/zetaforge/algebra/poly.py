"""Dense univariate polynomials over Q.

Coefficients are stored low degree first as a tuple of ``Fraction`` with
no trailing zeros; the zero polynomial is the empty tuple.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _trim(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class QPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def monomial(cls, coeff: Scalar, degree: int) -> QPoly:
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def low_order(self) -> int:
        """Index of the lowest nonzero coefficient (T-adic valuation)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no valuation")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPoly([other])
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> QPoly:
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> QPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> QPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> QPoly:
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QPoly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = QPoly([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, r: Scalar) -> QPoly:
        return QPoly(c * r for c in self.coeffs)

    def shift(self, k: int) -> QPoly:
        """Multiply by T^k (k >= 0)."""
        if not self.coeffs:
            return self
        return QPoly([0] * k + list(self.coeffs))

    def divmod(self, other: QPoly) -> tuple[QPoly, QPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                f = c / lead
                quot[k - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= f * b
        return QPoly(quot), QPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: QPoly) -> QPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: QPoly) -> QPoly:
        return self.divmod(other)[1]

    def monic(self) -> QPoly:
        return self.scale(1 / self.lead()) if self.coeffs else self

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self, degree: int | None = None) -> QPoly:
        """T^degree * p(1/T); ``degree`` defaults to deg p."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return QPoly(self[d - i] for i in range(d + 1))

    def truncate(self, n: int) -> QPoly:
        """Keep the terms of degree < n."""
        return QPoly(self.coeffs[:n])

    def __repr__(self) -> str:
        return f"QPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def _coerce(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return QPoly([x])
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd over Q (Euclid); gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def format_poly(coeffs: Sequence[Scalar], var: str = "T") -> str:
    """Render low-degree-first coefficients, e.g. ``1 - 3*T^2``."""
    parts = []
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
