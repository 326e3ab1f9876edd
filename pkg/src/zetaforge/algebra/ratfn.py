"""Rational functions in one variable T over Q, in canonical form."""
from __future__ import annotations

from fractions import Fraction

from .poly import QPoly, poly_gcd
from .powerseries import TruncSeries


class RatFn:
    """numer/denom with gcd 1 and the lowest nonzero coefficient of denom equal to 1.

    For every series-derived function denom(0) != 0, so the normalisation
    reads denom(0) = 1.  Residuals of the functional equation may carry a
    pole at T = 0; they are normalised on their lowest-order term instead.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom=1):
        n = numer if isinstance(numer, QPoly) else QPoly(
            numer if isinstance(numer, (list, tuple)) else [numer])
        d = denom if isinstance(denom, QPoly) else QPoly(
            denom if isinstance(denom, (list, tuple)) else [denom])
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        if n.is_zero():
            self.numer, self.denom = QPoly(), QPoly([1])
            return
        g = poly_gcd(n, d)
        if g.degree > 0:
            n, d = n // g, d // g
        k = d.low_order()
        lead = d[k]
        self.numer = n.scale(1 / lead)
        self.denom = d.scale(1 / lead)

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def has_pole_at_zero(self) -> bool:
        return self.denom[0] == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFn(other)
        return (isinstance(other, RatFn) and self.numer == other.numer
                and self.denom == other.denom)

    def __hash__(self) -> int:
        return hash((self.numer, self.denom))

    def __add__(self, other) -> RatFn:
        other = _as_ratfn(other)
        return RatFn(self.numer * other.denom + other.numer * self.denom,
                     self.denom * other.denom)

    __radd__ = __add__

    def __neg__(self) -> RatFn:
        return RatFn(-self.numer, self.denom)

    def __sub__(self, other) -> RatFn:
        return self + (-_as_ratfn(other))

    def __mul__(self, other) -> RatFn:
        other = _as_ratfn(other)
        return RatFn(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def __call__(self, x):
        return Fraction(self.numer(x)) / self.denom(x)

    def series(self, order: int) -> TruncSeries:
        if self.has_pole_at_zero():
            raise ValueError("rational function has a pole at T = 0")
        num = TruncSeries.from_poly(self.numer, order)
        den = TruncSeries.from_poly(self.denom, order)
        return num * den.invert()

    def cleared(self) -> tuple[list[int], list[int]]:
        """Integer coefficient lists of numer and denom after clearing denominators.

        Both are scaled by the same positive rational, so the quotient is
        unchanged; denom keeps a positive constant (lowest) term.
        """
        from math import lcm

        dens = [c.denominator for c in self.numer.coeffs + self.denom.coeffs]
        m = lcm(*dens) if dens else 1
        return ([int(c * m) for c in self.numer.coeffs],
                [int(c * m) for c in self.denom.coeffs])

    def __repr__(self) -> str:
        return f"RatFn(({self.numer}) / ({self.denom}))"

    def __str__(self) -> str:
        from .poly import format_poly

        num, den = self.cleared()
        return f"({format_poly(num)}) / ({format_poly(den)})"


def _as_ratfn(x) -> RatFn:
    if isinstance(x, RatFn):
        return x
    if isinstance(x, QPoly):
        return RatFn(x)
    if isinstance(x, (int, Fraction)):
        return RatFn(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational function")


def _laurent(numer: QPoly, denom: QPoly, shift: int) -> RatFn:
    """T^shift * numer / denom for any integer shift."""
    if shift >= 0:
        return RatFn(numer.shift(shift), denom)
    return RatFn(numer, denom.shift(-shift))


def substitute_inverse(f: RatFn, q: int) -> RatFn:
    """f(1/(qT)) as a rational function in T."""
    q = Fraction(q)
    dn, dd = f.numer.degree, f.denom.degree
    # p(1/(qT)) * T^deg p is a polynomial in T
    num = QPoly(f.numer[dn - i] / q ** (dn - i) for i in range(dn + 1)) if dn >= 0 else QPoly()
    den = QPoly(f.denom[dd - i] / q ** (dd - i) for i in range(dd + 1))
    return _laurent(num, den, dd - dn)


def ratfn_substitute_inverse(f: RatFn, q: int, g: int) -> RatFn:
    """q^(1-g) T^(2-2g) f(T) - f(1/(qT)); zero iff the curve functional equation holds."""
    if q < 2:
        raise ValueError("q must be at least 2")
    lhs = _laurent(f.numer.scale(Fraction(q) ** (1 - g)), f.denom, 2 - 2 * g)
    return lhs - substitute_inverse(f, q)
