"""Rational-function reconstruction from truncated series and shape checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import QPoly, RatFn, ratfn_substitute_inverse

DEFAULT_MIN_GUARD = 3


@dataclass(frozen=True)
class RecurrenceResult:
    ratfn: RatFn
    recurrence_order: int  # degree of the denominator
    guard: int  # coefficients beyond the 2*complexity needed to pin the recurrence
    complexity: int  # linear complexity: the recurrence holds for n >= complexity


@dataclass(frozen=True)
class NotFound:
    reason: str

    def __bool__(self) -> bool:
        return False


def berlekamp_massey(seq: Sequence[Fraction]) -> tuple[list[Fraction], int]:
    """Shortest recurrence s_n + c_1 s_{n-1} + ... + c_L s_{n-L} = 0 (n >= L) over Q.

    Returns the connection polynomial [1, c_1, ..., c_L'] (L' <= L) and L.
    """
    s = [Fraction(x) for x in seq]
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            if i < len(C):
                d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        newC = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for i, x in enumerate(B):
            newC[i + m] -= coef * x
        if 2 * L <= n:
            B, b, L, m = C, d, n + 1 - L, 1
        else:
            m += 1
        C = newC
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C, L


def find_recurrence(coeffs: Sequence, max_order: int | None = None,
                    min_guard: int = DEFAULT_MIN_GUARD) -> RecurrenceResult | NotFound:
    """Minimal constant-coefficient recurrence fitting every coefficient, as a RatFn.

    A result is only reported if at least ``min_guard`` coefficients beyond
    the 2L needed to determine a recurrence of complexity L are predicted
    correctly.
    """
    s = [Fraction(x) for x in coeffs]
    if max_order is None:
        max_order = (len(s) - min_guard) // 2
    if max_order < 0 or len(s) < 2 * max_order + min_guard:
        raise ValueError(
            f"{len(s)} coefficients cannot support order {max_order} with guard {min_guard}")
    C, L = berlekamp_massey(s)
    if L > max_order:
        return NotFound(f"linear complexity {L} exceeds max order {max_order}")
    guard = len(s) - 2 * L
    if guard < min_guard:
        return NotFound(f"only {guard} guard coefficients, need {min_guard}")
    denom = QPoly(C)
    numer = (QPoly(s) * denom).truncate(L)
    f = RatFn(numer, denom)
    if list(f.series(len(s) - 1)) != s:
        raise AssertionError("reconstructed rational function does not reproduce the input")
    return RecurrenceResult(f, f.denom.degree, guard, L)


@dataclass(frozen=True)
class DenominatorShape:
    pairs: tuple[tuple[int, int], ...]  # (a, b) for each factor 1 - q^a T^b

    def product(self, q: int) -> QPoly:
        out = QPoly([1])
        for a, b in self.pairs:
            out = out * (1 - QPoly.monomial(Fraction(q) ** a, b))
        return out

    def __str__(self) -> str:
        return "{" + ", ".join(f"({a},{b})" for a, b in self.pairs) + "}"


def _factor(q: int, a_range: tuple[int, int], b_range: tuple[int, int]):
    cands = [(b, a) for b in range(b_range[0], b_range[1] + 1)
             for a in range(a_range[0], a_range[1] + 1)]
    polys = [1 - QPoly.monomial(Fraction(q) ** a, b) for b, a in cands]

    @lru_cache(maxsize=None)
    def rec(target: tuple, start: int):
        D = QPoly(target)
        if D.degree == 0:
            return ()
        for idx in range(start, len(cands)):
            F = polys[idx]
            if F.degree > D.degree:
                break
            quot, rem = D.divmod(F)
            if rem.is_zero():
                rest = rec(quot.coeffs, idx)
                if rest is not None:
                    b, a = cands[idx]
                    return ((a, b),) + rest
        return None

    return rec


def denominator_shape(f: RatFn, q: int, a_range: tuple[int, int] = (-4, 4),
                      b_range: tuple[int, int] = (1, 4)) -> DenominatorShape | NotFound:
    """Write denom(f) as prod (1 - q^a T^b), trying factors in (b, a) order."""
    if q < 2:
        raise ValueError("q must be at least 2")
    D = f.denom
    if D[0] != 1:
        return NotFound("denominator does not have constant term 1")
    pairs = _factor(q, tuple(a_range), tuple(b_range))(D.coeffs, 0)
    if pairs is None:
        return NotFound(f"no factorisation into 1 - {q}^a T^b with a in {list(a_range)}, "
                        f"b in {list(b_range)}")
    shape = DenominatorShape(pairs)
    if shape.product(q) != D:
        raise AssertionError("shape factors do not multiply back to the denominator")
    return shape


@dataclass(frozen=True)
class CurveShape:
    genus: int


@dataclass(frozen=True)
class Mismatch:
    reason: str
    part: object  # offending polynomial

    def __bool__(self) -> bool:
        return False


def curve_shape_check(f: RatFn, q: int) -> CurveShape | Mismatch:
    """Check f = P(T) / ((1 - T)(1 - qT)) with deg P even; the genus is deg P / 2."""
    expected = QPoly([1, -1]) * QPoly([1, -q])
    if f.denom != expected:
        return Mismatch(f"denominator is {f.denom}, expected {expected}", f.denom)
    d = f.numer.degree
    if d < 0 or d % 2:
        return Mismatch(f"numerator degree {d} is not even", f.numer)
    return CurveShape(d // 2)


@dataclass(frozen=True)
class FunctionalEquation:
    holds: bool
    residual: RatFn

    def __bool__(self) -> bool:
        return self.holds


def functional_equation_check(f: RatFn, q: int, g: int) -> FunctionalEquation:
    """Does f(1/(qT)) = q^(1-g) T^(2-2g) f(T) hold exactly?"""
    r = ratfn_substitute_inverse(f, q, g)
    return FunctionalEquation(r.is_zero(), r)
