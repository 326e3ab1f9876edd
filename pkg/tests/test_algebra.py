import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforge.algebra import (QPoly, RatFn, TruncSeries, ZmodElem, field_make, is_irreducible,
                               ratfn_substitute_inverse, series_arith, series_exp, series_log)
from zetaforge.algebra.fields import fp_mod

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def trial_division_irreducible(modulus, p):
    """Oracle: no monic factor of degree 1..m//2 divides the modulus."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not fp_mod(list(modulus), list(low) + [1], p):
                return False
    return True


# -- field_make ------------------------------------------------------------

@pytest.mark.parametrize("p, m, modulus", [
    (2, 1, (0, 1)),        # x
    (2, 2, (1, 1, 1)),     # x^2 + x + 1
    (3, 2, (1, 0, 1)),     # x^2 + 1
])
def test_field_make_examples(p, m, modulus):
    assert field_make(p, m).modulus == modulus


@pytest.mark.parametrize("p, m", [(p, m) for p in (2, 3, 5, 7) for m in range(1, 12)
                                  if p ** m <= 3125])
def test_modulus_is_smallest_irreducible(p, m):
    f = field_make(p, m)
    assert trial_division_irreducible(f.modulus, p)
    # every lexicographically smaller monic candidate is reducible
    for low in itertools.product(range(p), repeat=m):
        cand = tuple(low) + (1,)
        if cand == f.modulus:
            break
        assert not trial_division_irreducible(cand, p)


def test_rabin_agrees_with_trial_division():
    for p, m in [(2, 4), (2, 5), (3, 3), (3, 4), (5, 3)]:
        for low in itertools.product(range(p), repeat=m):
            cand = list(low) + [1]
            assert is_irreducible(cand, p) == trial_division_irreducible(cand, p)


@pytest.mark.parametrize("p, m", [(0, 1), (4, 1), (9, 2), (2, 0), (3, -1)])
def test_field_make_errors(p, m):
    with pytest.raises(ValueError):
        field_make(p, m)


def test_field_elements_satisfy_frobenius_identity():
    F = field_make(3, 3)
    for code in range(F.q):
        x = F.from_int(code)
        assert x ** F.q == x
        if code:
            assert x * x.inverse() == F.elem(1)


def test_zmod_arithmetic():
    a = ZmodElem.of(5, 2, 3)
    assert (a * a - 2).value == 7
    with pytest.raises(ValueError):
        ZmodElem(5, 2, 25)
    with pytest.raises(ValueError):
        a + ZmodElem.of(5, 3, 1)


# -- truncated series --------------------------------------------------------

def test_series_arith_examples():
    assert series_arith(TruncSeries([1, -1, 0, 0]), None, "invert") == TruncSeries([1, 1, 1, 1])
    assert series_arith(TruncSeries([1, 1, 0, 0]), TruncSeries([1, -1, 0, 0]), "mul") == \
        TruncSeries([1, 0, -1, 0])
    # (1 - T)(1 - 2T) = 1 - 3T + 2T^2; inverse by long division
    assert TruncSeries([1, -3, 2, 0]).invert() == TruncSeries([1, 3, 7, 15])


def test_series_errors():
    with pytest.raises(ZeroDivisionError):
        TruncSeries([0, 1, 2]).invert()
    with pytest.raises(ValueError):
        TruncSeries([1, 2]) + TruncSeries([1, 2, 3])


def test_series_exp_examples():
    assert series_exp(TruncSeries.zero(5)) == TruncSeries.one(5)
    s = TruncSeries([0] + [Fraction(1, n) for n in range(1, 5)])
    assert series_exp(s) == TruncSeries([1] * 5)
    s = TruncSeries([0] + [Fraction(2 ** n + 1, n) for n in range(1, 4)])
    assert series_exp(s) == TruncSeries([1, 3, 7, 15])
    with pytest.raises(ValueError):
        series_exp(TruncSeries([1, 1]))


def test_series_log_examples():
    assert series_log(TruncSeries.one(4)) == TruncSeries.zero(4)
    assert series_log(TruncSeries([1] * 5)) == TruncSeries([0, 1, Fraction(1, 2), Fraction(1, 3),
                                                            Fraction(1, 4)])
    s = TruncSeries([0, 3, 1, 0, 0, 0])
    assert series_log(series_exp(s)) == s
    with pytest.raises(ValueError):
        series_log(TruncSeries([2, 1]))


@settings(max_examples=60, deadline=None)
@given(st.lists(fractions, min_size=8, max_size=8))
def test_log_exp_roundtrip(tail):
    s = TruncSeries([0] + tail)
    assert series_log(series_exp(s)) == s


@settings(max_examples=60, deadline=None)
@given(st.lists(fractions, min_size=9, max_size=9).filter(lambda c: c[0] != 0))
def test_invert_is_inverse(coeffs):
    a = TruncSeries(coeffs)
    assert a * a.invert() == TruncSeries.one(a.order)


# -- rational functions --------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=4), st.lists(fractions, min_size=1, max_size=3),
       st.lists(fractions, min_size=0, max_size=2))
def test_ratfn_canonical_form(num, den_tail, common):
    den = QPoly([1] + den_tail)
    g = QPoly([1] + common)
    f = RatFn(QPoly(num) * g, den * g)
    again = RatFn(f.numer, f.denom)
    assert again == f
    assert f.denom[0] == 1
    from zetaforge.algebra import poly_gcd
    if not f.is_zero():
        assert poly_gcd(f.numer, f.denom).degree == 0


def _oracle_residual(f, q, g, t):
    """Direct evaluation of q^(1-g) t^(2-2g) f(t) - f(1/(qt)) at a rational point."""
    return Fraction(q) ** (1 - g) * Fraction(t) ** (2 - 2 * g) * f(t) - f(1 / (Fraction(q) * t))


POINTS = [Fraction(2, 7), Fraction(-3, 5), Fraction(11, 3), Fraction(5, 13)]


def test_substitute_inverse_examples():
    f = RatFn(1, QPoly([1, -1]) * QPoly([1, -5]))
    assert ratfn_substitute_inverse(f, 5, 0).is_zero()
    f = RatFn(1, [1, -1])
    r = ratfn_substitute_inverse(f, 2, 0)
    assert not r.is_zero()
    for t in POINTS:
        assert r(t) == _oracle_residual(f, 2, 0, t)
    assert ratfn_substitute_inverse(RatFn(1), 3, 1).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=4), st.lists(fractions, min_size=0, max_size=3),
       st.integers(2, 7), st.integers(0, 3))
def test_substitute_inverse_matches_pointwise(num, den_tail, q, g):
    f = RatFn(QPoly(num), QPoly([1] + den_tail))
    r = ratfn_substitute_inverse(f, q, g)
    for t in POINTS:
        try:
            expected = _oracle_residual(f, q, g, t)
        except ZeroDivisionError:
            continue
        assert r(t) == expected
