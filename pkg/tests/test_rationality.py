from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforge.algebra import QPoly, RatFn
from zetaforge.counting import count_sequence
from zetaforge.rationality import (CurveShape, Mismatch, NotFound, berlekamp_massey,
                                   curve_shape_check, denominator_shape, find_recurrence,
                                   functional_equation_check)
from zetaforge.series import hasse_weil, igusa_series, serre_series

from conftest import A1, A2, CUSP, ELLIPTIC, FAT, P1, TWO_POINTS, X2_MINUS_3, variety


def fits_order(seq, r):
    """Oracle: does some recurrence s_n = sum_{i<=r} c_i s_{n-i} hold for all n >= r?"""
    if r == 0:
        return all(x == 0 for x in seq)
    rows = [[seq[n - i] for i in range(1, r + 1)] for n in range(r, len(seq))]
    if not rows:
        return True
    A = sympy.Matrix(rows)
    b = sympy.Matrix([seq[n] for n in range(r, len(seq))])
    return A.rank() == A.row_join(b).rank()


def test_find_recurrence_examples():
    r = find_recurrence([1] * 6)
    assert r.ratfn == RatFn(1, [1, -1]) and r.recurrence_order == 1
    r = find_recurrence([1, 3, 3, 9, 9, 27, 27, 81])
    assert r.ratfn == RatFn([1, 3], [1, 0, -3]) and r.recurrence_order == 2
    assert r.guard == 4
    r = find_recurrence([1, 3, 7, 15, 31, 63, 127, 255])
    assert r.ratfn == RatFn(1, QPoly([1, -1]) * QPoly([1, -2]))


def test_find_recurrence_not_found_and_errors():
    # 8 generic values leave no room for a guarded fit
    res = find_recurrence([1, 5, 2, 8, 3, 9, 4, 11])
    assert isinstance(res, NotFound) and not res
    with pytest.raises(ValueError):
        find_recurrence([1, 2, 3], max_order=2)
    res = find_recurrence([2 ** n + 3 ** n + 5 ** n for n in range(12)], max_order=2)
    assert isinstance(res, NotFound)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3),
       st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_recovers_planted_rational_functions(num, den_tail):
    f = RatFn(QPoly(num), QPoly([1] + den_tail))
    if f.is_zero():
        return
    coeffs = list(f.series(13))
    r = find_recurrence(coeffs)
    assert r and r.ratfn == f
    assert list(r.ratfn.series(len(coeffs) - 1)) == coeffs
    assert r.recurrence_order == r.ratfn.denom.degree
    assert r.guard >= 3


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=9, max_size=12))
def test_recurrence_is_minimal(seq):
    C, L = berlekamp_massey(seq)
    assert fits_order(seq, L)
    if L > 0:
        assert not fits_order(seq, L - 1)
    r = find_recurrence(seq, max_order=(len(seq) - 3) // 2)
    if r:
        assert list(r.ratfn.series(len(seq) - 1)) == [Fraction(x) for x in seq]
        assert r.complexity == L


def test_denominator_shape_examples():
    assert str(denominator_shape(RatFn(1, [1, 0, -3]), 3)) == "{(1,2)}"
    s = denominator_shape(RatFn(1, QPoly([1, -1]) * QPoly([1, -2])), 2)
    assert s.pairs == ((0, 1), (1, 1))
    assert isinstance(denominator_shape(RatFn(1, [1, 0, 0, -5]), 2), NotFound)
    # multiplicities and negative exponents
    D = QPoly([1, Fraction(-1, 4)]) ** 2 * QPoly([1, 0, -8])
    s = denominator_shape(RatFn(1, D), 2)
    assert s.pairs == ((-2, 1), (-2, 1), (3, 2))
    assert s.product(2) == D


def test_curve_shape_examples():
    assert curve_shape_check(RatFn(1, QPoly([1, -1]) * QPoly([1, -2])), 2) == CurveShape(0)
    r = find_recurrence(hasse_weil(count_sequence(ELLIPTIC, "weil", 5, 8), 8))
    assert r.ratfn.numer == QPoly([1, 3, 5])
    assert curve_shape_check(r.ratfn, 5) == CurveShape(1)
    m = curve_shape_check(RatFn(1, [1, -1]), 2)
    assert isinstance(m, Mismatch) and not m
    m = curve_shape_check(RatFn([1, 1], QPoly([1, -1]) * QPoly([1, -2])), 2)
    assert isinstance(m, Mismatch) and m.part == QPoly([1, 1])


def test_functional_equation_examples():
    zp1 = find_recurrence(hasse_weil(count_sequence(P1, "weil", 3, 6), 6)).ratfn
    assert functional_equation_check(zp1, 3, 0)
    ze = find_recurrence(hasse_weil(count_sequence(ELLIPTIC, "weil", 5, 8), 8)).ratfn
    assert functional_equation_check(ze, 5, 1)
    fe = functional_equation_check(RatFn(1, [1, -1]), 2, 0)
    assert not fe.holds
    assert fe.residual == RatFn([0, 2, 0, -4], QPoly([1, -1]) * QPoly([1, -2]))
    assert not functional_equation_check(ze, 5, 0)


NODE = variety("node", "affine", 2, ["x0*x1"])


@pytest.mark.parametrize("V, p, kind, order", [
    (A1, 2, "igusa", 10), (A2, 2, "igusa", 10), (FAT, 3, "igusa", 10), (FAT, 2, "igusa", 10),
    (TWO_POINTS, 3, "igusa", 10), (X2_MINUS_3, 3, "igusa", 10), (NODE, 2, "igusa", 10),
    (FAT, 3, "serre", 10), (TWO_POINTS, 3, "serre", 10), (NODE, 2, "serre", 8),
], ids=lambda x: getattr(x, "name", str(x)))
def test_shapes_for_level_series(V, p, kind, order):
    counts = count_sequence(V, kind, p, order)
    series = igusa_series(counts, order) if kind == "igusa" else serre_series(counts, order)
    r = find_recurrence(series)
    assert r, r
    m = V.nvars
    shape = denominator_shape(r.ratfn, p, (-2 * m, 2 * m), (1, order))
    assert shape, shape
    assert shape.product(p) == r.ratfn.denom


def test_node_liftable_counts():
    # (x, y) lifts iff x or y vanishes mod p^(n+1)
    counts = count_sequence(NODE, "serre", 2, 5)
    assert counts.values == [2 * 2 ** (n + 1) - 1 for n in range(6)]


def test_cusp_shape_needs_wider_exponent_range():
    # (1 - 2T)(1 - 2^7 T^6): a = 7 lies outside [-4, 4] but within |a| <= m*b
    series = igusa_series(count_sequence(CUSP, "igusa", 2, 16), 16)
    r = find_recurrence(series)
    assert r.complexity == 7
    assert isinstance(denominator_shape(r.ratfn, 2, (-4, 4), (1, 16)), NotFound)
    shape = denominator_shape(r.ratfn, 2, (-12, 12), (1, 16))
    assert shape.pairs == ((1, 1), (7, 6))
    assert all(abs(a) <= 2 * b for a, b in shape.pairs)
