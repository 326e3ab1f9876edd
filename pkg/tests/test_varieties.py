import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforge.algebra import ZmodElem, field_make
from zetaforge.varieties import (MultiPoly, VarietyError, eval_poly, jacobian_rank_at,
                                 load_variety, parse_poly, parse_variety)

from conftest import DATA, ELLIPTIC, FAT, SMOOTH_CURVE, TWISTED, variety


def test_parse_roundtrip_canonical():
    V = parse_variety('{"name": "E", "ambient": {"type": "projective", "dim": 2}, '
                      '"polys": ["x1^2*x2 - (x0^3 + x0*x2^2 + x2^3)"]}')
    W = parse_variety(V.to_json())
    assert W == V
    assert W.to_json() == V.to_json()
    assert V.polys[0] == ELLIPTIC.polys[0]


def test_content_hash_ignores_name():
    a = variety("a", "affine", 1, ["x0^2"])
    b = variety("b", "affine", 1, ["x0*x0"])
    assert a.content_hash() == b.content_hash()
    assert a.content_hash() != variety("a", "affine", 1, ["x0^3"]).content_hash()


def test_zero_polynomials_are_dropped():
    V = variety("z", "affine", 2, ["x0 - x0", "x1"])
    assert len(V.polys) == 1


@pytest.mark.parametrize("doc", [
    '{"name": "P", "ambient": {"type": "projective", "dim": 1}, "polys": ["x0^2 + x1"]}',
    '{"name": "A", "ambient": {"type": "affine", "dim": 1}, "polys": ["x1"]}',
    '{"name": "A", "ambient": {"type": "affine", "dim": 1}, "polys": ["x0 +"]}',
    '{"name": "A", "ambient": {"type": "affine", "dim": 1}, "polys": ["x0^(-1)"]}',
    '{"name": "A", "ambient": {"type": "affine", "dim": 1}, "polys": ["y"]}',
    '{"name": "A", "ambient": {"type": "weird", "dim": 1}, "polys": []}',
    '{"name": "A", "ambient": {"type": "affine", "dim": -1}, "polys": []}',
    '{"name": "A", "ambient": {"type": "affine"}}',
    '{"name": "A", "ambient": {"type": "affine", "dim": 1}, "smooth": "yes"}',
    '[1, 2]',
    'not json',
])
def test_parse_errors(doc):
    with pytest.raises(VarietyError):
        parse_variety(doc)


def test_data_files_load():
    for path in sorted((DATA / "varieties").glob("*.json")):
        V = load_variety(path)
        assert parse_variety(V.to_json()) == V


def test_eval_examples():
    assert eval_poly(parse_poly("x0^2 - 2", 1), [ZmodElem.of(5, 2, 3)]).value == 7
    F2 = field_make(2, 1)
    assert eval_poly(parse_poly("x0*x1 + 1", 2), [F2.elem(1), F2.elem(1)]).is_zero()
    F5 = field_make(5, 1)
    assert eval_poly(parse_poly("x0^3 + x0 + 1", 1), [F5.elem(2)]) == F5.elem(1)
    # coefficients reduce into the ring
    assert eval_poly(parse_poly("x0^2 + 2*x0*x1 - x1^2", 2),
                     [ZmodElem.of(5, 2, 3), ZmodElem.of(5, 2, 1)]).value == 14


def test_eval_errors():
    f = parse_poly("x0 + x1", 2)
    with pytest.raises(ValueError):
        eval_poly(f, [field_make(5, 1).elem(1)])
    with pytest.raises(ValueError):
        eval_poly(f, [field_make(5, 1).elem(1), field_make(7, 1).elem(1)])
    with pytest.raises(ValueError):
        eval_poly(f, [ZmodElem.of(5, 1, 1), ZmodElem.of(5, 2, 1)])


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-30, 30), max_size=5
).map(lambda t: MultiPoly(2, t))


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, st.integers(0, 24), st.integers(0, 24))
def test_eval_is_ring_homomorphism(f, g, a, b):
    F = field_make(5, 2)
    pt = [F.from_int(a), F.from_int(b)]
    assert eval_poly(f + g, pt) == eval_poly(f, pt) + eval_poly(g, pt)
    assert eval_poly(f * g, pt) == eval_poly(f, pt) * eval_poly(g, pt)
    zpt = [ZmodElem.of(3, 3, a), ZmodElem.of(3, 3, b)]
    assert eval_poly(f * g, zpt) == eval_poly(f, zpt) * eval_poly(g, zpt)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.integers(1, 4))
def test_homogeneous_forms_scale(a, b, c, lam):
    # f(lam x) = lam^d f(x) for a homogeneous f of degree d
    F = field_make(5, 1)
    f = ELLIPTIC.polys[0]
    pt = [F.from_int(a), F.from_int(b), F.from_int(c)]
    l = F.from_int(lam)
    assert eval_poly(f, [l * x for x in pt]) == l ** 3 * eval_poly(f, pt)


def test_jacobian_examples():
    # y^2 = x^3 - x - 1 over F_5 is smooth at its points
    assert jacobian_rank_at(SMOOTH_CURVE, [ZmodElem.of(5, 1, 0), ZmodElem.of(5, 1, 2)]) == 1
    assert jacobian_rank_at(FAT, [0], p=3) == 0
    assert jacobian_rank_at(variety("q", "affine", 1, ["x0^2 - 2"]), [ZmodElem.of(7, 1, 4)]) == 1
    assert jacobian_rank_at(variety("A", "affine", 1, []), [ZmodElem.of(7, 1, 3)]) == 0
    assert jacobian_rank_at(TWISTED, [1, 0, 0, 0], p=7) == 2
    with pytest.raises(ValueError):
        jacobian_rank_at(FAT, [1], p=3)
    with pytest.raises(ValueError):
        jacobian_rank_at(FAT, [0])


def test_to_dict_key_order():
    assert list(json.loads(SMOOTH_CURVE.to_json())) == ["name", "ambient", "polys", "smooth"]
