"""Variety presentations: integer polynomial systems in affine or projective space."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra.fields import FqElem, ZmodElem
from .exprparse import ExprSyntaxError, parse_expr


class VarietyError(ValueError):
    """Malformed or inconsistent variety definition."""


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with integer coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise VarietyError("exponent vector length does not match variable count")
            if c:
                clean[tuple(exps)] = int(c)
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, c: int) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def _other(self, other) -> MultiPoly:
        if isinstance(other, int):
            return MultiPoly.const(self.nvars, other)
        if isinstance(other, MultiPoly) and other.nvars == self.nvars:
            return other
        raise TypeError("incompatible polynomial operand")

    def __add__(self, other) -> MultiPoly:
        other = self._other(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._other(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._other(other) - self

    def __mul__(self, other) -> MultiPoly:
        other = self._other(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise VarietyError("negative exponent in a polynomial")
        out = MultiPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[int, tuple[int, ...]]]:
        """(coefficient, exponents) in graded lexicographic order, largest first."""
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        return [(self.terms[e], e) for e in keys]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def derivative(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for c, e in self.sorted_terms():
            mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_string()!r})"


def parse_poly(text: str, nvars: int) -> MultiPoly:
    def atom(name: str, quoted: bool) -> MultiPoly:
        if quoted or not name.startswith("x") or not name[1:].isdigit():
            raise VarietyError(f"unknown variable {name!r}")
        i = int(name[1:])
        if i >= nvars:
            raise VarietyError(f"variable {name} out of range (ambient has {nvars} coordinates)")
        return MultiPoly.var(nvars, i)

    try:
        return parse_expr(text, atom, lambda c: MultiPoly.const(nvars, c))
    except ExprSyntaxError as exc:
        raise VarietyError(f"syntax error in {text!r}: {exc}") from None


@dataclass(frozen=True)
class VarietyPresentation:
    name: str
    ambient: str  # "affine" | "projective"
    dim: int
    polys: tuple[MultiPoly, ...]
    declared_smooth: bool | None = None

    @property
    def nvars(self) -> int:
        return self.dim + 1 if self.ambient == "projective" else self.dim

    @property
    def projective(self) -> bool:
        return self.ambient == "projective"

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "ambient": {"type": self.ambient, "dim": self.dim},
            "polys": [f.to_string() for f in self.polys],
        }
        if self.declared_smooth is not None:
            d["smooth"] = self.declared_smooth
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    def content_hash(self) -> str:
        """Hash of the mathematical content; the name does not participate."""
        d = self.to_dict()
        del d["name"]
        blob = json.dumps(d, separators=(",", ":"), sort_keys=False)
        return hashlib.sha256(blob.encode()).hexdigest()[:24]


def parse_variety(text) -> VarietyPresentation:
    """Build a validated presentation from a JSON string or an already-decoded dict."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise VarietyError(f"invalid JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise VarietyError("variety document must be a JSON object")
    try:
        name = doc["name"]
        amb = doc["ambient"]
        kind, dim = amb["type"], amb["dim"]
        poly_strs = doc.get("polys", [])
    except (KeyError, TypeError) as exc:
        raise VarietyError(f"missing field {exc}") from None
    if not isinstance(name, str) or not name:
        raise VarietyError("name must be a nonempty string")
    if kind not in ("affine", "projective"):
        raise VarietyError(f"ambient type must be affine or projective, got {kind!r}")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise VarietyError("ambient dim must be a nonnegative integer")
    if not isinstance(poly_strs, list) or not all(isinstance(s, str) for s in poly_strs):
        raise VarietyError("polys must be a list of strings")
    smooth = doc.get("smooth")
    if smooth is not None and not isinstance(smooth, bool):
        raise VarietyError("smooth must be a boolean")
    nvars = dim + 1 if kind == "projective" else dim
    polys = []
    for s in poly_strs:
        f = parse_poly(s, nvars)
        if kind == "projective" and not f.is_homogeneous():
            raise VarietyError(f"polynomial {s!r} is not homogeneous")
        if not f.is_zero():
            polys.append(f)
    return VarietyPresentation(name, kind, dim, tuple(polys), smooth)


def load_variety(path) -> VarietyPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_variety(fh.read())


def eval_poly(f: MultiPoly, point: Sequence):
    """Evaluate at a point whose coordinates all live in one ring (FqElem or ZmodElem)."""
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    if not point:
        raise ValueError("cannot infer the ring of an empty point")
    first = point[0]
    if isinstance(first, FqElem):
        ring = ("F", first.field)
        if any(not isinstance(x, FqElem) or x.field != first.field for x in point):
            raise ValueError("coordinates lie in different rings")
        lift = first.field.elem
    elif isinstance(first, ZmodElem):
        ring = ("Z", first.p, first.k)
        if any(not isinstance(x, ZmodElem) or (x.p, x.k) != ring[1:] for x in point):
            raise ValueError("coordinates lie in different rings")
        lift = lambda c: ZmodElem.of(first.p, first.k, c)  # noqa: E731
    else:
        raise TypeError("coordinates must be FqElem or ZmodElem")
    acc = lift(0)
    for c, e in f.sorted_terms():
        t = lift(c)
        for x, k in zip(point, e):
            if k:
                t = t * x ** k
        acc = acc + t
    return acc


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                c = rows[r][col]
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _eval_int(f: MultiPoly, point: Sequence[int], modulus: int) -> int:
    acc = 0
    for e, c in f.terms.items():
        t = c
        for x, k in zip(point, e):
            if k:
                t = t * pow(x, k, modulus) % modulus
        acc += t
    return acc % modulus


def jacobian_rank_at(V: VarietyPresentation, point: Sequence, p: int | None = None) -> int:
    """Rank over Z/p of the Jacobian of V's equations at a solution mod p."""
    if point and isinstance(point[0], ZmodElem):
        if any(x.k != 1 for x in point):
            raise ValueError("Jacobian rank needs residues at precision 1")
        p = point[0].p
        vals = [x.value for x in point]
    else:
        if p is None:
            raise ValueError("prime p required for integer coordinates")
        vals = [int(x) % p for x in point]
    if len(vals) != V.nvars:
        raise ValueError("point arity does not match the ambient space")
    if any(_eval_int(f, vals, p) for f in V.polys):
        raise ValueError(f"point {tuple(vals)} is not a solution mod {p}")
    if not V.polys or V.nvars == 0:
        return 0
    rows = [[_eval_int(f.derivative(i), vals, p) for i in range(V.nvars)] for f in V.polys]
    return _rank_mod_p(rows, p)
