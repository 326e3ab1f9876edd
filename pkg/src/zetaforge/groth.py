"""K_0(Var) tensor Q with L inverted: elements, specialisations, chi_c of cyclic covers.

An element is a finite Q-combination of monomials L^a * [Y_1]...[Y_r],
where the [Y_i] are opaque classes named by the user.  Nothing here tries
to decide relations between such classes; they only acquire values under
a specialisation that assigns them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

from .exprparse import ExprSyntaxError, parse_expr

Key = tuple[int, tuple[str, ...]]  # (power of L, sorted symbol multiset)


class GrothError(ValueError):
    pass


class K0Elem:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        clean = {}
        for (a, syms), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(a), tuple(sorted(syms)))] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> K0Elem:
        return cls({(0, ()): Fraction(c)})

    @classmethod
    def L(cls, a: int = 1) -> K0Elem:
        return cls({(a, ()): Fraction(1)})

    @classmethod
    def symbol(cls, name: str) -> K0Elem:
        return cls({(0, (name,)): Fraction(1)})

    @staticmethod
    def _lift(x) -> K0Elem:
        if isinstance(x, K0Elem):
            return x
        if isinstance(x, (int, Fraction)):
            return K0Elem.const(x)
        raise TypeError(f"cannot use {type(x).__name__} in K0")

    def __add__(self, other) -> K0Elem:
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return K0Elem(out)

    __radd__ = __add__

    def __neg__(self) -> K0Elem:
        return K0Elem({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> K0Elem:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> K0Elem:
        return self._lift(other) - self

    def __mul__(self, other) -> K0Elem:
        other = self._lift(other)
        out: dict[Key, Fraction] = {}
        for (a1, s1), c1 in self.terms.items():
            for (a2, s2), c2 in other.terms.items():
                k = (a1 + a2, tuple(sorted(s1 + s2)))
                out[k] = out.get(k, 0) + c1 * c2
        return K0Elem(out)

    __rmul__ = __mul__

    def scale(self, r) -> K0Elem:
        return K0Elem({k: c * Fraction(r) for k, c in self.terms.items()})

    def __pow__(self, e: int) -> K0Elem:
        if e < 0:
            if len(self.terms) != 1:
                raise GrothError("only monomials in L can be inverted")
            (a, syms), c = next(iter(self.terms.items()))
            if syms:
                raise GrothError("classes of varieties other than L are not invertible")
            return K0Elem({(a * e, ()): c ** e})
        out = K0Elem.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = K0Elem.const(other)
        return isinstance(other, K0Elem) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def symbols(self) -> set[str]:
        return {s for (_, syms) in self.terms for s in syms}

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], -kv[0][0]))

    def _plain(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, syms), c in self.sorted_terms():
            factors = []
            if a == 1:
                factors.append("L")
            elif a:
                factors.append(f"L^{a}" if a > 0 else f"L^({a})")
            run: dict[str, int] = {}
            for s in syms:
                run[s] = run.get(s, 0) + 1
            for s, k in run.items():
                factors.append(f'"{s}"' + (f"^{k}" if k > 1 else ""))
            mag = abs(c)
            mono = "*".join(factors)
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

    def __str__(self) -> str:
        den = lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1
        if den > 1 and len(self.terms) > 1:
            return f"({self.scale(den)._plain()})/{den}"
        return self._plain()

    def __repr__(self) -> str:
        return f"K0Elem({str(self)!r})"


def parse_k0(text: str) -> K0Elem:
    """Parse expressions such as ``(L - 1)/3``, ``L^-1 * "Y" + 2``."""
    def atom(name: str, quoted: bool) -> K0Elem:
        if quoted:
            if not name:
                raise GrothError("empty symbol name")
            return K0Elem.symbol(name)
        if name == "L":
            return K0Elem.L()
        raise GrothError(f"unknown identifier {name!r}; quote symbol names")

    try:
        return parse_expr(text, atom, K0Elem.const, allow_div=True)
    except ExprSyntaxError as exc:
        raise GrothError(f"cannot parse {text!r}: {exc}") from None


# -- two-variable Laurent polynomials, target of the Hodge specialisation -----

class HodgePoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> HodgePoly:
        return cls({(0, 0): c})

    @staticmethod
    def _lift(x) -> HodgePoly:
        return x if isinstance(x, HodgePoly) else HodgePoly.const(x)

    def __add__(self, other) -> HodgePoly:
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return HodgePoly(out)

    __radd__ = __add__

    def __neg__(self) -> HodgePoly:
        return HodgePoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> HodgePoly:
        return self + (-self._lift(other))

    def __mul__(self, other) -> HodgePoly:
        other = self._lift(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return HodgePoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> HodgePoly:
        if e < 0:
            if len(self.terms) != 1:
                raise GrothError("only monomials are invertible")
            (i, j), c = next(iter(self.terms.items()))
            return HodgePoly({(i * e, j * e): c ** e})
        out = HodgePoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = HodgePoly.const(other)
        return isinstance(other, HodgePoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __call__(self, u, v):
        return sum((c * Fraction(u) ** i * Fraction(v) ** j for (i, j), c in self.terms.items()),
                   Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        den = lcm(*(c.denominator for c in self.terms.values()))
        pieces = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            c = c * den if len(self.terms) > 1 else c
            mono = "".join(
                (name if k == 1 else f"{name}^{k}" if k > 0 else f"{name}^({k})")
                for name, k in (("u", i), ("v", j)) if k)
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        if len(self.terms) > 1 and den > 1:
            return f"({out})/{den}"
        return out

    def __repr__(self) -> str:
        return f"HodgePoly({str(self)!r})"


UV = HodgePoly({(1, 1): 1})


def parse_hodge(text: str) -> HodgePoly:
    def atom(name: str, quoted: bool) -> HodgePoly:
        if not quoted and name == "u":
            return HodgePoly({(1, 0): 1})
        if not quoted and name == "v":
            return HodgePoly({(0, 1): 1})
        raise GrothError(f"Hodge polynomials use only u and v, got {name!r}")

    try:
        return parse_expr(text, atom, HodgePoly.const, allow_div=True)
    except ExprSyntaxError as exc:
        raise GrothError(f"cannot parse {text!r}: {exc}") from None


@dataclass(frozen=True)
class SpecializationMap:
    """Ring morphism out of K0: counting (L -> q), euler (L -> 1) or hodge (L -> uv)."""

    kind: str
    q: int | None = None
    symbol_values: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("counting", "euler", "hodge"):
            raise GrothError(f"unknown specialisation {self.kind!r}")
        if self.kind == "counting" and (self.q is None or self.q < 2):
            raise GrothError("counting specialisation needs q >= 2")

    @classmethod
    def counting(cls, q: int, **symbols) -> SpecializationMap:
        return cls("counting", q, symbols)

    @classmethod
    def euler(cls, **symbols) -> SpecializationMap:
        return cls("euler", None, symbols)

    @classmethod
    def hodge(cls, **symbols) -> SpecializationMap:
        return cls("hodge", None, {k: HodgePoly._lift(v) for k, v in symbols.items()})

    def image_of_L(self):
        if self.kind == "counting":
            return Fraction(self.q)
        if self.kind == "euler":
            return Fraction(1)
        return UV


def specialize(e: K0Elem, s: SpecializationMap):
    """Image of ``e``: a Fraction (counting, euler) or a HodgePoly (hodge)."""
    missing = e.symbols() - set(s.symbol_values)
    if missing:
        raise GrothError(f"no value assigned to symbol(s) {sorted(missing)} for {s.kind}")
    lv = s.image_of_L()
    total = HodgePoly() if s.kind == "hodge" else Fraction(0)
    for (a, syms), c in e.terms.items():
        t = lv ** a
        for name in syms:
            val = s.symbol_values[name]
            t = t * (val if s.kind == "hodge" else Fraction(val))
        total = total + t * c
    return total


# -- chi_c of the formulas phi_{Y,X,C} for cyclic C -----------------------

def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class CoverSpec:
    """Data of an unramified Galois cover Y -> X with a cyclic subgroup C of G.

    ``classes[d]`` is [Y/A_d], A_d the subgroup of C of order d.
    """

    c_order: int
    group_order: int
    normalizer_order: int
    classes: Mapping[int, K0Elem]

    def __post_init__(self):
        if self.c_order < 1:
            raise GrothError("|C| must be >= 1")
        if self.normalizer_order % self.c_order or self.group_order % self.normalizer_order:
            raise GrothError("need |C| | |N_G(C)| | |G|")
        missing = [d for d in divisors(self.c_order) if d not in self.classes]
        if missing:
            raise GrothError(f"missing class [Y/A_d] for d in {missing}")
        extra = [d for d in self.classes if self.c_order % d]
        if extra:
            raise GrothError(f"{extra} do not divide |C| = {self.c_order}")


def parse_cover_spec(text) -> CoverSpec:
    doc = json.loads(text) if isinstance(text, (str, bytes)) else text
    try:
        classes = {int(d): parse_k0(expr) if isinstance(expr, str) else K0Elem.const(expr)
                   for d, expr in doc["classes"].items()}
        return CoverSpec(int(doc["c_order"]), int(doc["group_order"]),
                         int(doc["normalizer_order"]), classes)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GrothError):
            raise
        raise GrothError(f"malformed cover spec: {exc}") from None


def power_cover_spec(n: int, c_order: int = 1) -> CoverSpec:
    """The cover G_m -> G_m, y -> y^n, Galois group mu_n, every quotient of class L - 1."""
    return CoverSpec(c_order, n, n, {d: K0Elem.L() - 1 for d in divisors(c_order)})


def chi_c_cover(spec: CoverSpec) -> tuple[dict[int, K0Elem], K0Elem]:
    """Solve d [Y/A_d] = sum_{d' | d} d' chi_c(phi_{Y,Y/A_d',A_d'}) for each divisor d.

    Returns the table d -> chi_c(phi_{Y,Y/A_d,A_d}) and
    chi_c(phi_{Y,X,C}) = (|C| / |N_G(C)|) * table[|C|].
    """
    table: dict[int, K0Elem] = {}
    for d in divisors(spec.c_order):
        acc = spec.classes[d].scale(d)
        for d2 in divisors(d)[:-1]:
            acc = acc - table[d2].scale(d2)
        table[d] = acc.scale(Fraction(1, d))
    # for C = e this is [Y]/|G|, since N_G(e) = G
    result = table[spec.c_order].scale(Fraction(spec.c_order, spec.normalizer_order))
    return table, result


@dataclass(frozen=True)
class IntegralityReport:
    euler_result: Fraction
    euler_table: dict
    integral: bool
    vanishes: bool  # relevant when |C| > 1


class IntegralityError(AssertionError):
    pass


def euler_integrality_check(spec: CoverSpec, symbol_values: Mapping[str, int] | None = None
                            ) -> IntegralityReport:
    """Eu(chi_c(phi_{Y,X,C})) must be an integer, and zero when C is nontrivial."""
    s = SpecializationMap.euler(**(symbol_values or {}))
    table, result = chi_c_cover(spec)
    eu_table = {d: specialize(t, s) for d, t in table.items()}
    eu = specialize(result, s)
    rep = IntegralityReport(eu, eu_table, eu.denominator == 1, eu == 0)
    if not rep.integral:
        raise IntegralityError(f"Eu = {eu} is not an integer; the cover classes are inconsistent")
    if spec.c_order > 1 and not rep.vanishes:
        raise IntegralityError(f"Eu = {eu} should vanish for |C| = {spec.c_order} > 1")
    return rep
