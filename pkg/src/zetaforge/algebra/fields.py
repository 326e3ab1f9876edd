"""Finite fields F_{p^m} in polynomial basis and residue rings Z/p^k."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over Z/p as low-degree-first lists of ints ----------------

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_mul(a, b, p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def fp_mod(a, f, p: int) -> list[int]:
    a = _fp_trim([x % p for x in a])
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for j, y in enumerate(f):
            a[shift + j] = (a[shift + j] - c * y) % p
        _fp_trim(a)
    return a


def fp_sub(a, b, p: int) -> list[int]:
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                     for i in range(n)])


def fp_gcd(a, b, p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, fp_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def fp_powmod(base, e: int, f, p: int) -> list[int]:
    out, base = [1], fp_mod(base, f, p)
    while e:
        if e & 1:
            out = fp_mod(fp_mul(out, base, p), f, p)
        base = fp_mod(fp_mul(base, base, p), f, p)
        e >>= 1
    return out


def is_irreducible(modulus, p: int) -> bool:
    """Rabin's test for a monic polynomial over Z/p."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    # cheap rejection: a root in F_p means a linear factor
    for a in range(p):
        v = 0
        for c in reversed(modulus):
            v = (v * a + c) % p
        if v == 0:
            return False
    if m <= 3:
        return True
    x = [0, 1]
    if fp_sub(fp_powmod(x, p ** m, modulus, p), x, p):
        return False
    for r in prime_factors(m):
        h = fp_sub(fp_powmod(x, p ** (m // r), modulus, p), x, p)
        if len(fp_gcd(h, modulus, p)) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldDesc:
    p: int
    m: int
    modulus: tuple[int, ...]  # low degree first, monic, length m + 1

    @property
    def q(self) -> int:
        return self.p ** self.m

    def elem(self, value) -> FqElem:
        if isinstance(value, FqElem):
            return value
        if isinstance(value, int):
            return FqElem(self, _int_digits(value % self.p, self.p, self.m))
        return FqElem(self, tuple(int(c) % self.p for c in value))

    def from_int(self, code: int) -> FqElem:
        """Element whose coefficient digits in base p are those of ``code``."""
        if not 0 <= code < self.q:
            raise ValueError("encoding out of range")
        return FqElem(self, _int_digits(code, self.p, self.m))

    def __str__(self) -> str:
        from .poly import format_poly
        return f"F_{self.p}^{self.m} mod ({format_poly(self.modulus, 'x')})"


def _int_digits(code: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        code, r = divmod(code, p)
        out.append(r)
    return tuple(out)


@lru_cache(maxsize=None)
def field_make(p: int, m: int) -> FieldDesc:
    """F_{p^m} modulo the lexicographically smallest monic irreducible.

    Candidates are ordered by their coefficient tuple read from the
    constant term upward.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not prime")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m!r}")
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return FieldDesc(p, m, tuple(cand))
    raise AssertionError("no irreducible polynomial found")  # impossible


@dataclass(frozen=True)
class FqElem:
    field: FieldDesc
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.m or any(
                not 0 <= c < self.field.p for c in self.coeffs):
            raise ValueError("malformed field element")

    def _lift(self, other) -> FqElem:
        if isinstance(other, int):
            return self.field.elem(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("elements of different fields")
        return other

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.field
        prod = fp_mod(fp_mul(list(self.coeffs), list(other.coeffs), f.p), list(f.modulus), f.p)
        return FqElem(f, tuple(prod + [0] * (f.m - len(prod))))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.field.elem(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> FqElem:
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_int(self) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.p + c
        return out

    def __repr__(self) -> str:
        return f"FqElem({self.to_int()} in F_{self.field.p}^{self.field.m})"


@dataclass(frozen=True)
class ZmodElem:
    p: int
    k: int
    value: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("precision must be >= 1")
        if not 0 <= self.value < self.p ** self.k:
            raise ValueError("residue out of range")

    @classmethod
    def of(cls, p: int, k: int, value: int) -> ZmodElem:
        return cls(p, k, value % p ** k)

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def _lift(self, other):
        if isinstance(other, int):
            return ZmodElem.of(self.p, self.k, other)
        if not isinstance(other, ZmodElem):
            return NotImplemented
        if (other.p, other.k) != (self.p, self.k):
            raise ValueError("elements of different residue rings")
        return other

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ZmodElem.of(self.p, self.k, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return ZmodElem.of(self.p, self.k, -self.value)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ZmodElem.of(self.p, self.k, self.value - other.value)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ZmodElem.of(self.p, self.k, self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent in Z/p^k")
        return ZmodElem(self.p, self.k, pow(self.value, e, self.modulus))

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value
