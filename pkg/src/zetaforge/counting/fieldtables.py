"""Discrete-log, antilog and Zech tables for F_{p^m}.

Elements are integer encodings: the base-p digits of an encoding are the
polynomial-basis coordinates, constant term first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..algebra.fields import FieldDesc, prime_factors


@dataclass(frozen=True, eq=False)
class FieldTables:
    field: FieldDesc
    generator: int
    log: np.ndarray   # size q, log[0] = -1
    exp: np.ndarray   # size q - 1
    zech: np.ndarray  # size q - 1, zech[k] = log(1 + g^k) or -1

    @property
    def q(self) -> int:
        return self.field.q


def enc_to_digits(codes: np.ndarray, p: int, width: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty(codes.shape + (width,), dtype=np.int64)
    rem = codes.copy()
    for i in range(width):
        out[..., i] = rem % p
        rem //= p
    return out


def digits_to_enc(digits: np.ndarray, p: int) -> np.ndarray:
    width = digits.shape[-1]
    weights = p ** np.arange(width, dtype=np.int64)
    return (digits * weights).sum(axis=-1)


def enc_add(a, b, p: int, width: int) -> np.ndarray:
    """Digitwise sum mod p of (packed) encodings."""
    if p == 2:
        return np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    return digits_to_enc((enc_to_digits(a, p, width) + enc_to_digits(b, p, width)) % p, p)


def enc_neg(a, p: int, width: int) -> np.ndarray:
    if p == 2:
        return np.asarray(a, dtype=np.int64)
    return digits_to_enc((-enc_to_digits(a, p, width)) % p, p)


def _mult_matrix(field: FieldDesc, h) -> np.ndarray:
    """Matrix A with digits(h*e) = A @ digits(e) mod p."""
    cols = []
    for j in range(field.m):
        xj = field.elem([1 if i == j else 0 for i in range(field.m)])
        cols.append(list((h * xj).coeffs))
    return np.array(cols, dtype=np.int64).T


def find_generator(field: FieldDesc) -> int:
    """Smallest encoding (starting from the class of x when m > 1) generating F_q^*."""
    q = field.q
    if q == 2:
        return 1
    facs = prime_factors(q - 1)
    start = field.p if field.m > 1 else 2
    one = field.elem(1)
    for code in list(range(start, q)) + list(range(2, start)):
        g = field.from_int(code)
        if all(g ** ((q - 1) // r) != one for r in facs):
            return code
    raise AssertionError("multiplicative group has no generator")  # impossible


@lru_cache(maxsize=16)
def field_tables(field: FieldDesc) -> FieldTables:
    p, m, q = field.p, field.m, field.q
    gcode = find_generator(field)
    g = field.from_int(gcode)
    order = q - 1
    step = max(1, math.isqrt(order))
    # baby steps: g^0 .. g^(step-1)
    a_g = _mult_matrix(field, g)
    baby = np.zeros((step, m), dtype=np.int64)
    baby[0, 0] = 1
    for i in range(1, step):
        baby[i] = a_g @ baby[i - 1] % p
    # giant steps: multiply the whole block by g^step
    a_big = _mult_matrix(field, g ** step)
    blocks, block = [], baby
    for _ in range(-(-order // step)):
        blocks.append(block)
        block = block @ a_big.T % p
    exp = digits_to_enc(np.concatenate(blocks)[:order], p)
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(order, dtype=np.int64)
    if (log[1:] < 0).any():
        raise AssertionError("antilog table is not a bijection")
    d0 = exp % p
    zech = log[exp - d0 + (d0 + 1) % p]
    return FieldTables(field, gcode, log, exp, zech)
