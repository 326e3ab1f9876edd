from fractions import Fraction as Rat

from .fields import FieldDesc, FqElem, ZmodElem, field_make, is_irreducible, is_prime
from .poly import QPoly, poly_gcd
from .powerseries import TruncSeries, series_arith, series_exp, series_log
from .ratfn import RatFn, ratfn_substitute_inverse, substitute_inverse

__all__ = [
    "Rat", "FieldDesc", "FqElem", "ZmodElem", "field_make", "is_irreducible",
    "is_prime", "QPoly", "poly_gcd", "TruncSeries", "series_arith",
    "series_exp", "series_log", "RatFn", "ratfn_substitute_inverse",
    "substitute_inverse",
]
