"""Exact point counting over F_{q^n}, Z/p^(n+1), and liftable counts."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.fields import FieldDesc, field_make
from ..varieties import VarietyPresentation
from .cache import CountCache
from .errors import BudgetExceeded, CountingError, SmoothnessAuditError, Unstable
from .finite import DEFAULT_BUDGET, count_Fq, enumerate_solutions_fq
from .padic import (DEFAULT_WINDOW, LiftableCount, count_liftable, count_padic,
                    enumerate_solutions_zmod, padic_counts)

KINDS = ("weil", "igusa", "serre")


@dataclass
class CountSequence:
    """Counts N_n (weil, from n=1) or N~_n / N-bar_n (igusa / serre, from n=0)."""

    kind: str
    variety: VarietyPresentation
    p: int
    m: int  # extension degree of the base field for weil; 1 otherwise
    values: list[int]
    meta: list[str] = field(default_factory=list)

    @property
    def start(self) -> int:
        return 1 if self.kind == "weil" else 0

    @property
    def q(self) -> int:
        return self.p ** self.m

    def __getitem__(self, n: int) -> int:
        i = n - self.start
        if not 0 <= i < len(self.values):
            raise IndexError(f"no {self.kind} count for n={n}")
        return self.values[i]

    def indices(self) -> range:
        return range(self.start, self.start + len(self.values))

    def check(self) -> None:
        if any(v < 0 for v in self.values):
            raise CountingError("negative count")
        if self.kind == "weil" and self.variety.projective:
            for n in self.indices():
                qn = self.q ** n
                bound = (qn ** (self.variety.dim + 1) - 1) // (qn - 1)
                if self[n] > bound:
                    raise CountingError(f"N_{n} = {self[n]} exceeds |P^{self.variety.dim}(F_{qn})|")


def cache_base(kind: str, p: int, m: int = 1) -> str:
    return f"p{p}m{m}" if kind == "weil" else f"p{p}"


def enumerate_solutions(V: VarietyPresentation, ring, chunk: tuple[int, int] = (0, 1), **kw):
    """Stream solutions over a FieldDesc, or over Z/p^k when ``ring = (p, k)``."""
    if isinstance(ring, FieldDesc):
        return enumerate_solutions_fq(V, ring, chunk, **kw)
    p, k = ring
    return enumerate_solutions_zmod(V, p, k, chunk, **kw)


def count_sequence(V: VarietyPresentation, kind: str, p: int, n_max: int, *, m: int = 1,
                   window: int = DEFAULT_WINDOW, workers: int = 1, budget: int = DEFAULT_BUDGET,
                   cache: CountCache | None = None, method: str = "auto",
                   backend: str | None = None) -> CountSequence:
    """Counts for n = 1..n_max (weil) or 0..n_max (igusa, serre), via the cache when given."""
    if kind not in KINDS:
        raise ValueError(f"unknown count kind {kind!r}")
    start = 1 if kind == "weil" else 0
    vhash = V.content_hash()
    base = cache_base(kind, p, m)
    known = cache.load(vhash, kind, base) if cache else {}
    wanted = range(start, n_max + 1)
    fresh: dict[int, tuple[int, str]] = {}
    missing = [n for n in wanted if n not in known]
    if missing:
        if kind == "weil":
            for n in missing:
                fq = field_make(p, m * n)
                fresh[n] = (count_Fq(V, fq, method=method, workers=workers, budget=budget,
                                     backend=backend), "-")
        elif kind == "igusa":
            vals = padic_counts(V, p, max(missing), workers=workers, budget=budget,
                                backend=backend)
            fresh = {n: (vals[n], "-") for n in missing}
        else:
            for n in missing:
                lc = count_liftable(V, p, n, window, budget=budget, backend=backend)
                fresh[n] = (lc.value, lc.meta)
        if cache:
            cache.store(vhash, kind, base, fresh)
    merged = {**known, **fresh}
    seq = CountSequence(kind, V, p, m if kind == "weil" else 1,
                        [merged[n][0] for n in wanted], [merged[n][1] for n in wanted])
    seq.check()
    return seq


__all__ = [
    "BudgetExceeded", "CountCache", "CountSequence", "CountingError", "DEFAULT_BUDGET",
    "DEFAULT_WINDOW", "KINDS", "LiftableCount", "SmoothnessAuditError", "Unstable",
    "cache_base", "count_Fq", "count_liftable", "count_padic", "count_sequence",
    "enumerate_solutions", "padic_counts",
]
