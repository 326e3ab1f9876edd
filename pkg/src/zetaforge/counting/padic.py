"""Solution counts modulo p^(n+1) and liftable (approximate-solution) counts.

Reduction mod p^l sends solutions mod p^(l+1) to solutions mod p^l, so the
solutions at each level are found exhaustively by testing the p^dim
candidates s + p^l*t above every solution s of the previous level.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..varieties import MultiPoly, VarietyPresentation, jacobian_rank_at
from .errors import BudgetExceeded, SmoothnessAuditError, Unstable
from .finite import DEFAULT_BUDGET, split_ranges
from .kernels import get_backend

COMPILED_LIMIT = 2 ** 62
DEFAULT_WINDOW = 2
PRECISION_CEILING = 12  # m <= n + 12


@dataclass(frozen=True)
class _ZSystem:
    nvars: int
    coef: tuple[int, ...]
    exps: np.ndarray
    poff: np.ndarray


def compile_zmod(polys: list[MultiPoly], nvars: int) -> _ZSystem:
    coef, rows, poff = [], [], [0]
    for f in polys:
        for c, e in f.sorted_terms():
            coef.append(c)
            rows.append(e)
        poff.append(len(coef))
    exps = np.ascontiguousarray(np.array(rows, dtype=np.int64).reshape(len(rows), nvars))
    return _ZSystem(nvars, tuple(coef), exps, np.array(poff, dtype=np.int64))


class Lifter:
    """Generates the next level of solutions, tracking the tuples visited."""

    def __init__(self, V: VarietyPresentation, p: int, budget: int = DEFAULT_BUDGET,
                 backend: str | None = None):
        if V.projective:
            raise ValueError("p-adic counting needs an affine presentation")
        self.sys = compile_zmod(list(V.polys), V.nvars)
        self.p = p
        self.budget = budget
        self.backend = backend
        self.visited = 0

    def root(self):
        return np.zeros((1, self.sys.nvars), dtype=np.int64)

    def lift(self, parents, level: int):
        """Solutions mod p^(level+1) lying over ``parents`` (solutions mod p^level)."""
        s, p = self.sys, self.p
        npar = len(parents)
        cost = npar * p ** s.nvars
        self.visited += cost
        if self.visited > self.budget:
            raise BudgetExceeded(self.visited, self.budget)
        if npar == 0:
            return parents
        pk = p ** level
        modulus = pk * p
        coef = [c % modulus for c in s.coef]
        if modulus < COMPILED_LIMIT and isinstance(parents, np.ndarray):
            kern = get_backend(self.backend)
            return kern.zmod_lift(np.array(coef, dtype=np.int64), s.exps, s.poff, p, pk,
                                  parents, s.nvars)
        out = get_backend("python").zmod_lift(coef, s.exps, s.poff, p, pk, parents, s.nvars)
        return out


def _levels_task(args):
    V, p, top, parents, budget, backend = args
    lifter = Lifter(V, p, budget, backend)
    counts = [len(parents)]
    for level in range(1, top):
        parents = lifter.lift(parents, level)
        counts.append(len(parents))
    return counts, lifter.visited


def padic_counts(V: VarietyPresentation, p: int, n_max: int, *, workers: int = 1,
                 chunks: int | None = None, budget: int = DEFAULT_BUDGET,
                 backend: str | None = None) -> list[int]:
    """[N~_0, ..., N~_{n_max}] where N~_n = #solutions mod p^(n+1)."""
    if n_max < 0:
        raise ValueError("level must be >= 0")
    lifter = Lifter(V, p, budget, backend)
    level1 = lifter.lift(lifter.root(), 0)
    pieces = split_ranges(len(level1), chunks or workers)
    remaining = budget - lifter.visited
    tasks = [(V, p, n_max + 1, level1[a:b], remaining, backend) for a, b in pieces]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_levels_task, tasks))
    else:
        results = [_levels_task(t) for t in tasks]
    visited = lifter.visited + sum(v for _, v in results)
    if visited > budget:
        raise BudgetExceeded(visited, budget)
    totals = [0] * (n_max + 1)
    for counts, _ in results:
        for i, c in enumerate(counts):
            totals[i] += c
    return totals


def count_padic(V: VarietyPresentation, p: int, n: int, **kw) -> int:
    """N~_n = |V(Z/p^(n+1))|."""
    return padic_counts(V, p, n, **kw)[n]


def solutions_mod(V: VarietyPresentation, p: int, k: int, budget: int = DEFAULT_BUDGET,
                  backend: str | None = None):
    """All solutions mod p^k (k >= 1), sorted lexicographically."""
    lifter = Lifter(V, p, budget, backend)
    sols = lifter.root()
    for level in range(k):
        sols = lifter.lift(sols, level)
    rows = [tuple(int(x) for x in r) for r in (sols.tolist() if isinstance(sols, np.ndarray) else sols)]
    return sorted(rows)


def audit_smooth(V: VarietyPresentation, p: int, budget: int = DEFAULT_BUDGET,
                 backend: str | None = None) -> int:
    """Check the Jacobian has full rank at every solution mod p; returns the number checked."""
    need = len(V.polys)
    sols = solutions_mod(V, p, 1, budget, backend)
    for pt in sols:
        r = jacobian_rank_at(V, pt, p)
        if r < need:
            raise SmoothnessAuditError(pt, r, need, p)
    return len(sols)


@dataclass(frozen=True)
class LiftableCount:
    value: int
    m_reached: int  # precision p^(m+1) at which stability was confirmed
    smooth_shortcut: bool
    history: tuple[int, ...] = ()  # image sizes for m = n, n+1, ...

    @property
    def meta(self) -> str:
        return "smooth" if self.smooth_shortcut else f"m={self.m_reached}"


def count_liftable(V: VarietyPresentation, p: int, n: int, window: int = DEFAULT_WINDOW, *,
                   budget: int = DEFAULT_BUDGET, backend: str | None = None,
                   ceiling: int = PRECISION_CEILING, use_smooth: bool = True) -> LiftableCount:
    """N-bar_n: residues mod p^(n+1) that lift to solutions mod p^(m+1) for all large m.

    The image of the solutions mod p^(m+1) is computed for m = n, n+1, ...
    until it is unchanged for ``window`` consecutive steps; reaching
    m = n + ceiling first raises ``Unstable``.
    """
    if window < 1:
        raise ValueError("stabilisation window must be >= 1")
    if use_smooth and V.declared_smooth:
        audit_smooth(V, p, budget, backend)
        return LiftableCount(count_padic(V, p, n, budget=budget, backend=backend), n, True)
    lifter = Lifter(V, p, budget, backend)
    roots = lifter.root()
    for level in range(n + 1):
        roots = lifter.lift(roots, level)
    top = n + 1 + ceiling  # deepest level examined: m = n + ceiling

    def deepest(node, level):
        # greedy DFS: stop as soon as one descendant reaches the top level
        if level >= top:
            return level
        kids = lifter.lift(node.reshape(1, -1) if isinstance(node, np.ndarray) else [node], level)
        best = level
        for kid in kids:
            best = max(best, deepest(kid, level + 1))
            if best >= top:
                break
        return best

    depths = [deepest(r, n + 1) for r in roots]
    history = []
    for m in range(n, n + ceiling + 1):
        v = sum(1 for d in depths if d >= m + 1)
        if history and v > history[-1]:
            raise AssertionError("image of solutions grew with the precision")
        history.append(v)
        if len(history) > window and len(set(history[-window - 1:])) == 1:
            return LiftableCount(v, m, False, tuple(history))
    raise Unstable(n, n + ceiling, history[-1], history)


def liftable_counts(V: VarietyPresentation, p: int, n_max: int, window: int = DEFAULT_WINDOW,
                    **kw) -> list[LiftableCount]:
    return [count_liftable(V, p, n, window, **kw) for n in range(n_max + 1)]


def enumerate_solutions_zmod(V: VarietyPresentation, p: int, k: int, chunk: tuple[int, int] = (0, 1),
                             budget: int = DEFAULT_BUDGET, backend: str | None = None):
    """Solutions mod p^k in lexicographic order, restricted to the i-th of n index slices."""
    i, n = chunk
    if not 0 <= i < n:
        raise ValueError("chunk index out of range")
    modulus = p ** k
    total = modulus ** V.nvars
    a, b = split_ranges(total, n)[i] if i < len(split_ranges(total, n)) else (0, 0)
    for pt in solutions_mod(V, p, k, budget, backend):
        idx = 0
        for x in pt:
            idx = idx * modulus + x
        if a <= idx < b:
            yield pt
