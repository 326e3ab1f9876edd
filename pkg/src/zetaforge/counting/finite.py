"""Point counts over finite fields F_{p^m}.

Projective space is enumerated chart by chart: each point has exactly one
representative whose last nonzero coordinate is 1, so chart j fixes
x_j = 1, x_{j+1..} = 0 and leaves x_0..x_{j-1} free.  This visits
(q^{m+1} - 1)/(q - 1) tuples instead of the q^{m+1} of the affine cone;
the cone count is kept as ``method="cone"`` for cross-checking.

With ``method="auto"`` each chart's system is split into groups of
variables that never share a monomial.  Each group is enumerated on its
own into a histogram of partial values, and the histograms are combined
by counting tuples of partial values summing to zero.  Every tuple of the
chart is still accounted for exactly once.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..algebra.fields import FieldDesc
from ..varieties import MultiPoly, VarietyPresentation
from .errors import BudgetExceeded, CountingError
from .fieldtables import enc_add, enc_neg, field_tables
from .kernels import get_backend

DEFAULT_BUDGET = 10 ** 8


def substitute(f: MultiPoly, fixed: dict[int, int], keep: list[int]) -> MultiPoly:
    """Set the coordinates in ``fixed`` (to 0 or 1) and renumber ``keep`` as x0, x1, ..."""
    out: dict[tuple[int, ...], int] = {}
    for e, c in f.terms.items():
        if any(e[i] and fixed[i] == 0 for i in fixed):
            continue
        ne = tuple(e[i] for i in keep)
        out[ne] = out.get(ne, 0) + c
    return MultiPoly(len(keep), out)


def charts(V: VarietyPresentation) -> list[tuple[list[int], list[MultiPoly]]]:
    """(free coordinate indices, restricted polynomials) for each chart."""
    if not V.projective:
        return [(list(range(V.nvars)), list(V.polys))]
    out = []
    n = V.nvars
    for j in range(n - 1, -1, -1):
        fixed = {j: 1, **{i: 0 for i in range(j + 1, n)}}
        keep = list(range(j))
        out.append((keep, [substitute(f, fixed, keep) for f in V.polys]))
    return out


@dataclass(frozen=True)
class _Compiled:
    k: int
    clog: np.ndarray
    exps: np.ndarray
    poff: np.ndarray


def compile_fq(polys: list[MultiPoly], k: int, p: int, log: np.ndarray) -> _Compiled:
    """Flatten ``polys`` into kernel arrays.

    Variables are reversed so that the kernel's fastest digit is the last
    coordinate; flat indices then enumerate points in lexicographic order.
    """
    clog, rows, poff = [], [], [0]
    for f in polys:
        for c, e in f.sorted_terms():
            c %= p
            if c:
                clog.append(int(log[c]))
                rows.append(list(reversed(e)))
        poff.append(len(clog))
    exps = np.array(rows, dtype=np.int64).reshape(len(rows), k)
    return _Compiled(k, np.array(clog, dtype=np.int64), np.ascontiguousarray(exps),
                     np.array(poff, dtype=np.int64))


def split_ranges(total: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, total)) if total else 1
    base, extra = divmod(total, chunks)
    out, start = [], 0
    for i in range(chunks):
        stop = start + base + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def _scan_task(args):
    field, comp, start, stop, backend, collect = args
    t = field_tables(field)
    kern = get_backend(backend)
    return kern.fq_scan(t.log, t.exp, t.zech, comp.clog, comp.exps, comp.poff,
                        comp.k, start, stop, collect)


def _run_scans(tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [_scan_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_scan_task, tasks))


def _components(polys: list[MultiPoly], k: int) -> tuple[list[list[int]], list[int]]:
    """Groups of variables linked through shared monomials, and unused variables."""
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    used = set()
    for f in polys:
        for e in f.terms:
            vs = [i for i, x in enumerate(e) if x]
            used.update(vs)
            for a in vs[1:]:
                ra, rb = find(vs[0]), find(a)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in sorted(used):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values()), [i for i in range(k) if i not in used]


def _histogram(field, polys, group, with_const, backend):
    """Counts of packed partial-value vectors over all assignments of ``group``."""
    t = field_tables(field)
    q = field.q
    sub = []
    for f in polys:
        terms = {}
        for e, c in f.terms.items():
            vs = [i for i, x in enumerate(e) if x]
            if (vs and vs[0] in group) or (not vs and with_const):
                terms[tuple(e[i] for i in group)] = c
        sub.append(MultiPoly(len(group), terms))
    comp = compile_fq(sub, len(group), field.p, t.log)
    kern = get_backend(backend)
    vals = kern.fq_values(t.log, t.exp, t.zech, comp.clog, comp.exps, comp.poff,
                          comp.k, 0, q ** len(group))
    weights = np.array([q ** j for j in range(len(polys))], dtype=np.int64)
    keys, counts = np.unique(vals @ weights, return_counts=True)
    return keys, counts.astype(object)


def _count_chart_separable(field, polys, k, groups, unused, budget, backend):
    p, q = field.p, field.q
    width = field.m * len(polys)
    if q ** len(polys) >= 2 ** 62:
        raise CountingError("too many equations to pack partial values")
    hists = [_histogram(field, polys, g, i == 0, backend) for i, g in enumerate(groups)]
    keys, counts = hists[0]
    for nk, nc in hists[1:-1]:
        if len(keys) * len(nk) > budget:
            raise BudgetExceeded(len(keys) * len(nk), budget)
        summed = enc_add(np.repeat(keys, len(nk)), np.tile(nk, len(keys)), p, width)
        prod = np.outer(counts, nc).ravel()
        acc: dict[int, int] = {}
        for key, c in zip(summed.tolist(), prod.tolist()):
            acc[key] = acc.get(key, 0) + c
        keys = np.array(sorted(acc), dtype=np.int64)
        counts = np.array([acc[x] for x in keys.tolist()], dtype=object)
    if len(hists) == 1:
        total = int(sum(c for key, c in zip(keys.tolist(), counts) if key == 0))
    else:
        lk, lc = hists[-1]
        last = dict(zip(lk.tolist(), lc))
        need = enc_neg(keys, p, width).tolist()
        total = sum(c * last.get(key, 0) for key, c in zip(need, counts))
    return int(total) * q ** len(unused)


def _chart_cost(q: int, k: int, groups, unused, method: str) -> int:
    if method == "auto" and (len(groups) > 1 or unused):
        return sum(q ** len(g) for g in groups)
    return q ** k


def count_affine_system(field: FieldDesc, polys: list[MultiPoly], k: int, *,
                        method: str = "auto", workers: int = 1, chunks: int | None = None,
                        budget: int = DEFAULT_BUDGET, backend: str | None = None) -> int:
    """Number of common zeros of ``polys`` in A^k(F_q)."""
    q = field.q
    t = field_tables(field)
    groups, unused = _components(polys, k)
    if method == "auto" and (len(groups) > 1 or unused):
        if not groups:
            # only constants remain: all vanish mod p or the system is empty
            zero = (0,) * k
            ok = all(f.terms.get(zero, 0) % field.p == 0 for f in polys)
            return q ** k if ok else 0
        return _count_chart_separable(field, polys, k, groups, unused, budget, backend)
    comp = compile_fq(polys, k, field.p, t.log)
    ranges = split_ranges(q ** k, chunks or workers)
    tasks = [(field, comp, a, b, backend, False) for a, b in ranges]
    return sum(c for c, _ in _run_scans(tasks, workers))


def count_Fq(V: VarietyPresentation, field: FieldDesc, *, method: str = "auto",
             workers: int = 1, chunks: int | None = None, budget: int = DEFAULT_BUDGET,
             backend: str | None = None) -> int:
    """Exact number of points of V over ``field``.

    ``method`` is ``auto`` (chart enumeration with separable splitting),
    ``direct`` (scan every chart point) or ``cone`` (projective only: scan
    the affine cone, subtract the origin and divide by q - 1).
    """
    if method not in ("auto", "direct", "cone"):
        raise ValueError(f"unknown counting method {method!r}")
    q = field.q
    if method == "cone":
        if not V.projective:
            raise ValueError("cone counting applies to projective presentations")
        if q ** V.nvars > budget:
            raise BudgetExceeded(q ** V.nvars, budget)
        cone = count_affine_system(field, list(V.polys), V.nvars, method="direct",
                                   workers=workers, chunks=chunks, budget=budget, backend=backend)
        if (cone - 1) % (q - 1):
            raise CountingError(f"cone count {cone} is not 1 mod {q - 1}")
        return (cone - 1) // (q - 1)
    plan = []
    for keep, polys in charts(V):
        groups, unused = _components(polys, len(keep))
        plan.append((keep, polys, _chart_cost(q, len(keep), groups, unused, method)))
    need = sum(c for _, _, c in plan)
    if need > budget:
        raise BudgetExceeded(need, budget)
    return sum(count_affine_system(field, polys, len(keep), method=method, workers=workers,
                                   chunks=chunks, budget=budget, backend=backend)
               for keep, polys, _ in plan)


def enumerate_solutions_fq(V: VarietyPresentation, field: FieldDesc, chunk: tuple[int, int] = (0, 1),
                           backend: str | None = None):
    """Yield solutions as tuples of integer encodings, in lexicographic order per chart.

    ``chunk = (i, n)`` selects the i-th of n contiguous slices of every
    chart's index range; the n slices partition the solution set.
    """
    i, n = chunk
    if not 0 <= i < n:
        raise ValueError("chunk index out of range")
    t = field_tables(field)
    q = field.q
    kern = get_backend(backend)
    nv = V.nvars
    for keep, polys in charts(V):
        k = len(keep)
        comp = compile_fq(polys, k, field.p, t.log)
        ranges = split_ranges(q ** k, n)
        if i >= len(ranges):
            continue
        a, b = ranges[i]
        _, found = kern.fq_scan(t.log, t.exp, t.zech, comp.clog, comp.exps, comp.poff,
                                k, a, b, True)
        for idx in found:
            digits = []
            for _ in range(k):
                idx, r = divmod(idx, q)
                digits.append(r)
            point = [0] * nv
            for pos, var in enumerate(reversed(keep)):
                point[var] = digits[pos]
            if V.projective:
                point[k] = 1
            yield tuple(point)
