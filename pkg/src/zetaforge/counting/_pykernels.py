"""Pure-Python enumeration kernels.

Reference backend, and the one used when the compiled extension is not
available.  Signatures and results match ``_ckernels`` exactly.

Field elements are integer encodings (base-p digits of the polynomial
basis coordinates).  Arithmetic goes through discrete-log tables:
``log[e]`` (-1 for zero), ``exp[k]`` and the Zech table
``zech[k] = log(1 + g^k)`` (-1 when 1 + g^k = 0).
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def _digits(idx: int, base: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, base)
        out.append(r)
    return out


def _eval_logs(lg, zech, clog, exps, poff, xl, npolys, order, k):
    """Log of each polynomial value at the point with coordinate logs ``xl``."""
    vals = []
    for j in range(npolys):
        acc = -1
        for t in range(poff[j], poff[j + 1]):
            s = clog[t]
            row = exps[t]
            dead = False
            for i in range(k):
                e = row[i]
                if e:
                    if xl[i] < 0:
                        dead = True
                        break
                    s += e * xl[i]
            if dead:
                continue
            s %= order
            if acc < 0:
                acc = s
            else:
                z = zech[(s - acc) % order]
                acc = -1 if z < 0 else (acc + z) % order
        vals.append(acc)
    return vals


def fq_scan(log, exp, zech, clog, exps, poff, k, start, stop, collect=False):
    """Count common zeros among points of A^k with flat index in [start, stop)."""
    lg = log.tolist()
    zc = zech.tolist()
    cl = clog.tolist()
    ex = [list(r) for r in exps.tolist()]
    po = poff.tolist()
    npolys = len(po) - 1
    q = len(lg)
    order = q - 1
    found = [] if collect else None
    count = 0
    digits = _digits(start, q, k)
    for idx in range(start, stop):
        xl = [lg[d] for d in digits]
        ok = True
        for v in _eval_logs(lg, zc, cl, ex, po, xl, npolys, order, k):
            if v >= 0:
                ok = False
                break
        if ok:
            count += 1
            if collect:
                found.append(idx)
        for i in range(k):
            digits[i] += 1
            if digits[i] < q:
                break
            digits[i] = 0
    return count, found


def fq_values(log, exp, zech, clog, exps, poff, k, start, stop):
    """Encodings of every polynomial value at each point in [start, stop)."""
    lg = log.tolist()
    ep = exp.tolist()
    zc = zech.tolist()
    cl = clog.tolist()
    ex = [list(r) for r in exps.tolist()]
    po = poff.tolist()
    npolys = len(po) - 1
    q = len(lg)
    order = q - 1
    out = np.zeros((stop - start, npolys), dtype=np.int64)
    digits = _digits(start, q, k)
    for row, idx in enumerate(range(start, stop)):
        xl = [lg[d] for d in digits]
        for j, v in enumerate(_eval_logs(lg, zc, cl, ex, po, xl, npolys, order, k)):
            out[row, j] = 0 if v < 0 else ep[v]
        for i in range(k):
            digits[i] += 1
            if digits[i] < q:
                break
            digits[i] = 0
    return out


def zmod_lift(coef, exps, poff, p, pk, parents, nvars):
    """Children s + pk*t (t in [0,p)^nvars) of each parent that solve the system mod pk*p.

    ``coef`` may be a list of Python ints, so arbitrarily large moduli work.
    """
    modulus = pk * p
    cf = [int(c) for c in coef]
    ex = [list(r) for r in exps.tolist()] if hasattr(exps, "tolist") else [list(r) for r in exps]
    po = list(poff)
    npolys = len(po) - 1
    out = []
    for parent in (parents.tolist() if hasattr(parents, "tolist") else parents):
        t = [0] * nvars
        while True:
            x = [int(parent[i]) + pk * t[i] for i in range(nvars)]
            ok = True
            for j in range(npolys):
                acc = 0
                for m in range(po[j], po[j + 1]):
                    v = cf[m]
                    row = ex[m]
                    for i in range(nvars):
                        if row[i]:
                            v = v * pow(x[i], row[i], modulus) % modulus
                    acc += v
                if acc % modulus:
                    ok = False
                    break
            if ok:
                out.append(x)
            i = 0
            while i < nvars:
                t[i] += 1
                if t[i] < p:
                    break
                t[i] = 0
                i += 1
            if i == nvars:
                break
    if modulus < 2 ** 62:
        return np.array(out, dtype=np.int64).reshape(len(out), nvars)
    return out
