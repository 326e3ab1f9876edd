# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same contract as ``_pykernels``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    ctypedef long long int128 "__int128"

BACKEND = "cython"


cdef inline long long _eval_poly_log(const long long[:] zech, const long long[:] clog,
                                     const long long[:, :] exps, long long t0, long long t1,
                                     long long* xl, int k, long long order) nogil:
    cdef long long acc = -1, s, e, z
    cdef long long t
    cdef int i
    cdef bint dead
    for t in range(t0, t1):
        s = clog[t]
        dead = False
        for i in range(k):
            e = exps[t, i]
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
            z = zech[(s - acc + order) % order]
            if z < 0:
                acc = -1
            else:
                acc = (acc + z) % order
    return acc


def fq_scan(const long long[:] log, const long long[:] exp, const long long[:] zech,
            const long long[:] clog, const long long[:, :] exps, const long long[:] poff,
            int k, long long start, long long stop, collect=False):
    cdef long long q = log.shape[0]
    cdef long long order = q - 1
    cdef int npolys = poff.shape[0] - 1
    cdef long long idx, rem, count = 0
    cdef int i, j
    cdef bint ok
    cdef long long[:] digits = np.zeros(max(k, 1), dtype=np.int64)
    cdef long long[:] xl = np.zeros(max(k, 1), dtype=np.int64)
    cdef bint want = bool(collect)
    found = [] if want else None
    rem = start
    for i in range(k):
        digits[i] = rem % q
        rem //= q
    for idx in range(start, stop):
        for i in range(k):
            xl[i] = log[digits[i]]
        ok = True
        for j in range(npolys):
            if _eval_poly_log(zech, clog, exps, poff[j], poff[j + 1], &xl[0], k, order) >= 0:
                ok = False
                break
        if ok:
            count += 1
            if want:
                found.append(idx)
        for i in range(k):
            digits[i] += 1
            if digits[i] < q:
                break
            digits[i] = 0
    return count, found


def fq_values(const long long[:] log, const long long[:] exp, const long long[:] zech,
              const long long[:] clog, const long long[:, :] exps, const long long[:] poff,
              int k, long long start, long long stop):
    cdef long long q = log.shape[0]
    cdef long long order = q - 1
    cdef int npolys = poff.shape[0] - 1
    cdef long long idx, rem, v
    cdef Py_ssize_t row = 0
    cdef int i, j
    cdef long long[:] digits = np.zeros(max(k, 1), dtype=np.int64)
    cdef long long[:] xl = np.zeros(max(k, 1), dtype=np.int64)
    out_arr = np.zeros((stop - start, npolys), dtype=np.int64)
    cdef long long[:, :] out = out_arr
    rem = start
    for i in range(k):
        digits[i] = rem % q
        rem //= q
    for idx in range(start, stop):
        for i in range(k):
            xl[i] = log[digits[i]]
        for j in range(npolys):
            v = _eval_poly_log(zech, clog, exps, poff[j], poff[j + 1], &xl[0], k, order)
            out[row, j] = 0 if v < 0 else exp[v]
        row += 1
        for i in range(k):
            digits[i] += 1
            if digits[i] < q:
                break
            digits[i] = 0
    return out_arr


cdef inline long long _mulmod(long long a, long long b, long long m) nogil:
    return <long long>((<int128>a * <int128>b) % <int128>m)


cdef inline long long _powmod(long long x, long long e, long long m) nogil:
    cdef long long r = 1 % m
    while e:
        if e & 1:
            r = _mulmod(r, x, m)
        x = _mulmod(x, x, m)
        e >>= 1
    return r


def zmod_lift(coef, const long long[:, :] exps, const long long[:] poff,
              long long p, long long pk, parents, int nvars):
    cdef long long modulus = pk * p
    if pk >= (1LL << 62) // p:
        raise OverflowError("modulus too large for the compiled kernel")
    cdef long long[:] cf = np.asarray(coef, dtype=np.int64)
    cdef long long[:, :] par = np.ascontiguousarray(parents, dtype=np.int64).reshape(-1, nvars) \
        if nvars > 0 else np.zeros((len(parents), 1), dtype=np.int64)
    cdef Py_ssize_t npar = len(parents)
    cdef int npolys = poff.shape[0] - 1
    cdef long long[:] t = np.zeros(max(nvars, 1), dtype=np.int64)
    cdef long long[:] x = np.zeros(max(nvars, 1), dtype=np.int64)
    cdef long long per = 1
    cdef int i, j
    cdef long long m, v, acc
    cdef Py_ssize_t a, nout = 0
    cdef bint ok
    for i in range(nvars):
        per *= p
    out_arr = np.zeros((max(npar * per, 1), max(nvars, 1)), dtype=np.int64)
    cdef long long[:, :] out = out_arr
    for a in range(npar):
        for i in range(nvars):
            t[i] = 0
        while True:
            for i in range(nvars):
                x[i] = par[a, i] + pk * t[i]
            ok = True
            for j in range(npolys):
                acc = 0
                for m in range(poff[j], poff[j + 1]):
                    v = cf[m]
                    for i in range(nvars):
                        if exps[m, i]:
                            v = _mulmod(v, _powmod(x[i], exps[m, i], modulus), modulus)
                    acc += v
                    if acc >= modulus:
                        acc -= modulus
                if acc:
                    ok = False
                    break
            if ok:
                for i in range(nvars):
                    out[nout, i] = x[i]
                nout += 1
            i = 0
            while i < nvars:
                t[i] += 1
                if t[i] < p:
                    break
                t[i] = 0
                i += 1
            if i == nvars:
                break
    return out_arr[:nout, :nvars].copy()
