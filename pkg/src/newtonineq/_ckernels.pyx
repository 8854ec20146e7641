# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels.  Semantics mirror ``_pykernels`` exactly."""

import numpy as np

from libc.math cimport exp, log, INFINITY
from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

BACKEND = "cython"

cdef extern from *:
    """
    static inline int ni_mul_ovf(long long a, long long b, long long *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    static inline int ni_add_ovf(long long a, long long b, long long *out) {
        return __builtin_add_overflow(a, b, out);
    }
    """
    int ni_mul_ovf(long long a, long long b, long long *out) nogil
    int ni_add_ovf(long long a, long long b, long long *out) nogil


def mul_packed(const int64_t[:] k1, const int64_t[:] c1,
               const int64_t[:] k2, const int64_t[:] c2,
               int64_t offset, int64_t guard, bint bounded):
    """Product of compact-key term arrays with 64-bit overflow detection.

    Raises OverflowError when a coefficient leaves the int64 range; the
    caller then falls back to arbitrary-precision Python.
    """
    cdef unordered_map[int64_t, long long] acc
    cdef Py_ssize_t i, j, n1 = k1.shape[0], n2 = k2.shape[0]
    cdef int64_t key
    cdef long long prod, total
    cdef bint overflow = False
    acc.reserve(<size_t>min(n1 * n2, 1 << 22))
    with nogil:
        for i in range(n1):
            if bounded and ((k1[i] + offset) & guard):
                continue
            for j in range(n2):
                key = k1[i] + k2[j]
                if bounded and ((key + offset) & guard):
                    continue
                if ni_mul_ovf(c1[i], c2[j], &prod):
                    overflow = True
                    break
                total = acc[key]
                if ni_add_ovf(total, prod, &total):
                    overflow = True
                    break
                acc[key] = total
            if overflow:
                break
    if overflow:
        raise OverflowError("int64 coefficient overflow")
    cdef Py_ssize_t count = 0
    cdef unordered_map[int64_t, long long].iterator it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            count += 1
        inc(it)
    keys = np.empty(count, dtype=np.int64)
    coefs = np.empty(count, dtype=np.int64)
    cdef int64_t[:] kv = keys
    cdef int64_t[:] cv = coefs
    i = 0
    it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            kv[i] = deref(it).first
            cv[i] = deref(it).second
            i += 1
        inc(it)
    return keys, coefs


cdef inline uint64_t _splitmix(uint64_t *state) nogil:
    cdef uint64_t z
    state[0] = state[0] + 0x9E3779B97F4A7C15ULL
    z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef void _esf(const double *x, int m, int s, double *e) nogil:
    cdef int i, p, top = 0
    cdef double two_a, sq, acc, ai, bi
    e[0] = 1.0
    for i in range(1, 2 * m + s + 1):
        e[i] = 0.0
    for p in range(m):
        ai = x[p]
        bi = x[m + p]
        two_a = 2.0 * ai
        sq = ai * ai + bi * bi
        top += 2
        i = top
        while i > 0:
            acc = e[i] + two_a * e[i - 1]
            if i >= 2:
                acc = acc + sq * e[i - 2]
            e[i] = acc
            i -= 1
    for p in range(s):
        ai = x[2 * m + p]
        top += 1
        i = top
        while i > 0:
            e[i] = e[i] + ai * e[i - 1]
            i -= 1


cdef inline double _at(const double *e, int n, int i) nogil:
    if i < 0 or i > n:
        return 0.0
    return e[i]


cdef double _ratio(const double *x, int m, int s, int l0, int l1, int r0, int r1,
                   double const_, double *e) nogil:
    cdef int n = 2 * m + s
    cdef double den
    _esf(x, m, s, e)
    den = const_ * (_at(e, n, r0) * _at(e, n, r1))
    if not den > 0.0:
        return INFINITY
    return (_at(e, n, l0) * _at(e, n, l1)) / den


def esf_float(a, b, mu):
    cdef int m = len(a), s = len(mu)
    cdef vector[double] x
    cdef vector[double] e
    x.resize(2 * m + s + 1)
    e.resize(2 * m + s + 1)
    cdef int i
    for i in range(m):
        x[i] = a[i]
        x[m + i] = b[i]
    for i in range(s):
        x[2 * m + i] = mu[i]
    _esf(x.data(), m, s, e.data())
    return [e[i] for i in range(2 * m + s + 1)]


def ratio_float(a, b, mu, lhs, rhs, double const_):
    cdef int m = len(a), s = len(mu)
    cdef vector[double] x
    cdef vector[double] e
    x.resize(2 * m + s + 1)
    e.resize(2 * m + s + 1)
    cdef int i
    for i in range(m):
        x[i] = a[i]
        x[m + i] = b[i]
    for i in range(s):
        x[2 * m + i] = mu[i]
    return _ratio(x.data(), m, s, lhs[0], lhs[1], rhs[0], rhs[1], const_, e.data())


def descend(x, int m, int s, lhs, rhs, double const_, long iters,
            double delta_start, double delta_end, seed, long stride=0):
    cdef int dim = len(x)
    cdef vector[double] xs
    cdef vector[double] e
    cdef vector[double] trace
    cdef int i, j
    cdef int l0 = lhs[0], l1 = lhs[1], r0 = rhs[0], r1 = rhs[1]
    cdef uint64_t state = (<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    cdef uint64_t r
    cdef long t, accepted = 0
    cdef double best, val, old, new, delta, factor, log_ratio
    cdef double lo = 2.0 ** -100, hi = 2.0 ** 100
    xs.resize(dim + 1)
    e.resize(dim + 1)
    for i in range(dim):
        xs[i] = float(x[i])
    best = _ratio(xs.data(), m, s, l0, l1, r0, r1, const_, e.data())
    if dim == 0:
        return [], best, 0, []
    log_ratio = log(delta_end / delta_start) / (iters - 1 if iters > 1 else 1)
    with nogil:
        for t in range(iters):
            delta = delta_start * exp(log_ratio * t)
            r = _splitmix(&state)
            j = <int>(r % <uint64_t>dim)
            if (r >> 32) & 1:
                factor = 1.0 + delta
            else:
                factor = 1.0 - delta
            old = xs[j]
            new = old * factor
            if new < lo:
                new = lo
            elif new > hi:
                new = hi
            xs[j] = new
            val = _ratio(xs.data(), m, s, l0, l1, r0, r1, const_, e.data())
            if val < best:
                best = val
                accepted += 1
            else:
                xs[j] = old
            if stride and (t + 1) % stride == 0:
                trace.push_back(best)
    return [xs[i] for i in range(dim)], best, accepted, [v for v in trace]
