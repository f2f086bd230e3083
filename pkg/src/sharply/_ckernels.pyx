# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernels``.

Permutations travel as ``bytes`` internally (degree < 256), which makes
hashing and composition cheap; inputs and outputs stay tuples.
"""
from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdlib cimport malloc, free

from sharply._pykernels import ClosureOverflow
from sharply import _pykernels


cdef bytes _apply(const unsigned char* e, const unsigned char* g, Py_ssize_t n):
    cdef bytes h = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* hp = <unsigned char*>PyBytes_AS_STRING(h)
    cdef Py_ssize_t i
    for i in range(n):
        hp[i] = g[e[i]]
    return h


def closure(gens, Py_ssize_t cap):
    cdef Py_ssize_t n = len(gens[0])
    if n > 255:
        return _pykernels.closure(gens, cap)
    cdef list gb = [bytes(g) for g in gens]
    cdef Py_ssize_t ng = len(gb)
    cdef bytes ident = bytes(range(n))
    cdef list elems = [ident]
    cdef set seen = {ident}
    cdef Py_ssize_t i = 0, j
    cdef bytes e, h
    while i < len(elems):
        e = elems[i]
        i += 1
        for j in range(ng):
            h = _apply(<const unsigned char*>PyBytes_AS_STRING(e),
                       <const unsigned char*>PyBytes_AS_STRING(gb[j]), n)
            if h not in seen:
                seen.add(h)
                elems.append(h)
                if len(elems) > cap:
                    raise ClosureOverflow(len(elems), cap)
    return [tuple(x) for x in elems]


def tuple_orbit_size(gens, base):
    cdef Py_ssize_t n = len(gens[0])
    if n > 255:
        return _pykernels.tuple_orbit_size(gens, base)
    cdef Py_ssize_t m = len(base)
    cdef list gb = [bytes(g) for g in gens]
    cdef Py_ssize_t ng = len(gb), j
    cdef bytes start = bytes(base)
    cdef set seen = {start}
    cdef list stack = [start]
    cdef bytes tup, img
    while stack:
        tup = stack.pop()
        for j in range(ng):
            img = _apply(<const unsigned char*>PyBytes_AS_STRING(tup),
                         <const unsigned char*>PyBytes_AS_STRING(gb[j]), m)
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return len(seen)


cdef int* _to_c(table, Py_ssize_t size) except NULL:
    cdef int* out = <int*>malloc(size * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        out[i] = table[i]
    return out


def assoc_failure(table, int n, int skip=-1):
    cdef int* t = _to_c(table, n * n)
    cdef int a, b, c, ab
    try:
        for a in range(n):
            if a == skip:
                continue
            for b in range(n):
                if b == skip:
                    continue
                ab = t[a * n + b]
                for c in range(n):
                    if c == skip:
                        continue
                    if t[ab * n + c] != t[a * n + t[b * n + c]]:
                        return (a, b, c)
        return None
    finally:
        free(t)


def right_dist_failure(add, mul, int n, int zero):
    cdef int* ad = _to_c(add, n * n)
    cdef int* mu = _to_c(mul, n * n)
    cdef int a, b, c, s
    try:
        for a in range(n):
            for b in range(n):
                s = ad[a * n + b] * n
                for c in range(n):
                    if c == zero:
                        continue
                    if mu[s + c] != ad[mu[a * n + c] * n + mu[b * n + c]]:
                        return (a, b, c)
        return None
    finally:
        free(ad)
        free(mu)
