# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse Laurent kernels; same contract as ``_kernels_py``."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem, PyDict_Next
from cpython.ref cimport PyObject


def add(dict a, dict b):
    cdef dict out = dict(a)
    cdef Py_ssize_t pos = 0
    cdef PyObject* pk
    cdef PyObject* pv
    cdef PyObject* cur
    while PyDict_Next(b, &pos, &pk, &pv):
        cur = PyDict_GetItem(out, <object>pk)
        if cur is NULL:
            PyDict_SetItem(out, <object>pk, <object>pv)
        else:
            s = <object>cur + <object>pv
            if s:
                PyDict_SetItem(out, <object>pk, s)
            else:
                PyDict_DelItem(out, <object>pk)
    return out


def sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef Py_ssize_t pos = 0
    cdef PyObject* pk
    cdef PyObject* pv
    cdef PyObject* cur
    while PyDict_Next(b, &pos, &pk, &pv):
        cur = PyDict_GetItem(out, <object>pk)
        if cur is NULL:
            PyDict_SetItem(out, <object>pk, -<object>pv)
        else:
            s = <object>cur - <object>pv
            if s:
                PyDict_SetItem(out, <object>pk, s)
            else:
                PyDict_DelItem(out, <object>pk)
    return out


def mul(dict a, dict b, bias):
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef Py_ssize_t pa = 0, pb
    cdef PyObject* ka
    cdef PyObject* ca
    cdef PyObject* kb
    cdef PyObject* cb
    cdef PyObject* cur
    while PyDict_Next(a, &pa, &ka, &ca):
        off = <object>ka - bias
        pb = 0
        while PyDict_Next(b, &pb, &kb, &cb):
            k = <object>kb + off
            p = <object>ca * <object>cb
            cur = PyDict_GetItem(out, k)
            if cur is NULL:
                PyDict_SetItem(out, k, p)
            else:
                PyDict_SetItem(out, k, <object>cur + p)
    return {k: c for k, c in out.items() if c}


def shift(dict a, key, bias):
    off = key - bias
    return {k + off: c for k, c in a.items()}


def bounds(dict a, int n, int width):
    """Per-variable (min, max) exponents of a nonempty polynomial."""
    mask = (<object>1 << width) - 1
    half = <object>1 << (width - 1)
    cdef list lo = [None] * n
    cdef list hi = [None] * n
    cdef int i
    cdef long long e
    for k in a:
        for i in range(n - 1, -1, -1):
            e = (k & mask) - half
            k >>= width
            if lo[i] is None or e < lo[i]:
                lo[i] = e
            if hi[i] is None or e > hi[i]:
                hi[i] = e
    return lo, hi


def divexact(dict a, dict b, int n, int width, bias):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}, {}
    alo, ahi = bounds(a, n, width)
    blo, bhi = bounds(b, n, width)
    cdef long long qlo[64]
    cdef long long qhi[64]
    cdef int i
    cdef long long e
    if n > 64:
        raise ValueError("at most 64 variables")
    for i in range(n):
        qlo[i] = alo[i] - blo[i]
        qhi[i] = ahi[i] - bhi[i]
        if qlo[i] > qhi[i]:
            return {}, dict(a)
    mask = (<object>1 << width) - 1
    half = <object>1 << (width - 1)
    lb = max(b)
    cb = b[lb]
    cdef dict r = dict(a)
    cdef dict q = {}
    cdef Py_ssize_t pb
    cdef PyObject* kb
    cdef PyObject* vb
    cdef PyObject* cur
    while r:
        lr = max(r)
        cr = r[lr]
        if cr % cb:
            return q, r
        t = lr - lb + bias
        k = t
        for i in range(n - 1, -1, -1):
            e = (k & mask) - half
            k >>= width
            if e < qlo[i] or e > qhi[i]:
                return q, r
        c = cr // cb
        q[t] = c
        off = t - bias
        pb = 0
        while PyDict_Next(b, &pb, &kb, &vb):
            kk = <object>kb + off
            cur = PyDict_GetItem(r, kk)
            if cur is NULL:
                PyDict_SetItem(r, kk, -c * <object>vb)
            else:
                v = <object>cur - c * <object>vb
                if v:
                    PyDict_SetItem(r, kk, v)
                else:
                    PyDict_DelItem(r, kk)
    return q, r
