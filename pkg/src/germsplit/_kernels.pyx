# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled term-map kernels; semantics identical to `_kernels_py`.

Exponent tuples are manipulated through the CPython tuple API, exponents
are small C longs; coefficients remain Python Fraction objects so the
arithmetic stays exact."""

from cpython.tuple cimport PyTuple_New, PyTuple_GET_ITEM, PyTuple_SET_ITEM, PyTuple_GET_SIZE
from cpython.long cimport PyLong_AsLong, PyLong_FromLong
from cpython.object cimport PyObject
from cpython.ref cimport Py_INCREF

BACKEND_NAME = "compiled"


cdef inline tuple _tuple_add(tuple ka, tuple kb, Py_ssize_t nv):
    cdef tuple key = PyTuple_New(nv)
    cdef Py_ssize_t i
    cdef object item
    for i in range(nv):
        item = PyLong_FromLong(
            PyLong_AsLong(<object>PyTuple_GET_ITEM(ka, i))
            + PyLong_AsLong(<object>PyTuple_GET_ITEM(kb, i))
        )
        Py_INCREF(item)
        PyTuple_SET_ITEM(key, i, item)
    return key


cdef inline long _tuple_sum(tuple k):
    cdef long s = 0
    cdef Py_ssize_t i
    for i in range(PyTuple_GET_SIZE(k)):
        s += PyLong_AsLong(<object>PyTuple_GET_ITEM(k, i))
    return s


cdef inline void _accumulate(dict out, tuple key, object val):
    cdef object cur = out.get(key)
    if cur is None:
        out[key] = val
    else:
        cur = cur + val
        if cur:
            out[key] = cur
        else:
            del out[key]


def add_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, v
    for k, v in b.items():
        _accumulate(out, <tuple>k, v)
    return out


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, v
    for k, v in b.items():
        _accumulate(out, <tuple>k, -v)
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef object k, v
    for k, v in a.items():
        out[k] = -v
    return out


def scale_terms(dict a, object c):
    cdef dict out = {}
    cdef object k, v
    if not c:
        return out
    for k, v in a.items():
        out[k] = v * c
    return out


def mul_terms(dict a, dict b, long bound):
    cdef dict out = {}
    cdef tuple ka, kb, key
    cdef object va, vb
    cdef Py_ssize_t nv = -1
    cdef list bitems
    if len(a) > len(b):
        a, b = b, a
    bitems = list(b.items())
    for ka, va in a.items():
        if nv < 0:
            nv = PyTuple_GET_SIZE(ka)
        for kb, vb in bitems:
            key = _tuple_add(ka, kb, nv)
            if bound >= 0 and _tuple_sum(key) > bound:
                continue
            _accumulate(out, key, va * vb)
    return out


def apply_linear_terms(dict a, tuple rows):
    cdef dict out = {}
    cdef tuple mono, row, pair, key
    cdef object coeff, base, rc, item
    cdef Py_ssize_t nv, k, j
    cdef long e, l, i
    for mono, coeff in a.items():
        nv = PyTuple_GET_SIZE(mono)
        for k in range(nv):
            e = PyLong_AsLong(<object>PyTuple_GET_ITEM(mono, k))
            if e == 0:
                continue
            row = <tuple>PyTuple_GET_ITEM(rows, k)
            if PyTuple_GET_SIZE(row) == 0:
                continue
            base = coeff * e
            for j in range(PyTuple_GET_SIZE(row)):
                pair = <tuple>PyTuple_GET_ITEM(row, j)
                l = PyLong_AsLong(<object>PyTuple_GET_ITEM(pair, 0))
                rc = <object>PyTuple_GET_ITEM(pair, 1)
                key = PyTuple_New(nv)
                for i in range(nv):
                    if i == k:
                        item = PyLong_FromLong(e - 1 + (1 if i == l else 0))
                    elif i == l:
                        item = PyLong_FromLong(
                            PyLong_AsLong(<object>PyTuple_GET_ITEM(mono, i)) + 1
                        )
                    else:
                        item = <object>PyTuple_GET_ITEM(mono, i)
                    Py_INCREF(item)
                    PyTuple_SET_ITEM(key, i, item)
                _accumulate(out, key, base * rc)
    return out


def truncate_terms(dict a, long bound):
    cdef dict out = {}
    cdef tuple k
    cdef object v
    for k, v in a.items():
        if _tuple_sum(k) <= bound:
            out[k] = v
    return out
