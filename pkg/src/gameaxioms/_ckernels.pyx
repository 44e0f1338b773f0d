# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the routines in ``_pykernels``."""

from math import gcd


def common_denominator(values):
    cdef object den = 1
    cdef object d
    for v in values:
        d = v.denominator
        if den % d:
            den = den // gcd(den, d) * d
    return [v.numerator * (den // v.denominator) for v in values], den


def dot(list xs, list ys):
    cdef Py_ssize_t k, n = min(len(xs), len(ys))
    cdef object total = 0
    cdef object x, y
    for k in range(n):
        x = xs[k]
        y = ys[k]
        if x and y:
            total += x * y
    return total


def matvec(list rows, list ys):
    cdef list out = []
    cdef list row
    cdef Py_ssize_t k, n
    cdef object total, x, y
    for row in rows:
        n = min(len(row), len(ys))
        total = 0
        for k in range(n):
            x = row[k]
            y = ys[k]
            if x and y:
                total += x * y
        out.append(total)
    return out


def outer_flat(vectors):
    cdef list acc = [1]
    cdef list nxt
    cdef object a, v
    for vec in vectors:
        nxt = []
        for a in acc:
            for v in vec:
                nxt.append(a * v)
        acc = nxt
    return acc


def pivot(list rows, Py_ssize_t r, Py_ssize_t s, object d):
    cdef list prow = rows[r]
    cdef object p = prow[s]
    cdef Py_ssize_t width = len(prow)
    cdef Py_ssize_t i, j, k, nnz
    cdef list row, new
    cdef object f, x
    cdef bint unit = d == 1
    cdef list nz = [j for j in range(width) if prow[j]]
    nnz = len(nz)
    for i in range(len(rows)):
        if i == r:
            continue
        row = rows[i]
        f = row[s]
        new = [0] * width
        for j in range(width):
            x = row[j]
            if x:
                new[j] = x * p
        if f:
            for k in range(nnz):
                j = nz[k]
                new[j] = new[j] - f * prow[j]
        if not unit:
            for j in range(width):
                x = new[j]
                if x:
                    new[j] = x // d
        rows[i] = new


def scaled_difference(list xs, object dx, list ys, object dy):
    cdef Py_ssize_t k, n = len(xs)
    cdef list out = [0] * n
    for k in range(n):
        out[k] = ys[k] * dx - xs[k] * dy
    return out


def own_action_dependence(list diff, tuple bases, Py_ssize_t stride, Py_ssize_t count):
    cdef Py_ssize_t k, a, base
    cdef object d0
    for k in range(len(bases)):
        base = bases[k]
        d0 = diff[base]
        for a in range(1, count):
            if diff[base + a * stride] != d0:
                return k, a
    return None
