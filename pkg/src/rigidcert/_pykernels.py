"""Pure-Python kernels over arbitrary-precision integers.

Same contracts as the compiled module ``rigidcert._kernels``; inputs and
outputs are numpy arrays of dtype ``object`` holding Python ints.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def matmul(a, b):
    m, k = a.shape
    if b.shape[0] != k:
        raise ValueError("inner dimensions differ")
    out = np.zeros((m, b.shape[1]), dtype=object)
    # row-axpy over the nonzeros of ``a``; the dense matrices here are sparse in practice
    for i in range(m):
        row = a[i]
        acc = None
        for l in np.flatnonzero(row):
            term = row[l] * b[l]
            acc = term if acc is None else acc + term
        if acc is not None:
            out[i] = acc
    return out


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        row = row // g
    return row


def rref(a):
    """Gauss-Jordan elimination without division.

    Pivots are the first nonzero entry in each column; each output row is made
    primitive (content 1) with a positive pivot. Returns ``(rows, pivots)`` where ``rows`` holds the
    nonzero rows only and ``rows[k, pivots[k]]`` is the only nonzero entry of
    column ``pivots[k]``.
    """
    m = np.array(a, dtype=object, copy=True)
    nrows, ncols = m.shape
    row = 0
    pivots = []
    for c in range(ncols):
        if row >= nrows:
            break
        nz = [r for r in range(row, nrows) if m[r, c] != 0]
        if not nz:
            continue
        r = nz[0]
        if r != row:
            m[[r, row]] = m[[row, r]]
        for i in range(nrows):
            if i == row or m[i, c] == 0:
                continue
            p, q = m[row, c], m[i, c]
            g = gcd(p, q)
            m[i] = _primitive((p // g) * m[i] - (q // g) * m[row])
        m[row] = _primitive(m[row])
        if m[row, c] < 0:
            m[row] = -m[row]
        pivots.append(c)
        row += 1
    return m[:row].copy(), pivots


def convolve(a_perms, a_coef, b_perms, b_coef, size):
    n = a_perms.shape[1]
    if b_perms.shape[1] != n:
        raise ValueError("degree mismatch")
    fact = [1]
    for i in range(1, n + 1):
        fact.append(fact[-1] * i)
    out = [0] * size
    a_rows = [tuple(int(v) for v in p) for p in a_perms]
    b_rows = [tuple(int(v) for v in q) for q in b_perms]
    for p, x in zip(a_rows, a_coef):
        if not x:
            continue
        for q, y in zip(b_rows, b_coef):
            if not y:
                continue
            comp = [p[j] for j in q]
            rank = 0
            for i in range(n):
                ci = comp[i]
                rank += sum(1 for j in range(i + 1, n) if comp[j] < ci) * fact[n - 1 - i]
            out[rank] += x * y
    return np.array(out, dtype=object)
