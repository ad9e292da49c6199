"""Numba-compiled versions of the hot kernels.

Elements of F_q are integer codes; multiplication goes through discrete
log/antilog tables (``exp`` has length 2(q-1) so sums of two logs never need
reduction), addition is digitwise mod p.  The loops are written flat so numba
can keep everything in registers.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _add_code(x, y, p, e):
    if e == 1:
        return (x + y) % p
    out = 0
    scale = 1
    for _ in range(e):
        out += ((x + y) % p) * scale
        x //= p
        y //= p
        scale *= p
    return out


@njit(cache=True, inline="always")
def _neg_code(x, p, e):
    if e == 1:
        return (-x) % p
    out = 0
    scale = 1
    for _ in range(e):
        out += ((-x) % p) * scale
        x //= p
        scale *= p
    return out


@njit(cache=True)
def conv_jit(a, b, p, e, q, exp, log):
    n = len(a) + len(b) - 1
    out = np.zeros(n, dtype=np.int64)
    for i in range(len(a)):
        ai = a[i]
        if ai == 0:
            continue
        la = log[ai]
        for j in range(len(b)):
            bj = b[j]
            if bj == 0:
                continue
            out[i + j] = _add_code(out[i + j], exp[la + log[bj]], p, e)
    return out


@njit(cache=True)
def rref_jit(m, p, e, q, exp, log):
    rows, cols = m.shape
    pivot_cols = np.empty(cols, dtype=np.int64)
    npiv = 0
    r = 0
    qm1 = q - 1
    for c in range(cols):
        if r == rows:
            break
        sel = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[sel, j]
                m[sel, j] = t
        piv = m[r, c]
        if piv != 1:
            linv = (qm1 - log[piv]) % qm1
            for j in range(cols):
                if m[r, j] != 0:
                    m[r, j] = exp[log[m[r, j]] + linv]
        for i in range(rows):
            if i == r or m[i, c] == 0:
                continue
            f = log[m[i, c]]
            for j in range(cols):
                if m[r, j] != 0:
                    m[i, j] = _add_code(m[i, j], _neg_code(exp[f + log[m[r, j]]], p, e), p, e)
        pivot_cols[npiv] = c
        npiv += 1
        r += 1
    return m, pivot_cols, npiv
