"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Two kernels dominate the package runtime:

* ``conv``: convolution of F_q coefficient arrays (every polynomial and
  Laurent-series product lands here), and
* ``nullspace``: reduced row echelon form plus kernel basis over F_q (the
  rational-recognition and linear-relation engines).

The backend is selected by the environment variable ``CARLITZLAB_JIT``:
``1`` forces the numba kernels, ``0`` forces pure numpy, unset means numba
when importable.  ``set_backend()`` overrides at runtime (used by the
benchmark and the kernel equivalence tests).  Both paths are exact integer
arithmetic and must produce identical outputs; ``tests/test_kernels.py``
checks that.
"""

from __future__ import annotations

import os

import numpy as np

_HAVE_NUMBA = None
_FORCED: str | None = None


def _numba_available() -> bool:
    global _HAVE_NUMBA
    if _HAVE_NUMBA is None:
        try:
            from . import _kernels_numba  # noqa: F401

            _HAVE_NUMBA = True
        except Exception:
            _HAVE_NUMBA = False
    return _HAVE_NUMBA


def active_backend() -> str:
    """Name of the backend in use: "numba" or "numpy"."""
    if _FORCED is not None:
        return _FORCED
    env = os.environ.get("CARLITZLAB_JIT", "").strip()
    if env == "0":
        return "numpy"
    if env == "1":
        if not _numba_available():
            raise RuntimeError("CARLITZLAB_JIT=1 but numba is not importable")
        return "numba"
    return "numba" if _numba_available() else "numpy"


def set_backend(name: str | None):
    """Force "numpy" or "numba"; None restores the environment default."""
    global _FORCED
    if name not in (None, "numpy", "numba"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not _numba_available():
        raise RuntimeError("numba backend requested but numba is not importable")
    _FORCED = name


def _field_tables(field):
    """exp/log tables for the numba kernels, built lazily for prime fields."""
    if field._exp is None:
        # prime field: generator search over F_p
        p = field.p
        from .fq import _prime_factors

        g = None
        for cand in range(2, p):
            if all(pow(cand, (p - 1) // r, p) != 1 for r in _prime_factors(p - 1)):
                g = cand
                break
        if g is None:
            g = 1  # p == 2 or p == 3 with trivial group
        exp = np.ones(max(2 * (p - 1), 1), dtype=np.int64)
        for i in range(1, p - 1):
            exp[i] = exp[i - 1] * g % p
        exp[p - 1 :] = exp[: p - 1][: len(exp) - (p - 1)]
        log = np.zeros(p, dtype=np.int64)
        log[exp[: max(p - 1, 1)]] = np.arange(max(p - 1, 1))
        field._exp = exp
        field._log = log
    return field._exp, field._log


# -- numpy reference implementations --


def _conv_numpy(field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if field.e == 1:
        return np.convolve(a, b) % field.p
    # block-digit trick: each F_q coefficient becomes a block of 2e-1 F_p
    # slots, wide enough to hold an unreduced degree <= 2e-2 product
    p, e = field.p, field.e
    w = 2 * e - 1
    da = field.to_coords(a)
    db = field.to_coords(b)
    fa = np.zeros(len(a) * w, dtype=np.int64)
    fb = np.zeros(len(b) * w, dtype=np.int64)
    fa[np.arange(len(a))[:, None] * w + np.arange(e)] = da
    fb[np.arange(len(b))[:, None] * w + np.arange(e)] = db
    full = np.convolve(fa, fb) % p
    n_out = len(a) + len(b) - 1
    blocks = np.zeros((n_out, w), dtype=np.int64)
    avail = min(len(full), n_out * w)
    blocks.reshape(-1)[:avail] = full[:avail]
    lo = blocks[:, :e]
    hi = blocks[:, e:]
    red = _reduction_matrix(field)
    digits = (lo + hi @ red) % p
    return digits @ field._pow_p


def _reduction_matrix(field) -> np.ndarray:
    """Rows: F_p coordinates of x^(e+j) mod modulus, j = 0..e-2."""
    cached = getattr(field, "_redmat", None)
    if cached is not None:
        return cached
    p, e = field.p, field.e
    rows = []
    cur = [(-c) % p for c in field.modulus[:-1]]  # x^e mod m
    rows.append(list(cur))
    for _ in range(e - 2):
        nxt = [0] + cur[:-1]
        if cur[-1]:
            for i in range(e):
                nxt[i] = (nxt[i] + cur[-1] * ((-field.modulus[i]) % p)) % p
        cur = nxt
        rows.append(list(cur))
    mat = np.array(rows, dtype=np.int64).reshape(e - 1, e)
    field._redmat = mat
    return mat


def _nullspace_numpy(field, mat: np.ndarray):
    """RREF over F_q with deterministic pivoting; returns (pivots, basis).

    ``basis`` has one row per free column, ascending, each a kernel vector
    with 1 in its free position.  Rows are scanned top to bottom, columns
    left to right, first nonzero entry wins: fully deterministic.
    """
    m = np.array(mat, dtype=np.int64)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = field.mul(m[r], field.inv(m[r, c]))
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if len(other):
            m[other] = field.sub(m[other], field.mul(m[other, c][:, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[k, pc] = field.neg(m[ri, fc])
    return pivots, basis


# -- dispatch --


def conv(field, a, b) -> np.ndarray:
    """Product of F_q coefficient arrays, length len(a)+len(b)-1."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    if active_backend() == "numba" and len(a) and len(b):
        from . import _kernels_numba

        exp, log = _field_tables(field)
        return _kernels_numba.conv_jit(a, b, field.p, field.e, field.q, exp, log)
    return _conv_numpy(field, a, b)


def nullspace(field, mat):
    """Kernel basis of a matrix over F_q; see _nullspace_numpy."""
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.size and active_backend() == "numba":
        from . import _kernels_numba

        exp, log = _field_tables(field)
        m, pivot_cols, npiv = _kernels_numba.rref_jit(mat.copy(), field.p, field.e, field.q, exp, log)
        pivots = [int(c) for c in pivot_cols[:npiv]]
        cols = mat.shape[1]
        free = [c for c in range(cols) if c not in pivots]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for k, fc in enumerate(free):
            basis[k, fc] = 1
            for ri, pc in enumerate(pivots):
                basis[k, pc] = field.neg(m[ri, fc])
        return pivots, basis
    return _nullspace_numpy(field, mat)
