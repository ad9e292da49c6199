"""Rational recognition and k-linear relation finding at finite precision.

Both engines reduce to a nullspace computation over F_q on the coefficient
window of a residual that is forced to vanish.  A hit is always re-verified
against the stated guard before being returned, and a returned value is a
certificate at the working precision, never a proof; callers enforce the
two-precision protocol (recompute everything at higher precision and demand
the identical answer).
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import PrecisionError
from .poly import Poly, RationalFunction
from .series import PrecSeries

DEFAULT_GUARD = 10


def _window_matrix(series_list, deg_bound: int, rows_lo: int, rows_hi: int):
    """Matrix of the map (a_1..a_m) -> coefficients of sum a_i v_i.

    Unknown columns are grouped per series: m blocks of deg_bound+1 codes,
    a_i = sum_j c_{i,j} theta^j.  Row v holds the coefficient of theta^(-v).
    """
    field = series_list[0].field
    n_rows = rows_hi - rows_lo
    cols = len(series_list) * (deg_bound + 1)
    M = np.zeros((n_rows, cols), dtype=np.int64)
    for i, s in enumerate(series_list):
        for j in range(deg_bound + 1):
            # theta^j * s has coefficient C_s(v + j) at exponent v
            col = i * (deg_bound + 1) + j
            vs = np.arange(rows_lo, rows_hi) + j
            inside = (vs >= s.v0) & (vs < s.prec)
            M[inside, col] = s.coeffs[vs[inside] - s.v0]
    return M


def pade_recognize(x: PrecSeries, deg_bound: int, guard: int = DEFAULT_GUARD):
    """Recover x as a ratio of polynomials of degree <= deg_bound, or None.

    Requires a window of at least 2(deg_bound+1) + guard known coefficients.
    The returned rational re-expands to match x to valuation >= prec - guard;
    this is checked explicitly, so a non-None return is a certificate at
    precision x.prec.
    """
    field = x.field
    D = deg_bound
    if x.val() is None:
        return RationalFunction.zero(field)
    if x.prec - x.val() < 2 * (D + 1) + guard:
        raise PrecisionError(
            f"window {x.prec - x.val()} too short for degree bound {D} with guard {guard}"
        )
    rows_lo = min(x.val() - D, -D)
    rows_hi = x.prec - D
    # unknowns: denominator block then numerator block
    M_den = _window_matrix([x], D, rows_lo, rows_hi)
    M_num = np.zeros((rows_hi - rows_lo, D + 1), dtype=np.int64)
    for i in range(D + 1):
        v = -i
        if rows_lo <= v < rows_hi:
            M_num[v - rows_lo, i] = field.neg(np.int64(1))
    M = np.hstack([M_den, M_num])
    _, basis = _kernels.nullspace(field, M)
    for vec in basis:
        den = Poly(field, "x", vec[: D + 1])
        num = Poly(field, "x", vec[D + 1 :])
        if den.is_zero():
            continue
        cand = RationalFunction(num, den)
        expand = PrecSeries.from_rational(cand, x.prec)
        if (x - expand).val_at_least(x.prec - guard):
            return cand
    return None


def relation_candidates(series_list, deg_bound: int, guard: int = DEFAULT_GUARD):
    """All verified relations arising from the nullspace basis, in order.

    Each candidate is a list of Poly (a_1..a_m) with deg <= deg_bound whose
    combination vanishes to valuation >= min(prec) - guard.
    """
    if not series_list:
        return []
    field = series_list[0].field
    D = deg_bound
    m = len(series_list)
    prec = min(s.prec for s in series_list)
    lo = min(s.val_lower_bound() for s in series_list) - D
    hi = prec - D
    if hi - lo < m * (D + 1) + guard:
        raise PrecisionError(
            f"window {hi - lo} too short for {m} series at degree bound {D} with guard {guard}"
        )
    M = _window_matrix(series_list, D, lo, hi)
    _, basis = _kernels.nullspace(field, M)
    out = []
    for vec in basis:
        polys = [Poly(field, "x", vec[i * (D + 1) : (i + 1) * (D + 1)]) for i in range(m)]
        if all(p.is_zero() for p in polys):
            continue
        if _combination_val_at_least(series_list, polys, prec - guard):
            out.append(polys)
    return out


def linear_relation_find(series_list, deg_bound: int, guard: int = DEFAULT_GUARD):
    """Nontrivial (a_1..a_m) in A^m, deg a_i <= deg_bound, killing the list.

    Returns a list of Poly or None.  The combination sum a_i v_i is checked
    to vanish to valuation >= min(prec) - guard.
    """
    cands = relation_candidates(series_list, deg_bound, guard)
    return cands[0] if cands else None


def _combination_val_at_least(series_list, polys, bound) -> bool:
    field = series_list[0].field
    acc = None
    for s, a in zip(series_list, polys):
        if a.is_zero():
            continue
        term = s * PrecSeries.from_poly(a, s.prec + max(0, a.degree) + 1)
        acc = term if acc is None else acc + term
    if acc is None:
        return False
    return acc.val_at_least(bound)


def combination(series_list, polys) -> PrecSeries:
    """sum a_i v_i as a PrecSeries (for residual reporting)."""
    field = series_list[0].field
    acc = None
    for s, a in zip(series_list, polys):
        if a.is_zero():
            continue
        term = s * PrecSeries.from_poly(a, s.prec + max(0, a.degree) + 1)
        acc = term if acc is None else acc + term
    if acc is None:
        return PrecSeries.zero(field, min(s.prec for s in series_list))
    return acc


def numeric_rank(series_list, deg_bound: int, guard: int = DEFAULT_GUARD):
    """Greedy maximal independent sublist at precision.

    Scans indices in order; index i is kept when no relation with degree
    bound is found on kept + [i].  Returns (rank, kept_indices).
    """
    kept: list[int] = []
    for i in range(len(series_list)):
        subset = [series_list[j] for j in kept] + [series_list[i]]
        if linear_relation_find(subset, deg_bound, guard) is None:
            kept.append(i)
    return len(kept), kept


def escalating_pade(x: PrecSeries, guard: int = DEFAULT_GUARD, start: int = 4, cap: int = 32):
    """pade_recognize with the degree bound escalating in steps of 2."""
    D = start
    while D <= cap:
        try:
            hit = pade_recognize(x, D, guard)
        except PrecisionError:
            return None, D
        if hit is not None:
            return hit, D
        D += 2
    return None, cap


def escalating_relation(series_list, guard: int = DEFAULT_GUARD, start: int = 4, cap: int = 32):
    """linear_relation_find with the degree bound escalating in steps of 2."""
    D = start
    while D <= cap:
        try:
            hit = linear_relation_find(series_list, D, guard)
        except PrecisionError:
            return None, D
        if hit is not None:
            return hit, D
        D += 2
    return None, cap
