"""Carlitz module toolbox: D_i, L_i, exp, log, polylogarithms, the period,
lattice evaluation e(x), and the degree-d power-sum engines.

The bracket quantities

    D_i = prod_{j<i} (theta^{q^i} - theta^{q^j}),
    L_i = prod_{j=1..i} (theta - theta^{q^j}),

are kept both as exact polynomials (small index) and as Laurent series with a
chosen relative window (any index: only log_q(window) of the unit factors are
visible at finite precision, so the series form never materializes the huge
exact polynomials).

Power sums S_d(n) = sum of a^(-n) over monic a of degree d have two engines:

* enumeration over all q^d monic polynomials (the oracle), and
* Newton's identities on the reciprocal of prod (X - a) = e_d(X) - e_d(theta^d),
  whose nonzero coefficients below degree n sit at X^(q^m) and equal
  -1/(D_m L_{d-m}^{q^m}).

The accelerated engine is validated against enumeration on the grid d <= 5,
q <= 4, n <= 4 by the test suite before anything else relies on it.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, PrecisionError
from .fq import FqField
from .poly import Poly, RationalFunction, monic_block
from .series import ExtScalar, PrecSeries, frobenius_twist

DEFAULT_BUDGET = 10**6


class CarlitzCache:
    """Append-only memo of D_i, L_i, e_d tables and the period per field."""

    def __init__(self, field: FqField):
        self.field = field
        self._D: list[Poly] = [Poly.one(field)]
        self._L: list[Poly] = [Poly.one(field)]
        self._ed: list[list[Poly]] = [[Poly.one(field)]]  # e_0(z) = z
        self._pi: ExtScalar | None = None

    def D(self, i: int) -> Poly:
        """Exact D_i; only sensible for small i (degree i*q^i)."""
        fld = self.field
        q = fld.q
        while len(self._D) <= i:
            k = len(self._D)
            prod = Poly.one(fld)
            top = Poly.monomial(fld, q**k)
            for j in range(k):
                prod = prod * (top - Poly.monomial(fld, q**j))
            self._D.append(prod)
        return self._D[i]

    def L(self, i: int) -> Poly:
        """Exact L_i; only sensible for small i (degree ~ q^(i+1))."""
        fld = self.field
        q = fld.q
        while len(self._L) <= i:
            k = len(self._L)
            self._L.append(self._L[k - 1] * (Poly.gen(fld) - Poly.monomial(fld, q**k)))
        return self._L[i]

    @staticmethod
    def deg_D(i: int, q: int) -> int:
        return i * q**i

    @staticmethod
    def deg_L(i: int, q: int) -> int:
        return (q ** (i + 1) - q) // (q - 1)

    def ed_coeffs(self, d: int) -> list[Poly]:
        """Coefficients [e_d]_m of z^(q^m) in e_d(z) = prod_{deg b < d} (z - b).

        Built from e_d = e_{d-1}^q - e_{d-1}(theta^(d-1))^(q-1) * e_{d-1}.
        """
        fld = self.field
        q = fld.q
        while len(self._ed) <= d:
            k = len(self._ed)
            prev = self._ed[k - 1]
            val = Poly.zero(fld)
            for m, c in enumerate(prev):
                val = val + c * Poly.monomial(fld, (k - 1) * q**m)
            factor = val ** (q - 1)
            nxt = [Poly.zero(fld) for _ in range(k + 1)]
            for m, c in enumerate(prev):
                nxt[m + 1] = nxt[m + 1] + c.compose_power(q)  # c^q with exponents scaled
                nxt[m] = nxt[m] - factor * c
            self._ed.append(nxt)
        return self._ed[d]

    def e_d_eval_theta_power(self, d: int, k: int) -> Poly:
        """e_d(theta^k) as an exact polynomial."""
        acc = Poly.zero(self.field)
        for m, c in enumerate(self.ed_coeffs(d)):
            acc = acc + c * Poly.monomial(self.field, k * self.field.q**m)
        return acc

    # -- series forms with relative window --

    def L_series(self, i: int, window: int) -> PrecSeries:
        """L_i as a series with `window` known coefficients from its valuation."""
        fld = self.field
        q = fld.q
        u = PrecSeries.one(fld, window)
        for j in range(1, i + 1):
            ex = q**j - 1
            if ex >= window:
                break  # deeper factors are 1 on this window
            u = u * _one_minus_theta_power(fld, ex, window)
        deg = self.deg_L(i, q)
        if i % 2 == 1 and fld.p != 2:
            u = -u
        return u.shift(deg)

    def D_series(self, i: int, window: int) -> PrecSeries:
        """D_i as a series with `window` known coefficients from its valuation."""
        fld = self.field
        q = fld.q
        u = PrecSeries.one(fld, window)
        for j in range(i):
            ex = q**i - q**j
            if ex < window:
                u = u * _one_minus_theta_power(fld, ex, window)
        return u.shift(self.deg_D(i, q))

    def dl_inverse(self, m: int, i: int, n_pow: int, window: int) -> PrecSeries:
        """1 / (D_m * L_i^(q^m * n_pow... )) building block; see powersum/gamma.

        Returns inv(D_m * L_i^(q^m)) with `window` known coefficients; n_pow
        is applied by the caller.
        """
        fld = self.field
        dm = self.D_series(m, window)
        lser = self.L_series(i, window)
        lq = lser.p_power(fld.e * m)  # L_i^(q^m), exact
        return (dm * lq.truncate(lq.v0 + window)).inv()


_caches: dict[FqField, CarlitzCache] = {}


def cache_for(field: FqField) -> CarlitzCache:
    if field not in _caches:
        _caches[field] = CarlitzCache(field)
    return _caches[field]


def _one_minus_theta_power(field, ex: int, window: int) -> PrecSeries:
    """1 - theta^(-ex) with `window` known coefficients (ex > 0)."""
    c = np.zeros(window, dtype=np.int64)
    c[0] = 1
    if ex < window:
        c[ex] = field.neg(np.int64(1))
    return PrecSeries(field, 0, c, window, trusted=True)


def _poly_inv_series(poly: Poly, target_prec: int, val_floor: int) -> PrecSeries:
    """1/poly as a series whose product with data of valuation >= val_floor
    still has precision >= target_prec."""
    d = poly.degree
    base = max(target_prec - val_floor - 2 * d, 1 - d)
    return PrecSeries.from_poly(poly, base).inv()


def carlitz_exp(z: ExtScalar, prec: int) -> ExtScalar:
    """exp_C(z) = sum z^(q^i) / D_i, truncated at tail valuation >= prec."""
    fld = z.field
    q = fld.q
    cache = cache_for(fld)
    valz = z.val()
    if valz is None:
        return z.truncate_frac(min(Fraction(prec), z.val_lower_bound()))
    acc = None
    omitted = 0
    prev_val = None
    i = 0
    while True:
        term_val = q**i * (valz + i)
        if term_val < prec:
            tw = frobenius_twist(z, i)
            invd = _poly_inv_series(cache.D(i), prec, math.floor(tw.val_lower_bound()))
            term = tw.scale_series(invd)
            acc = term if acc is None else acc + term
            omitted = 0
        else:
            # require three consecutive strictly rising omitted valuations
            omitted = omitted + 1 if (prev_val is None or term_val > prev_val) else 1
            if omitted >= 3:
                break
        prev_val = term_val
        i += 1
        if i > 60:
            raise PrecisionError("exp term budget exhausted")
    if acc is None:
        return ExtScalar.zero(fld, prec)
    return acc.truncate_frac(Fraction(prec))


def carlitz_log(z: ExtScalar, prec: int) -> ExtScalar:
    """log_C(z) = sum z^(q^i) / L_i on the open disk |z| < q^(q/(q-1))."""
    return polylog(1, z, prec)


def polylog(n: int, z: ExtScalar, prec: int) -> ExtScalar:
    """n-th Carlitz polylogarithm sum z^(q^i) / L_i^n.

    Requires |z| < q^(nq/(q-1)), i.e. val(z) > -nq/(q-1), strictly.
    """
    fld = z.field
    q = fld.q
    cache = cache_for(fld)
    if n < 1:
        raise ValueError("polylog index must be a positive integer")
    valz = z.val()
    if valz is None:
        return z.truncate_frac(min(Fraction(prec), z.val_lower_bound()))
    if valz <= Fraction(-n * q, q - 1):
        raise ConvergenceError(f"val(z) = {valz} outside the polylog-{n} disk (> {Fraction(-n*q, q-1)})")
    acc = None
    omitted = 0
    prev_val = None
    i = 0
    while True:
        term_val = q**i * valz + n * CarlitzCache.deg_L(i, q)
        if term_val < prec:
            tw = frobenius_twist(z, i)
            vlb = math.floor(tw.val_lower_bound())
            if CarlitzCache.deg_L(i, q) * n <= _EXACT_DENOM_DEG_CAP:
                invd = _poly_inv_series(cache.L(i) ** n, prec, vlb)
            else:
                window = max(prec - vlb - n * CarlitzCache.deg_L(i, q), 1) + 4
                invd = (cache.L_series(i, window) ** n).inv()
            term = tw.scale_series(invd)
            acc = term if acc is None else acc + term
            omitted = 0
        else:
            omitted = omitted + 1 if (prev_val is None or term_val > prev_val) else 1
            if omitted >= 3:
                break
        prev_val = term_val
        i += 1
        if i > 60:
            raise PrecisionError("polylog term budget exhausted")
    if acc is None:
        return ExtScalar.zero(fld, prec)
    return acc.truncate_frac(Fraction(prec))


_EXACT_DENOM_DEG_CAP = 4096


def pi_tilde(field: FqField, prec: int) -> ExtScalar:
    """The Carlitz period theta * w * prod_(i>=1) (1 - theta^(1-q^i))^(-1)."""
    cache = cache_for(field)
    if cache._pi is not None and cache._pi.min_prec_frac() >= prec:
        return cache._pi.truncate_frac(Fraction(prec))
    q = field.q
    window = prec + 4
    u = PrecSeries.one(field, window)
    i = 1
    while q**i - 1 < window:
        u = u * _one_minus_theta_power(field, q**i - 1, window)
        i += 1
    unit_inv = u.inv()
    value = ExtScalar.theta_tilde_power(field, 1, window).scale_series(unit_inv.shift(1))
    cache._pi = value
    return value.truncate_frac(Fraction(prec))


def e_of(x: RationalFunction, prec: int) -> ExtScalar:
    """Lattice evaluation e(x) = exp_C(pi_tilde * x) for x in k."""
    fld = x.field
    q = fld.q
    extra = 8 + 2 * max(0, -(x.den.degree - x.num.degree)) * q
    for _ in range(4):
        work = prec + extra
        z = pi_tilde(fld, work).scale_series(PrecSeries.from_rational(x, work))
        y = carlitz_exp(z, prec)
        if y.min_prec_frac() >= prec:
            return y
        extra += prec - int(y.min_prec_frac()) + 8
    raise PrecisionError("e(x) could not reach the requested precision")


# -- power sums --


def powersum(field: FqField, d: int, n: int, prec: int, engine: str = "accel", budget: int = DEFAULT_BUDGET) -> PrecSeries:
    """S_d(n) = sum over monic a of degree d of a^(-n), known to >= prec.

    engine: "accel" (Newton identities; validated against the oracle by the
    test suite), "enum" (direct enumeration, the oracle), or "auto" which
    enumerates when q^d is small and accelerates otherwise.
    """
    if n < 1:
        raise ValueError("power sum exponent must be positive")
    if d == 0:
        return PrecSeries.one(field, prec)
    if engine == "auto":
        engine = "enum" if field.q**d <= min(budget, 2048) else "accel"
    if engine == "enum":
        return _powersum_enum(field, d, n, prec, budget)
    if engine == "accel":
        return _powersum_newton(field, d, n, prec)
    raise ValueError(f"unknown engine {engine!r}")


def _powersum_enum(field, d, n, prec, budget) -> PrecSeries:
    rows = monic_block(field, d, budget)
    acc = None
    for row in rows:
        a = Poly(field, "x", row, trusted=True)
        s = PrecSeries.from_poly(a, prec + 1).inv() ** n
        acc = s if acc is None else acc + s
    return acc.truncate(prec)


def _powersum_newton(field, d, n, prec) -> PrecSeries:
    cache = cache_for(field)
    q = field.q
    window = prec + n + 2
    sparse: dict[int, PrecSeries] = {}
    m = 0
    while q**m <= n and m <= d:
        if m < d:
            sparse[q**m] = -cache.dl_inverse(m, d - m, 1, window)
        else:
            sparse[q**d] = -cache.D_series(d, window).inv()
        m += 1
    N = q**d
    p_char = field.p
    pk: dict[int, PrecSeries] = {}
    for k in range(1, n + 1):
        acc = None
        for j, aj in sparse.items():
            if j < k and (k - j) in pk:
                t = aj * pk[k - j]
                acc = t if acc is None else acc + t
        if k <= N and k in sparse:
            t = sparse[k].scale(k % p_char)
            acc = t if acc is None else acc + t
        pk[k] = -acc if acc is not None else PrecSeries.zero(field, window + d * k)
    out = pk[n]
    if out.prec < prec:
        raise PrecisionError(f"power sum engine fell short of precision: {out.prec} < {prec}")
    return out.truncate(prec)
