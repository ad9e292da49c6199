"""Precision-tracked Laurent series: the computational model of k_inf.

A ``PrecSeries`` stores coefficients of theta^(-v) for exponents
``v0 <= v < prec``; everything at v >= prec is unknown, everything below v0
is exactly zero (series are kept normalized so v0 is the valuation when the
series is nonzero in its window).  The valuation of theta is -1, matching
|theta| = q.  Precision propagates pessimistically and exactly through the
ultrametric rules:

* sum: prec = min of the inputs' precs,
* product: prec = min(prec_a + v0_b, prec_b + v0_a),
* p-power: exponents, valuation and precision all scale by p^m exactly.

A series whose known window is all zero reports valuation None, read as
"val >= prec"; all comparisons go through the three-valued helpers below.

``ExtScalar`` is a (q-1)-component vector of PrecSeries over the basis
1, w, ..., w^(q-2) where w^(q-1) = -theta; this is the slice of the algebraic
closure the package actually computes in.  It is the home of the Carlitz
period and of Gamma-monomial values.  w has valuation -1/(q-1), so ExtScalar
valuations are Fractions with denominator q-1.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import PrecisionError
from .fq import FqField
from .poly import Poly, RationalFunction


class PrecSeries:
    """Laurent series in 1/theta known on the exponent window [v0, prec)."""

    __slots__ = ("field", "v0", "coeffs", "prec")

    def __init__(self, field: FqField, v0: int, coeffs, prec: int, trusted: bool = False):
        self.field = field
        if trusted:
            self.v0 = v0
            self.coeffs = coeffs
            self.prec = prec
            return
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if prec - v0 != len(coeffs):
            raise ValueError("window length must equal prec - v0")
        if prec <= v0:
            raise ValueError("empty window: prec must exceed v0")
        lead = 0
        while lead < len(coeffs) - 1 and coeffs[lead] == 0:
            lead += 1
        if coeffs[lead] == 0:  # all-zero window: keep a single known zero
            lead = len(coeffs) - 1
        self.v0 = v0 + lead
        self.coeffs = coeffs[lead:].copy()
        self.prec = prec
        self.coeffs.setflags(write=False)

    # -- constructors --

    @classmethod
    def zero(cls, field, prec: int):
        return cls(field, prec - 1, np.zeros(1, dtype=np.int64), prec, trusted=True)

    @classmethod
    def one(cls, field, prec: int):
        return cls.from_poly(Poly.one(field), prec)

    @classmethod
    def theta_power(cls, field, k: int, prec: int, coeff: int = 1):
        """coeff * theta^k, known to absolute precision prec."""
        if prec <= -k:
            raise ValueError("precision does not cover the monomial")
        c = np.zeros(prec + k, dtype=np.int64)
        c[0] = coeff
        return cls(field, -k, c, prec)

    @classmethod
    def from_poly(cls, poly: Poly, prec: int):
        """Exact polynomial in theta as a series known up to prec."""
        if poly.is_zero():
            return cls.zero(poly.field, prec)
        d = poly.degree
        if prec <= -d:
            raise ValueError("precision does not cover the polynomial")
        c = np.zeros(prec + d, dtype=np.int64)
        take = min(d + 1, prec + d)
        c[:take] = poly.coeffs[::-1][:take]
        return cls(poly.field, -d, c, prec)

    @classmethod
    def from_rational(cls, rf: RationalFunction, prec: int):
        if rf.is_zero():
            return cls.zero(rf.field, prec)
        work = prec + rf.num.degree + rf.den.degree + 1
        num = cls.from_poly(rf.num, work)
        return (num * cls.from_poly(rf.den, work).inv()).truncate(prec)

    # -- queries --

    def val(self):
        """Valuation, or None meaning "at least prec"."""
        if self.coeffs[0] == 0:
            return None
        return self.v0

    def val_lower_bound(self) -> int:
        v = self.val()
        return self.prec if v is None else v

    def val_at_least(self, bound) -> bool:
        """Certified val >= bound (True also when known-zero with prec >= bound)."""
        v = self.val()
        if v is None:
            return self.prec >= bound
        return v >= bound

    def is_zero_at_prec(self) -> bool:
        return self.coeffs[0] == 0

    def coeff_at(self, v: int) -> int:
        """Known coefficient of theta^(-v); raises above the precision."""
        if v >= self.prec:
            raise PrecisionError(f"coefficient at {v} is beyond precision {self.prec}")
        if v < self.v0:
            return 0
        return int(self.coeffs[v - self.v0])

    def leading(self) -> int:
        return int(self.coeffs[0])

    # -- arithmetic --

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("mixed fields")

    def __add__(self, other):
        self._check(other)
        lo = min(self.v0, other.v0)
        hi = min(self.prec, other.prec)
        if hi <= lo:
            return PrecSeries.zero(self.field, hi)
        a = np.zeros(hi - lo, dtype=np.int64)
        b = np.zeros(hi - lo, dtype=np.int64)
        sa = self.coeffs[: max(0, hi - self.v0)]
        a[self.v0 - lo : self.v0 - lo + len(sa)] = sa
        sb = other.coeffs[: max(0, hi - other.v0)]
        b[other.v0 - lo : other.v0 - lo + len(sb)] = sb
        return PrecSeries(self.field, lo, self.field.add(a, b), hi)

    def __neg__(self):
        return PrecSeries(self.field, self.v0, self.field.neg(self.coeffs.copy()), self.prec, trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        prec = min(self.prec + other.v0, other.prec + self.v0)
        v0 = self.v0 + other.v0
        full = _kernels.conv(self.field, self.coeffs, other.coeffs)
        n = prec - v0
        if n <= 0:
            return PrecSeries.zero(self.field, prec)
        out = np.zeros(n, dtype=np.int64)
        take = min(n, len(full))
        out[:take] = full[:take]
        return PrecSeries(self.field, v0, out, prec)

    def scale(self, code: int):
        if code == 0:
            return PrecSeries.zero(self.field, self.prec)
        return PrecSeries(self.field, self.v0, self.field.mul(self.coeffs, np.int64(code)), self.prec, trusted=True)

    def shift(self, k: int):
        """Multiply by theta^k (exponents and precision drop by k)."""
        return PrecSeries(self.field, self.v0 - k, self.coeffs, self.prec - k, trusted=True)

    def inv(self):
        if self.is_zero_at_prec():
            raise PrecisionError("cannot invert a series indistinguishable from zero")
        fld = self.field
        u = self.coeffs
        L = len(u)
        two = int(fld.add(np.int64(1), np.int64(1)))
        y = np.array([int(fld.inv(np.int64(u[0])))], dtype=np.int64)
        while len(y) < L:
            m = min(2 * len(y), L)
            t = fld.neg(_kernels.conv(fld, u[:m], y)[:m])  # -(u*y)
            t[0] = fld.add(t[0], np.int64(two))  # t = 2 - u*y
            y = _kernels.conv(fld, y, t)[:m]
        return PrecSeries(fld, -self.v0, y, self.prec - 2 * self.v0)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if k == 0:
            return PrecSeries.one(self.field, self.prec)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def p_power(self, m: int):
        """Exact x -> x^(p^m): exponents and precision scale by p^m."""
        if m < 0:
            raise ValueError("negative twist is not total on PrecSeries")
        if m == 0:
            return self
        P = self.field.p**m
        n = (self.prec - self.v0 - 1) * P + 1
        out = np.zeros(n, dtype=np.int64)
        out[::P] = self.field.pow(self.coeffs, P)
        pad = self.prec * P - (self.v0 * P + n)
        if pad > 0:
            out = np.concatenate([out, np.zeros(pad, dtype=np.int64)])
        return PrecSeries(self.field, self.v0 * P, out, self.prec * P)

    def truncate(self, prec: int):
        """Forget coefficients at exponents >= prec (prec may not increase)."""
        if prec > self.prec:
            raise PrecisionError("cannot raise precision by truncation")
        if prec <= self.v0:
            return PrecSeries.zero(self.field, prec)
        return PrecSeries(self.field, self.v0, self.coeffs[: prec - self.v0], prec)

    # -- comparisons and output --

    def agrees_with(self, other, upto: int | None = None) -> bool:
        hi = min(self.prec, other.prec)
        if upto is not None:
            hi = min(hi, upto)
        return (self - other).val_at_least(hi)

    def eq_exact(self, other) -> bool:
        return (
            self.field == other.field
            and self.v0 == other.v0
            and self.prec == other.prec
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def nonzero_terms(self):
        """Sorted list of (exponent v, code) with nonzero code."""
        idx = np.nonzero(self.coeffs)[0]
        return [(int(self.v0 + i), int(self.coeffs[i])) for i in idx]

    def __repr__(self):
        terms = self.nonzero_terms()[:6]
        body = " + ".join(f"{c}*T^{-v}" for v, c in terms) or "0"
        return f"<series {body}{' + ...' if len(self.nonzero_terms()) > 6 else ''} (prec {self.prec})>"


def series_inv(x: PrecSeries) -> PrecSeries:
    """Multiplicative inverse; errors when x is zero at its precision."""
    return x.inv()


class ExtScalar:
    """Element of k_inf(w), w^(q-1) = -theta, as q-1 series components."""

    __slots__ = ("field", "comps")

    def __init__(self, field: FqField, comps):
        self.field = field
        comps = tuple(comps)
        if len(comps) != max(field.q - 1, 1):
            raise ValueError(f"need {field.q - 1} components")
        self.comps = comps

    # -- constructors --

    @classmethod
    def from_series(cls, s: PrecSeries):
        field = s.field
        n = max(field.q - 1, 1)
        comps = [s] + [PrecSeries.zero(field, s.prec) for _ in range(n - 1)]
        return cls(field, comps)

    @classmethod
    def zero(cls, field, prec: int):
        return cls.from_series(PrecSeries.zero(field, prec))

    @classmethod
    def one(cls, field, prec: int):
        return cls.from_series(PrecSeries.one(field, prec))

    @classmethod
    def theta_tilde_power(cls, field, j: int, prec: int):
        """w^j reduced to the basis: component j mod (q-1) carries (-theta)^(j div (q-1))."""
        n = max(field.q - 1, 1)
        comp_index = j % n
        k = (j - comp_index) // n
        s = PrecSeries.theta_power(field, k, prec)
        if k % 2 != 0 and field.p != 2:
            s = -s
        comps = [PrecSeries.zero(field, prec) for _ in range(n)]
        comps[comp_index] = s
        return cls(field, comps)

    # -- queries --

    @property
    def n_comp(self):
        return len(self.comps)

    def min_prec_frac(self) -> Fraction:
        """Certified absolute precision as a valuation bound (Fraction)."""
        n = self.n_comp
        return min(Fraction(c.prec) - Fraction(i, n) for i, c in enumerate(self.comps))

    def val(self):
        """Valuation as a Fraction, or None when indistinguishable from zero."""
        n = self.n_comp
        best = None
        for i, c in enumerate(self.comps):
            v = c.val()
            if v is not None:
                cand = Fraction(v) - Fraction(i, n)
                if best is None or cand < best:
                    best = cand
        if best is None:
            return None
        # a zero-at-precision component could still hide something smaller
        for i, c in enumerate(self.comps):
            if c.val() is None and Fraction(c.prec) - Fraction(i, n) <= best:
                return None
        return best

    def val_lower_bound(self) -> Fraction:
        n = self.n_comp
        return min(Fraction(c.val_lower_bound()) - Fraction(i, n) for i, c in enumerate(self.comps))

    def val_at_least(self, bound) -> bool:
        n = self.n_comp
        return all(c.val_at_least(_ceil_frac(Fraction(bound) + Fraction(i, n))) for i, c in enumerate(self.comps))

    def is_zero_at_prec(self) -> bool:
        return all(c.is_zero_at_prec() for c in self.comps)

    def component(self, i: int) -> PrecSeries:
        return self.comps[i]

    def nonzero_components(self):
        return [i for i, c in enumerate(self.comps) if not c.is_zero_at_prec()]

    # -- arithmetic --

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("mixed fields")

    def __add__(self, other):
        self._check(other)
        return ExtScalar(self.field, [a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return ExtScalar(self.field, [-a for a in self.comps])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        n = self.n_comp
        acc: list = [None] * n
        for i, a in enumerate(self.comps):
            for j, b in enumerate(other.comps):
                prod = a * b
                k = i + j
                if k >= n:
                    # w^(q-1) = -theta
                    prod = -prod.shift(1)
                    k -= n
                acc[k] = prod if acc[k] is None else acc[k] + prod
        return ExtScalar(self.field, acc)

    def scale_series(self, s: PrecSeries):
        return ExtScalar(self.field, [c * s for c in self.comps])

    def scale(self, code: int):
        return ExtScalar(self.field, [c.scale(code) for c in self.comps])

    def shift(self, k: int):
        """Multiply by theta^k."""
        return ExtScalar(self.field, [c.shift(k) for c in self.comps])

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if k == 0:
            return ExtScalar.one(self.field, min(c.prec for c in self.comps))
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def p_power(self, m: int):
        """Exact x -> x^(p^m) with basis reduction w^j -> (-theta)^... w^(j')."""
        if m < 0:
            raise ValueError("negative twist is not total")
        if m == 0:
            return self
        fld = self.field
        n = self.n_comp
        P = fld.p**m
        comps: list = [None] * n
        for i, c in enumerate(self.comps):
            s = c.p_power(m)
            j = (i * P) % n
            k = (i * P - j) // n  # w^(iP) = (-theta)^k w^j
            if k:
                s = s.shift(k)
                if k % 2 == 1 and fld.p != 2:
                    s = -s
            comps[j] = s if comps[j] is None else comps[j] + s
        prec_floor = min(int(c.prec) for c in self.comps) * P
        return ExtScalar(fld, [c if c is not None else PrecSeries.zero(fld, prec_floor) for c in comps])

    def inv(self):
        """Inverse via the norm down to k_inf over the w-conjugates."""
        fld = self.field
        n = self.n_comp
        if n == 1:
            return ExtScalar(fld, (self.comps[0].inv(),))
        # conjugates w -> xi*w over xi in F_q^* \ {1}; norm = self * product
        part = None
        for xi in range(2, fld.q):
            conj = ExtScalar(fld, [c.scale(int(fld.pow(np.int64(xi), i))) for i, c in enumerate(self.comps)])
            part = conj if part is None else part * conj
        norm = part * self
        for i in range(1, n):
            if not norm.comps[i].is_zero_at_prec():
                raise PrecisionError("norm did not land in the base series field")
        return part.scale_series(norm.comps[0].inv())

    def truncate_frac(self, bound: Fraction):
        """Forget information above the valuation bound (per component)."""
        n = self.n_comp
        comps = []
        for i, c in enumerate(self.comps):
            p_i = _ceil_frac(Fraction(bound) + Fraction(i, n))
            comps.append(c.truncate(min(c.prec, p_i)))
        return ExtScalar(self.field, comps)

    def __repr__(self):
        parts = [f"w^{i}*({c!r})" for i, c in enumerate(self.comps) if not c.is_zero_at_prec()]
        return "<ext " + (" + ".join(parts) if parts else "0") + ">"


def _ceil_frac(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def frobenius_twist(x, n: int):
    """x^(q^n) for series or extension scalars; exact, positive twists only."""
    if n < 0:
        raise ValueError("negative twists are rejected; reformulate with positive twists")
    return x.p_power(x.field.e * n)
