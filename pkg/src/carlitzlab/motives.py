"""Frobenius difference equations: truncated t-series, positive twists,
the Omega series, polylogarithm t-deformations, and the zeta-motive matrices.

Every difference equation is verified in the positive-twist normal form:
sigma(Psi) = Phi Psi, i.e. Psi^(-1) = Phi Psi, becomes

    Psi = Phi^(1) Psi^(1),

so only q-power twists (exact on truncated series) are ever applied.  The
matrix Phi may carry level-1 tower scalars (theta^(i/q) entries); its single
positive twist lands at level 0 where entries embed into k_inf(w) series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceError, PrecisionError
from .fq import FqField
from .poly import Poly
from .series import ExtScalar, PrecSeries
from .tower import TowerScalar
from .zeta import ATCertificate


class TPoly:
    """Polynomial in t with exact TowerScalar coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = cs

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field, level: int = 0):
        return cls(field, [TowerScalar.one(field, level)])

    @classmethod
    def constant(cls, c: TowerScalar):
        return cls(c.field, [c])

    @classmethod
    def t_minus_theta(cls, field, level: int = 0):
        return cls(field, [-TowerScalar.theta(field, level), TowerScalar.one(field, level)])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self):
        return not self.coeffs

    def coeff(self, k: int) -> TowerScalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return TowerScalar.zero(self.field)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return TPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return TPoly.zero(self.field)
        out = [TowerScalar.zero(self.field) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TPoly(self.field, out)

    def __pow__(self, k: int):
        result = TPoly.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def twist(self, m: int = 1) -> "TPoly":
        """Coefficientwise q-power Frobenius (t is fixed)."""
        return TPoly(self.field, [c.twist(m) for c in self.coeffs])

    def divmod_monic(self, other):
        """Long division by a divisor whose leading coefficient is a unit."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero TPoly")
        lead_inv = other.coeffs[-1].inv()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return TPoly.zero(self.field), self
        quot = [TowerScalar.zero(self.field) for _ in range(dq + 1)]
        for k in range(len(rem) - 1, len(other.coeffs) - 2, -1):
            c = rem[k] * lead_inv
            if not c.is_zero():
                quot[k - (len(other.coeffs) - 1)] = c
                for j, oc in enumerate(other.coeffs):
                    rem[k - (len(other.coeffs) - 1) + j] = rem[k - (len(other.coeffs) - 1) + j] - c * oc
            rem.pop()
        return TPoly(self.field, quot), TPoly(self.field, rem)

    def embed(self, prec: int, order: int) -> "TSeriesTrunc":
        """Truncated series with the exact coefficients expanded at prec."""
        coeffs = [self.coeff(k).embed(prec) for k in range(min(len(self.coeffs), order))]
        return TSeriesTrunc(self.field, order, coeffs, prec)

    def __eq__(self, other):
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return " + ".join(f"({c!r})*t^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()) or "0"


class TSeriesTrunc:
    """Series in t modulo t^order with precision-tracked ExtScalar coefficients."""

    __slots__ = ("field", "order", "coeffs")

    def __init__(self, field: FqField, order: int, coeffs, prec_hint: int | None = None):
        if order < 1:
            raise ValueError("truncation order must be positive")
        cs = list(coeffs)[:order]
        if len(cs) < order:
            fill = prec_hint
            if fill is None:
                if not cs:
                    raise ValueError("need a precision hint for an empty coefficient list")
                fill = min(int(c.min_prec_frac().__floor__()) for c in cs)
            cs.extend(ExtScalar.zero(field, fill) for _ in range(order - len(cs)))
        self.field = field
        self.order = order
        self.coeffs = cs

    @classmethod
    def one(cls, field, order: int, prec: int):
        return cls(field, order, [ExtScalar.one(field, prec)], prec_hint=prec)

    @classmethod
    def zero(cls, field, order: int, prec: int):
        return cls(field, order, [], prec_hint=prec)

    def coeff(self, k: int) -> ExtScalar:
        return self.coeffs[k]

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("mixed truncation orders")

    def __add__(self, other):
        self._check(other)
        return TSeriesTrunc(self.field, self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TSeriesTrunc(self.field, self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = [None] * self.order
        for i, a in enumerate(self.coeffs):
            for j in range(0, self.order - i):
                prod = a * other.coeffs[j]
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        return TSeriesTrunc(self.field, self.order, out)

    def scale_ext(self, c: ExtScalar):
        return TSeriesTrunc(self.field, self.order, [a * c for a in self.coeffs])

    def __pow__(self, k: int):
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            prec = min(int(c.min_prec_frac().__floor__()) for c in self.coeffs)
            return TSeriesTrunc.one(self.field, self.order, prec)
        return result

    def twist(self, m: int = 1) -> "TSeriesTrunc":
        """Coefficientwise x -> x^(q^m); exact on the window."""
        return TSeriesTrunc(self.field, self.order, [c.p_power(self.field.e * m) for c in self.coeffs])

    def min_val_bound(self) -> Fraction:
        return min(c.val_lower_bound() for c in self.coeffs)

    def min_prec(self) -> Fraction:
        return min(c.min_prec_frac() for c in self.coeffs)

    def vanishes_to(self, threshold) -> bool:
        return all(c.val_at_least(threshold) for c in self.coeffs)

    def __repr__(self):
        return f"<t-series mod t^{self.order}, val>={self.min_val_bound()}, prec>={self.min_prec()}>"


# -- special series --


def omega_trunc(field: FqField, order: int, prec: int) -> TSeriesTrunc:
    """Omega(t) = w^(-q) prod_(i>=1) (1 - t/theta^(q^i)) mod t^order.

    The partial product stops once omitted factors cannot perturb any kept
    coefficient below the target precision.
    """
    q = field.q
    work = prec + 6
    # w^(-q) = w^(q-2) * (-theta)^(-2), and (-theta)^(-2) = theta^(-2)
    pref_series = PrecSeries.theta_power(field, -2, work)
    prefactor = ExtScalar.theta_tilde_power(field, q - 2, work).scale_series(pref_series)
    cur = TSeriesTrunc(field, order, [ExtScalar.one(field, work)], prec_hint=work)
    i = 1
    while q**i < work + 2:
        factor = TSeriesTrunc(
            field,
            order,
            [ExtScalar.one(field, work), -ExtScalar.from_series(PrecSeries.theta_power(field, -(q**i), q**i + work))],
            prec_hint=work,
        )
        cur = cur * factor
        i += 1
    return cur.scale_ext(prefactor)


def l_series(alpha: TowerScalar, n: int, order: int, prec: int) -> TSeriesTrunc:
    """L_{alpha,n}(t) = alpha + sum_i alpha^(q^i) / prod_{j<=i} (t - theta^(q^j))^n.

    alpha must satisfy |alpha| < q^(nq/(q-1)); terms are included until their
    coefficients sit entirely above the precision target.
    """
    field = alpha.field
    q = field.q
    aval = alpha.val_inf()
    if aval is None:
        return TSeriesTrunc.zero(field, order, prec)
    if aval <= Fraction(-n * q, q - 1):
        raise ConvergenceError("alpha outside the polylog disk")
    work = prec + 6
    acc = TSeriesTrunc(field, order, [alpha.embed(work)], prec_hint=work)
    g = TSeriesTrunc.one(field, order, work)
    i = 0
    while True:
        i += 1
        g = g * _geometric_inverse(field, q**i, n, order, work)
        tw = alpha.twist(i)
        term = g.scale_ext(tw.embed(work))
        acc = acc + term
        if term.min_val_bound() >= prec:
            break
        if i > 60:
            raise PrecisionError("l_series term budget exhausted")
    return acc


def _geometric_inverse(field, ex: int, n: int, order: int, work: int) -> TSeriesTrunc:
    """(t - theta^ex)^(-n) mod t^order: coefficient of t^m is
    binom(-n, m)-free char-p form computed by repeated multiplication."""
    base = TSeriesTrunc(
        field,
        order,
        [ExtScalar.from_series(-PrecSeries.theta_power(field, -ex * (m + 1), ex * (m + 1) + work)) for m in range(order)],
        prec_hint=work,
    )
    return base**n


# -- matrices --


def mat_mul(A, B):
    rows = len(A)
    mid = len(B)
    cols = len(B[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(mid):
                prod = A[i][k] * B[k][j]
                acc = prod if acc is None else acc + prod
            row.append(acc)
        out.append(row)
    return out


def mat_twist(M, m: int = 1):
    return [[entry.twist(m) for entry in row] for row in M]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def tpoly_det(M) -> TPoly:
    """Determinant by Laplace expansion (matrices here are tiny)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    field = M[0][0].field
    acc = TPoly.zero(field)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * tpoly_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def det_shape(M) -> tuple[TowerScalar, int]:
    """Check det M = c (t - theta)^s symbolically; returns (c, s)."""
    det = tpoly_det(M)
    if det.is_zero():
        raise ValueError("determinant vanishes")
    field = det.field
    level = 1 if any(c.level == 1 for c in det.coeffs) else 0
    lin = TPoly.t_minus_theta(field, level)
    s = 0
    while det.degree >= 1:
        quot, rem = det.divmod_monic(lin)
        if not rem.is_zero():
            raise ValueError("determinant is not c(t - theta)^s")
        det = quot
        s += 1
    c = det.coeff(0)
    if c.is_zero():
        raise ValueError("determinant is not c(t - theta)^s")
    return c, s


@dataclass
class TrivializationCertificate:
    label: str
    order: int
    threshold: int
    residual_val: object  # Fraction lower bound on the residual entries
    ok: bool

    def to_json(self):
        return {
            "relation": "trivialization",
            "label": self.label,
            "order": self.order,
            "threshold": self.threshold,
            "residual_val": str(self.residual_val),
            "ok": self.ok,
        }


def verify_trivialization(phi, psi, order: int, threshold: int, label: str = "") -> TrivializationCertificate:
    """Check Psi = Phi^(1) Psi^(1) coefficientwise to the given valuation.

    phi: square matrix of TPoly (may be level 1); psi: matching matrix of
    TSeriesTrunc.  The positive twist of phi must land at level 0.
    """
    size = len(phi)
    if any(len(r) != size for r in phi) or len(psi) != size or any(len(r) != size for r in psi):
        raise ValueError("trivialization check needs matching square matrices")
    prec = min(min(int(math.floor(e.min_prec())) for e in row) for row in psi)
    phi_tw = [[entry.twist(1).embed(prec + 2, order) for entry in row] for row in phi]
    psi_tw = mat_twist(psi, 1)
    rhs = mat_mul(phi_tw, psi_tw)
    resid = mat_sub(psi, rhs)
    min_resid = min(min(e.min_val_bound() for e in row) for row in resid)
    ok = all(all(e.vanishes_to(threshold) for e in row) for row in resid)
    return TrivializationCertificate(label, order, threshold, min_resid, ok)


@dataclass
class MotiveSystem:
    """Matrix pair (Phi, Psi) with a verified trivialization."""

    phi: list
    psi: list
    label: str
    det_exponent: int
    certificate: TrivializationCertificate

    @property
    def size(self):
        return len(self.phi)

    def to_json(self):
        return {
            "label": self.label,
            "size": self.size,
            "det_exponent": self.det_exponent,
            "certificate": self.certificate.to_json(),
        }


def build_carlitz_motive(field: FqField, n: int, order: int, prec: int, threshold: int | None = None) -> MotiveSystem:
    """The n-th tensor power of the Carlitz motive: ((t-theta)^n, Omega^n)."""
    phi = [[TPoly.t_minus_theta(field) ** n]]
    omega = omega_trunc(field, order, prec + 2)
    psi = [[omega**n]]
    if threshold is None:
        threshold = prec - 10
    cert = verify_trivialization(phi, psi, order, threshold, label=f"carlitz^{n}")
    c, s = det_shape(phi)
    if s != n:
        raise ValueError("carlitz motive determinant exponent mismatch")
    return MotiveSystem(phi, psi, f"carlitz^{n}", s, cert)


def build_zeta_motive(field: FqField, cert: ATCertificate, order: int, prec: int, threshold: int | None = None) -> MotiveSystem:
    """Matrices attached to zeta(n) through an Anderson-Thakur certificate.

    First column (t-theta)^n, theta^(iota_i/q) (t-theta)^n below; the
    trivialization first column is Omega^n, L_{theta^iota_i, n} Omega^n.
    """
    if not cert.ok:
        raise ValueError("zeta motive needs a passing Anderson-Thakur certificate")
    n = cert.n
    iotas = list(cert.iota)
    size = len(iotas) + 1
    lvl1_one = TowerScalar.one(field, 1)
    tmt1 = TPoly.t_minus_theta(field, 1) ** n
    phi = [[TPoly.zero(field) for _ in range(size)] for _ in range(size)]
    phi[0][0] = tmt1
    for r, io in enumerate(iotas):
        phi[r + 1][0] = TPoly.constant(TowerScalar.u(field) ** io) * tmt1
        phi[r + 1][r + 1] = TPoly.constant(lvl1_one)
    omega = omega_trunc(field, order, prec + 2)
    om_n = omega**n
    psi = [[TSeriesTrunc.zero(field, order, prec) for _ in range(size)] for _ in range(size)]
    psi[0][0] = om_n
    for r, io in enumerate(iotas):
        alpha = TowerScalar.theta(field) ** io
        psi[r + 1][0] = l_series(alpha, n, order, prec + 2) * om_n
        psi[r + 1][r + 1] = TSeriesTrunc.one(field, order, prec)
    if threshold is None:
        threshold = prec - 10
    label = f"zeta-motive(n={n})"
    tcert = verify_trivialization(phi, psi, order, threshold, label=label)
    c, s = det_shape(phi)
    if s != n:
        raise ValueError("zeta motive determinant exponent mismatch")
    return MotiveSystem(phi, psi, label, s, tcert)


def build_direct_sum(systems: list) -> MotiveSystem:
    """Block-diagonal sum; the verification certificate is recomputed."""
    if not systems:
        raise ValueError("direct sum of an empty list")
    field = systems[0].phi[0][0].field
    order = systems[0].psi[0][0].order
    total = sum(s.size for s in systems)
    phi = [[TPoly.zero(field) for _ in range(total)] for _ in range(total)]
    prec = min(int(math.floor(s.psi[0][0].min_prec())) for s in systems)
    psi = [[TSeriesTrunc.zero(field, order, prec) for _ in range(total)] for _ in range(total)]
    off = 0
    for s in systems:
        for i in range(s.size):
            for j in range(s.size):
                phi[off + i][off + j] = s.phi[i][j]
                psi[off + i][off + j] = s.psi[i][j]
        off += s.size
    threshold = min(s.certificate.threshold for s in systems)
    label = "+".join(s.label for s in systems)
    cert = verify_trivialization(phi, psi, order, threshold, label=label)
    det_exp = sum(s.det_exponent for s in systems)
    return MotiveSystem(phi, psi, label, det_exp, cert)


def evaluate_at_theta(x: TSeriesTrunc, prec: int) -> ExtScalar:
    """sum c_j theta^j with the empirical entireness guard.

    Requires val(c_j) - j to be strictly increasing over the last five
    coefficients; the result precision is capped by the last term's
    valuation, standing in for the unknown tail.
    """
    vals = [x.coeffs[j].val_lower_bound() - j for j in range(x.order)]
    tail = vals[-1]
    # zero-at-precision coefficients carry no evidence against entireness
    nz_vals = [v for j, v in enumerate(vals) if not x.coeffs[j].is_zero_at_prec()]
    witness = nz_vals[-6:]
    for a, b in zip(witness[:-1], witness[1:]):
        if not b > a:
            raise PrecisionError("entireness guard failed: coefficient valuations not increasing")
    acc = None
    for j in range(x.order):
        term = x.coeffs[j].shift(j)
        acc = term if acc is None else acc + term
    bound = min(Fraction(prec), tail, acc.min_prec_frac())
    return acc.truncate_frac(bound)
