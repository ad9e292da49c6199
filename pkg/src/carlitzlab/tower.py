"""Exact scalars in k(w) and its inverse-Frobenius extension.

A ``TowerScalar`` is a (q-1)-vector of rational functions over the basis
1, w, ..., w^(q-2), where w^(q-1) = -theta.  Level 0 scalars have components
in F_q(x) with x = theta; level 1 components live in F_q(u) with theta = u^q,
which is exactly enough to house theta^(i/q) (written u^i).  Level 1 is the
home of the exact matrix entries that need one inverse Frobenius; a single
twist lands them back at level 0.

``qth_root`` inverts the Frobenius where possible and returns None otherwise
(the tower is deliberately not extended beyond level 1).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fq import FqField
from .poly import Poly, RationalFunction
from .series import ExtScalar, PrecSeries


def _compose_power(rf: RationalFunction, k: int) -> RationalFunction:
    """Substitute var -> var^k in an exact rational function."""
    return RationalFunction(rf.num.compose_power(k), rf.den.compose_power(k), reduce=False)


def _decimate(rf: RationalFunction, k: int) -> RationalFunction | None:
    """Inverse of _compose_power: s with s(var^k) = rf, or None."""
    for part in (rf.num, rf.den):
        for j in range(len(part.coeffs)):
            if part.coeffs[j] != 0 and j % k != 0:
                return None
    num = Poly(rf.field, rf.var, rf.num.coeffs[::k].copy() if not rf.num.is_zero() else rf.num.coeffs)
    den = Poly(rf.field, rf.var, rf.den.coeffs[::k].copy())
    return RationalFunction(num, den, reduce=False)


class TowerScalar:
    """Exact element of k(w) (level 0) or k(theta^(1/q))(w) (level 1)."""

    __slots__ = ("field", "level", "comps")

    def __init__(self, field: FqField, level: int, comps):
        if level not in (0, 1):
            raise ValueError("tower level must be 0 or 1")
        comps = tuple(comps)
        n = max(field.q - 1, 1)
        if len(comps) != n:
            raise ValueError(f"need {n} components")
        var = "x" if level == 0 else "u"
        for c in comps:
            if c.var != var:
                raise ValueError(f"level {level} components must be in variable {var}")
        self.field = field
        self.level = level
        self.comps = comps

    # -- constructors --

    @classmethod
    def from_rational(cls, rf: RationalFunction, level: int = 0):
        field = rf.field
        n = max(field.q - 1, 1)
        zero = RationalFunction.zero(field, rf.var)
        return cls(field, level, [rf] + [zero] * (n - 1))

    @classmethod
    def zero(cls, field, level: int = 0):
        return cls.from_rational(RationalFunction.zero(field, "x" if level == 0 else "u"), level)

    @classmethod
    def one(cls, field, level: int = 0):
        return cls.from_rational(RationalFunction.one(field, "x" if level == 0 else "u"), level)

    @classmethod
    def theta(cls, field, level: int = 0):
        if level == 0:
            return cls.from_rational(RationalFunction.from_poly(Poly.gen(field, "x")), 0)
        return cls.from_rational(RationalFunction.from_poly(Poly.monomial(field, field.q, "u")), 1)

    @classmethod
    def u(cls, field):
        """theta^(1/q), only available at level 1."""
        return cls.from_rational(RationalFunction.from_poly(Poly.gen(field, "u")), 1)

    @classmethod
    def theta_tilde_power(cls, field, j: int, level: int = 0):
        n = max(field.q - 1, 1)
        i = j % n
        k = (j - i) // n
        var = "x" if level == 0 else "u"
        mono = Poly.monomial(field, (k if level == 0 else k * field.q), var) if k >= 0 else None
        if k >= 0:
            rf = RationalFunction.from_poly(mono)
        else:
            den = Poly.monomial(field, (-k if level == 0 else -k * field.q), var)
            rf = RationalFunction(Poly.one(field, var), den, reduce=False)
        if k % 2 != 0 and field.p != 2:
            rf = -rf
        zero = RationalFunction.zero(field, var)
        comps = [zero] * n
        comps[i] = rf
        return cls(field, level, comps)

    # -- level management --

    def lift(self) -> "TowerScalar":
        """Embed level 0 into level 1 via x -> u^q."""
        if self.level == 1:
            return self
        q = self.field.q
        comps = [
            RationalFunction(c.num.compose_power(q).with_var("u"), c.den.compose_power(q).with_var("u"), reduce=False)
            for c in self.comps
        ]
        return TowerScalar(self.field, 1, comps)

    def reduce_level(self) -> "TowerScalar | None":
        """Rewrite a level 1 scalar at level 0, or None if u appears bare."""
        if self.level == 0:
            return self
        out = []
        for c in self.comps:
            dec = _decimate(c, self.field.q)
            if dec is None:
                return None
            out.append(RationalFunction(dec.num.with_var("x"), dec.den.with_var("x"), reduce=False))
        return TowerScalar(self.field, 0, out)

    def _minus_theta(self) -> RationalFunction:
        var = "x" if self.level == 0 else "u"
        k = 1 if self.level == 0 else self.field.q
        return RationalFunction.from_poly(-Poly.monomial(self.field, k, var))

    @staticmethod
    def _align(a: "TowerScalar", b: "TowerScalar"):
        if a.level == b.level:
            return a, b
        return a.lift(), b.lift()

    # -- arithmetic --

    def __add__(self, other):
        a, b = TowerScalar._align(self, other)
        return TowerScalar(a.field, a.level, [x + y for x, y in zip(a.comps, b.comps)])

    def __neg__(self):
        return TowerScalar(self.field, self.level, [-c for c in self.comps])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = TowerScalar._align(self, other)
        n = max(a.field.q - 1, 1)
        mt = a._minus_theta()
        zero = RationalFunction.zero(a.field, a.comps[0].var)
        acc = [zero] * n
        for i, ci in enumerate(a.comps):
            if ci.is_zero():
                continue
            for j, cj in enumerate(b.comps):
                if cj.is_zero():
                    continue
                prod = ci * cj
                k = i + j
                if k >= n:
                    prod = prod * mt
                    k -= n
                acc[k] = acc[k] + prod
        return TowerScalar(a.field, a.level, acc)

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = TowerScalar.one(self.field, self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def inv(self) -> "TowerScalar":
        """Exact inverse via the norm over the w-conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero tower scalar")
        fld = self.field
        n = max(fld.q - 1, 1)
        if n == 1:
            return TowerScalar(fld, self.level, (self.comps[0].inverse(),))
        part = None
        for xi in range(2, fld.q):
            conj = TowerScalar(
                fld,
                self.level,
                [c * RationalFunction.from_poly(Poly.constant(fld, int(fld.pow(np.int64(xi), i)), c.var)) for i, c in enumerate(self.comps)],
            )
            part = conj if part is None else part * conj
        norm = part * self
        for i in range(1, n):
            if not norm.comps[i].is_zero():
                raise ArithmeticError("norm failed to land in the base field")
        inv_norm = norm.comps[0].inverse()
        return TowerScalar(fld, part.level, [c * inv_norm for c in part.comps])

    def twist(self, m: int = 1) -> "TowerScalar":
        """Exact q-power Frobenius applied m times."""
        out = self
        for _ in range(m):
            n = max(out.field.q - 1, 1)
            mt = out._minus_theta()
            var = out.comps[0].var
            zero = RationalFunction.zero(out.field, var)
            comps = [zero] * n
            for i, c in enumerate(out.comps):
                if c.is_zero():
                    continue
                comps[i] = _compose_power(c, out.field.q) * mt**i
            out = TowerScalar(out.field, out.level, comps)
        return out

    # -- conversion --

    def embed(self, prec: int) -> ExtScalar:
        """Expand as an ExtScalar at the given precision (level 0 required)."""
        base = self if self.level == 0 else self.reduce_level()
        if base is None:
            raise ValueError("cannot embed a genuine level 1 scalar into k_inf(w)")
        return ExtScalar(self.field, [PrecSeries.from_rational(c, prec) for c in base.comps])

    def val_inf(self) -> Fraction | None:
        """Exact valuation at infinity, None for zero."""
        n = max(self.field.q - 1, 1)
        best = None
        for i, c in enumerate(self.comps):
            v = c.valuation_at_infinity()
            if v is None:
                continue
            if self.level == 1:
                v = Fraction(v, self.field.q)
            cand = Fraction(v) - Fraction(i, n)
            if best is None or cand < best:
                best = cand
        return best

    def __eq__(self, other):
        if not isinstance(other, TowerScalar):
            return False
        a, b = TowerScalar._align(self, other)
        return a.comps == b.comps

    def __hash__(self):
        return hash((self.field, self.level, self.comps))

    def __repr__(self):
        parts = [f"w^{i}*({c!r})" for i, c in enumerate(self.comps) if not c.is_zero()]
        return "<tower L%d %s>" % (self.level, " + ".join(parts) if parts else "0")


def qth_root(x: TowerScalar) -> TowerScalar | None:
    """y with y^q = x inside tower level 1, or None when no such y exists."""
    fld = x.field
    lifted = x.lift()
    n = max(fld.q - 1, 1)
    u_q = RationalFunction.from_poly(Poly.monomial(fld, fld.q, "u"))
    out = []
    for j, c in enumerate(lifted.comps):
        if c.is_zero():
            out.append(c)
            continue
        r = c / ((-u_q) ** j) if j else c
        dec = _decimate(r, fld.q)
        if dec is None:
            return None
        out.append(RationalFunction(dec.num.with_var("u"), dec.den.with_var("u"), reduce=False))
    return TowerScalar(fld, 1, out)
