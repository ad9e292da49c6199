"""Carlitz division polynomials C_a(t,z) and cyclotomic factors.

C_a is built by the recursion C_{theta b + eps}(t,z) = C_b(t, tz + z^q) + eps z
and is F_q-linear in z, so internally it is a vector of F_q[t] coefficients
indexed by z-exponent q^j.  The public objects are ``BiPoly`` values
(polynomials in z whose coefficients are polynomials in t), which also
support the exact division needed to carve out the cyclotomic factor

    C_f^* = C_f / prod of C_g^* over proper monic divisors g of f,

with the convention C_1^* = z (accounting for the zero residue), so that the
product over all monic divisors of f reassembles C_f exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import ConsistencyError
from .fq import FqField
from .poly import Poly, poly_factor
from .series import ExtScalar, PrecSeries


class BiPoly:
    """Polynomial in z with F_q[t] coefficients, dense in the z-exponent."""

    __slots__ = ("field", "zcoeffs")

    def __init__(self, field: FqField, zcoeffs):
        zc = list(zcoeffs)
        while zc and zc[-1].is_zero():
            zc.pop()
        self.field = field
        self.zcoeffs = zc

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def z_mono(cls, field, k: int = 1):
        return cls(field, [Poly.zero(field, "t")] * k + [Poly.one(field, "t")])

    @property
    def z_degree(self):
        return len(self.zcoeffs) - 1 if self.zcoeffs else float("-inf")

    def is_zero(self):
        return not self.zcoeffs

    def zcoeff(self, k: int) -> Poly:
        return self.zcoeffs[k] if 0 <= k < len(self.zcoeffs) else Poly.zero(self.field, "t")

    def is_monic_in_z(self):
        return bool(self.zcoeffs) and self.zcoeffs[-1].is_one()

    def __add__(self, other):
        n = max(len(self.zcoeffs), len(other.zcoeffs))
        return BiPoly(self.field, [self.zcoeff(i) + other.zcoeff(i) for i in range(n)])

    def __neg__(self):
        return BiPoly(self.field, [-c for c in self.zcoeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return BiPoly.zero(self.field)
        out = [Poly.zero(self.field, "t")] * (len(self.zcoeffs) + len(other.zcoeffs) - 1)
        for i, a in enumerate(self.zcoeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.zcoeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BiPoly(self.field, out)

    def exact_div(self, other) -> "BiPoly":
        """Exact z-division by a divisor monic in z; aborts on a remainder."""
        if not other.is_monic_in_z():
            raise ValueError("divisor must be monic in z")
        rem = list(self.zcoeffs)
        dz = other.z_degree
        if len(rem) - 1 < dz:
            if self.is_zero():
                return BiPoly.zero(self.field)
            raise ConsistencyError("cyclotomic division left a remainder")
        out = [Poly.zero(self.field, "t")] * (len(rem) - dz)
        for k in range(len(rem) - 1, dz - 1, -1):
            c = rem[k]
            if not c.is_zero():
                out[k - dz] = c
                for j in range(dz + 1):
                    rem[k - dz + j] = rem[k - dz + j] - c * other.zcoeff(j)
            rem.pop()
        if any(not r.is_zero() for r in rem):
            raise ConsistencyError("cyclotomic division left a remainder")
        return BiPoly(self.field, out)

    def eval_theta(self, z: ExtScalar) -> ExtScalar:
        """Specialize t = theta and evaluate at an ExtScalar point (Horner)."""
        prec_hint = min(c.prec for c in z.comps)
        acc = None
        for k in range(len(self.zcoeffs) - 1, -1, -1):
            if acc is not None:
                acc = acc * z
            c = self.zcoeffs[k].with_var("x")
            if not c.is_zero():
                term = ExtScalar.from_series(PrecSeries.from_poly(c, prec_hint + c.degree + 1))
                acc = term if acc is None else acc + term
        if acc is None:
            return ExtScalar.zero(self.field, prec_hint)
        return acc

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.field == other.field and self.zcoeffs == other.zcoeffs

    def __repr__(self):
        terms = []
        for k in range(len(self.zcoeffs) - 1, -1, -1):
            c = self.zcoeffs[k]
            if c.is_zero():
                continue
            terms.append(f"({c!r})*z^{k}" if k else f"({c!r})")
        return " + ".join(terms) if terms else "0"


def _division_vector(a: Poly) -> list[Poly]:
    """Coefficients c_j of z^(q^j) in C_a, as polynomials in t."""
    fld = a.field
    q = fld.q
    if a.is_zero():
        return []
    eps = a.coeff(0)
    b = Poly(fld, a.var, a.coeffs[1:].copy() if a.degree >= 1 else np.zeros(0, dtype=np.int64))
    sub = _division_vector(b)
    out = [Poly.zero(fld, "t") for _ in range(len(sub) + 1)]
    for j, c in enumerate(sub):
        # z^(q^j) composed with tz + z^q gives t^(q^j) z^(q^j) + z^(q^(j+1))
        out[j] = out[j] + c * Poly.monomial(fld, q**j, "t")
        out[j + 1] = out[j + 1] + c
    if eps:
        out[0] = out[0] + Poly.constant(fld, eps, "t")
    while out and out[-1].is_zero():
        out.pop()
    return out


def _vector_to_bipoly(field, vec) -> BiPoly:
    if not vec:
        return BiPoly.zero(field)
    q = field.q
    zc = [Poly.zero(field, "t")] * (q ** (len(vec) - 1) + 1)
    for j, c in enumerate(vec):
        zc[q**j] = c
    return BiPoly(field, zc)


def division_poly(a: Poly) -> BiPoly:
    """C_a(t,z), F_q-linear in z with z-degree q^deg(a)."""
    return _vector_to_bipoly(a.field, _division_vector(a))


def compose_division(a: Poly, b: Poly) -> BiPoly:
    """C_a(t, C_b(t,z)) computed on the linear coefficient vectors."""
    fld = a.field
    q = fld.q
    va = _division_vector(a)
    vb = _division_vector(b)
    if not va or not vb:
        return BiPoly.zero(fld)
    out = [Poly.zero(fld, "t") for _ in range(len(va) + len(vb) - 1)]
    for j, cj in enumerate(va):
        if cj.is_zero():
            continue
        for i, di in enumerate(vb):
            if di.is_zero():
                continue
            # (d_i z^(q^i))^(q^j) contributes d_i^(q^j) z^(q^(i+j))
            out[i + j] = out[i + j] + cj * di.compose_power(q**j)
    return _vector_to_bipoly(fld, out)


def monic_divisors(f: Poly, seed: int = 0) -> list[Poly]:
    """All monic divisors of f, sorted canonically (1 and f included)."""
    factors = poly_factor(f, seed=seed)
    divs = [Poly.one(f.field, f.var)]
    for irr, mult in factors:
        divs = [d * irr**k for d in divs for k in range(mult + 1)]
    return sorted(divs, key=lambda p: p.key())


_cyclo_cache: dict = {}


def cyclotomic_star(f: Poly, seed: int = 0) -> BiPoly:
    """The cyclotomic factor C_f^* of C_f, with C_1^* = z by convention.

    Computed by exact division of C_f by the product of C_g^* over the proper
    monic divisors g; the z-degree of the result is #(A/f)^x for deg f >= 1.
    """
    if f.is_constant():
        if f.is_one():
            return BiPoly.z_mono(f.field, 1)
        raise ValueError("cyclotomic factor needs a monic polynomial")
    if not f.is_monic():
        raise ValueError("cyclotomic factor needs a monic polynomial")
    key = (f.field, f.key())
    if key in _cyclo_cache:
        return _cyclo_cache[key]
    prod = None
    for g in monic_divisors(f, seed=seed):
        if g == f:
            continue
        cg = cyclotomic_star(g, seed=seed)
        prod = cg if prod is None else prod * cg
    result = division_poly(f).exact_div(prod)
    _cyclo_cache[key] = result
    return result
