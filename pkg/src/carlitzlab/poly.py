"""Dense univariate polynomials and rational functions over F_q.

A ``Poly`` is a variable label plus a trailing-zero-free numpy array of field
codes, low degree first.  The label is one of "x", "t", "z", "u"; "x" is the
base indeterminate of the coefficient ring A = F_q[x].  Degree of the zero
polynomial is -inf.

``RationalFunction`` keeps a gcd-reduced pair with monic denominator, so
equality is plain representation equality.

Factorization is squarefree / distinct-degree / equal-degree splitting; the
equal-degree stage draws random splitting polynomials from a generator seeded
by the caller, and the returned factor list is sorted canonically, so the
whole routine is reproducible.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import BudgetExceededError
from .fq import FqField

NEG_INF = float("-inf")

_VALID_VARS = ("x", "t", "z", "u")


def _trim(c: np.ndarray) -> np.ndarray:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


class Poly:
    """Dense polynomial over F_q in one variable."""

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: FqField, var: str, coeffs, trusted: bool = False):
        if var not in _VALID_VARS:
            raise ValueError(f"variable must be one of {_VALID_VARS}")
        self.field = field
        self.var = var
        if trusted:
            self.coeffs = coeffs
        else:
            c = np.asarray(coeffs, dtype=np.int64)
            if c.ndim != 1:
                raise ValueError("coefficients must be one-dimensional")
            if np.any((c < 0) | (c >= field.q)):
                raise ValueError("coefficient codes out of range")
            self.coeffs = _trim(c.copy())
        self.coeffs.setflags(write=False)

    # -- constructors --

    @classmethod
    def zero(cls, field, var="x"):
        return cls(field, var, np.zeros(0, dtype=np.int64), trusted=True)

    @classmethod
    def one(cls, field, var="x"):
        return cls.constant(field, 1, var)

    @classmethod
    def constant(cls, field, code, var="x"):
        code = int(code) % field.q if field.e == 1 else int(code)
        if code == 0:
            return cls.zero(field, var)
        return cls(field, var, np.array([code], dtype=np.int64), trusted=True)

    @classmethod
    def gen(cls, field, var="x"):
        return cls(field, var, np.array([0, 1], dtype=np.int64), trusted=True)

    @classmethod
    def monomial(cls, field, k: int, var="x", coeff: int = 1):
        c = np.zeros(k + 1, dtype=np.int64)
        c[k] = coeff
        return cls(field, var, c)

    # -- basic queries --

    @property
    def degree(self):
        return len(self.coeffs) - 1 if len(self.coeffs) else NEG_INF

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return len(self.coeffs) > 0 and self.coeffs[-1] == 1

    @property
    def lead(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return int(self.coeffs[-1])

    def coeff(self, k: int) -> int:
        return int(self.coeffs[k]) if 0 <= k < len(self.coeffs) else 0

    def key(self):
        """Canonical sort/hash key: (degree, coefficient tuple)."""
        return (len(self.coeffs), tuple(int(c) for c in self.coeffs))

    # -- arithmetic --

    def _check(self, other):
        if self.field != other.field or self.var != other.var:
            raise ValueError("mixed fields or variables")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return Poly(self.field, self.var, _trim(self.field.add(a, b)), trusted=True)

    def __neg__(self):
        return Poly(self.field, self.var, self.field.neg(self.coeffs.copy()), trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field, self.var)
        return Poly(self.field, self.var, _trim(_kernels.conv(self.field, self.coeffs, other.coeffs)), trusted=True)

    def scale(self, code: int):
        if code == 0:
            return Poly.zero(self.field, self.var)
        return Poly(self.field, self.var, self.field.mul(self.coeffs, np.int64(code)), trusted=True)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        fld = self.field
        r = self.coeffs.copy()
        db = other.degree
        if self.degree < db:
            return Poly.zero(fld, self.var), self
        inv_lead = int(fld.inv(np.int64(other.lead)))
        qcoeffs = np.zeros(len(r) - db, dtype=np.int64)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c == 0:
                continue
            factor = int(fld.mul(np.int64(c), np.int64(inv_lead)))
            qcoeffs[k - db] = factor
            r[k - db : k + 1] = fld.sub(r[k - db : k + 1], fld.mul(other.coeffs, np.int64(factor)))
        return (
            Poly(fld, self.var, _trim(qcoeffs), trusted=True),
            Poly(fld, self.var, _trim(r[:db] if db > 0 else r[:0]), trusted=True),
        )

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("exact division has a remainder")
        return q

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(int(self.field.inv(np.int64(self.lead))))

    def gcd(self, other) -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "Poly":
        if len(self.coeffs) <= 1:
            return Poly.zero(self.field, self.var)
        ks = np.arange(1, len(self.coeffs)) % self.field.p
        d = self.field.mul(self.coeffs[1:], ks)
        return Poly(self.field, self.var, _trim(d), trusted=True)

    def evaluate(self, code: int) -> int:
        """Horner evaluation at a field code."""
        fld = self.field
        acc = np.int64(0)
        for c in self.coeffs[::-1]:
            acc = fld.add(fld.mul(acc, np.int64(code)), c)
        return int(acc)

    def compose_power(self, k: int) -> "Poly":
        """Substitute var -> var**k."""
        if self.is_zero():
            return self
        out = np.zeros(self.degree * k + 1, dtype=np.int64)
        out[:: k if k > 0 else 1][: len(self.coeffs)] = self.coeffs
        return Poly(self.field, self.var, out, trusted=True)

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.field, self.var, _trim(fn(self.coeffs.copy())), trusted=True)

    def with_var(self, var: str) -> "Poly":
        return Poly(self.field, var, self.coeffs, trusted=True)

    def powmod(self, k: int, modulus: "Poly") -> "Poly":
        result = Poly.one(self.field, self.var)
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus if k > 1 else base
            k >>= 1
        return result

    # -- comparisons --

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.var == other.var
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.field, self.var, tuple(int(c) for c in self.coeffs)))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = int(self.coeffs[k])
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{self.var}" if c == 1 else f"{c}*{self.var}")
            else:
                terms.append(f"{self.var}^{k}" if c == 1 else f"{c}*{self.var}^{k}")
        return " + ".join(terms)


class RationalFunction:
    """Reduced fraction of polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = True):
        if den is None:
            den = Poly.one(num.field, num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = num.gcd(den)
            if not g.is_one() and not g.is_zero():
                num = num.exact_div(g)
                den = den.exact_div(g)
            if not den.is_monic():
                c = int(den.field.inv(np.int64(den.lead)))
                num = num.scale(c)
                den = den.scale(c)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly):
        return cls(p, None, reduce=False)

    @classmethod
    def zero(cls, field, var="x"):
        return cls(Poly.zero(field, var), None, reduce=False)

    @classmethod
    def one(cls, field, var="x"):
        return cls(Poly.one(field, var), None, reduce=False)

    @property
    def field(self):
        return self.num.field

    @property
    def var(self):
        return self.num.var

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def valuation_at_infinity(self):
        """deg den - deg num; the valuation in the 1/x variable (inf for 0)."""
        if self.is_zero():
            return None
        return self.den.degree - self.num.degree

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num**k, self.den**k)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction.from_poly(other)
        raise TypeError(f"cannot combine RationalFunction with {type(other)}")

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


# -- enumeration --


def monic_iter(field: FqField, d: int, var: str = "x", budget: int = 10**6):
    """Yield the q^d monic polynomials of degree d in lexicographic order.

    Coefficient tuples (c_0, ..., c_{d-1}) are ordered with c_0 as the major
    index, matching the modulus convention.  Raises BudgetExceededError before
    yielding anything if q^d exceeds the budget, so the caller can switch to
    an accelerated engine.
    """
    q = field.q
    if q**d > budget:
        raise BudgetExceededError(f"q^d = {q**d} exceeds budget {budget}")
    for k in range(q**d):
        coeffs = np.empty(d + 1, dtype=np.int64)
        kk = k
        for i in range(d):
            coeffs[i] = kk // q ** (d - 1 - i)
            kk %= q ** (d - 1 - i)
        coeffs[d] = 1
        yield Poly(field, var, coeffs, trusted=True)


def monic_block(field: FqField, d: int, budget: int = 10**6) -> np.ndarray:
    """All monic degree-d coefficient rows as a (q^d, d+1) array."""
    q = field.q
    if q**d > budget:
        raise BudgetExceededError(f"q^d = {q**d} exceeds budget {budget}")
    n = q**d
    out = np.empty((n, d + 1), dtype=np.int64)
    ks = np.arange(n)
    for i in range(d):
        out[:, i] = ks // q ** (d - 1 - i) % q
    out[:, d] = 1
    return out


# -- factorization --


def _frobenius_root_coeffs(field: FqField, coeffs: np.ndarray) -> np.ndarray:
    """Apply the inverse of a -> a^p coefficientwise (p^(e-1) power)."""
    if field.e == 1:
        return coeffs
    return field.pow(coeffs, field.p ** (field.e - 1))


def _pth_root_poly(f: Poly) -> Poly:
    """g with g(x)^p == f(x), assuming f(x) = h(x^p)."""
    p = f.field.p
    taken = f.coeffs[::p].copy()
    return Poly(f.field, f.var, _frobenius_root_coeffs(f.field, taken))


def _squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """List of (squarefree g_i, multiplicity m_i) with f = lead * prod g_i^m_i."""
    out = []

    def rec(g: Poly, mult: int):
        if g.degree <= 0:
            return
        d = g.derivative()
        if d.is_zero():
            rec(_pth_root_poly(g), mult * g.field.p)
            return
        w = g.gcd(d)
        sf = g.exact_div(w)  # squarefree part
        k = 1
        while not sf.is_one():
            # part of sf with multiplicity exactly k in g
            nxt = sf.gcd(w)
            exact = sf.exact_div(nxt)
            if exact.degree > 0:
                out.append((exact.monic(), mult * k))
            sf = nxt
            if not nxt.is_one():
                w = w.exact_div(nxt)
            k += 1
        if w.degree > 0:
            rec(w, mult)

    rec(f.monic(), 1)
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into products of irreducibles of equal degree."""
    fld = f.field
    out = []
    x = Poly.gen(fld, f.var)
    w = x
    d = 0
    rest = f
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        w = w.powmod(fld.q, rest)
        g = rest.gcd(w - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
            w = w % rest
    return out


def _random_poly(field, var, degree, rng) -> Poly:
    coeffs = np.array([rng.randrange(field.q) for _ in range(degree + 1)], dtype=np.int64)
    return Poly(field, var, coeffs)


def _equal_degree_split(f: Poly, d: int, rng) -> list[Poly]:
    """Cantor-Zassenhaus: f squarefree monic, all factors of degree d."""
    fld = f.field
    if f.degree == d:
        return [f]
    q = fld.q
    while True:
        r = _random_poly(fld, f.var, f.degree - 1, rng)
        if r.is_zero() or r.is_constant():
            continue
        g = f.gcd(r)
        if 0 < g.degree < f.degree:
            pass  # lucky gcd split
        elif fld.p == 2:
            # trace map over F_{2^m}, m = e*d
            t = r
            acc = r
            for _ in range(fld.e * d - 1):
                t = t.powmod(2, f)
                acc = (acc + t) % f
            g = f.gcd(acc)
        else:
            h = r.powmod((q**d - 1) // 2, f)
            g = f.gcd(h - Poly.one(fld, f.var))
        if 0 < g.degree < f.degree:
            other = f.exact_div(g)
            return _equal_degree_split(g.monic(), d, rng) + _equal_degree_split(other.monic(), d, rng)


def poly_factor(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor f into monic irreducibles with multiplicities.

    Returns factors sorted by (degree, coefficients); the randomized splitting
    stage is seeded, so the output is reproducible.  The product of the
    factors times the leading coefficient of f equals f.
    """
    import random

    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    found: dict = {}
    for sf, mult in _squarefree_decomposition(f):
        for block, d in _distinct_degree(sf):
            for irr in _equal_degree_split(block, d, rng):
                key = irr.key()
                if key in found:
                    found[key] = (irr, found[key][1] + mult)
                else:
                    found[key] = (irr, mult)
    return sorted(found.values(), key=lambda t: t[0].key())


def euler_phi_A(f: Poly, seed: int = 0) -> int:
    """Order of (A/f)^x for monic f of positive degree."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("euler_phi_A needs a monic polynomial of degree >= 1")
    q = f.field.q
    total = 1
    for irr, m in poly_factor(f, seed=seed):
        qd = q**irr.degree
        total *= qd ** (m - 1) * (qd - 1)
    return total


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    factors = poly_factor(f)
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == f.degree
