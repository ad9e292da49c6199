"""Arithmetic in the finite field F_q, q = p^e.

Field elements are encoded as integers in ``range(q)``: the element with
F_p-coordinates ``(c_0, ..., c_{e-1})`` on the basis ``1, x, ..., x^{e-1}``
modulo the defining polynomial is encoded as ``sum(c_i * p**i)``.  All field
operations are vectorized over numpy int64 arrays of codes, so polynomial and
series layers can work on whole coefficient arrays at once.

The defining modulus of degree e is the lexicographically smallest monic
irreducible over F_p, comparing coefficient tuples ``(c_0, ..., c_{e-1})``
low-degree-first as integers.  This makes every ``FqField(p, e)`` reproducible
with no external tables.

For e > 1 the field carries discrete log/antilog tables with respect to a
fixed multiplicative generator (the smallest one in code order), used for
vectorized multiplication and inversion.  Addition is digitwise mod p.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import FieldError

SIZE_CAP = 1 << 20  # desk-scale cap on q = p^e


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# -- dense F_p[x] helpers used only to build the field (lists of ints) --


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        if c:
            shift = len(a) - len(m)
            for j, mj in enumerate(m):
                a[shift + j] = (a[shift + j] - c * mj) % p
        a.pop()
    return _fp_trim(a)


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_powmod_x(k: int, m, p):
    """x^k mod m over F_p by square and multiply."""
    result = [1]
    base = _fp_mod([0, 1], m, p)
    while k:
        if k & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        k >>= 1
    return result


def _pad_sub(a, b, p):
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _fp_irreducible(m, p) -> bool:
    """Rabin irreducibility test for monic m of degree e over F_p."""
    e = len(m) - 1
    xq = _fp_powmod_x(p**e, m, p)
    if _pad_sub(xq, [0, 1], p):
        return False  # x^(p^e) != x mod m
    for r in _prime_factors(e):
        xr = _fp_powmod_x(p ** (e // r), m, p)
        g = _fp_gcd(_pad_sub(xr, [0, 1], p), m, p)
        if len(g) - 1 != 0:
            return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e over F_p.

    Coefficient tuples (c_0, ..., c_{e-1}) are compared left to right, so c_0
    is the major index.  Returns the full coefficient tuple including the
    leading 1.
    """
    if e == 1:
        return (0, 1)
    for k in range(p**e):
        coeffs = []
        kk = k
        for i in range(e):
            coeffs.append(kk // p ** (e - 1 - i))
            kk %= p ** (e - 1 - i)
        m = coeffs + [1]
        if _fp_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible of degree {e} over F_{p}")  # unreachable


class FqField:
    """Descriptor of F_q with vectorized arithmetic on int64 code arrays.

    Immutable after construction; safe to share between threads.
    """

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if e < 1:
            raise FieldError(f"e = {e} must be >= 1")
        q = p**e
        if q > SIZE_CAP:
            raise FieldError(f"q = {q} exceeds size cap {SIZE_CAP}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = _smallest_irreducible(p, e)
        self._pow_p = np.array([p**i for i in range(e)], dtype=np.int64)
        if e > 1:
            self._build_log_tables()
        else:
            self._exp = None
            self._log = None

    # -- construction of log/antilog tables (e > 1) --

    def _scalar_mul(self, a: int, b: int) -> int:
        da = [(a // self.p**i) % self.p for i in range(self.e)]
        db = [(b // self.p**i) % self.p for i in range(self.e)]
        prod = _fp_mul(_fp_trim(da), _fp_trim(db), self.p)
        prod = _fp_mod(prod, list(self.modulus), self.p)
        return sum(c * self.p**i for i, c in enumerate(prod))

    def _build_log_tables(self):
        q, p, e = self.q, self.p, self.e
        # find a generator of the multiplicative group
        factors = _prime_factors(q - 1)
        gen = None
        for cand in range(p, q):  # elements >= p have a nonzero x-coordinate, start there
            if all(self._scalar_pow(cand, (q - 1) // r) != 1 for r in factors):
                gen = cand
                break
        if gen is None:
            for cand in range(2, q):
                if all(self._scalar_pow(cand, (q - 1) // r) != 1 for r in factors):
                    gen = cand
                    break
        # exp table by iterating the linear "multiply by gen" map, doubling with numpy
        M = self._mul_matrix(gen)
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        digits = np.zeros((q - 1, e), dtype=np.int64)
        digits[0, 0] = 1
        filled = 1
        Mk = M  # invariant: Mk == M**filled at loop entry
        while filled < q - 1:
            take = min(filled, q - 1 - filled)
            digits[filled : filled + take] = digits[:take] @ Mk.T % p
            filled += take
            if filled < q - 1:
                Mk = Mk @ Mk % p
        codes = digits @ self._pow_p
        exp[: q - 1] = codes
        exp[q - 1 :] = codes  # doubled so exp[i+j] needs no reduction mod q-1
        log = np.zeros(q, dtype=np.int64)
        log[codes] = np.arange(q - 1)
        self.generator = gen
        self._exp = exp
        self._log = log

    def _mul_matrix(self, g: int) -> np.ndarray:
        """Matrix of multiplication by g on the F_p-coordinate space."""
        cols = []
        for i in range(self.e):
            basis = self.p**i
            prod = self._scalar_mul(g, basis)
            cols.append([(prod // self.p**j) % self.p for j in range(self.e)])
        return np.array(cols, dtype=np.int64).T

    def _scalar_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._scalar_mul(r, a)
            a = self._scalar_mul(a, a)
            k >>= 1
        return r

    # -- vectorized code arithmetic --

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for i in range(self.e):
            out += ((a // self._pow_p[i] + b // self._pow_p[i]) % self.p) * self._pow_p[i]
        return out

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return (-a) % self.p
        out = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.e):
            out += ((-(a // self._pow_p[i])) % self.p) * self._pow_p[i]
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        nz = (a != 0) & (b != 0)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        la = self._log[np.where(nz, a, 1)]
        lb = self._log[np.where(nz, b, 1)]
        out[nz] = self._exp[(la + lb)[nz]]
        return out if out.shape else np.int64(out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.e == 1:
            return self.pow(a, self.p - 2) if self.p > 2 else np.asarray(a, dtype=np.int64)
        a = np.asarray(a)
        out = self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return out if out.shape else np.int64(out)

    def pow(self, a, k: int):
        """Elementwise a**k for a scalar integer exponent k >= 0."""
        k = int(k)
        if k == 0:
            return np.ones_like(np.asarray(a))
        if k < 0:
            return self.pow(self.inv(a), -k)
        k %= self.q - 1 if self.q > 2 else 1
        if k == 0:
            a = np.asarray(a)
            return np.where(a != 0, 1, 0).astype(np.int64)
        result = None
        base = np.asarray(a)
        while k:
            if k & 1:
                result = base if result is None else self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def to_coords(self, a):
        """F_p coordinates of codes, shape (..., e), low degree first."""
        a = np.asarray(a)
        return (a[..., None] // self._pow_p) % self.p

    def from_coords(self, coords):
        coords = np.asarray(coords, dtype=np.int64) % self.p
        return coords @ self._pow_p

    def element(self, value) -> "FqElement":
        return FqElement(self, int(value) % self.q if self.e == 1 else int(value))

    def __repr__(self):
        return f"FqField(p={self.p}, e={self.e})"

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))


class FqElement:
    """Scalar wrapper over a field code, for API boundaries and tests."""

    __slots__ = ("field", "code")

    def __init__(self, field: FqField, code: int):
        if not 0 <= code < field.q:
            raise ValueError(f"code {code} out of range for q = {field.q}")
        self.field = field
        self.code = code

    @property
    def coords(self) -> list[int]:
        return [int(c) for c in self.field.to_coords(np.int64(self.code))]

    def __add__(self, other):
        return FqElement(self.field, int(self.field.add(np.int64(self.code), np.int64(other.code))))

    def __sub__(self, other):
        return FqElement(self.field, int(self.field.sub(np.int64(self.code), np.int64(other.code))))

    def __mul__(self, other):
        return FqElement(self.field, int(self.field.mul(np.int64(self.code), np.int64(other.code))))

    def __neg__(self):
        return FqElement(self.field, int(self.field.neg(np.int64(self.code))))

    def __pow__(self, k):
        return FqElement(self.field, int(self.field.pow(np.int64(self.code), k)))

    def inverse(self):
        return FqElement(self.field, int(self.field.inv(np.int64(self.code))))

    def __eq__(self, other):
        return isinstance(other, FqElement) and self.field == other.field and self.code == other.code

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        return f"Fq({self.field.q})[{self.code}]"


@functools.lru_cache(maxsize=None)
def fq_field(p: int, e: int = 1) -> FqField:
    """Field descriptor for F_{p^e} with the deterministic modulus."""
    return FqField(p, e)
