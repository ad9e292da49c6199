"""Carlitz zeta values and their relation suite.

zeta(n) is summed in degree slices S_d(n) with the ultrametric tail bound
val(S_d(n)) >= d*n, so slices up to d = ceil(P/n) suffice for precision P.

The Anderson-Thakur solver recovers coefficients h_i in k with

    zeta(n) = sum h_i * polylog_n(theta^i),   0 <= i <= ell_n < nq/(q-1),

by scanning family prefixes of increasing length and escalating the degree
bound handed to the linear-relation engine; every reported certificate has
passed the two-precision protocol (identical answer after recomputing all
inputs 20 digits deeper).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .carlitz import pi_tilde, polylog, powersum
from .errors import PrecisionError
from .fq import FqField
from .poly import RationalFunction
from .recognize import DEFAULT_GUARD, combination, escalating_pade, linear_relation_find, relation_candidates
from .series import ExtScalar, PrecSeries

REVERIFY_STEP = 20


def zeta(fieldq: FqField, n: int, prec: int, engine: str = "accel", budget: int = 10**6) -> PrecSeries:
    """zeta_C(n) = sum over monic a of a^(-n), to absolute precision prec."""
    if n < 1:
        raise ValueError("zeta is computed at positive integers")
    acc = PrecSeries.zero(fieldq, prec)
    d = 0
    while d * n < prec:
        acc = acc + powersum(fieldq, d, n, prec, engine=engine, budget=budget)
        d += 1
    return acc.truncate(prec)


def zeta_padded(fieldq: FqField, n: int, prec: int, engine: str = "accel") -> PrecSeries:
    return zeta(fieldq, n, prec, engine=engine)


def pi_power_component(fieldq: FqField, n: int, prec: int) -> PrecSeries:
    """Component-0 series of pi_tilde^n; requires (q-1) | n."""
    q = fieldq.q
    if n % max(q - 1, 1) != 0:
        raise ValueError("pi_tilde^n lies in k_inf only when (q-1) | n")
    extra = 2 * (n * q // (q - 1)) + 8
    piv = pi_tilde(fieldq, prec + extra) ** n
    for i in range(1, piv.n_comp):
        if not piv.comps[i].is_zero_at_prec():
            raise PrecisionError("pi power did not land on the base component")
    comp = piv.comps[0]
    if comp.prec < prec:
        raise PrecisionError("pi power fell short of precision")
    return comp.truncate(prec)


@dataclass
class FrobeniusCertificate:
    q: int
    n: int
    m: int
    prec: int
    guard: int
    residual_val: int | None
    threshold: int
    engine: str
    ok: bool

    def to_json(self):
        return {
            "relation": "frobenius",
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "prec": self.prec,
            "guard": self.guard,
            "residual_val": self.residual_val,
            "threshold": self.threshold,
            "engine": self.engine,
            "ok": self.ok,
        }


def frobenius_check(fieldq: FqField, n: int, m: int, prec: int, guard: int = DEFAULT_GUARD, engine: str = "accel") -> FrobeniusCertificate:
    """Certify zeta(p^m * n) = zeta(n)^(p^m) to valuation prec - guard."""
    p = fieldq.p
    lhs = zeta(fieldq, p**m * n, prec, engine=engine)
    rhs = zeta(fieldq, n, prec, engine=engine).p_power(m)
    diff = lhs - rhs
    threshold = min(lhs.prec, rhs.prec) - guard
    ok = diff.val_at_least(threshold)
    return FrobeniusCertificate(fieldq.q, n, m, prec, guard, diff.val(), threshold, engine, ok)


@dataclass
class RatioCertificate:
    q: int
    n: int
    prec_pair: tuple[int, int]
    guard: int
    value: RationalFunction | None
    degree_bound: int
    residual_val: int | None
    engine: str
    ok: bool
    note: str = ""

    def to_json(self):
        from .serialize import rational_to_json

        return {
            "relation": "euler-carlitz",
            "q": self.q,
            "n": self.n,
            "prec_pair": list(self.prec_pair),
            "guard": self.guard,
            "value": rational_to_json(self.value) if self.value is not None else None,
            "degree_bound": self.degree_bound,
            "residual_val": self.residual_val,
            "engine": self.engine,
            "ok": self.ok,
            "note": self.note,
        }


def euler_carlitz_ratio(fieldq: FqField, n: int, prec: int, guard: int = DEFAULT_GUARD, engine: str = "accel") -> RatioCertificate:
    """Recognize zeta(n)/pi_tilde^n in k for (q-1) | n (two-precision protocol)."""
    q = fieldq.q
    if n % max(q - 1, 1) != 0:
        raise ValueError(f"Euler-Carlitz needs (q-1) | n; got n = {n}, q = {q}")

    def ratio_at(p_work: int) -> PrecSeries:
        z = zeta(fieldq, n, p_work, engine=engine)
        pk = pi_power_component(fieldq, n, p_work + n * 2 + 4)
        return z * pk.inv()

    r1 = ratio_at(prec)
    hit1, d1 = escalating_pade(r1, guard)
    r2 = ratio_at(prec + REVERIFY_STEP)
    hit2, d2 = escalating_pade(r2, guard)
    ok = hit1 is not None and hit2 is not None and hit1 == hit2
    resid = None
    if ok:
        expand = PrecSeries.from_rational(hit1, r2.prec)
        resid = (r2 - expand).val()
    return RatioCertificate(q, n, (prec, prec + REVERIFY_STEP), guard, hit1 if ok else None, max(d1, d2), resid, engine, ok,
                            note="" if ok else "unrecognized-at-precision")


@dataclass
class ATCertificate:
    """Anderson-Thakur decomposition certificate for one n."""

    q: int
    n: int
    ell: int
    h: list  # RationalFunction, length ell + 1
    iota: list[int]
    m_n: int
    residual_val: int | None
    prec_pair: tuple[int, int]
    degree_bound: int
    rank_degree_cap: int
    guard: int
    engine: str
    ok: bool
    note: str = ""

    def to_json(self):
        from .serialize import rational_to_json

        return {
            "relation": "anderson-thakur",
            "q": self.q,
            "n": self.n,
            "ell": self.ell,
            "h": [rational_to_json(h) for h in self.h],
            "iota": list(self.iota),
            "m_n": self.m_n,
            "residual_val": self.residual_val,
            "prec_pair": list(self.prec_pair),
            "degree_bound": self.degree_bound,
            "rank_degree_cap": self.rank_degree_cap,
            "guard": self.guard,
            "engine": self.engine,
            "ok": self.ok,
            "note": self.note,
        }


def ell_max(q: int, n: int) -> int:
    """Largest i with theta^i inside the polylog-n disk: i < nq/(q-1)."""
    return math.ceil(Fraction(n * q, q - 1)) - 1


def _polylog_family(fieldq: FqField, n: int, count: int, prec: int) -> list[PrecSeries]:
    """Component-0 series of polylog_n(theta^i) for i = 0..count-1."""
    out = []
    for i in range(count):
        arg = ExtScalar.from_series(PrecSeries.theta_power(fieldq, i, prec + i + 2))
        val = polylog(n, arg, prec)
        for j in range(1, val.n_comp):
            if not val.comps[j].is_zero_at_prec():
                raise PrecisionError("polylog of a k-argument left the base component")
        out.append(val.comps[0])
    return out


def _solve_at(fieldq, n, prec, guard, d_grid, ell_cap, engine):
    """(ell, D, h list) for the first family prefix admitting a zeta relation."""
    zs = zeta(fieldq, n, prec, engine=engine)
    logs = _polylog_family(fieldq, n, ell_cap + 1, prec)
    for ell in range(0, ell_cap + 1):
        series = [zs] + logs[: ell + 1]
        for D in d_grid:
            try:
                cands = relation_candidates(series, D, guard)
            except PrecisionError:
                break
            for vec in cands:
                if vec[0].is_zero():
                    continue
                a0 = RationalFunction.from_poly(vec[0])
                h = [-(RationalFunction.from_poly(c) / a0) for c in vec[1:]]
                resid = combination(series, vec).val()
                return ell, D, h, resid, logs
    return None


def _rank_with_cap(series_list, prec, guard, cap):
    """Greedy independent subset with an escalating per-size degree cap."""
    kept: list[int] = []
    for i in range(len(series_list)):
        subset = [series_list[j] for j in kept] + [series_list[i]]
        m = len(subset)
        found = None
        D = 4
        while D <= cap:
            limit = (prec - guard - m) // (m + 1)  # window feasibility at base precision
            if D > limit:
                break
            rel = linear_relation_find(subset, D, guard)
            if rel is not None:
                found = rel
                break
            D += 2
        if found is None:
            kept.append(i)
    return len(kept), kept


def anderson_thakur_solve(
    fieldq: FqField,
    n: int,
    prec: int = 100,
    guard: int = DEFAULT_GUARD,
    degree_caps: tuple = (4, 8, 16, 32),
    engine: str = "accel",
) -> ATCertificate:
    """Recover the polylog decomposition of zeta(n) and the rank data m_n.

    The family prefix is grown from ell = 0 up to the disk bound; the first
    prefix carrying a relation with nonzero zeta coefficient wins, and the
    whole solve is repeated at prec + 20 and must reproduce identical h.
    m_n is the greedy rank of the certified polylog family minus one,
    measured with the same protocol.
    """
    q = fieldq.q
    cap = ell_max(q, n)
    got1 = _solve_at(fieldq, n, prec, guard, degree_caps, cap, engine)
    got2 = _solve_at(fieldq, n, prec + REVERIFY_STEP, guard, degree_caps, cap, engine)
    if got1 is None or got2 is None:
        return ATCertificate(q, n, -1, [], [], -1, None, (prec, prec + REVERIFY_STEP),
                             0, 0, guard, engine, False, "no relation found at degree caps")
    ell1, d1, h1, resid1, logs1 = got1
    ell2, d2, h2, resid2, logs2 = got2
    if ell1 != ell2 or h1 != h2:
        return ATCertificate(q, n, ell1, [], [], -1, None, (prec, prec + REVERIFY_STEP),
                             max(d1, d2), 0, guard, engine, False, "two-precision protocol failed")
    # trim trailing zero coefficients
    ell = ell1
    h = list(h1)
    while h and h[-1].is_zero():
        h.pop()
        ell -= 1
    rank_cap = 32
    r1, kept1 = _rank_with_cap(logs1[: ell + 1], prec, guard, rank_cap)
    r2, kept2 = _rank_with_cap(logs2[: ell + 1], prec, guard, rank_cap)
    if (r1, kept1) != (r2, kept2):
        return ATCertificate(q, n, ell, h, [], -1, resid2, (prec, prec + REVERIFY_STEP),
                             max(d1, d2), rank_cap, guard, engine, False, "rank unstable under precision")
    return ATCertificate(q, n, ell, h, kept1, r1 - 1, resid2, (prec, prec + REVERIFY_STEP),
                         max(d1, d2), rank_cap, guard, engine, True)


def at_combination(fieldq: FqField, cert: ATCertificate, prec: int) -> PrecSeries:
    """sum h_i polylog_n(theta^i) rebuilt from a certificate."""
    logs = _polylog_family(fieldq, cert.n, cert.ell + 1, prec)
    acc = None
    for h_i, s in zip(cert.h, logs):
        if h_i.is_zero():
            continue
        term = s * PrecSeries.from_rational(h_i, s.prec + h_i.num.degree + h_i.den.degree + 2)
        acc = term if acc is None else acc + term
    return acc if acc is not None else PrecSeries.zero(fieldq, prec)


def u_set(q: int, p: int, s: int) -> list[int]:
    """U(s): n in 1..s with p not dividing n and (q-1) not dividing n."""
    return [n for n in range(1, s + 1) if n % p != 0 and n % max(q - 1, 1) != 0]


def zeta_trdeg(q: int, p: int, s: int) -> int:
    """Closed-form transcendence degree of the zeta field up to s."""
    return s - s // p - s // (q - 1) + s // (p * (q - 1)) + 1


def zeta_galois_dim(fieldq: FqField, s: int, prec: int = 100, guard: int = DEFAULT_GUARD, engine: str = "accel",
                    certificates: dict | None = None) -> int:
    """Difference-Galois dimension 1 + sum over U(s) of (m_n + 1), numeric m_n."""
    total = 1
    for n in u_set(fieldq.q, fieldq.p, s):
        if certificates is not None and n in certificates:
            cert = certificates[n]
        else:
            cert = anderson_thakur_solve(fieldq, n, prec, guard, engine=engine)
            if certificates is not None:
                certificates[n] = cert
        if not cert.ok:
            raise PrecisionError(f"no Anderson-Thakur certificate for n = {n}")
        total += cert.m_n + 1
    return total
