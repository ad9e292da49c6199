"""Command-line front end: computations, relation certificates, predictors.

Output is a single JSON document on stdout with the run manifest embedded
under "manifest"; identical manifests reproduce byte-identical output.  The
base indeterminate theta is written ``x`` on the command line; rational
arguments parse as ``num/den`` with polynomial parts like ``x^2+2x+1``.

Exit codes: 0 computed/verified; 2 a recognition-style check came back
unrecognized at the working precision; 3 precondition, parse or budget
failure.  Warnings (lowered precision, oracle-only engines) go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .errors import BudgetExceededError, CarlitzLabError, PoleError, PrecisionError
from .fq import fq_field
from .gamma import (
    gamma_eval,
    gamma_trdeg,
    gauss_mult_check,
    joint_trdeg,
    monomial_recognize,
    reflection_check,
    translation_check,
)
from .motives import build_zeta_motive
from .poly import Poly, RationalFunction
from .serialize import ext_to_json, poly_to_json, rational_to_json, series_to_json
from .series import ExtScalar
from .carlitz import pi_tilde
from .zeta import (
    anderson_thakur_solve,
    euler_carlitz_ratio,
    frobenius_check,
    u_set,
    zeta,
    zeta_galois_dim,
    zeta_trdeg,
)

EXIT_OK = 0
EXIT_UNRECOGNIZED = 2
EXIT_PRECONDITION = 3


@dataclass
class RunManifest:
    q: int
    p: int
    e: int
    prec: int
    guard: int
    t_order: int
    budget: int
    seed: int
    engine: str
    command: str
    args: dict
    version: str

    def to_json(self):
        return asdict(self)


def _factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            qq = q
            while qq % p == 0:
                qq //= p
                e += 1
            if qq != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return p, e
    raise ValueError(f"q = {q} is not a prime power")


def _parse_poly(field, text: str) -> Poly:
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            terms.append(cur)
            cur = ch if ch == "-" else ""
        elif ch in "+-" and not cur and ch == "-":
            cur = "-"
        else:
            cur += ch
    terms.append(cur)
    coeffs: dict[int, int] = {}
    for t in terms:
        if not t or t == "-":
            raise ValueError(f"cannot parse term in {text!r}")
        neg = t.startswith("-")
        if neg:
            t = t[1:]
        t = t.replace("*", "")
        if "x" in t:
            head, _, tail = t.partition("x")
            c = int(head) if head else 1
            k = int(tail[1:]) if tail.startswith("^") else (0 if not tail else None)
            if k is None:
                raise ValueError(f"cannot parse term {t!r}")
            if not tail:
                k = 1
        else:
            c = int(t)
            k = 0
        code = c % field.p if field.e == 1 else c % field.q
        if neg:
            code = int(field.neg(np.int64(code)))
        coeffs[k] = int(field.add(np.int64(coeffs.get(k, 0)), np.int64(code)))
    arr = np.zeros(max(coeffs) + 1, dtype=np.int64)
    for k, c in coeffs.items():
        arr[k] = c
    return Poly(field, "x", arr)


def _parse_rational(field, text: str) -> RationalFunction:
    s = text.strip().replace(" ", "")
    depth = 0
    split_at = None
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            split_at = i
            break
    if split_at is None:
        return RationalFunction.from_poly(_parse_poly(field, s))
    num = _parse_poly(field, s[:split_at])
    den = _parse_poly(field, s[split_at + 1 :])
    return RationalFunction(num, den)


def _emit(payload: dict, manifest: RunManifest) -> None:
    payload = dict(payload)
    payload["manifest"] = manifest.to_json()
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _enum_feasible_prec(q: int, n: int, budget: int) -> int:
    d = 0
    while q ** (d + 1) <= budget:
        d += 1
    return d * n


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="field size, a prime power (default 3)")
    common.add_argument("--prec", type=int, default=100, help="target absolute precision (default 100)")
    common.add_argument("--guard", type=int, default=10, help="ultrametric guard digits (default 10)")
    common.add_argument("--t-order", type=int, default=30, dest="t_order", help="t-series truncation order (default 30)")
    common.add_argument("--budget", type=int, default=10**6, help="enumeration budget (default 10^6)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized factorization (default 0)")
    common.add_argument("--engine", choices=["accel", "enum", "auto"], default="accel", help="power-sum/product engine")

    parser = argparse.ArgumentParser(prog="carlitzlab", description="Carlitz zeta / geometric Gamma laboratory over F_q[x]")
    sub = parser.add_subparsers(dest="command", required=True)

    p_zeta = sub.add_parser("zeta", parents=[common], help="Carlitz zeta value zeta_C(n)")
    p_zeta.add_argument("--n", type=int, required=True)

    p_gamma = sub.add_parser("gamma", parents=[common], help="geometric Gamma at a rational argument")
    p_gamma.add_argument("--r", type=str, required=True, help="rational argument, e.g. 1/x")
    p_gamma.add_argument("--recognize-over", choices=["k", "pi"], default=None, dest="recognize_over")

    sub.add_parser("pi-tilde", parents=[common], help="the Carlitz period")

    p_verify = sub.add_parser("verify", parents=[common], help="relation certificates")
    p_verify.add_argument("relation", choices=["translation", "reflection", "gauss", "euler-carlitz", "frobenius", "anderson-thakur", "motive"])
    p_verify.add_argument("--r", type=str, default="1/x")
    p_verify.add_argument("--a", type=str, default="1")
    p_verify.add_argument("--g", type=str, default="x")
    p_verify.add_argument("--n", type=int, default=1)
    p_verify.add_argument("--m", type=int, default=1)

    p_trdeg = sub.add_parser("trdeg", parents=[common], help="transcendence-degree predictors")
    p_trdeg.add_argument("--which", choices=["gamma", "zeta", "joint", "zeta-galois"], required=True)
    p_trdeg.add_argument("--f", type=str, default=None)
    p_trdeg.add_argument("--s", type=int, default=None)

    args = parser.parse_args(argv)
    try:
        p, e = _factor_prime_power(args.q)
        field = fq_field(p, e)
    except Exception as ex:
        sys.stderr.write(f"error: {ex}\n")
        return EXIT_PRECONDITION

    cmd_args = {k: v for k, v in vars(args).items() if k not in {"q", "prec", "guard", "t_order", "budget", "seed", "engine", "command"} and v is not None}
    manifest = RunManifest(args.q, p, e, args.prec, args.guard, args.t_order, args.budget, args.seed, args.engine, args.command, cmd_args, __version__)

    try:
        return _dispatch(args, field, manifest)
    except (PrecisionError, BudgetExceededError, PoleError, ValueError) as ex:
        sys.stderr.write(f"error: {ex}\n")
        _emit({"error": str(ex)}, manifest)
        return EXIT_PRECONDITION
    except CarlitzLabError as ex:
        sys.stderr.write(f"error: {ex}\n")
        _emit({"error": str(ex)}, manifest)
        return EXIT_PRECONDITION


def _dispatch(args, field, manifest: RunManifest) -> int:
    prec, guard = args.prec, args.guard

    if args.command == "zeta":
        prec_eff = prec
        if args.engine == "enum":
            cap = _enum_feasible_prec(field.q, args.n, args.budget)
            if cap < prec_eff:
                sys.stderr.write(f"warning: enumeration budget lowers precision to {cap}\n")
                prec_eff = cap
                manifest.prec = cap
        z = zeta(field, args.n, prec_eff, engine=args.engine, budget=args.budget)
        _emit({"value": series_to_json(z), "n": args.n, "engine": args.engine}, manifest)
        return EXIT_OK

    if args.command == "gamma":
        r = _parse_rational(field, args.r)
        g = gamma_eval(r, prec, engine=args.engine, budget=args.budget)
        payload = {"value": series_to_json(g), "r": rational_to_json(r), "engine": args.engine}
        code = EXIT_OK
        if args.recognize_over is not None:
            if args.recognize_over == "k":
                target = ExtScalar.from_series(g)
            else:
                pi_inv = pi_tilde(field, prec + 8).inv()
                target = pi_inv.scale_series(g)
            cert = monomial_recognize(target, prec - guard, guard, kind=f"gamma-over-{args.recognize_over}")
            payload["certificate"] = cert.to_json()
            code = EXIT_OK if cert.recognized else EXIT_UNRECOGNIZED
        _emit(payload, manifest)
        return code

    if args.command == "pi-tilde":
        val = pi_tilde(field, prec)
        _emit({"value": ext_to_json(val)}, manifest)
        return EXIT_OK

    if args.command == "trdeg":
        which = args.which
        payload: dict = {"which": which}
        if which in ("gamma", "joint"):
            if args.f is None:
                raise ValueError("--f is required for gamma/joint counts")
            f = _parse_poly(field, args.f)
            payload["f"] = poly_to_json(f)
        if which in ("zeta", "joint", "zeta-galois"):
            if args.s is None:
                raise ValueError("--s is required for zeta counts")
        q, p = field.q, field.p
        if which == "gamma":
            payload["value"] = gamma_trdeg(f, seed=args.seed)
            payload["terms"] = {"one": 1, "unit_count_scaled": payload["value"] - 1}
        elif which == "zeta":
            s = args.s
            payload["value"] = zeta_trdeg(q, p, s)
            payload["terms"] = {"s": s, "s_over_p": s // p, "s_over_qm1": s // (q - 1), "s_over_pqm1": s // (p * (q - 1)), "one": 1}
        elif which == "joint":
            s = args.s
            payload["value"] = joint_trdeg(f, s, seed=args.seed)
            payload["terms"] = {"gamma": gamma_trdeg(f, seed=args.seed), "zeta": zeta_trdeg(q, p, s), "overlap": -1}
        else:
            s = args.s
            payload["value"] = zeta_galois_dim(field, s, prec, guard, engine=args.engine)
            payload["terms"] = {"u_set": u_set(q, p, s)}
        _emit(payload, manifest)
        return EXIT_OK

    if args.command == "verify":
        rel = args.relation
        if rel == "translation":
            cert = translation_check(_parse_rational(field, args.r), _parse_poly(field, args.a), prec, guard)
            ok = cert.recognized
        elif rel == "reflection":
            cert = reflection_check(_parse_rational(field, args.r), prec, guard)
            ok = cert.recognized
        elif rel == "gauss":
            cert = gauss_mult_check(_parse_rational(field, args.r), _parse_poly(field, args.g), prec, guard)
            ok = cert.recognized
        elif rel == "euler-carlitz":
            cert = euler_carlitz_ratio(field, args.n, prec, guard, engine=args.engine)
            ok = cert.ok
        elif rel == "frobenius":
            cert = frobenius_check(field, args.n, args.m, prec, guard, engine=args.engine)
            ok = cert.ok
        elif rel == "anderson-thakur":
            cert = anderson_thakur_solve(field, args.n, prec, guard, engine=args.engine)
            ok = cert.ok
        else:  # motive
            at = anderson_thakur_solve(field, args.n, prec, guard, engine=args.engine)
            if not at.ok:
                _emit({"certificate": at.to_json()}, manifest)
                return EXIT_UNRECOGNIZED
            ms = build_zeta_motive(field, at, args.t_order, prec)
            _emit({"certificate": ms.to_json(), "anderson_thakur": at.to_json()}, manifest)
            return EXIT_OK if ms.certificate.ok else EXIT_UNRECOGNIZED
        _emit({"certificate": cert.to_json()}, manifest)
        return EXIT_OK if ok else EXIT_UNRECOGNIZED

    raise ValueError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
