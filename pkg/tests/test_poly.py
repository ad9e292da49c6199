import random

import numpy as np
import pytest

from carlitzlab.errors import BudgetExceededError
from carlitzlab.fq import fq_field
from carlitzlab.poly import Poly, RationalFunction, euler_phi_A, is_irreducible, monic_block, monic_iter, poly_factor


def all_polys(field, max_deg):
    q = field.q
    for k in range(q ** (max_deg + 1)):
        cs = np.array([(k // q**i) % q for i in range(max_deg + 1)], dtype=np.int64)
        yield Poly(field, "x", cs)


class TestArithmetic:
    def test_divmod_roundtrip(self, F3, rng):
        for _ in range(200):
            a = Poly(F3, "x", rng.integers(0, 3, rng.integers(1, 12)))
            b = Poly(F3, "x", rng.integers(0, 3, rng.integers(1, 8)))
            if b.is_zero():
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.degree < b.degree or r.is_zero()

    def test_gcd_divides(self, F4, rng):
        for _ in range(100):
            a = Poly(F4, "x", rng.integers(0, 4, 6))
            b = Poly(F4, "x", rng.integers(0, 4, 5))
            g = a.gcd(b)
            if g.is_zero():
                continue
            assert (a % g).is_zero() and (b % g).is_zero()

    def test_derivative_char_p(self, F3):
        x = Poly.gen(F3)
        assert (x**3).derivative().is_zero()
        assert (x**2).derivative() == x.scale(2)


class TestFactor:
    def test_theta_squared(self, F3):
        x = Poly.gen(F3)
        assert poly_factor(x * x) == [(x, 2)]

    def test_split_quadratic_q2(self, F2):
        x = Poly.gen(F2)
        assert poly_factor(x * x + x) == [(x, 1), (x + Poly.one(F2), 1)]

    def test_irreducible_quadratic_q3(self, F3):
        x = Poly.gen(F3)
        f = x * x + Poly.one(F3)
        # no root in F_3 by exhaustive check
        assert all(f.evaluate(c) != 0 for c in range(3))
        assert poly_factor(f) == [(f, 1)]
        assert is_irreducible(f)

    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)])
    def test_refactor_roundtrip(self, p, e):
        # 200 random polynomials per field, 1000 total across the grid
        F = fq_field(p, e)
        rnd = random.Random(1234 + F.q)
        for trial in range(200):
            deg = rnd.randrange(1, 13)
            coeffs = [rnd.randrange(F.q) for _ in range(deg)] + [rnd.randrange(1, F.q)]
            f = Poly(F, "x", np.array(coeffs, dtype=np.int64))
            prod = Poly.constant(F, f.lead)
            for irr, m in poly_factor(f, seed=trial):
                assert irr.is_monic()
                prod = prod * irr**m
            assert prod == f

    def test_deterministic_under_seed(self, F5):
        f = Poly(F5, "x", np.array([1, 2, 3, 4, 0, 1], dtype=np.int64))
        assert poly_factor(f, seed=7) == poly_factor(f, seed=7)


class TestEulerPhi:
    def test_examples(self, F3):
        x = Poly.gen(F3)
        assert euler_phi_A(x) == 2
        assert euler_phi_A(x * x) == 6

    def test_irreducible_gives_qd_minus_1(self, F3, F2):
        x3, x2 = Poly.gen(F3), Poly.gen(F2)
        assert euler_phi_A(x3**2 + Poly.one(F3)) == 8
        assert euler_phi_A(x2**2 + x2 + Poly.one(F2)) == 3

    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2)])
    def test_matches_enumeration(self, p, e):
        F = fq_field(p, e)
        q = F.q
        for d in (1, 2, 3):
            for f in monic_iter(F, d):
                count = sum(
                    1
                    for r in all_polys(F, d - 1)
                    if not r.is_zero() and f.gcd(r).is_one()
                )
                assert euler_phi_A(f) == count

    def test_rejects_nonmonic(self, F3):
        with pytest.raises(ValueError):
            euler_phi_A(Poly.gen(F3).scale(2))


class TestMonicIter:
    def test_degree_zero(self, F3):
        assert [repr(p) for p in monic_iter(F3, 0)] == ["1"]

    def test_degree_one_q2(self, F2):
        assert [repr(p) for p in monic_iter(F2, 1)] == ["x", "x + 1"]

    def test_count_q3_deg2(self, F3):
        polys = list(monic_iter(F3, 2))
        assert len(polys) == 9
        assert len({p.key() for p in polys}) == 9

    def test_budget(self, F3):
        with pytest.raises(BudgetExceededError):
            list(monic_iter(F3, 10, budget=100))

    def test_block_matches_iter(self, F4):
        rows = monic_block(F4, 2)
        polys = list(monic_iter(F4, 2))
        assert len(rows) == len(polys)
        for row, p in zip(rows, polys):
            assert np.array_equal(row, p.coeffs)


class TestRational:
    def test_reduction(self, F3):
        x = Poly.gen(F3)
        r = RationalFunction(x * x + x, x * x)  # common factor x
        assert r.num == x + Poly.one(F3) and r.den == x

    def test_monic_denominator(self, F3):
        x = Poly.gen(F3)
        r = RationalFunction(Poly.one(F3), x.scale(2))
        assert r.den.is_monic()

    def test_field_ops(self, F3, rng):
        x = Poly.gen(F3)
        a = RationalFunction(x + Poly.one(F3), x * x + Poly.one(F3))
        b = RationalFunction(x, x + Poly.constant(F3, 2))
        assert (a + b) - b == a
        assert (a * b) / b == a
        assert (a / a) == RationalFunction.one(F3)
