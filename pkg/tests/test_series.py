import numpy as np
import pytest
from fractions import Fraction

from carlitzlab.errors import PrecisionError
from carlitzlab.fq import fq_field
from carlitzlab.poly import Poly, RationalFunction
from carlitzlab.series import ExtScalar, PrecSeries, frobenius_twist, series_inv


def rand_series(F, rng, v0_range=(-5, 5), prec_range=(10, 30)):
    v0 = int(rng.integers(*v0_range))
    prec = int(rng.integers(*prec_range))
    return PrecSeries(F, v0, rng.integers(0, F.q, prec - v0), prec)


class TestInverse:
    def test_inv_theta(self, F3):
        s = PrecSeries.from_poly(Poly.gen(F3), 40)
        si = series_inv(s)
        assert si.val() == 1 and si.leading() == 1
        assert (s * si - PrecSeries.one(F3, 40)).val() is None

    def test_geometric(self, F3):
        g = (PrecSeries.one(F3, 40) - PrecSeries.theta_power(F3, -1, 40)).inv()
        assert all(c == 1 for _, c in g.nonzero_terms())

    def test_zero_window_rejected(self, F3):
        with pytest.raises(PrecisionError):
            PrecSeries.zero(F3, 20).inv()


class TestUltrametric:
    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2)])
    def test_valuation_rules(self, p, e):
        # ultrametric on 10^4 random pairs across the parametrized fields
        F = fq_field(p, e)
        rng = np.random.default_rng(99 + F.q)
        for _ in range(3400):
            a = rand_series(F, rng)
            b = rand_series(F, rng)
            s = a + b
            assert s.val_lower_bound() >= min(a.val_lower_bound(), b.val_lower_bound())
            va, vb = a.val(), b.val()
            if va is not None and vb is not None and va != vb:
                assert s.val() == min(va, vb)

    def test_mul_precision_rule(self, F3, rng):
        for _ in range(300):
            a = rand_series(F3, rng)
            b = rand_series(F3, rng)
            prod = a * b
            assert prod.prec == min(a.prec + b.v0, b.prec + a.v0)


class TestTwist:
    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2)])
    def test_ring_homomorphism(self, p, e):
        # 10^3 random pairs: (xy)^(q^n) = x^(q^n) y^(q^n), same for sums
        F = fq_field(p, e)
        rng = np.random.default_rng(7 + F.q)
        for _ in range(340):
            a = rand_series(F, rng)
            b = rand_series(F, rng)
            n = int(rng.integers(0, 3))
            assert (frobenius_twist(a * b, n) - frobenius_twist(a, n) * frobenius_twist(b, n)).val() is None
            assert (frobenius_twist(a + b, n) - (frobenius_twist(a, n) + frobenius_twist(b, n))).val() is None

    def test_precision_scales_exactly(self, F3):
        s = PrecSeries.theta_power(F3, -1, 30)
        t = frobenius_twist(s, 1)
        assert t.val() == 3 and t.prec == 90

    def test_negative_twist_rejected(self, F3):
        s = PrecSeries.one(F3, 10)
        with pytest.raises(ValueError):
            frobenius_twist(s, -1)

    def test_w_component_twist(self, F3):
        # w -> (-theta) * w under the q-power Frobenius
        w = ExtScalar.theta_tilde_power(F3, 1, 30)
        tw = frobenius_twist(w, 1)
        expect = w.shift(1).scale(int(F3.neg(np.int64(1))))
        assert (tw - expect).val() is None


class TestExtScalar:
    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1)])
    def test_w_power_reduction(self, p, e):
        F = fq_field(p, e)
        q = F.q
        w = ExtScalar.theta_tilde_power(F, 1, 30)
        neg_theta = ExtScalar.from_series(-PrecSeries.from_poly(Poly.gen(F), 29))
        assert (w ** (q - 1) - neg_theta).val() is None
        # w^(q*i) = (-theta)^i w^i for 0 <= i <= q-2
        for i in range(q - 1):
            lhs = ExtScalar.theta_tilde_power(F, q * i, 30)
            rhs = (neg_theta**i) * ExtScalar.theta_tilde_power(F, i, 30)
            assert (lhs - rhs).val() is None

    def test_val(self, F3):
        w = ExtScalar.theta_tilde_power(F3, 1, 30)
        assert w.val() == Fraction(-1, 2)

    def test_inverse(self, F3, F2):
        for F in (F3, F2):
            z = ExtScalar.theta_tilde_power(F, 1, 30) + ExtScalar.one(F, 30)
            if z.is_zero_at_prec():
                z = ExtScalar.one(F, 30) + ExtScalar.from_series(PrecSeries.theta_power(F, -1, 30))
            zi = z.inv()
            assert (z * zi - ExtScalar.one(F, 25)).val() is None


class TestRationalExpansion:
    def test_planted(self, F3):
        x = Poly.gen(F3)
        rf = RationalFunction(x**2 + Poly.one(F3), x**3 + x + Poly.one(F3))
        s = PrecSeries.from_rational(rf, 50)
        back = s * PrecSeries.from_poly(x**3 + x + Poly.one(F3), 60)
        assert (back - PrecSeries.from_poly(x**2 + Poly.one(F3), 50)).val_at_least(45)

    def test_big_numerator(self, F3):
        x = Poly.gen(F3)
        r = PrecSeries.from_rational(RationalFunction(x**10, x + Poly.one(F3)), 20)
        assert r.prec == 20 and r.val() == -9
