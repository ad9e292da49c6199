import random

import numpy as np
import pytest
from fractions import Fraction

from carlitzlab.errors import PoleError
from carlitzlab.fq import fq_field
from carlitzlab.poly import Poly, RationalFunction
from carlitzlab.recognize import escalating_pade
from carlitzlab.series import ExtScalar, PrecSeries
from carlitzlab.gamma import (
    GammaDivisor,
    block_closed_form,
    block_enumerated,
    bracket,
    bracket_N,
    bracket_N_literal,
    bracket_div,
    bracket_div_total,
    bracket_profile,
    gamma_eval,
    gamma_trdeg,
    gauss_mult_check,
    joint_trdeg,
    monomial_recognize,
    pi_factorial_eval,
    pi_monomial_eval,
    reflection_check,
    star,
    translation_check,
    unit_residues,
    weight,
)


def all_residues(f):
    F = f.field
    q = F.q
    d = f.degree
    for k in range(q**d):
        cs = np.array([(k // q**i) % q for i in range(d)], dtype=np.int64)
        yield Poly(F, "x", cs)


class TestEvaluation:
    def test_pole_detection(self, F3, F2):
        x3 = Poly.gen(F3)
        with pytest.raises(PoleError):
            gamma_eval(RationalFunction.zero(F3), 30)
        with pytest.raises(PoleError):
            gamma_eval(RationalFunction.from_poly(-x3), 30)
        # char 2: -A_+ = A_+, so monic arguments are poles
        with pytest.raises(PoleError):
            gamma_eval(RationalFunction.from_poly(Poly.gen(F2)), 30)

    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1)])
    def test_blocks_closed_vs_enumerated(self, p, e):
        F = fq_field(p, e)
        x = Poly.gen(F)
        args = [
            RationalFunction(Poly.one(F), x),
            RationalFunction(x, x**2 + Poly.one(F)),
            RationalFunction.from_poly(x + Poly.one(F)),
            RationalFunction(Poly.one(F), x**2),
        ]
        for r in args:
            for d in range(5):
                assert block_closed_form(r, d) == block_enumerated(r, d)

    def test_blocks_are_one_units(self, F3):
        # val(block - 1) >= val(r) + deg L_d grows fast with d
        r = RationalFunction(Poly.one(F3), Poly.gen(F3))
        for d in (1, 2, 3):
            b = block_closed_form(r, d)
            diff = b - RationalFunction.one(F3)
            val = diff.den.degree - diff.num.degree
            assert val >= d + 1

    def test_gamma_of_monic_in_k(self, F3):
        x = Poly.gen(F3)
        for a in [Poly.one(F3), x, x + Poly.one(F3)]:
            g = gamma_eval(RationalFunction.from_poly(a), 60)
            hit, _ = escalating_pade(g)
            assert hit is not None

    def test_full_engines_agree(self, F2, F3):
        for F in (F2, F3):
            r = RationalFunction(Poly.one(F), Poly.gen(F))
            a = gamma_eval(r, 30, engine="accel")
            b = gamma_eval(r, 30, engine="enum")
            assert (a - b).val() is None

    def test_pi_is_z_gamma(self, F3):
        r = RationalFunction(Poly.one(F3), Poly.gen(F3))
        lhs = pi_factorial_eval(r, 50)
        rhs = (PrecSeries.from_rational(r, 60) * gamma_eval(r, 55)).truncate(50)
        assert (lhs - rhs).val() is None


class TestDivisors:
    def test_weight(self, F3):
        x = Poly.gen(F3)
        div = GammaDivisor(x, [(Poly.one(F3), 1)])
        assert weight(div) == Fraction(1, 2)
        assert weight(GammaDivisor(x, [(Poly.zero(F3), 5)])) == 0

    def test_weight_additive(self, F3, rng):
        x = Poly.gen(F3)
        f = x**2 + Poly.one(F3)
        d1 = GammaDivisor(f, [(Poly.one(F3), 2), (x, -1)])
        d2 = GammaDivisor(f, [(x + Poly.one(F3), 3)])
        assert weight(d1 + d2) == weight(d1) + weight(d2)

    def test_star_axioms(self, F3):
        x = Poly.gen(F3)
        f = x**2 + Poly.one(F3)
        div = GammaDivisor(f, [(Poly.one(F3), 1), (x, 2)])
        one = Poly.one(F3)
        assert star(one, div) == div
        a, b = x + one, Poly.constant(F3, 2)
        assert star(a * b % f, div) == star(a, star(b, div))

    def test_star_requires_coprime(self, F3):
        x = Poly.gen(F3)
        div = GammaDivisor(x**2, [(Poly.one(F3), 1)])
        with pytest.raises(ValueError):
            star(x, div)

    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1)])
    def test_star_preserves_weight_exhaustive(self, p, e):
        F = fq_field(p, e)
        x = Poly.gen(F)
        rnd = random.Random(0)
        for f in [x, x**2, x**2 + Poly.one(F)]:
            reps = unit_residues(f)
            for _ in range(8):
                terms = [
                    (Poly(F, "x", np.array([rnd.randrange(F.q) for _ in range(f.degree)], dtype=np.int64)), rnd.randrange(-2, 3))
                    for _ in range(3)
                ]
                dv = GammaDivisor(f, terms)
                for a in reps:
                    assert weight(star(a, dv)) == weight(dv)

    def test_pi_monomial_homomorphism(self, F3):
        x = Poly.gen(F3)
        f = x**2 + Poly.one(F3)
        d1 = GammaDivisor(f, [(Poly.one(F3), 1)])
        d2 = GammaDivisor(f, [(x, 1)])
        m1, m2 = pi_monomial_eval(d1, 40), pi_monomial_eval(d2, 40)
        m12 = pi_monomial_eval(d1 + d2, 40)
        assert (m12 - m1 * m2).val() is None

    def test_pi_monomial_zero_divisor(self, F3):
        x = Poly.gen(F3)
        assert (pi_monomial_eval(GammaDivisor(x, []), 30) - PrecSeries.one(F3, 30)).val() is None

    def test_pi_cross_check_gamma(self, F3):
        x = Poly.gen(F3)
        div = GammaDivisor(x, [(Poly.one(F3), 1)])
        r = RationalFunction(Poly.one(F3), x)
        lhs = pi_monomial_eval(div, 40)
        rhs = (PrecSeries.from_rational(r, 50) * gamma_eval(r, 45)).truncate(40)
        assert (lhs - rhs).val() is None


class TestBrackets:
    def test_one_over_theta(self, F3):
        r = RationalFunction(Poly.one(F3), Poly.gen(F3))
        assert bracket(r) == 1
        assert bracket_N(r, 0) == 1
        assert all(bracket_N(r, N) == 0 for N in range(1, 6))

    def test_scaled_class_misses(self, F3):
        r = RationalFunction(Poly.constant(F3, 2), Poly.gen(F3))
        assert bracket(r) == 0

    def test_integral_class(self, F3):
        x = Poly.gen(F3)
        assert bracket(RationalFunction.from_poly(x**2 + x)) == 0

    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1)])
    def test_literal_equals_closed_exhaustive(self, p, e):
        F = fq_field(p, e)
        x = Poly.gen(F)
        for f in [x, x**2, x**2 + Poly.one(F)]:
            for a in all_residues(f):
                r = RationalFunction(a, f)
                for N in range(6):
                    assert bracket_N_literal(r, N, 3) == bracket_N(r, N)

    def test_at_most_one_term(self, F3, F2):
        # 10^4 random arguments: the N-sum has at most one nonzero term
        rnd = random.Random(9)
        for i in range(10000):
            F = F3 if i % 2 else F2
            num = Poly(F, "x", np.array([rnd.randrange(F.q) for _ in range(rnd.randrange(1, 5))], dtype=np.int64))
            den = Poly(F, "x", np.array([rnd.randrange(F.q) for _ in range(rnd.randrange(0, 4))] + [1], dtype=np.int64))
            r = RationalFunction(num, den)
            hits = [N for N in range(12) if bracket_N(r, N)]
            assert len(hits) <= 1
            assert bracket(r) in (0, 1)

    def test_profile_linearity(self, F3):
        x = Poly.gen(F3)
        f = x**2 + Poly.one(F3)
        d1 = GammaDivisor(f, [(Poly.one(F3), 1), (x, 1)])
        d2 = GammaDivisor(f, [(x + Poly.one(F3), 2)])
        p1 = dict((a.key(), v) for a, v in bracket_profile(d1))
        p2 = dict((a.key(), v) for a, v in bracket_profile(d2))
        p12 = dict((a.key(), v) for a, v in bracket_profile(d1 + d2))
        assert all(p12[k] == p1[k] + p2[k] for k in p12)

    def test_profile_example_q3_theta(self, F3):
        div = GammaDivisor(Poly.gen(F3), [(Poly.one(F3), 1)])
        prof = bracket_profile(div)
        # residues 1 and 2: star by 1 keeps [1/theta] (bracket 1),
        # star by 2 gives [2/theta] (bracket 0)
        assert [(repr(a), v) for a, v in prof] == [("1", 1), ("2", 0)]

    def test_reflection_sum_profile_constant(self, F3):
        # divisor sum over xi in F_q^* of [xi/f] has constant profile
        x = Poly.gen(F3)
        div = GammaDivisor(x, [(Poly.constant(F3, c), 1) for c in (1, 2)])
        prof = bracket_profile(div)
        vals = {v for _, v in prof}
        assert len(vals) == 1

    def test_bracket_div(self, F3):
        x = Poly.gen(F3)
        div = GammaDivisor(x, [(Poly.one(F3), 2), (Poly.constant(F3, 2), 1)])
        assert bracket_div(div, 0) == 2  # only [1/theta] hits N=0, with weight 2
        assert bracket_div_total(div) == 2


class TestFunctionalEquations:
    def test_translation(self, F3):
        r = RationalFunction(Poly.one(F3), Poly.gen(F3))
        for a in [Poly.one(F3), Poly.gen(F3)]:
            cert = translation_check(r, a, 60)
            assert cert.recognized
            assert cert.nonzero_components == [0]

    def test_reflection_q3(self, F3):
        cert = reflection_check(RationalFunction(Poly.one(F3), Poly.gen(F3)), 60)
        assert cert.recognized

    def test_reflection_q4(self, F4):
        cert = reflection_check(RationalFunction(Poly.one(F4), Poly.gen(F4)), 60)
        assert cert.recognized

    def test_reflection_reverifies(self, F3):
        r = RationalFunction(Poly.one(F3), Poly.gen(F3))
        c1 = reflection_check(r, 60)
        c2 = reflection_check(r, 80)
        assert c1.recognized and c2.recognized
        assert c1.component_hits == c2.component_hits

    def test_gauss(self, F3):
        cert = gauss_mult_check(RationalFunction(Poly.one(F3), Poly.gen(F3)), Poly.gen(F3), 60)
        assert cert.recognized

    def test_q2_reflection_is_pi_ratio(self, F2):
        x = Poly.gen(F2)
        cert = reflection_check(RationalFunction(Poly.one(F2), x), 60)
        assert cert.recognized
        assert cert.component_hits[0] == RationalFunction(Poly.one(F2), x)

    def test_pole_rejected(self, F3):
        # r itself on the pole set (r must lie in k minus A)
        with pytest.raises(PoleError):
            translation_check(RationalFunction.from_poly(-Poly.gen(F3)), Poly.one(F3), 40)

    def test_negative_valuation_argument(self, F3):
        # Gamma at 1/x - x^2 exercises blocks that are not 1-units
        x = Poly.gen(F3)
        r = RationalFunction(Poly.one(F3), x) - RationalFunction.from_poly(x * x)
        g = gamma_eval(r, 40)
        assert g.prec == 40
        h = gamma_eval(r, 60)
        assert (g - h).val() is None


class TestRecognition:
    def test_exact_rational_recognized(self, F3):
        x = Poly.gen(F3)
        rf = RationalFunction(x + Poly.one(F3), x**2 + Poly.constant(F3, 2))
        w = ExtScalar.from_series(PrecSeries.from_rational(rf, 90))
        cert = monomial_recognize(w, 60)
        assert cert.recognized and cert.component_hits[0] == rf

    def test_pi_power_path(self, F3):
        from carlitzlab.carlitz import pi_tilde

        w = pi_tilde(F3, 90) ** 2  # lands on component 0: (q-1) | 2
        cert = monomial_recognize(w, 60)
        assert cert.nonzero_components == [0]

    def test_transcendental_unrecognized(self, F3):
        from carlitzlab.zeta import zeta

        w = ExtScalar.from_series(zeta(F3, 1, 90))
        cert = monomial_recognize(w, 60)
        assert not cert.recognized
        assert cert.note == "unrecognized-at-precision"


class TestCounts:
    def test_examples(self, F3, F2):
        x3, x2 = Poly.gen(F3), Poly.gen(F2)
        assert gamma_trdeg(x3) == 2
        assert joint_trdeg(x3, 4) == 3
        assert gamma_trdeg(x2) == 1
        assert gamma_trdeg(x2**3 + x2 + Poly.one(F2)) == 1

    def test_additivity_grid(self, F3, F4):
        from carlitzlab.zeta import zeta_trdeg

        # joint = gamma + zeta - 1 on a 20-case grid
        cases = 0
        for F in (F3, F4):
            x = Poly.gen(F)
            for f in [x, x**2, x**2 + Poly.one(F), x**2 + x, x**3]:
                for s in (1, 3):
                    assert joint_trdeg(f, s) == gamma_trdeg(f) + zeta_trdeg(F.q, F.p, s) - 1
                    cases += 1
        assert cases == 20
