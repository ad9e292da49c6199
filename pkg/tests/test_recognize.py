import random

import numpy as np
import pytest

from carlitzlab.errors import PrecisionError
from carlitzlab.fq import fq_field
from carlitzlab.poly import Poly, RationalFunction
from carlitzlab.recognize import (
    combination,
    linear_relation_find,
    numeric_rank,
    pade_recognize,
    relation_candidates,
)
from carlitzlab.series import PrecSeries


class TestPade:
    def test_planted_simple(self, F3):
        x = Poly.gen(F3)
        rf = RationalFunction(Poly.one(F3), x + Poly.one(F3))
        assert pade_recognize(PrecSeries.from_rational(rf, 40), 3) == rf

    def test_planted_cubic(self, F3):
        x = Poly.gen(F3)
        rf = RationalFunction(x**2 + Poly.one(F3), x**3 + x + Poly.one(F3))
        assert pade_recognize(PrecSeries.from_rational(rf, 60), 5) == rf

    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2)])
    def test_roundtrip_500(self, p, e):
        F = fq_field(p, e)
        rnd = random.Random(11 + F.q)
        done = 0
        while done < 167:
            D = rnd.randrange(1, 6)
            num = Poly(F, "x", np.array([rnd.randrange(F.q) for _ in range(rnd.randrange(1, D + 2))], dtype=np.int64))
            den = Poly(F, "x", np.array([rnd.randrange(F.q) for _ in range(rnd.randrange(0, D + 1))] + [1], dtype=np.int64))
            if num.is_zero():
                continue
            rf = RationalFunction(num, den)
            D_eff = max(rf.num.degree, rf.den.degree)
            window = 2 * (D_eff + 1) + 10 + max(0, rf.num.degree - rf.den.degree) + 5
            s = PrecSeries.from_rational(rf, window)
            assert pade_recognize(s, D_eff) == rf
            done += 1

    def test_random_series_not_recognized(self, F3):
        # spec: none for >= 95% of 200 fixed seeds
        misses = 0
        for seed in range(200):
            r = np.random.default_rng(seed)
            s = PrecSeries(F3, 0, r.integers(0, 3, 60), 60)
            if s.val() is None or pade_recognize(s, 5) is None:
                misses += 1
        assert misses >= 190

    def test_insufficient_precision_distinct_from_none(self, F3):
        s = PrecSeries(F3, 0, np.ones(12, dtype=np.int64), 12)
        with pytest.raises(PrecisionError):
            pade_recognize(s, 5)

    def test_reverifies_at_higher_precision(self, F3):
        # the two-precision protocol: recompute and demand identical output
        x = Poly.gen(F3)
        rf = RationalFunction(x + Poly.constant(F3, 2), x**4 + x + Poly.one(F3))
        hit1 = pade_recognize(PrecSeries.from_rational(rf, 60), 4)
        hit2 = pade_recognize(PrecSeries.from_rational(rf, 80), 4)
        assert hit1 == hit2 == rf


class TestRelations:
    def test_scaled_pair(self, F3, rng):
        x = Poly.gen(F3)
        s = PrecSeries.from_rational(RationalFunction(Poly.one(F3), x**2 + x + Poly.constant(F3, 2)), 60)
        rel = linear_relation_find([s, s * PrecSeries.from_poly(x, 61)], 1)
        assert rel is not None
        assert combination([s, s * PrecSeries.from_poly(x, 61)], rel).val() is None

    def test_relation_verifies_exactly(self, F3):
        # returned relation re-verifies against exact rational arithmetic
        x = Poly.gen(F3)
        one = Poly.one(F3)
        exact = [RationalFunction.one(F3), RationalFunction(one, x), RationalFunction(one, x - one)]
        series = [PrecSeries.from_rational(r, 60) for r in exact]
        rel = linear_relation_find(series, 1)
        assert rel is not None
        acc = RationalFunction.zero(F3)
        for a, r in zip(rel, exact):
            acc = acc + RationalFunction.from_poly(a) * r
        assert acc.is_zero()

    def test_independent_family_returns_none(self, F3):
        # planted independent family: 1 and a pseudo-random series
        r = np.random.default_rng(3)
        v = [PrecSeries.one(F3, 70), PrecSeries(F3, 0, r.integers(0, 3, 70), 70)]
        assert linear_relation_find(v, 4) is None

    def test_relation_survives_higher_precision(self, F3):
        x = Poly.gen(F3)
        base = RationalFunction(Poly.one(F3), x**3 + x**2 + Poly.constant(F3, 2))
        mults = [RationalFunction.one(F3), RationalFunction.from_poly(x**2 + Poly.one(F3))]
        for prec in (60, 80):
            series = [PrecSeries.from_rational(base * m, prec) for m in mults]
            rel = linear_relation_find(series, 2)
            assert rel is not None
            assert combination(series, rel).val_at_least(prec - 10)

    def test_insufficient_precision(self, F3):
        v = [PrecSeries.one(F3, 12)] * 3
        with pytest.raises(PrecisionError):
            linear_relation_find(v, 4)

    def test_candidates_all_verify(self, F3):
        x = Poly.gen(F3)
        s = PrecSeries.from_rational(RationalFunction(Poly.one(F3), x**2 + Poly.one(F3)), 70)
        fam = [s, s.shift(1), s.shift(2)]
        for vec in relation_candidates(fam, 2):
            assert combination(fam, vec).val_at_least(60)


class TestRank:
    def test_greedy_indices(self, F3):
        x = Poly.gen(F3)
        s = PrecSeries.from_rational(RationalFunction(Poly.one(F3), x**2 + x + Poly.constant(F3, 2)), 60)
        dep = s * PrecSeries.from_poly(x, 61)
        ind = PrecSeries(F3, 0, np.random.default_rng(5).integers(0, 3, 60), 60)
        assert numeric_rank([s, dep, ind], 2) == (2, [0, 2])

    def test_single_series(self, F3):
        s = PrecSeries.one(F3, 60)
        assert numeric_rank([s], 2) == (1, [0])

    def test_rank_stable_under_precision(self, F3):
        # a transcendental-looking generator, its theta-multiple (dependent)
        # and an unrelated pseudo-random series keep rank at P and P + 20
        x = Poly.gen(F3)
        gen1 = np.random.default_rng(17).integers(0, 3, 90)
        gen2 = np.random.default_rng(23).integers(0, 3, 90)
        ranks = []
        for prec in (60, 80):
            a = PrecSeries(F3, 0, gen1[:prec], prec)
            b = a * PrecSeries.from_poly(x + Poly.one(F3), prec + 2)
            c = PrecSeries(F3, 0, gen2[:prec], prec)
            ranks.append(numeric_rank([a, b, c], 2))
        assert ranks[0] == ranks[1] == (2, [0, 2])
