import json

import numpy as np

from carlitzlab.poly import Poly, RationalFunction
from carlitzlab.series import ExtScalar, PrecSeries
from carlitzlab.serialize import (
    ext_from_json,
    ext_to_json,
    poly_from_json,
    poly_to_json,
    rational_from_json,
    rational_to_json,
    series_from_json,
    series_to_json,
)


def test_poly_roundtrip(F9, rng):
    p = Poly(F9, "x", rng.integers(0, 9, 7))
    data = poly_to_json(p)
    assert data["var"] == "x"
    assert all(len(c) == 2 for c in data["coeffs"])  # F_p coordinate pairs
    assert poly_from_json(F9, data) == p
    json.dumps(data)  # serializable


def test_series_roundtrip(F3, rng):
    s = PrecSeries(F3, -4, rng.integers(0, 3, 40), 36)
    data = series_to_json(s)
    back = series_from_json(F3, data)
    assert back.eq_exact(s)
    assert data["prec"] == 36
    assert all(c != [0] for _, c in data["terms"])  # only nonzero terms travel


def test_ext_roundtrip(F3, rng):
    comps = [PrecSeries(F3, 0, rng.integers(0, 3, 30), 30) for _ in range(2)]
    x = ExtScalar(F3, comps)
    back = ext_from_json(F3, ext_to_json(x))
    assert (x - back).val() is None


def test_rational_roundtrip(F4, rng):
    r = RationalFunction(
        Poly(F4, "x", rng.integers(0, 4, 4)),
        Poly(F4, "x", np.concatenate([rng.integers(0, 4, 3), [1]])),
    )
    assert rational_from_json(F4, rational_to_json(r)) == r
