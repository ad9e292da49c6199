"""JSON wire formats for the algebra and series values.

Field elements travel as F_p coordinate lists (low degree first), matching
the interchange contracts:

* polynomial: {"var": ..., "coeffs": [[c over F_p], ...]}
* series:     {"prec": P, "v0": v0, "terms": [[v, [coords]], ...]} (nonzero terms)
* extension scalar: list of series, component order 1, w, ..., w^(q-2)
* divisor:    {"f": poly, "terms": [[residue poly, multiplicity], ...]}
"""

from __future__ import annotations

import numpy as np

from .fq import FqField
from .poly import Poly, RationalFunction
from .series import ExtScalar, PrecSeries


def coords_of(field: FqField, code: int) -> list[int]:
    return [int(c) for c in field.to_coords(np.int64(code))]


def code_of(field: FqField, coords) -> int:
    return int(field.from_coords(np.asarray(coords, dtype=np.int64)))


def poly_to_json(p: Poly) -> dict:
    return {"var": p.var, "coeffs": [coords_of(p.field, int(c)) for c in p.coeffs]}


def poly_from_json(field: FqField, data: dict) -> Poly:
    coeffs = np.array([code_of(field, c) for c in data["coeffs"]], dtype=np.int64)
    return Poly(field, data["var"], coeffs)


def rational_to_json(r: RationalFunction) -> dict:
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def rational_from_json(field: FqField, data: dict) -> RationalFunction:
    return RationalFunction(poly_from_json(field, data["num"]), poly_from_json(field, data["den"]))


def series_to_json(s: PrecSeries) -> dict:
    return {
        "prec": int(s.prec),
        "v0": int(s.v0),
        "terms": [[v, coords_of(s.field, c)] for v, c in s.nonzero_terms()],
    }


def series_from_json(field: FqField, data: dict) -> PrecSeries:
    v0 = int(data["v0"])
    prec = int(data["prec"])
    coeffs = np.zeros(prec - v0, dtype=np.int64)
    for v, coords in data["terms"]:
        coeffs[int(v) - v0] = code_of(field, coords)
    return PrecSeries(field, v0, coeffs, prec)


def ext_to_json(x: ExtScalar) -> list:
    return [series_to_json(c) for c in x.comps]


def ext_from_json(field: FqField, data: list) -> ExtScalar:
    return ExtScalar(field, [series_from_json(field, c) for c in data])
