import numpy as np
import pytest

from carlitzlab.errors import FieldError
from carlitzlab.fq import fq_field


def test_prime_field_needs_no_modulus():
    F = fq_field(2, 1)
    assert F.q == 2 and F.modulus == (0, 1)


def test_f9_modulus_is_x2_plus_1():
    # -1 is a non-square mod 3, so x^2 + 1 is the lexicographically first hit
    F = fq_field(3, 2)
    assert F.modulus == (1, 0, 1)


def test_f4_modulus():
    assert fq_field(2, 2).modulus == (1, 1, 1)


def test_non_prime_p_rejected():
    with pytest.raises(FieldError):
        fq_field(4, 1)


def test_cap_rejected():
    with pytest.raises(FieldError):
        fq_field(2, 21)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (5, 2)])
def test_field_axioms(p, e):
    F = fq_field(p, e)
    q = F.q
    a = np.repeat(np.arange(q), q)
    b = np.tile(np.arange(q), q)
    assert np.all(F.mul(a, b) == F.mul(b, a))
    assert np.all(F.add(a, b) == F.add(b, a))
    rng = np.random.default_rng(0)
    x, y, z = rng.integers(0, q, (3, 2000))
    assert np.all(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)))
    assert np.all(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)))
    assert np.all(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)))
    nz = np.arange(1, q)
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.all(F.sub(x, x) == 0)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1), (2, 4)])
def test_frobenius_fixes_field(p, e):
    F = fq_field(p, e)
    a = np.arange(F.q)
    assert np.all(F.pow(a, F.q) == a)


def test_coords_roundtrip():
    F = fq_field(3, 2)
    a = np.arange(F.q)
    assert np.all(F.from_coords(F.to_coords(a)) == a)


def test_element_wrapper():
    F = fq_field(3, 2)
    x = F.element(5)
    assert x.coords == [2, 1]
    y = F.element(4)
    assert (x + y).code == int(F.add(np.int64(5), np.int64(4)))
    assert (x * x.inverse()).code == 1
    assert (x ** F.q) == x
