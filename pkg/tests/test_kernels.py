import numpy as np
import pytest

from carlitzlab import _kernels
from carlitzlab.fq import fq_field

HAVE_NUMBA = _kernels._numba_available()

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not importable")


@pytest.fixture(autouse=True)
def _restore_backend():
    yield
    _kernels.set_backend(None)


def naive_conv(field, a, b):
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i in range(len(a)):
        for j in range(len(b)):
            out[i + j] = field.add(out[i + j], field.mul(a[i], b[j]))
    return out


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)])
def test_numpy_conv_matches_naive(p, e):
    F = fq_field(p, e)
    rng = np.random.default_rng(F.q)
    _kernels.set_backend("numpy")
    for _ in range(10):
        a = rng.integers(0, F.q, int(rng.integers(1, 30)))
        b = rng.integers(0, F.q, int(rng.integers(1, 30)))
        assert np.array_equal(_kernels.conv(F, a, b), naive_conv(F, a, b))


@needs_numba
@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (5, 2)])
def test_backends_agree_conv(p, e):
    F = fq_field(p, e)
    rng = np.random.default_rng(100 + F.q)
    for _ in range(25):
        a = rng.integers(0, F.q, int(rng.integers(1, 50)))
        b = rng.integers(0, F.q, int(rng.integers(1, 50)))
        _kernels.set_backend("numpy")
        c1 = _kernels.conv(F, a, b)
        _kernels.set_backend("numba")
        c2 = _kernels.conv(F, a, b)
        assert np.array_equal(c1, c2)


@needs_numba
@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_backends_agree_nullspace(p, e):
    F = fq_field(p, e)
    rng = np.random.default_rng(200 + F.q)
    for _ in range(15):
        M = rng.integers(0, F.q, (int(rng.integers(1, 14)), int(rng.integers(1, 14))))
        _kernels.set_backend("numpy")
        piv1, bas1 = _kernels.nullspace(F, M)
        _kernels.set_backend("numba")
        piv2, bas2 = _kernels.nullspace(F, M)
        assert piv1 == piv2
        assert np.array_equal(bas1, bas2)


@pytest.mark.parametrize("p,e", [(3, 1), (2, 2)])
def test_nullspace_vectors_annihilate(p, e):
    F = fq_field(p, e)
    rng = np.random.default_rng(300 + F.q)
    _kernels.set_backend("numpy")
    for _ in range(20):
        M = rng.integers(0, F.q, (8, 11))
        pivots, basis = _kernels.nullspace(F, M)
        assert len(pivots) + len(basis) == 11
        for v in basis:
            acc = np.zeros(8, dtype=np.int64)
            for j in range(11):
                acc = F.add(acc, F.mul(M[:, j], v[j]))
            assert np.all(acc == 0)


def test_env_flag(monkeypatch):
    monkeypatch.setenv("CARLITZLAB_JIT", "0")
    assert _kernels.active_backend() == "numpy"
    if HAVE_NUMBA:
        monkeypatch.setenv("CARLITZLAB_JIT", "1")
        assert _kernels.active_backend() == "numba"


@needs_numba
def test_series_pipeline_identical_across_backends(F3):
    # a high-level computation is bit-identical under both backends
    from carlitzlab.zeta import zeta

    _kernels.set_backend("numpy")
    a = zeta(F3, 2, 40)
    _kernels.set_backend("numba")
    b = zeta(F3, 2, 40)
    assert a.eq_exact(b)
