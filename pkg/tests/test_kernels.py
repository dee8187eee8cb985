"""Backend parity: the compiled path and the numpy fallback must agree, and
each must be reproducible regardless of worker count or chunking."""

import os
import subprocess
import sys

import numpy as np
import pytest

from labfcm import kernels
from labfcm.errors import ConfigError

needs_numba = pytest.mark.skipif(not kernels.HAS_NUMBA, reason="numba unavailable")


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def restore_backend():
    before = kernels.active_backend()
    yield
    kernels.use_backend(before)


def _random_instance(rng, n=257, c=5):
    points = rng.uniform(-60, 90, size=(n, 3))
    centers = rng.uniform(-60, 90, size=(c, 3))
    return points, centers


class TestBackendSelection:
    def test_resolver(self):
        assert kernels._resolve_backend("numpy") == "numpy"
        assert kernels._resolve_backend("auto") in ("numba", "numpy")
        with pytest.raises(ConfigError):
            kernels._resolve_backend("cuda")

    def test_use_backend_roundtrip(self, restore_backend):
        previous = kernels.use_backend("numpy")
        assert kernels.active_backend() == "numpy"
        kernels.use_backend(previous)

    def test_env_var_controls_import(self):
        code = "import labfcm; print(labfcm.active_backend())"
        out = subprocess.run(
            [sys.executable, "-c", code],
            env={**os.environ, "LABFCM_BACKEND": "numpy"},
            capture_output=True,
            text=True,
        )
        assert out.stdout.strip() == "numpy"

    def test_env_var_rejects_unknown(self):
        out = subprocess.run(
            [sys.executable, "-c", "import labfcm"],
            env={**os.environ, "LABFCM_BACKEND": "fortran"},
            capture_output=True,
            text=True,
        )
        assert out.returncode != 0


@needs_numba
class TestBackendParity:
    def test_sq_dists(self, rng, restore_backend):
        points, centers = _random_instance(rng)
        kernels.use_backend("numba")
        a = kernels.sq_dists(points, centers)
        kernels.use_backend("numpy")
        b = kernels.sq_dists(points, centers)
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)

    @pytest.mark.parametrize("exponent", [0.5, 1.0, 2.0, 3.0])
    def test_ref_memberships(self, rng, restore_backend, exponent):
        points, refs = _random_instance(rng, n=300, c=14)
        kernels.use_backend("numba")
        a = kernels.ref_memberships(points, refs, exponent)
        kernels.use_backend("numpy")
        b = kernels.ref_memberships(points, refs, exponent)
        np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-14)

    @pytest.mark.parametrize("m", [1.5, 2.0, 3.0])
    def test_fcm_memberships(self, rng, restore_backend, m):
        points, centers = _random_instance(rng)
        kernels.use_backend("numba")
        ua, d2a = kernels.fcm_memberships(points, centers, m)
        kernels.use_backend("numpy")
        ub, d2b = kernels.fcm_memberships(points, centers, m)
        np.testing.assert_allclose(ua, ub, rtol=1e-10, atol=1e-14)
        np.testing.assert_allclose(d2a, d2b, rtol=1e-12, atol=1e-12)

    def test_fcm_centroid_sums(self, rng, restore_backend):
        points, centers = _random_instance(rng)
        u, _ = kernels.fcm_memberships(points, centers, 2.0)
        kernels.use_backend("numba")
        num_a, den_a = kernels.fcm_centroid_sums(points, u, 2.0)
        kernels.use_backend("numpy")
        num_b, den_b = kernels.fcm_centroid_sums(points, u, 2.0)
        np.testing.assert_allclose(num_a, num_b, rtol=1e-10)
        np.testing.assert_allclose(den_a, den_b, rtol=1e-10)

    def test_objective(self, rng, restore_backend):
        points, centers = _random_instance(rng)
        u, d2 = kernels.fcm_memberships(points, centers, 2.0)
        kernels.use_backend("numba")
        a = kernels.objective(u, d2, 2.0)
        kernels.use_backend("numpy")
        b = kernels.objective(u, d2, 2.0)
        assert a == pytest.approx(b, rel=1e-12)

    def test_zero_distance_columns_match(self, restore_backend):
        centers = np.array([[0.0, 0.0, 0.0], [10.0, 0.0, 0.0]])
        points = np.array([[0.0, 0.0, 0.0], [10.0, 0.0, 0.0], [5.0, 0.0, 0.0]])
        kernels.use_backend("numba")
        ua, _ = kernels.fcm_memberships(points, centers, 2.0)
        ra = kernels.ref_memberships(points, centers, 1.0)
        kernels.use_backend("numpy")
        ub, _ = kernels.fcm_memberships(points, centers, 2.0)
        rb = kernels.ref_memberships(points, centers, 1.0)
        np.testing.assert_array_equal(ua[:, :2], [[1.0, 0.0], [0.0, 1.0]])
        np.testing.assert_array_equal(ra[:, :2], [[1.0, 0.0], [0.0, 1.0]])
        np.testing.assert_allclose(ua, ub, rtol=1e-12)
        np.testing.assert_allclose(ra, rb, rtol=1e-12)


@needs_numba
class TestWorkerInvariance:
    def test_bitwise_identical_across_thread_counts(self, rng, restore_backend):
        kernels.use_backend("numba")
        points, centers = _random_instance(rng, n=2048, c=6)
        results = []
        for workers in (1, 64):
            kernels.set_workers(workers)
            u, d2 = kernels.fcm_memberships(points, centers, 2.0)
            num, den = kernels.fcm_centroid_sums(points, u, 2.0)
            refs = kernels.ref_memberships(points, centers[:4], 2.0)
            results.append((u, d2, num, den, refs))
        for a, b in zip(results[0], results[1]):
            assert np.array_equal(a, b)


class TestScan:
    def test_chunking_matches_single_pass(self, rng):
        points = rng.uniform(-50, 80, size=(101, 3))
        # duplicate rows force best-membership ties across chunks
        points[50] = points[3]
        points[97] = points[3]
        refs = rng.uniform(-50, 80, size=(14, 3))
        best_a, arg_a = kernels.ref_scan(points, refs, 2.0, chunk=7)
        best_b, arg_b = kernels.ref_scan(points, refs, 2.0, chunk=10**9)
        assert np.array_equal(best_a, best_b)
        assert np.array_equal(arg_a, arg_b)

    def test_tie_takes_lowest_index(self):
        refs = np.array([[0.0, 0.0, 0.0], [100.0, 0.0, 0.0]])
        points = np.array([[10.0, 0.0, 0.0], [10.0, 0.0, 0.0]])
        _, arg = kernels.ref_scan(points, refs, 1.0, chunk=1)
        assert arg.tolist() == [0, 0]
