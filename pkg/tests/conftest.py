import numpy as np
import pytest

from labfcm import ColorSet, kernels

from expected_values import SAMPLE_POINTS


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so per-test timings stay flat."""
    pts = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    centers = np.array([[0.0, 0.0, 0.0], [9.0, 9.0, 9.0]])
    kernels.sq_dists(pts, centers)
    kernels.ref_memberships(pts, centers, 2.0)
    kernels.ref_scan(pts, centers, 2.0)
    u, d2 = kernels.fcm_memberships(pts, centers, 2.0)
    kernels.fcm_centroid_sums(pts, u, 2.0)
    kernels.objective(u, d2, 2.0)


@pytest.fixture
def sample_colorset() -> ColorSet:
    return ColorSet(SAMPLE_POINTS.copy())


@pytest.fixture
def sample_csv(tmp_path):
    path = tmp_path / "sample.csv"
    lines = ["# ten-point sample set"]
    lines += [f"{L},{a},{b}" for L, a, b in SAMPLE_POINTS]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
