"""Hot numeric kernels: numba-compiled fast path plus a pure-numpy fallback.

Backend selection is driven by the ``LABFCM_BACKEND`` environment variable:

* ``auto`` (default): numba when importable, numpy otherwise
* ``numba``: require the compiled path, fail if numba is missing
* ``numpy``: force the pure-numpy fallback

Both paths implement identical semantics. Results within one backend are
bitwise reproducible, including across worker-thread counts: every parallel
loop writes disjoint output slots and accumulates in a fixed sequential
order, so no floating-point reduction order ever depends on the thread
count. The two backends agree with each other to normal floating-point
tolerance (numpy uses pairwise summation, the compiled loops are serial).

``benchmarks/bench_backends.py`` times one path against the other.
"""

import os

import numpy as np

from .errors import ConfigError

try:
    import numba
    from numba import njit, prange

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False


# ---------------------------------------------------------------------------
# pure-numpy fallback
# ---------------------------------------------------------------------------

def _sq_dists_np(points, centers):
    diff = centers[:, None, :] - points[None, :, :]
    return np.einsum("cnd,cnd->cn", diff, diff)


def _ref_memberships_np(points, refs, exponent):
    k = refs.shape[0]
    d = np.sqrt(_sq_dists_np(points, refs))  # (k, n)
    out = np.empty_like(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(k):
            s = np.zeros(d.shape[1])
            for l in range(k):
                s += (d[i] / d[l]) ** exponent
            out[i] = 1.0 / s
    zero = d == 0.0
    hit = zero.any(axis=0)
    if hit.any():
        counts = zero[:, hit].sum(axis=0)
        out[:, hit] = np.where(zero[:, hit], 1.0 / counts, 0.0)
    return out


def _fcm_memberships_np(points, centers, m):
    c = centers.shape[0]
    d2 = _sq_dists_np(points, centers)  # (c, n)
    expo = 1.0 / (m - 1.0)
    u = np.empty_like(d2)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(c):
            s = np.zeros(d2.shape[1])
            for l in range(c):
                s += (d2[i] / d2[l]) ** expo
            u[i] = 1.0 / s
    zero = d2 == 0.0
    hit = zero.any(axis=0)
    if hit.any():
        counts = zero[:, hit].sum(axis=0)
        u[:, hit] = np.where(zero[:, hit], 1.0 / counts, 0.0)
    return u, d2


def _fcm_centroid_sums_np(points, u, m):
    um = u**m
    den = um.sum(axis=1)
    num = (um[:, :, None] * points[None, :, :]).sum(axis=1)
    return num, den


def _objective_np(u, d2, m):
    return float((u**m * d2).sum())


_NUMPY_IMPL = {
    "sq_dists": _sq_dists_np,
    "ref_memberships": _ref_memberships_np,
    "fcm_memberships": _fcm_memberships_np,
    "fcm_centroid_sums": _fcm_centroid_sums_np,
    "objective": _objective_np,
}


# ---------------------------------------------------------------------------
# numba fast path
# ---------------------------------------------------------------------------

if HAS_NUMBA:

    # libm pow dominates the membership kernels; the exponents seen in
    # practice are almost always one of these, so branch to cheap ops.
    @njit(cache=True, inline="always")
    def _pow_fast(x, e):
        if e == 1.0:
            return x
        if e == 2.0:
            return x * x
        if e == 0.5:
            return np.sqrt(x)
        if e == 3.0:
            return x * x * x
        if e == 1.5:
            return x * np.sqrt(x)
        return x**e

    @njit(cache=True, parallel=True)
    def _sq_dists_nb(points, centers):
        n = points.shape[0]
        c = centers.shape[0]
        out = np.empty((c, n))
        for j in prange(n):
            for i in range(c):
                dl = points[j, 0] - centers[i, 0]
                da = points[j, 1] - centers[i, 1]
                db = points[j, 2] - centers[i, 2]
                out[i, j] = dl * dl + da * da + db * db
        return out

    @njit(cache=True, parallel=True)
    def _ref_memberships_nb(points, refs, exponent):
        n = points.shape[0]
        k = refs.shape[0]
        out = np.empty((k, n))
        for j in prange(n):
            d = np.empty(k)
            zeros = 0
            for i in range(k):
                dl = points[j, 0] - refs[i, 0]
                da = points[j, 1] - refs[i, 1]
                db = points[j, 2] - refs[i, 2]
                d[i] = np.sqrt(dl * dl + da * da + db * db)
                if d[i] == 0.0:
                    zeros += 1
            if zeros > 0:
                w = 1.0 / zeros
                for i in range(k):
                    out[i, j] = w if d[i] == 0.0 else 0.0
            else:
                for i in range(k):
                    s = 0.0
                    for l in range(k):
                        s += _pow_fast(d[i] / d[l], exponent)
                    out[i, j] = 1.0 / s
        return out

    @njit(cache=True, parallel=True)
    def _fcm_memberships_nb(points, centers, m):
        n = points.shape[0]
        c = centers.shape[0]
        u = np.empty((c, n))
        d2 = np.empty((c, n))
        expo = 1.0 / (m - 1.0)
        for j in prange(n):
            zeros = 0
            for i in range(c):
                dl = points[j, 0] - centers[i, 0]
                da = points[j, 1] - centers[i, 1]
                db = points[j, 2] - centers[i, 2]
                d2[i, j] = dl * dl + da * da + db * db
                if d2[i, j] == 0.0:
                    zeros += 1
            if zeros > 0:
                w = 1.0 / zeros
                for i in range(c):
                    u[i, j] = w if d2[i, j] == 0.0 else 0.0
            else:
                for i in range(c):
                    s = 0.0
                    for l in range(c):
                        s += _pow_fast(d2[i, j] / d2[l, j], expo)
                    u[i, j] = 1.0 / s
        return u, d2

    @njit(cache=True, parallel=True)
    def _fcm_centroid_sums_nb(points, u, m):
        c = u.shape[0]
        n = u.shape[1]
        num = np.zeros((c, 3))
        den = np.zeros(c)
        for i in prange(c):
            s0 = 0.0
            s1 = 0.0
            s2 = 0.0
            sw = 0.0
            for j in range(n):
                w = _pow_fast(u[i, j], m)
                sw += w
                s0 += w * points[j, 0]
                s1 += w * points[j, 1]
                s2 += w * points[j, 2]
            num[i, 0] = s0
            num[i, 1] = s1
            num[i, 2] = s2
            den[i] = sw
        return num, den

    # Sequential on purpose: a parallel reduction would make the total depend
    # on the thread count.
    @njit(cache=True)
    def _objective_nb(u, d2, m):
        total = 0.0
        for i in range(u.shape[0]):
            for j in range(u.shape[1]):
                total += _pow_fast(u[i, j], m) * d2[i, j]
        return total

    _NUMBA_IMPL = {
        "sq_dists": _sq_dists_nb,
        "ref_memberships": _ref_memberships_nb,
        "fcm_memberships": _fcm_memberships_nb,
        "fcm_centroid_sums": _fcm_centroid_sums_nb,
        "objective": _objective_nb,
    }


# ---------------------------------------------------------------------------
# backend selection and dispatch
# ---------------------------------------------------------------------------

BACKEND_ENV_VAR = "LABFCM_BACKEND"


def _resolve_backend(requested: str) -> str:
    name = requested.strip().lower()
    if name in ("", "auto"):
        return "numba" if HAS_NUMBA else "numpy"
    if name == "numba":
        if not HAS_NUMBA:
            raise ConfigError(
                f"{BACKEND_ENV_VAR}=numba requested but numba is not importable"
            )
        return "numba"
    if name == "numpy":
        return "numpy"
    raise ConfigError(
        f"unknown backend {requested!r}; expected auto, numba, or numpy"
    )


_active = _resolve_backend(os.environ.get(BACKEND_ENV_VAR, "auto"))


def active_backend() -> str:
    """Name of the backend currently dispatching kernels."""
    return _active


def use_backend(name: str) -> str:
    """Switch the kernel backend at runtime; returns the previous name."""
    global _active
    previous = _active
    _active = _resolve_backend(name)
    return previous


def _impl(name: str):
    table = _NUMBA_IMPL if _active == "numba" else _NUMPY_IMPL
    return table[name]


def set_workers(workers: int) -> None:
    """Cap the number of threads used by the compiled kernels.

    A no-op on the numpy backend, which is single-threaded. The cap cannot
    exceed the thread pool numba created at startup.
    """
    if HAS_NUMBA:
        limit = numba.config.NUMBA_NUM_THREADS
        numba.set_num_threads(max(1, min(int(workers), limit)))


def _c(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def sq_dists(points, centers) -> np.ndarray:
    """Squared Euclidean distances, shape (c, n)."""
    return _impl("sq_dists")(_c(points), _c(centers))


def ref_memberships(points, refs, exponent: float) -> np.ndarray:
    """Membership of every point to every reference color, shape (k, n).

    Column j holds point j's graded similarity to the k references: 1 over
    the sum of distance ratios raised to ``exponent``, with coincident
    point/reference pairs taking the whole column's weight.
    """
    return _impl("ref_memberships")(_c(points), _c(refs), float(exponent))


def ref_scan(points, refs, exponent: float, chunk: int = 1 << 16):
    """Best membership and the point attaining it, per reference.

    Returns ``(best, closest)``: for reference i, ``best[i]`` is the highest
    membership any point achieves and ``closest[i]`` the index of that point,
    lowest index winning ties. Works through ``points`` in chunks so the
    (k, n) matrix never has to exist at once; the chunked merge compares with
    strict ``>`` and therefore reproduces the sequential scan bit for bit.
    """
    pts = _c(points)
    rf = _c(refs)
    k = rf.shape[0]
    best = np.full(k, -1.0)
    closest = np.zeros(k, dtype=np.int64)
    for start in range(0, pts.shape[0], chunk):
        memberships = ref_memberships(pts[start : start + chunk], rf, exponent)
        chunk_best = memberships.max(axis=1)
        chunk_arg = memberships.argmax(axis=1) + start
        improved = chunk_best > best
        best[improved] = chunk_best[improved]
        closest[improved] = chunk_arg[improved]
    return best, closest


def fcm_memberships(points, centers, m: float):
    """Fuzzy cluster memberships and the squared distances they came from.

    Returns ``(u, d2)`` with shapes (c, n). Column j of ``u`` is the inverse
    ratio sum with exponent 1/(m-1); points coinciding with one or more
    centers split their column uniformly among the coincident centers.
    """
    return _impl("fcm_memberships")(_c(points), _c(centers), float(m))


def fcm_centroid_sums(points, u, m: float):
    """Weighted coordinate sums and total weights for the centroid update.

    Returns ``(num, den)`` where ``num[i] / den[i]`` is the new centroid of
    cluster i; ``den[i] == 0`` flags an empty cluster for the caller.
    """
    return _impl("fcm_centroid_sums")(_c(points), _c(u), float(m))


def objective(u, d2, m: float) -> float:
    """Weighted within-cluster scatter: sum of u^m times squared distance."""
    return float(_impl("objective")(_c(u), _c(d2), float(m)))
