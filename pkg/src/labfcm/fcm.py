"""Fuzzy c-means clustering: the alternating membership/centroid iteration.

Each point holds a graded membership in every cluster; the iteration
alternates a membership update (inverse squared-distance ratios) with a
weighted-mean centroid update until the membership matrix stops moving.
The objective (membership-weighted within-cluster scatter) never increases
along the way.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels, references
from .colors import ColorSet, as_lab_array
from .errors import (
    ConfigError,
    DegenerateCentroidError,
    EmptyClusterError,
    SeedingError,
    ShapeError,
)

INIT_MODES = ("reference", "random", "first_distinct", "uniform")


@dataclass(frozen=True)
class ClusterConfig:
    """Run parameters for one clustering job.

    ``fuzzifier`` softens the cluster memberships (must exceed 1);
    ``exponent`` is the separate sharpness knob of the reference-color
    grading used by reference seeding. ``seed`` only matters for the random
    initializer.
    """

    clusters: int
    fuzzifier: float = 2.0
    exponent: float = 1.0
    epsilon: float = 1e-5
    max_iter: int = 300
    init: str = "reference"
    seed: int = 0

    def __post_init__(self):
        if self.clusters < 1:
            raise ConfigError(f"clusters must be >= 1, got {self.clusters}")
        if not self.fuzzifier > 1.0:
            raise ConfigError(f"fuzzifier must exceed 1, got {self.fuzzifier}")
        if not self.exponent > 0.0:
            raise ConfigError(f"exponent must be positive, got {self.exponent}")
        if not self.epsilon > 0.0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.init not in INIT_MODES:
            raise ConfigError(
                f"unknown init mode {self.init!r}; expected one of {INIT_MODES}"
            )


@dataclass(frozen=True)
class FuzzyPartition:
    """Result of a clustering run.

    ``u`` is the (c, n) membership matrix (every column sums to 1), ``v``
    the (c, 3) centroids, ``objective_trace`` one objective value per
    iteration starting from the seeded state.
    """

    u: np.ndarray
    v: np.ndarray
    iterations: int
    objective_trace: np.ndarray = field(repr=False)
    converged: bool

    def hard_labels(self) -> np.ndarray:
        """Argmax cluster per point, lowest cluster index winning ties."""
        return self.u.argmax(axis=0)


def _check_distinct_centers(v: np.ndarray) -> None:
    for i in range(v.shape[0]):
        for l in range(i + 1, v.shape[0]):
            if (v[i] == v[l]).all():
                raise DegenerateCentroidError(
                    f"centroids {i} and {l} coincide at {tuple(v[i])}"
                )


def _centers_array(v) -> np.ndarray:
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ShapeError(f"centroids must be (c, 3), got {arr.shape}")
    if arr.shape[0] < 1:
        raise ShapeError("need at least one centroid")
    return arr


def update_memberships(X, v, m: float) -> np.ndarray:
    """Membership update: column j is point j's graded split across clusters.

    Entry (i, j) is the inverse sum over clusters l of
    ``(d2[i,j] / d2[l,j]) ** (1 / (m - 1))``. A point that coincides with
    one or more centroids splits its column uniformly among those centroids.
    """
    points = as_lab_array(X)
    centers = _centers_array(v)
    if not m > 1.0:
        raise ConfigError(f"fuzzifier must exceed 1, got {m}")
    _check_distinct_centers(centers)
    u, _ = kernels.fcm_memberships(points, centers, m)
    return u


def update_centroids(X, u, m: float) -> np.ndarray:
    """Centroid update: membership^m weighted mean of the points, per cluster."""
    points = as_lab_array(X)
    u = np.ascontiguousarray(u, dtype=np.float64)
    if u.ndim != 2:
        raise ShapeError(f"membership matrix must be 2-d, got {u.ndim}-d")
    if u.shape[1] != points.shape[0]:
        raise ShapeError(
            f"membership matrix has {u.shape[1]} columns for {points.shape[0]} points"
        )
    if not m > 1.0:
        raise ConfigError(f"fuzzifier must exceed 1, got {m}")
    num, den = kernels.fcm_centroid_sums(points, u, m)
    empty = np.flatnonzero(den == 0.0)
    if empty.size:
        raise EmptyClusterError(int(empty[0]))
    return num / den[:, None]


def has_converged(u_prev, u_next, epsilon: float) -> bool:
    """True when no membership moved by epsilon or more (strict max-norm)."""
    a = np.asarray(u_prev, dtype=np.float64)
    b = np.asarray(u_next, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeError(f"membership shapes differ: {a.shape} vs {b.shape}")
    if not epsilon > 0.0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    return bool(np.abs(b - a).max() < epsilon)


def objective(X, u, v, m: float) -> float:
    """Membership-weighted within-cluster scatter of a partition."""
    points = as_lab_array(X)
    u = np.ascontiguousarray(u, dtype=np.float64)
    centers = _centers_array(v)
    if u.shape != (centers.shape[0], points.shape[0]):
        raise ShapeError(
            f"membership matrix {u.shape} does not match "
            f"{centers.shape[0]} clusters x {points.shape[0]} points"
        )
    d2 = kernels.sq_dists(points, centers)
    return kernels.objective(u, d2, m)


def _round_half_away(x: float) -> int:
    return int(np.floor(x + 0.5))


def seed_centroids(
    X, config: ClusterConfig, refs: references.ReferenceSet | None = None
) -> np.ndarray:
    """Pick the initial centroids for a run, as a (c, 3) array.

    Modes: ``reference`` ranks the reference palette by best membership and
    takes each dominant color's closest point; ``random`` draws c distinct
    point indices without replacement from the configured seed;
    ``first_distinct`` takes the first c pairwise-distinct points in input
    order; ``uniform`` takes points at c indices spread evenly across the
    set (halves rounding away from zero).
    """
    points = as_lab_array(X)
    n = points.shape[0]
    c = config.clusters
    if c > n:
        raise ConfigError(f"clusters={c} exceeds point count {n}")

    if config.init == "reference":
        colorset = X if isinstance(X, ColorSet) else ColorSet(points)
        seeding = references.seed_by_dominant_colors(
            colorset, c, config.exponent, refs
        )
        return np.array(seeding.centroids, dtype=np.float64)

    if config.init == "random":
        rng = np.random.default_rng(config.seed)
        idx = rng.choice(n, size=c, replace=False)
        return points[idx].copy()

    if config.init == "first_distinct":
        kept: list[int] = []
        for j in range(n):
            if all((points[j] != points[i]).any() for i in kept):
                kept.append(j)
                if len(kept) == c:
                    return points[kept].copy()
        raise SeedingError(
            f"only {len(kept)} distinct points available for {c} clusters"
        )

    # uniform: indices round(i * (n-1) / (c-1)) for i = 0..c-1
    if c == 1:
        return points[[0]].copy()
    idx = [_round_half_away(i * (n - 1) / (c - 1)) for i in range(c)]
    return points[idx].copy()


def run_fcm(
    X,
    config: ClusterConfig,
    refs: references.ReferenceSet | None = None,
    initial: np.ndarray | None = None,
) -> FuzzyPartition:
    """Seed and iterate to a fuzzy partition.

    Alternates the membership and centroid updates until no membership moves
    by ``config.epsilon`` or more, or ``config.max_iter`` passes have run
    (the latter is reported as ``converged=False``, not an error). The run
    is deterministic for a fixed config and input. ``initial`` overrides
    seeding with precomputed centroids.
    """
    points = as_lab_array(X)
    if initial is not None:
        v = _centers_array(initial).copy()
        if v.shape[0] > points.shape[0]:
            raise ConfigError(
                f"clusters={v.shape[0]} exceeds point count {points.shape[0]}"
            )
    else:
        v = seed_centroids(X, config, refs)
    m = config.fuzzifier

    _check_distinct_centers(v)
    u, d2 = kernels.fcm_memberships(points, v, m)
    trace = [kernels.objective(u, d2, m)]

    converged = False
    iterations = 0
    for t in range(1, config.max_iter + 1):
        v = update_centroids(points, u, m)
        _check_distinct_centers(v)
        u_next, d2 = kernels.fcm_memberships(points, v, m)
        trace.append(kernels.objective(u_next, d2, m))
        iterations = t
        done = has_converged(u, u_next, config.epsilon)
        u = u_next
        if done:
            converged = True
            break

    return FuzzyPartition(
        u=u,
        v=v,
        iterations=iterations,
        objective_trace=np.array(trace),
        converged=converged,
    )
