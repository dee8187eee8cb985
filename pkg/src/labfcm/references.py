"""Reference-color palette, graded color membership, and dominant-color seeding.

A fixed palette of reference colors acts as a yardstick: each input point
gets a graded membership to every reference, every reference remembers the
best membership any point achieved and which point achieved it, and the
top-ranked references ("dominant colors") donate their closest points as
initial cluster centroids.
"""

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import kernels
from .colors import ColorPoint, ColorSet, lab_distance
from .errors import (
    ConfigError,
    DomainError,
    EmptyInputError,
    ParseError,
    SeedingError,
    StateError,
)

# Built-in palette: 14 CIELAB anchors drawn from the GretagMacbeth
# ColorChecker chart, covering the major colors of natural scenes.
BUILTIN_PALETTE = (
    ("Red", 41.34, 49.31, 24.65),
    ("Green", 55.03, -40.14, 32.29),
    ("Blue", 30.35, 26.44, -49.67),
    ("Yellow", 80.70, -3.66, 77.55),
    ("Magenta", 51.14, 48.16, -15.29),
    ("Cyan", 51.15, -19.72, -23.38),
    ("Dark skin", 38.02, 11.80, 13.66),
    ("Orange", 61.13, 28.11, 56.13),
    ("Purple", 31.10, 24.36, -22.11),
    ("Greenish yellow", 71.90, -28.11, 56.96),
    ("Bluish green", 71.00, -30.63, 1.53),
    ("Light skin", 65.67, 13.68, 16.89),
    ("Black", 0.00, 0.00, 0.00),
    ("White", 95.82, -0.17, 0.47),
)


@dataclass(frozen=True)
class ReferenceColor:
    """A palette entry plus its scan attributes.

    ``mu`` is the best membership any scanned point achieved against this
    reference; ``closest`` is the index of that point. Both stay at their
    defaults until a scan fills them in.
    """

    name: str
    lab: ColorPoint
    mu: float = 0.0
    closest: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise DomainError(f"membership {self.mu} outside [0, 1]")


@dataclass(frozen=True)
class ReferenceSet:
    """An ordered reference palette. Needs at least two entries: the graded
    membership is built from distance ratios between references."""

    refs: tuple[ReferenceColor, ...]

    def __post_init__(self):
        if len(self.refs) < 2:
            raise ConfigError("reference set needs at least two colors")

    @property
    def k(self) -> int:
        return len(self.refs)

    def lab_matrix(self) -> np.ndarray:
        return np.array([r.lab for r in self.refs], dtype=np.float64)

    def scanned(self) -> bool:
        return all(r.closest is not None for r in self.refs)


def builtin_references() -> ReferenceSet:
    """A fresh copy of the built-in 14-color palette, attributes unset."""
    return ReferenceSet(
        tuple(
            ReferenceColor(name, ColorPoint(L, a, b))
            for name, L, a, b in BUILTIN_PALETTE
        )
    )


def membership_vector(deltas, exponent: float) -> np.ndarray:
    """Graded membership of one point to k references, from its k distances.

    Component i is the inverse of the ratio sum over all references,
    ``1 / sum_j (deltas[i] / deltas[j]) ** exponent``. A zero distance takes
    the full weight (split uniformly if several distances are zero at once);
    all other components are then 0. The result always sums to 1.
    """
    d = np.asarray(deltas, dtype=np.float64)
    if d.ndim != 1 or d.size < 2:
        raise DomainError("need a 1-d vector of at least two distances")
    if not np.isfinite(d).all() or (d < 0).any():
        raise DomainError("distances must be finite and non-negative")
    if not exponent > 0:
        raise DomainError(f"exponent must be positive, got {exponent}")
    zero = d == 0.0
    if zero.any():
        return np.where(zero, 1.0 / zero.sum(), 0.0)
    out = np.empty(d.size)
    for i in range(d.size):
        out[i] = 1.0 / ((d[i] / d) ** exponent).sum()
    return out


def point_memberships(x, refs: ReferenceSet, exponent: float) -> np.ndarray:
    """Membership of a single color point to every reference in the set."""
    deltas = np.array([lab_distance(x, r.lab) for r in refs.refs])
    return membership_vector(deltas, exponent)


def scan_colorset(X, refs: ReferenceSet, exponent: float) -> ReferenceSet:
    """Fill every reference's (mu, closest) attributes from a color set.

    For each reference, mu becomes the maximum membership over all points and
    closest the index of the point attaining it, lowest index winning ties.
    Returns a new ReferenceSet; the input is never mutated, so re-scanning
    with a different exponent is side-effect-free.
    """
    if not isinstance(X, ColorSet):
        X = ColorSet(np.asarray(X, dtype=np.float64))
    if not exponent > 0:
        raise DomainError(f"exponent must be positive, got {exponent}")
    best, closest = kernels.ref_scan(X.lab, refs.lab_matrix(), exponent)
    return ReferenceSet(
        tuple(
            replace(r, mu=float(mu), closest=int(p))
            for r, mu, p in zip(refs.refs, best, closest)
        )
    )


@dataclass(frozen=True)
class RankedReference:
    """A scanned reference along with its position in the original palette."""

    index: int
    ref: ReferenceColor


def sort_references(refs: ReferenceSet) -> tuple[RankedReference, ...]:
    """Rank references by best membership, descending.

    Ties keep the original palette order, which makes the ranking stable and
    deterministic. Requires a completed scan.
    """
    if not refs.scanned():
        raise StateError("references must be scanned before sorting")
    order = sorted(range(refs.k), key=lambda i: (-refs.refs[i].mu, i))
    return tuple(RankedReference(i, refs.refs[i]) for i in order)


@dataclass(frozen=True)
class DominantColorSet:
    """The top-c references of a ranking, plus the full ranking behind them.

    The full ranking is kept so centroid selection can walk past entries
    whose closest point was already claimed by a higher-ranked reference.
    """

    ranking: tuple[RankedReference, ...]
    c: int

    @property
    def entries(self) -> tuple[RankedReference, ...]:
        return self.ranking[: self.c]


def dominant_colors(
    ranking: Sequence[RankedReference], c: int
) -> DominantColorSet:
    """The first c references of the ranking."""
    k = len(ranking)
    if c < 1:
        raise ConfigError(f"cluster count must be at least 1, got {c}")
    if c > k:
        raise ConfigError(f"c={c} exceeds reference count {k}")
    return DominantColorSet(tuple(ranking), c)


def resolve_seed_references(dom: DominantColorSet) -> tuple[RankedReference, ...]:
    """The c references whose closest points become the initial centroids.

    Normally the top-c entries. When two of them share the same closest
    point, the lower-ranked one is replaced by the next reference in the
    ranking with an unclaimed point: duplicate starting centroids would make
    every membership update singular and defeat the point of seeding.
    """
    chosen: list[RankedReference] = []
    used: set[int] = set()
    for ranked in dom.ranking:
        if ranked.ref.closest in used:
            continue
        chosen.append(ranked)
        used.add(ranked.ref.closest)
        if len(chosen) == dom.c:
            return tuple(chosen)
    raise SeedingError(
        f"only {len(chosen)} distinct closest points across the reference set; "
        f"cannot seed {dom.c} clusters, use a baseline initializer "
        f"(random, first, or uniform)"
    )


def initial_centroids(dom: DominantColorSet, X: ColorSet) -> list[ColorPoint]:
    """Initial centroids: each dominant color's closest input point."""
    return [X.point(r.ref.closest) for r in resolve_seed_references(dom)]


@dataclass(frozen=True)
class DominantSeeding:
    """Everything the seeding pipeline produced, for reporting."""

    scanned: ReferenceSet
    ranking: tuple[RankedReference, ...]
    chosen: tuple[RankedReference, ...]
    centroids: tuple[ColorPoint, ...]


def seed_by_dominant_colors(
    X: ColorSet, c: int, exponent: float, refs: ReferenceSet | None = None
) -> DominantSeeding:
    """Scan, rank, pick dominant colors, and select the initial centroids."""
    palette = refs if refs is not None else builtin_references()
    scanned = scan_colorset(X, palette, exponent)
    ranking = sort_references(scanned)
    dom = dominant_colors(ranking, c)
    chosen = resolve_seed_references(dom)
    centroids = tuple(X.point(r.ref.closest) for r in chosen)
    return DominantSeeding(scanned, ranking, chosen, centroids)


def load_reference_csv(path) -> ReferenceSet:
    """Read a replacement palette from ``name,L,a,b`` lines.

    Same grammar as color-set CSVs plus the leading name field.
    """
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            if len(fields) != 4:
                raise ParseError(
                    f"{path}: line {lineno}: expected name,L,a,b "
                    f"(4 fields), got {len(fields)}",
                    line=lineno,
                )
            name = fields[0]
            try:
                values = [float(f) for f in fields[1:]]
            except ValueError:
                raise ParseError(
                    f"{path}: line {lineno}: non-numeric coordinate",
                    line=lineno,
                ) from None
            entries.append(ReferenceColor(name, ColorPoint(*values)))
    if not entries:
        raise EmptyInputError(f"{path}: no reference colors found")
    return ReferenceSet(tuple(entries))
