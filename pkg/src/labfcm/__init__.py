"""Fuzzy c-means color clustering in CIELAB with dominant-color seeding."""

from .colors import (
    ColorPoint,
    ColorSet,
    lab_array_to_srgb_u8,
    lab_distance,
    load_colorset_csv,
    srgb_array_to_lab,
    srgb_to_lab,
)
from .errors import (
    ConfigError,
    DegenerateCentroidError,
    DomainError,
    EmptyClusterError,
    EmptyInputError,
    LabFcmError,
    ParseError,
    SeedingError,
    ShapeError,
    StateError,
)
from .fcm import (
    ClusterConfig,
    FuzzyPartition,
    has_converged,
    objective,
    run_fcm,
    seed_centroids,
    update_centroids,
    update_memberships,
)
from .kernels import active_backend, set_workers, use_backend
from .references import (
    DominantColorSet,
    DominantSeeding,
    RankedReference,
    ReferenceColor,
    ReferenceSet,
    builtin_references,
    dominant_colors,
    initial_centroids,
    load_reference_csv,
    membership_vector,
    point_memberships,
    scan_colorset,
    seed_by_dominant_colors,
    sort_references,
)
from .report import RunReport, build_report

__version__ = "0.1.0"

__all__ = [
    "ColorPoint",
    "ColorSet",
    "lab_distance",
    "srgb_to_lab",
    "srgb_array_to_lab",
    "lab_array_to_srgb_u8",
    "load_colorset_csv",
    "ReferenceColor",
    "ReferenceSet",
    "RankedReference",
    "DominantColorSet",
    "DominantSeeding",
    "builtin_references",
    "membership_vector",
    "point_memberships",
    "scan_colorset",
    "sort_references",
    "dominant_colors",
    "initial_centroids",
    "seed_by_dominant_colors",
    "load_reference_csv",
    "ClusterConfig",
    "FuzzyPartition",
    "objective",
    "update_memberships",
    "update_centroids",
    "has_converged",
    "seed_centroids",
    "run_fcm",
    "RunReport",
    "build_report",
    "active_backend",
    "use_backend",
    "set_workers",
    "LabFcmError",
    "ParseError",
    "EmptyInputError",
    "DomainError",
    "ShapeError",
    "ConfigError",
    "StateError",
    "SeedingError",
    "DegenerateCentroidError",
    "EmptyClusterError",
]
