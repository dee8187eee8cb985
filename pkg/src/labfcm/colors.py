"""CIELAB color points, the Euclidean Lab distance, and sRGB ingestion.

Coordinates are plain double-precision L*, a*, b* values. They are never
clamped: real data sets contain out-of-gamut points (negative L* included),
and all downstream math must see them unchanged.
"""

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError, EmptyInputError, ParseError, ShapeError


class ColorPoint(NamedTuple):
    """One color as an (L*, a*, b*) triple."""

    L: float
    a: float
    b: float


def lab_distance(x, y) -> float:
    """Euclidean distance between two Lab triples.

    Total on finite inputs: symmetric, non-negative, zero iff the triples
    are componentwise identical.
    """
    return math.sqrt(
        (x[0] - y[0]) ** 2 + (x[1] - y[1]) ** 2 + (x[2] - y[2]) ** 2
    )


@dataclass(frozen=True)
class ColorSet:
    """An ordered set of color points, row j of ``lab`` being point j.

    Order is preserved exactly as ingested; every point index produced by the
    rest of the library refers to this row order.
    """

    lab: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.lab, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ShapeError(f"color set must be (n, 3), got {arr.shape}")
        if arr.shape[0] < 1:
            raise EmptyInputError("color set must contain at least one point")
        if not np.isfinite(arr).all():
            raise DomainError("color set contains non-finite coordinates")
        object.__setattr__(self, "lab", arr)

    @property
    def n(self) -> int:
        return self.lab.shape[0]

    def __len__(self) -> int:
        return self.n

    def point(self, j: int) -> ColorPoint:
        row = self.lab[j]
        return ColorPoint(float(row[0]), float(row[1]), float(row[2]))

    @classmethod
    def from_points(cls, points: Iterable) -> "ColorSet":
        return cls(np.array([tuple(p) for p in points], dtype=np.float64))


def as_lab_array(x) -> np.ndarray:
    """Coerce a ColorSet or an (n, 3) array-like to a float64 (n, 3) array."""
    if isinstance(x, ColorSet):
        return x.lab
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ShapeError(f"expected (n, 3) color data, got {arr.shape}")
    return arr


# sRGB <-> CIELAB under the D65 reference white, 2 degree observer.
# Matrix per IEC 61966-2-1 (Lindbloom's sRGB D65 derivation); the inverse is
# computed rather than transcribed so round trips close at machine precision.
_SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_XYZ_TO_SRGB = np.linalg.inv(_SRGB_TO_XYZ)
_D65_WHITE = np.array([0.95047, 1.0, 1.08883])
_DELTA = 6.0 / 29.0


def srgb_array_to_lab(rgb) -> np.ndarray:
    """Convert 8-bit sRGB values, shape (..., 3), to CIELAB float64."""
    arr = np.asarray(rgb, dtype=np.float64)
    if arr.shape[-1] != 3:
        raise ShapeError(f"expected trailing dimension 3, got {arr.shape}")
    if arr.min() < 0 or arr.max() > 255:
        raise DomainError("sRGB channel values must lie in 0..255")
    u = arr / 255.0
    linear = np.where(u <= 0.04045, u / 12.92, ((u + 0.055) / 1.055) ** 2.4)
    xyz = linear @ _SRGB_TO_XYZ.T
    t = xyz / _D65_WHITE
    f = np.where(t > _DELTA**3, np.cbrt(t), t / (3 * _DELTA**2) + 4.0 / 29.0)
    L = 116.0 * f[..., 1] - 16.0
    a = 500.0 * (f[..., 0] - f[..., 1])
    b = 200.0 * (f[..., 1] - f[..., 2])
    return np.stack([L, a, b], axis=-1)


def srgb_to_lab(r: int, g: int, b: int) -> ColorPoint:
    """Convert one 8-bit sRGB triple to a Lab color point."""
    return ColorPoint(*srgb_array_to_lab(np.array([r, g, b], dtype=np.float64)))


def lab_array_to_srgb_u8(lab) -> np.ndarray:
    """Convert Lab values, shape (..., 3), back to 8-bit sRGB.

    Out-of-gamut results are clamped to [0, 255]. This is the only place the
    library clamps anything, and it sits at the output boundary by design.
    """
    arr = np.asarray(lab, dtype=np.float64)
    if arr.shape[-1] != 3:
        raise ShapeError(f"expected trailing dimension 3, got {arr.shape}")
    fy = (arr[..., 0] + 16.0) / 116.0
    fx = fy + arr[..., 1] / 500.0
    fz = fy - arr[..., 2] / 200.0
    f = np.stack([fx, fy, fz], axis=-1)
    t = np.where(f > _DELTA, f**3, 3 * _DELTA**2 * (f - 4.0 / 29.0))
    xyz = t * _D65_WHITE
    linear = xyz @ _XYZ_TO_SRGB.T
    u = np.where(
        linear <= 0.0031308,
        12.92 * linear,
        1.055 * np.maximum(linear, 0.0) ** (1.0 / 2.4) - 0.055,
    )
    return np.rint(np.clip(u, 0.0, 1.0) * 255.0).astype(np.uint8)


def load_colorset_csv(path) -> ColorSet:
    """Read a color set from a CSV file of ``L,a,b`` lines.

    Blank lines and lines starting with ``#`` are skipped. Line k of the data
    becomes point k, in file order.
    """
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            if len(fields) != 3:
                raise ParseError(
                    f"{path}: line {lineno}: expected 3 comma-separated values, "
                    f"got {len(fields)}",
                    line=lineno,
                )
            try:
                values = [float(f) for f in fields]
            except ValueError:
                raise ParseError(
                    f"{path}: line {lineno}: non-numeric field", line=lineno
                ) from None
            if not all(math.isfinite(v) for v in values):
                raise ParseError(
                    f"{path}: line {lineno}: non-finite value", line=lineno
                )
            rows.append(values)
    if not rows:
        raise EmptyInputError(f"{path}: no color points found")
    return ColorSet(np.array(rows, dtype=np.float64))
