"""Command-line front end: seed, cluster, and compare.

Inputs are either color-set CSVs (``L,a,b`` per line) or 8-bit RGB/RGBA PNGs
(alpha ignored, every pixel one color point). See the README for the report
schema and output formats.
"""

import argparse
import csv
import sys

import numpy as np
from PIL import Image

from . import kernels
from .colors import ColorSet, lab_array_to_srgb_u8, load_colorset_csv, srgb_array_to_lab
from .errors import ConfigError, LabFcmError, ParseError
from .fcm import ClusterConfig, run_fcm, seed_centroids
from .references import load_reference_csv, seed_by_dominant_colors
from .report import build_report

_INIT_ALIASES = {"first": "first_distinct"}


def _canon_init(name: str) -> str:
    return _INIT_ALIASES.get(name, name)


def _sample_indices(total: int, sample: int | None) -> np.ndarray:
    if sample is None or sample >= total:
        return np.arange(total, dtype=np.int64)
    if sample < 1:
        raise ConfigError(f"--sample must be >= 1, got {sample}")
    return np.unique(np.rint(np.linspace(0, total - 1, sample)).astype(np.int64))


def _load_image(path):
    img = Image.open(path)
    if img.mode not in ("RGB", "RGBA"):
        raise ParseError(
            f"{path}: unsupported image mode {img.mode!r}; need 8-bit RGB or RGBA"
        )
    rgb = np.asarray(img.convert("RGB"), dtype=np.uint8)
    return rgb


def _load_points(path, sample=None):
    """Returns (ColorSet, image array or None). Images flatten row-major."""
    if str(path).lower().endswith(".png"):
        rgb = _load_image(path)
        flat = rgb.reshape(-1, 3)
        idx = _sample_indices(flat.shape[0], sample)
        return ColorSet(srgb_array_to_lab(flat[idx])), rgb
    return load_colorset_csv(path), None


def _point_label(j: int) -> str:
    return f"x{j + 1}"


def cmd_seed(args) -> int:
    X, _ = _load_points(args.input)
    refs = load_reference_csv(args.refs) if args.refs else None
    seeding = seed_by_dominant_colors(X, args.clusters, args.lam, refs)

    print(f"reference scan (lambda={args.lam:g}, n={X.n}):")
    print(f"  {'name':<18} {'L':>8} {'a':>8} {'b':>8} {'mu':>8}  closest")
    for r in seeding.scanned.refs:
        lab = r.lab
        print(
            f"  {r.name:<18} {lab.L:>8.2f} {lab.a:>8.2f} {lab.b:>8.2f} "
            f"{r.mu:>8.4f}  {_point_label(r.closest)}"
        )
    print("sorted by mu:", ", ".join(r.ref.name for r in seeding.ranking))
    print(
        f"dominant colors (c={args.clusters}):",
        ", ".join(r.ref.name for r in seeding.ranking[: args.clusters]),
    )
    print("initial centroids:")
    for i, (ranked, pt) in enumerate(zip(seeding.chosen, seeding.centroids)):
        print(
            f"  v{i + 1} <- {_point_label(ranked.ref.closest)} ({ranked.ref.name}): "
            f"{pt.L:.2f}, {pt.a:.2f}, {pt.b:.2f}"
        )
    return 0


def _initial_centroid_records(X, config, refs):
    """Seed and describe where each starting centroid came from."""
    if config.init == "reference":
        seeding = seed_by_dominant_colors(X, config.clusters, config.exponent, refs)
        records = [
            {
                "source": ranked.ref.name,
                "point_index": int(ranked.ref.closest),
                "lab": [float(v) for v in pt],
            }
            for ranked, pt in zip(seeding.chosen, seeding.centroids)
        ]
        return np.array(seeding.centroids, dtype=np.float64), records

    v = seed_centroids(X, config, refs)
    records = []
    for row in v:
        matches = np.flatnonzero((X.lab == row).all(axis=1))
        records.append(
            {
                "source": config.init,
                "point_index": int(matches[0]) if matches.size else None,
                "lab": [float(x) for x in row],
            }
        )
    return v, records


def _write_label_image(path, rgb, v):
    """Color every pixel by its hard cluster's centroid, back in sRGB."""
    h, w, _ = rgb.shape
    lab = srgb_array_to_lab(rgb.reshape(-1, 3))
    labels = np.empty(lab.shape[0], dtype=np.int64)
    chunk = 1 << 16
    for start in range(0, lab.shape[0], chunk):
        d2 = kernels.sq_dists(lab[start : start + chunk], v)
        labels[start : start + chunk] = d2.argmin(axis=0)
    palette = lab_array_to_srgb_u8(v)
    out = palette[labels].reshape(h, w, 3)
    Image.fromarray(out, mode="RGB").save(path)


def _write_palette_strip(path, v, swatch=32):
    palette = lab_array_to_srgb_u8(v)
    strip = np.repeat(np.repeat(palette[None, :, :], swatch, axis=0), swatch, axis=1)
    Image.fromarray(strip, mode="RGB").save(path)


def cmd_cluster(args) -> int:
    if args.workers is not None:
        kernels.set_workers(args.workers)
    X, rgb = _load_points(args.input, args.sample)
    refs = load_reference_csv(args.refs) if args.refs else None
    config = ClusterConfig(
        clusters=args.clusters,
        fuzzifier=args.fuzzifier,
        exponent=args.lam,
        epsilon=args.epsilon,
        max_iter=args.max_iter,
        init=_canon_init(args.init),
        seed=args.seed,
    )
    v0, initial_records = _initial_centroid_records(X, config, refs)
    partition = run_fcm(X, config, refs, initial=v0)

    extra = {"input": str(args.input), "n": X.n}
    if args.sample is not None:
        extra["sample"] = args.sample
    report = build_report(config, partition, initial_records, extra)
    text = report.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if args.labels:
        if rgb is None:
            raise ConfigError("--labels requires an image input")
        _write_label_image(args.labels, rgb, partition.v)
    if args.palette:
        _write_palette_strip(args.palette, partition.v)
    return 0


def cmd_compare(args) -> int:
    if args.workers is not None:
        kernels.set_workers(args.workers)
    X, _ = _load_points(args.input, args.sample)
    inits = [_canon_init(s.strip()) for s in args.inits.split(",") if s.strip()]
    if not inits:
        raise ConfigError("--inits must name at least one initializer")
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["init", "seed", "iterations", "converged", "objective"])
    for init in inits:
        runs = seeds if init == "random" else [None]
        for seed in runs:
            config = ClusterConfig(
                clusters=args.clusters,
                fuzzifier=args.fuzzifier,
                exponent=args.lam,
                epsilon=args.epsilon,
                max_iter=args.max_iter,
                init=init,
                seed=seed if seed is not None else 0,
            )
            partition = run_fcm(X, config)
            writer.writerow(
                [
                    init,
                    "" if seed is None else seed,
                    partition.iterations,
                    "true" if partition.converged else "false",
                    repr(float(partition.objective_trace[-1])),
                ]
            )
    return 0


def _add_common_input(p):
    p.add_argument("input", help="color-set CSV or 8-bit PNG")
    p.add_argument("--clusters", "-c", type=int, required=True, help="cluster count")
    p.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        default=1.0,
        help="reference-membership exponent (default 1.0)",
    )


def _add_fcm_params(p):
    p.add_argument(
        "--fuzzifier", type=float, default=2.0, help="membership softness, > 1"
    )
    p.add_argument(
        "--epsilon", type=float, default=1e-5, help="termination threshold"
    )
    p.add_argument("--max-iter", type=int, default=300, help="iteration cap")
    p.add_argument(
        "--workers", type=int, default=None, help="cap compiled-kernel threads"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="labfcm",
        description="Fuzzy c-means color clustering in CIELAB with "
        "dominant-color centroid seeding",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seed = sub.add_parser(
        "seed", help="scan the reference palette and print the seeding"
    )
    _add_common_input(p_seed)
    p_seed.add_argument("--refs", help="replacement palette CSV (name,L,a,b)")
    p_seed.set_defaults(func=cmd_seed)

    p_cluster = sub.add_parser("cluster", help="run the full clustering")
    _add_common_input(p_cluster)
    p_cluster.add_argument(
        "--init",
        default="reference",
        choices=["reference", "random", "first", "first_distinct", "uniform"],
        help="centroid initializer (default reference)",
    )
    _add_fcm_params(p_cluster)
    p_cluster.add_argument("--seed", type=int, default=0, help="RNG seed for --init random")
    p_cluster.add_argument("--refs", help="replacement palette CSV (name,L,a,b)")
    p_cluster.add_argument("--report", help="write the JSON run report here")
    p_cluster.add_argument("--labels", help="write a hard-label PNG here (image inputs)")
    p_cluster.add_argument("--palette", help="write a centroid palette strip PNG here")
    p_cluster.add_argument(
        "--sample", type=int, default=None, help="keep at most N evenly spaced pixels"
    )
    p_cluster.set_defaults(func=cmd_cluster)

    p_compare = sub.add_parser(
        "compare", help="run several initializers and emit a CSV comparison"
    )
    _add_common_input(p_compare)
    p_compare.add_argument(
        "--inits", required=True, help="comma-separated initializer list"
    )
    p_compare.add_argument(
        "--seeds", default="0", help="comma-separated seeds for --init random"
    )
    _add_fcm_params(p_compare)
    p_compare.add_argument(
        "--sample", type=int, default=None, help="keep at most N evenly spaced pixels"
    )
    p_compare.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LabFcmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
