"""Machine-readable run reports.

A report is a single JSON document with a fixed key order, so identical runs
serialize to identical bytes, and floats are emitted via Python's shortest
round-tripping repr, so parsing a report recovers every value exactly.
"""

import json
from dataclasses import asdict, dataclass

import numpy as np

from .fcm import ClusterConfig, FuzzyPartition


@dataclass
class RunReport:
    """Full record of one clustering run.

    ``memberships`` holds c rows of n values (row i = cluster i);
    ``hard_labels`` is each point's argmax cluster, lowest index on ties.
    """

    config: dict
    initial_centroids: list
    final_centroids: list
    memberships: list
    hard_labels: list
    iterations: int
    converged: bool
    objective_trace: list

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def _floats(a) -> list:
    return [float(x) for x in np.asarray(a).ravel()]


def build_report(
    config: ClusterConfig,
    partition: FuzzyPartition,
    initial: list[dict],
    extra_config: dict | None = None,
) -> RunReport:
    """Assemble a RunReport from a finished partition.

    ``initial`` entries are ``{"source": ..., "point_index": ..., "lab": ...}``
    dicts describing where each starting centroid came from.
    """
    cfg = {
        "clusters": config.clusters,
        "fuzzifier": config.fuzzifier,
        "lambda": config.exponent,
        "epsilon": config.epsilon,
        "max_iter": config.max_iter,
        "init": config.init,
        "seed": config.seed,
    }
    if extra_config:
        cfg.update(extra_config)
    return RunReport(
        config=cfg,
        initial_centroids=initial,
        final_centroids=[_floats(row) for row in partition.v],
        memberships=[_floats(row) for row in partition.u],
        hard_labels=[int(x) for x in partition.hard_labels()],
        iterations=partition.iterations,
        converged=partition.converged,
        objective_trace=_floats(partition.objective_trace),
    )
