import math

import numpy as np

from labfcm import ClusterConfig, ColorSet, build_report, run_fcm
from labfcm.report import RunReport

from expected_values import RECOVERED_EXPONENT, SAMPLE_POINTS


def sample_report():
    cs = ColorSet(SAMPLE_POINTS.copy())
    cfg = ClusterConfig(clusters=3, exponent=RECOVERED_EXPONENT)
    part = run_fcm(cs, cfg)
    initial = [
        {"source": "Black", "point_index": 9, "lab": [5.0, 2.27, 1.52]},
        {"source": "Red", "point_index": 4, "lab": [41.01, 45.03, 20.65]},
        {"source": "Yellow", "point_index": 5, "lab": [80.7, -5.76, 70.55]},
    ]
    return build_report(cfg, part, initial, {"input": "sample.csv", "n": cs.n})


def test_round_trip_is_lossless():
    report = sample_report()
    again = RunReport.from_json(report.to_json())
    assert again == report


def test_round_trip_survives_awkward_floats():
    report = sample_report()
    report.final_centroids[0][0] = math.pi
    report.objective_trace.append(1e-308)
    report.objective_trace.append(0.1 + 0.2)
    again = RunReport.from_json(report.to_json())
    assert again == report


def test_serialization_is_deterministic():
    a = sample_report().to_json()
    b = sample_report().to_json()
    assert a == b


def test_report_contents():
    report = sample_report()
    assert report.config["clusters"] == 3
    assert report.config["lambda"] == RECOVERED_EXPONENT
    assert report.config["input"] == "sample.csv"
    assert len(report.memberships) == 3
    assert all(len(row) == 10 for row in report.memberships)
    assert len(report.hard_labels) == 10
    assert report.converged
    u = np.array(report.memberships)
    assert report.hard_labels == [int(x) for x in u.argmax(axis=0)]
