import logging
import re

import numpy as np
import pytest

from brightdyn.experiments import RunRecord
from brightdyn.plotting import plot_orientation_profiles, plot_predictions
from brightdyn.pooling import PredictionResult

GRATINGS = ("thin_31_12", "thin_31_102", "thin_72_12", "thin_72_102")


def _record(sids=GRATINGS, stages=("T1", "T2")):
    rng = np.random.default_rng(0)
    preds = [PredictionResult(rng.standard_normal(12), rng.standard_normal(12), "I", st, sid, (5, 5))
             for sid in sids for st in stages]
    return RunRecord(None, preds)


def _polylines(svg):
    return re.findall(r'<polyline [^>]*data-label="([^"]*)" data-values="([^"]*)"', svg)


def test_four_gratings_one_chart(tmp_path):
    rec = _record()
    paths = plot_predictions(rec, tmp_path)
    assert [p.name for p in paths] == ["peaks_I_thin.svg"]
    lines = _polylines(paths[0].read_text())
    assert len(lines) == 4
    for label, values in lines:
        got = [float(v) for v in values.split()]
        assert got == [rec.peak(label, "T1"), rec.peak(label, "T2")]


def test_stage_labels_and_styles(tmp_path):
    svg = plot_predictions(_record(), tmp_path)[0].read_text()
    assert "58ms" in svg and "82ms" in svg
    dotted = re.findall(r'<polyline [^>]*stroke-dasharray="4,4" data-label="([^"]*)"', svg)
    assert sorted(dotted) == ["thin_31_102", "thin_31_12"]
    assert svg.count("<rect x=") == svg.count("<polygon") > 0


def test_families_split(tmp_path):
    rec = _record(("thin_31_12", "wide_72_102", "white_on_black", "white_on_white"))
    names = sorted(p.name for p in plot_predictions(rec, tmp_path))
    assert names == ["peaks_I_thin.svg", "peaks_I_white.svg", "peaks_I_wide.svg"]


def test_empty_record_warns(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        assert plot_predictions(RunRecord(None, []), tmp_path / "x") == []
        assert plot_orientation_profiles(RunRecord(None, []), tmp_path / "x") == []
    assert "no prediction charts" in caplog.text
    assert not (tmp_path / "x").exists()


def test_profile_chart_has_three_curves(tmp_path):
    rec = _record(("thin_31_12",))
    (path,) = plot_orientation_profiles(rec, tmp_path)
    lines = _polylines(path.read_text())
    assert [label for label, _ in lines] == ["no feedback", "58ms", "82ms"]
    r1 = rec.get("thin_31_12", "T1")
    assert [float(v) for v in lines[0][1].split()] == list(r1.unmodulated)
    assert [float(v) for v in lines[1][1].split()] == list(r1.A)


def test_flat_profile_does_not_divide_by_zero(tmp_path):
    rec = RunRecord(None, [PredictionResult(np.zeros(12), np.zeros(12), "III", "T1", "x", (0, 0))])
    (path,) = plot_orientation_profiles(rec, tmp_path)
    assert "nan" not in path.read_text().lower()
