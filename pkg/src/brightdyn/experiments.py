"""Experiment matrix for the three observation conditions over the ten
grating / White's stimuli, with CSV record I/O."""

from __future__ import annotations

import csv
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .orientation import orientation_grid
from .pooling import ModelConfig, PredictionResult, ScaleSelection, modulated_prediction, pool_all
from .stimuli import (GratingSpec, WhiteSpec, compose_display, grating_phase_for_center,
                      make_square_grating, make_white_stimulus)

log = logging.getLogger(__name__)

CONDITIONS = ("I", "II", "III")
STAGES = ("T1", "T2")
STAGE_LABELS = {"T1": "58ms", "T2": "82ms"}

GRATING_IDS = tuple(f"{kind}_{t}_{i}" for kind in ("thin", "wide")
                    for t in (31, 72) for i in (12, 102))
WHITE_IDS = ("white_on_black", "white_on_white")
STIMULUS_IDS = GRATING_IDS + WHITE_IDS

# (pair id, brighter-by-induction member, other member)
PAIRS = tuple(
    (f"{kind}_{t}", f"{kind}_{t}_12", f"{kind}_{t}_102")
    for kind in ("thin", "wide") for t in (31, 72)
) + (("white", "white_on_white", "white_on_black"),)


@dataclass(frozen=True)
class DisplayConfig:
    side: int = 1024
    black_luminance: float = 12.0
    thin_stripe_width: int = 31
    wide_stripe_width: int = 340
    white: WhiteSpec = WhiteSpec()

    @property
    def mid_point(self) -> tuple:
        return (self.side // 2, 3 * self.side // 4)

    def interface_point(self, offset: int) -> tuple:
        return (self.side // 2, self.side // 2 + offset)


def make_stimulus(stimulus_id: str, display: DisplayConfig = DisplayConfig()) -> np.ndarray:
    """Full display (black upper half) for one of the ten stimulus ids."""
    half = display.side // 2
    if stimulus_id in WHITE_IDS:
        placement = "on-black" if stimulus_id == "white_on_black" else "on-white"
        stim = make_white_stimulus(replace(display.white, placement=placement), display.side, half)
    elif stimulus_id in GRATING_IDS:
        kind, target, inducer = stimulus_id.split("_")
        width = display.thin_stripe_width if kind == "thin" else display.wide_stripe_width
        spec = GratingSpec(width, float(target), float(inducer),
                           grating_phase_for_center(width, display.side))
        stim = make_square_grating(spec, display.side, half)
    else:
        raise ValueError(f"unknown stimulus id {stimulus_id!r}")
    return compose_display(stim, display.side, display.black_luminance)


@dataclass(frozen=True)
class ExperimentConfig:
    condition: str = "I"
    stages: tuple = STAGES
    stimuli: tuple = STIMULUS_IDS
    model: ModelConfig = field(default_factory=ModelConfig)
    display: DisplayConfig = DisplayConfig()
    interface_offset: int = 16
    largest_scales: int = 3
    fixed_window_sigma_px: float | None = None
    external: dict = field(default_factory=dict)  # stimulus id -> display array

    def __post_init__(self):
        if self.condition not in CONDITIONS:
            raise ValueError(f"unknown condition {self.condition!r}")
        for stage in self.stages:
            if stage not in self.model.impulses:
                raise ValueError(f"no impulse response configured for stage {stage!r}")
        for sid in self.stimuli:
            if sid not in STIMULUS_IDS and sid not in self.external:
                raise ValueError(f"unknown stimulus id {sid!r}")

    def selection(self, stage: str) -> ScaleSelection:
        n = self.model.bank.n_scales
        if self.condition == "II" and stage == "T2":
            sel = ScaleSelection.largest(self.largest_scales, n)
        else:
            sel = ScaleSelection.all(n)
        if self.fixed_window_sigma_px is not None:
            sel = replace(sel, fixed_sigma_px=self.fixed_window_sigma_px)
        return sel

    def observation(self) -> tuple:
        if self.condition == "III":
            return self.display.interface_point(self.interface_offset)
        return self.display.mid_point

    def display_for(self, stimulus_id: str) -> np.ndarray:
        if stimulus_id in self.external:
            return self.external[stimulus_id]
        return make_stimulus(stimulus_id, self.display)


@dataclass(frozen=True)
class GapRow:
    condition: str
    stage: str
    pair_id: str
    stimulus_a: str
    stimulus_b: str
    peak_a: float
    peak_b: float

    @property
    def gap(self) -> float:
        return self.peak_a - self.peak_b


@dataclass
class RunRecord:
    config: ExperimentConfig | None
    predictions: list
    gaps: list = field(default_factory=list)

    def get(self, stimulus_id: str, stage: str) -> PredictionResult:
        for r in self.predictions:
            if r.stimulus_id == stimulus_id and r.stage == stage:
                return r
        raise KeyError((stimulus_id, stage))

    def peak(self, stimulus_id: str, stage: str) -> float:
        return self.get(stimulus_id, stage).peak

    @property
    def stages(self) -> list:
        return sorted({r.stage for r in self.predictions})

    @property
    def stimuli(self) -> list:
        return sorted({r.stimulus_id for r in self.predictions})


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BRIGHTDYN_THREADS", "1")))
    except ValueError:
        return 1


def _run_stimulus(config: ExperimentConfig, sid: str) -> list:
    display = config.display_for(sid)
    observation = config.observation()
    results = []
    pooled_by_windows = {}
    for stage in config.stages:
        sel = config.selection(stage)
        windows = sel.windows(observation, config.model.bank)
        key = tuple(sorted((j, w) for j, w in windows.items()))
        if key not in pooled_by_windows:
            pooled_by_windows[key] = pool_all(display, config.model.bank, windows)
        results.append(modulated_prediction(
            pooled_by_windows[key], stage, sel, config.model,
            condition=config.condition, stimulus_id=sid, observation=observation))
    return results


def compute_gaps(predictions, condition: str) -> list:
    have = {(r.stimulus_id, r.stage): r.peak for r in predictions}
    stages = sorted({r.stage for r in predictions})
    rows = []
    for stage in stages:
        for pair_id, a, b in PAIRS:
            if (a, stage) in have and (b, stage) in have:
                rows.append(GapRow(condition, stage, pair_id, a, b,
                                   have[a, stage], have[b, stage]))
    return rows


def run_experiment(config: ExperimentConfig) -> RunRecord:
    """Predict every (stimulus, stage) of the configured condition.

    Results are sorted by stimulus id and stage, so the record does not
    depend on how many worker threads ran.
    """
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        chunks = list(pool.map(lambda sid: _run_stimulus(config, sid), config.stimuli))
    predictions = sorted((r for chunk in chunks for r in chunk),
                         key=lambda r: (r.stimulus_id, r.stage))
    return RunRecord(config, predictions, compute_gaps(predictions, config.condition))


# --- CSV ---------------------------------------------------------------

def _profile_columns(n: int):
    return [f"A_{int(t)}" for t in orientation_grid(n)]


def prediction_header(n: int = 12):
    return ["condition", "stage", "stimulus_id", "observation_x", "observation_y",
            "peak", "argpeak_deg"] + _profile_columns(n)


GAP_HEADER = ["condition", "stage", "pair_id", "stimulus_a", "stimulus_b",
              "peak_a", "peak_b", "gap"]
PROFILE_HEADER = ["condition", "stimulus_id", "stage", "curve", "theta_deg", "value"]


def _fmt(x) -> str:
    return repr(float(x))


def write_predictions(path, predictions) -> None:
    n = len(predictions[0].A) if predictions else 12
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(prediction_header(n))
        for r in predictions:
            w.writerow([r.condition, r.stage, r.stimulus_id, r.observation[0], r.observation[1],
                        _fmt(r.peak), _fmt(r.argpeak_deg)] + [_fmt(a) for a in r.A])


def write_gaps(path, gaps) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(GAP_HEADER)
        for g in gaps:
            w.writerow([g.condition, g.stage, g.pair_id, g.stimulus_a, g.stimulus_b,
                        _fmt(g.peak_a), _fmt(g.peak_b), _fmt(g.gap)])


def write_profiles(path, predictions) -> None:
    """Orientation profiles as (theta, value) rows; the no-feedback curve
    comes from each prediction's unmodulated profile."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PROFILE_HEADER)
        for r in predictions:
            curves = [("modulated", r.A)]
            if r.unmodulated is not None:
                curves.append(("no_feedback", r.unmodulated))
            for name, values in curves:
                for theta, v in zip(orientation_grid(len(values)), values):
                    w.writerow([r.condition, r.stimulus_id, r.stage, name, _fmt(theta), _fmt(v)])


def read_predictions(path, profiles_path=None) -> RunRecord:
    """Rebuild a record from ``predictions.csv`` (and optionally the
    profiles file, for the no-feedback curves)."""
    unmod = {}
    if profiles_path is not None and Path(profiles_path).exists():
        with open(profiles_path, newline="") as fh:
            for row in csv.DictReader(fh):
                if row["curve"] == "no_feedback":
                    unmod.setdefault((row["stimulus_id"], row["stage"]), []).append(float(row["value"]))
    predictions = []
    condition = ""
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            A = np.array([float(v) for k, v in row.items() if k.startswith("A_")])
            sid, stage = row["stimulus_id"], row["stage"]
            u = unmod.get((sid, stage))
            condition = row["condition"]
            predictions.append(PredictionResult(
                A, None if u is None else np.array(u), condition, stage, sid,
                (int(row["observation_x"]), int(row["observation_y"]))))
    return RunRecord(None, predictions, compute_gaps(predictions, condition))


def write_record(record: RunRecord, out_dir) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {"predictions": out_dir / "predictions.csv",
             "gaps": out_dir / "gaps.csv",
             "profiles": out_dir / "profiles.csv"}
    write_predictions(paths["predictions"], record.predictions)
    write_gaps(paths["gaps"], record.gaps)
    write_profiles(paths["profiles"], record.predictions)
    return paths
