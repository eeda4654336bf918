"""Run observation conditions I, II and III over the ten displays, write
CSV tables and SVG charts, then list which qualitative orderings hold.

Set BRIGHTDYN_THREADS to process stimuli in parallel.
"""

import sys
import time
from pathlib import Path

from brightdyn.experiments import ExperimentConfig, run_experiment, write_record
from brightdyn.orderings import describe_constants, ordering_checks
from brightdyn.plotting import plot_orientation_profiles, plot_predictions

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out/conditions")
records = {}
for condition in ("I", "II", "III"):
    t0 = time.perf_counter()
    rec = run_experiment(ExperimentConfig(condition=condition))
    write_record(rec, out / condition)
    plot_predictions(rec, out / condition)
    plot_orientation_profiles(rec, out / condition)
    records[condition] = rec
    print(f"condition {condition}: {len(rec.predictions)} predictions in "
          f"{time.perf_counter() - t0:.1f} s")
    for g in rec.gaps:
        print(f"  {g.stage}  {g.pair_id:8s} {g.stimulus_a:15s} {g.peak_a:9.4f}  "
              f"{g.stimulus_b:15s} {g.peak_b:9.4f}  gap {g.gap:+.4f}")

print("\nconstants:", describe_constants(ExperimentConfig()))
for c in ordering_checks(records):
    print(f"  [{'ok' if c.ok else '--'}] criterion {c.criterion}: {c.name}  ({c.detail})")
