"""Command line: ``run``, ``stimulus`` and ``plot`` subcommands.

Failures exit with status 1 and print one JSON object on stderr, e.g.
``{"error": "ValueError", "message": "unknown stimulus id 'x'"}``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .config import dump_config, load_config
from .experiments import (CONDITIONS, STIMULUS_IDS, make_stimulus, read_predictions,
                          run_experiment, write_record)
from .pgm import read_pgm, write_pgm
from .plotting import plot_orientation_profiles, plot_predictions


def _run(args) -> None:
    overrides = {"condition": args.condition} if args.condition else {}
    config = load_config(args.config, **overrides)
    if args.external:
        image = read_pgm(args.external)
        rows, cols = image.shape
        if rows != cols:
            raise ValueError(f"external stimulus must be square, got {cols}x{rows}")
        sid = "external"
        config = replace(config, stimuli=(sid,), external={sid: image},
                         display=replace(config.display, side=rows))
    record = run_experiment(config)
    out = Path(args.out)
    paths = write_record(record, out)
    (out / "config.ini").write_text(dump_config(config))
    if not args.no_plots:
        plot_predictions(record, out)
        plot_orientation_profiles(record, out)
    print(json.dumps({"predictions": str(paths["predictions"]), "rows": len(record.predictions)}))


def _stimulus(args) -> None:
    config = load_config(args.config)
    if args.id not in STIMULUS_IDS:
        raise ValueError(f"unknown stimulus id {args.id!r}; expected one of {', '.join(STIMULUS_IDS)}")
    write_pgm(args.out, make_stimulus(args.id, config.display))


def _plot(args) -> None:
    csv_path = Path(args.csv)
    if not csv_path.exists():
        raise FileNotFoundError(f"no such file: {csv_path}")
    record = read_predictions(csv_path, csv_path.with_name("profiles.csv"))
    paths = plot_predictions(record, args.out) + plot_orientation_profiles(record, args.out)
    print(json.dumps({"svg": [str(p) for p in paths]}))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brightdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one observation condition over the stimulus set")
    run.add_argument("--condition", choices=CONDITIONS)
    run.add_argument("--config", help="INI-style config file")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--external", help="PGM display to use instead of the built-in stimuli")
    run.add_argument("--no-plots", action="store_true", help="write CSV files only")
    run.set_defaults(func=_run)

    stim = sub.add_parser("stimulus", help="render a built-in stimulus to PGM")
    stim.add_argument("id", help=", ".join(STIMULUS_IDS))
    stim.add_argument("--out", required=True)
    stim.add_argument("--config")
    stim.set_defaults(func=_stimulus)

    plot = sub.add_parser("plot", help="regenerate SVG charts from predictions.csv")
    plot.add_argument("csv")
    plot.add_argument("--out", required=True)
    plot.set_defaults(func=_plot)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:  # noqa: BLE001 - report every failure as one JSON line
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
