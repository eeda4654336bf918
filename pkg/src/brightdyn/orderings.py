"""Qualitative ordering checks over condition I/II/III run records.

Each check is a named boolean comparison of peaks; ``describe_constants``
summarises the filter constants a set of checks was evaluated under.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .experiments import RunRecord

GRATING_PAIRS = tuple((f"{kind}_{t}", f"{kind}_{t}_12", f"{kind}_{t}_102")
                      for kind in ("thin", "wide") for t in (31, 72))


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    ok: bool
    detail: str


def _gap(rec: RunRecord, a: str, b: str, stage: str) -> float:
    return rec.peak(a, stage) - rec.peak(b, stage)


def _grating_checks(rec: RunRecord, criterion: int, cond: str) -> list:
    out = []
    for pair, a, b in GRATING_PAIRS:
        for stage in ("T1", "T2"):
            pa, pb = rec.peak(a, stage), rec.peak(b, stage)
            out.append(Check(criterion, f"{cond} {pair} {stage}: {a} > {b}", pa > pb,
                             f"{pa:.6g} vs {pb:.6g}"))
        g1, g2 = _gap(rec, a, b, "T1"), _gap(rec, a, b, "T2")
        out.append(Check(criterion, f"{cond} {pair}: gap T2 < gap T1", g2 < g1,
                         f"{g2:.6g} vs {g1:.6g}"))
    return out


def _slope(rec: RunRecord, sid: str) -> float:
    return rec.peak(sid, "T2") - rec.peak(sid, "T1")


def ordering_checks(records: dict) -> list:
    """All ordering comparisons for the records present in ``records``
    (condition -> RunRecord holding the ten stimuli at both stages)."""
    checks = []
    if "I" in records:
        r = records["I"]
        checks += _grating_checks(r, 5, "I")
        w1 = _gap(r, "white_on_white", "white_on_black", "T1")
        w2 = _gap(r, "white_on_white", "white_on_black", "T2")
        checks.append(Check(6, "I white T1: on_white > on_black", w1 > 0, f"gap {w1:.6g}"))
        checks.append(Check(6, "I white T2: on_white > on_black", w2 > 0, f"gap {w2:.6g}"))
        checks.append(Check(6, "I white: gap T2 < gap T1", w2 < w1, f"{w2:.6g} vs {w1:.6g}"))
    if "II" in records:
        r = records["II"]
        checks += _grating_checks(r, 7, "II")
        w2 = _gap(r, "white_on_white", "white_on_black", "T2")
        checks.append(Check(7, "II white T2: on_white < on_black", w2 < 0, f"gap {w2:.6g}"))
    if "III" in records:
        r = records["III"]
        if "I" in records:
            s3, s1 = _slope(r, "thin_72_102"), _slope(records["I"], "thin_72_102")
            checks.append(Check(8, "III thin_72_102 slope opposite to I",
                                np.sign(s3) * np.sign(s1) < 0, f"{s3:.6g} vs {s1:.6g}"))
        d1 = _gap(r, "wide_72_12", "wide_72_102", "T1")
        d2 = _gap(r, "wide_72_12", "wide_72_102", "T2")
        checks.append(Check(8, "III wide 72 curves cross", np.sign(d1) * np.sign(d2) < 0,
                            f"T1 {d1:.6g}, T2 {d2:.6g}"))
    return checks


def describe_constants(config) -> str:
    m, d = config.model, config.display
    sig = ", ".join(f"{s:.4g}" for s in m.bank.center_sigmas_deg)
    window = config.fixed_window_sigma_px or 256 / 6
    return (f"center sigmas (deg) [{sig}] at {m.bank.geometry.pixels_per_degree:g} px/deg, "
            f"surround 1x/2x centre, fixed window sigma {window:.4g} px, "
            f"weight exponent {m.weight_exponent:g}, display black {d.black_luminance:g}")
