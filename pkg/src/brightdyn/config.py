"""Plain-text ``key = value`` configuration with section headers.

Every key is optional; missing keys fall back to the library defaults.

    [run]
    condition = I
    stages = T1, T2
    stimuli = thin_31_12, thin_31_102

    [display]
    side = 1024
    black_luminance = 12

    [stimuli]
    thin_stripe_width = 31
    wide_stripe_width = 340
    white_black = 12
    white_white = 102
    white_test = 57
    test_width = 31
    test_height = 62

    [filterbank]
    pixels_per_degree = 32
    center_sigma_0_deg = 0.047
    n_scales = 7
    orientation_step_deg = 15

    [dynamics.t1]          ; likewise [dynamics.t2]
    sigma_e_deg = 7.5
    sigma_i_deg = 60
    theta_k_deg = 0
    theta_l_deg = 0
    eta = 1                ; scalar or comma list, one per scale
    alpha = 1

    [pooling]
    weight_exponent = 0.1
    interface_offset = 16
    largest_scales = 3
    fixed_window_sigma_px = 42.67   ; omit for extent / 6
"""

from __future__ import annotations

import configparser
from dataclasses import replace

from .experiments import STAGES, DisplayConfig, ExperimentConfig
from .filterbank import FilterBank
from .orientation import FeedbackCoefficients, ImpulseParams
from .pooling import ModelConfig
from .stimuli import PixelGeometry, WhiteSpec


def _list(value: str):
    return [v.strip() for v in value.split(",") if v.strip()]


def _per_scale(value: str, n_scales: int) -> tuple:
    items = [float(v) for v in _list(value)]
    if len(items) == 1:
        return tuple(items) * n_scales
    if len(items) != n_scales:
        raise ValueError(f"expected 1 or {n_scales} values, got {len(items)}: {value!r}")
    return tuple(items)


def parse_config(text: str, **overrides) -> ExperimentConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.read_string(text)

    def get(section, key, conv=str, default=None):
        if cp.has_option(section, key):
            return conv(cp.get(section, key))
        return default

    geometry = PixelGeometry(get("filterbank", "pixels_per_degree", float, 32.0))
    bank = FilterBank(
        geometry,
        center_sigma_0_deg=get("filterbank", "center_sigma_0_deg", float, 0.047),
        n_scales=get("filterbank", "n_scales", int, 7),
        orientation_step_deg=get("filterbank", "orientation_step_deg", float, 15.0),
    )

    impulses, eta, alpha = {}, {}, {}
    for stage in STAGES:
        section = f"dynamics.{stage.lower()}"
        base = ImpulseParams.for_stage(stage)
        impulses[stage] = ImpulseParams(
            get(section, "sigma_e_deg", float, base.sigma_e),
            get(section, "sigma_i_deg", float, base.sigma_i),
            get(section, "theta_k_deg", float, base.theta_k),
            get(section, "theta_l_deg", float, base.theta_l),
            stage,
        )
        eta[stage] = _per_scale(get(section, "eta", str, "1"), bank.n_scales)
        alpha[stage] = _per_scale(get(section, "alpha", str, "1"), bank.n_scales)
    coefficients = {s: FeedbackCoefficients(eta[s], alpha[s]) for s in STAGES}

    model = ModelConfig(bank, coefficients,
                        get("pooling", "weight_exponent", float, 0.1), impulses)

    white = WhiteSpec(
        stripe_width=get("stimuli", "thin_stripe_width", int, 31),
        test_width=get("stimuli", "test_width", int, 31),
        test_height=get("stimuli", "test_height", int, 62),
        black_luminance=get("stimuli", "white_black", float, 12.0),
        white_luminance=get("stimuli", "white_white", float, 102.0),
        test_luminance=get("stimuli", "white_test", float, 57.0),
    )
    display = DisplayConfig(
        side=get("display", "side", int, 1024),
        black_luminance=get("display", "black_luminance", float, 12.0),
        thin_stripe_width=white.stripe_width,
        wide_stripe_width=get("stimuli", "wide_stripe_width", int, 340),
        white=white,
    )

    config = ExperimentConfig(
        condition=get("run", "condition", str, "I"),
        model=model,
        display=display,
        interface_offset=get("pooling", "interface_offset", int, 16),
        largest_scales=get("pooling", "largest_scales", int, 3),
        fixed_window_sigma_px=get("pooling", "fixed_window_sigma_px", float, None),
    )
    if cp.has_option("run", "stages"):
        config = replace(config, stages=tuple(s.upper() for s in _list(cp.get("run", "stages"))))
    if cp.has_option("run", "stimuli"):
        config = replace(config, stimuli=tuple(_list(cp.get("run", "stimuli"))))
    return replace(config, **overrides) if overrides else config


def load_config(path=None, **overrides) -> ExperimentConfig:
    text = "" if path is None else open(path).read()
    return parse_config(text, **overrides)


def dump_config(config: ExperimentConfig) -> str:
    """Config snapshot in the same format ``parse_config`` reads."""
    m, d = config.model, config.display
    cp = configparser.ConfigParser()
    cp["run"] = {"condition": config.condition, "stages": ", ".join(config.stages),
                 "stimuli": ", ".join(config.stimuli)}
    cp["display"] = {"side": str(d.side), "black_luminance": repr(d.black_luminance)}
    cp["stimuli"] = {
        "thin_stripe_width": str(d.thin_stripe_width),
        "wide_stripe_width": str(d.wide_stripe_width),
        "white_black": repr(d.white.black_luminance),
        "white_white": repr(d.white.white_luminance),
        "white_test": repr(d.white.test_luminance),
        "test_width": str(d.white.test_width),
        "test_height": str(d.white.test_height),
    }
    cp["filterbank"] = {
        "pixels_per_degree": repr(m.bank.geometry.pixels_per_degree),
        "center_sigma_0_deg": repr(m.bank.center_sigma_0_deg),
        "n_scales": str(m.bank.n_scales),
        "orientation_step_deg": repr(m.bank.orientation_step_deg),
    }
    for stage in config.stages:
        p = m.impulses[stage]
        c = m.coefficients_for(stage)
        cp[f"dynamics.{stage.lower()}"] = {
            "sigma_e_deg": repr(p.sigma_e), "sigma_i_deg": repr(p.sigma_i),
            "theta_k_deg": repr(p.theta_k), "theta_l_deg": repr(p.theta_l),
            "eta": ", ".join(repr(float(v)) for v in c.eta),
            "alpha": ", ".join(repr(float(v)) for v in c.alpha),
        }
    cp["pooling"] = {"weight_exponent": repr(m.weight_exponent),
                     "interface_offset": str(config.interface_offset),
                     "largest_scales": str(config.largest_scales)}
    if config.fixed_window_sigma_px is not None:
        cp["pooling"]["fixed_window_sigma_px"] = repr(config.fixed_window_sigma_px)
    lines = []
    for section in cp.sections():
        lines.append(f"[{section}]")
        lines.extend(f"{k} = {v}" for k, v in cp[section].items())
        lines.append("")
    return "\n".join(lines)
