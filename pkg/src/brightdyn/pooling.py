"""Gaussian-window pooling of filter responses into orientation profiles,
scale combination and the max-contrast brightness prediction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from scipy import signal

from .filterbank import FilterBank
from .orientation import (FeedbackCoefficients, ImpulseParams, make_impulse_response,
                          modulate, orientation_grid)
from .stimuli import validate_image

WindowRule = Literal["fixed-256", "per-scale-3sigma", "smallest-of-selected"]
FIXED_EXTENT = 256


@dataclass(frozen=True)
class PoolingWindow:
    """Gaussian weights centred on ``center`` = (x, y), truncated to a square
    covering center +/- extent // 2 pixels."""

    center: tuple
    sigma_px: float
    extent: int = FIXED_EXTENT

    def __post_init__(self):
        if not self.sigma_px > 0:
            raise ValueError("window sigma must be positive")
        if self.extent < 1:
            raise ValueError("window extent must be >= 1")

    @property
    def half(self) -> int:
        return self.extent // 2

    def weights(self) -> np.ndarray:
        """Normalised weights; an infinite sigma gives a flat window."""
        offsets = np.arange(-self.half, self.half + 1, dtype=float)
        if math.isinf(self.sigma_px):
            w = np.ones((len(offsets), len(offsets)))
        else:
            g = np.exp(-0.5 * (offsets / self.sigma_px) ** 2)
            w = np.outer(g, g)
        return w / w.sum()

    def check_inside(self, shape) -> None:
        x, y = self.center
        rows, cols = shape
        if not (self.half <= x < cols - self.half and self.half <= y < rows - self.half):
            raise ValueError(
                f"window at (x={x}, y={y}) with extent {self.extent} leaves the {cols}x{rows} display")


@dataclass(frozen=True)
class ScaleSelection:
    """Scales combined into one prediction and how their windows are sized.

    ``fixed_sigma_px`` overrides the default extent / 6 sigma of the
    fixed-256 rule.
    """

    scales: tuple
    window_rule: WindowRule = "fixed-256"
    fixed_sigma_px: float | None = None

    def __post_init__(self):
        if len(self.scales) == 0:
            raise ValueError("scale selection is empty")
        if self.window_rule not in ("fixed-256", "per-scale-3sigma", "smallest-of-selected"):
            raise ValueError(f"unknown window rule {self.window_rule!r}")

    @classmethod
    def all(cls, n_scales: int = 7):
        return cls(tuple(range(n_scales)))

    @classmethod
    def largest(cls, count: int = 3, n_scales: int = 7):
        return cls(tuple(range(n_scales - count, n_scales)), "smallest-of-selected")

    def windows(self, center, bank: FilterBank) -> dict:
        """Pooling window for each selected scale."""
        sig = bank.center_sigmas_px
        if self.window_rule == "fixed-256":
            sigma = self.fixed_sigma_px or FIXED_EXTENT / 6.0
            win = PoolingWindow(center, sigma, FIXED_EXTENT)
            return {j: win for j in self.scales}
        if self.window_rule == "smallest-of-selected":
            s = float(sig[min(self.scales)])
            win = PoolingWindow(center, s, int(math.ceil(6 * s)))
            return {j: win for j in self.scales}
        out = {}
        for j in self.scales:
            extent = int(math.ceil(3 * sig[j]))
            out[j] = PoolingWindow(center, extent / 6.0, extent)
        return out


def pool_orientation(responses, j: int, window: PoolingWindow) -> np.ndarray:
    """Gaussian-weighted mean of ``responses[j][theta]`` over the window."""
    responses = np.asarray(responses)
    window.check_inside(responses.shape[-2:])
    x, y = window.center
    h = window.half
    patch = responses[j, :, y - h:y + h + 1, x - h:x + h + 1]
    return np.tensordot(patch, window.weights(), axes=([1, 2], [0, 1]))


class _BlurCache:
    """Display blurred by each distinct pooling window, zero-padded by the
    largest kernel half-width so every kernel can be dotted against it."""

    def __init__(self, display, pad: int):
        self.display = display
        self.pad = pad
        self.padded = np.pad(display, pad)
        self._blurred = {}

    def get(self, window: PoolingWindow) -> np.ndarray:
        key = (window.sigma_px, window.extent)
        if key not in self._blurred:
            w = window.weights()
            # B(t) = sum_o w(o) I(t + o)
            self._blurred[key] = signal.fftconvolve(self.padded, w[::-1, ::-1], mode="same")
        return self._blurred[key]


def pool_all(display, bank: FilterBank, windows: dict) -> dict:
    """Pooled orientation profiles for each scale in ``windows`` without
    materialising full-size responses.

    The pooled value is <w, I * K> = sum_q K(q) B(c - q), where B is the
    display correlated with the window weights, so each (scale, orientation)
    costs one dot product with the kernel.
    """
    display = validate_image(display)
    pad = max(bank.half_width(j) for j in windows)
    cache = _BlurCache(display, pad)
    out = {}
    for j, window in windows.items():
        window.check_inside(display.shape)
        blurred = cache.get(window)
        x, y = window.center
        hw = bank.half_width(j)
        cy, cx = y + pad, x + pad
        patch = blurred[cy - hw:cy + hw + 1, cx - hw:cx + hw + 1][::-1, ::-1]
        out[j] = np.array([np.vdot(bank.kernel(j, i), patch)
                           for i in range(bank.n_orientations)])
    return out


def spectral_weights(modes, exponent: float = 0.1) -> np.ndarray:
    """Power-law scale weights, mode ** exponent."""
    modes = np.asarray(modes, dtype=float)
    if np.any(modes <= 0):
        raise ValueError("spectral modes must be positive")
    return modes ** exponent


@dataclass(frozen=True)
class PredictionResult:
    A: np.ndarray
    unmodulated: np.ndarray | None = None
    condition: str = ""
    stage: str = ""
    stimulus_id: str = ""
    observation: tuple = (0, 0)

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.A)))

    @property
    def argpeak_deg(self) -> float:
        # np.argmax returns the first maximum -> smallest angle on ties
        return float(orientation_grid(len(self.A))[int(np.argmax(np.abs(self.A)))])

    @property
    def signed_peak(self) -> float:
        """A at the peak orientation, keeping its polarity."""
        return float(self.A[int(np.argmax(np.abs(self.A)))])


def combine_scales(profiles: dict, weights: Sequence[float], selection: ScaleSelection, **tags):
    """A(theta) = sum over selected scales of weight_j * O_j(theta)."""
    missing = [j for j in selection.scales if j not in profiles]
    if missing:
        raise ValueError(f"profiles missing for scales {missing}")
    A = sum(weights[j] * np.asarray(profiles[j], dtype=float) for j in selection.scales)
    return PredictionResult(np.asarray(A, dtype=float), **tags)


@dataclass(frozen=True)
class ModelConfig:
    bank: FilterBank = field(default_factory=FilterBank)
    coefficients: FeedbackCoefficients = field(default_factory=FeedbackCoefficients)
    weight_exponent: float = 0.1
    impulses: dict = field(default_factory=lambda: {
        "T1": ImpulseParams.t1(), "T2": ImpulseParams.t2()})

    def weights(self) -> np.ndarray:
        return spectral_weights(self.bank.spectral_modes, self.weight_exponent)

    def coefficients_for(self, stage: str) -> FeedbackCoefficients:
        coeff = self.coefficients
        if isinstance(coeff, dict):
            coeff = coeff[stage]
        return coeff


def modulated_prediction(pooled: dict, stage: str, selection: ScaleSelection,
                         model: ModelConfig, **tags) -> PredictionResult:
    """Feedback-modulate pooled profiles and combine the selected scales."""
    h = make_impulse_response(model.impulses[stage], model.bank.n_orientations)
    coeff = model.coefficients_for(stage)
    weights = model.weights()
    modulated = {j: modulate(pooled[j], h, coeff, j) for j in selection.scales}
    result = combine_scales(modulated, weights, selection, stage=stage, **tags)
    unmod = combine_scales(pooled, weights, selection).A
    return PredictionResult(result.A, unmod, result.condition, result.stage,
                            result.stimulus_id, result.observation)


def predict(display, stage: str, selection: ScaleSelection, observation,
            model: ModelConfig = None, **tags) -> PredictionResult:
    """Filter, pool, modulate and combine; the peak of |A| is the predicted
    brightness (larger means brighter)."""
    model = model or ModelConfig()
    windows = selection.windows(tuple(observation), model.bank)
    pooled = pool_all(display, model.bank, windows)
    return modulated_prediction(pooled, stage, selection, model,
                                observation=tuple(observation), **tags)
