"""Orientation-domain impulse responses and cortical feedback modulation.

Orientation profiles are length-12 arrays sampled at 0, 15, ..., 165 deg on
the 180-deg periodic orientation ring; index arithmetic wraps modulo the
profile length. Impulse responses act as convolution kernels over the ring,
so their lobe centres are orientation offsets from each detector's own
preferred orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

PERIOD_DEG = 180.0
N_ORIENTATIONS = 12
WRAPS = 3

Stage = Literal["T1", "T2", "custom"]


def orientation_grid(n: int = N_ORIENTATIONS) -> np.ndarray:
    return np.arange(n) * (PERIOD_DEG / n)


@dataclass(frozen=True)
class ImpulseParams:
    sigma_e: float
    sigma_i: float
    theta_k: float = 0.0
    theta_l: float = 0.0
    stage: Stage = "custom"

    def __post_init__(self):
        if not (self.sigma_e > 0 and self.sigma_i > 0):
            raise ValueError("impulse sigmas must be positive")
        if self.sigma_e >= self.sigma_i:
            raise ValueError(f"need sigma_e < sigma_i, got {self.sigma_e} >= {self.sigma_i}")

    @classmethod
    def t1(cls) -> "ImpulseParams":
        """Sharpening Mexican hat: both lobes on the preferred orientation."""
        return cls(7.5, 60.0, 0.0, 0.0, "T1")

    @classmethod
    def t2(cls) -> "ImpulseParams":
        """Inverted response: broad excitation moved to the orthogonal
        orientation, inhibition left on the preferred one."""
        return cls(25.0, 60.0, 90.0, 0.0, "T2")

    @classmethod
    def for_stage(cls, stage: str) -> "ImpulseParams":
        stage = stage.upper()
        if stage == "T1":
            return cls.t1()
        if stage == "T2":
            return cls.t2()
        raise ValueError(f"unknown stage {stage!r}")


def continuous_impulse_response(theta, params: ImpulseParams):
    """Unwrapped difference of unit-area Gaussians, in 1/deg."""
    theta = np.asarray(theta, dtype=float)

    def lobe(mu, sigma):
        return np.exp(-((theta - mu) ** 2) / (2 * sigma ** 2)) / (math.sqrt(2 * math.pi) * sigma)

    return lobe(params.theta_k, params.sigma_e) - lobe(params.theta_l, params.sigma_i)


def wrapped_lobe(mu: float, sigma: float, n: int = N_ORIENTATIONS) -> np.ndarray:
    """Gaussian wrapped onto the ring and sampled, scaled to unit sum."""
    theta = orientation_grid(n)[:, None]
    shifts = PERIOD_DEG * np.arange(-WRAPS, WRAPS + 1)[None, :]
    samples = np.exp(-((theta - mu + shifts) ** 2) / (2 * sigma ** 2)).sum(axis=1)
    return samples / samples.sum()


@dataclass(frozen=True)
class ImpulseResponse:
    samples: np.ndarray
    params: ImpulseParams


def make_impulse_response(params: ImpulseParams, n: int = N_ORIENTATIONS) -> ImpulseResponse:
    samples = (wrapped_lobe(params.theta_k, params.sigma_e, n)
               - wrapped_lobe(params.theta_l, params.sigma_i, n))
    samples.setflags(write=False)
    return ImpulseResponse(samples, params)


def unit_impulse(n: int = N_ORIENTATIONS) -> np.ndarray:
    h = np.zeros(n)
    h[0] = 1.0
    return h


def _samples(h) -> np.ndarray:
    return np.asarray(h.samples if isinstance(h, ImpulseResponse) else h, dtype=float)


def circular_convolve(h, profile) -> np.ndarray:
    """(h * p)[m] = sum_n h[n] p[(m - n) mod N], exact wraparound."""
    h = _samples(h)
    p = np.asarray(profile, dtype=float)
    if h.shape != p.shape or h.ndim != 1:
        raise ValueError(f"grid mismatch: kernel {h.shape} vs profile {p.shape}")
    n = len(p)
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return p[idx] @ h


@dataclass(frozen=True)
class FeedbackCoefficients:
    eta: tuple = (1.0,) * 7
    alpha: tuple = (1.0,) * 7

    @classmethod
    def uniform(cls, eta: float = 1.0, alpha: float = 1.0, n_scales: int = 7):
        return cls((float(eta),) * n_scales, (float(alpha),) * n_scales)

    def __post_init__(self):
        if len(self.eta) != len(self.alpha):
            raise ValueError("eta and alpha need one entry per scale")


def modulate(ortn, h, coeff: FeedbackCoefficients, j: int) -> np.ndarray:
    """Feedback-modulated profile: eta_j * ortn + alpha_j * (h * ortn)."""
    ortn = np.asarray(ortn, dtype=float)
    return coeff.eta[j] * ortn + coeff.alpha[j] * circular_convolve(h, ortn)
