"""Multi-scale oriented difference-of-Gaussians (ODOG) filter bank.

A filter at orientation theta is a circular centre Gaussian minus a surround
Gaussian that keeps the centre's sigma along the theta axis and doubles it
across. At theta = 0 the axis is vertical and the filter is tuned to vertical
stripes; theta increases clockwise on screen, so 90 deg is horizontal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import fft as sp_fft
from scipy import signal

from .stimuli import PixelGeometry, validate_image

TRUNCATE_SIGMAS = 3.0


@dataclass(frozen=True)
class OdogFilterSpec:
    scale_index: int
    orientation_deg: float
    center_sigma_deg: float

    def __post_init__(self):
        if not self.center_sigma_deg > 0:
            raise ValueError(f"center sigma must be positive, got {self.center_sigma_deg}")

    @property
    def surround_sigma_along_deg(self) -> float:
        return self.center_sigma_deg

    @property
    def surround_sigma_across_deg(self) -> float:
        return 2.0 * self.center_sigma_deg


def _rotated_gaussian(x, y, sigma_along, sigma_across, theta_rad):
    along = x * math.sin(theta_rad) + y * math.cos(theta_rad)
    across = x * math.cos(theta_rad) - y * math.sin(theta_rad)
    norm = 1.0 / (2.0 * math.pi * sigma_along * sigma_across)
    return norm * np.exp(-0.5 * ((along / sigma_along) ** 2 + (across / sigma_across) ** 2))


def kernel_half_width(center_sigma_px: float) -> int:
    return int(math.ceil(TRUNCATE_SIGMAS * 2.0 * center_sigma_px))


def build_filter(spec: OdogFilterSpec, geometry: PixelGeometry = PixelGeometry()) -> np.ndarray:
    """Sample one ODOG kernel and rebalance it to zero sum.

    The square support extends 3 sigma of the surround's long axis from the
    centre in every direction, so the side is always odd.
    """
    sc = float(geometry.to_pixels(spec.center_sigma_deg))
    s_along = float(geometry.to_pixels(spec.surround_sigma_along_deg))
    s_across = float(geometry.to_pixels(spec.surround_sigma_across_deg))
    half = kernel_half_width(sc)
    offsets = np.arange(-half, half + 1, dtype=float)
    y, x = offsets[:, None], offsets[None, :]
    theta = math.radians(spec.orientation_deg)
    taps = (_rotated_gaussian(x, y, sc, sc, theta)
            - _rotated_gaussian(x, y, s_along, s_across, theta))
    taps -= taps.mean()
    return taps


def convolve(image, kernel, method: str = "fft") -> np.ndarray:
    """Linear 2-D convolution with zero padding; output has the image's shape
    and is centred on the kernel's middle tap.

    Kernels may be larger than the image as long as every tap can reach some
    pixel (side < 2 x image side); larger ones are rejected.
    """
    image = np.asarray(image, dtype=float)
    kernel = np.asarray(kernel, dtype=float)
    if image.ndim != 2 or kernel.ndim != 2:
        raise ValueError("convolve expects 2-D image and kernel")
    if kernel.shape[0] % 2 == 0 or kernel.shape[1] % 2 == 0:
        raise ValueError(f"kernel sides must be odd, got {kernel.shape}")
    if any(k >= 2 * n for k, n in zip(kernel.shape, image.shape)):
        raise ValueError(f"kernel {kernel.shape} too large for image {image.shape}")
    if method == "fft":
        return signal.fftconvolve(image, kernel, mode="same")
    if method == "direct":
        return signal.convolve2d(image, kernel, mode="same", boundary="fill")
    raise ValueError(f"unknown convolution method {method!r}")


def spectral_mode(kernel, pixels_per_degree: float, n_fft: int | None = None) -> float:
    """Radial frequency (cycles/deg) of the peak of |DFT(kernel)|."""
    kernel = np.asarray(kernel, dtype=float)
    n = n_fft or sp_fft.next_fast_len(4 * max(kernel.shape))
    amp = np.abs(sp_fft.fft2(kernel, s=(n, n)))
    iy, ix = np.unravel_index(np.argmax(amp), amp.shape)
    freqs = sp_fft.fftfreq(n)
    return float(np.hypot(freqs[iy], freqs[ix]) * pixels_per_degree)


def spectral_mode_along_axis(kernel, pixels_per_degree: float, n_fft: int = 1 << 16) -> float:
    """Peak frequency of a 0-deg kernel on the horizontal-frequency axis.

    Uses the column-sum projection, whose 1-D DFT is the v = 0 slice of the
    2-D spectrum; this is where a 0-deg ODOG kernel peaks.
    """
    profile = np.asarray(kernel, dtype=float).sum(axis=0)
    amp = np.abs(sp_fft.rfft(profile, n=n_fft))
    return float(np.argmax(amp) / n_fft * pixels_per_degree)


@dataclass(frozen=True)
class FilterBank:
    """Scales x orientations ODOG bank with a doubling sigma ladder."""

    geometry: PixelGeometry = PixelGeometry()
    center_sigma_0_deg: float = 0.047
    n_scales: int = 7
    orientation_step_deg: float = 15.0
    _kernels: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_scales < 1:
            raise ValueError("n_scales must be >= 1")
        if not self.center_sigma_0_deg > 0:
            raise ValueError("center_sigma_0_deg must be positive")
        n = 180.0 / self.orientation_step_deg
        if self.orientation_step_deg <= 0 or abs(n - round(n)) > 1e-9:
            raise ValueError("orientation_step_deg must divide 180")

    @property
    def orientations_deg(self) -> np.ndarray:
        return np.arange(round(180.0 / self.orientation_step_deg)) * self.orientation_step_deg

    @property
    def n_orientations(self) -> int:
        return len(self.orientations_deg)

    @property
    def center_sigmas_deg(self) -> np.ndarray:
        return self.center_sigma_0_deg * 2.0 ** np.arange(self.n_scales)

    @property
    def center_sigmas_px(self) -> np.ndarray:
        return self.geometry.to_pixels(self.center_sigmas_deg)

    def spec(self, j: int, i: int) -> OdogFilterSpec:
        return OdogFilterSpec(j, float(self.orientations_deg[i]), float(self.center_sigmas_deg[j]))

    def specs(self):
        return [self.spec(j, i) for j in range(self.n_scales) for i in range(self.n_orientations)]

    def kernel(self, j: int, i: int) -> np.ndarray:
        key = (j, i)
        if key not in self._kernels:
            k = build_filter(self.spec(j, i), self.geometry)
            k.setflags(write=False)
            self._kernels[key] = k
        return self._kernels[key]

    def half_width(self, j: int) -> int:
        return kernel_half_width(float(self.center_sigmas_px[j]))

    @cached_property
    def spectral_modes(self) -> np.ndarray:
        """Per-scale spectral peak in cycles/deg, from the 0-deg kernels."""
        return np.array([
            spectral_mode_along_axis(self.kernel(j, 0), self.geometry.pixels_per_degree)
            for j in range(self.n_scales)])


def respond_all(display, bank: FilterBank) -> np.ndarray:
    """Full response stack, shape (scales, orientations, rows, cols).

    Memory grows as 84 x image size; for pooled predictions on large
    displays use :func:`brightdyn.pooling.pool_all`, which never
    materialises the stack.
    """
    display = validate_image(display)
    out = np.empty((bank.n_scales, bank.n_orientations) + display.shape)
    for j in range(bank.n_scales):
        for i in range(bank.n_orientations):
            out[j, i] = convolve(display, bank.kernel(j, i))
    return out
