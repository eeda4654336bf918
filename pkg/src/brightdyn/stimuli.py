"""Synthetic displays: square-wave gratings, White's stimulus and the
half-black composite display.

Images are plain 2-D float arrays indexed ``[row, column]`` holding luminance
in cd/m^2. Stripes are vertical, so 0 deg is the stripe axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Phase = Literal["target-first", "inducer-first"]
Placement = Literal["on-black", "on-white"]


@dataclass(frozen=True)
class PixelGeometry:
    pixels_per_degree: float = 32.0

    def __post_init__(self):
        if not self.pixels_per_degree > 0:
            raise ValueError("pixels_per_degree must be positive")

    def to_pixels(self, degrees):
        return np.asarray(degrees, dtype=float) * self.pixels_per_degree

    def to_degrees(self, pixels):
        return np.asarray(pixels, dtype=float) / self.pixels_per_degree


@dataclass(frozen=True)
class GratingSpec:
    stripe_width: int
    target_luminance: float
    inducer_luminance: float
    phase: Phase = "target-first"

    def __post_init__(self):
        if self.stripe_width < 1:
            raise ValueError(f"stripe_width must be >= 1, got {self.stripe_width}")
        if not (self.target_luminance > 0 and self.inducer_luminance > 0):
            raise ValueError("grating luminances must be positive")
        if self.phase not in ("target-first", "inducer-first"):
            raise ValueError(f"unknown phase {self.phase!r}")


@dataclass(frozen=True)
class WhiteSpec:
    stripe_width: int = 31
    test_width: int = 31
    test_height: int = 62
    black_luminance: float = 12.0
    white_luminance: float = 102.0
    test_luminance: float = 57.0
    placement: Placement = "on-black"

    def __post_init__(self):
        if min(self.stripe_width, self.test_width, self.test_height) < 1:
            raise ValueError("stripe and test patch sizes must be >= 1")
        if not (0 <= self.black_luminance < self.test_luminance < self.white_luminance):
            raise ValueError("need black < test < white luminance")
        if self.test_width > self.stripe_width:
            raise ValueError("test patch is wider than its carrier stripe")
        if self.placement not in ("on-black", "on-white"):
            raise ValueError(f"unknown placement {self.placement!r}")


def validate_image(image) -> np.ndarray:
    """Return ``image`` as a float array, raising if it is not a valid
    luminance image (2-D, finite, non-negative)."""
    arr = np.asarray(image, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"luminance image must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("luminance image contains non-finite values")
    if np.any(arr < 0):
        raise ValueError("luminance image contains negative values")
    return arr


def _stripe_index(width: int, stripe_width: int) -> np.ndarray:
    return np.arange(width) // stripe_width


def make_square_grating(spec: GratingSpec, width: int, height: int) -> np.ndarray:
    """Vertical square-wave grating of alternating target/inducer stripes.

    Each stripe is exactly ``spec.stripe_width`` columns wide; the last one
    is clipped at the right edge. ``spec.phase`` picks the luminance of the
    stripe starting at column 0.
    """
    if width < spec.stripe_width or height < 1:
        raise ValueError(
            f"{width}x{height} image cannot hold a {spec.stripe_width} px stripe")
    first, second = spec.target_luminance, spec.inducer_luminance
    if spec.phase == "inducer-first":
        first, second = second, first
    row = np.where(_stripe_index(width, spec.stripe_width) % 2 == 0, first, second)
    return np.tile(row.astype(float), (height, 1))


def grating_phase_for_center(stripe_width: int, width: int) -> Phase:
    """Phase that puts the target stripe under the centre column."""
    return "target-first" if (width // 2) // stripe_width % 2 == 0 else "inducer-first"


def white_patch_bounds(spec: WhiteSpec, width: int, height: int):
    """(row0, row1, col0, col1) of the test patch, half-open."""
    k = (width // 2) // spec.stripe_width
    stripe_lo = k * spec.stripe_width
    stripe_hi = min(stripe_lo + spec.stripe_width, width)
    col0 = stripe_lo + (spec.stripe_width - spec.test_width) // 2
    col1 = col0 + spec.test_width
    if col1 > stripe_hi:
        raise ValueError("test patch overruns its carrier stripe")
    if spec.test_height > height:
        raise ValueError("test patch is taller than the stimulus")
    row0 = (height - spec.test_height) // 2
    return row0, row0 + spec.test_height, col0, col1


def make_white_stimulus(spec: WhiteSpec, width: int, height: int) -> np.ndarray:
    """White's stimulus: a black/white square-wave carrier with one gray
    test patch on the stripe nearest the horizontal centre.

    The carrier phase is chosen so that the hosting stripe is black for
    ``placement="on-black"`` (flanked by white) and white otherwise.
    """
    row0, row1, col0, col1 = white_patch_bounds(spec, width, height)
    host = spec.black_luminance if spec.placement == "on-black" else spec.white_luminance
    other = spec.white_luminance if spec.placement == "on-black" else spec.black_luminance
    k_center = (width // 2) // spec.stripe_width
    same = _stripe_index(width, spec.stripe_width) % 2 == k_center % 2
    image = np.tile(np.where(same, host, other).astype(float), (height, 1))
    image[row0:row1, col0:col1] = spec.test_luminance
    return image


def compose_display(stimulus, display_side: int = 1024, black_luminance: float = 0.0) -> np.ndarray:
    """Stack a uniform black half above ``stimulus`` to form a square display."""
    stimulus = validate_image(stimulus)
    if display_side % 2:
        raise ValueError("display_side must be even")
    half = display_side // 2
    if stimulus.shape != (half, display_side):
        raise ValueError(
            f"stimulus must be {half}x{display_side} (rows x cols), got {stimulus.shape}")
    if black_luminance < 0:
        raise ValueError("black_luminance must be >= 0")
    display = np.empty((display_side, display_side))
    display[:half] = black_luminance
    display[half:] = stimulus
    return display
