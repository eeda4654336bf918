import math

import numpy as np
import pytest

from brightdyn.filterbank import (FilterBank, OdogFilterSpec, build_filter, convolve,
                                  respond_all, spectral_mode, spectral_mode_along_axis)
from brightdyn.stimuli import GratingSpec, PixelGeometry, make_square_grating


def brute_force_convolve(image, kernel):
    """Zero-padded 'same' convolution by explicit loops."""
    H, W = image.shape
    kh, kw = kernel.shape
    ch, cw = kh // 2, kw // 2
    flipped = kernel[::-1, ::-1]
    padded = np.zeros((H + 2 * ch, W + 2 * cw))
    padded[ch:ch + H, cw:cw + W] = image
    out = np.empty_like(image, dtype=float)
    for r in range(H):
        for c in range(W):
            out[r, c] = np.sum(padded[r:r + kh, c:c + kw] * flipped)
    return out


def analytic_peak_cpd(center_sigma_deg):
    # |F(u)| ~ exp(-a u^2) - exp(-4 a u^2), a = 2 pi^2 sigma^2
    return math.sqrt(math.log(2) / 3) / (math.pi * center_sigma_deg)


@pytest.fixture(scope="module")
def small_bank():
    return FilterBank(PixelGeometry(32), center_sigma_0_deg=0.047, n_scales=4)


def test_spec_surround_ratios():
    s = OdogFilterSpec(0, 0.0, 0.5)
    assert s.surround_sigma_along_deg == 0.5
    assert s.surround_sigma_across_deg == 1.0
    with pytest.raises(ValueError):
        OdogFilterSpec(0, 0.0, 0.0)


def test_kernel_geometry_and_balance(small_bank):
    for j in range(small_bank.n_scales):
        sigma_px = small_bank.center_sigmas_px[j]
        for i in range(small_bank.n_orientations):
            k = small_bank.kernel(j, i)
            side = 2 * math.ceil(3 * 2 * sigma_px) + 1
            assert k.shape == (side, side)
            assert abs(k.sum()) <= 1e-12
            assert abs(k.sum()) / np.abs(k).sum() < 1e-6
            np.testing.assert_allclose(k, k[::-1, ::-1], atol=1e-15)


def test_rotation_by_90_is_transpose(small_bank):
    for j in range(small_bank.n_scales):
        np.testing.assert_allclose(small_bank.kernel(j, 6), small_bank.kernel(j, 0).T,
                                   rtol=0, atol=1e-14)


@pytest.mark.parametrize("sigma_deg", [0.047, 0.094, 0.188, 0.376])
def test_spectral_peak_matches_closed_form(sigma_deg):
    g = PixelGeometry(32)
    k = build_filter(OdogFilterSpec(0, 0.0, sigma_deg), g)
    n = 4096
    bin_width = g.pixels_per_degree / n
    expected = analytic_peak_cpd(sigma_deg)
    full = spectral_mode(k, g.pixels_per_degree, n_fft=n)
    assert abs(full - expected) <= 1.5 * bin_width
    # the fast projection route finds the same peak on a finer grid
    fast = spectral_mode_along_axis(k, g.pixels_per_degree)
    assert abs(fast - expected) <= 1.5 * bin_width


def test_default_bank_modes_decrease_by_octaves():
    bank = FilterBank()
    modes = bank.spectral_modes
    assert np.all(np.diff(modes) < 0)
    np.testing.assert_allclose(modes[:-1] / modes[1:], 2.0, rtol=0.01)
    np.testing.assert_allclose(modes, [analytic_peak_cpd(s) for s in bank.center_sigmas_deg],
                               rtol=0.01)


def test_build_filter_rejects_bad_sigma():
    with pytest.raises(ValueError):
        build_filter(OdogFilterSpec(0, 0.0, -1.0))


def test_convolve_identity():
    rng = np.random.default_rng(0)
    img = rng.random((20, 30))
    np.testing.assert_allclose(convolve(img, np.ones((1, 1))), img, atol=1e-12)


def test_convolve_matches_brute_force():
    rng = np.random.default_rng(1)
    img = rng.random((64, 64))
    k = rng.standard_normal((9, 9))
    ref = brute_force_convolve(img, k)
    for method in ("fft", "direct"):
        out = convolve(img, k, method=method)
        assert np.max(np.abs(out - ref)) / np.max(np.abs(ref)) < 1e-9


def test_convolve_uniform_interior_is_zero(small_bank):
    img = np.full((200, 200), 40.0)
    k = small_bank.kernel(2, 3)
    h = k.shape[0] // 2
    out = convolve(img, k)
    assert np.max(np.abs(out[h:-h, h:-h])) < 1e-9 * 40


def test_convolve_rejects_bad_shapes():
    with pytest.raises(ValueError):
        convolve(np.ones((10, 10)), np.ones((21, 21)))
    with pytest.raises(ValueError):
        convolve(np.ones((10, 10)), np.ones((4, 4)))
    with pytest.raises(ValueError):
        convolve(np.ones(10), np.ones((3, 3)))


def test_kernel_larger_than_image_reaches_every_pixel():
    rng = np.random.default_rng(2)
    img = rng.random((12, 12))
    k = rng.standard_normal((15, 15))
    np.testing.assert_allclose(convolve(img, k), brute_force_convolve(img, k), atol=1e-10)


@pytest.fixture(scope="module")
def grating_responses(small_bank):
    img = make_square_grating(GratingSpec(24, 60, 20), 256, 256)
    return img, respond_all(img, small_bank)


def test_vertical_grating_orientation_tuning(small_bank, grating_responses):
    _, resp = grating_responses
    m = 80  # skip zero-padding edge effects
    pooled = np.abs(resp[:, :, m:-m, m:-m]).mean(axis=(2, 3))
    for j in range(small_bank.n_scales):
        assert np.argmax(pooled[j]) == 0
        assert np.argmin(pooled[j]) == 6


def test_uniform_display_zero_and_linearity(small_bank, grating_responses):
    img, resp = grating_responses
    uniform = respond_all(np.full((256, 256), 25.0), small_bank)
    for j in range(small_bank.n_scales):
        h = small_bank.half_width(j)
        assert np.max(np.abs(uniform[j, :, h:-h, h:-h])) < 1e-6 * 25
    rng = np.random.default_rng(3)
    other = rng.random(img.shape) * 50
    combined = respond_all(2.0 * img + 0.5 * other, small_bank)
    expected = 2.0 * resp + 0.5 * respond_all(other, small_bank)
    assert np.max(np.abs(combined - expected)) <= 1e-9 * np.max(np.abs(expected))


def test_shift_equivariance(small_bank):
    rng = np.random.default_rng(4)
    img = np.zeros((160, 160))
    img[40:120, 40:120] = rng.random((80, 80))
    shifted = np.roll(img, (5, -7), axis=(0, 1))
    a = respond_all(img, small_bank)
    b = respond_all(shifted, small_bank)
    # b[y + 5, x - 7] == a[y, x] wherever both are inside the image
    np.testing.assert_allclose(b[..., 5:, :-7], a[..., :-5, 7:], atol=1e-9)


def test_rotation_permutes_orientations(small_bank):
    img = make_square_grating(GratingSpec(8, 60, 20), 160, 160)
    img[50:110, 60:90] = 90.0
    rotated = np.rot90(img)
    m = 30
    pa = np.abs(respond_all(img, small_bank)[:, :, m:-m, m:-m]).mean(axis=(2, 3))
    pb = np.abs(respond_all(rotated, small_bank)[:, :, m:-m, m:-m]).mean(axis=(2, 3))
    # orientation 0 and 90 swap exactly; obliques map within discretisation error
    np.testing.assert_allclose(pb, np.roll(pa, 6, axis=1), rtol=0.05)
