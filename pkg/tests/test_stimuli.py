import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brightdyn.pgm import read_pgm, write_pgm
from brightdyn.stimuli import (GratingSpec, PixelGeometry, WhiteSpec, compose_display,
                               grating_phase_for_center, make_square_grating,
                               make_white_stimulus, validate_image, white_patch_bounds)


def test_thin_grating_columns():
    img = make_square_grating(GratingSpec(31, 31, 12, "inducer-first"), 93, 4)
    assert np.all(img[:, 0:31] == 12)
    assert np.all(img[:, 31:62] == 31)
    assert np.all(img[:, 62:93] == 12)


def test_wide_grating_clipped_last_stripe():
    img = make_square_grating(GratingSpec(340, 72, 102), 1024, 2)
    # exhaustive column scan for runs of equal luminance
    row = img[0]
    runs = []
    start = 0
    for c in range(1, len(row) + 1):
        if c == len(row) or row[c] != row[start]:
            runs.append(c - start)
            start = c
    assert runs == [340, 340, 340, 4]
    assert len(runs) == int(np.ceil(1024 / 340))


def test_degenerate_equal_luminance_is_uniform():
    img = make_square_grating(GratingSpec(31, 50, 50), 128, 16)
    assert np.all(img == 50)


@pytest.mark.parametrize("kwargs", [
    dict(stripe_width=0, target_luminance=31, inducer_luminance=12),
    dict(stripe_width=31, target_luminance=0, inducer_luminance=12),
    dict(stripe_width=31, target_luminance=31, inducer_luminance=-1),
])
def test_grating_rejects_bad_spec(kwargs):
    with pytest.raises(ValueError):
        GratingSpec(**kwargs)


def test_grating_rejects_too_narrow_image():
    with pytest.raises(ValueError):
        make_square_grating(GratingSpec(340, 31, 12), 100, 10)


@given(sw=st.integers(1, 60), width=st.integers(60, 300),
       t=st.sampled_from([31.0, 72.0]), i=st.sampled_from([12.0, 102.0]))
@settings(max_examples=60, deadline=None)
def test_grating_period_and_mirror(sw, width, t, i):
    a = make_square_grating(GratingSpec(sw, t, i, "target-first"), width, 3)
    assert set(np.unique(a)) <= {t, i}
    p = 2 * sw
    if width > p:
        np.testing.assert_array_equal(a[:, :-p], a[:, p:])
    b = make_square_grating(GratingSpec(sw, i, t, "inducer-first"), width, 3)
    np.testing.assert_array_equal(a, b)


def test_center_phase_puts_target_under_centre():
    for sw in (31, 340):
        phase = grating_phase_for_center(sw, 1024)
        img = make_square_grating(GratingSpec(sw, 31, 12, phase), 1024, 1)
        assert img[0, 512] == 31


def test_white_on_black():
    spec = WhiteSpec(placement="on-black")
    img = make_white_stimulus(spec, 1024, 512)
    r0, r1, c0, c1 = white_patch_bounds(spec, 1024, 512)
    assert img[(r0 + r1) // 2, (c0 + c1) // 2] == 57
    assert np.all(img[:r0, c0:c1] == 12)
    assert np.all(img[r1:, c0:c1] == 12)
    # flankers
    assert np.all(img[r0:r1, c0 - 1] == 102) and np.all(img[r0:r1, c1] == 102)
    assert set(np.unique(img)) == {12.0, 57.0, 102.0}


def test_white_on_white():
    spec = WhiteSpec(placement="on-white")
    img = make_white_stimulus(spec, 1024, 512)
    r0, r1, c0, c1 = white_patch_bounds(spec, 1024, 512)
    assert np.all(img[:r0, c0:c1] == 102)
    assert img[(r0 + r1) // 2, c0 - 1] == 12


def test_white_patch_spans_one_stripe():
    spec = WhiteSpec()
    r0, r1, c0, c1 = white_patch_bounds(spec, 1024, 512)
    assert (r1 - r0, c1 - c0) == (62, 31)
    assert c0 % spec.stripe_width == 0


def test_white_rejects_overrun_and_bad_luminances():
    with pytest.raises(ValueError):
        WhiteSpec(stripe_width=31, test_width=40)
    with pytest.raises(ValueError):
        WhiteSpec(black_luminance=12, white_luminance=102, test_luminance=110)
    with pytest.raises(ValueError):
        make_white_stimulus(WhiteSpec(test_height=600), 1024, 512)


def test_compose_display():
    stim = make_square_grating(GratingSpec(31, 31, 12), 1024, 512)
    disp = compose_display(stim, 1024, black_luminance=3.0)
    assert disp.shape == (1024, 1024)
    assert np.all(disp[:512] == 3.0)
    np.testing.assert_array_equal(disp[512], stim[0])
    np.testing.assert_array_equal(disp[512:], stim)


def test_compose_uniform():
    disp = compose_display(np.full((32, 64), 7.0), 64, black_luminance=7.0)
    assert np.all(disp == 7.0)


def test_compose_dimension_mismatch():
    with pytest.raises(ValueError):
        compose_display(np.ones((100, 1024)), 1024, 0.0)


def test_validate_image():
    with pytest.raises(ValueError):
        validate_image(np.array([[1.0, -1.0]]))
    with pytest.raises(ValueError):
        validate_image(np.array([[np.nan]]))
    with pytest.raises(ValueError):
        validate_image(np.ones(5))


def test_geometry_matches_visual_angles():
    g = PixelGeometry()
    assert float(g.to_degrees(31)) == pytest.approx(1.0, abs=0.05)
    assert float(g.to_degrees(340)) == pytest.approx(10.6, abs=0.05)
    with pytest.raises(ValueError):
        PixelGeometry(0)


def test_pgm_roundtrip(tmp_path):
    img = make_white_stimulus(WhiteSpec(), 1024, 512)
    path = tmp_path / "white.pgm"
    write_pgm(path, img)
    data = path.read_bytes()
    assert data.startswith(b"P5\n# cd_per_level=")
    np.testing.assert_allclose(read_pgm(path), img, atol=1e-9)


def test_pgm_without_scale_comment(tmp_path):
    path = tmp_path / "plain.pgm"
    raster = np.array([[0, 1000], [65535, 7]], dtype=">u2")
    path.write_bytes(b"P5 2 2 65535\n" + raster.tobytes())
    np.testing.assert_array_equal(read_pgm(path), raster.astype(float))


def test_pgm_rejects_out_of_range(tmp_path):
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "x.pgm", np.full((2, 2), 1e4))
