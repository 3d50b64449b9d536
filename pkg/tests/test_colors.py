"""Color conversions, CIEDE2000 and statistical color transfer."""

import colorsys

import numpy as np
import pytest

from craftgen.colors import (
    ChannelStats,
    LabColor,
    Raster,
    RgbColor,
    channel_stats,
    ciede2000_array,
    delta_e_ciede2000,
    hex_to_rgb,
    lab_to_rgb,
    lab_to_rgb_array,
    reinhard_transfer,
    rgb_to_hex,
    rgb_to_hsv,
    rgb_to_lab,
    rgb_to_lab_array,
)

# Published CIEDE2000 verification pairs: (L1, a1, b1, L2, a2, b2, dE00).
# The expected values carry four decimals, so agreement is asserted to 1e-4.
CIEDE2000_PAIRS = [
    (50.0000, 2.6772, -79.7751, 50.0000, 0.0000, -82.7485, 2.0425),
    (50.0000, 3.1571, -77.2803, 50.0000, 0.0000, -82.7485, 2.8615),
    (50.0000, 2.8361, -74.0200, 50.0000, 0.0000, -82.7485, 3.4412),
    (50.0000, -1.3802, -84.2814, 50.0000, 0.0000, -82.7485, 1.0000),
    (50.0000, -1.1848, -84.8006, 50.0000, 0.0000, -82.7485, 1.0000),
    (50.0000, -0.9009, -85.5211, 50.0000, 0.0000, -82.7485, 1.0000),
    (50.0000, 0.0000, 0.0000, 50.0000, -1.0000, 2.0000, 2.3669),
    (50.0000, -1.0000, 2.0000, 50.0000, 0.0000, 0.0000, 2.3669),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0009, 7.1792),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0010, 7.1792),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0011, 7.2195),
    (50.0000, 2.4900, -0.0010, 50.0000, -2.4900, 0.0012, 7.2195),
    (50.0000, -0.0010, 2.4900, 50.0000, 0.0009, -2.4900, 4.8045),
    (50.0000, -0.0010, 2.4900, 50.0000, 0.0010, -2.4900, 4.8045),
    (50.0000, -0.0010, 2.4900, 50.0000, 0.0011, -2.4900, 4.7461),
    (50.0000, 2.5000, 0.0000, 50.0000, 0.0000, -2.5000, 4.3065),
    (50.0000, 2.5000, 0.0000, 73.0000, 25.0000, -18.0000, 27.1492),
    (50.0000, 2.5000, 0.0000, 61.0000, -5.0000, 29.0000, 22.8977),
    (50.0000, 2.5000, 0.0000, 56.0000, -27.0000, -3.0000, 31.9030),
    (50.0000, 2.5000, 0.0000, 58.0000, 24.0000, 15.0000, 19.4535),
    (50.0000, 2.5000, 0.0000, 50.0000, 3.1736, 0.5854, 1.0000),
    (50.0000, 2.5000, 0.0000, 50.0000, 3.2972, 0.0000, 1.0000),
    (50.0000, 2.5000, 0.0000, 50.0000, 1.8634, 0.5757, 1.0000),
    (50.0000, 2.5000, 0.0000, 50.0000, 3.2592, 0.3350, 1.0000),
    (60.2574, -34.0099, 36.2677, 60.4626, -34.1751, 39.4387, 1.2644),
    (63.0109, -31.0961, -5.8663, 62.8187, -29.7946, -4.0864, 1.2630),
    (61.2901, 3.7196, -5.3901, 61.4292, 2.2480, -4.9620, 1.8731),
    (35.0831, -44.1164, 3.7933, 35.0232, -40.0716, 1.5901, 1.8645),
    (22.7233, 20.0904, -46.6940, 23.0331, 14.9730, -42.5619, 2.0373),
    (36.4612, 47.8580, 18.3852, 36.2715, 50.5065, 21.2231, 1.4146),
    (90.8027, -2.0831, 1.4410, 91.1528, -1.6435, 0.0447, 1.4441),
    (90.9257, -0.5406, -0.9208, 88.6381, -0.8985, -0.7239, 1.5381),
    (6.7747, -0.2908, -2.4247, 5.8714, -0.0985, -2.2286, 0.6377),
    (2.0776, 0.0795, -1.1350, 0.9033, -0.0636, -0.5514, 0.9082),
]


class TestRaster:
    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="empty raster"):
            Raster(np.zeros((0, 4, 3)))
        with pytest.raises(ValueError, match="empty raster"):
            Raster(np.zeros((4, 0, 3)))

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError, match="shape"):
            Raster(np.zeros((4, 4)))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            Raster(np.full((2, 2, 3), 1.5))

    def test_pixels_read_only(self):
        img = Raster.full(3, 2, RgbColor(0.5, 0.5, 0.5))
        with pytest.raises(ValueError):
            img.pixels[0, 0, 0] = 0.0

    def test_dimensions(self):
        img = Raster.full(5, 3, RgbColor(0, 0, 0))
        assert (img.width, img.height) == (5, 3)


class TestLabConversion:
    def test_white_and_black_anchors(self):
        l, a, b = rgb_to_lab(RgbColor(1.0, 1.0, 1.0))
        assert abs(l - 100.0) < 1e-9 and abs(a) < 1e-9 and abs(b) < 1e-9
        l, a, b = rgb_to_lab(RgbColor(0.0, 0.0, 0.0))
        assert abs(l) < 1e-9 and abs(a) < 1e-9 and abs(b) < 1e-9

    @pytest.mark.parametrize(
        "rgb, expected",
        [
            ((1.0, 0.0, 0.0), (53.2408, 80.0925, 67.2032)),
            ((0.0, 1.0, 0.0), (87.7347, -86.1827, 83.1793)),
            ((0.0, 0.0, 1.0), (32.2970, 79.1875, -107.8602)),
            ((0.5, 0.5, 0.5), (53.3890, 0.0, 0.0)),
        ],
    )
    def test_primary_anchors(self, rgb, expected):
        got = rgb_to_lab(RgbColor(*rgb))
        assert np.allclose(got, expected, atol=2e-2)

    def test_round_trip_in_gamut(self):
        rng = np.random.default_rng(11)
        rgb = rng.random((40, 25, 3))
        lab = rgb_to_lab_array(rgb)
        back, clipped = lab_to_rgb_array(lab)
        assert clipped == 0
        assert np.abs(back - rgb).max() < 1e-6

    def test_scalar_round_trip(self):
        c = RgbColor(0.21, 0.68, 0.44)
        back = lab_to_rgb(rgb_to_lab(c))
        assert np.allclose(back, c, atol=1e-9)
        assert all(isinstance(v, float) for v in back)

    def test_out_of_gamut_counts_clips(self):
        lab = np.array([[[50.0, 120.0, -120.0], [50.0, 0.0, 0.0]]])
        back, clipped = lab_to_rgb_array(lab)
        assert clipped == 1
        assert back.min() >= 0.0 and back.max() <= 1.0

    def test_lightness_monotone_in_gray_level(self):
        grays = np.linspace(0.0, 1.0, 32)
        ls = [rgb_to_lab(RgbColor(g, g, g)).l for g in grays]
        assert all(b > a for a, b in zip(ls, ls[1:]))


class TestCiede2000:
    def test_reference_pairs(self):
        arr = np.asarray(CIEDE2000_PAIRS)
        got = ciede2000_array(arr[:, :3], arr[:, 3:6])
        assert np.abs(got - arr[:, 6]).max() < 1e-4

    def test_scalar_wrapper_matches(self):
        a = LabColor(50.0, 2.6772, -79.7751)
        b = LabColor(50.0, 0.0, -82.7485)
        assert abs(delta_e_ciede2000(a, b) - 2.0425) < 1e-4

    def test_identity_and_symmetry(self):
        rng = np.random.default_rng(3)
        lab = np.column_stack(
            [rng.uniform(0, 100, 200), rng.uniform(-80, 80, 200), rng.uniform(-80, 80, 200)]
        )
        other = lab[::-1]
        assert np.all(ciede2000_array(lab, lab) < 1e-12)
        forward = ciede2000_array(lab, other)
        assert np.allclose(forward, ciede2000_array(other, lab), atol=1e-12)
        assert np.all(forward >= 0)


class TestHsv:
    @pytest.mark.parametrize(
        "rgb, expected",
        [
            ((1.0, 0.0, 0.0), (0.0, 1.0, 1.0)),
            ((0.0, 1.0, 1.0), (180.0, 1.0, 1.0)),
            ((0.5, 0.5, 0.5), (0.0, 0.0, 0.5)),
            ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0)),
        ],
    )
    def test_anchors(self, rgb, expected):
        assert np.allclose(rgb_to_hsv(RgbColor(*rgb)), expected, atol=1e-12)

    def test_matches_stdlib_colorsys(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            r, g, b = rng.random(3)
            h, s, v = rgb_to_hsv(RgbColor(r, g, b))
            eh, es, ev = colorsys.rgb_to_hsv(r, g, b)
            assert abs(h - eh * 360.0) % 360.0 < 1e-9
            assert abs(s - es) < 1e-12 and abs(v - ev) < 1e-12


class TestChannelStats:
    def test_matches_plain_loop(self):
        rng = np.random.default_rng(7)
        img = Raster(rng.random((6, 5, 3)))
        stats = channel_stats(img)
        lab = rgb_to_lab_array(img.pixels).reshape(-1, 3)
        for ch in range(3):
            values = [float(v) for v in lab[:, ch]]
            mean = sum(values) / len(values)
            var = sum((v - mean) ** 2 for v in values) / len(values)  # population
            assert abs(stats.mean[ch] - mean) < 1e-9
            assert abs(stats.std[ch] - var**0.5) < 1e-9

    def test_uniform_image_zero_std(self):
        stats = channel_stats(Raster.full(4, 4, RgbColor(0.3, 0.7, 0.2)))
        assert np.allclose(stats.std, 0.0, atol=1e-9)


class TestReinhardTransfer:
    def test_self_transfer_is_identity(self):
        rng = np.random.default_rng(2)
        img = Raster(rng.uniform(0.3, 0.7, (16, 16, 3)))
        out, clipped = reinhard_transfer(img, channel_stats(img), with_clip_count=True)
        assert clipped == 0
        assert np.abs(out.pixels - img.pixels).max() < 1e-6

    def test_imposes_target_statistics(self):
        rng = np.random.default_rng(4)
        src = Raster(rng.uniform(0.35, 0.65, (24, 24, 3)))
        tgt = Raster(rng.uniform(0.35, 0.65, (24, 24, 3)))
        out, clipped = reinhard_transfer(src, channel_stats(tgt), with_clip_count=True)
        assert clipped == 0
        got = channel_stats(out)
        want = channel_stats(tgt)
        assert np.abs(got.mean - want.mean).max() < 1e-3
        assert np.abs(got.std - want.std).max() < 1e-3

    def test_degenerate_source_channel_takes_target_mean(self):
        flat = Raster.full(8, 8, RgbColor(0.42, 0.42, 0.42))  # zero std everywhere
        target = ChannelStats(mean=np.array([60.0, 5.0, -5.0]), std=np.array([3.0, 2.0, 1.0]))
        out = reinhard_transfer(flat, target)
        lab = rgb_to_lab_array(out.pixels).reshape(-1, 3)
        assert np.abs(lab.mean(axis=0) - target.mean).max() < 1e-6
        assert np.abs(lab - lab.mean(axis=0)).max() < 1e-6

    def test_gamut_clips_are_counted(self):
        src = Raster(np.random.default_rng(9).uniform(0.4, 0.6, (12, 12, 3)))
        wild = ChannelStats(mean=np.array([95.0, 90.0, -90.0]), std=np.array([30.0, 60.0, 60.0]))
        _, clipped = reinhard_transfer(src, wild, with_clip_count=True)
        assert clipped > 0


class TestHex:
    def test_round_trip(self):
        assert rgb_to_hex(RgbColor(1.0, 0.0, 0.0)) == "#ff0000"
        assert hex_to_rgb("#ff8000") == RgbColor(1.0, 128 / 255.0, 0.0)
        rng = np.random.default_rng(1)
        for _ in range(50):
            c = RgbColor(*(np.rint(rng.random(3) * 255) / 255.0))
            assert hex_to_rgb(rgb_to_hex(c)) == c

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            hex_to_rgb("#f00")
