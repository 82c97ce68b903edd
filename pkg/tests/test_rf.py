"""Radio layer: quantile accuracy, rate identities, channel statistics."""

import math

import numpy as np
import pytest

from gocoexist import rf

from conftest import q_inv_numeric


def test_q_inv_matches_numeric_integration():
    probs = [1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.25, 0.4, 0.5 - 1e-12]
    for p in probs:
        assert abs(rf.q_inv(p) - q_inv_numeric(p)) < 1e-6


def test_q_inv_center_and_symmetry():
    assert abs(rf.q_inv(0.5)) < 1e-12
    for p in (0.05, 0.2, 0.45):
        assert rf.q_inv(p) == pytest.approx(-rf.q_inv(1.0 - p), abs=1e-10)


def test_q_inv_array_and_monotone():
    p = np.logspace(-7, -0.32, 50)
    x = rf.q_inv(p)
    assert isinstance(x, np.ndarray)
    assert np.all(np.diff(x) < 0)
    assert rf.q_inv(float(p[0])) == pytest.approx(x[0], abs=1e-12)


def test_q_inv_rejects_out_of_domain():
    for bad in (0.0, 1.0, -0.1, 1.5, math.nan):
        with pytest.raises(ValueError):
            rf.q_inv(bad)
    with pytest.raises(ValueError):
        rf.q_inv(np.array([0.1, 0.0]))


def test_fbl_rate_half_per_equals_shannon():
    rng = np.random.default_rng(7)
    sinr = 10.0 ** rng.uniform(-2, 3, size=200)
    fbl = rf.fbl_rate(sinr, 1e9, 512, 0.5)
    sh = rf.shannon_rate(sinr, 1e9)
    np.testing.assert_allclose(fbl, sh, rtol=1e-12)


def test_fbl_rate_non_decreasing_in_per():
    rng = np.random.default_rng(11)
    n_cases = 10000
    sinr = 10.0 ** rng.uniform(-2, 3, size=n_cases)
    n = rng.integers(64, 4096, size=n_cases)
    g1 = 10.0 ** rng.uniform(-7, math.log10(0.5), size=n_cases)
    g2 = np.minimum(g1 * 10.0 ** rng.uniform(0, 2, size=n_cases), 0.5)
    for s, nn, a, b in zip(sinr, n, g1, g2):
        assert rf.fbl_rate(s, 1e9, int(nn), a) <= rf.fbl_rate(s, 1e9, int(nn), b) + 1e-9


def test_fbl_rate_clamped_at_zero():
    # tiny SINR with a strict PER target drives the correction below zero
    assert rf.fbl_rate(1e-6, 1e9, 128, 1e-7) == 0.0


def test_fbl_rate_increasing_in_sinr_and_blocklength():
    assert rf.fbl_rate(1.0, 1e9, 512, 1e-3) < rf.fbl_rate(2.0, 1e9, 512, 1e-3)
    assert rf.fbl_rate(1.0, 1e9, 256, 1e-3) < rf.fbl_rate(1.0, 1e9, 1024, 1e-3)


def test_fbl_rate_validation():
    with pytest.raises(ValueError):
        rf.fbl_rate(1.0, 1e9, 0, 1e-3)
    with pytest.raises(ValueError):
        rf.fbl_rate(-1.0, 1e9, 512, 1e-3)


def test_channel_dispersion_limits():
    assert rf.channel_dispersion(0.0) == 0.0
    assert rf.channel_dispersion(1e9) == pytest.approx(1.0, abs=1e-9)
    # V(sinr ~ 3.162, i.e. 5 dB) is still visibly below 1
    assert rf.channel_dispersion(10 ** 0.5) == pytest.approx(0.9423, abs=1e-4)


def test_noise_power_value():
    # -174 dBm/Hz + 3 dB noise figure over 1 GHz: 10**(-20.1) W/Hz * 1e9
    expected = 10.0 ** ((-174.0 + 3.0 - 30.0) / 10.0) * 1e9
    assert rf.noise_power(-174.0, 1e9, 3.0) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(7.943282347242789e-12, rel=1e-12)
    with pytest.raises(ValueError):
        rf.noise_power(-174.0, 0.0, 3.0)


def test_batch_packet_arithmetic():
    radio = rf.RadioConfig()
    assert radio.batch_bits == 20 * 64 * 64 * 3 * 32 == 7864320
    assert radio.packets_per_batch == 7864320 // (32 * 8) == 30720
    assert rf.tx_delay(radio.batch_bits, 1e9) == pytest.approx(7.86432e-3, rel=1e-15)


def test_tx_delay_edge_cases():
    assert rf.tx_delay(100.0, 0.0) == math.inf
    assert rf.tx_delay(0.0, 5.0) == 0.0
    with pytest.raises(ValueError):
        rf.tx_delay(-1.0, 5.0)
    with pytest.raises(ValueError):
        rf.tx_delay(1.0, -5.0)


def test_radio_config_validation():
    with pytest.raises(ValueError):
        rf.RadioConfig(bandwidth_hz=0.0)
    with pytest.raises(ValueError):
        rf.RadioConfig(do_power_grid_w=(0.1, 0.2))  # must start at zero
    with pytest.raises(ValueError):
        rf.RadioConfig(do_power_grid_w=(0.0, 0.2, 0.1))
    with pytest.raises(ValueError):
        rf.RadioConfig(per_grid=(0.5,))  # open interval (0, 0.5)
    with pytest.raises(ValueError):
        rf.RadioConfig(per_grid=(1e-3, 1e-3))


def test_default_grids():
    radio = rf.RadioConfig()
    grid = np.asarray(radio.do_power_grid_w)
    assert grid.size == 500
    assert grid[0] == 0.0
    assert grid[-1] == pytest.approx(0.2)
    assert np.all(np.diff(grid) > 0)
    pers = np.asarray(radio.per_grid)
    assert pers[0] == 1e-7 and pers[-1] == 2e-2
    assert np.all(np.diff(pers) > 0)


def test_own_gain_mean_matches_pathloss_budget():
    geom = rf.Geometry()
    fading = rf.FadingParams()
    rng = np.random.default_rng(3)
    gains = rf.sample_channels(geom, fading, rng, 40000)
    # per-element mean power is 1/attenuation regardless of the Rician K;
    # matched combining sums it over the array
    d = 20.0  # ap_go sits 20 m above ue_go
    beta = (d / fading.reference_distance_m) ** fading.pathloss_exponent
    expected = geom.antennas / beta
    assert gains["g_gg"].mean() == pytest.approx(expected, rel=0.03)
    assert gains["g_dd"].mean() == pytest.approx(expected, rel=0.03)


def test_cross_gains_are_weaker_than_own_gains():
    geom = rf.Geometry()
    fading = rf.FadingParams()
    gains = rf.sample_channels(geom, fading, np.random.default_rng(4), 20000)
    assert gains["g_gd"].mean() < gains["g_gg"].mean()
    assert gains["g_dg"].mean() < gains["g_dd"].mean()
    for key in ("g_gg", "g_gd", "g_dd", "g_dg"):
        assert np.all(gains[key] >= 0)


def test_line_of_sight_limit_is_deterministic():
    geom = rf.Geometry()
    fading = rf.FadingParams(rician_k=math.inf)
    a = rf.sample_channels(geom, fading, np.random.default_rng(1), 4)
    b = rf.sample_channels(geom, fading, np.random.default_rng(2), 4)
    np.testing.assert_allclose(a["g_gg"], b["g_gg"], rtol=1e-12)
    d = 20.0
    beta = (d / fading.reference_distance_m) ** fading.pathloss_exponent
    np.testing.assert_allclose(a["g_gg"], geom.antennas / beta, rtol=1e-9)


def test_sample_channel_matches_vectorized_draw():
    geom = rf.Geometry()
    fading = rf.FadingParams()
    one = rf.sample_channel(geom, fading, np.random.default_rng(9))
    many = rf.sample_channels(geom, fading, np.random.default_rng(9), 1)
    assert one.g_gg == pytest.approx(float(many["g_gg"][0]), rel=1e-12)
    assert one.g_dg == pytest.approx(float(many["g_dg"][0]), rel=1e-12)


def test_sinr_helpers():
    ch = rf.ChannelRealization(g_gg=2.0, g_gd=0.5, g_dd=3.0, g_dg=0.25)
    assert rf.sinr_go(ch, 0.1, 0.2, 1e-3) == pytest.approx(0.2 / (1e-3 + 0.1))
    assert rf.sinr_do(ch, 0.1, 0.2, 1e-3) == pytest.approx(0.6 / (1e-3 + 0.025))
    with pytest.raises(ValueError):
        rf.ChannelRealization(g_gg=-1.0, g_gd=0.0, g_dd=0.0, g_dg=0.0)
