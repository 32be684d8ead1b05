import math

import numpy as np
import pytest

import ladder_sim as ls


def test_presets_and_units():
    assert ls.preset_names() == ["three_photon_rb87", "two_photon_rb87"]
    s = ls.preset("three_photon_rb87")
    assert s.size == 4
    assert s.rabi(0) == pytest.approx(ls.mhz(126.5))
    assert ls.to_mhz(ls.nominal_rabi(s)) == pytest.approx(4.0006, rel=1e-4)


def test_rabi_trace_peak():
    s = ls.preset("three_photon_rb87")
    t, pops, fallback = ls.rabi_trace(s, 0.0, ls.us(0.25), 2001)
    assert pops.shape == (2001, 4)
    assert not fallback
    i = int(np.argmax(pops[:, 3]))
    assert pops[i, 3] == pytest.approx(0.9957, abs=0.002)
    assert t[i] == pytest.approx(ls.us(0.125), rel=0.01)


def test_effective_and_validity():
    s = ls.preset("three_photon_rb87")
    eff = ls.effective_model(s)
    assert eff["decay_total_per_s"] == pytest.approx(6.56e4, rel=0.02)
    v = ls.validity_report(s)
    assert v["elimination_valid"]
    assert ls.to_mhz(ls.light_shift(ls.mhz(160), ls.mhz(50), ls.mhz(1000))) == pytest.approx(-5.775)


def test_spatial_average():
    s = ls.with_spot_radius(ls.preset("three_photon_rb87"), ls.um(2))
    a1 = ls.averaged_a1_numeric(s, ls.um(1))
    assert 0.98 < a1 <= 1.0
    assert ls.averaged_a1_analytic(s, ls.um(1)) == pytest.approx(0.9946, abs=0.001)
    with pytest.raises(ls.ValidityError):
        ls.averaged_a1_analytic(ls.with_spot_radius(ls.preset("three_photon_rb87"), ls.um(1)), ls.um(1))


def test_spectrum_and_errors():
    s = ls.preset("two_photon_rb87")
    grid = [ls.mhz(-30 + 0.2 * i) for i in range(301)]
    _, pops, center, _ = ls.spectrum(s, 1, grid, ls.us(0.125))
    assert len(pops) == 301
    assert ls.to_mhz(center) == pytest.approx(-5.775, rel=0.1)
    with pytest.raises(ls.NumericalError):
        ls.spectrum(s, 1, [ls.mhz(-4 + 0.2 * i) for i in range(21)], ls.us(0.125))
    with pytest.raises(ls.ConfigError):
        ls.preset("cesium")


def test_scheme_round_trip():
    s = ls.with_spot_radius(ls.preset("three_photon_rb87"), ls.um(2))
    assert ls.scheme_from_dict(ls.scheme_to_dict(s)) == s


def test_run_config(tmp_path):
    files = ls.run_config({"experiment": "rabi", "scheme": "three_photon_rb87",
                           "rabi": {"t_end_us": 0.3, "points": 31}}, tmp_path)
    names = sorted(p.rsplit("/", 1)[-1] for p in files)
    assert names == ["rabi.csv", "rabi_summary.json", "run_manifest.json"]
