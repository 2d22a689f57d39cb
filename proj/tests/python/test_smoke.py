import json
import math

import pytest

import twpa


def test_dispersion_point():
    line = twpa.reference_line()
    omega = 2 * math.pi * 5.97 * twpa.GHz
    assert twpa.lambda_factor(omega, line) == pytest.approx(1.04854, abs=1e-4)
    k, stop_band = twpa.wavenumber(omega, line)
    assert not stop_band
    assert k.imag == 0.0
    assert k.real == pytest.approx(7585.4045912354676, rel=1e-12)


def test_stop_band_and_pole():
    line = twpa.reference_line()
    res = twpa.reference_resonator()
    pole = res.loaded_pole()
    _, stop_band = twpa.wavenumber(pole * (1 + 5e-5), line, res)
    assert stop_band
    with pytest.raises(twpa.SingularityError):
        twpa.wavenumber(pole, line, res)
    with pytest.raises(twpa.DomainError):
        twpa.lambda_factor(2 * line.cutoff(), line)


def test_sweep_phase_matching_helps():
    sweep = twpa.gain_sweep(twpa.reference_line(), twpa.reference_resonator(), 5.97 * twpa.GHz, points=121)
    assert len(sweep["frequency_hz"]) == 121
    assert max(sweep["gain_pm_db"]) > max(sweep["gain_nopm_db"]) + 5


def test_integrator_matches_closed_form():
    line = twpa.reference_line()
    ic = line.critical_current
    op = twpa.make_operating_point(line, None, 2 * math.pi * 5.97e9, 0.5 * ic, 2 * math.pi * 5e9, 1e-6 * ic)
    end = twpa.integrate_cme_endpoint(twpa.ModeAmplitudes(op.pump0, op.signal0), op.couplings, line.length(), 4000)
    closed = twpa.gain_analytic(op.signal0, 0.0, op.pump0, op.couplings, line.length())
    assert abs(end.signal) ** 2 / abs(op.signal0) ** 2 == pytest.approx(closed, rel=1e-6)


def test_distribution_and_propagator():
    kappa = 0.7
    probs = twpa.fock_output_distribution(kappa)
    assert sum(probs) == pytest.approx(1.0, abs=1e-9)
    mean = sum(n * p for n, p in enumerate(probs))
    assert mean == pytest.approx(math.cosh(kappa) ** 2 + math.sinh(kappa) ** 2, abs=1e-9)

    state = twpa.TwoModeState.fock(1, 0, 32, 32)
    out = twpa.propagate(state, kappa, 0.0, 1.0, 8, occupancy_guard=1e-20)
    assert out.norm2() == pytest.approx(1.0, abs=1e-9)
    assert twpa.moments(out).n_signal == pytest.approx(mean, abs=1e-8)
    factored = twpa.squeeze_factored(state, kappa)
    assert abs(out[2, 1] - factored[2, 1]) < 1e-10


def test_quantisation_length_drops_out():
    line = twpa.reference_line()
    modes = twpa.ModeSet.make(line, None, 2 * math.pi * 5.97e9, 2 * math.pi * 5e9)
    direct = twpa.classical_pump_couplings(line, modes)
    for lq in (1e-3, 1e-1, 10.0):
        limit = twpa.pump_limit(line, modes, lq)
        assert limit.mixing == pytest.approx(direct.mixing, rel=1e-13)


def test_cli_run(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"sweep": {"n_points": 31}, "output": {"formats": ["csv"]}}))
    code, log = twpa.run("gain", str(config), str(tmp_path / "out"))
    assert code == 0, log
    lines = (tmp_path / "out" / "gain.csv").read_text().splitlines()
    assert lines[0] == "omega_s_hz,gain_nopm_db,gain_pm_db"
    assert len(lines) == 32

    config.write_text(json.dumps({"sweep": {"bogus": 1}}))
    code, log = twpa.run("gain", str(config))
    assert code == 2
    assert "sweep.bogus" in log
