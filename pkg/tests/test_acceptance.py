"""End-to-end acceptance runs.

Each scenario below is driven by the same TOML configs shipped in
demos/suite, so a green run here certifies the CLI path as well.
"""

from pathlib import Path

import pytest

from pershock.harness import ExperimentConfig, run_scenario

SUITE = Path(__file__).resolve().parent.parent / "demos" / "suite"


def _run(name, tmp_path_factory):
    cfg = ExperimentConfig.from_toml(
        SUITE / name, out_dir=tmp_path_factory.mktemp(Path(name).stem))
    return run_scenario(cfg)


def _by_name(verdict):
    return {c["name"]: c for c in verdict["checks"]}


@pytest.fixture(scope="module")
def inviscid_shift(tmp_path_factory):
    return _run("inviscid_shift.toml", tmp_path_factory)


@pytest.fixture(scope="module")
def inviscid_wave(tmp_path_factory):
    return _run("inviscid_wave_decay.toml", tmp_path_factory)


@pytest.fixture(scope="module")
def profile_check(tmp_path_factory):
    return _run("profile_check.toml", tmp_path_factory)


@pytest.fixture(scope="module")
def viscous_wave(tmp_path_factory):
    return _run("viscous_wave.toml", tmp_path_factory)


@pytest.fixture(scope="module")
def viscous_coupled(tmp_path_factory):
    return _run("viscous_coupled.toml", tmp_path_factory)


@pytest.fixture(scope="module")
def ansatz_superposition(tmp_path_factory):
    return _run("ansatz_superposition.toml", tmp_path_factory)


def test_final_shift(inviscid_shift):
    c = _by_name(inviscid_shift)["final_shift"]
    assert abs(c["measured"] - c["expected"]) <= c["tolerance"]
    assert inviscid_shift["runtime_seconds"] <= 120.0


def test_shift_decay_rate(inviscid_shift):
    c = _by_name(inviscid_shift)["shift_decay_slope"]
    assert c["measured"] <= -0.35


def test_godunov_conservation(inviscid_shift):
    c = _by_name(inviscid_shift)["conservation_per_step"]
    assert c["measured"] <= 1e-10


def test_boundary_wave_decay_rate(inviscid_wave):
    c = _by_name(inviscid_wave)["decay_slope"]
    assert -1.15 <= c["measured"] <= -0.85
    assert inviscid_wave["runtime_seconds"] <= 60.0


def test_flux_average_conservation(inviscid_wave):
    checks = _by_name(inviscid_wave)
    for x in (5, 20, 80):
        assert checks[f"flux_average_x{x}"]["measured"] <= 1e-5


def test_wave_backend_cross_check(inviscid_wave):
    assert _by_name(inviscid_wave)["cross_check_l1"]["passed"]


def test_viscous_profile(profile_check):
    checks = _by_name(profile_check)
    assert checks["profile_sup_error"]["measured"] <= 1e-8
    for side in ("left", "right"):
        c = checks[f"tail_rate_{side}"]
        assert abs(c["measured"] - c["expected"]) <= 0.02 * abs(c["expected"])
    assert profile_check["runtime_seconds"] <= 5.0


def test_viscous_periodic_wave(viscous_wave):
    checks = _by_name(viscous_wave)
    assert checks["march_l2_difference"]["measured"] <= 5e-3
    c = checks["mode1_decay_rate"]
    assert abs(c["measured"] - c["expected"]) <= 0.10 * abs(c["expected"])
    assert checks["contraction_ratio"]["measured"] < 0.5
    assert viscous_wave["runtime_seconds"] <= 180.0


def test_quadratic_farfield_correction(viscous_wave):
    c = _by_name(viscous_wave)["farfield_quadratic_ratio"]
    assert 3.0 <= c["measured"] <= 5.0


def test_viscous_conservation(viscous_wave):
    assert _by_name(viscous_wave)["conservation_per_unit_time"]["measured"] <= 1e-8


def test_coupled_run(viscous_coupled):
    checks = _by_name(viscous_coupled)
    assert checks["superposition_gap_ratio"]["measured"] < 0.1
    assert checks["shift_settled"]["measured"] < 0.02
    assert checks["mass_defect"]["passed"]
    assert viscous_coupled["runtime_seconds"] <= 600.0


def test_ansatz_vs_superposition_decay(ansatz_superposition):
    c = _by_name(ansatz_superposition)["two_ansatz_decay_r2"]
    assert c["measured"] >= 0.9
    assert ansatz_superposition["two_ansatz_slope"] < 0.0


def test_all_verdicts_pass(inviscid_shift, inviscid_wave, profile_check,
                           viscous_wave, viscous_coupled,
                           ansatz_superposition):
    for v in (inviscid_shift, inviscid_wave, profile_check, viscous_wave,
              viscous_coupled, ansatz_superposition):
        assert v["passed"], v
