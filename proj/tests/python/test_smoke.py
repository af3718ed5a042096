import math

import pytest

import gprglm


def test_eos_values():
    par = gprglm.MaterialParams()
    par.set_gamma_cv(1.4, 2.5)
    assert gprglm.eos_internal_energy(1.0, 1.0, par) == pytest.approx(2.5)
    assert gprglm.enthalpy(1.0, 1.0, par) == pytest.approx(3.5)
    assert gprglm.temperature(1.0, 1.0, par) == pytest.approx(1.0)


def test_sod_star_region():
    p, u = gprglm.euler_star(1.0, 0.0, 1.0, 0.125, 0.0, 0.1, 1.4)
    assert p == pytest.approx(0.30313, rel=2e-4)
    assert u == pytest.approx(0.92745, rel=2e-4)


def test_stokes_first():
    assert gprglm.stokes_first(0.0, 0.4, 1e-2) == 0.0
    assert gprglm.stokes_first(0.1, 0.4, 1e-2) == pytest.approx(0.073629, rel=1e-3)


def test_tiny_run_conserves_mass():
    out = gprglm.run_case("sod-box", {"mesh.nx": "10", "end_time": "0.01"})
    assert out["steps"] > 0
    assert out["mass_final"] == pytest.approx(out["mass_initial"], rel=1e-12)
    assert len(out["rho"]) == len(out["x"])
    assert min(out["rho"]) > 0.0


def test_runs_are_deterministic():
    a = gprglm.run_case("sod-box", {"mesh.nx": "8", "end_time": "0.005"})
    b = gprglm.run_case("sod-box", {"mesh.nx": "8", "end_time": "0.005"})
    assert a["rho"] == b["rho"]
    assert a["E"] == b["E"]


def test_case_catalog():
    names = gprglm.case_names()
    assert "rp1" in names and "tgv" in names and "rotor" in names
