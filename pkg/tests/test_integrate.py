import numpy as np
import pytest

from tvsplit.config import SchemeConfig
from tvsplit.integrate import TimeControl, compute_dt, integrate_to, ssprk3_step
from tvsplit.operator import (
    BoundaryCondition,
    BoundarySet,
    Field,
    Grid,
    fill_ghosts,
    make_field,
    rhs_reference,
)
from tvsplit.problems import make_problem
from tvsplit.reconstruction import NG
from tvsplit.state import GasParams, Primitive

PERIODIC = BoundarySet(BoundaryCondition("periodic"), BoundaryCondition("periodic"))


def _rest_field(nx=100):
    grid = Grid(nx=nx, xmin=0.0, xmax=nx * 0.01)
    gas = GasParams(1.4)
    f = make_field(
        grid,
        lambda x: Primitive(rho=np.ones_like(x), u=np.zeros_like(x), p=np.ones_like(x)),
        gas,
    )
    return f, gas


def test_compute_dt_rest_state():
    f, gas = _rest_field()
    ctrl = TimeControl(t_final=10.0, cfl=0.45)
    assert compute_dt(f, ctrl, gas) == pytest.approx(0.45 * 0.01 / np.sqrt(1.4), rel=1e-14)


def test_compute_dt_clips_to_final_time():
    f, gas = _rest_field()
    f.time = 0.95
    ctrl = TimeControl(t_final=0.95 + 1e-5, cfl=0.45)
    assert compute_dt(f, ctrl, gas) == pytest.approx(1e-5, rel=1e-10)


def test_accuracy_mode_power_law():
    dts = []
    for nx in (100, 200):
        grid = Grid(nx=nx, xmin=0.0, xmax=1.0)
        gas = GasParams(1.4)
        f = make_field(
            grid,
            lambda x: Primitive(rho=np.ones_like(x), u=np.zeros_like(x), p=np.ones_like(x)),
            gas,
        )
        dts.append(compute_dt(f, TimeControl(t_final=10.0, accuracy_mode=True), gas))
    assert dts[0] / dts[1] == pytest.approx(2.0 ** (5.0 / 3.0), rel=1e-12)


def test_ssprk3_zero_rhs_identity():
    f, _ = _rest_field(10)
    before = f.U.copy()
    ssprk3_step(f, lambda fld: np.zeros_like(fld.interior), 0.1)
    np.testing.assert_array_equal(f.U[:, NG:-NG], before[:, NG:-NG])
    assert f.time == pytest.approx(0.1)


def test_ssprk3_amplification_factor():
    # u' = lam*u componentwise: after one step u1/u0 = 1 + z + z^2/2 + z^3/6
    lam = -0.7
    dt = 0.3
    z = lam * dt
    f, _ = _rest_field(4)
    u0 = f.interior.copy()
    ssprk3_step(f, lambda fld: lam * fld.interior, dt)
    growth = f.interior / u0
    expected = 1.0 + z + z * z / 2.0 + z**3 / 6.0
    assert np.allclose(growth[np.isfinite(growth)], expected, rtol=1e-14)


def test_ssprk3_conserves_totals():
    gas = GasParams(1.4)
    prob = make_problem("ex1")
    grid = Grid(nx=64, xmin=-1.0, xmax=1.0)
    f = make_field(grid, prob.ic, gas)
    cfg = SchemeConfig(order=5, flux="tv")

    def L(fld):
        fill_ghosts(fld, prob.bcs, gas)
        return rhs_reference(fld, cfg, gas)

    before = f.interior.sum(axis=1) * grid.dx
    ssprk3_step(f, L, 5e-4)
    after = f.interior.sum(axis=1) * grid.dx
    assert np.all(np.abs(after - before) <= 1e-12 * np.maximum(np.abs(before), 1.0))


def test_integrate_zero_span():
    f, gas = _rest_field(10)
    log = integrate_to(f, TimeControl(t_final=0.0), lambda fld: np.zeros_like(fld.interior), gas)
    assert log.steps == 0 and f.time == 0.0


def test_integrate_uniform_state_unchanged():
    gas = GasParams(1.4)
    grid = Grid(nx=32, xmin=0.0, xmax=1.0)
    f = make_field(
        grid,
        lambda x: Primitive(rho=np.full_like(x, 2.0), u=np.full_like(x, 0.3), p=np.full_like(x, 1.5)),
        gas,
    )
    before = f.interior.copy()
    cfg = SchemeConfig(order=3, flux="tv")

    def L(fld):
        fill_ghosts(fld, PERIODIC, gas)
        return rhs_reference(fld, cfg, gas)

    log = integrate_to(f, TimeControl(t_final=0.05), L, gas)
    assert log.steps > 0
    assert f.time == pytest.approx(0.05, abs=0.0)
    np.testing.assert_allclose(f.interior, before, rtol=1e-12, atol=1e-13)


def test_integrate_lands_on_snapshots_and_final():
    f, gas = _rest_field(16)
    seen = []
    log = integrate_to(
        f,
        TimeControl(t_final=0.02),
        lambda fld: np.zeros_like(fld.interior),
        gas,
        snapshot_times=[0.013, 0.007],
        on_snapshot=lambda fld: seen.append(fld.time),
    )
    assert seen == [0.007, 0.013]
    assert f.time == 0.02
    assert log.steps >= 3
