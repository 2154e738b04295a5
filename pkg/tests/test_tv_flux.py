import mpmath as mp
import numpy as np
import pytest

from conftest import random_states
from tvsplit.errors import DegenerateWaveFan
from tvsplit.state import GasParams, Primitive, cons_to_prim, exact_flux, prim_to_cons
from tvsplit.tv_flux import star_states, tv_numerical_flux


def mp_star(rho_l, u_l, p_l, rho_r, u_r, p_r, gamma):
    """High-precision star values, written directly from the interface
    pressure-system solver formulas (50-digit arithmetic)."""
    with mp.workdps(50):
        rho_l, u_l, p_l = mp.mpf(rho_l), mp.mpf(u_l), mp.mpf(p_l)
        rho_r, u_r, p_r = mp.mpf(rho_r), mp.mpf(u_r), mp.mpf(p_r)
        g = mp.mpf(gamma)
        cl = mp.sqrt(g * p_l / rho_l)
        cr = mp.sqrt(g * p_r / rho_r)
        Cm = rho_l * (u_l - mp.sqrt(u_l**2 + 4 * cl**2))
        Cp = rho_r * (u_r + mp.sqrt(u_r**2 + 4 * cr**2))
        span = Cp - Cm
        ustar = (Cp * u_r - Cm * u_l) / span - 2 * (p_r - p_l) / span
        pstar = (Cp * p_l - Cm * p_r) / span + Cp * Cm * (u_r - u_l) / (2 * span)
        return float(ustar), float(pstar), float(Cp), float(Cm)


def test_star_equal_rest(gas):
    W = Primitive(rho=1.0, u=0.0, p=1.0)
    s = star_states(W, W, "x", gas)
    assert s.vel_star == pytest.approx(0.0, abs=1e-15)
    assert s.p_star == pytest.approx(1.0, rel=1e-15)
    assert s.c_plus > 0.0 and s.c_minus < 0.0


def test_star_consistency_arbitrary(gas):
    W = Primitive(rho=2.3, u=-0.8, p=3.1)
    s = star_states(W, W, "x", gas)
    assert s.vel_star == pytest.approx(-0.8, rel=1e-14)
    assert s.p_star == pytest.approx(3.1, rel=1e-14)


def test_star_sod_golden(gas):
    ustar, pstar, cp, cm = mp_star(1.0, 0.0, 1.0, 0.125, 0.0, 0.1, 1.4)
    s = star_states(
        Primitive(rho=1.0, u=0.0, p=1.0),
        Primitive(rho=0.125, u=0.0, p=0.1),
        "x",
        gas,
    )
    assert s.vel_star == pytest.approx(ustar, rel=1e-14)
    assert s.p_star == pytest.approx(pstar, rel=1e-14)
    assert s.c_plus == pytest.approx(cp, rel=1e-14)
    assert s.c_minus == pytest.approx(cm, rel=1e-14)


def test_star_y_axis_uses_v(gas):
    Wl = Primitive(rho=1.0, u=9.0, p=1.0, v=0.2)
    Wr = Primitive(rho=0.5, u=-3.0, p=0.7, v=-0.4)
    s = star_states(Wl, Wr, "y", gas)
    ref = mp_star(1.0, 0.2, 1.0, 0.5, -0.4, 0.7, 1.4)
    assert s.vel_star == pytest.approx(ref[0], rel=1e-13)
    assert s.p_star == pytest.approx(ref[1], rel=1e-13)


def test_degenerate_wave_fan(gas):
    bad_l = Primitive(rho=1.0, u=-1.0, p=1.0, c=0.0)
    bad_r = Primitive(rho=1.0, u=1.0, p=1.0, c=0.0)
    with pytest.raises(DegenerateWaveFan):
        star_states(bad_r, bad_l, "x", gas)


def test_uniform_flux_split(gas):
    U = prim_to_cons(Primitive(rho=1.0, u=1.0, p=1.0), gas)
    # advection part (1, 1, 0.5) plus pressure part (0, 1, 3.5)
    F = tv_numerical_flux(U, U, "x", gas)
    assert np.allclose(F, [1.0, 2.0, 4.0], rtol=1e-14)


@pytest.mark.parametrize("ncomp,axis", [(3, "x"), (4, "x"), (4, "y")])
def test_consistency_random(gas, ncomp, axis):
    rng = np.random.default_rng(11)
    U = random_states(rng, 1000, ncomp)
    F = tv_numerical_flux(U, U, axis, gas)
    Fex = exact_flux(U, axis, gas)
    scale = np.maximum(np.abs(Fex), 1.0)
    assert np.max(np.abs(F - Fex) / scale) <= 1e-13


def test_2d_equal_states_example(gas):
    U = prim_to_cons(Primitive(rho=1.0, u=1.0, p=1.0, v=-0.7), gas)
    assert np.allclose(tv_numerical_flux(U, U, "x", gas), exact_flux(U, "x", gas), rtol=1e-13)


def test_stationary_contact_1d(gas):
    Ul = prim_to_cons(Primitive(rho=1.0, u=0.0, p=1.0), gas)
    Ur = prim_to_cons(Primitive(rho=0.125, u=0.0, p=1.0), gas)
    F = tv_numerical_flux(Ul, Ur, "x", gas)
    assert F[0] == 0.0 and F[2] == 0.0
    assert F[1] == pytest.approx(1.0, rel=1e-15)


def test_stationary_contact_2d_both_axes(gas):
    # normal velocity zero; shear and density jump across the interface
    Ul = prim_to_cons(Primitive(rho=2.0, u=0.0, p=0.7, v=1.5), gas)
    Ur = prim_to_cons(Primitive(rho=0.3, u=0.0, p=0.7, v=-2.0), gas)
    F = tv_numerical_flux(Ul, Ur, "x", gas)
    assert np.allclose(F, [0.0, 0.7, 0.0, 0.0], atol=1e-15)
    Ul_y = prim_to_cons(Primitive(rho=2.0, u=1.5, p=0.7, v=0.0), gas)
    Ur_y = prim_to_cons(Primitive(rho=0.3, u=-2.0, p=0.7, v=0.0), gas)
    G = tv_numerical_flux(Ul_y, Ur_y, "y", gas)
    assert np.allclose(G, [0.0, 0.0, 0.7, 0.0], atol=1e-15)


def test_upwind_branch_continuity(gas):
    # at vel_star = 0 with equal states (u = 0) both branches give zero advection
    U = prim_to_cons(Primitive(rho=3.0, u=0.0, p=2.0), gas)
    F = tv_numerical_flux(U, U, "x", gas)
    assert F[0] == 0.0 and F[2] == 0.0


def test_sod_flux_golden(gas):
    """Full numerical flux at the Sod interface against a from-scratch
    evaluation of the split-flux definition."""
    Ul = prim_to_cons(Primitive(rho=1.0, u=0.0, p=1.0), gas)
    Ur = prim_to_cons(Primitive(rho=0.125, u=0.0, p=0.1), gas)
    ustar, pstar, _, _ = mp_star(1.0, 0.0, 1.0, 0.125, 0.0, 0.1, 1.4)
    # ustar > 0 so the advected vector is the left one: (rho, rho u, rho u^2/2)
    adv = ustar * np.array([1.0, 0.0, 0.0])
    pres = np.array([0.0, pstar, 1.4 * ustar * pstar / 0.4])
    F = tv_numerical_flux(Ul, Ur, "x", gas)
    assert np.allclose(F, adv + pres, rtol=1e-13, atol=1e-15)


def test_wave_coefficient_signs_random(gas):
    rng = np.random.default_rng(31)
    from conftest import random_states

    U = random_states(rng, 500, 3)
    W = cons_to_prim(U, gas)
    s = star_states(W, W, "x", gas)
    assert np.all(s.c_plus > 0.0) and np.all(s.c_minus < 0.0)
    assert np.all(s.c_plus - s.c_minus > 0.0)
