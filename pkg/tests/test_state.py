import numpy as np
import pytest
from hypothesis import given

from conftest import p_st, random_states, rho_st, vel_st
from tvsplit.errors import AxisInvalid, NonPositiveDensity, NonPositivePressure
from tvsplit.state import GasParams, Primitive, cons_to_prim, exact_flux, prim_to_cons


def test_rest_state(gas):
    W = cons_to_prim(np.array([1.0, 0.0, 2.5]), gas)
    assert W.rho == 1.0 and W.u == 0.0
    assert W.p == pytest.approx(1.0, abs=1e-15)
    assert W.c == pytest.approx(np.sqrt(1.4), rel=1e-15)
    assert W.c == pytest.approx(1.1832, abs=1e-4)


def test_moving_state(gas):
    # E = p/(gamma-1) + rho u^2/2 = 2.5 + 0.5 = 3 at p = 1
    W = cons_to_prim(np.array([1.0, 1.0, 3.0]), gas)
    assert W.u == pytest.approx(1.0)
    assert W.p == pytest.approx(1.0, abs=1e-14)


def test_prim_to_cons_energy(gas):
    assert prim_to_cons(Primitive(rho=1.0, u=0.0, p=1.0), gas)[2] == pytest.approx(2.5)
    assert prim_to_cons(Primitive(rho=1.0, u=1.0, p=1.0), gas)[2] == pytest.approx(3.0)
    U = prim_to_cons(Primitive(rho=2.0, u=0.0, p=1.0, v=0.0), GasParams(gamma=5.0 / 3.0))
    assert U[3] == pytest.approx(1.5)


def test_round_trip_2d(gas):
    W = Primitive(rho=2.0, u=-0.3, p=0.4, v=0.7)
    back = cons_to_prim(prim_to_cons(W, gas), gas)
    assert back.rho == pytest.approx(2.0, rel=1e-14)
    assert back.u == pytest.approx(-0.3, rel=1e-14)
    assert back.v == pytest.approx(0.7, rel=1e-14)
    assert back.p == pytest.approx(0.4, rel=1e-14)


@given(rho=rho_st, u=vel_st, p=p_st)
def test_round_trip_1d_random(rho, u, p):
    gas = GasParams(1.4)
    W = cons_to_prim(prim_to_cons(Primitive(rho=rho, u=u, p=p), gas), gas)
    assert np.isclose(W.rho, rho, rtol=1e-14, atol=0.0)
    assert np.isclose(W.u, u, rtol=1e-13, atol=1e-14)
    assert np.isclose(W.p, p, rtol=1e-13, atol=0.0)


@given(rho=rho_st, u=vel_st, v=vel_st, p=p_st)
def test_sound_speed_identity(rho, u, v, p):
    gas = GasParams(1.4)
    W = cons_to_prim(prim_to_cons(Primitive(rho=rho, u=u, p=p, v=v), gas), gas)
    assert np.isclose(W.c**2 * W.rho, gas.gamma * W.p, rtol=1e-14)


def _flux_oracle(U, axis, gamma):
    """Independently coded physical flux from first principles."""
    rho = U[0]
    if U.shape[0] == 3:
        u = U[1] / rho
        E = U[2]
        p = (gamma - 1.0) * (E - 0.5 * rho * u * u)
        return np.stack([rho * u, rho * u * u + p, u * (E + p)])
    u, v = U[1] / rho, U[2] / rho
    E = U[3]
    p = (gamma - 1.0) * (E - 0.5 * rho * (u * u + v * v))
    if axis == "x":
        return np.stack([rho * u, rho * u * u + p, rho * u * v, u * (E + p)])
    return np.stack([rho * v, rho * u * v, rho * v * v + p, v * (E + p)])


def test_exact_flux_examples(gas):
    F = exact_flux(prim_to_cons(Primitive(rho=1.0, u=1.0, p=1.0), gas), "x", gas)
    assert np.allclose(F, [1.0, 2.0, 4.0], rtol=1e-14)
    F0 = exact_flux(prim_to_cons(Primitive(rho=1.0, u=0.0, p=1.0), gas), "x", gas)
    assert np.allclose(F0, [0.0, 1.0, 0.0], atol=1e-15)
    G = exact_flux(prim_to_cons(Primitive(rho=1.0, u=0.0, p=1.0, v=1.0), gas), "y", gas)
    assert np.allclose(G, [1.0, 0.0, 2.0, 4.0], rtol=1e-14)


@pytest.mark.parametrize("ncomp,axis", [(3, "x"), (4, "x"), (4, "y")])
def test_exact_flux_matches_oracle(gas, ncomp, axis):
    rng = np.random.default_rng(7)
    U = random_states(rng, 200, ncomp)
    assert np.allclose(exact_flux(U, axis, gas), _flux_oracle(U, axis, gas.gamma), rtol=1e-13)


def test_errors(gas):
    with pytest.raises(NonPositiveDensity):
        cons_to_prim(np.array([-1.0, 0.0, 1.0]), gas)
    with pytest.raises(NonPositivePressure):
        cons_to_prim(np.array([1.0, 10.0, 1.0]), gas)  # kinetic energy exceeds E
    with pytest.raises(AxisInvalid):
        exact_flux(np.array([1.0, 0.0, 2.5]), "y", gas)
    with pytest.raises(ValueError):
        GasParams(gamma=1.0)
