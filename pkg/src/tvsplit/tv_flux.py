"""Flux splitting into advection and pressure subsystems.

The interface flux is the sum of an advection flux, upwinded on the sign of
the interface star velocity, and a pressure flux built from the star values
of a nonlinear pressure-system Riemann solver. The star-value coefficients
C+- use each side's own sound speed (the side-consistent form; the same
formula serves both 2-D sweep directions after a momentum-component swap).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DegenerateWaveFan
from .state import GasParams, Primitive, cons_to_prim, sound_speed, swap_normal


class StarState(NamedTuple):
    vel_star: np.ndarray
    p_star: np.ndarray
    c_plus: np.ndarray
    c_minus: np.ndarray


def _normal_velocity(W: Primitive, axis: str) -> np.ndarray:
    if axis == "y":
        if W.v is None:
            from .errors import AxisInvalid

            raise AxisInvalid("axis 'y' is only valid for 2-D states")
        return W.v
    return W.u


def star_states(left: Primitive, right: Primitive, axis: str, gas: GasParams) -> StarState:
    """Interface star velocity/pressure and the C+- wave coefficients.

    `left`/`right` are the one-sided interface values; the normal velocity is
    u for axis "x" and v for axis "y".
    """
    ql = _normal_velocity(left, axis)
    qr = _normal_velocity(right, axis)
    cl = left.c if left.c is not None else sound_speed(left.rho, left.p, gas)
    cr = right.c if right.c is not None else sound_speed(right.rho, right.p, gas)
    c_minus = left.rho * (ql - np.sqrt(ql * ql + 4.0 * cl * cl))
    c_plus = right.rho * (qr + np.sqrt(qr * qr + 4.0 * cr * cr))
    span = c_plus - c_minus
    if np.any(span <= 0.0):
        raise DegenerateWaveFan("C+ - C- must be positive for valid states")
    vel_star = (c_plus * qr - c_minus * ql) / span - 2.0 * (right.p - left.p) / span
    p_star = (c_plus * left.p - c_minus * right.p) / span + (
        c_plus * c_minus / (2.0 * span)
    ) * (qr - ql)
    return StarState(vel_star=vel_star, p_star=p_star, c_plus=c_plus, c_minus=c_minus)


def tv_numerical_flux(left: np.ndarray, right: np.ndarray, axis: str, gas: GasParams) -> np.ndarray:
    """Advection plus pressure numerical flux for conserved face states."""
    Ul = swap_normal(np.asarray(left, dtype=np.float64), axis)
    Ur = swap_normal(np.asarray(right, dtype=np.float64), axis)
    Wl = cons_to_prim(Ul, gas)
    Wr = cons_to_prim(Ur, gas)
    star = star_states(Wl, Wr, "x", gas)

    # advected vector: (rho, momenta, kinetic energy) from the upwind side
    upwind_left = star.vel_star >= 0.0
    ncomp = Ul.shape[0]
    adv = np.empty(np.broadcast_shapes(Ul.shape, Ur.shape))
    adv[0] = np.where(upwind_left, Ul[0], Ur[0])
    adv[1] = np.where(upwind_left, Ul[1], Ur[1])
    if ncomp == 3:
        kin_l = 0.5 * Ul[0] * Wl.u * Wl.u
        kin_r = 0.5 * Ur[0] * Wr.u * Wr.u
    else:
        adv[2] = np.where(upwind_left, Ul[2], Ur[2])
        kin_l = 0.5 * Ul[0] * (Wl.u * Wl.u + Wl.v * Wl.v)
        kin_r = 0.5 * Ur[0] * (Wr.u * Wr.u + Wr.v * Wr.v)
    adv[-1] = np.where(upwind_left, kin_l, kin_r)
    flux = star.vel_star * adv

    flux[1] += star.p_star
    flux[-1] += gas.gamma * star.vel_star * star.p_star / (gas.gamma - 1.0)
    return swap_normal(flux, axis)
