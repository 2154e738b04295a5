"""Comparison numerical fluxes: central-upwind (HLL-type) and HLLC.

Both use one-sided eigenvalue wave-speed estimates, q -+ c evaluated on each
side, so that the two baselines share one estimate family.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DegenerateWaveFan
from .state import GasParams, cons_to_prim, exact_flux, swap_normal


class WaveSpeeds(NamedTuple):
    s_left: np.ndarray
    s_right: np.ndarray
    s_star: np.ndarray | None = None


def cu_hll_flux(left: np.ndarray, right: np.ndarray, axis: str, gas: GasParams) -> np.ndarray:
    """Central-upwind (HLL) flux with one-sided speed bounds clipped at zero."""
    Ul = swap_normal(np.asarray(left, dtype=np.float64), axis)
    Ur = swap_normal(np.asarray(right, dtype=np.float64), axis)
    Wl = cons_to_prim(Ul, gas)
    Wr = cons_to_prim(Ur, gas)
    a_plus = np.maximum.reduce([Wl.u + Wl.c, Wr.u + Wr.c, np.zeros_like(Wl.u)])
    a_minus = np.minimum.reduce([Wl.u - Wl.c, Wr.u - Wr.c, np.zeros_like(Wl.u)])
    span = a_plus - a_minus
    Fl = exact_flux(Ul, "x", gas)
    Fr = exact_flux(Ur, "x", gas)
    # span == 0 cannot occur for valid states (c > 0); keep the division safe
    safe = np.where(span > 0.0, span, 1.0)
    flux = (a_plus * Fl - a_minus * Fr) / safe + (a_plus * a_minus / safe) * (Ur - Ul)
    flux = np.where(span > 0.0, flux, 0.0)
    return swap_normal(flux, axis)


def hllc_wave_speeds(Wl, Wr) -> WaveSpeeds:
    s_left = np.minimum(Wl.u - Wl.c, Wr.u - Wr.c)
    s_right = np.maximum(Wl.u + Wl.c, Wr.u + Wr.c)
    dl = Wl.rho * (s_left - Wl.u)
    dr = Wr.rho * (s_right - Wr.u)
    s_star = (Wr.p - Wl.p + dl * Wl.u - dr * Wr.u) / (dl - dr)
    return WaveSpeeds(s_left=s_left, s_right=s_right, s_star=s_star)


def hllc_flux(left: np.ndarray, right: np.ndarray, axis: str, gas: GasParams) -> np.ndarray:
    """HLLC flux with the standard pressure-based contact-speed closure."""
    Ul = swap_normal(np.asarray(left, dtype=np.float64), axis)
    Ur = swap_normal(np.asarray(right, dtype=np.float64), axis)
    Wl = cons_to_prim(Ul, gas)
    Wr = cons_to_prim(Ur, gas)
    ws = hllc_wave_speeds(Wl, Wr)
    if np.any(ws.s_right - ws.s_left <= 0.0):
        raise DegenerateWaveFan("S_R - S_L must be positive for valid states")
    s_star = ws.s_star

    def star_flux(U, W, F, s):
        d = W.rho * (s - W.u)
        denom = s - s_star
        safe = np.where(denom != 0.0, denom, 1.0)
        rho_star = d / safe
        Ustar = np.empty(np.broadcast_shapes(Ul.shape, Ur.shape))
        Ustar[0] = rho_star
        Ustar[1] = rho_star * s_star
        if U.shape[0] == 4:
            Ustar[2] = rho_star * W.v
        Ustar[-1] = rho_star * (U[-1] / W.rho + (s_star - W.u) * (s_star + W.p / d))
        return F + s * (Ustar - U)

    Fl = exact_flux(Ul, "x", gas)
    Fr = exact_flux(Ur, "x", gas)
    flux = np.where(
        ws.s_left >= 0.0,
        Fl,
        np.where(
            s_star >= 0.0,
            star_flux(Ul, Wl, Fl, ws.s_left),
            np.where(ws.s_right >= 0.0, star_flux(Ur, Wr, Fr, ws.s_right), Fr),
        ),
    )
    return swap_normal(flux, axis)
