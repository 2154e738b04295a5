"""State algebra for the ideal-gas Euler system.

Conserved variables are stored with the component axis first:
(rho, rho*u, E) in 1-D and (rho, rho*u, rho*v, E) in 2-D. All functions
accept scalars or arrays of any trailing shape and broadcast elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import AxisInvalid, NonPositiveDensity, NonPositivePressure


@dataclass(frozen=True)
class GasParams:
    """Ideal-gas parameters; gamma is the specific-heat ratio."""

    gamma: float = 1.4

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


class Primitive(NamedTuple):
    """Primitive variables; v is None in 1-D, c is the sound speed."""

    rho: np.ndarray
    u: np.ndarray
    p: np.ndarray
    v: Optional[np.ndarray] = None
    c: Optional[np.ndarray] = None


def sound_speed(rho, p, gas: GasParams):
    return np.sqrt(gas.gamma * p / rho)


def cons_to_prim(U: np.ndarray, gas: GasParams) -> Primitive:
    """Convert conserved (rho, m, E) to primitive (rho, u[, v], p, c).

    Raises NonPositiveDensity / NonPositivePressure if any cell is invalid.
    """
    U = np.asarray(U, dtype=np.float64)
    rho = U[0]
    if np.any(rho <= 0.0) or not np.all(np.isfinite(rho)):
        raise NonPositiveDensity(f"min rho = {np.min(rho)}")
    u = U[1] / rho
    if U.shape[0] == 3:
        v = None
        kinetic = 0.5 * rho * u * u
        E = U[2]
    elif U.shape[0] == 4:
        v = U[2] / rho
        kinetic = 0.5 * rho * (u * u + v * v)
        E = U[3]
    else:
        raise ValueError(f"expected 3 or 4 components, got {U.shape[0]}")
    p = (gas.gamma - 1.0) * (E - kinetic)
    if np.any(p <= 0.0) or not np.all(np.isfinite(p)):
        raise NonPositivePressure(f"min p = {np.min(p)}")
    return Primitive(rho=rho, u=u, p=p, v=v, c=sound_speed(rho, p, gas))


def prim_to_cons(W: Primitive, gas: GasParams) -> np.ndarray:
    """Convert primitive variables to the conserved vector; inverse of cons_to_prim."""
    rho = np.asarray(W.rho, dtype=np.float64)
    u = np.asarray(W.u, dtype=np.float64)
    p = np.asarray(W.p, dtype=np.float64)
    if np.any(rho <= 0.0):
        raise NonPositiveDensity(f"min rho = {np.min(rho)}")
    if np.any(p <= 0.0):
        raise NonPositivePressure(f"min p = {np.min(p)}")
    if W.v is None:
        E = p / (gas.gamma - 1.0) + 0.5 * rho * u * u
        return np.stack(np.broadcast_arrays(rho, rho * u, E))
    v = np.asarray(W.v, dtype=np.float64)
    E = p / (gas.gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return np.stack(np.broadcast_arrays(rho, rho * u, rho * v, E))


def swap_normal(U: np.ndarray, axis: str) -> np.ndarray:
    """Reorder components so the axis-normal momentum sits in slot 1.

    Identity for axis "x"; for axis "y" (2-D only) swaps the momentum rows.
    The operation is an involution, so it also maps results back.
    """
    if axis == "x":
        return U
    if axis == "y":
        if U.shape[0] != 4:
            raise AxisInvalid("axis 'y' is only valid for 2-D states")
        return U[[0, 2, 1, 3]]
    raise AxisInvalid(f"axis must be 'x' or 'y', got {axis!r}")


def exact_flux(U: np.ndarray, axis: str, gas: GasParams) -> np.ndarray:
    """Physical flux F(U) (axis "x") or G(U) (axis "y", 2-D only)."""
    Un = swap_normal(np.asarray(U, dtype=np.float64), axis)
    W = cons_to_prim(Un, gas)
    E = Un[-1]
    if Un.shape[0] == 3:
        F = np.stack(
            np.broadcast_arrays(Un[1], Un[1] * W.u + W.p, W.u * (E + W.p))
        )
    else:
        F = np.stack(
            np.broadcast_arrays(Un[1], Un[1] * W.u + W.p, Un[2] * W.u, W.u * (E + W.p))
        )
    return swap_normal(F, axis)
