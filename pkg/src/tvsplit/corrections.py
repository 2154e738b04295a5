"""Central-difference correction terms that upgrade the finite-volume flux to
a high-order finite-difference interface flux.

Stencils take physical flux values at the grid points bracketing an
interface, ordered left to right, as an array whose axis 0 is the stencil
position (trailing axes broadcast). Each stencil annihilates polynomials
below its derivative order; the 4-point second-derivative form is used in
every dimension (a consistent approximation, unlike the 1/12 scaling that
appears in some write-ups of the 2-D case).
"""

from __future__ import annotations

import numpy as np

from .errors import OrderCorrectionMismatch


def fxx_third(stencil: np.ndarray, dx: float) -> np.ndarray:
    """Second derivative at the interface from 4 points (second-order accurate)."""
    F = np.asarray(stencil)
    if F.shape[0] != 4:
        raise OrderCorrectionMismatch(f"expected 4 stencil points, got {F.shape[0]}")
    return (F[0] - F[1] - F[2] + F[3]) / (2.0 * dx * dx)


def fxx_fifth(stencil: np.ndarray, dx: float) -> np.ndarray:
    """Second derivative at the interface from 6 points (fourth-order accurate)."""
    F = np.asarray(stencil)
    if F.shape[0] != 6:
        raise OrderCorrectionMismatch(f"expected 6 stencil points, got {F.shape[0]}")
    return (
        -5.0 * F[0] + 39.0 * F[1] - 34.0 * F[2] - 34.0 * F[3] + 39.0 * F[4] - 5.0 * F[5]
    ) / (48.0 * dx * dx)


def fxxxx_fifth(stencil: np.ndarray, dx: float) -> np.ndarray:
    """Fourth derivative at the interface from 6 points (second-order accurate)."""
    F = np.asarray(stencil)
    if F.shape[0] != 6:
        raise OrderCorrectionMismatch(f"expected 6 stencil points, got {F.shape[0]}")
    return (F[0] - 3.0 * F[1] + 2.0 * F[2] + 2.0 * F[3] - 3.0 * F[4] + F[5]) / (
        2.0 * dx**4
    )


def assemble_h_flux(
    fv_flux: np.ndarray,
    order: int,
    dx: float,
    fxx: np.ndarray | None = None,
    fxxxx: np.ndarray | None = None,
) -> np.ndarray:
    """High-order interface flux H from the FV flux and correction terms."""
    if order in (1, 2):
        if fxx is not None or fxxxx is not None:
            raise OrderCorrectionMismatch("orders 1-2 take no correction terms")
        return fv_flux
    if order == 3:
        if fxx is None or fxxxx is not None:
            raise OrderCorrectionMismatch("order 3 takes exactly the fxx correction")
        return fv_flux - (dx * dx / 24.0) * fxx
    if order == 5:
        if fxx is None or fxxxx is None:
            raise OrderCorrectionMismatch("order 5 takes fxx and fxxxx corrections")
        return fv_flux - (dx * dx / 24.0) * fxx + (7.0 * dx**4 / 5760.0) * fxxxx
    raise OrderCorrectionMismatch(f"unsupported order {order}")
