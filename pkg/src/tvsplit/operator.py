"""Semi-discrete right-hand side on 1-D and 2-D uniform grids: ghost filling,
per-interface flux assembly, flux differencing, and source terms.

Fields store conserved variables with the component axis first and a fixed
halo of NG ghost layers on every side; ghost cells must be refreshed before
each rhs evaluation (the time integrator does this at every stage).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .alt_flux import cu_hll_flux, hllc_flux
from .config import SchemeConfig
from .corrections import assemble_h_flux, fxx_fifth, fxx_third, fxxxx_fifth
from .errors import InconsistentPeriodicPair
from .reconstruction import NG, reconstruct_faces
from .state import GasParams, Primitive, exact_flux, prim_to_cons
from .tv_flux import tv_numerical_flux

_FLUX_FN = {"tv": tv_numerical_flux, "cu": cu_hll_flux, "hllc": hllc_flux}


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid; ny is None for 1-D."""

    nx: int
    xmin: float
    xmax: float
    ny: Optional[int] = None
    ymin: float = 0.0
    ymax: float = 1.0
    ghosts: int = NG

    @property
    def ndim(self) -> int:
        return 1 if self.ny is None else 2

    @property
    def ncomp(self) -> int:
        return 3 if self.ny is None else 4

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.nx

    @property
    def dy(self) -> float:
        if self.ny is None:
            raise ValueError("dy undefined on a 1-D grid")
        return (self.ymax - self.ymin) / self.ny

    def x_centers(self) -> np.ndarray:
        return self.xmin + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        return self.ymin + (np.arange(self.ny) + 0.5) * self.dy


@dataclass(frozen=True)
class BoundaryCondition:
    """One side's boundary rule; `state` only applies to kind 'dirichlet'."""

    kind: str  # periodic | free | wall | dirichlet
    state: Optional[Primitive] = None

    def __post_init__(self) -> None:
        if self.kind not in ("periodic", "free", "wall", "dirichlet"):
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.kind == "dirichlet" and self.state is None:
            raise ValueError("dirichlet boundary needs a fixed state")


class BoundarySet(NamedTuple):
    left: BoundaryCondition
    right: BoundaryCondition
    bottom: Optional[BoundaryCondition] = None
    top: Optional[BoundaryCondition] = None


def periodic_pair_check(bcs: BoundarySet, ndim: int) -> None:
    pairs = [(bcs.left, bcs.right)]
    if ndim == 2:
        pairs.append((bcs.bottom, bcs.top))
    for a, b in pairs:
        if (a.kind == "periodic") != (b.kind == "periodic"):
            raise InconsistentPeriodicPair("periodic sides must come in opposing pairs")


@dataclass
class Field:
    """Grid plus the conserved-state array including ghost layers."""

    grid: Grid
    U: np.ndarray
    time: float = 0.0

    @property
    def interior(self) -> np.ndarray:
        g = self.grid.ghosts
        if self.grid.ndim == 1:
            return self.U[:, g:-g]
        return self.U[:, g:-g, g:-g]

    def copy(self) -> "Field":
        return Field(grid=self.grid, U=self.U.copy(), time=self.time)


def make_field(grid: Grid, prim_fn: Callable, gas: GasParams, time: float = 0.0) -> Field:
    """Initialize a field from pointwise primitive values at cell centers."""
    g = grid.ghosts
    if grid.ndim == 1:
        W = prim_fn(grid.x_centers())
        U = np.zeros((3, grid.nx + 2 * g))
        U[:, g:-g] = prim_to_cons(W, gas)
    else:
        X, Y = np.meshgrid(grid.x_centers(), grid.y_centers(), indexing="ij")
        W = prim_fn(X, Y)
        U = np.zeros((4, grid.nx + 2 * g, grid.ny + 2 * g))
        U[:, g:-g, g:-g] = prim_to_cons(W, gas)
    return Field(grid=grid, U=U, time=time)


def _fill_axis(U: np.ndarray, lo_bc, hi_bc, g: int, n: int, mom_row: int, gas: GasParams) -> None:
    """Fill the g ghost layers on both ends of array axis 1, all other axes whole."""
    for side, bc in (("lo", lo_bc), ("hi", hi_bc)):
        if bc.kind == "periodic":
            if side == "lo":
                U[:, :g] = U[:, n : n + g]
            else:
                U[:, n + g :] = U[:, g : 2 * g]
        elif bc.kind == "free":
            if side == "lo":
                U[:, :g] = U[:, g : g + 1]
            else:
                U[:, n + g :] = U[:, n + g - 1 : n + g]
        elif bc.kind == "wall":
            if side == "lo":
                U[:, :g] = U[:, g : 2 * g][:, ::-1]
                U[mom_row, :g] *= -1.0
            else:
                U[:, n + g :] = U[:, n : n + g][:, ::-1]
                U[mom_row, n + g :] *= -1.0
        else:  # dirichlet
            fixed = prim_to_cons(bc.state, gas)
            if side == "lo":
                U[:, :g] = fixed.reshape(fixed.shape + (1,) * (U.ndim - 1))
            else:
                U[:, n + g :] = fixed.reshape(fixed.shape + (1,) * (U.ndim - 1))


def fill_ghosts(field: Field, bcs: BoundarySet, gas: GasParams) -> Field:
    """Populate all ghost layers of `field` in place and return it."""
    g = field.grid.ghosts
    periodic_pair_check(bcs, field.grid.ndim)
    if field.grid.ndim == 1:
        _fill_axis(field.U, bcs.left, bcs.right, g, field.grid.nx, 1, gas)
        return field
    # x sides first over interior rows, then y sides over every column
    _fill_axis(field.U[:, :, g:-g], bcs.left, bcs.right, g, field.grid.nx, 1, gas)
    Uy = np.swapaxes(field.U, 1, 2)
    _fill_axis(Uy, bcs.bottom, bcs.top, g, field.grid.ny, 2, gas)
    return field


def gravity_source(U_interior: np.ndarray) -> np.ndarray:
    """Buoyancy-driving source (0, 0, rho, rho*v) evaluated pointwise."""
    z = np.zeros_like(U_interior[0])
    return np.stack([z, z, U_interior[0], U_interior[2]])


def _h_flux_line(U_line: np.ndarray, axis: str, dx: float, cfg: SchemeConfig, gas: GasParams) -> np.ndarray:
    """High-order interface fluxes along a padded line (sweep axis = array axis 1)."""
    g = NG
    faces = reconstruct_faces(U_line, cfg.order, axis, cfg.weno, gas, g)
    fv = _FLUX_FN[cfg.flux](faces.minus, faces.plus, axis, gas)
    if cfg.order in (1, 2):
        return fv
    F = exact_flux(U_line, axis, gas)
    nf = U_line.shape[1] - 2 * g + 1
    if cfg.order == 3:
        S = np.stack([F[:, g - 2 + m : g - 2 + m + nf] for m in range(4)])
        H = assemble_h_flux(fv, 3, dx, fxx=fxx_third(S, dx))
    else:
        S = np.stack([F[:, g - 3 + m : g - 3 + m + nf] for m in range(6)])
        H = assemble_h_flux(fv, 5, dx, fxx=fxx_fifth(S, dx), fxxxx=fxxxx_fifth(S, dx))
    # adaptive guard: revert to the FV flux where the corrections are large
    corr_scale = np.abs(H - fv).max(axis=0)
    fv_scale = np.abs(fv).max(axis=0)
    return np.where(corr_scale > cfg.correction_limit * fv_scale, fv, H)


def rhs_reference(
    field: Field,
    cfg: SchemeConfig,
    gas: GasParams,
    source: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> np.ndarray:
    """Vectorized reference evaluation of dU/dt over interior cells.

    Ghost layers must already be filled.
    """
    g = field.grid.ghosts
    U = field.U
    if field.grid.ndim == 1:
        H = _h_flux_line(U, "x", field.grid.dx, cfg, gas)
        out = -(H[:, 1:] - H[:, :-1]) / field.grid.dx
    else:
        Hx = _h_flux_line(U[:, :, g:-g], "x", field.grid.dx, cfg, gas)
        out = -(Hx[:, 1:] - Hx[:, :-1]) / field.grid.dx
        Hy = _h_flux_line(np.swapaxes(U[:, g:-g, :], 1, 2), "y", field.grid.dy, cfg, gas)
        out -= np.swapaxes(Hy[:, 1:] - Hy[:, :-1], 1, 2) / field.grid.dy
    if source is not None:
        out += source(field.interior)
    return out


def _use_kernels() -> bool:
    flag = os.environ.get("TVSPLIT_JIT", "1")
    return flag not in ("0", "off", "false", "no")


def rhs(
    field: Field,
    cfg: SchemeConfig,
    gas: GasParams,
    source: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> np.ndarray:
    """dU/dt over interior cells; uses the compiled fast path when available."""
    if _use_kernels():
        try:
            from . import kernels
        except ImportError:
            pass
        else:
            return kernels.rhs_fused(field, cfg, gas, source)
    return rhs_reference(field, cfg, gas, source)
