"""Three-stage third-order SSP Runge-Kutta time stepping with CFL control."""

from __future__ import annotations

import time as _time
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import StepCollapse, ZeroWaveSpeed
from .operator import Field
from .state import GasParams, cons_to_prim


@dataclass(frozen=True)
class TimeControl:
    """Courant number, stop time, and the fifth-order accuracy-mode dt cap.

    The accuracy-mode proportionality constant is calibrated so the smooth
    1-D advection errors of the fifth-order scheme land on the reference
    error levels; the CFL step always remains an upper bound.
    """

    t_final: float
    cfl: float = 0.45
    accuracy_mode: bool = False
    dt_scale_exponent: float = 5.0 / 3.0
    accuracy_dt_const: float = 3.5

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl < 1.0:
            raise ValueError(f"cfl must lie in (0, 1), got {self.cfl}")
        if not self.t_final >= 0.0:
            raise ValueError("t_final must be nonnegative")


class StepLog(NamedTuple):
    steps: int
    wall_seconds: float


def max_signal_speeds(field: Field, gas: GasParams) -> tuple[float, ...]:
    """Per-axis maxima of |velocity| + sound speed over interior cells."""
    W = cons_to_prim(field.interior, gas)
    sx = float(np.max(np.abs(W.u) + W.c))
    if field.grid.ndim == 1:
        return (sx,)
    sy = float(np.max(np.abs(W.v) + W.c))
    return (sx, sy)


def compute_dt(field: Field, control: TimeControl, gas: GasParams) -> float:
    """CFL time step, optionally capped for fifth-order accuracy studies, and
    clipped so the run lands exactly on t_final."""
    speeds = max_signal_speeds(field, gas)
    if max(speeds) <= 0.0:
        raise ZeroWaveSpeed("maximum signal speed is zero")
    if field.grid.ndim == 1:
        rate = speeds[0] / field.grid.dx
        h_min = field.grid.dx
    else:
        rate = speeds[0] / field.grid.dx + speeds[1] / field.grid.dy
        h_min = min(field.grid.dx, field.grid.dy)
    dt = control.cfl / rate
    if control.accuracy_mode:
        dt = min(dt, control.accuracy_dt_const * h_min**control.dt_scale_exponent)
    remaining = control.t_final - field.time
    if dt >= remaining:
        return remaining
    return dt


def ssprk3_step(field: Field, rhs_fn: Callable[[Field], np.ndarray], dt: float) -> Field:
    """Advance one SSP-RK3 step; rhs_fn must refresh ghosts itself."""
    g = field.grid.ghosts
    interior = (slice(None), slice(g, -g)) if field.grid.ndim == 1 else (
        slice(None),
        slice(g, -g),
        slice(g, -g),
    )
    U0 = field.interior.copy()
    t0 = field.time

    field.U[interior] = U0 + dt * rhs_fn(field)
    field.time = t0 + dt
    field.U[interior] = 0.75 * U0 + 0.25 * (field.interior + dt * rhs_fn(field))
    field.time = t0 + 0.5 * dt
    field.U[interior] = (U0 + 2.0 * (field.interior + dt * rhs_fn(field))) / 3.0
    field.time = t0 + dt
    return field


def integrate_to(
    field: Field,
    control: TimeControl,
    rhs_fn: Callable[[Field], np.ndarray],
    gas: GasParams,
    snapshot_times: Sequence[float] = (),
    on_snapshot: Optional[Callable[[Field], None]] = None,
) -> StepLog:
    """Step the field to control.t_final, landing on it (and any snapshot
    times) exactly; returns the step count and wall-clock time."""
    events = sorted(t for t in snapshot_times if field.time < t <= control.t_final)
    steps = 0
    start = _time.perf_counter()
    while field.time < control.t_final:
        dt = compute_dt(field, control, gas)
        if events and field.time + dt >= events[0]:
            dt = events[0] - field.time
        if dt < 1e-14 * control.t_final:
            raise StepCollapse(f"dt collapsed to {dt} at t = {field.time}")
        ssprk3_step(field, rhs_fn, dt)
        steps += 1
        if events and field.time >= events[0]:
            events.pop(0)
            if on_snapshot is not None:
                on_snapshot(field)
    return StepLog(steps=steps, wall_seconds=_time.perf_counter() - start)
