"""Registry of the eleven benchmark problems: domains, initial and boundary
conditions, source terms, final times, default meshes, and exact solutions
where available (ex1, ex2, ex6, ex7)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import NoExactSolution, OutOfDomain, UnknownProblem
from .operator import BoundaryCondition, BoundarySet, gravity_source
from .state import Primitive


@dataclass(frozen=True)
class ProblemSpec:
    pid: str
    dim: int
    xlim: tuple[float, float]
    gamma: float
    t_final: float
    bcs: BoundarySet
    ic: Callable
    ylim: Optional[tuple[float, float]] = None
    exact: Optional[Callable] = None
    source: Optional[Callable] = None
    default_mesh: tuple[int, ...] = (400,)
    ref_mesh: Optional[tuple[int, ...]] = None

    def initial_condition(self, x, y=None) -> Primitive:
        self._check_domain(x, y)
        return self.ic(x) if self.dim == 1 else self.ic(x, y)

    def exact_solution(self, x, y=None, t: float = 0.0) -> Primitive:
        if self.exact is None:
            raise NoExactSolution(f"{self.pid} has no closed-form solution")
        self._check_domain(x, y)
        return self.exact(x, t) if self.dim == 1 else self.exact(x, y, t)

    def _check_domain(self, x, y) -> None:
        if np.any(np.asarray(x) < self.xlim[0]) or np.any(np.asarray(x) > self.xlim[1]):
            raise OutOfDomain(f"x outside {self.xlim}")
        if self.dim == 2:
            if y is None:
                raise OutOfDomain("2-D problem needs y coordinates")
            if np.any(np.asarray(y) < self.ylim[0]) or np.any(np.asarray(y) > self.ylim[1]):
                raise OutOfDomain(f"y outside {self.ylim}")


def _const_like(x, value: float) -> np.ndarray:
    return np.full_like(np.asarray(x, dtype=np.float64), value)


def _bc(kind: str, state: Primitive | None = None) -> BoundaryCondition:
    return BoundaryCondition(kind=kind, state=state)


def _ex1_ic(x):
    return Primitive(rho=1.0 + 0.1 * np.sin(2.0 * np.pi * x), u=_const_like(x, 1.0), p=_const_like(x, 1.0))


def _ex1_exact(x, t):
    return _ex1_ic(x - t)


def _ex2_ic(x):
    return Primitive(rho=(2.0 + np.sin(np.pi * x)) ** 4, u=_const_like(x, 1.0), p=_const_like(x, 1.0))


def _ex2_exact(x, t):
    return _ex2_ic(x - t)


def _ex3_ic(x):
    x = np.asarray(x, dtype=np.float64)
    left = x < -4.0
    rho = np.where(left, 27.0 / 7.0, 1.0 + 0.2 * np.sin(5.0 * x))
    u = np.where(left, 4.0 * np.sqrt(35.0) / 9.0, 0.0)
    p = np.where(left, 31.0 / 3.0, 1.0)
    return Primitive(rho=rho, u=u, p=p)


def _ex4_ic(x):
    x = np.asarray(x, dtype=np.float64)
    left = x < -4.5
    rho = np.where(left, 1.51695, 1.0 + 0.1 * np.sin(20.0 * x))
    u = np.where(left, 0.523346, 0.0)
    p = np.where(left, 1.805, 1.0)
    return Primitive(rho=rho, u=u, p=p)


def _ex5_ic(x):
    x = np.asarray(x, dtype=np.float64)
    p = np.where(x < 0.1, 1000.0, np.where(x > 0.9, 100.0, 0.01))
    return Primitive(rho=_const_like(x, 1.0), u=_const_like(x, 0.0), p=p)


def _ex6_ic(x, y):
    rho = 1.0 + 0.2 * np.sin(np.pi * (x + y))
    return Primitive(rho=rho, u=_const_like(x, 1.0), p=_const_like(x, 1.0), v=_const_like(x, -0.7))


def _ex6_exact(x, y, t):
    rho = 1.0 + 0.2 * np.sin(np.pi * (x + y - 0.3 * t))
    return Primitive(rho=rho, u=_const_like(x, 1.0), p=_const_like(x, 1.0), v=_const_like(x, -0.7))


_VORTEX_EPS = 5.0


def _ex7_ic(x, y, gamma: float = 1.4):
    r2 = x * x + y * y
    bump = np.exp(0.5 * (1.0 - r2))
    T = 1.0 - (gamma - 1.0) * _VORTEX_EPS**2 / (8.0 * gamma * np.pi**2) * np.exp(1.0 - r2)
    rho = T ** (1.0 / (gamma - 1.0))
    u = 1.0 - _VORTEX_EPS / (2.0 * np.pi) * bump * y
    v = 1.0 + _VORTEX_EPS / (2.0 * np.pi) * bump * x
    return Primitive(rho=rho, u=u, p=rho**gamma, v=v)


def _ex7_exact(x, y, t):
    # vortex advected with velocity (1, 1); wrap into the periodic box
    xs = -5.0 + np.mod(np.asarray(x) - t + 5.0, 10.0)
    ys = -5.0 + np.mod(np.asarray(y) - t + 5.0, 10.0)
    return _ex7_ic(xs, ys)


def _ex8_ic(x, y):
    inside = x * x + y * y < 0.16
    return Primitive(
        rho=np.where(inside, 1.0, 0.125),
        u=_const_like(x, 0.0),
        p=np.where(inside, 1.0, 0.1),
        v=_const_like(x, 0.0),
    )


def _ex9_ic(x, y):
    inside = np.abs(x) + np.abs(y) < 0.15
    return Primitive(
        rho=np.where(inside, 0.125, 1.0),
        u=_const_like(x, 0.0),
        p=np.where(inside, 0.14, 1.0),
        v=_const_like(x, 0.0),
    )


_KH_L = 0.00625


def _ex10_ic(x, y):
    y = np.asarray(y, dtype=np.float64)
    rho = np.where((y < -0.25) | (y > 0.25), 1.0, 2.0)
    u = np.where(
        y < -0.25,
        -0.5 + 0.5 * np.exp((y + 0.25) / _KH_L),
        np.where(
            y < 0.0,
            0.5 - 0.5 * np.exp((-y - 0.25) / _KH_L),
            np.where(
                y < 0.25,
                0.5 - 0.5 * np.exp((y - 0.25) / _KH_L),
                -0.5 + 0.5 * np.exp((0.25 - y) / _KH_L),
            ),
        ),
    )
    v = 0.01 * np.sin(4.0 * np.pi * x)
    return Primitive(rho=rho, u=u, p=_const_like(x, 1.5), v=v)


def _ex11_ic(x, y, gamma: float = 5.0 / 3.0):
    lower = np.asarray(y) < 0.5
    rho = np.where(lower, 2.0, 1.0)
    p = np.where(lower, 2.0 * np.asarray(y) + 1.0, np.asarray(y) + 1.5)
    c = np.sqrt(gamma * p / rho)
    v = -0.025 * c * np.cos(8.0 * np.pi * x)
    return Primitive(rho=rho, u=_const_like(x, 0.0), p=p, v=v)


def _ex11_source(U_interior: np.ndarray) -> np.ndarray:
    return gravity_source(U_interior)


_PERIODIC_1D = BoundarySet(left=_bc("periodic"), right=_bc("periodic"))
_FREE_1D = BoundarySet(left=_bc("free"), right=_bc("free"))
_WALL_1D = BoundarySet(left=_bc("wall"), right=_bc("wall"))


def _bcs2(kind: str) -> BoundarySet:
    return BoundarySet(left=_bc(kind), right=_bc(kind), bottom=_bc(kind), top=_bc(kind))


_REGISTRY: dict[str, ProblemSpec] = {}


def _register(spec: ProblemSpec, *aliases: str) -> None:
    _REGISTRY[spec.pid] = spec
    for name in aliases:
        _REGISTRY[name] = spec


_register(
    ProblemSpec(
        pid="ex1", dim=1, xlim=(-1.0, 1.0), gamma=1.4, t_final=0.1,
        bcs=_PERIODIC_1D, ic=_ex1_ic, exact=_ex1_exact, default_mesh=(400,),
    ),
    "accuracy1d",
)
_register(
    ProblemSpec(
        pid="ex2", dim=1, xlim=(-1.0, 1.0), gamma=1.4, t_final=0.1,
        bcs=_PERIODIC_1D, ic=_ex2_ic, exact=_ex2_exact, default_mesh=(400,),
    ),
    "smooth-advection",
)
_register(
    ProblemSpec(
        pid="ex3", dim=1, xlim=(-5.0, 5.0), gamma=1.4, t_final=5.0,
        bcs=_FREE_1D, ic=_ex3_ic, default_mesh=(400,), ref_mesh=(8000,),
    ),
    "shock-density",
    "shu-osher",
)
_register(
    ProblemSpec(
        pid="ex4", dim=1, xlim=(-10.0, 5.0), gamma=1.4, t_final=5.0,
        bcs=_FREE_1D, ic=_ex4_ic, default_mesh=(1200,), ref_mesh=(12000,),
    ),
    "titarev-toro",
)
_register(
    ProblemSpec(
        pid="ex5", dim=1, xlim=(0.0, 1.0), gamma=1.4, t_final=0.038,
        bcs=_WALL_1D, ic=_ex5_ic, default_mesh=(400,), ref_mesh=(4000,),
    ),
    "blast",
)
_register(
    ProblemSpec(
        pid="ex6", dim=2, xlim=(-1.0, 1.0), ylim=(-1.0, 1.0), gamma=1.4, t_final=0.1,
        bcs=_bcs2("periodic"), ic=_ex6_ic, exact=_ex6_exact, default_mesh=(100, 100),
    ),
    "accuracy2d",
)
_register(
    ProblemSpec(
        pid="ex7", dim=2, xlim=(-5.0, 5.0), ylim=(-5.0, 5.0), gamma=1.4, t_final=10.0,
        bcs=_bcs2("periodic"), ic=_ex7_ic, exact=_ex7_exact, default_mesh=(100, 100),
    ),
    "vortex",
)
_register(
    ProblemSpec(
        pid="ex8", dim=2, xlim=(-1.0, 1.0), ylim=(-1.0, 1.0), gamma=1.4, t_final=0.25,
        bcs=_bcs2("free"), ic=_ex8_ic, default_mesh=(50, 50),
    ),
    "explosion",
)
_register(
    ProblemSpec(
        pid="ex9", dim=2, xlim=(0.0, 0.3), ylim=(0.0, 0.3), gamma=1.4, t_final=2.5,
        bcs=_bcs2("wall"), ic=_ex9_ic, default_mesh=(400, 400),
    ),
    "implosion",
)
_register(
    ProblemSpec(
        pid="ex10", dim=2, xlim=(-0.5, 0.5), ylim=(-0.5, 0.5), gamma=1.4, t_final=4.0,
        bcs=_bcs2("periodic"), ic=_ex10_ic, default_mesh=(1024, 1024),
    ),
    "kelvin-helmholtz",
    "kh",
)
_register(
    ProblemSpec(
        pid="ex11", dim=2, xlim=(0.0, 0.25), ylim=(0.0, 1.0), gamma=5.0 / 3.0, t_final=2.95,
        bcs=BoundarySet(
            left=_bc("wall"),
            right=_bc("wall"),
            bottom=_bc("dirichlet", Primitive(rho=2.0, u=0.0, p=1.0, v=0.0)),
            top=_bc("dirichlet", Primitive(rho=1.0, u=0.0, p=2.5, v=0.0)),
        ),
        ic=_ex11_ic, source=_ex11_source, default_mesh=(256, 1024),
    ),
    "rayleigh-taylor",
    "rt",
)


def problem_ids() -> list[str]:
    return [f"ex{i}" for i in range(1, 12)]


def make_problem(pid: str) -> ProblemSpec:
    try:
        return _REGISTRY[pid.lower()]
    except KeyError:
        raise UnknownProblem(
            f"unknown problem {pid!r}; available: {', '.join(sorted(_REGISTRY))}"
        ) from None
