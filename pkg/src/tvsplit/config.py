"""Scheme configuration shared by the spatial operator and the harness."""

from __future__ import annotations

from dataclasses import dataclass, field

from .reconstruction import WenoParams

FLUX_FAMILIES = ("tv", "cu", "hllc")
ORDERS = (1, 2, 3, 5)


@dataclass(frozen=True)
class SchemeConfig:
    """Spatial order, flux family, and the scheme constants.

    correction_limit: an interface drops its central-difference correction
    terms when their magnitude exceeds this fraction of the finite-volume
    flux scale. Smooth fields sit orders of magnitude below the threshold;
    only extreme jumps (the blast-wave initial data) trip it, where the
    unlimited corrections would drive pressure negative.
    """

    order: int = 5
    flux: str = "tv"
    cfl: float = 0.45
    weno: WenoParams = field(default_factory=WenoParams)
    accuracy_mode: bool = False
    correction_limit: float = 0.25

    def __post_init__(self) -> None:
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.order}")
        if self.flux not in FLUX_FAMILIES:
            raise ValueError(f"flux must be one of {FLUX_FAMILIES}, got {self.flux!r}")
        if not 0.0 < self.cfl < 1.0:
            raise ValueError(f"cfl must lie in (0, 1), got {self.cfl}")
