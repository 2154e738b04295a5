"""File-to-file figure rendering for solver CSV outputs."""

from .render import (
    PlotJob,
    SchemaMismatch,
    plot_convergence,
    plot_efficiency,
    plot_field,
    plot_line,
)

__all__ = [
    "PlotJob",
    "SchemaMismatch",
    "plot_convergence",
    "plot_efficiency",
    "plot_field",
    "plot_line",
]
