"""Exception types raised by the solver library."""


class SolverError(Exception):
    """Base class for all solver failures."""


class NonPositiveDensity(SolverError):
    pass


class NonPositivePressure(SolverError):
    pass


class AxisInvalid(SolverError):
    pass


class DegenerateWaveFan(SolverError):
    pass


class EmptyInput(SolverError):
    pass


class InsufficientStencil(SolverError):
    pass


class OrderCorrectionMismatch(SolverError):
    pass


class InconsistentPeriodicPair(SolverError):
    pass


class ZeroWaveSpeed(SolverError):
    pass


class StepCollapse(SolverError):
    pass


class UnknownProblem(SolverError):
    pass


class OutOfDomain(SolverError):
    pass


class NoExactSolution(SolverError):
    pass


class GridMismatch(SolverError):
    pass


class IoFailure(SolverError):
    pass
