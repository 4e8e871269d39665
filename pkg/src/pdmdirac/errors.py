"""Exception types shared across the package."""


class PdmDiracError(Exception):
    """Base class for all library errors."""


class OutOfDomainError(PdmDiracError, ValueError):
    """Evaluation requested outside a profile's interval (or on an open endpoint)."""


class StepUnderflowError(PdmDiracError, ValueError):
    """Finite-difference stencil would cross an open boundary."""


class NonConvergenceError(PdmDiracError, RuntimeError):
    """Adaptive quadrature or iteration exhausted its refinement budget."""


class InvalidParamError(PdmDiracError, ValueError):
    """Inadmissible family parameters (e.g. b = 0 for an omega != 0 class)."""


class DegenerateMapError(PdmDiracError, ValueError):
    """PCT map u(x) is not strictly monotone on the verification grid."""


class DivisionByZeroError(PdmDiracError, ZeroDivisionError):
    """A generator G vanishes where a quotient by G is required."""


class NonPositiveGError(PdmDiracError, ValueError):
    """Non-integer power of a negative G requested in a ground-state build."""


class OrderingViolationError(PdmDiracError, ValueError):
    """Ambiguity parameters do not satisfy eta + beta + gamma = -1."""


class LinkViolationError(PdmDiracError, ValueError):
    """Mass and Fermi velocity are not linked by v_f^2 * M = 1."""


class SingularDenominatorError(PdmDiracError, ZeroDivisionError):
    """E + m v_f^2 vanishes on the grid; the lower component is undefined."""


class ComplexEnergyError(PdmDiracError, ValueError):
    """Reality criterion A^2 >= (k - 1/2)^2 fails for a requested spinor."""


class InversionFailureError(PdmDiracError, RuntimeError):
    """The PCT coordinate could not be inverted (no bracket for x(u))."""


class ConvergenceFailureError(PdmDiracError, RuntimeError):
    """Eigensolver failed to reach its residual target within budget."""


class ConfigError(PdmDiracError, ValueError):
    """Malformed or inconsistent model configuration file."""


class DomainError(PdmDiracError, ValueError):
    """Requested grid is inconsistent with the chosen coordinate map."""
