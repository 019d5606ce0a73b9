"""Exception types shared across the package."""


class QOscillatorError(Exception):
    """Base class for all package-specific errors."""


class DivergentArgument(QOscillatorError):
    """Argument lies outside the convergence disk of the q-exponential."""


class NoConvergence(QOscillatorError):
    """An iterative computation hit its budget before meeting its tolerance."""


class TooLargeN(QOscillatorError):
    """Quantum number exceeds the supported eigenstate cap."""


class OutsideConvergenceDisk(QOscillatorError):
    """Coherent-state parameter violates |lambda| < 1/sqrt(1-q)."""


class DimTooSmall(QOscillatorError):
    """Fock truncation dimension too small for the requested tail bound."""


class DimensionMismatch(QOscillatorError):
    """Matrix/vector dimensions do not agree."""


class ZeroState(QOscillatorError):
    """Expectation value requested for a state with vanishing norm."""


class DegenerateData(QOscillatorError):
    """Level data cannot constrain the two-parameter spectrum model."""


class TermBudgetExceeded(QOscillatorError):
    """A Gaussian-exponential sum grew past the runaway-pipeline guard."""


class InternalConsistencyError(QOscillatorError):
    """A quantity that must be real came out with a large imaginary part."""
