"""
Exception hierarchy shared by the numerics modules and the CLI.

The CLI maps `DomainError` to exit code 2 and `NumericError` to exit code 3.
"""

from __future__ import annotations

from typing import Optional, Sequence


class CobosonError(Exception):
    """Base class for all library errors."""


class DomainError(CobosonError, ValueError):
    """Raised when an input lies outside the domain of an operation."""


class UnitError(DomainError):
    """Raised when two units have incompatible dimensions."""


class QuantumNumberError(DomainError):
    """Raised when a quantum-number label violates an angular-momentum coupling rule."""

    def __init__(self, rule: str, beta: object) -> None:
        super().__init__(f"{rule} (got {beta})")
        self.rule = rule
        self.beta = beta


class SingularGeometryError(DomainError):
    """Raised when two charges coincide or a separation vanishes."""

    def __init__(self, message: str, pair: Optional[str] = None) -> None:
        super().__init__(message if pair is None else f"{message} [pair {pair}]")
        self.pair = pair


class NumericError(CobosonError, ArithmeticError):
    """Raised when a numerical procedure fails."""


class QuadratureError(NumericError):
    """
    Raised when an adaptive quadrature misses its tolerance.

    Attributes:
        label: Name of the integrand.
        estimate: Best value returned by the integrator.
        error_bound: Error estimate returned by the integrator.
    """

    def __init__(self, label: str, estimate: float, error_bound: float, detail: str = "") -> None:
        message = f"Quadrature for {label} did not converge (value={estimate:.6e}, error={error_bound:.3e})"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.label = label
        self.estimate = estimate
        self.error_bound = error_bound


class GpeNumericError(NumericError):
    """Raised when the GPE field develops non-finite values."""

    def __init__(self, step: int, time: float, mode: str) -> None:
        super().__init__(f"Non-finite field in mode '{mode}' at step {step} (t={time:.6e})")
        self.step = step
        self.time = time
        self.mode = mode


class ConvergenceError(NumericError):
    """Raised when an iterative solve stops before meeting its tolerance."""

    def __init__(self, message: str, history: Sequence[float]) -> None:
        tail = ", ".join(f"{value:.3e}" for value in list(history)[-5:])
        super().__init__(f"{message} (last residuals: {tail})" if tail else message)
        self.history = list(history)
