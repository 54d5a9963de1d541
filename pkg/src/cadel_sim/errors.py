"""Exception types shared across the package."""

from __future__ import annotations


class CadelError(Exception):
    """Base class for domain errors (mapped to CLI exit code 1)."""


class InvalidGeometry(CadelError, ValueError):
    """A DeviceConfig violates one or more invariants."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid geometry: " + "; ".join(self.violations))


class DegenerateGeometry(CadelError):
    """A cable collapsed to (near) zero length."""


class NoConvergence(CadelError):
    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"forward kinematics did not converge after {iterations} iterations "
            f"(residual {residual:.3e} m)"
        )


class Infeasible(CadelError):
    """No tension vector inside the box realises the demanded wrench."""

    def __init__(self, residual: float, step: int | None = None):
        self.residual = residual
        self.step = step
        where = "" if step is None else f" at step {step}"
        super().__init__(
            f"infeasible tension distribution{where} "
            f"(least-squares residual {residual:.3e} N*m)"
        )


class RoMViolation(CadelError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("range of motion violated: " + "; ".join(self.violations))


class ConfigError(ValueError):
    """Malformed config file or CLI input (mapped to exit code 2)."""
