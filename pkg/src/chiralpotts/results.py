"""Structured pass/fail record shared by all identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["IdentityResult"]


@dataclass
class IdentityResult:
    """Outcome of verifying one identity instance.

    ``passed`` is derived: it is True exactly when
    ``max_residual <= tolerance`` (NaN residuals therefore fail).
    ``constant`` carries an extracted proportionality factor (r_pq, R_pqr,
    the transfer lambda, ...) when the identity defines one.
    """

    name: str
    params: dict[str, Any] = field(default_factory=dict)
    max_residual: float = 0.0
    tolerance: float = 0.0
    constant: complex | None = None

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": self.params,
            "constant": self.constant,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
