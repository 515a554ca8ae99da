"""Oscillator parameters and parity sector labels."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DomainError


class Parity(enum.IntEnum):
    """Eigenvalue s of the reflection operator: R psi = s psi."""

    EVEN = 1
    ODD = -1

    @property
    def s(self) -> int:
        return int(self)

    @classmethod
    def from_name(cls, name: str) -> "Parity":
        try:
            return {"even": cls.EVEN, "odd": cls.ODD}[name.lower()]
        except KeyError:
            raise DomainError(f"unknown parity {name!r}, expected 'even' or 'odd'") from None


EVEN = Parity.EVEN
ODD = Parity.ODD


@dataclass(frozen=True)
class OscillatorParams:
    """Mass, frequency and Wigner parameter (hbar = c = 1).

    mu > -1/2 is required for the weight |x|^{2 mu} to be integrable at
    the origin; nothing downstream is meaningful outside that range.
    """

    m: float = 1.0
    omega: float = 1.0
    mu: float = 0.0

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"mass must be positive, got {self.m}")
        if not self.omega > 0:
            raise DomainError(f"frequency must be positive, got {self.omega}")
        if not self.mu > -0.5:
            raise DomainError(f"Wigner parameter must exceed -1/2, got {self.mu}")

    @property
    def r(self) -> float:
        """Frequency-to-mass ratio omega/m."""
        return self.omega / self.m

    @classmethod
    def from_r(cls, r: float, mu: float = 0.0) -> "OscillatorParams":
        """Reduced-unit constructor: m = 1, omega = r."""
        return cls(m=1.0, omega=float(r), mu=mu)
