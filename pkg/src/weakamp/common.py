"""Shared value types, tolerances, and error classes."""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Conditional readings are undefined below this postselection probability.
PROB_FLOOR = 1e-12


class VanishingPostselectionError(ValueError):
    """Postselection probability too small for a conditional reading."""

    def __init__(self, prob: float):
        super().__init__(
            f"postselection probability {prob:.3e} is below the usable floor"
        )
        self.prob = prob


class SingularLimitError(ValueError):
    """The closed-form maximum diverges at this parameter combination."""


class GridTooSmallError(ValueError):
    """The position grid does not contain the meter wavefunction."""


@dataclass(frozen=True)
class GaussianMeter:
    """Minimum-uncertainty Gaussian pointer centered at q = p = 0.

    ``delta`` is the position standard deviation.  The momentum spread is
    fixed by the uncertainty relation (hbar = 1), so dq * dp = 1/2.
    """

    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise ValueError(f"delta must be positive and finite, got {self.delta!r}")

    @property
    def dq(self) -> float:
        return self.delta

    @property
    def dp(self) -> float:
        return 1.0 / (2.0 * self.delta)

    def coherence_factor(self, g: float) -> float:
        """Overlap exp(-2 delta^2 g^2) between the two momentum-kicked branches."""
        return math.exp(-2.0 * (self.delta * g) ** 2)


@dataclass(frozen=True)
class ShiftResult:
    """Conditional pointer shifts plus the postselection probability."""

    dp_shift: float
    dq_shift: float
    prob: float


@dataclass(frozen=True)
class QubitMeterReading:
    """Expectation of the meter excited-state projector, with postselection probability."""

    reading: float
    prob: float


@dataclass(frozen=True)
class MaxResult:
    """A maximal |shift| or reading and preselection/postselection angles attaining it.

    ``theta1``/``phi0`` describe the preselection direction, ``theta2`` the
    postselection state (its azimuth is absorbed into the relative phase
    ``phi0``).
    """

    value: float
    theta1: float
    theta2: float
    phi0: float
