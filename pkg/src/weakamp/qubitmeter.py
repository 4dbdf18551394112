"""Readings of the discrete qubit meter.

The meter starts in |0> and is rotated by exp(i g sigma_z x sigma_x); the
recorded observable is the excited-state projector |1><1|.  The e^{+-ig}
phases are exact, so readings reduce to closed trigonometric forms.  As in
the Gaussian case, one formula covers arbitrary preselection states:

    Pro  = rho00 |alpha2|^2 + rho11 |beta2|^2 + 2 cos(2g) Re(rho10 w)
    <O>' = sin^2(g) (rho00 |alpha2|^2 + rho11 |beta2|^2 - 2 Re(rho10 w)) / Pro

with w = alpha2 * conj(beta2).
"""

from __future__ import annotations

import math

from .common import (
    PROB_FLOOR,
    MaxResult,
    QubitMeterReading,
    SingularLimitError,
    VanishingPostselectionError,
)
from .qubit import PureQubit, QubitDensity


def ordinary_reading(g: float) -> float:
    """Reading without postselection: sin^2(g), independent of the system state."""
    if not (math.isfinite(g) and g >= 0.0):
        raise ValueError(f"coupling must be finite and non-negative, got {g!r}")
    return math.sin(g) ** 2


def postselected_reading(rho_s: QubitDensity, psi_f: PureQubit,
                         g: float) -> QubitMeterReading:
    """Reading conditioned on postselecting the system onto ``psi_f``."""
    if not (math.isfinite(g) and g >= 0.0):
        raise ValueError(f"coupling must be finite and non-negative, got {g!r}")
    u2 = abs(psi_f.alpha) ** 2
    v2 = 1.0 - u2
    w = psi_f.alpha * psi_f.beta.conjugate()
    cross = (rho_s.rho10 * w).real
    base = rho_s.rho00.real * u2 + rho_s.rho11.real * v2
    prob = base + 2.0 * math.cos(2.0 * g) * cross
    if prob <= PROB_FLOOR:
        raise VanishingPostselectionError(prob)
    reading = math.sin(g) ** 2 * (base - 2.0 * cross) / prob
    return QubitMeterReading(reading, prob)


def qubit_max_reading(kappa: float, g: float) -> MaxResult:
    """Maximal postselected reading over all preselection/postselection pairs.

    ``kappa`` is the surviving coherence (Bloch modulus of a depolarized
    pure state, or 1 - gamma under dephasing):

        max = (1 + kappa) sin^2(g) / ((1 - kappa) + 2 kappa sin^2(g))

    attained at orthogonal equatorial states: theta1 = theta2 = pi/2,
    phi0 = pi.  At kappa = 1 the maximum is 1 for any g > 0.
    """
    if not (math.isfinite(kappa) and 0.0 <= kappa <= 1.0):
        raise ValueError(f"kappa must lie in [0, 1], got {kappa!r}")
    if not (math.isfinite(g) and g >= 0.0):
        raise ValueError(f"coupling must be finite and non-negative, got {g!r}")
    s2 = math.sin(g) ** 2
    denom = (1.0 - kappa) + 2.0 * kappa * s2
    if denom == 0.0:
        raise SingularLimitError(
            "maximum reading is undefined at full coherence and zero coupling"
        )
    return MaxResult(
        value=(1.0 + kappa) * s2 / denom,
        theta1=0.5 * math.pi,
        theta2=0.5 * math.pi,
        phi0=math.pi,
    )
