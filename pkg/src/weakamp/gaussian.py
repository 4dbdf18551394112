"""Conditional pointer shifts and maxima for the Gaussian position meter.

One formula covers every preselection state: the shifts depend on the
(possibly noisy) preselection only through its density-matrix entries, so
noise channels stay out of this module entirely.  With E = exp(-2 delta^2 g^2)
and w = alpha2 * conj(beta2):

    Pro  = rho00 |alpha2|^2 + rho11 |beta2|^2 + 2 E Re(rho10 w)
    dp'  = g (rho00 |alpha2|^2 - rho11 |beta2|^2) / Pro
    dq'  = 4 g delta^2 E Im(rho10 w) / Pro
"""

from __future__ import annotations

import math

from .common import (
    PROB_FLOOR,
    GaussianMeter,
    MaxResult,
    ShiftResult,
    SingularLimitError,
    VanishingPostselectionError,
)
from .qubit import PureQubit, QubitDensity


def _check_coupling(g: float) -> float:
    if not (math.isfinite(g) and g >= 0.0):
        raise ValueError(f"coupling must be finite and non-negative, got {g!r}")
    return float(g)


def gaussian_shifts(rho_s: QubitDensity, psi_f: PureQubit, g: float,
                    meter: GaussianMeter) -> ShiftResult:
    """Momentum and position shifts of the pointer conditioned on postselection.

    Raises VanishingPostselectionError when the postselection probability
    falls below PROB_FLOOR.
    """
    g = _check_coupling(g)
    att = meter.coherence_factor(g)
    u2 = abs(psi_f.alpha) ** 2
    v2 = 1.0 - u2
    w = psi_f.alpha * psi_f.beta.conjugate()
    cross = rho_s.rho10 * w
    prob = rho_s.rho00.real * u2 + rho_s.rho11.real * v2 + 2.0 * att * cross.real
    if prob <= PROB_FLOOR:
        raise VanishingPostselectionError(prob)
    dp = g * (rho_s.rho00.real * u2 - rho_s.rho11.real * v2) / prob
    dq = 4.0 * g * meter.delta ** 2 * att * cross.imag / prob
    return ShiftResult(dp, dq, prob)


def gaussian_max_shifts(kappa: float, g: float,
                        meter: GaussianMeter) -> tuple[MaxResult, MaxResult]:
    """Maximal |dp'| and |dq'| over all preselection/postselection pairs.

    ``kappa`` is the surviving coherence of the preselection family: the
    Bloch modulus of a depolarized pure state, or the off-diagonal factor
    1 - gamma left by dephasing.  With E = exp(-2 delta^2 g^2):

        |dp'|_max = g / sqrt(1 - kappa^2 E^2)
        |dq'|_max = 2 kappa g delta^2 E / sqrt(1 - kappa^2 E^2)

    The returned angles attain the maxima: the momentum branch at
    theta1 = pi/2, sin(theta2) = kappa E, phi0 = pi (the mirror branch
    theta2 -> pi - theta2 negates the shift), the position branch at
    theta1 = theta2 = pi/2, cos(phi0) = -kappa E.
    """
    if not (math.isfinite(kappa) and 0.0 <= kappa <= 1.0):
        raise ValueError(f"kappa must lie in [0, 1], got {kappa!r}")
    g = _check_coupling(g)
    att = meter.coherence_factor(g)
    ke = kappa * att
    under = 1.0 - ke * ke
    if under <= 0.0:
        raise SingularLimitError(
            "maximum shift diverges at full coherence and zero coupling"
        )
    root = math.sqrt(under)
    dp_max = MaxResult(
        value=g / root,
        theta1=0.5 * math.pi,
        theta2=math.asin(ke),
        phi0=math.pi,
    )
    dq_max = MaxResult(
        value=2.0 * kappa * g * meter.delta ** 2 * att / root,
        theta1=0.5 * math.pi,
        theta2=0.5 * math.pi,
        phi0=math.acos(-ke),
    )
    return dp_max, dq_max
