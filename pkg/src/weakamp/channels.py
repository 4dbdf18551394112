"""Depolarizing, phase-damping, and amplitude-damping channels on one qubit.

Each channel acts on the preselection state before the meter interaction.
The operator lists always satisfy the completeness relation
sum_k E_k^dag E_k = I; for phase damping this requires the square-root
parametrization (see ``phase_damping``), whose action on states is the
familiar map that scales the off-diagonal entries by 1 - gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qubit import IDENTITY, PAULI_X, PAULI_Y, PAULI_Z, QubitDensity

DEPOLARIZING = "depolarizing"
PHASE_DAMPING = "phase_damping"
AMPLITUDE_DAMPING = "amplitude_damping"


def _check_gamma(gamma: float) -> float:
    if not (math.isfinite(gamma) and 0.0 <= gamma <= 1.0):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma!r}")
    return float(gamma)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A qubit channel as a finite list of Kraus operators.

    ``apply`` is the normative state map.  For the depolarizing channel it
    uses the convex form gamma I/2 + (1 - gamma) rho directly; the stored
    four-operator set realizes the same map and exists so the completeness
    relation can be checked uniformly.
    """

    name: str
    gamma: float
    operators: tuple[np.ndarray, ...]

    def apply(self, rho: QubitDensity) -> QubitDensity:
        if self.name == DEPOLARIZING:
            g = self.gamma
            return QubitDensity(
                0.5 * g + (1.0 - g) * rho.rho00,
                (1.0 - g) * rho.rho01,
                (1.0 - g) * rho.rho10,
                0.5 * g + (1.0 - g) * rho.rho11,
            )
        return self.apply_kraus(rho)

    def apply_kraus(self, rho: QubitDensity) -> QubitDensity:
        """Explicit operator sum sum_k E_k rho E_k^dag."""
        m = rho.matrix
        out = np.zeros((2, 2), dtype=complex)
        for e in self.operators:
            out += e @ m @ e.conj().T
        # Symmetrize away rounding dust so the result validates cleanly.
        out = 0.5 * (out + out.conj().T)
        return QubitDensity.from_matrix(out)

    def completeness_defect(self) -> float:
        """Largest entrywise deviation of sum_k E_k^dag E_k from identity."""
        acc = np.zeros((2, 2), dtype=complex)
        for e in self.operators:
            acc += e.conj().T @ e
        return float(np.max(np.abs(acc - IDENTITY)))


def depolarizing(gamma: float) -> KrausChannel:
    """Channel that replaces the state with I/2 with probability gamma."""
    gamma = _check_gamma(gamma)
    ops = (
        math.sqrt(1.0 - 0.75 * gamma) * IDENTITY,
        math.sqrt(0.25 * gamma) * PAULI_X,
        math.sqrt(0.25 * gamma) * PAULI_Y,
        math.sqrt(0.25 * gamma) * PAULI_Z,
    )
    return KrausChannel(DEPOLARIZING, gamma, ops)


def phase_damping(gamma: float) -> KrausChannel:
    """Dephasing that multiplies off-diagonal entries by 1 - gamma.

    The trace-preserving pair uses lam = 1 - (1 - gamma)^2, i.e.
    E_0 = diag(1, sqrt(1 - lam)), E_1 = diag(0, sqrt(lam)), which induces
    exactly the (1 - gamma) coherence factor on states.
    """
    gamma = _check_gamma(gamma)
    lam = 1.0 - (1.0 - gamma) ** 2
    e0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - lam)]], dtype=complex)
    e1 = np.array([[0.0, 0.0], [0.0, math.sqrt(lam)]], dtype=complex)
    return KrausChannel(PHASE_DAMPING, gamma, (e0, e1))


def amplitude_damping(gamma: float) -> KrausChannel:
    """Decay toward |0> with excited-state loss probability gamma."""
    gamma = _check_gamma(gamma)
    e0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]], dtype=complex)
    e1 = np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return KrausChannel(AMPLITUDE_DAMPING, gamma, (e0, e1))


def apply(channel: KrausChannel, rho: QubitDensity) -> QubitDensity:
    """Function form of ``channel.apply(rho)``."""
    return channel.apply(rho)
