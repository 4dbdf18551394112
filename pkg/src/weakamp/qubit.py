"""Single-qubit state algebra: pure-state angles, density matrices, Bloch vectors.

Every matrix in this package is written in the eigenbasis of the measured
system observable, so the measurement axis itself never needs to be stored.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

#: Tolerance for algebraic identities (hermiticity, trace, normalization).
ATOL = 1e-12

TWO_PI = 2.0 * math.pi

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def _canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    # Fold theta into [0, pi]; crossing a pole flips the azimuth by pi.
    theta = theta % TWO_PI
    if theta > math.pi:
        theta = TWO_PI - theta
        phi = phi + math.pi
    phi = phi % TWO_PI
    # At the poles the azimuth is pure gauge; pin it to zero.
    if theta == 0.0 or theta == math.pi:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True)
class PureQubit:
    """Pure state cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>.

    Angles are canonicalized on construction: theta in [0, pi], phi in
    [0, 2 pi).  The leading amplitude is therefore real and non-negative;
    at theta = pi the remaining amplitude is real and positive.
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError(f"angles must be finite, got ({self.theta!r}, {self.phi!r})")
        theta, phi = _canonical_angles(self.theta, self.phi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def alpha(self) -> complex:
        return complex(math.cos(0.5 * self.theta))

    @property
    def beta(self) -> complex:
        return cmath.exp(1j * self.phi) * math.sin(0.5 * self.theta)

    def amplitudes(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    def density(self) -> "QubitDensity":
        a, b = self.alpha, self.beta
        return QubitDensity(a * a.conjugate(), a * b.conjugate(),
                            b * a.conjugate(), b * b.conjugate())

    def bloch(self) -> "BlochVector":
        s, c = math.sin(self.theta), math.cos(self.theta)
        return BlochVector(s * math.cos(self.phi), s * math.sin(self.phi), c)


def pure_state(theta: float, phi: float) -> PureQubit:
    """Pure qubit state from polar/azimuthal angles (canonicalized)."""
    return PureQubit(theta, phi)


@dataclass(frozen=True)
class BlochVector:
    """Point in the closed unit ball representing a qubit density matrix."""

    rx: float
    ry: float
    rz: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.rx, self.ry, self.rz))):
            raise ValueError("Bloch components must be finite")
        if self.modulus > 1.0 + ATOL:
            raise ValueError(f"Bloch modulus {self.modulus} exceeds 1")

    @property
    def modulus(self) -> float:
        return math.sqrt(self.rx ** 2 + self.ry ** 2 + self.rz ** 2)


@dataclass(frozen=True)
class QubitDensity:
    """2x2 density matrix in the observable eigenbasis.

    Construction validates hermiticity, unit trace, and positive
    semidefiniteness to within ``ATOL``.
    """

    rho00: complex
    rho01: complex
    rho10: complex
    rho11: complex

    def __post_init__(self):
        entries = (self.rho00, self.rho01, self.rho10, self.rho11)
        if not all(math.isfinite(z.real) and math.isfinite(z.imag)
                   for z in map(complex, entries)):
            raise ValueError("density matrix entries must be finite")
        object.__setattr__(self, "rho00", complex(self.rho00))
        object.__setattr__(self, "rho01", complex(self.rho01))
        object.__setattr__(self, "rho10", complex(self.rho10))
        object.__setattr__(self, "rho11", complex(self.rho11))
        if abs(self.rho00.imag) > ATOL or abs(self.rho11.imag) > ATOL:
            raise ValueError("diagonal entries must be real")
        if abs(self.rho01 - self.rho10.conjugate()) > ATOL:
            raise ValueError("matrix is not Hermitian")
        if abs(self.rho00.real + self.rho11.real - 1.0) > ATOL:
            raise ValueError("trace must equal 1")
        det = self.rho00.real * self.rho11.real - (self.rho01 * self.rho10).real
        if self.rho00.real < -ATOL or self.rho11.real < -ATOL or det < -ATOL:
            raise ValueError("matrix is not positive semidefinite")

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "QubitDensity":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.rho00, self.rho01], [self.rho10, self.rho11]],
                        dtype=complex)

    def expectation(self, psi: PureQubit) -> float:
        """<psi| rho |psi>, real by hermiticity."""
        v = psi.amplitudes()
        return float(np.vdot(v, self.matrix @ v).real)


def density_from_bloch(v: BlochVector) -> QubitDensity:
    """Density matrix (I + r . sigma) / 2 for a Bloch vector in the unit ball."""
    return QubitDensity(0.5 * (1.0 + v.rz), 0.5 * (v.rx - 1j * v.ry),
                        0.5 * (v.rx + 1j * v.ry), 0.5 * (1.0 - v.rz))


def bloch_from_density(rho: QubitDensity) -> BlochVector:
    return BlochVector(2.0 * rho.rho01.real, -2.0 * rho.rho01.imag,
                       rho.rho00.real - rho.rho11.real)


class Decomposition(NamedTuple):
    """Convex split rho = (1 - r) I/2 + r |psi><psi|.

    ``degenerate`` marks the maximally mixed input, where the direction is a
    convention (|0> is returned).
    """

    modulus: float
    state: PureQubit
    degenerate: bool


def decompose(rho: QubitDensity) -> Decomposition:
    """Split a density matrix into its mixed part and a pure direction."""
    v = bloch_from_density(rho)
    r = v.modulus
    if r == 0.0:
        return Decomposition(0.0, pure_state(0.0, 0.0), True)
    # atan2 stays well-conditioned near the poles, where acos(rz / r) would
    # round a tiny transverse component away entirely.
    theta = math.atan2(math.hypot(v.rx, v.ry), v.rz)
    phi = math.atan2(v.ry, v.rx) % TWO_PI
    return Decomposition(r, pure_state(theta, phi), False)


def overlap(a: PureQubit, b: PureQubit) -> complex:
    """Inner product <a|b>."""
    return complex(a.alpha.conjugate() * b.alpha + a.beta.conjugate() * b.beta)
