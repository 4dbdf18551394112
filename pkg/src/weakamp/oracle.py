"""Brute-force joint-evolution references used to validate every closed form.

Two oracles, both built from the impulse interaction only:

* ``qubit_joint_evolve``: exact 4x4 evolution of system x qubit meter.  The
  coupling generator squares to the identity, so the propagator is
  cos(g) I + i sin(g) (sigma_z x sigma_x) with no approximation.
* ``gaussian_grid_evolve``: the Gaussian pointer on a position grid.  The
  interaction is diagonal in the system basis, so the meter splits into two
  branches Phi(q) exp(+-i g q); position moments come from quadrature and
  momentum moments from a spectral (FFT) derivative.

Nothing here calls the closed-form meter modules; agreement between the two
routes is what the verification batteries check.  ``adjudicate_variants``
additionally pits disputed formula variants (transcribed locally) against
these oracles to decide which variant is normative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .common import (
    PROB_FLOOR,
    GaussianMeter,
    GridTooSmallError,
    QubitMeterReading,
    ShiftResult,
    VanishingPostselectionError,
)
from .optimize import maximize
from .qubit import PAULI_X, PAULI_Z, BlochVector, PureQubit, QubitDensity, density_from_bloch, pure_state


# ---------------------------------------------------------------------------
# Exact qubit-meter oracle
# ---------------------------------------------------------------------------


def _check_coupling(g: float) -> float:
    if not (math.isfinite(g) and g >= 0.0):
        raise ValueError(f"coupling must be finite and non-negative, got {g!r}")
    return float(g)


def _joint_evolved(rho_s: QubitDensity, g: float) -> np.ndarray:
    """Evolved system x meter density matrix, meter starting in |0>."""
    propagator = math.cos(g) * np.eye(4, dtype=complex) \
        + 1j * math.sin(g) * np.kron(PAULI_Z, PAULI_X)
    meter0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    joint = np.kron(rho_s.matrix, meter0)
    return propagator @ joint @ propagator.conj().T


def qubit_meter_marginal(rho_s: QubitDensity, g: float) -> np.ndarray:
    """Reduced meter state after the interaction, no postselection."""
    g = _check_coupling(g)
    evolved = _joint_evolved(rho_s, g).reshape(2, 2, 2, 2)
    return np.einsum("smsn->mn", evolved)


def qubit_joint_evolve(rho_s: QubitDensity, psi_f: PureQubit | None,
                       g: float) -> QubitMeterReading:
    """Meter reading from the exact joint evolution.

    With ``psi_f`` the system is projected onto it and the reading is
    conditional; without it the plain marginal reading is returned with
    probability 1.
    """
    g = _check_coupling(g)
    evolved = _joint_evolved(rho_s, g).reshape(2, 2, 2, 2)
    if psi_f is None:
        meter = np.einsum("smsn->mn", evolved)
        prob = 1.0
    else:
        amps = psi_f.amplitudes()
        meter = np.einsum("s,smtn,t->mn", amps.conj(), evolved, amps)
        prob = float(np.trace(meter).real)
        if prob <= 1e-300:
            raise VanishingPostselectionError(prob)
        meter = meter / prob
    return QubitMeterReading(float(meter[1, 1].real), prob)


# ---------------------------------------------------------------------------
# Gaussian grid oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PositionGrid:
    """Uniform symmetric position grid for the pointer wavefunction."""

    half_width: float
    points: int = 4096

    def __post_init__(self):
        if not (math.isfinite(self.half_width) and self.half_width > 0):
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")
        if self.points < 16 or self.points & (self.points - 1):
            raise ValueError(f"points must be a power of two >= 16, got {self.points}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    def positions(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.points)


def default_grid(meter: GaussianMeter, g: float) -> PositionGrid:
    """Grid covering the envelope tails and the phase oscillations."""
    return PositionGrid(10.0 * meter.delta + 4.0 * g * meter.delta ** 2, 4096)


@lru_cache(maxsize=None)
def _branch_moments(g: float, delta: float, half_width: float, points: int):
    """Norm, position, and momentum moments between the two meter branches.

    Returns three 2x2 complex arrays N, Q, P with
    N[j, l] = <Phi_l|Phi_j>, Q[j, l] = <Phi_l|q|Phi_j>, P[j, l] = <Phi_l|p|Phi_j>
    where Phi_0/Phi_1 are the envelope times exp(+igq)/exp(-igq).
    """
    grid = PositionGrid(half_width, points)
    q = grid.positions()
    dx = grid.spacing
    envelope = (2.0 * math.pi * delta ** 2) ** -0.25 * np.exp(-q ** 2 / (4.0 * delta ** 2))
    norm = dx * float(np.sum(envelope ** 2))
    if abs(norm - 1.0) > 1e-6:
        raise GridTooSmallError(
            f"grid loses {abs(norm - 1.0):.2e} of the wavefunction norm"
        )
    branches = (envelope * np.exp(1j * g * q), envelope * np.exp(-1j * g * q))
    wavenumbers = 2.0 * math.pi * np.fft.fftfreq(points, d=dx)
    momentum = tuple(np.fft.ifft(wavenumbers * np.fft.fft(b)) for b in branches)
    n_mat = np.empty((2, 2), dtype=complex)
    q_mat = np.empty((2, 2), dtype=complex)
    p_mat = np.empty((2, 2), dtype=complex)
    for j in range(2):
        for l in range(2):
            n_mat[j, l] = dx * np.vdot(branches[l], branches[j])
            q_mat[j, l] = dx * np.vdot(branches[l], q * branches[j])
            p_mat[j, l] = dx * np.vdot(branches[l], momentum[j])
    return n_mat, q_mat, p_mat


def _coefficients(rho_s: QubitDensity, psi_f: PureQubit) -> np.ndarray:
    """Branch-pair weights c[j, l] = rho[j, l] conj(psi_f[j]) psi_f[l]."""
    amps = psi_f.amplitudes()
    return rho_s.matrix * np.outer(amps.conj(), amps)


def gaussian_grid_evolve(rho_s: QubitDensity, psi_f: PureQubit, g: float,
                         meter: GaussianMeter,
                         grid: PositionGrid | None = None) -> ShiftResult:
    """Pointer shifts from the gridded branch evolution.

    Valid in the resolved-coupling regime g * delta <= 1.  Raises
    GridTooSmallError when the envelope does not fit on the grid and
    VanishingPostselectionError below the probability floor.
    """
    g = _check_coupling(g)
    if g * meter.delta > 1.0 + 1e-12:
        raise ValueError(f"grid oracle requires g * delta <= 1, got {g * meter.delta}")
    if grid is None:
        grid = default_grid(meter, g)
    if grid.half_width < 8.0 * meter.delta:
        raise GridTooSmallError(
            f"half_width {grid.half_width} covers fewer than 8 position deviations"
        )
    n_mat, q_mat, p_mat = _branch_moments(g, meter.delta, grid.half_width, grid.points)
    coeff = _coefficients(rho_s, psi_f)
    prob = float(np.sum(coeff * n_mat).real)
    if prob <= PROB_FLOOR:
        raise VanishingPostselectionError(prob)
    q_mean = float(np.sum(coeff * q_mat).real) / prob
    p_mean = float(np.sum(coeff * p_mat).real) / prob
    # Initial means are zero, so the conditional means are the shifts.
    return ShiftResult(p_mean, q_mean, prob)


# ---------------------------------------------------------------------------
# Variant adjudication
# ---------------------------------------------------------------------------

#: A variant agreeing with the oracle must stay within this deviation.
ADJUDICATION_TOLERANCE = 1e-6
#: ...and the rejected variant must exceed tolerance by this factor somewhere.
REJECTION_FACTOR = 10.0


@dataclass(frozen=True)
class AdjudicationEntry:
    dispute: str
    variant: str
    input_id: str
    deviation: float


@dataclass(frozen=True)
class DisputeVerdict:
    dispute: str
    normative_variant: str
    rejected_variant: str
    normative_worst: float
    rejected_worst: float

    @property
    def confirmed(self) -> bool:
        return (self.normative_worst < ADJUDICATION_TOLERANCE
                and self.rejected_worst >= REJECTION_FACTOR * ADJUDICATION_TOLERANCE)

    @property
    def conclusive(self) -> bool:
        worst = max(self.normative_worst, self.rejected_worst)
        return worst >= REJECTION_FACTOR * ADJUDICATION_TOLERANCE


@dataclass(frozen=True)
class AdjudicationReport:
    seed: int
    entries: tuple[AdjudicationEntry, ...]
    verdicts: tuple[DisputeVerdict, ...]

    @property
    def all_confirmed(self) -> bool:
        return all(v.confirmed for v in self.verdicts)

    def to_text(self) -> str:
        lines = [
            f"variant adjudication (seed={self.seed}, "
            f"tolerance={ADJUDICATION_TOLERANCE:g}, "
            f"rejection factor={REJECTION_FACTOR:g})",
        ]
        for v in self.verdicts:
            status = "confirmed" if v.confirmed else (
                "inconclusive" if not v.conclusive else "FAILED")
            lines.append(f"  [{status}] {v.dispute}: keep '{v.normative_variant}' "
                         f"(worst {v.normative_worst:.3e}), reject "
                         f"'{v.rejected_variant}' (worst {v.rejected_worst:.3e})")
        return "\n".join(lines)

    def csv_rows(self) -> list[str]:
        rows = ["variant,input_id,deviation"]
        for e in self.entries:
            rows.append(f"{e.dispute}/{e.variant},{e.input_id},{e.deviation:.17g}")
        return rows

    def write_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(self.csv_rows()) + "\n")


def _random_density(rng: np.random.Generator) -> QubitDensity:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = rng.random() ** (1.0 / 3.0)
    return density_from_bloch(BlochVector(*(radius * direction)))


def _random_pure(rng: np.random.Generator) -> PureQubit:
    return pure_state(math.acos(1.0 - 2.0 * rng.random()),
                      2.0 * math.pi * rng.random())


def _mixed_entries(kappa: float):
    half_mix = 0.5 * (1.0 - kappa)

    def entries(t1: float, p0: float):
        ch, sh = math.cos(0.5 * t1), math.sin(0.5 * t1)
        half_perp = kappa * sh * ch
        return (half_mix + kappa * ch * ch, half_mix + kappa * sh * sh,
                half_perp * math.cos(p0), half_perp * math.sin(p0))
    return entries


def _dephased_entries(gamma: float):
    def entries(t1: float, p0: float):
        ch, sh = math.cos(0.5 * t1), math.sin(0.5 * t1)
        half_perp = (1.0 - gamma) * sh * ch
        return (ch * ch, sh * sh,
                half_perp * math.cos(p0), half_perp * math.sin(p0))
    return entries


def _oracle_shift_objective(entries, g: float, meter: GaussianMeter, which: str):
    """Shift objective whose moments come from the grid, not a closed form."""
    grid = default_grid(meter, g)
    n_mat, q_mat, p_mat = _branch_moments(g, meter.delta, grid.half_width, grid.points)
    moment = q_mat if which == "dq" else p_mat
    n10 = n_mat[1, 0]
    m00, m11 = moment[0, 0].real, moment[1, 1].real
    m10, m01 = moment[1, 0], moment[0, 1]

    def f(t1: float, t2: float, p0: float) -> float:
        rho00, rho11, re10, im10 = entries(t1, p0)
        ch, sh = math.cos(0.5 * t2), math.sin(0.5 * t2)
        u2 = ch * ch
        v2 = sh * sh
        c10 = complex(re10, im10) * (sh * ch)
        prob = rho00 * u2 + rho11 * v2 + 2.0 * (c10 * n10).real
        if prob <= PROB_FLOOR:
            return 0.0
        value = rho00 * u2 * m00 + rho11 * v2 * m11 \
            + (c10 * m10 + c10.conjugate() * m01).real
        return value / prob

    return f


def adjudicate_variants(seed: int = 7, pointwise_samples: int = 40,
                        optimizer_grid_n: int = 32) -> AdjudicationReport:
    """Decide disputed formula variants against the oracles.

    Three disputes are evaluated on a seeded input battery:

    1. whether the conditional position shift (and its maximum) carries the
       branch-overlap factor exp(-2 delta^2 g^2);
    2. whether the maximal momentum shift under dephasing attenuates the
       coherence linearly or quadratically inside the square root;
    3. whether the dephased qubit-meter reading numerator weighs the
       postselection ground amplitude or repeats the excited one.

    Deviations of both variants from the oracle are recorded per input; a
    dispute is confirmed when the normative variant stays within tolerance
    while the rejected one exceeds ten times the tolerance somewhere.
    """
    rng = np.random.default_rng(seed)
    meter = GaussianMeter(1.0)
    entries: list[AdjudicationEntry] = []
    verdicts: list[DisputeVerdict] = []

    def record(dispute, variant, input_id, deviation):
        entries.append(AdjudicationEntry(dispute, variant, input_id, float(deviation)))

    def verdict(dispute, normative, rejected):
        devs = {}
        for e in entries:
            if e.dispute == dispute:
                devs.setdefault(e.variant, []).append(e.deviation)
        verdicts.append(DisputeVerdict(dispute, normative, rejected,
                                       max(devs[normative]), max(devs[rejected])))

    # -- dispute 1: attenuation factor in the position shift ----------------
    dispute = "position-shift-attenuation"
    produced = 0
    attempts = 0
    while produced < pointwise_samples and attempts < 100 * pointwise_samples:
        attempts += 1
        rho = _random_density(rng)
        psi_f = _random_pure(rng)
        g = rng.uniform(0.15, 0.5)
        try:
            oracle = gaussian_grid_evolve(rho, psi_f, g, meter)
        except VanishingPostselectionError:
            continue
        if oracle.prob < 1e-2 or abs(oracle.dq_shift) < 1e-3:
            continue
        att = meter.coherence_factor(g)
        u2 = abs(psi_f.alpha) ** 2
        w = psi_f.alpha * psi_f.beta.conjugate()
        cross = rho.rho10 * w
        prob = rho.rho00.real * u2 + rho.rho11.real * (1.0 - u2) \
            + 2.0 * att * cross.real
        dq_with = 4.0 * g * att * cross.imag / prob
        dq_without = 4.0 * g * cross.imag / prob
        record(dispute, "attenuated", f"point-{produced:03d}",
               abs(dq_with - oracle.dq_shift))
        record(dispute, "unattenuated", f"point-{produced:03d}",
               abs(dq_without - oracle.dq_shift))
        produced += 1

    max_inputs = [(1.0, 0.3)] + [(rng.uniform(0.5, 1.0), rng.uniform(0.15, 0.45))
                                 for _ in range(2)]
    for i, (kappa, g) in enumerate(max_inputs):
        objective = _oracle_shift_objective(_mixed_entries(kappa), g, meter, "dq")
        oracle_max = abs(maximize(objective, grid_n=optimizer_grid_n).value)
        att = meter.coherence_factor(g)
        root = math.sqrt(1.0 - (kappa * att) ** 2)
        record(dispute, "attenuated", f"max-{i:03d}",
               abs(2.0 * kappa * g * att / root - oracle_max))
        record(dispute, "unattenuated", f"max-{i:03d}",
               abs(2.0 * kappa * g / root - oracle_max))
    verdict(dispute, "attenuated", "unattenuated")

    # -- dispute 2: coherence power in the dephased momentum maximum --------
    dispute = "dephased-momentum-max"
    max_inputs = [(0.5, 0.3)] + [(rng.uniform(0.2, 0.8), rng.uniform(0.15, 0.45))
                                 for _ in range(2)]
    for i, (gamma, g) in enumerate(max_inputs):
        objective = _oracle_shift_objective(_dephased_entries(gamma), g, meter, "dp")
        oracle_max = abs(maximize(objective, grid_n=optimizer_grid_n).value)
        coh = (1.0 - gamma) * meter.coherence_factor(g)
        squared = g / math.sqrt(1.0 - coh * coh)
        unsquared = g / math.sqrt(1.0 - (1.0 - gamma) * meter.coherence_factor(g) ** 2)
        record(dispute, "squared-coherence", f"max-{i:03d}", abs(squared - oracle_max))
        record(dispute, "unsquared-coherence", f"max-{i:03d}", abs(unsquared - oracle_max))
    verdict(dispute, "squared-coherence", "unsquared-coherence")

    # -- dispute 3: dephased qubit-meter reading numerator -------------------
    dispute = "dephased-reading-numerator"
    from .channels import phase_damping  # local import keeps module deps one-way

    pinned = (2.0, 0.5, 1.2, 4.0, 0.4, 0.3)
    cases = [pinned]
    while len(cases) < pointwise_samples:
        cases.append((math.acos(1.0 - 2.0 * rng.random()), 2.0 * math.pi * rng.random(),
                      math.acos(1.0 - 2.0 * rng.random()), 2.0 * math.pi * rng.random(),
                      rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.6)))
    produced = 0
    for theta1, phi1, theta2, phi2, gamma, g in cases:
        psi_i = pure_state(theta1, phi1)
        psi_f = pure_state(theta2, phi2)
        rho = phase_damping(gamma).apply(psi_i.density())
        try:
            oracle = qubit_joint_evolve(rho, psi_f, g)
        except VanishingPostselectionError:
            continue
        if oracle.prob < 1e-3:
            continue
        a1sq = abs(psi_i.alpha) ** 2
        b1sq = 1.0 - a1sq
        a2sq = abs(psi_f.alpha) ** 2
        b2sq = 1.0 - a2sq
        cross = (psi_i.alpha.conjugate() * psi_i.beta
                 * psi_f.alpha * psi_f.beta.conjugate()).real
        denom = a1sq * a2sq + b1sq * b2sq \
            + 2.0 * (1.0 - gamma) * cross * math.cos(2.0 * g)
        s2 = math.sin(g) ** 2
        corrected = (a1sq * a2sq + b1sq * b2sq - 2.0 * (1.0 - gamma) * cross) * s2 / denom
        printed = (a1sq * b2sq + b1sq * b2sq - 2.0 * (1.0 - gamma) * cross) * s2 / denom
        record(dispute, "ground-weighted", f"point-{produced:03d}",
               abs(corrected - oracle.reading))
        record(dispute, "printed", f"point-{produced:03d}",
               abs(printed - oracle.reading))
        produced += 1
    verdict(dispute, "ground-weighted", "printed")

    return AdjudicationReport(seed, tuple(entries), tuple(verdicts))
