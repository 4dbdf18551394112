"""Verification batteries: closed forms vs oracles vs optimizer.

Three batteries, all seeded and deterministic:

* oracle equivalence: the closed-form qubit reading against the exact 4x4
  joint evolution (tolerance 1e-12) and the closed-form Gaussian shifts
  against the grid evolution (tolerance 1e-6 absolute, g * delta <= 0.5);
* optimizer recovery: the numerical maximizer against the closed-form
  maxima on a (kappa, g) battery (tolerance 1e-6 relative), including the
  dominance check that the optimizer never exceeds a closed form;
* variant adjudication, plus the consistency check that the shipped
  formulas equal the adjudicated normative variants.

``inject_fault`` perturbs one closed form inside the comparisons (never in
the library) so the battery's ability to catch a wrong formula is itself
testable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .common import GaussianMeter, VanishingPostselectionError
from .gaussian import gaussian_max_shifts, gaussian_shifts
from .optimize import kappa_reading_objective, kappa_shift_objective, maximize
from .oracle import (
    ADJUDICATION_TOLERANCE,
    REJECTION_FACTOR,
    AdjudicationReport,
    adjudicate_variants,
    gaussian_grid_evolve,
    qubit_joint_evolve,
)
from .qubit import BlochVector, PureQubit, QubitDensity, density_from_bloch, pure_state
from .qubitmeter import postselected_reading, qubit_max_reading

FAULT_NAMES = ("dp-max", "dq-max", "reading-max")

KAPPA_BATTERY = (0.2, 0.5, 0.8, 1.0)
COUPLING_BATTERY = (0.03, 0.05, 0.1)


@dataclass(frozen=True)
class CheckRecord:
    section: str
    case: str
    deviation: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance

    @property
    def severity(self) -> float:
        if self.tolerance > 0.0:
            return self.deviation / self.tolerance
        return math.inf if self.deviation > 0.0 else 0.0


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    samples: int
    records: tuple[CheckRecord, ...]
    adjudication: AdjudicationReport

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def failures(self) -> tuple[CheckRecord, ...]:
        return tuple(r for r in self.records if not r.ok)

    def worst(self) -> CheckRecord:
        return max(self.records, key=lambda r: r.severity)

    def to_text(self) -> str:
        lines = [f"verification report (seed={self.seed}, samples={self.samples})"]
        sections: dict[str, list[CheckRecord]] = {}
        for r in self.records:
            sections.setdefault(r.section, []).append(r)
        for name, recs in sections.items():
            bad = [r for r in recs if not r.ok]
            status = "ok" if not bad else f"FAILED ({len(bad)}/{len(recs)})"
            peak = max(recs, key=lambda r: r.severity)
            lines.append(f"  [{status}] {name}: {len(recs)} checks, worst "
                         f"{peak.case} deviation {peak.deviation:.3e} "
                         f"(tolerance {peak.tolerance:g})")
            for r in bad:
                lines.append(f"      FAIL {r.case}: deviation {r.deviation:.3e} "
                             f"> tolerance {r.tolerance:g}")
        worst = self.worst()
        lines.append(f"  worst offender: {worst.section}/{worst.case} "
                     f"deviation {worst.deviation:.3e} (tolerance {worst.tolerance:g})")
        lines.append(self.adjudication.to_text())
        lines.append("overall: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def _random_density(rng: np.random.Generator) -> QubitDensity:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = rng.random() ** (1.0 / 3.0)
    return density_from_bloch(BlochVector(*(radius * direction)))


def _random_pure(rng: np.random.Generator) -> PureQubit:
    return pure_state(math.acos(1.0 - 2.0 * rng.random()),
                      2.0 * math.pi * rng.random())


def qubit_oracle_battery(rng: np.random.Generator, samples: int) -> list[CheckRecord]:
    """Closed-form qubit readings against the exact joint evolution."""
    worst_reading = 0.0
    worst_prob = 0.0
    produced = 0
    while produced < samples:
        rho = _random_density(rng)
        psi_f = _random_pure(rng)
        g = rng.uniform(0.01, 1.5)
        try:
            closed = postselected_reading(rho, psi_f, g)
        except VanishingPostselectionError:
            continue
        if closed.prob < 1e-4:
            continue  # division noise would swamp the 1e-12 comparison
        exact = qubit_joint_evolve(rho, psi_f, g)
        worst_reading = max(worst_reading, abs(closed.reading - exact.reading))
        worst_prob = max(worst_prob, abs(closed.prob - exact.prob))
        produced += 1
    return [
        CheckRecord("qubit-oracle", "reading", worst_reading, 1e-12),
        CheckRecord("qubit-oracle", "prob", worst_prob, 1e-12),
    ]


def gaussian_oracle_battery(rng: np.random.Generator, samples: int) -> list[CheckRecord]:
    """Closed-form Gaussian shifts against the grid evolution."""
    worst = {"dp": 0.0, "dq": 0.0, "prob": 0.0}
    produced = 0
    while produced < samples:
        delta = rng.uniform(0.5, 2.0)
        meter = GaussianMeter(delta)
        g = rng.uniform(0.02, 0.5) / delta
        rho = _random_density(rng)
        psi_f = _random_pure(rng)
        try:
            closed = gaussian_shifts(rho, psi_f, g, meter)
        except VanishingPostselectionError:
            continue
        if closed.prob < 1e-3:
            continue
        grid = gaussian_grid_evolve(rho, psi_f, g, meter)
        worst["dp"] = max(worst["dp"], abs(closed.dp_shift - grid.dp_shift))
        worst["dq"] = max(worst["dq"], abs(closed.dq_shift - grid.dq_shift))
        worst["prob"] = max(worst["prob"], abs(closed.prob - grid.prob))
        produced += 1
    return [CheckRecord("gaussian-oracle", key, dev, 1e-6)
            for key, dev in worst.items()]


def optimizer_battery(inject_fault: str | None = None) -> list[CheckRecord]:
    """Numerical maximization against the closed-form maxima."""
    if inject_fault is not None and inject_fault not in FAULT_NAMES:
        raise ValueError(f"unknown fault {inject_fault!r}, expected one of {FAULT_NAMES}")
    bump = 1.001
    meter = GaussianMeter(1.0)
    records = []
    for kappa in KAPPA_BATTERY:
        for g_over_dp in COUPLING_BATTERY:
            g = g_over_dp * meter.dp
            dp_max, dq_max = gaussian_max_shifts(kappa, g, meter)
            reading_max = qubit_max_reading(kappa, g_over_dp)
            targets = {
                "dp-max": (dp_max.value,
                           kappa_shift_objective(kappa, g, meter, "dp")),
                "dq-max": (dq_max.value,
                           kappa_shift_objective(kappa, g, meter, "dq")),
                "reading-max": (reading_max.value,
                                kappa_reading_objective(kappa, g_over_dp)),
            }
            for name, (closed, objective) in targets.items():
                if inject_fault == name:
                    closed *= bump
                numeric = abs(maximize(objective).value)
                case = f"{name} kappa={kappa:g} g={g_over_dp:g}"
                if closed == 0.0:
                    records.append(CheckRecord("optimizer", case, numeric, 1e-12))
                    continue
                records.append(CheckRecord(
                    "optimizer", case, abs(numeric - closed) / closed, 1e-6))
                overshoot = max(0.0, (numeric - closed) / closed)
                records.append(CheckRecord(
                    "optimizer", f"dominance {case}", overshoot, 1e-8))
    return records


def adjudication_battery(seed: int) -> tuple[list[CheckRecord], AdjudicationReport]:
    """Run the adjudication and check it against the shipped formulas."""
    report = adjudicate_variants(seed=seed)
    records = []
    for v in report.verdicts:
        records.append(CheckRecord("adjudication", f"{v.dispute}/normative",
                                   v.normative_worst, ADJUDICATION_TOLERANCE))
        shortfall = max(0.0, REJECTION_FACTOR * ADJUDICATION_TOLERANCE
                        - v.rejected_worst)
        records.append(CheckRecord("adjudication", f"{v.dispute}/separation",
                                   shortfall, 0.0))

    # The shipped closed forms must equal the adjudicated normative variants.
    meter = GaussianMeter(1.0)
    g = 0.3
    att = meter.coherence_factor(g)
    root = math.sqrt(1.0 - att * att)
    dev = abs(gaussian_max_shifts(1.0, g, meter)[1].value - 2.0 * g * att / root)
    records.append(CheckRecord("adjudication", "library-position-max", dev, 1e-12))
    gamma = 0.5
    coh = (1.0 - gamma) * att
    dev = abs(gaussian_max_shifts(1.0 - gamma, g, meter)[0].value
              - g / math.sqrt(1.0 - coh * coh))
    records.append(CheckRecord("adjudication", "library-momentum-max", dev, 1e-12))
    return records, report


def run_verify(seed: int = 7, samples: int = 1000,
               inject_fault: str | None = None) -> VerifyReport:
    """Run every battery and collect a deterministic report."""
    rng = np.random.default_rng(seed)
    records: list[CheckRecord] = []
    records.extend(qubit_oracle_battery(rng, samples))
    records.extend(gaussian_oracle_battery(rng, samples))
    records.extend(optimizer_battery(inject_fault=inject_fault))
    adj_records, adj_report = adjudication_battery(seed)
    records.extend(adj_records)
    return VerifyReport(seed, samples, tuple(records), adj_report)
