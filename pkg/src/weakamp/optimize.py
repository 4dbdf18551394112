"""Deterministic global maximization over preselection/postselection angles.

The search domain is (theta1, theta2, phi0) in [0, pi]^2 x [0, 2 pi): the two
polar angles plus the single relative phase the conditional shifts depend on.
``maximize`` runs a dense coarse grid followed by cyclic line-search
refinement (scan + golden section along the coordinates and polar diagonals),
maximizing |objective|.  Two extra stages handle the hard geometry of the
amplitude-damping objectives, whose supremum is approached along a narrow
oblique valley into a domain corner where the objective is discontinuous:
a pattern move along each cycle's net displacement, and a boundary-homing
stage that halves a polar angle toward its boundary while re-optimizing the
rest.  Everything is derivative-free and deterministic: identical inputs
give identical outputs.

Objective builders for the standard preselection families live here too.
They inline the same formulas as the meter modules (cross-checked by tests)
so a single probe costs a few trig calls, which keeps the default
64^3-sample coarse grid fast.  Probes where the postselection probability
falls below the usable floor evaluate to 0, letting the search traverse
near-orthogonal regions where the conditional shift is only defined in the
limit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal

from .common import PROB_FLOOR, GaussianMeter

Objective = Callable[[float, float, float], float]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
#: Bracket width at which golden-section refinement of a coordinate stops.
_GOLDEN_WIDTH = 1e-11


class OptimizationError(RuntimeError):
    """Objective returned a non-finite value; the probe point is attached."""

    def __init__(self, point: "PPSPoint", value: float):
        super().__init__(f"objective returned {value!r} at {point}")
        self.point = point
        self.value = value


@dataclass(frozen=True)
class PPSPoint:
    """A preselection/postselection configuration (theta1, theta2, phi0)."""

    theta1: float
    theta2: float
    phi0: float


@dataclass(frozen=True)
class OptimizationResult:
    value: float
    argmax: PPSPoint
    evaluations: int
    converged: bool


class _Search:
    """Bookkeeping shared by the coarse scan and the refinement loop."""

    def __init__(self, objective: Objective):
        self.objective = objective
        self.evaluations = 0
        self.best_abs = -1.0
        self.best_value = 0.0
        self.best_point = (0.0, 0.0, 0.0)

    def probe(self, t1: float, t2: float, p0: float) -> float:
        self.evaluations += 1
        v = self.objective(t1, t2, p0)
        if not math.isfinite(v):
            raise OptimizationError(PPSPoint(t1, t2, p0), v)
        a = abs(v)
        if a > self.best_abs:
            self.best_abs = a
            self.best_value = v
            self.best_point = (t1, t2, p0)
        return a


_Point = tuple[float, float, float]

#: Line-search directions per refinement cycle: the three coordinates plus
#: the (theta1, theta2) diagonals, which keep progress alive on valleys that
#: run obliquely into the domain corners.
_DIRECTIONS = (
    (1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.0, 1.0),
    (math.sqrt(0.5), -math.sqrt(0.5), 0.0),
    (math.sqrt(0.5), math.sqrt(0.5), 0.0),
)


def _line_search(search: _Search, origin: _Point,
                 direction: _Point, n: int) -> tuple[_Point, float]:
    """Scan the feasible segment through ``origin``, then golden-section it.

    Returns the best point probed in this call and its |value|; the global
    best inside ``search`` updates as a side effect.
    """
    t_lo, t_hi = -math.inf, math.inf
    for i in (0, 1):
        d = direction[i]
        if d == 0.0:
            continue
        lo, hi = -origin[i] / d, (math.pi - origin[i]) / d
        if lo > hi:
            lo, hi = hi, lo
        t_lo, t_hi = max(t_lo, lo), min(t_hi, hi)
    if math.isinf(t_lo):
        # Pure phase direction: one full period around the current point.
        half = math.pi / abs(direction[2])
        t_lo, t_hi = -half, half

    local_best = (-1.0, origin)

    def at(t: float) -> float:
        nonlocal local_best
        point = (origin[0] + t * direction[0],
                 origin[1] + t * direction[1],
                 origin[2] + t * direction[2])
        a = search.probe(*point)
        if a > local_best[0]:
            local_best = (a, point)
        return a

    step = (t_hi - t_lo) / (n - 1)
    ts = [t_lo + i * step for i in range(n)]
    vals = [at(t) for t in ts]
    i_best = max(range(n), key=lambda i: vals[i])
    a = max(t_lo, ts[i_best] - step)
    b = min(t_hi, ts[i_best] + step)

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = at(c), at(d)
    while b - a > _GOLDEN_WIDTH:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = at(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = at(d)
    return local_best[1], local_best[0]


def _clamp_point(t1: float, t2: float, p0: float) -> _Point:
    return (min(math.pi, max(0.0, t1)),
            min(math.pi, max(0.0, t2)),
            p0 % (2.0 * math.pi))


def _pattern_accelerate(search: _Search, origin: _Point,
                        direction: _Point) -> None:
    """Probe expanding steps along the last cycle's displacement."""
    if max(abs(d) for d in direction) < 1e-10:
        return
    step = 1.0
    reference = search.best_abs
    for _ in range(60):
        candidate = _clamp_point(*(o + step * d
                                   for o, d in zip(origin, direction)))
        if search.probe(*candidate) <= reference:
            break
        reference = search.best_abs
        step *= 2.0


def _refine_from(search: _Search, start: _Point, directions, n: int,
                 tol: float, max_cycles: int) -> tuple[_Point, float, bool]:
    """Cyclic line searches plus a pattern move until a cycle stalls."""
    current = start
    current_abs = search.probe(*start)
    for _ in range(max_cycles):
        before_abs = current_abs
        before_point = current
        for direction in directions:
            point, value = _line_search(search, current, direction, n)
            if value > current_abs:
                current, current_abs = point, value
        displacement = tuple(b - a for a, b in zip(before_point, current))
        _pattern_accelerate(search, current, displacement)
        if search.best_abs > current_abs and search.best_point != current:
            current, current_abs = search.best_point, search.best_abs
        if current_abs - before_abs < tol:
            return current, current_abs, True
    return current, current_abs, False


def _home_boundaries(search: _Search, grid_n: int, tol: float) -> None:
    """Chase suprema that sit on a polar-angle boundary.

    The conditional-shift objectives can increase all the way into a domain
    corner (vanishing postselection overlap) while being discontinuous at the
    corner itself.  Halve the distance of one polar angle to its boundary,
    re-optimize the remaining two coordinates, and keep going while the value
    improves; a failed halving ends that direction immediately.
    """
    inner = {
        0: ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0)),
        1: ((1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),
    }
    for axis in (0, 1):
        for boundary in (0.0, math.pi):
            current = search.best_point
            for _ in range(60):
                gap = current[axis] - boundary
                if abs(gap) < 1e-13:
                    break
                pinned = list(current)
                pinned[axis] = boundary + 0.5 * gap
                reference = search.best_abs
                point, value, _ = _refine_from(search, tuple(pinned),
                                               inner[axis], grid_n, tol, 8)
                if value <= reference + tol:
                    break
                current = point


def maximize(objective: Objective, grid_n: int = 64,
             tol: float = 1e-12, max_cycles: int = 200) -> OptimizationResult:
    """Maximize |objective| over the angle domain.

    A coarse grid of grid_n^3 samples locates the basin of the global
    maximum.  Cyclic refinement (dense rescan plus golden-section line
    search along each coordinate and the polar diagonals, then a pattern
    move along the cycle's net displacement) polishes it until a full cycle
    improves the best |value| by less than ``tol``; a final boundary-homing
    stage follows ridges whose supremum sits at a polar-angle boundary.
    The objective must accept any theta in [0, pi] and be 2 pi-periodic in
    phi0.

    Returns the signed objective value at the best point found.
    """
    if grid_n < 16:
        raise ValueError(f"grid_n must be at least 16, got {grid_n}")
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol!r}")

    search = _Search(objective)
    theta_step = math.pi / (grid_n - 1)
    phi_step = 2.0 * math.pi / grid_n
    theta_axis = [i * theta_step for i in range(grid_n)]
    phi_axis = [i * phi_step for i in range(grid_n)]
    for t1 in theta_axis:
        for t2 in theta_axis:
            for p0 in phi_axis:
                search.probe(t1, t2, p0)

    _, _, converged = _refine_from(search, search.best_point, _DIRECTIONS,
                                   grid_n, tol, max_cycles)
    _home_boundaries(search, grid_n, tol)

    t1, t2, p0 = search.best_point
    argmax = PPSPoint(t1, t2, p0 % (2.0 * math.pi))
    return OptimizationResult(search.best_value, argmax,
                              search.evaluations, converged)


# ---------------------------------------------------------------------------
# Objective builders
# ---------------------------------------------------------------------------


def _mixed_entries(kappa: float):
    """Density entries of a modulus-kappa state along (theta1, phi0).

    Half-angle products keep the small entries accurate near the poles,
    where the conditional shifts live right above the probability floor.
    """
    half_mix = 0.5 * (1.0 - kappa)

    def entries(t1: float, p0: float):
        ch, sh = math.cos(0.5 * t1), math.sin(0.5 * t1)
        rho00 = half_mix + kappa * ch * ch
        rho11 = half_mix + kappa * sh * sh
        half_perp = kappa * sh * ch
        return rho00, rho11, half_perp * math.cos(p0), half_perp * math.sin(p0)

    return entries


def _damped_entries(gamma: float):
    """Density entries of an amplitude-damped pure state along (theta1, phi0)."""
    survive = 1.0 - gamma
    root = math.sqrt(survive)

    def entries(t1: float, p0: float):
        ch, sh = math.cos(0.5 * t1), math.sin(0.5 * t1)
        rho00 = ch * ch + gamma * sh * sh
        rho11 = survive * sh * sh
        half_perp = root * sh * ch
        return rho00, rho11, half_perp * math.cos(p0), half_perp * math.sin(p0)

    return entries


def _shift_objective(entries, g: float, meter: GaussianMeter,
                     which: str) -> Objective:
    att = meter.coherence_factor(g)
    dq_scale = 4.0 * g * meter.delta ** 2 * att
    want_dp = which == "dp"

    def f(t1: float, t2: float, p0: float) -> float:
        rho00, rho11, re10, im10 = entries(t1, p0)
        ch, sh = math.cos(0.5 * t2), math.sin(0.5 * t2)
        u2 = ch * ch
        v2 = sh * sh
        wre = sh * ch
        prob = rho00 * u2 + rho11 * v2 + 2.0 * att * re10 * wre
        if prob <= PROB_FLOOR:
            return 0.0
        if want_dp:
            return g * (rho00 * u2 - rho11 * v2) / prob
        return dq_scale * im10 * wre / prob

    return f


def _reading_objective(entries, g: float) -> Objective:
    s2 = math.sin(g) ** 2
    c2g = math.cos(2.0 * g)

    def f(t1: float, t2: float, p0: float) -> float:
        rho00, rho11, re10, _ = entries(t1, p0)
        ch, sh = math.cos(0.5 * t2), math.sin(0.5 * t2)
        base = rho00 * ch * ch + rho11 * sh * sh
        cross = re10 * sh * ch
        prob = base + 2.0 * c2g * cross
        if prob <= PROB_FLOOR:
            return 0.0
        return s2 * (base - 2.0 * cross) / prob

    return f


def kappa_shift_objective(kappa: float, g: float, meter: GaussianMeter,
                          which: Literal["dp", "dq"]) -> Objective:
    """|dp'| or |dq'| objective for the modulus-kappa preselection family."""
    if which not in ("dp", "dq"):
        raise ValueError(f"which must be 'dp' or 'dq', got {which!r}")
    return _shift_objective(_mixed_entries(kappa), g, meter, which)


def kappa_reading_objective(kappa: float, g: float) -> Objective:
    """Qubit-meter reading objective for the modulus-kappa family."""
    return _reading_objective(_mixed_entries(kappa), g)


def damped_shift_objective(gamma: float, g: float, meter: GaussianMeter,
                           which: Literal["dp", "dq"]) -> Objective:
    """Pointer-shift objective with an amplitude-damped pure preselection."""
    if which not in ("dp", "dq"):
        raise ValueError(f"which must be 'dp' or 'dq', got {which!r}")
    return _shift_objective(_damped_entries(gamma), g, meter, which)


def damped_reading_objective(gamma: float, g: float) -> Objective:
    """Qubit-meter reading objective with an amplitude-damped pure preselection."""
    return _reading_objective(_damped_entries(gamma), g)


def amplitude_damping_max(meter: GaussianMeter | Literal["qubit"], gamma: float,
                          g: float, which: Literal["dp", "dq", "reading"],
                          grid_n: int = 64, tol: float = 1e-12) -> OptimizationResult:
    """Numerical maximum shift/reading when the preselection suffers amplitude damping.

    There is no closed form for these maxima; this composes the damped
    preselection family with the requested objective and runs ``maximize``.
    For gamma < 1 the result reproduces the noiseless maxima (the damped
    manifold approaches a pure state near the decay fixed point); gamma = 1
    is accepted but degenerate, hence the warning.
    """
    if not (math.isfinite(gamma) and 0.0 <= gamma <= 1.0):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma!r}")
    if gamma == 1.0:
        warnings.warn("amplitude damping at gamma = 1 maps every state to |0>; "
                      "the amplification maxima collapse", stacklevel=2)
    if which == "reading":
        if meter != "qubit":
            raise ValueError("'reading' requires the qubit meter")
        objective = damped_reading_objective(gamma, g)
    else:
        if not isinstance(meter, GaussianMeter):
            raise ValueError(f"'{which}' requires a GaussianMeter")
        objective = damped_shift_objective(gamma, g, meter, which)
    return maximize(objective, grid_n=grid_n, tol=tol)
