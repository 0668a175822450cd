"""Parameter sweeps, eigenvalue trajectory tracking, bifurcation detection.

A sweep runs the full pipeline (constraints, operators, spectrum, verdict)
at each parameter value and chains the discrete nonzero eigenvalues into
trajectories by nearest-neighbor matching between consecutive points,
with eigenvector overlap breaking ties.

The detector looks for an origin collision: a tracked +-pair on one axis
whose magnitude decreases monotonically into the collision tolerance (or
until tracking loses it at the crossing), followed within two steps by a
+-pair emerging on the other axis with growing magnitude. Both axis
orders are recognized, real to imaginary and imaginary to real, so
reversing the sweep direction reports the same events with the brackets
swapped.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import PtsolError
from .grid import Grid
from .model import solve_constraints
from .spectra import StabilityReport, Tolerances, stability_report

MATCH_CUTOFF = 0.5        # |d eta| beyond which modes are not the same mode
OVERLAP_WEIGHT = 1e-6     # tie-break weight, small vs any real eta distance
COLLISION_TOL = 5e-3
LOOKAHEAD = 2


@dataclass
class Trajectory:
    start: int                     # index of the first sweep point
    etas: list = field(default_factory=list)

    @property
    def end(self) -> int:
        return self.start + len(self.etas) - 1

    def eta_at(self, index: int):
        if self.start <= index <= self.end:
            return self.etas[index - self.start]
        return None


@dataclass(frozen=True)
class BifurcationEvent:
    param_low: float
    param_high: float
    colliding_pair_before: tuple   # (eta, -eta) just before the collision
    emerging_pair_after: tuple     # (eta, -eta) just after
    colliding_axis: str            # "real" or "imag"


@dataclass
class SweepResult:
    parameter: str
    values: np.ndarray
    reports: list                  # StabilityReport or None per value
    solutions: list                # StationarySolution or None per value
    trajectories: list             # Trajectory over discrete nonzero modes
    failures: dict                 # index -> error message


def _discrete_nonzero(report: StabilityReport, tols: Tolerances):
    # tracking floor: pair_factor, not zero_factor -- the classification
    # zero cut (1e-4 * spectral radius) is far coarser than collision_tol
    # and would drop a colliding pair long before it reaches the origin
    floor = tols.pair_factor * report.scale
    return [p for p in report.discrete if abs(p.eta) > floor]


def _axis_kind(eta, tol):
    if abs(eta.imag) < tol <= abs(eta.real):
        return "real"
    if abs(eta.real) < tol <= abs(eta.imag):
        return "imag"
    return None


def _match(prev_modes, next_modes):
    """Assign modes of consecutive points; returns list of (i, j) pairs.

    A real-axis mode is never matched to an imaginary-axis mode: an origin
    collision is a death plus a birth, which keeps detection symmetric
    under sweep reversal.
    """
    if not prev_modes or not next_modes:
        return []
    forbidden = 1e9
    cost = np.empty((len(prev_modes), len(next_modes)))
    for i, p in enumerate(prev_modes):
        ki = _axis_kind(p.eta, COLLISION_TOL)
        for j, q in enumerate(next_modes):
            kj = _axis_kind(q.eta, COLLISION_TOL)
            if ki is not None and kj is not None and ki != kj:
                cost[i, j] = forbidden
                continue
            overlap = abs(np.vdot(p.vector, q.vector))
            cost[i, j] = abs(p.eta - q.eta) + OVERLAP_WEIGHT * (1.0 - overlap)
    rows, cols = linear_sum_assignment(cost)
    return [(i, j) for i, j in zip(rows, cols)
            if cost[i, j] < forbidden
            and abs(prev_modes[i].eta - next_modes[j].eta) <= MATCH_CUTOFF]


def run_sweep(family, base, parameter: str, values, grid: Grid,
              tols: Tolerances = Tolerances(), workers: int = 1) -> SweepResult:
    """Run the full pipeline at each value of `parameter`.

    `base` is the knowns dict passed to solve_constraints with
    base[parameter] replaced per point. Per-point failures are recorded
    and skipped, never aborting the sweep. With workers > 1 the points
    are evaluated concurrently (results are ordered and independent of
    scheduling).
    """
    values = np.asarray(values, dtype=float)

    def one_point(value):
        knowns = dict(base)
        knowns[parameter] = float(value)
        spec, sol = solve_constraints(family, **knowns)
        report = stability_report(spec, sol, grid, tols)
        return sol, report

    results = [None] * len(values)
    failures = {}
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {i: pool.submit(one_point, v) for i, v in enumerate(values)}
        for i, fut in futures.items():
            try:
                results[i] = fut.result()
            except PtsolError as exc:
                failures[i] = f"{type(exc).__name__}: {exc}"
    else:
        for i, v in enumerate(values):
            try:
                results[i] = one_point(v)
            except PtsolError as exc:
                failures[i] = f"{type(exc).__name__}: {exc}"

    solutions = [r[0] if r else None for r in results]
    reports = [r[1] if r else None for r in results]

    # chain discrete nonzero modes into trajectories
    trajectories = []
    active = {}   # mode index at current point -> Trajectory
    prev_modes = []
    for i, report in enumerate(reports):
        modes = _discrete_nonzero(report, tols) if report else []
        matched_next = {}
        if prev_modes and modes:
            for pi, ni in _match(prev_modes, modes):
                matched_next[ni] = active.get(pi)
        new_active = {}
        for j, mode in enumerate(modes):
            traj = matched_next.get(j)
            if traj is None:
                traj = Trajectory(start=i)
                trajectories.append(traj)
            traj.etas.append(mode.eta)
            new_active[j] = traj
        active = new_active
        prev_modes = modes

    return SweepResult(parameter=parameter, values=values, reports=reports,
                       solutions=solutions, trajectories=trajectories,
                       failures=failures)


def _axis_pairs(trajectories, index, axis: str, axis_tol, min_mag):
    """Positive-branch modes on the given axis at a sweep point, as a list
    of (magnitude, trajectory)."""
    out = []
    for traj in trajectories:
        eta = traj.eta_at(index)
        if eta is None or abs(eta) <= min_mag:
            continue
        if axis == "real":
            on_axis, positive, mag = abs(eta.imag) < axis_tol, eta.real > 0, abs(eta.real)
        else:
            on_axis, positive, mag = abs(eta.real) < axis_tol, eta.imag > 0, abs(eta.imag)
        if on_axis and positive:
            out.append((mag, traj))
    return out


def _has_mirror(reports, tols, index, eta):
    # synthetic sweeps (hand-built trajectories, no reports) skip the check
    report = reports[index] if index < len(reports) else None
    if report is None:
        return True
    tol = max(tols.pair_factor * report.scale, 1e-12)
    return any(abs(p.eta + eta) <= tol for p in report.discrete)


def detect_bifurcation(sweep: SweepResult, collision_tol: float = COLLISION_TOL,
                       axis_tol: float | None = None, lookahead: int = LOOKAHEAD,
                       tols: Tolerances = Tolerances()):
    """Find origin collisions: descending +-pair on one axis, emerging
    +-pair on the other. Returns a list of BifurcationEvent.

    The descending pair must shrink strictly monotonically over its final
    steps and either dip below collision_tol or disappear at the crossing
    (the discretization can lose the mode exactly at the collision; the
    lookahead covers that gap). The emerging pair must be newly born
    after the collision point, with growing magnitude where a further
    point exists to check.
    """
    if axis_tol is None:
        axis_tol = collision_tol
    n = len(sweep.values)
    events = []
    other = {"real": "imag", "imag": "real"}

    for axis in ("real", "imag"):
        for traj in sweep.trajectories:
            if len(traj.etas) < 2:
                continue
            mags = []
            for idx in range(traj.start, traj.end + 1):
                eta = traj.eta_at(idx)
                if axis == "real":
                    if abs(eta.imag) >= axis_tol or eta.real <= 0:
                        break
                    mags.append(abs(eta.real))
                else:
                    if abs(eta.real) >= axis_tol or eta.imag <= 0:
                        break
                    mags.append(abs(eta.imag))
            if len(mags) < 2:
                continue
            decreasing = all(m1 > m2 for m1, m2 in zip(mags, mags[1:]))
            if not decreasing:
                continue
            t_last = traj.start + len(mags) - 1
            collided_below = mags[-1] < collision_tol
            # the positive on-axis run ends mid-sweep: the mode died, hit
            # the origin, or left the axis -- all collision candidates
            run_ended = t_last < n - 1
            if not (collided_below or run_ended):
                continue
            if not _has_mirror(sweep.reports, tols, t_last,
                               traj.eta_at(t_last)):
                continue
            # look for the freshly born pair on the other axis
            for s in range(t_last + 1, min(t_last + 1 + lookahead, n)):
                born = [(m, tr) for m, tr in _axis_pairs(
                            sweep.trajectories, s, other[axis], axis_tol,
                            min_mag=0.0)
                        if tr.start > t_last]
                if not born:
                    continue
                mag, emerged = min(born)
                nxt = emerged.eta_at(s + 1)
                if nxt is not None:
                    grown = (abs(nxt.real) if other[axis] == "real"
                             else abs(nxt.imag)) > mag
                    if not grown:
                        continue
                if not _has_mirror(sweep.reports, tols, s, emerged.eta_at(s)):
                    continue
                before = traj.eta_at(t_last)
                after = emerged.eta_at(s)
                events.append(BifurcationEvent(
                    param_low=float(sweep.values[t_last]),
                    param_high=float(sweep.values[s]),
                    colliding_pair_before=(before, -before),
                    emerging_pair_after=(after, -after),
                    colliding_axis=axis))
                break

    events.sort(key=lambda e: (min(e.param_low, e.param_high),
                               max(e.param_low, e.param_high)))
    return events


def refine_event(family, base, parameter: str, event: BifurcationEvent,
                 grid: Grid, tols: Tolerances = Tolerances(),
                 factor: int = 4, workers: int = 1):
    """Re-run the sweep inside an event bracket at `factor` times the
    resolution; returns the sharpened event, or the original when the
    refined scan does not resolve one."""
    lo = min(event.param_low, event.param_high)
    hi = max(event.param_low, event.param_high)
    values = np.linspace(lo, hi, factor + 1)
    refined = run_sweep(family, base, parameter, values, grid, tols, workers)
    candidates = detect_bifurcation(refined, tols=tols)
    return candidates[0] if candidates else event
