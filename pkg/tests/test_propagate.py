import numpy as np
import pytest
import warnings

from ptsoliton import (Family, Grid, ModelSpec, NonConvergedStep,
                       PropagationRecord, StationarySolution, StepUnstable,
                       evaluate_solution, measure_growth, perturbed,
                       solve_constraints, split_step)
from ptsoliton.errors import NoGrowthWindow
import ptsoliton.propagate as propagate_mod


def cubic_spec(a=1.0, g1=2.0):
    spec = ModelSpec(a=a, b=0.0, v1=0.0, kappa=3.0, g1=g1, g2=0.0,
                     family=Family.CLASS1)
    phi0 = np.sqrt((a * a + a + 2.0) / g1)
    sol = StationarySolution(phi0=phi0, mu=0.0, lam=1.0, kappa=3.0,
                             family=Family.CLASS1)
    return spec, sol


def test_growth_rate_of_synthetic_exponential():
    zs = np.linspace(0.0, 25.0, 400)
    g = Grid(64, 8.0)
    ref = 1.0 / np.cosh(g.points)
    bump = np.zeros(g.n)
    bump[10] = 1.0
    snaps = [ref + bump * 1e-4 * np.exp(0.3 * z) for z in zs]
    record = PropagationRecord(
        z_samples=zs, snapshots=snaps,
        peak_amplitude=np.array([np.max(np.abs(s)) for s in snaps]),
        total_power=np.ones_like(zs),
        deviation=np.array([np.linalg.norm(np.abs(s) - ref) for s in snaps]))
    rate = measure_growth(record, ref)
    assert rate == pytest.approx(0.3, abs=1e-3)


def test_unperturbed_run_reports_no_growth():
    spec, sol = cubic_spec()
    g = Grid(256, 16.0)
    field = evaluate_solution(sol, g)
    record = split_step(field, spec, g, z_end=0.05, dz=1e-3, sample_every=5)
    with pytest.warns(NoGrowthWindow):
        rate = measure_growth(record, field)
    assert rate == 0.0


def test_power_conserved_without_gain_loss():
    spec, sol = cubic_spec()
    g = Grid(256, 16.0)
    field = evaluate_solution(sol, g)
    # dz small enough for the trajectory-level step-halving gate over z=0.5
    record = split_step(field, spec, g, z_end=0.5, dz=2e-4, sample_every=250)
    drift = np.max(np.abs(record.total_power - record.total_power[0]))
    assert drift < 1e-10 * record.total_power[0]


def test_even_symmetry_preserved_without_gain_loss():
    spec, sol = cubic_spec()
    g = Grid(256, 16.0)
    field = evaluate_solution(sol, g).real.astype(complex)
    record = split_step(field, spec, g, z_end=0.2, dz=1e-3, sample_every=100)
    final = record.snapshots[-1]
    mirrored = np.roll(final[::-1], 1)          # x -> -x on the periodic grid
    assert np.max(np.abs(final - mirrored)) < 1e-10


def test_constant_potential_shift_is_pure_gauge(monkeypatch):
    spec, sol = cubic_spec()
    g = Grid(256, 16.0)
    field = evaluate_solution(sol, g)
    base = split_step(field, spec, g, z_end=0.2, dz=1e-3, sample_every=100)

    original = propagate_mod.sample_potential

    def shifted(model_spec, grid):
        v, w = original(model_spec, grid)
        return v + 5.0, w

    monkeypatch.setattr(propagate_mod, "sample_potential", shifted)
    moved = split_step(field, spec, g, z_end=0.2, dz=1e-3, sample_every=100)
    gap = np.max(np.abs(np.abs(moved.snapshots[-1]) - np.abs(base.snapshots[-1])))
    assert gap < 1e-10


def test_blow_up_raises():
    # pure gain for x < 0 at b = 5: amplitude grows until the guard trips
    spec = ModelSpec(a=0.0, b=5.0, v1=0.0, kappa=2.0, g1=0.0, g2=0.0,
                     family=Family.CLASS1)
    g = Grid(128, 16.0)
    initial = 1.0 / np.cosh(g.points)
    with pytest.raises(StepUnstable):
        split_step(initial, spec, g, z_end=2.0, dz=1e-3, sample_every=100,
                   check_step=False)


def test_coarse_step_rejected_on_unstable_run():
    spec, sol = solve_constraints("class1", a=1.0, b=0.003, g1=4.0, g2=4.0,
                                  kappa=3.0, phi0=1.0)
    g = Grid(512, 16.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        field = evaluate_solution(sol, g)
    initial = perturbed(field, 1e-4, 11)
    with pytest.raises(NonConvergedStep):
        split_step(initial, spec, g, z_end=0.6, dz=1e-4, sample_every=100)


def test_perturbation_is_deterministic_and_scaled():
    g = Grid(128, 8.0)
    ref = 1.0 / np.cosh(g.points)
    p1 = perturbed(ref, 1e-4, seed=7)
    p2 = perturbed(ref, 1e-4, seed=7)
    p3 = perturbed(ref, 1e-4, seed=8)
    assert np.array_equal(p1, p2)
    assert not np.array_equal(p1, p3)
    assert np.max(np.abs(p1 - ref)) == pytest.approx(1e-4 * np.max(np.abs(ref)))
