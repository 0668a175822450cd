import numpy as np
import pytest
import warnings

from ptsoliton import (Family, Grid, InconsistentParameters, ModelSpec,
                       StationarySolution, build_operators,
                       direct_frechet_operator, evaluate_solution,
                       solve_constraints)
from ptsoliton.model import interior_mask


def _quiet_build(spec, sol, grid):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_operators(spec, sol, grid)


def cubic_limit(a=1.0, g1=2.0, n=128, half_width=16.0):
    """Real single-nonlinearity configuration, closed form with mu = 0."""
    spec = ModelSpec(a=a, b=0.0, v1=0.0, kappa=3.0, g1=g1, g2=0.0,
                     family=Family.CLASS1)
    phi0 = np.sqrt((a * a + a + 2.0) / g1)
    sol = StationarySolution(phi0=phi0, mu=0.0, lam=1.0, kappa=3.0,
                             family=Family.CLASS1)
    return spec, sol, Grid(n, half_width)


def test_phase_mode_in_kernel():
    spec, sol, g = cubic_limit()
    op = _quiet_build(spec, sol, g)
    phi = evaluate_solution(sol, g)
    # (0, phi) is the global-phase zero mode of the block operator; the
    # residual is judged on the interior since the field is not exactly
    # periodic over a finite box
    stacked = np.concatenate([np.zeros(g.n), phi])
    resid = (op.block @ stacked)[:g.n]
    assert np.max(np.abs(resid[interior_mask(g)])) < 1e-6


def test_block_layout():
    spec, sol, g = cubic_limit()
    op = _quiet_build(spec, sol, g)
    n = g.n
    assert np.all(op.block[:n, :n] == 0)
    assert np.all(op.block[n:, n:] == 0)
    assert np.allclose(op.block[:n, n:], 1j * op.l0)
    assert np.allclose(op.block[n:, :n], 1j * op.l1)


def test_l1_minus_l0_is_the_nonlinear_excess():
    spec, sol = solve_constraints("class1", a=1.0, b=0.003, v1=-4.0, g2=-4.0,
                                  kappa=3.0, phi0=1.0)
    g = Grid(512, 16.0)
    op = _quiet_build(spec, sol, g)
    phi = np.abs(evaluate_solution(sol, g))
    excess = 2.0 * spec.g1 * phi ** 2 + 2.0 * spec.kappa * spec.g2 * phi ** (2 * spec.kappa)
    diff = op.l1 - op.l0
    assert np.max(np.abs(diff - np.diag(excess))) < 1e-12


def test_guard_rejects_non_solution():
    spec, sol, g = cubic_limit()
    bad = StationarySolution(phi0=sol.phi0, mu=sol.mu, lam=sol.lam + 0.05,
                             kappa=sol.kappa, family=sol.family)
    with pytest.raises(InconsistentParameters):
        _quiet_build(spec, bad, g)


def test_frechet_derivative_agrees_with_assembled_operator():
    # independent route: numerically differentiate the full nonlinear
    # right-hand side and compare spectra
    spec, sol, g = cubic_limit(n=128)
    op = _quiet_build(spec, sol, g)
    frech = direct_frechet_operator(spec, sol, g)
    e_block = np.linalg.eigvals(op.block)
    e_frech = np.linalg.eigvals(frech)
    worst = max(np.min(np.abs(e_frech - e)) for e in e_block)
    assert worst < 1e-4
