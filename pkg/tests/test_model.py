import numpy as np
import pytest

from ptsoliton import (Family, Grid, InfeasibleAmplitude, KappaZero,
                       ModelSpec, NonLocalizable, OverDetermined,
                       StationarySolution, UnderDetermined,
                       evaluate_solution, power_flow, sample_potential,
                       solve_constraints, stationary_residual)
from ptsoliton.errors import GridTooCoarse
from ptsoliton.model import interior_mask


def test_class1_completion_from_amplitude():
    spec, sol = solve_constraints("class1", a=0.01, b=0.3, v1=-4.0, g2=-4.0,
                                  kappa=3.0, phi0=1.0)
    assert spec.g1 == pytest.approx(2.0101, abs=1e-12)
    assert sol.mu == pytest.approx(0.3, abs=1e-12)
    assert sol.lam == pytest.approx(0.91, abs=1e-12)
    assert sol.phi0 == 1.0


def test_class1_completion_from_couplings():
    # amplitude fixed by g1, then v1 follows from the remaining relation
    spec, sol = solve_constraints("class1", a=1.0, b=0.003, g1=4.0, g2=4.0,
                                  kappa=3.0, phi0=1.0)
    assert spec.v1 == pytest.approx(4.0, abs=1e-12)
    assert sol.lam == pytest.approx(1.0 - 0.003 ** 2, abs=1e-15)


def test_class2_amplitude_and_offsets():
    spec, sol = solve_constraints("class2", a=1.0, b=0.003, g1=4.0, g2=2.44,
                                  kappa=3.0)
    k = 3.0
    assert sol.mu == pytest.approx(0.003 * k, abs=1e-15)
    assert sol.lam == pytest.approx(1.0 / k ** 2 - sol.mu ** 2, abs=1e-15)
    assert sol.phi0 ** (2 * k) * spec.g2 == pytest.approx(
        1.0 * 2.0 + 1.0 / k + 1.0 / k ** 2, abs=1e-12)
    assert spec.v1 == pytest.approx(spec.g1 * sol.phi0 ** 2, abs=1e-12)


def test_over_determined_rejected():
    with pytest.raises(OverDetermined):
        solve_constraints("class1", a=0.01, b=0.3, v1=-4.0, g2=-4.0,
                          kappa=3.0, phi0=2.0)


def test_under_determined_rejected():
    with pytest.raises(UnderDetermined):
        solve_constraints("class1", a=0.01, b=0.3, kappa=3.0)


def test_infeasible_amplitude_rejected():
    # v1/g2 < 0 admits no real amplitude at even power 2*kappa
    with pytest.raises(InfeasibleAmplitude):
        solve_constraints("class1", a=0.01, b=0.3, v1=-4.0, g2=4.0,
                          kappa=3.0, g1=2.0)


def test_kappa_zero_rejected():
    with pytest.raises(KappaZero):
        solve_constraints("class1", a=0.01, b=0.3, v1=-4.0, g2=-4.0,
                          kappa=0.0, phi0=1.0)


def test_class2_negative_kappa_not_localizable():
    sol = StationarySolution(phi0=1.0, mu=0.1, lam=0.5, kappa=-2.0,
                             family=Family.CLASS2)
    with pytest.raises(NonLocalizable):
        evaluate_solution(sol, Grid(64, 8.0))


def test_closed_forms_match_formulas():
    g = Grid(128, 10.0)
    x = g.points
    s1 = StationarySolution(phi0=1.3, mu=0.25, lam=0.9, kappa=3.0,
                            family=Family.CLASS1)
    f1 = evaluate_solution(s1, g)
    assert np.allclose(f1, 1.3 / np.cosh(x) * np.exp(1j * 0.25 * x))
    s2 = StationarySolution(phi0=1.1, mu=0.5, lam=0.1, kappa=2.0,
                            family=Family.CLASS2)
    f2 = evaluate_solution(s2, g)
    assert np.allclose(f2, 1.1 * np.cosh(x) ** -0.5 * np.exp(1j * 0.5 * x))


def test_potential_shapes():
    spec, sol = solve_constraints("class1", a=0.01, b=0.3, v1=-4.0, g2=-4.0,
                                  kappa=3.0, phi0=1.0)
    g = Grid(128, 10.0)
    v, w = sample_potential(spec, g)
    x = g.points
    sech = 1.0 / np.cosh(x)
    assert np.allclose(v, -0.01 * 1.01 * sech ** 2 + 4.0 * sech ** 6)
    assert np.allclose(w, 2.0 * 0.3 * np.tanh(x))


def test_stationary_residual_small_for_exact_solution():
    spec, sol = solve_constraints("class1", a=1.0, b=0.003, v1=-4.0, g2=-4.0,
                                  kappa=3.0, phi0=1.0)
    g = Grid(512, 16.0)
    field = evaluate_solution(sol, g)
    with pytest.warns(GridTooCoarse):
        res = stationary_residual(field, spec, sol.lam, g)
    assert res < 1e-8


def test_residual_flags_wrong_offset():
    spec, sol = solve_constraints("class1", a=1.0, b=0.003, v1=-4.0, g2=-4.0,
                                  kappa=3.0, phi0=1.0)
    g = Grid(512, 24.0)
    field = evaluate_solution(sol, g)
    assert stationary_residual(field, spec, sol.lam + 0.1, g) > 1e-2


def test_power_flow_of_class1():
    spec, sol = solve_constraints("class1", a=0.01, b=0.3, v1=-4.0, g2=-4.0,
                                  kappa=3.0, phi0=1.0)
    g = Grid(256, 16.0)
    field = evaluate_solution(sol, g)
    flow = power_flow(field, g)
    expected = 0.3 / np.cosh(g.points) ** 2
    # wrap error of the spectral derivative leaks a little into the
    # interior edge at this resolution
    assert np.max(np.abs(flow - expected)[interior_mask(g)]) < 1e-8


def test_interior_mask_width():
    g = Grid(100, 10.0)
    mask = interior_mask(g, fraction=0.8)
    # closed interval |x| <= 8 picks up both boundary points
    assert mask.sum() == 81
    assert not mask[0] and not mask[-1]
