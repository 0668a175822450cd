"""Linearization of the model around a stationary beam.

Seeding the beam with an infinitesimal perturbation pair (v(x), w(x))
oscillating as e^(eta z) and keeping first order yields a block
eigenproblem for the growth rate eta,

    [[0, L0], [L1, 0]] (v, w)^T = -i eta (v, w)^T,

with the modulus-coupled operators

    L0 = d_xx - lambda + (V + iW) + g1 |phi|^2 + g2 |phi|^(2 kappa)
    L1 = d_xx - lambda + (V + iW) + 3 g1 |phi|^2 + (1 + 2 kappa) g2 |phi|^(2 kappa).

We assemble M = i [[0, L0], [L1, 0]] so that M u = eta u and eigenvalues
are growth rates directly: Re eta > 0 means exponential growth. L0 phi = 0
reproduces the stationary equation, so eta = 0 with eigenvector (0, phi)
is always present (the phase Goldstone mode).

For a real beam (b = 0, hence mu = 0) this block system is exactly the
Frechet derivative of the evolution equation. For complex beams the true
Frechet linearization contains extra phi^2-type couplings that the
modulus-coupled form drops; `direct_frechet_operator` builds the true
linearization by finite differences, as an independent cross-check.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentParameters
from .grid import Grid, fourier_diff_matrix
from .model import (ModelSpec, StationarySolution, evaluate_solution,
                    sample_potential, stationary_residual)

RESIDUAL_GUARD = 1e-6


@dataclass(frozen=True)
class LinearizedOperator:
    l0: np.ndarray
    l1: np.ndarray
    block: np.ndarray  # M = i [[0, L0], [L1, 0]], shape (2N, 2N)


def build_operators(spec: ModelSpec, sol: StationarySolution,
                    grid: Grid) -> LinearizedOperator:
    """Assemble L0, L1 and the block matrix M on the collocation grid.

    Raises InconsistentParameters when the stationary residual exceeds
    1e-6: the spectrum of a non-solution is meaningless.
    """
    phi = evaluate_solution(sol, grid)
    res = stationary_residual(phi, spec, sol.lam, grid)
    if res > RESIDUAL_GUARD:
        raise InconsistentParameters(
            f"stationary residual {res:.3e} exceeds {RESIDUAL_GUARD:g}; "
            "refine the grid or fix the parameters")

    d2 = fourier_diff_matrix(grid, order=2)
    v, w = sample_potential(spec, grid)
    mod2 = np.abs(phi) ** 2          # |phi|^(2 kappa) from the modulus,
    modk = mod2 ** spec.kappa        # never from complex powers
    base = d2 + np.diag(v + 1j * w - sol.lam)
    l0 = base + np.diag(spec.g1 * mod2 + spec.g2 * modk)
    l1 = base + np.diag(3.0 * spec.g1 * mod2 + (1.0 + 2.0 * spec.kappa) * spec.g2 * modk)

    n = grid.n
    block = np.zeros((2 * n, 2 * n), dtype=complex)
    block[:n, n:] = 1j * l0
    block[n:, :n] = 1j * l1
    return LinearizedOperator(l0=l0, l1=l1, block=block)


def direct_frechet_operator(spec: ModelSpec, sol: StationarySolution,
                            grid: Grid, delta_scale: float = 1e-6) -> np.ndarray:
    """True linearization by brute-force finite differences.

    Writes the evolution of a perturbation p around the stationary beam as
    p_z = G(p) with

        G(p) = i [ (phi+p)_xx + (V+iW)(phi+p) + g1 |phi+p|^2 (phi+p)
                   + g2 |phi+p|^(2 kappa) (phi+p) - lambda (phi+p) ]

    and differentiates G column-by-column with central differences of step
    delta_scale * max|phi| on stacked (Re p, Im p). The result is a real
    2N x 2N matrix whose eigenvalues are growth rates, directly comparable
    with the spectrum of `build_operators(...).block`. No closed-form
    operator enters this construction.
    """
    phi = evaluate_solution(sol, grid)
    v, w = sample_potential(spec, grid)
    vw = v + 1j * w
    k2 = grid.wavenumbers ** 2
    lam = sol.lam
    g1, g2, kappa = spec.g1, spec.g2, spec.kappa

    def rhs(p):
        u = phi + p
        uxx = np.fft.ifft(-k2 * np.fft.fft(u))
        mod2 = np.abs(u) ** 2
        return 1j * (uxx + vw * u + g1 * mod2 * u + g2 * mod2 ** kappa * u - lam * u)

    n = grid.n
    delta = delta_scale * np.max(np.abs(phi))
    a = np.empty((2 * n, 2 * n))
    basis = np.zeros(n, dtype=complex)
    for j in range(2 * n):
        step = delta if j < n else 1j * delta
        idx = j % n
        basis[idx] = step
        col = (rhs(basis) - rhs(-basis)) / (2.0 * delta)
        basis[idx] = 0.0
        a[:n, j] = col.real
        a[n:, j] = col.imag
    return a
