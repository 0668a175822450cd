"""Uniform periodic grid and Fourier spectral differentiation.

The domain is [-L, L) sampled at N points x_j = -L + 2Lj/N. Wavenumbers
are k_m = pi*m/L with m in {-N/2, ..., N/2 - 1}, stored in FFT order.
Differentiation is exact for band-limited fields; both a transform form
and an explicit matrix form are provided, the matrix being what the
dense eigenproblem assembly needs.
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid:
    n: int
    half_width: float

    def __post_init__(self):
        if self.n <= 0 or self.n % 2:
            raise ValueError(f"n must be a positive even integer, got {self.n}")
        if self.half_width <= 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")

    @property
    def points(self) -> np.ndarray:
        j = np.arange(self.n)
        return -self.half_width + 2.0 * self.half_width * j / self.n

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def wavenumbers(self) -> np.ndarray:
        # FFT ordering: 0, 1, ..., N/2-1, -N/2, ..., -1 (times pi/L)
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.spacing)


def _multiplier(grid: Grid, order: int) -> np.ndarray:
    k = grid.wavenumbers
    if order == 1:
        m = 1j * k
        # The Nyquist mode has no well-defined first derivative on a real
        # grid; zeroing it keeps the matrix exactly antisymmetric.
        m[grid.n // 2] = 0.0
        return m
    if order == 2:
        return -(k ** 2)
    raise ValueError(f"order must be 1 or 2, got {order}")


def spectral_derivative(field: np.ndarray, grid: Grid, order: int = 1) -> np.ndarray:
    """Differentiate a sampled field by Fourier transform."""
    field = np.asarray(field)
    if field.shape != (grid.n,):
        raise ValueError(f"field length {field.shape} does not match grid n={grid.n}")
    return np.fft.ifft(_multiplier(grid, order) * np.fft.fft(field))


def fourier_diff_matrix(grid: Grid, order: int = 1) -> np.ndarray:
    """Dense N x N spectral differentiation matrix.

    Built column-by-column as the transform applied to the identity, so it
    agrees with spectral_derivative to round-off by construction. The
    matrices are real (order 1 antisymmetric, order 2 symmetric); the tiny
    imaginary round-off is discarded and the result returned as complex for
    uniform use in complex operator assembly.
    """
    eye = np.eye(grid.n)
    d = np.fft.ifft(_multiplier(grid, order)[:, None] * np.fft.fft(eye, axis=0), axis=0)
    return d.real.astype(complex)
