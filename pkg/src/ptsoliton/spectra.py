"""Dense eigensolution and stability classification of the block operator.

The full eigenvalue portrait combines three populations:

  * a continuous band, inherited from the constant-coefficient limit
    |x| -> oo where sech -> 0 and tanh -> +-1: Fourier modes e^(ikx) give
    eta = +-[-i(k^2 + lambda) -+ 2b], i.e. the locus Re eta = +-2b,
    |Im eta| >= lambda;
  * discrete modes from the localized part of the potential and the beam
    itself, including the eta = 0 phase mode; instabilities and internal
    oscillations live here;
  * spurious boundary modes created by the periodic jump of tanh at the
    box edge, recognized by eigenvector mass piling up at the boundary.

Every retained eigenpair is re-verified against the matrix (residual
certification), so the classification never trusts the eigensolver
blindly.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergence
from .grid import Grid
from .model import ModelSpec, StationarySolution

TRACE_TOL = 1e-10
PAIR_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class Tolerances:
    """Knobs for bucketing and classification, all in eta units unless
    stated otherwise."""
    band_tol: float = 1e-2            # distance to the analytic band locus
    tail_ratio: float = 0.5           # delocalization: outer-20% mass density
    boundary_mass: float = 0.8        # spurious: plain mass in the outer 5%
    instability_factor: float = 1e-6  # tol_instab = factor * spectral radius
    zero_factor: float = 1e-4         # tol_zero = factor * spectral radius
    pair_factor: float = 1e-6         # pairing match = factor * spectral radius

    def as_dict(self):
        return {k: getattr(self, k) for k in
                ("band_tol", "tail_ratio", "boundary_mass",
                 "instability_factor", "zero_factor", "pair_factor")}


@dataclass(frozen=True)
class EigenPair:
    eta: complex
    vector: np.ndarray          # unit 2-norm, length 2N
    residual: float             # ||M u - eta u||_2 / spectral radius
    boundary_mass: float        # eigenvector mass in the outer 5% of points


@dataclass(frozen=True)
class Spectrum:
    pairs: list
    scale: float                # spectral radius, the certification scale

    @property
    def etas(self) -> np.ndarray:
        return np.array([p.eta for p in self.pairs])


@dataclass(frozen=True)
class BandLocus:
    """Analytic continuous-spectrum locus {Re eta = +-2b, |Im eta| >= lambda}."""
    re_offset: float            # 2b
    im_min: float               # lambda

    def distance(self, eta: complex) -> float:
        d_re = abs(abs(eta.real) - self.re_offset)
        d_im = max(0.0, self.im_min - abs(eta.imag))
        return float(np.hypot(d_re, d_im))

    @property
    def edges(self):
        """Band endpoints eta = +-2b -+ i lambda (the k = 0 Fourier mode)."""
        return (complex(self.re_offset, -self.im_min),
                complex(-self.re_offset, self.im_min))


@dataclass(frozen=True)
class StabilityReport:
    verdict: str                      # "Unstable" | "OscillatoryInternal" | "NeutrallyStable"
    max_growth: float                 # max Re eta over discrete modes
    zero_modes: int
    discrete: list                    # EigenPair list (includes zero modes)
    band: BandLocus
    scale: float                      # spectral radius used for tolerances
    pairing_defect: float             # worst |eta + eta'| over matched -eta partners
    conjugate_defect: float           # worst |eta - conj(eta')| (reported, not asserted)
    counts: dict = field(default_factory=dict)

UNSTABLE = "Unstable"
OSCILLATORY = "OscillatoryInternal"
NEUTRAL = "NeutrallyStable"


def eig_dense(matrix: np.ndarray):
    """Full dense eigensolution with certification.

    Returns (values, vectors, scale): vectors are unit columns, scale is
    the spectral radius. Each pair is certified by its relative residual
    ||A u - eta u||_2 / scale <= 1e-8 and the eigenvalue sum is checked
    against the trace to 1e-10 relative; violations raise NoConvergence.
    """
    matrix = np.asarray(matrix)
    try:
        values, vectors = np.linalg.eig(matrix)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"dense eigensolver failed: {exc}") from exc

    tr = np.trace(matrix)
    tr_scale = max(1.0, float(np.sum(np.abs(values))))
    if abs(np.sum(values) - tr) > TRACE_TOL * tr_scale:
        raise NoConvergence(
            f"trace identity violated: |sum(eig) - trace| = "
            f"{abs(np.sum(values) - tr):.3e} on scale {tr_scale:.3e}")

    norms = np.linalg.norm(vectors, axis=0)
    vectors = vectors / norms
    scale = float(np.max(np.abs(values))) or 1.0
    residuals = np.linalg.norm(matrix @ vectors - values * vectors, axis=0) / scale
    worst = float(np.max(residuals))
    if worst > PAIR_RESIDUAL_TOL:
        raise NoConvergence(
            f"eigenpair certification failed: worst residual {worst:.3e}")
    return values, vectors, scale


def compute_spectrum(operator_block: np.ndarray, grid: Grid) -> Spectrum:
    """Eigensolve the block matrix and wrap certified pairs."""
    values, vectors, scale = eig_dense(operator_block)
    order = np.argsort(np.abs(grid.points))
    n_outer = max(1, int(round(0.05 * grid.n)))
    outer = order[-n_outer:]
    mass = np.abs(vectors[:grid.n, :]) ** 2 + np.abs(vectors[grid.n:, :]) ** 2
    mass = mass / np.sum(mass, axis=0)
    residuals = np.linalg.norm(operator_block @ vectors - values * vectors, axis=0) / scale
    pairs = [EigenPair(eta=complex(values[i]), vector=vectors[:, i],
                       residual=float(residuals[i]),
                       boundary_mass=float(np.sum(mass[outer, i])))
             for i in range(len(values))]
    return Spectrum(pairs=pairs, scale=scale)


def continuous_band(spec: ModelSpec, sol: StationarySolution) -> BandLocus:
    """Analytic band locus from the constant-coefficient limit."""
    return BandLocus(re_offset=2.0 * abs(spec.b), im_min=sol.lam)


def _tail_density(vector: np.ndarray, grid: Grid) -> float:
    """Eigenvector mass density in the outer 20% of points, normalized so a
    uniform (plane-wave) profile scores 1.0 and a localized one near 0."""
    n = grid.n
    mass = np.abs(vector[:n]) ** 2 + np.abs(vector[n:]) ** 2
    mass = mass / np.sum(mass)
    order = np.argsort(np.abs(grid.points))
    n_tail = int(round(0.2 * n))
    return float(np.sum(mass[order[-n_tail:]]) / 0.2)


def separate_discrete(spectrum: Spectrum, band: BandLocus, grid: Grid,
                      tols: Tolerances = Tolerances()):
    """Bucket eigenpairs into (discrete, continuous, spurious).

    An eigenpair is continuous when it sits within band_tol of the analytic
    locus AND its eigenvector is delocalized (outer-20% mass density above
    tail_ratio); spurious when its eigenvector piles more than
    boundary_mass of its weight onto the outer 5% of points (tanh wrap
    artifacts); discrete otherwise. Buckets are disjoint and exhaustive.
    """
    discrete, continuous, spurious = [], [], []
    for pair in spectrum.pairs:
        if pair.boundary_mass > tols.boundary_mass:
            spurious.append(pair)
        elif (band.distance(pair.eta) < tols.band_tol
              and _tail_density(pair.vector, grid) > tols.tail_ratio):
            continuous.append(pair)
        else:
            discrete.append(pair)
    return discrete, continuous, spurious


def _pairing_defects(etas: np.ndarray, scale: float, tol_zero: float):
    """Worst-case distances to the mirrored (-eta) and conjugated (eta*)
    partners over nonzero eigenvalues."""
    nonzero = etas[np.abs(etas) > tol_zero]
    if nonzero.size == 0:
        return 0.0, 0.0
    neg = 0.0
    conj = 0.0
    for e in nonzero:
        neg = max(neg, float(np.min(np.abs(nonzero + e))))
        conj = max(conj, float(np.min(np.abs(nonzero - np.conj(e)))))
    return neg, conj


def classify(discrete, band: BandLocus, scale: float,
             tols: Tolerances = Tolerances(),
             counts: dict | None = None) -> StabilityReport:
    """Stability verdict from the discrete modes.

    Unstable when any Re eta exceeds tol_instab; otherwise
    OscillatoryInternal when nonzero conjugate pairs hug the imaginary
    axis; otherwise NeutrallyStable. Zero modes are counted below
    tol_zero. Both tolerances scale with the spectral radius.
    """
    tol_instab = tols.instability_factor * scale
    tol_zero = tols.zero_factor * scale
    tol_pair = tols.pair_factor * scale

    etas = np.array([p.eta for p in discrete]) if discrete else np.empty(0, complex)
    zero_modes = int(np.sum(np.abs(etas) < tol_zero)) if etas.size else 0
    max_growth = float(np.max(etas.real)) if etas.size else 0.0

    if max_growth > tol_instab:
        verdict = UNSTABLE
    else:
        verdict = NEUTRAL
        nz = etas[(np.abs(etas) >= tol_zero) & (np.abs(etas.real) <= tol_instab)]
        for e in nz:
            if np.min(np.abs(nz - np.conj(e))) <= tol_pair:
                verdict = OSCILLATORY
                break

    neg_def, conj_def = _pairing_defects(etas, scale, tol_zero)
    return StabilityReport(
        verdict=verdict, max_growth=max_growth, zero_modes=zero_modes,
        discrete=list(discrete), band=band, scale=scale,
        pairing_defect=neg_def, conjugate_defect=conj_def,
        counts=dict(counts or {}))


def stability_report(spec: ModelSpec, sol: StationarySolution, grid: Grid,
                     tols: Tolerances = Tolerances()) -> StabilityReport:
    """Full single-point pipeline: operators, spectrum, buckets, verdict."""
    from .linearize import build_operators

    op = build_operators(spec, sol, grid)
    spectrum = compute_spectrum(op.block, grid)
    band = continuous_band(spec, sol)
    discrete, continuous, spurious = separate_discrete(spectrum, band, grid, tols)
    counts = {"discrete": len(discrete), "continuous": len(continuous),
              "spurious": len(spurious)}
    return classify(discrete, band, spectrum.scale, tols, counts=counts)
