"""Closed-form solitons of a Schrodinger model with a complex sech-type
potential and two competing power nonlinearities: constraint solving,
linear-stability spectra, parameter sweeps, and split-step propagation.
"""
from .config import RunConfig
from .errors import (ConfigError, ConfigurationError, GridTooCoarse,
                     InconsistentParameters, InfeasibleAmplitude, KappaZero,
                     NoConvergence, NoGrowthWindow, NonConvergedStep,
                     NonLocalizable, NumericalError, OverDetermined,
                     PtsolError, StepUnstable, UnderDetermined)
from .grid import Grid, fourier_diff_matrix, spectral_derivative
from .linearize import LinearizedOperator, build_operators, direct_frechet_operator
from .model import (Family, ModelSpec, StationarySolution, evaluate_solution,
                    power_flow, sample_potential, solve_constraints,
                    stationary_residual)
from .propagate import (PropagationRecord, measure_growth, perturbed,
                        split_step)
from .spectra import (BandLocus, EigenPair, Spectrum, StabilityReport,
                      Tolerances, classify, compute_spectrum, continuous_band,
                      eig_dense, separate_discrete, stability_report)
from .sweep import (BifurcationEvent, SweepResult, Trajectory,
                    detect_bifurcation, refine_event, run_sweep)

__version__ = "0.1.0"

__all__ = [
    "BandLocus", "BifurcationEvent", "ConfigError", "ConfigurationError",
    "EigenPair", "Family", "Grid", "GridTooCoarse", "InconsistentParameters",
    "InfeasibleAmplitude", "KappaZero", "LinearizedOperator", "ModelSpec",
    "NoConvergence", "NoGrowthWindow", "NonConvergedStep", "NonLocalizable",
    "NumericalError", "OverDetermined", "PropagationRecord", "PtsolError",
    "RunConfig", "Spectrum", "StabilityReport", "StationarySolution",
    "StepUnstable", "SweepResult", "Tolerances", "Trajectory",
    "UnderDetermined", "build_operators", "classify", "compute_spectrum",
    "continuous_band", "detect_bifurcation", "direct_frechet_operator",
    "eig_dense", "evaluate_solution", "fourier_diff_matrix", "measure_growth",
    "perturbed", "power_flow", "refine_event", "run_sweep", "sample_potential",
    "separate_discrete", "solve_constraints", "spectral_derivative",
    "split_step", "stability_report", "stationary_residual",
]
