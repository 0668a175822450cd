"""Model definition, closed-form soliton families, and constraint solving.

The governing equation is a nonlinear Schrodinger equation with a complex
PT-symmetric potential and two competing nonlinearities,

    i Psi_z + Psi_xx + [V(x) + i W(x)] Psi + g1 |Psi|^2 Psi
            + g2 |Psi|^(2 kappa) Psi = 0,

with V(x) = -a(a+1) sech^2 x - V1 sech^p x (an extended Rosen-Morse well)
and W(x) = 2 b tanh x (antisymmetric gain/loss). Stationary beams
Psi = phi(x) e^(i lambda z) exist in closed form for two families:

  * family "class1": phi = Phi0 sech(x) e^(i mu x), with p = 2 kappa,
    Phi0^(2 kappa) = V1/g2, Phi0^2 = (a^2 + a + 2)/g1, mu = b,
    lambda = 1 - mu^2.
  * family "class2": phi = Phi0 sech^(1/kappa)(x) e^(i mu x), with
    p = 2/kappa, Phi0^2 = V1/g1,
    Phi0^(2 kappa) = (a(a+1) + 1/kappa + 1/kappa^2)/g2, mu = b kappa,
    lambda = 1/kappa^2 - mu^2.

The amplitude equations fix even powers of Phi0, so a requested parameter
set is feasible only when those right-hand sides are positive.
"""
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (GridTooCoarse, InfeasibleAmplitude, KappaZero,
                     NonLocalizable, OverDetermined, UnderDetermined)
from .grid import Grid, spectral_derivative

_REL_TOL = 1e-12


class Family(str, Enum):
    CLASS1 = "class1"
    CLASS2 = "class2"


@dataclass(frozen=True)
class ModelSpec:
    a: float
    b: float
    v1: float
    kappa: float
    g1: float
    g2: float
    family: Family

    def __post_init__(self):
        if self.kappa == 0:
            raise KappaZero("kappa must be nonzero")


@dataclass(frozen=True)
class StationarySolution:
    phi0: float
    mu: float
    lam: float
    kappa: float
    family: Family


def _well_exponent(spec: ModelSpec) -> float:
    # exponent of the extra sech well in V(x)
    if spec.family is Family.CLASS1:
        return 2.0 * spec.kappa
    return 2.0 / spec.kappa


def sample_potential(spec: ModelSpec, grid: Grid):
    """Sample (V, W) on the grid. V is even, W odd, up to round-off."""
    x = grid.points
    sech = 1.0 / np.cosh(x)
    v = -spec.a * (spec.a + 1.0) * sech ** 2 - spec.v1 * sech ** _well_exponent(spec)
    w = 2.0 * spec.b * np.tanh(x)
    return v, w


def _consistent(x: float, y: float) -> bool:
    return abs(x - y) <= _REL_TOL * max(abs(x), abs(y), 1.0)


def _positive_root(value: float, power: float, context: str) -> float:
    """Solve phi0**power = value for the positive root."""
    if value <= 0:
        raise InfeasibleAmplitude(
            f"{context} requires phi0**{power:g} = {value:g}, "
            "which has no positive root")
    return float(value ** (1.0 / power))


def solve_constraints(family, **knowns):
    """Complete a partial parameter set into a consistent (spec, solution).

    Always required: a, b, kappa. Of the coupled block {phi0, v1, g1, g2}
    exactly enough must be given to determine the rest through the two
    amplitude relations of the family; typical usages are

        solve_constraints("class1", a=.01, b=.3, kappa=3, phi0=1, v1=-4, g2=-4)
        solve_constraints("class2", a=1, b=.003, kappa=3, g1=4, g2=2.44)

    Raises UnderDetermined / OverDetermined for malformed known sets,
    InfeasibleAmplitude when an even power of phi0 would be non-positive,
    KappaZero for kappa = 0.
    """
    family = Family(family)
    allowed = {"a", "b", "kappa", "phi0", "v1", "g1", "g2"}
    unknown = set(knowns) - allowed
    if unknown:
        raise UnderDetermined(f"unrecognized parameters: {sorted(unknown)}")
    missing = {"a", "b", "kappa"} - set(knowns)
    if missing:
        raise UnderDetermined(f"required parameters missing: {sorted(missing)}")

    a = float(knowns["a"])
    b = float(knowns["b"])
    kappa = float(knowns["kappa"])
    if kappa == 0:
        raise KappaZero("kappa must be nonzero")

    phi0_given = knowns.get("phi0")
    v1 = knowns.get("v1")
    g1 = knowns.get("g1")
    g2 = knowns.get("g2")

    # Each family couples phi0 to the strengths through two relations:
    #   phi0^2        = sq_num / sq_den
    #   phi0^(2kappa) = pw_num / pw_den
    if family is Family.CLASS1:
        sq_num = a * a + a + 2.0          # over g1
        pw_num = None                     # v1 over g2
    else:
        sq_num = None                     # v1 over g1
        pw_num = a * (a + 1.0) + 1.0 / kappa + 1.0 / kappa ** 2  # over g2

    candidates = []
    if phi0_given is not None:
        if phi0_given <= 0:
            raise InfeasibleAmplitude(f"phi0 must be positive, got {phi0_given}")
        candidates.append(("given", float(phi0_given)))
    if family is Family.CLASS1:
        if g1 is not None:
            candidates.append(("g1", _positive_root(sq_num / g1, 2.0, "amplitude relation")))
        if v1 is not None and g2 is not None:
            candidates.append(("v1/g2", _positive_root(v1 / g2, 2.0 * kappa, "well/power-law balance")))
    else:
        if v1 is not None and g1 is not None:
            candidates.append(("v1/g1", _positive_root(v1 / g1, 2.0, "well/cubic balance")))
        if g2 is not None:
            candidates.append(("g2", _positive_root(pw_num / g2, 2.0 * kappa, "amplitude relation")))

    if not candidates:
        raise UnderDetermined(
            "cannot determine phi0: give phi0 itself or enough strengths "
            "(class1: g1, or v1 with g2; class2: g2, or v1 with g1)")
    phi0 = candidates[0][1]
    for src, val in candidates[1:]:
        if not _consistent(val, phi0):
            raise OverDetermined(
                f"phi0 from {src} is {val:.15g}, conflicting with "
                f"{candidates[0][0]} value {phi0:.15g}")

    sq = phi0 ** 2
    pw = phi0 ** (2.0 * kappa)
    if family is Family.CLASS1:
        g1_req = sq_num / sq
        if g1 is None:
            g1 = g1_req
        elif not _consistent(g1, g1_req):
            raise OverDetermined(f"g1 = {g1:g} inconsistent, relations give {g1_req:.15g}")
        if v1 is not None and g2 is not None:
            if not _consistent(v1 / g2, pw):
                raise OverDetermined(
                    f"v1/g2 = {v1 / g2:.15g} inconsistent with phi0^(2k) = {pw:.15g}")
        elif v1 is not None:
            g2 = v1 / pw
        elif g2 is not None:
            v1 = g2 * pw
        else:
            raise UnderDetermined("give v1 or g2 to fix the power-law strength")
        mu = b
        lam = 1.0 - mu ** 2
    else:
        g2_req = pw_num / pw
        if g2 is None:
            g2 = g2_req
        elif not _consistent(g2, g2_req):
            raise OverDetermined(f"g2 = {g2:g} inconsistent, relations give {g2_req:.15g}")
        if v1 is not None and g1 is not None:
            if not _consistent(v1 / g1, sq):
                raise OverDetermined(
                    f"v1/g1 = {v1 / g1:.15g} inconsistent with phi0^2 = {sq:.15g}")
        elif v1 is not None:
            g1 = v1 / sq
        elif g1 is not None:
            v1 = g1 * sq
        else:
            raise UnderDetermined("give v1 or g1 to fix the cubic strength")
        mu = b * kappa
        lam = 1.0 / kappa ** 2 - mu ** 2

    spec = ModelSpec(a=a, b=b, v1=float(v1), kappa=kappa,
                     g1=float(g1), g2=float(g2), family=family)
    sol = StationarySolution(phi0=phi0, mu=float(mu), lam=float(lam),
                             kappa=kappa, family=family)
    return spec, sol


def evaluate_solution(sol: StationarySolution, grid: Grid) -> np.ndarray:
    """Sample the closed-form beam phi(x) = Phi0 sech^p(x) e^(i mu x),
    p = 1 for class1 and p = 1/kappa for class2."""
    if sol.family is Family.CLASS1:
        p = 1.0
    else:
        if sol.kappa < 0:
            # sech^(1/kappa) with kappa < 0 grows at infinity
            raise NonLocalizable(
                f"class2 profile with kappa = {sol.kappa:g} is not localized")
        p = 1.0 / sol.kappa
    x = grid.points
    sech = 1.0 / np.cosh(x)
    return sol.phi0 * sech ** p * np.exp(1j * sol.mu * x)


def interior_mask(grid: Grid, fraction: float = 0.8) -> np.ndarray:
    """Boolean mask of the middle `fraction` of the box, where tanh and
    sech wrap-around contamination is negligible."""
    return np.abs(grid.points) <= fraction * grid.half_width


def stationary_residual(field: np.ndarray, spec: ModelSpec, lam: float,
                        grid: Grid) -> float:
    """Sup-norm defect of the stationary equation over the box interior.

    Substitutes the sampled field into
        phi_xx + (V + iW) phi + g1 |phi|^2 phi + g2 |phi|^(2 kappa) phi
            - lambda phi
    with spectral derivatives. The outer 20% of points is excluded since
    tanh is not periodic; a GridTooCoarse warning fires when the field has
    not decayed below 1e-10 at the box edge.
    """
    field = np.asarray(field, dtype=complex)
    boundary = max(abs(field[0]), abs(field[-1]))
    if boundary > 1e-10:
        warnings.warn(
            f"|field| = {boundary:.3e} at the box edge; spectral wrap-around "
            "will contaminate the residual", GridTooCoarse, stacklevel=2)
    v, w = sample_potential(spec, grid)
    mod2 = np.abs(field) ** 2
    res = (spectral_derivative(field, grid, order=2)
           + (v + 1j * w) * field
           + spec.g1 * mod2 * field
           + spec.g2 * mod2 ** spec.kappa * field
           - lam * field)
    return float(np.max(np.abs(res[interior_mask(grid)])))


def power_flow(field: np.ndarray, grid: Grid) -> np.ndarray:
    """Transverse power flow S = (i/2)(phi phi_x* - phi* phi_x).

    Equals Im(phi* phi_x); real by construction. For class1 beams this is
    b Phi0^2 sech^2 x, for class2 it is b kappa Phi0^2 sech^(2/kappa) x.
    """
    dfield = spectral_derivative(np.asarray(field, dtype=complex), grid, order=1)
    return np.imag(np.conj(field) * dfield)
