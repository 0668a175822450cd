"""Exception and warning taxonomy for the soliton stability toolkit.

Errors split into two groups: configuration problems (the requested model
cannot exist or is malformed) and numerical failures (the computation ran
but produced something unusable). The CLI maps the first group to exit
code 2 and the second to exit code 3.
"""


class PtsolError(Exception):
    """Base class for all toolkit errors."""


# -- configuration / feasibility -------------------------------------------

class ConfigurationError(PtsolError):
    """The requested model or run configuration is invalid."""


class InfeasibleAmplitude(ConfigurationError):
    """An even power of the amplitude came out non-positive."""


class UnderDetermined(ConfigurationError):
    """Not enough known parameters to close the constraint relations."""


class OverDetermined(ConfigurationError):
    """Known parameters are mutually inconsistent."""


class KappaZero(ConfigurationError):
    """kappa = 0 leaves the power-law exponent undefined."""


class NonLocalizable(ConfigurationError):
    """Requested profile grows at infinity (second family with kappa < 0)."""


class ConfigError(ConfigurationError):
    """Malformed run-configuration file or override string."""


# -- numerical failures -----------------------------------------------------

class NumericalError(PtsolError):
    """A numerical stage failed its own contract."""


class InconsistentParameters(NumericalError):
    """Stationary residual too large for the spectrum to be meaningful."""


class NoConvergence(NumericalError):
    """Dense eigensolver failed to converge or failed certification."""


class StepUnstable(NumericalError):
    """Propagation blew up (peak amplitude grew by more than 10^3)."""


class NonConvergedStep(NumericalError):
    """Step-halving check failed: dz too large for the requested accuracy."""


# -- advisories --------------------------------------------------------------

class GridTooCoarse(UserWarning):
    """Field does not decay below 1e-10 at the box edge; wrap-around error
    will contaminate spectral derivatives."""


class NoGrowthWindow(UserWarning):
    """Deviation never reached 10x its initial value; growth rate is 0."""
