"""Exception types shared across the package."""


class CasimirError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(CasimirError, ValueError):
    """A model or configuration parameter lies outside its allowed range."""


class EvaluationDomain(CasimirError):
    """Wavenumber outside the closed upper half-plane Im k >= 0."""


class PoleEncountered(CasimirError):
    """Evaluation point too close to a pole of the scattering amplitudes."""


class DegenerateConversion(CasimirError):
    """S <-> T conversion attempted on a non-transmitting scatterer."""


class CavityResonance(CasimirError):
    """Cavity denominator 1 - rbar1*r2*e^(2ikL) vanished; configuration is resonant."""


class ToleranceNotMet(CasimirError):
    """Quadrature budget exhausted before reaching the requested tolerance."""


class NonCausalModel(CasimirError):
    """Contour rotation refused for a model flagged non-causal."""


class NonUnitaryInput(CasimirError):
    """Operation requires a unitary scattering matrix."""


class CutoffTooCoarse(CasimirError):
    """Wavenumber grid too coarse to track the phase of det S between samples."""
