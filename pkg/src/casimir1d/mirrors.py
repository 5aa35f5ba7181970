"""Parameterized mirror models.

Every model maps a wavenumber k in the closed upper half-plane to a
ScatteringMatrix.  Reduced units are used throughout: lengths in one common
unit, couplings in inverse lengths; no mass or action constants appear.

The amplitude callables accept scalars or numpy arrays of wavenumbers and
broadcast; `evaluate` is the checked scalar entry point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np

from .errors import EvaluationDomain, InvalidParameter, PoleEncountered
from .smatrix import ScatteringMatrix

#: evaluation this close to a listed amplitude pole is refused
POLE_TOL = 1e-12

AmplitudeFn = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class ScattererModel:
    """A named mirror with closed-form amplitudes.

    symmetric: r == rbar and t == tbar identically.
    causal: no amplitude poles in the open upper half-plane, so contour
        rotation onto the positive imaginary axis is legitimate.
    halfwidth: spatial half-extent of the scattering region around its
        reference plane (0 for pointlike mirrors).  Two mirrors in a cavity
        must not overlap, so the separation has to exceed the sum of
        halfwidths.
    """

    name: str
    params: Tuple[Tuple[str, float], ...]
    symmetric: bool
    causal: bool
    amplitudes: AmplitudeFn
    halfwidth: float = 0.0
    poles: Tuple[complex, ...] = field(default_factory=tuple)

    def spec_string(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{key}={val:g}" for key, val in self.params)
        return f"{self.name}:{inner}"


def evaluate(model: ScattererModel, k: complex) -> ScatteringMatrix:
    """Scattering matrix of `model` at wavenumber k, Im k >= 0.

    Raises EvaluationDomain for Im k < 0 and PoleEncountered when k sits
    within POLE_TOL of a known amplitude pole (or the amplitudes come out
    non-finite).
    """
    k = complex(k)
    if k.imag < 0.0:
        raise EvaluationDomain(f"Im k = {k.imag} < 0; lower half-plane not allowed")
    for p in model.poles:
        if abs(k - p) < POLE_TOL:
            raise PoleEncountered(f"k = {k} within {POLE_TOL:.0e} of pole at {p}")
    t, rbar, r, tbar = (complex(z) for z in model.amplitudes(np.asarray(k, dtype=complex)))
    for z in (t, rbar, r, tbar):
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            raise PoleEncountered(f"non-finite amplitude at k = {k}")
    return ScatteringMatrix(t=t, rbar=rbar, r=r, tbar=tbar)


def delta_scatterer(g: float) -> ScattererModel:
    """Pointlike mirror of coupling g >= 0 (inverse-length units).

    r = g/(2ik - g) and t = 1 + r: perfectly reflecting at k -> 0,
    transparent at k -> infinity.  The only amplitude pole sits at
    k = -ig/2 in the lower half-plane, so the model is causal.  g < 0 is
    rejected: it would move that pole to +i|g|/2 (a bound state) and break
    the rotation onto the imaginary axis.
    """
    g = float(g)
    if g < 0.0:
        raise InvalidParameter(
            f"g = {g} < 0: bound-state pole at k = i|g|/2 invalidates rotation"
        )

    if g == 0.0:
        def amps(k):
            one = np.ones_like(k)
            zero = np.zeros_like(k)
            return one, zero, zero, one

        return ScattererModel("delta", (("g", 0.0),), True, True, amps)

    def amps(k):
        r = g / (2j * k - g)
        t = 1.0 + r
        return t, r, r, t

    return ScattererModel(
        "delta", (("g", g),), True, True, amps, poles=(-0.5j * g,)
    )


def perfect_mirror() -> ScattererModel:
    """Idealized mirror: r = rbar = -1, t = tbar = 0 at every wavenumber."""

    def amps(k):
        mone = np.full_like(k, -1.0 + 0.0j)
        zero = np.zeros_like(k)
        return zero, mone, mone, zero

    return ScattererModel("perfect", (), True, True, amps)


def constant_reflectivity(rho: float) -> ScattererModel:
    """Scale-free test mirror with k-independent reflection rho in [-1, 0].

    Unitarity of a symmetric mirror forces the transmission to sit a
    quarter wave out of phase with the reflection, so t = i*sqrt(1 - rho^2)
    (magnitude sqrt(1 - rho^2)).  A k-independent response violates
    causality, hence the model is flagged non-causal and rotated-contour
    operations refuse it unless explicitly overridden.
    """
    rho = float(rho)
    if not (-1.0 <= rho <= 0.0):
        raise InvalidParameter(f"rho = {rho} outside [-1, 0]")
    tmag = float(np.sqrt(1.0 - rho * rho))

    def amps(k):
        r = np.full_like(k, rho + 0.0j)
        t = np.full_like(k, 1j * tmag)
        return t, r, r, t

    return ScattererModel("const", (("rho", rho),), True, False, amps)


def rect_barrier_scatterer(v0: float, a: float) -> ScattererModel:
    """Square bump of strength v0 > 0 and width a > 0, centered on the origin.

    Inside the bump the wave equation reads psi'' + (k^2 - 2 v0) psi = 0, so
    the interior wavenumber is q = sqrt(k^2 - 2 v0); matching plane waves at
    the two faces gives, with D = 2qk cos(qa) - i(k^2 + q^2) sin(qa),

        r = e^{-ika} i (q^2 - k^2) sin(qa) / D
        t = e^{-ika} 2qk / D.

    Both are even in q, so the square-root branch is irrelevant.  Centering
    makes the model symmetric.  Shrinking a at fixed strength-width product
    2*v0*a = g reproduces the pointlike mirror of coupling g.

    Note the amplitudes are referenced to the barrier center: on the
    positive imaginary axis |r(i kappa)| picks up a factor e^{kappa a} from
    the half-width offset and is not bounded by 1, unlike pointlike
    mirrors.  Cavity configurations must keep the mirrors disjoint
    (separation above the summed halfwidths), which restores the decay of
    the round-trip factor.
    """
    v0 = float(v0)
    a = float(a)
    if v0 <= 0.0 or a <= 0.0:
        raise InvalidParameter(f"need v0 > 0 and a > 0, got v0={v0}, a={a}")
    u = 2.0 * v0

    def amps(k):
        q = np.sqrt(k * k - u)
        s = np.sin(q * a)
        c = np.cos(q * a)
        dd = 2.0 * q * k * c - 1j * (k * k + q * q) * s
        ph = np.exp(-1j * k * a)
        r = ph * 1j * (q * q - k * k) * s / dd
        t = ph * 2.0 * q * k / dd
        return t, r, r, t

    return ScattererModel(
        "barrier", (("v0", v0), ("a", a)), True, True, amps, halfwidth=0.5 * a
    )


def lc_shunt_scatterer(z0: float, shunt_l: float) -> ScattererModel:
    """Shunt inductor across a matched transmission line of impedance z0.

    A voltage wave on a line of characteristic impedance z0 hitting a shunt
    element Z sees Z in parallel with the matched continuation, so
    r = -z0 / (2Z + z0).  For an inductor, Z = -i omega shunt_l in the
    e^{-i omega t} convention, and with unit wave speed omega = k:

        r = -z0 / (z0 - 2ik shunt_l) = g_eff / (2ik - g_eff),
        g_eff = z0 / shunt_l.

    Voltage continuity at the node gives t = 1 + r.  The response is
    therefore identical to a pointlike mirror of coupling g_eff; the sign
    of g_eff is positive in this convention (the inductor shorts the line
    at DC, r -> -1 as k -> 0).
    """
    z0 = float(z0)
    shunt_l = float(shunt_l)
    if z0 <= 0.0 or shunt_l <= 0.0:
        raise InvalidParameter(f"need z0 > 0 and shunt_l > 0, got {z0}, {shunt_l}")
    g_eff = z0 / shunt_l

    def amps(k):
        r = g_eff / (2j * k - g_eff)
        t = 1.0 + r
        return t, r, r, t

    return ScattererModel(
        "lc", (("z0", z0), ("l", shunt_l)), True, True, amps, poles=(-0.5j * g_eff,)
    )


# ---------------------------------------------------------------------------
# model specification strings (CLI surface): delta:g=1.5, perfect,
# const:rho=-0.5, barrier:v0=2,a=0.1, lc:z0=50,l=2
# ---------------------------------------------------------------------------

_FACTORIES = {
    "delta": (delta_scatterer, ("g",)),
    "perfect": (perfect_mirror, ()),
    "const": (constant_reflectivity, ("rho",)),
    "barrier": (rect_barrier_scatterer, ("v0", "a")),
    "lc": (lc_shunt_scatterer, ("z0", "l")),
}


def parse_model_spec(spec: str) -> ScattererModel:
    """Build a model from its specification string; InvalidParameter on bad input."""
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    if name not in _FACTORIES:
        raise InvalidParameter(
            f"unknown model {name!r}; expected one of {sorted(_FACTORIES)}"
        )
    factory, keys = _FACTORIES[name]
    if not keys:
        if rest:
            raise InvalidParameter(f"model {name!r} takes no parameters, got {rest!r}")
        return factory()
    given = {}
    if not rest:
        raise InvalidParameter(f"model {name!r} needs parameters {keys}")
    for item in rest.split(","):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq or key not in keys:
            raise InvalidParameter(f"bad parameter {item!r} for model {name!r}")
        try:
            given[key] = float(val)
        except ValueError:
            raise InvalidParameter(f"cannot parse value in {item!r}") from None
    missing = [key for key in keys if key not in given]
    if missing:
        raise InvalidParameter(f"model {name!r} missing parameters {missing}")
    return factory(*(given[key] for key in keys))
