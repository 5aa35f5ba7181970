"""Two mirrors and the vacuum between them.

Composition of scatterers, the cavity determinant in ratio and factorized
form, and the round-trip reflection factor that every distance-dependent
quantity is built from.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CavityResonance, DegenerateConversion, InvalidParameter
from .mirrors import ScattererModel, evaluate
from .smatrix import (
    ComplexMat2,
    ScatteringMatrix,
    TransferMatrix,
    det_s,
    mat2_mul,
    s_to_transfer,
    transfer_to_s,
)

#: |1 - rbar1*r2*e^{2ikL}| below this counts as exactly resonant
RESONANCE_TOL = 1e-12


@dataclass(frozen=True)
class CavityConfig:
    """Left mirror, right mirror, and their separation (reference planes)."""

    model1: ScattererModel
    model2: ScattererModel
    distance: float

    def __post_init__(self):
        if not (self.distance > 0.0):
            raise InvalidParameter(f"distance must be positive, got {self.distance}")
        overlap = self.model1.halfwidth + self.model2.halfwidth
        if self.distance <= overlap:
            raise InvalidParameter(
                f"mirrors overlap: distance {self.distance} <= summed halfwidths {overlap}"
            )


def free_propagation(length: float, k: complex) -> TransferMatrix:
    """Transfer matrix diag(e^{ikL}, e^{-ikL}) of an empty stretch of length L."""
    if not (length > 0.0):
        raise InvalidParameter(f"length must be positive, got {length}")
    ph = np.exp(1j * complex(k) * length)
    return TransferMatrix(ComplexMat2(ph, 0.0j, 0.0j, 1.0 / ph))


def compose_adjacent(s1: ScatteringMatrix, s2: ScatteringMatrix) -> ScatteringMatrix:
    """Composite of two scatterers back to back (no propagation in between).

    Closed form with denominator 1 - rbar1*r2, which resums every sequence
    of back-and-forth reflections between the pair:

        t    = t1 t2 / (1 - rbar1 r2)
        r    = r1 + r2 t1 tbar1 / (1 - rbar1 r2)
        rbar = rbar2 + rbar1 t2 tbar2 / (1 - rbar1 r2)
        tbar = tbar1 tbar2 / (1 - rbar1 r2)
    """
    den = 1.0 - s1.rbar * s2.r
    if abs(den) < RESONANCE_TOL:
        raise CavityResonance(f"|1 - rbar1*r2| = {abs(den):.3e}: resonant composition")
    inv = 1.0 / den
    return ScatteringMatrix(
        t=s1.t * s2.t * inv,
        rbar=s2.rbar + s1.rbar * s2.t * s2.tbar * inv,
        r=s1.r + s2.r * s1.t * s1.tbar * inv,
        tbar=s1.tbar * s2.tbar * inv,
    )


def cavity_smatrix(config: CavityConfig, k: complex) -> ScatteringMatrix:
    """Composite scattering matrix of mirror 1, a stretch L, mirror 2.

    Built from the transfer-matrix chain T = TL^-1 T2 TL T1 (read right to
    left).  The trailing inverse propagation keeps the overall length of
    the surrounding system fixed when the cavity is embedded in it; it only
    adjusts diagonal phases and leaves the distance-dependent part of
    det S untouched (explicit in the factorized determinant).

    Requires both mirrors to transmit at k; use cavity_det_s for the
    determinant of opaque-mirror cavities.
    """
    s1 = evaluate(config.model1, k)
    s2 = evaluate(config.model2, k)
    t1 = s_to_transfer(s1)
    t2 = s_to_transfer(s2)
    tl = free_propagation(config.distance, k)
    tl_inv = free_propagation(config.distance, -complex(k))  # diag swapped
    total = mat2_mul(tl_inv.mat, mat2_mul(t2.mat, mat2_mul(tl.mat, t1.mat)))
    try:
        return transfer_to_s(TransferMatrix(total))
    except DegenerateConversion as exc:
        raise CavityResonance(f"resonant cavity at k = {k}") from exc


def cavity_det_s(config: CavityConfig, k: complex) -> complex:
    """det S of the cavity from the closed-form ratio

        [det S1 det S2 - r1 rbar2 e^{-2ikL}] / [1 - rbar1 r2 e^{2ikL}].

    Evaluated directly from the mirror amplitudes rather than via matrix
    products, which stays stable when the mirrors are nearly opaque.  At
    real k this equals the factorized form (cavity_det_s_factorized).
    """
    s1 = evaluate(config.model1, k)
    s2 = evaluate(config.model2, k)
    phase = np.exp(2j * complex(k) * config.distance)
    den = 1.0 - s1.rbar * s2.r * phase
    if abs(den) < RESONANCE_TOL:
        raise CavityResonance(f"cavity resonance at k = {k}")
    num = det_s(s1) * det_s(s2) - s1.r * s2.rbar / phase
    return num / den


def cavity_det_s_factorized(config: CavityConfig, k: complex) -> complex:
    """det S as det S2 * det S1 * (1 - rho*)/(1 - rho), rho = rbar1 r2 e^{2ikL}.

    Valid at real k, where the last factor is a pure phase and isolates the
    distance-dependent part of the determinant from the two single-mirror
    factors.
    """
    s1 = evaluate(config.model1, k)
    s2 = evaluate(config.model2, k)
    rho = s1.rbar * s2.r * np.exp(2j * complex(k) * config.distance)
    den = 1.0 - rho
    if abs(den) < RESONANCE_TOL:
        raise CavityResonance(f"cavity resonance at k = {k}")
    return det_s(s2) * det_s(s1) * (1.0 - rho.conjugate()) / den


def round_trip(config: CavityConfig, x: float) -> float:
    """Round-trip factor on the rotated axis, rho(x) = rbar1 r2 e^{-x}.

    The mirrors are evaluated at k = ix/2L, where causal symmetric models
    have real reflection amplitudes, so the result is real.  Perfect
    mirrors give exactly e^{-x}; partial mirrors fall strictly below.
    """
    if x < 0.0:
        raise InvalidParameter(f"x must be >= 0, got {x}")
    k = 0.5j * x / config.distance
    s1 = evaluate(config.model1, k)
    s2 = evaluate(config.model2, k)
    val = s1.rbar * s2.r * np.exp(-x)
    return float(val.real)


def rotated_reflection_product(config: CavityConfig):
    """Vectorized b(x) = Re[rbar1(ix/2L) r2(ix/2L)], the round-trip factor
    without its e^{-x} cutoff.  Used by the quadrature engine."""
    m1, m2 = config.model1, config.model2
    two_l = 2.0 * config.distance

    def b(x):
        k = 1j * np.asarray(x, dtype=float) / two_l
        _, rbar1, _, _ = m1.amplitudes(k)
        _, _, r2, _ = m2.amplitudes(k)
        return np.real(rbar1 * r2)

    return b


def round_trip_expansion(
    s1: ScatteringMatrix, s2: ScatteringMatrix, n: int
) -> ScatteringMatrix:
    """Adjacent composition with the resummed denominator replaced by the
    geometric series truncated after n round trips.

    n = 0 keeps only the single-pass amplitudes (t = t1 t2 and one
    reflection term each); n -> infinity converges to compose_adjacent with
    entrywise error at most |rbar1 r2|^(n+1) / (1 - |rbar1 r2|).
    """
    if n < 0:
        raise InvalidParameter(f"n must be >= 0, got {n}")
    z = s1.rbar * s2.r
    series = 0.0j
    term = 1.0 + 0.0j
    for _ in range(n + 1):
        series += term
        term *= z
    return ScatteringMatrix(
        t=s1.t * s2.t * series,
        rbar=s2.rbar + s1.rbar * s2.t * s2.tbar * series,
        r=s1.r + s2.r * s1.t * s1.tbar * series,
        tbar=s1.tbar * s2.tbar * series,
    )
