"""Finite periodic-box mode sums, the brute-force check on the continuum engine.

A scatterer placed in a periodic box of length Lbox shifts each pair of
counter-propagating modes; the pair shift follows from det S alone,

    dk(+) + dk(-) = (i / Lbox) ln det S,

real because |det S| = 1.  Summing half the shifted wavenumbers over the
unperturbed grid k_n = 2 pi n / Lbox gives the vacuum-energy shift of the
box.  For a two-mirror cavity the determinant factorizes into the two
single-mirror determinants times the pure-phase cavity factor
(1 - rho*)/(1 - rho), and the sum is assembled from those parts:

  * the single-mirror phases are slowly varying and are unwrapped
    continuously along a refined wavenumber grid (this is where an
    under-resolved grid is detectable and raises CutoffTooCoarse);
  * the cavity factor contributes 2 Im ln(1 - rho) with the principal
    branch, which is already continuous for partially transmitting
    mirrors because Re(1 - rho) >= 0, and for perfect mirrors is the
    sawtooth whose exact resonances are assigned their midpoint value 0.

Only differences of these sums at two separations are physical; the
single-mirror parts are distance-independent and cancel there, while the
remaining cutoff sensitivity is tamed by an optional cosine-rolloff window
over the top of the spectrum (BoxSpec.window_fraction).  With a sharp
cutoff the perfect-mirror sum oscillates in a band instead of converging,
so the windowed form is what the difference oracle and the CLI use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import cmath
import numpy as np

from .cavity import CavityConfig
from .errors import CutoffTooCoarse, InvalidParameter, NonUnitaryInput
from .mirrors import ScattererModel
from .smatrix import ScatteringMatrix, det_s

#: a principal-value phase step above this fraction of pi means the grid
#: cannot distinguish winding directions any more
UNWRAP_JUMP_TOL = 0.95 * np.pi

#: |1 - rho| below this counts as an exact cavity resonance of the sawtooth
EXACT_RESONANCE_TOL = 1e-9

#: unitarity slack on |det S| accepted by the shift formula
DET_MODULUS_TOL = 1e-10


@dataclass(frozen=True)
class BoxSpec:
    """Periodic-box discretization parameters.

    box_length: circumference Lbox of the periodic box (>> mirror distance).
    k_max: wavenumber cutoff of the mode sum.
    resolution: refinement of the phase-tracking grid, in points per mode
        spacing 2 pi / Lbox.
    window_fraction: fraction of [0, k_max] over which mode contributions
        are rolled off with a raised cosine before the cutoff; 0 keeps the
        sharp sum.
    """

    box_length: float
    k_max: float
    resolution: int = 4
    window_fraction: float = 0.0

    def __post_init__(self):
        if not (self.box_length > 0.0 and self.k_max > 0.0):
            raise InvalidParameter("box_length and k_max must be positive")
        if self.resolution < 1:
            raise InvalidParameter("resolution must be >= 1")
        if not (0.0 <= self.window_fraction < 1.0):
            raise InvalidParameter("window_fraction must lie in [0, 1)")


def eigen_branches(s: ScatteringMatrix) -> Tuple[complex, complex]:
    """The two values of exp(-ik Lbox) allowed by periodic boundary conditions,

        (t + tbar)/2 +- sqrt((t + tbar)^2/4 - det S),

    returned as an unordered pair (the +- labeling carries no physics; only
    branch-symmetric combinations are used downstream).  Both values have
    unit modulus when S is unitary.
    """
    h = 0.5 * (s.t + s.tbar)
    root = cmath.sqrt(h * h - det_s(s))
    return h + root, h - root


def wavenumber_shift_total(s: ScatteringMatrix, box_length: float) -> float:
    """Summed pair shift dk(+) + dk(-) = Re[(i/Lbox) Log det S], principal branch.

    Raises NonUnitaryInput when |det S| strays from 1 by more than
    DET_MODULUS_TOL; the imaginary part is then guaranteed negligible and
    only the real part is returned.
    """
    if not (box_length > 0.0):
        raise InvalidParameter(f"box_length must be positive, got {box_length}")
    d = det_s(s)
    if abs(abs(d) - 1.0) > DET_MODULUS_TOL:
        raise NonUnitaryInput(f"|det S| = {abs(d)!r} deviates from 1 beyond tolerance")
    return -cmath.phase(d) / box_length


def mode_wavenumbers(box: BoxSpec) -> np.ndarray:
    """Unperturbed mode grid 2 pi n / Lbox, n = 1, 2, ... up to k_max."""
    dk = 2.0 * np.pi / box.box_length
    n_modes = int(np.floor(box.k_max / dk))
    return dk * np.arange(1, n_modes + 1)


def _unwrapped_det_phase(model: ScattererModel, k_fine: np.ndarray) -> np.ndarray:
    """Continuously unwrapped arg det S along the fine grid, anchored at the
    principal value of the first point.  Raises CutoffTooCoarse when a
    principal-value step exceeds UNWRAP_JUMP_TOL."""
    t, rbar, r, tbar = model.amplitudes(k_fine.astype(complex))
    phase = np.angle(t * tbar - r * rbar)
    steps = np.diff(phase)
    steps = (steps + np.pi) % (2.0 * np.pi) - np.pi
    worst = float(np.max(np.abs(steps))) if steps.size else 0.0
    if worst > UNWRAP_JUMP_TOL:
        raise CutoffTooCoarse(
            f"det-S phase of model {model.name!r} advances {worst:.3f} rad "
            "between grid points; raise the resolution"
        )
    return np.concatenate(([phase[0]], phase[0] + np.cumsum(steps)))


def _window(k: np.ndarray, box: BoxSpec) -> np.ndarray:
    if box.window_fraction == 0.0:
        return np.ones_like(k)
    k0 = box.k_max * (1.0 - box.window_fraction)
    w = np.ones_like(k)
    roll = k > k0
    w[roll] = 0.5 * (1.0 + np.cos(np.pi * (k[roll] - k0) / (box.k_max - k0)))
    return w


def mode_sum_energy_shift(config: CavityConfig, box: BoxSpec) -> float:
    """Vacuum-energy shift of the boxed cavity, (1/2) sum_n (dk(+) + dk(-)).

    The running sum of the single-mirror parts grows logarithmically with
    k_max (the divergent, distance-independent self-energy); only
    differences at two separations are claimed convergent.  Requires
    box_length >= 50 * distance so the box does not squeeze the cavity.
    """
    lbox = box.box_length
    if lbox < 50.0 * config.distance:
        raise InvalidParameter(
            f"box_length {lbox} < 50 * distance {config.distance}; box too small"
        )
    k_modes = mode_wavenumbers(box)
    if k_modes.size == 0:
        return 0.0
    res = box.resolution
    dk_fine = (2.0 * np.pi / lbox) / res
    k_fine = dk_fine * np.arange(1, k_modes.size * res + 1)

    phi1 = _unwrapped_det_phase(config.model1, k_fine)[res - 1 :: res]
    phi2 = _unwrapped_det_phase(config.model2, k_fine)[res - 1 :: res]

    _, rbar1, _, _ = config.model1.amplitudes(k_modes.astype(complex))
    _, _, r2, _ = config.model2.amplitudes(k_modes.astype(complex))
    one_minus_rho = 1.0 - rbar1 * r2 * np.exp(2j * k_modes * config.distance)
    im_ln = np.where(
        np.abs(one_minus_rho) < EXACT_RESONANCE_TOL, 0.0, np.angle(one_minus_rho)
    )

    shifts = (-phi1 - phi2 + 2.0 * im_ln) / lbox
    return float(0.5 * np.sum(_window(k_modes, box) * shifts))


def energy_difference_oracle(
    model1: ScattererModel,
    model2: ScattererModel,
    distance_a: float,
    distance_b: float,
    box: BoxSpec,
) -> float:
    """Mode-sum estimate of E(L_a) - E(L_b) for the same mirror pair.

    The distance-independent single-mirror sums cancel exactly between the
    two configurations (same grid, same phases), leaving the cavity part,
    which converges to the continuum energy difference as the box and the
    cutoff grow.
    """
    shift_a = mode_sum_energy_shift(CavityConfig(model1, model2, distance_a), box)
    shift_b = mode_sum_energy_shift(CavityConfig(model1, model2, distance_b), box)
    return shift_a - shift_b
