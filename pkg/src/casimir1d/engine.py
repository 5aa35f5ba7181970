"""Casimir energy and force of a two-mirror cavity.

The primary path integrates on the positive imaginary wavenumber axis,
where the integrand is smooth, real, and cut off exponentially: with the
round-trip factor rho(x) = b(x) e^{-x}, b(x) = rbar1(ix/2L) r2(ix/2L),

    E(L) = 1/(4 pi L)   * int_0^inf dx ln(1 - rho(x))
    F(L) = -1/(4 pi L^2) * int_0^inf dx x rho(x) / (1 - rho(x))

in reduced units (energies 1/length, forces 1/length^2; multiply by
hbar*c for SI).  Rotating the contour is legitimate only for causal
mirrors, which is why non-causal models are refused unless overridden.

A real-axis evaluation of the energy is kept as an oscillatory
cross-check, a term-by-term round-trip series with resummed tail as an
independent route to the force, and a centered difference of the energy
as a consistency check on the force.

Everything here is a pure function; distance sweeps can run one task per
distance with no shared state.  A single call subdivides deterministically,
so results are reproducible bit for bit at a fixed QuadratureSpec.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.integrate import IntegrationWarning, quad
from scipy.special import roots_genlaguerre, spence, zeta

from .cavity import CavityConfig, rotated_reflection_product
from .errors import InvalidParameter, NonCausalModel, ToleranceNotMet

METHOD_ADAPTIVE = "adaptive"
METHOD_LAGUERRE = "laguerre"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for the semi-infinite integrals.

    rel_tol / abs_tol: requested accuracy of the returned value (the
        looser of the two wins, i.e. success means
        error <= max(abs_tol, rel_tol * |value|)).
    budget: for the adaptive rule, the maximum number of subdivisions;
        for the fixed-node rule, the number of exponential-weighted nodes.
    method: "adaptive" (default; adaptive subdivision with endpoint
        extrapolation, handles the integrable log singularity at x = 0)
        or "laguerre" (fixed-node exponential-weighted fast path).
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    budget: int = 200
    method: str = METHOD_ADAPTIVE

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise InvalidParameter("tolerances must be positive")
        if self.budget < 1:
            raise InvalidParameter("budget must be >= 1")
        if self.method not in (METHOD_ADAPTIVE, METHOD_LAGUERRE):
            raise InvalidParameter(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class EnergyResult:
    """Distance-dependent vacuum-energy shift, reduced units (1/length)."""

    value: float
    error: float
    nodes: int
    method: str


@dataclass(frozen=True)
class ForceResult:
    """Casimir force, reduced units (1/length^2); negative means attraction."""

    value: float
    error: float
    nodes: int
    method: str


DEFAULT_SPEC = QuadratureSpec()


def _require_causal(config: CavityConfig, allow_noncausal: bool) -> None:
    if allow_noncausal:
        return
    bad = [m.name for m in (config.model1, config.model2) if not m.causal]
    if bad:
        raise NonCausalModel(
            f"model(s) {bad} are non-causal; rotation to the imaginary axis "
            "is unjustified (pass allow_noncausal=True to override)"
        )


def _check_tolerance(value: float, error: float, spec: QuadratureSpec, what: str) -> None:
    if error > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise ToleranceNotMet(
            f"{what}: estimated error {error:.3e} exceeds requested "
            f"max({spec.abs_tol:.1e}, {spec.rel_tol:.1e}*|{value:.6e}|)"
        )


def _upper_cutoff(spec: QuadratureSpec, prefactor: float = 1.0) -> float:
    # e^{-X} small enough that the truncated tail stays below a tenth of the
    # absolute tolerance after the 1/(4 pi L^n) prefactor; the +5 absorbs the
    # polynomial (X+1) factor of the force tail.  The analytic tail bound is
    # added to the reported error regardless.
    target = spec.abs_tol / (10.0 * (1.0 + abs(prefactor)))
    return min(700.0, max(35.0, 5.0 - math.log(target)))


def _energy_integrand(b):
    def f(x):
        bx = float(b(x))
        if bx == 0.0:
            return 0.0
        if bx > 0.0:
            # 1 - rho via expm1 keeps full precision when rho -> 1 (x -> 0)
            return math.log(-math.expm1(math.log(bx) - x))
        return math.log1p(-bx * math.exp(-x))

    return f


def _one_minus_rho(bx: float, x: float) -> float:
    if bx > 0.0:
        return -math.expm1(math.log(bx) - x)
    return 1.0 - bx * math.exp(-x)


def _energy_residual(b, b0):
    """ln(1 - rho(x)) - ln(1 - b0 e^-x): smooth on [0, inf) for any b0 <= 1."""
    if b0 == 0.0:
        return _energy_integrand(b)

    def f(x):
        bx = float(b(x))
        om = _one_minus_rho(bx, x) if bx != 0.0 else 1.0
        om0 = _one_minus_rho(b0, x)
        return math.log(om) - math.log(om0)

    return f


def _force_integrand(b):
    def f(x):
        bx = float(b(x))
        if bx == 0.0:
            return 0.0
        if bx > 0.0:
            y = math.log(bx) - x
            return x * math.exp(y) / (-math.expm1(y))
        rho = bx * math.exp(-x)
        return x * rho / (1.0 - rho)

    return f


def _quad_checked(f, lo, hi, spec: QuadratureSpec, scale: float = 1.0):
    """scipy QUADPACK with the spec budget; returns (value, abserr, neval).

    `scale` maps the requested absolute tolerance into integral space (the
    caller multiplies the result by `scale` afterwards).
    """
    epsabs = max(1e-300, 0.5 * spec.abs_tol / max(abs(scale), 1e-300))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        out = quad(
            f,
            lo,
            hi,
            epsabs=epsabs,
            epsrel=0.5 * spec.rel_tol,
            limit=spec.budget,
            full_output=1,
        )
    value, abserr, info = out[0], out[1], out[2]
    return value, abserr, int(info["neval"])


def _laguerre_pair(f, n):
    """Fixed-node rule at n and n//2 nodes; error taken as their spread."""
    vals = []
    for m in (max(2, n // 2), n):
        x, w = laggauss(m)
        fx = np.array([f(xi) * math.exp(xi) for xi in x])
        vals.append(float(np.dot(w, fx)))
    return vals[1], abs(vals[1] - vals[0]), n + max(2, n // 2)


def casimir_energy(
    config: CavityConfig,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    allow_noncausal: bool = False,
) -> EnergyResult:
    """Distance-dependent vacuum-energy shift E(L) by rotated-axis quadrature.

    Negative for attractive configurations, exactly zero when either mirror
    is transparent.  The integrand diverges logarithmically at x = 0 when
    both mirrors reflect perfectly there (rho(0) = 1); the singularity is
    integrable and the adaptive rule subdivides into it (panels shrink to
    roundoff scale, ~1e-14 of the interval, which resolves the finite
    contribution).

    Raises ToleranceNotMet when the budget cannot deliver the requested
    tolerance and NonCausalModel for non-causal mirrors without override.
    """
    _require_causal(config, allow_noncausal)
    b = rotated_reflection_product(config)
    f = _energy_integrand(b)
    pref = 1.0 / (4.0 * math.pi * config.distance)
    if spec.method == METHOD_ADAPTIVE:
        cut = _upper_cutoff(spec, pref)
        raw, abserr, nodes = _quad_checked(f, 0.0, cut, spec, scale=pref)
        # tail: |ln(1 - rho)| <= rho/(1 - e^-cut) <= 1.16 e^-x for x >= cut
        tail = 1.16 * math.exp(-cut)
        value = pref * raw
        error = pref * (abserr + tail)
        method = "rotated-adaptive"
    else:
        # the fixed rule cannot see the ln singularity at x = 0, so the
        # singular reference ln(1 - b(0) e^-x) is integrated in closed form
        # (-Li2(b(0))) and only the smooth remainder goes to the nodes
        b0 = float(b(0.0))
        base = -float(spence(1.0 - b0))
        raw, spread, nodes = _laguerre_pair(_energy_residual(b, b0), spec.budget)
        value = pref * (base + raw)
        error = pref * spread
        method = "rotated-laguerre"
    _check_tolerance(value, error, spec, "casimir_energy")
    return EnergyResult(value=value, error=error, nodes=nodes, method=method)


def casimir_force(
    config: CavityConfig,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    allow_noncausal: bool = False,
) -> ForceResult:
    """Casimir force F(L) = -dE/dL by rotated-axis quadrature.

    Same contract as casimir_energy; the integrand x rho/(1 - rho) is
    smooth down to x = 0 (finite limit even at rho(0) = 1).
    """
    _require_causal(config, allow_noncausal)
    b = rotated_reflection_product(config)
    f = _force_integrand(b)
    pref = 1.0 / (4.0 * math.pi * config.distance**2)
    if spec.method == METHOD_ADAPTIVE:
        cut = _upper_cutoff(spec, pref)
        raw, abserr, nodes = _quad_checked(f, 0.0, cut, spec, scale=pref)
        tail = (cut + 1.0) * math.exp(-cut) / (1.0 - math.exp(-cut))
        value = -pref * raw
        error = pref * (abserr + tail)
        method = "rotated-adaptive"
    else:
        raw, spread, nodes = _laguerre_pair(f, spec.budget)
        value = -pref * raw
        error = pref * spread
        method = "rotated-laguerre"
    _check_tolerance(value, error, spec, "casimir_force")
    return ForceResult(value=value, error=error, nodes=nodes, method=method)


def casimir_energy_real_axis(
    config: CavityConfig, k_max: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> EnergyResult:
    """Real-axis form (1/2 pi) Im int_0^k_max dk ln(1 - rbar1 r2 e^{2ikL}).

    Oscillatory cross-check of the rotated-axis energy: converges to it as
    k_max grows for partially transmitting mirrors.  For perfect mirrors
    the integrand is the sawtooth branch of the principal log (|rho| = 1),
    which no cutoff tames; that boundary case is excluded from any
    convergence claim.
    """
    if not (k_max > 0.0):
        raise InvalidParameter(f"k_max must be positive, got {k_max}")
    m1, m2 = config.model1, config.model2
    two_l = 2.0 * config.distance

    def f(k):
        kk = np.asarray(k, dtype=complex)
        _, rbar1, _, _ = m1.amplitudes(kk)
        _, _, r2, _ = m2.amplitudes(kk)
        w = 1.0 - rbar1 * r2 * np.exp(1j * two_l * kk)
        return float(np.angle(w))

    # one breakpoint per round-trip period keeps QUADPACK on the oscillation
    n_periods = int(two_l * k_max / (2.0 * math.pi)) + 1
    inner = QuadratureSpec(
        rel_tol=spec.rel_tol,
        abs_tol=spec.abs_tol,
        budget=max(spec.budget, 10 * n_periods),
        method=METHOD_ADAPTIVE,
    )
    raw, abserr, nodes = _quad_checked(f, 0.0, k_max, inner, scale=1.0 / (2.0 * math.pi))
    value = raw / (2.0 * math.pi)
    error = abserr / (2.0 * math.pi)
    _check_tolerance(value, error, spec, "casimir_energy_real_axis")
    return EnergyResult(value=value, error=error, nodes=nodes, method="real-axis")


def casimir_force_series(
    config: CavityConfig,
    n_max: int,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    resum_tail: bool = True,
    allow_noncausal: bool = False,
) -> ForceResult:
    """Force from the round-trip series F = -(1/4 pi L^2) sum_n int x rho^n dx.

    The first terms are integrated adaptively, the rest with an
    exponential-weighted fixed rule after rescaling x by the decay rate of
    rho^n.  With resum_tail=True (default) the n > n_max remainder is
    resummed: J_n = n^2 I_n approaches a constant with power corrections in
    1/n, so a low-order fit in 1/n summed against Hurwitz zeta functions
    captures the tail essentially exactly (for perfect mirrors J_n = 1 and
    the resummation reproduces sum 1/n^2 = pi^2/6 identically).  The
    reported error then contains the spread of the tail estimate across fit
    orders and windows.

    With resum_tail=False the value is the bare truncated sum and the
    reported error carries a conservative geometric-tail bound.
    """
    if n_max < 1:
        raise InvalidParameter(f"n_max must be >= 1, got {n_max}")
    _require_causal(config, allow_noncausal)
    b = rotated_reflection_product(config)
    pref = 1.0 / (4.0 * math.pi * config.distance**2)

    b0 = float(b(0.0))
    if b0 == 0.0:
        return ForceResult(value=0.0, error=0.0, nodes=0, method="series")

    ns = np.arange(1, n_max + 1)
    j_vals = np.empty(n_max)
    nodes_used = 0
    term_err = 0.0

    n_adaptive = min(12, n_max)
    for n in range(1, n_adaptive + 1):
        term, abserr, nev = _quad_checked(
            lambda x, n=n: x * float(b(x)) ** n * math.exp(-n * x),
            0.0,
            _upper_cutoff(spec, pref),
            spec,
            scale=pref * n_adaptive,
        )
        j_vals[n - 1] = n * n * term
        term_err += abserr
        nodes_used += nev

    if n_max > n_adaptive:
        # matched-decay substitution x = u/(n(1+c)), c = -dlog b/dx at 0
        eps = 1e-6
        with np.errstate(divide="ignore", invalid="ignore"):
            c = -(math.log(abs(float(b(eps)))) - math.log(abs(b0))) / eps
        c = max(0.0, c if math.isfinite(c) else 0.0)
        u, w = roots_genlaguerre(80, 1.0)
        nv = ns[n_adaptive:]
        x = u[None, :] / (nv[:, None] * (1.0 + c))
        bx = b(x)
        with np.errstate(divide="ignore"):
            lb = np.log(np.abs(bx))
        expo = nv[:, None] * lb + c * u[None, :] / (1.0 + c)
        # sign factor matters only for contrived overrides where b < 0
        vals = np.exp(expo) * np.sign(bx) ** (nv[:, None] % 2)
        j_vals[n_adaptive:] = (vals @ w) / (1.0 + c) ** 2
        nodes_used += x.size

    partial = float(np.sum(j_vals / ns.astype(float) ** 2))
    if pref * term_err > max(spec.abs_tol, spec.rel_tol * pref * abs(partial)):
        raise ToleranceNotMet(
            f"casimir_force_series: per-term quadrature error {pref * term_err:.3e} "
            "exceeds the requested tolerance"
        )

    if not resum_tail:
        x_grid = np.linspace(0.0, 60.0, 2401)
        b_grid = np.abs(b(x_grid))
        rho_sup = float(np.max(b_grid * np.exp(-x_grid)))
        bounds = []
        if float(np.max(b_grid)) <= abs(b0) + 1e-12 and abs(b0) <= 1.0:
            # |b| peaks at x = 0: rho^n <= |b0|^n e^{-nx}, I_n <= |b0|^n/n^2
            bounds.append(float(abs(b0) ** (n_max + 1) * zeta(2, n_max + 1)))
        if rho_sup < 1.0:
            bounds.append(abs(j_vals[0]) * rho_sup**n_max / (1.0 - rho_sup))
        tail_bound = min(bounds) if bounds else math.inf
        value = -pref * partial
        error = pref * (tail_bound + term_err)
        return ForceResult(value=value, error=error, nodes=nodes_used, method="series")

    tail, tail_unc = _resummed_tail(ns, j_vals, n_max)
    value = -pref * (partial + tail)
    error = pref * (tail_unc + term_err)
    return ForceResult(value=value, error=error, nodes=nodes_used, method="series-resummed")


def _resummed_tail(ns, j_vals, n_max):
    """Fit J_n ~ sum_p a_p (n_ref/n)^p on trailing windows; sum the n > n_max
    remainder of J_n/n^2 with Hurwitz zeta.  Returns (tail, uncertainty)."""
    estimates = []
    windows = sorted({max(8, n_max // 2), max(8, n_max // 4)})
    for m in windows:
        m = min(m, n_max)
        nf = ns[-m:].astype(float)
        n_ref = nf[0]
        z = n_ref / nf
        for order in (3, 4, 5):
            if m <= order + 2:
                continue
            design = np.vander(z, order + 1, increasing=True)
            coef, *_ = np.linalg.lstsq(design, j_vals[-m:], rcond=None)
            resid = float(np.max(np.abs(design @ coef - j_vals[-m:])))
            tail = float(
                sum(
                    coef[p] * n_ref**p * zeta(p + 2, n_max + 1)
                    for p in range(order + 1)
                )
            )
            estimates.append((order, m, tail, resid))
    if not estimates:
        # n_max too small for any fit: bound the remainder geometrically
        return 0.0, float(zeta(2, n_max + 1))
    order_max = max(e[0] for e in estimates)
    m_max = max(e[1] for e in estimates)
    best = next(e for e in estimates if e[0] == order_max and e[1] == m_max)
    tail, resid = best[2], best[3]
    spread = max(abs(e[2] - tail) for e in estimates)
    return tail, spread + resid * float(zeta(2, n_max + 1))


def perfect_mirror_force(distance: float) -> float:
    """Closed form -pi/(24 L^2) for two perfect mirrors, reduced units."""
    if not (distance > 0.0):
        raise InvalidParameter(f"distance must be positive, got {distance}")
    return -math.pi / (24.0 * distance**2)


def ideal_force_3d(area: float, distance: float) -> float:
    """Magnitude (pi^2/240) A / L^4 of the ideal parallel-plate force in three
    dimensions, reduced units.  Comparison utility only."""
    if not (area > 0.0 and distance > 0.0):
        raise InvalidParameter("area and distance must be positive")
    return (math.pi**2 / 240.0) * area / distance**4


def force_from_energy_fd(
    config: CavityConfig,
    h: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    allow_noncausal: bool = False,
) -> ForceResult:
    """Centered difference -(E(L+h) - E(L-h)) / 2h as a consistency check.

    Step must satisfy 0 < h < L/10.  The reported error combines the
    propagated quadrature errors with a crude O(h^2) truncation estimate
    and is not certified sharp.
    """
    L = config.distance
    if not (0.0 < h < L / 10.0):
        raise InvalidParameter(f"need 0 < h < L/10, got h={h}, L={L}")
    up = CavityConfig(config.model1, config.model2, L + h)
    dn = CavityConfig(config.model1, config.model2, L - h)
    e_up = casimir_energy(up, spec, allow_noncausal=allow_noncausal)
    e_dn = casimir_energy(dn, spec, allow_noncausal=allow_noncausal)
    value = -(e_up.value - e_dn.value) / (2.0 * h)
    error = (e_up.error + e_dn.error) / (2.0 * h) + 5.0 * (h / L) ** 2 * abs(value)
    return ForceResult(
        value=value,
        error=error,
        nodes=e_up.nodes + e_dn.nodes,
        method="energy-fd",
    )
