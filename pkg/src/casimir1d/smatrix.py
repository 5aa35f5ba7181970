"""Complex 2x2 scattering- and transfer-matrix algebra.

Conventions: a scattering matrix maps incoming amplitudes (right-mover on
the left side, left-mover on the right side) to outgoing ones and is laid
out as

    S = [[t,    rbar],
         [r,    tbar]]

with transmission on the diagonal.  A transfer matrix maps both amplitudes
on the left of a scatterer to both amplitudes on the right, so chains of
scatterers compose by plain matrix multiplication, right-to-left.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import DegenerateConversion, InvalidParameter

#: |S22| (resp. |T22|) below this admits no meaningful inversion in double
#: precision; conversions raise DegenerateConversion instead.
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class ComplexMat2:
    """Plain 2x2 complex matrix; entries must be finite."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    def __post_init__(self):
        for entry in (self.m11, self.m12, self.m21, self.m22):
            z = complex(entry)
            if not (cmath.isfinite(z)):
                raise InvalidParameter(f"non-finite matrix entry {entry!r}")

    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21


@dataclass(frozen=True)
class ScatteringMatrix:
    """Amplitudes (t, rbar / r, tbar) of a single scatterer at one wavenumber.

    t, r refer to a wave incident from the left, tbar, rbar to one incident
    from the right.  At real wavenumber a physical (flux-conserving) matrix
    is unitary; nothing is enforced here because the same container is used
    at complex wavenumber where unitarity does not apply.
    """

    t: complex
    rbar: complex
    r: complex
    tbar: complex

    def as_mat2(self) -> ComplexMat2:
        return ComplexMat2(self.t, self.rbar, self.r, self.tbar)

    @classmethod
    def from_mat2(cls, m: ComplexMat2) -> "ScatteringMatrix":
        return cls(t=m.m11, rbar=m.m12, r=m.m21, tbar=m.m22)


@dataclass(frozen=True)
class TransferMatrix:
    """Left-to-right amplitude map of a scatterer (multiplicative under chaining)."""

    mat: ComplexMat2


def s_identity() -> ScatteringMatrix:
    """Fully transparent scatterer: unit transmission, no reflection."""
    return ScatteringMatrix(t=1.0 + 0.0j, rbar=0.0j, r=0.0j, tbar=1.0 + 0.0j)


def mat2_mul(a: ComplexMat2, b: ComplexMat2) -> ComplexMat2:
    """Standard matrix product a @ b."""
    return ComplexMat2(
        a.m11 * b.m11 + a.m12 * b.m21,
        a.m11 * b.m12 + a.m12 * b.m22,
        a.m21 * b.m11 + a.m22 * b.m21,
        a.m21 * b.m12 + a.m22 * b.m22,
    )


def unitarity_residual(s: ScatteringMatrix) -> float:
    """Max-norm of S^dag S - 1; zero for an exactly unitary matrix."""
    t, rb, r, tb = s.t, s.rbar, s.r, s.tbar
    # S^dag S entries
    a11 = abs(t) ** 2 + abs(r) ** 2 - 1.0
    a22 = abs(rb) ** 2 + abs(tb) ** 2 - 1.0
    a12 = t.conjugate() * rb + r.conjugate() * tb
    return max(abs(a11), abs(a22), abs(a12))


def det_s(s: ScatteringMatrix) -> complex:
    """Determinant t*tbar - r*rbar.

    For a unitary matrix this equals -r/conj(rbar) and -rbar/conj(r), so it
    has unit modulus and carries the full scattering phase information.
    """
    return s.t * s.tbar - s.r * s.rbar


def s_to_transfer(s: ScatteringMatrix) -> TransferMatrix:
    """Convert scattering to transfer form, T = (1/S22) [[det S, S12], [-S21, 1]].

    Raises DegenerateConversion for |tbar| < DEGENERATE_TOL: a scatterer
    without transmission (e.g. a perfect mirror) has no transfer matrix.
    """
    if abs(s.tbar) < DEGENERATE_TOL:
        raise DegenerateConversion(
            f"|tbar| = {abs(s.tbar):.3e} below {DEGENERATE_TOL:.0e}; "
            "non-transmitting scatterer has no transfer-matrix form"
        )
    d = det_s(s)
    inv = 1.0 / s.tbar
    return TransferMatrix(ComplexMat2(d * inv, s.rbar * inv, -s.r * inv, inv))


def transfer_to_s(t: TransferMatrix) -> ScatteringMatrix:
    """Inverse conversion, S = (1/T22) [[det T, T12], [-T21, 1]]."""
    m = t.mat
    if abs(m.m22) < DEGENERATE_TOL:
        raise DegenerateConversion(
            f"|T22| = {abs(m.m22):.3e} below {DEGENERATE_TOL:.0e}"
        )
    d = m.det()
    inv = 1.0 / m.m22
    return ScatteringMatrix(t=d * inv, rbar=m.m12 * inv, r=-m.m21 * inv, tbar=inv)
