import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir1d import (
    ComplexMat2,
    InvalidParameter,
    DegenerateConversion,
    ScatteringMatrix,
    TransferMatrix,
    delta_scatterer,
    det_s,
    evaluate,
    lc_shunt_scatterer,
    mat2_mul,
    perfect_mirror,
    rect_barrier_scatterer,
    s_identity,
    s_to_transfer,
    transfer_to_s,
    unitarity_residual,
)
from casimir1d.cavity import free_propagation


def approx_complex(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(b))


def test_mat2_identity_neutral():
    ident = ComplexMat2(1, 0, 0, 1)
    m = ComplexMat2(1 + 2j, 0.3, -1j, 0.7 - 0.1j)
    prod = mat2_mul(ident, m)
    assert (prod.m11, prod.m12, prod.m21, prod.m22) == (m.m11, m.m12, m.m21, m.m22)


def test_mat2_inverse_gives_identity():
    m = ComplexMat2(2 + 1j, 0.5, -0.25j, 1 - 1j)
    d = m.det()
    inv = ComplexMat2(m.m22 / d, -m.m12 / d, -m.m21 / d, m.m11 / d)
    prod = mat2_mul(m, inv)
    assert approx_complex(prod.m11, 1) and approx_complex(prod.m22, 1)
    assert abs(prod.m12) < 1e-14 and abs(prod.m21) < 1e-14


def test_mat2_free_propagation_composes():
    k = 0.9
    l1, l2 = 0.6, 1.7
    prod = mat2_mul(free_propagation(l2, k).mat, free_propagation(l1, k).mat)
    combined = free_propagation(l1 + l2, k).mat
    for attr in ("m11", "m12", "m21", "m22"):
        assert approx_complex(getattr(prod, attr), getattr(combined, attr))


def test_mat2_rejects_nonfinite():
    with pytest.raises(InvalidParameter):
        ComplexMat2(float("nan"), 0, 0, 1)
    with pytest.raises(InvalidParameter):
        ComplexMat2(1, complex("inf"), 0, 1)


def test_unitarity_residual_perfect_mirror_zero():
    s = evaluate(perfect_mirror(), 3.0)
    assert unitarity_residual(s) == 0.0


def test_unitarity_residual_delta_tiny():
    model = delta_scatterer(2.0)
    for k in np.geomspace(1e-2, 1e2, 25):
        assert unitarity_residual(evaluate(model, k)) < 1e-12


def test_unitarity_residual_order_one_for_garbage():
    s = ScatteringMatrix(t=1.0, rbar=0.0, r=1.0, tbar=0.0)
    assert unitarity_residual(s) == pytest.approx(1.0)


def test_det_identity_matrix():
    assert det_s(s_identity()) == 1.0


def test_det_delta_g2_k1_is_minus_i():
    s = evaluate(delta_scatterer(2.0), 1.0)
    assert approx_complex(det_s(s), -1j)


def test_det_perfect_mirror_is_minus_one():
    s = evaluate(perfect_mirror(), 0.4)
    assert det_s(s) == pytest.approx(-1.0)


def test_s_to_transfer_identity():
    t = s_to_transfer(s_identity())
    m = t.mat
    assert (m.m11, m.m12, m.m21, m.m22) == (1, 0, 0, 1)


def test_round_trip_delta():
    s = evaluate(delta_scatterer(2.0), 1.0)
    back = transfer_to_s(s_to_transfer(s))
    for attr in ("t", "rbar", "r", "tbar"):
        assert approx_complex(getattr(back, attr), getattr(s, attr))


def test_perfect_mirror_has_no_transfer_form():
    with pytest.raises(DegenerateConversion):
        s_to_transfer(evaluate(perfect_mirror(), 1.0))


def test_transfer_to_s_identity():
    s = transfer_to_s(TransferMatrix(ComplexMat2(1, 0, 0, 1)))
    assert (s.t, s.rbar, s.r, s.tbar) == (1, 0, 0, 1)


def test_transfer_to_s_free_propagation():
    k, length = 1.3, 0.8
    s = transfer_to_s(free_propagation(length, k))
    phase = cmath.exp(1j * k * length)
    assert approx_complex(s.t, phase) and approx_complex(s.tbar, phase)
    assert abs(s.r) < 1e-15 and abs(s.rbar) < 1e-15


def test_transfer_to_s_degenerate():
    with pytest.raises(DegenerateConversion):
        transfer_to_s(TransferMatrix(ComplexMat2(1, 0, 0, 0)))


finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(
    tr=finite, ti=finite, rbr=finite, rbi=finite, rr=finite, ri=finite,
    tbr=finite, tbi=finite,
)
def test_round_trip_property(tr, ti, rbr, rbi, rr, ri, tbr, tbi):
    # conversion pair is an exact algebraic inverse wherever tbar is not tiny
    s = ScatteringMatrix(
        t=complex(tr, ti),
        rbar=complex(rbr, rbi),
        r=complex(rr, ri),
        tbar=complex(tbr, tbi),
    )
    if abs(s.tbar) < 1e-3:
        return
    back = transfer_to_s(s_to_transfer(s))
    scale = max(abs(s.t), abs(s.rbar), abs(s.r), abs(s.tbar), 1.0)
    for attr in ("t", "rbar", "r", "tbar"):
        assert abs(getattr(back, attr) - getattr(s, attr)) < 1e-12 * scale


@pytest.mark.parametrize(
    "model",
    [
        delta_scatterer(0.5),
        delta_scatterer(7.0),
        rect_barrier_scatterer(1.3, 0.6),
        lc_shunt_scatterer(50.0, 20.0),
        perfect_mirror(),
    ],
    ids=lambda m: m.spec_string(),
)
def test_unimodular_determinant_on_k_grid(model):
    for k in np.geomspace(1e-2, 1e2, 100):
        assert abs(abs(det_s(evaluate(model, k))) - 1.0) < 1e-12


@pytest.mark.parametrize("g", [0.3, 2.0, 40.0])
def test_det_reflection_identity(g):
    # det S = -r / conj(rbar) for unitary S (checked in multiplied form)
    for k in np.geomspace(1e-2, 1e2, 50):
        s = evaluate(delta_scatterer(g), k)
        assert abs(det_s(s) * s.rbar.conjugate() + s.r) < 1e-12


def test_transfer_determinant_unimodular():
    for k in np.geomspace(1e-2, 1e2, 50):
        t = s_to_transfer(evaluate(delta_scatterer(1.7), k))
        assert abs(abs(t.mat.det()) - 1.0) < 1e-12
