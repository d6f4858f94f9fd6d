"""Tests for reciprocal-symmetric composition and its Pauli-quaternion path."""

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from velcomp import algebra3 as a3
from velcomp import einstein, recsym
from velcomp.algebra3 import LightSpeed, Velocity
from velcomp.errors import DegenerateDenominator

X = a3.cvec3(0.5, 0, 0)
Y = a3.cvec3(0, 0.5, 0)

component = st.complex_numbers(max_magnitude=0.6, allow_nan=False, allow_infinity=False)
cvecs = st.tuples(component, component, component).map(a3.as_cvec3)


# --- rs_add --------------------------------------------------------------


def test_orthogonal_sum_gets_an_imaginary_cross_term() -> None:
    s = recsym.rs_add(X, Y)
    assert s.w.tolist() == [0.5, 0.5, 0.25j]
    assert s.denom == 1


def test_swapping_arguments_flips_the_cross_term() -> None:
    assert recsym.rs_add(Y, X).w.tolist() == [0.5, 0.5, -0.25j]
    assert np.allclose(recsym.cross_term(X, Y), [0, 0, 0.25j])
    assert np.allclose(recsym.cross_term(Y, X), [0, 0, -0.25j])


def test_collinear_sum_matches_einstein() -> None:
    s = recsym.rs_add(a3.cvec3(0.5, 0, 0), a3.cvec3(0.5, 0, 0))
    assert np.allclose(s.w, [0.8, 0, 0])


def test_bilinear_magnitude_is_the_einstein_speed() -> None:
    a, b = a3.cvec3(0.3, -0.1, 0.4), a3.cvec3(-0.2, 0.5, 0.1)
    rs = recsym.rs_add(a, b).w
    lorentz = einstein.einstein_add(Velocity(a), Velocity(b)).w
    assert a3.magnitude_bilinear(rs) == pytest.approx(lorentz.speed, abs=1e-14)


def test_light_speed_enters_the_cross_term() -> None:
    ctx = LightSpeed(2.0)
    s = recsym.rs_add(2 * X, 2 * Y, ctx)
    assert np.allclose(s.w, 2 * recsym.rs_add(X, Y).w)


def test_zero_and_negation() -> None:
    a = a3.cvec3(0.2 + 0.1j, -0.3, 0.4j)
    zero = a3.cvec3(0, 0, 0)
    assert np.allclose(recsym.rs_add(a, zero).w, a)
    assert np.allclose(recsym.rs_add(zero, a).w, a)
    assert np.allclose(recsym.rs_add(-a, a).w, 0)


def test_relative_velocity_of_perpendicular_halves() -> None:
    rel = recsym.rs_relative_velocity(Y, X)
    assert rel.w.tolist() == [0.5, -0.5, 0.25j]
    assert rel.denom == 1


def test_relative_velocity_swaps_to_its_negative() -> None:
    obs, obj = a3.cvec3(0.3, 0.1, 0), a3.cvec3(-0.2, 0.4, 0.5)
    forward = recsym.rs_relative_velocity(obs, obj).w
    backward = recsym.rs_relative_velocity(obj, obs).w
    assert np.array_equal(backward, -forward)


@pytest.mark.parametrize(
    "a, b",
    [
        ((1, 0, 0), (-1, 0, 0)),
        ((1j, 0, 0), (1j, 0, 0)),
    ],
)
def test_degenerate_denominator_is_rejected(a: tuple, b: tuple) -> None:
    with pytest.raises(DegenerateDenominator):
        recsym.rs_add(a3.cvec3(*a), a3.cvec3(*b))


def test_add_batch_masks_degenerate_rows() -> None:
    a = a3.as_cvec3([[1, 0, 0], [0.5, 0, 0]])
    b = a3.as_cvec3([[-1, 0, 0], [0, 0.5, 0]])
    w, denom, ok = recsym.add_batch(a, b, 1.0)
    assert ok.tolist() == [False, True]
    assert np.all(np.isfinite(w))
    assert w[1].tolist() == [0.5, 0.5, 0.25j]


@given(cvecs, cvecs, cvecs)
def test_sum_is_associative(a, b, c) -> None:
    ab = recsym.add_batch(a, b, 1.0)
    bc = recsym.add_batch(b, c, 1.0)
    assume(abs(ab[1]) > 0.1 and abs(bc[1]) > 0.1)
    lhs = recsym.add_batch(ab[0], c, 1.0)
    rhs = recsym.add_batch(a, bc[0], 1.0)
    assume(abs(lhs[1]) > 0.1 and abs(rhs[1]) > 0.1)
    assert np.allclose(lhs[0], rhs[0], rtol=1e-9, atol=1e-9)


@given(cvecs, cvecs)
def test_negation_reverses_order(a, b) -> None:
    ab = recsym.add_batch(a, b, 1.0)
    assume(abs(ab[1]) > 0.1)
    rhs = recsym.add_batch(-b, -a, 1.0)
    assert np.allclose(-ab[0], rhs[0], rtol=1e-12, atol=1e-12)


# --- Pauli quaternions ---------------------------------------------------


def test_quaternion_path_matches_direct_formula() -> None:
    a, b = a3.cvec3(0.3, -0.1, 0.4j), a3.cvec3(-0.2, 0.5 + 0.2j, 0.1)
    ctx = LightSpeed(1.5)
    q = recsym.quat_mul(recsym.quat_embed(a, ctx), recsym.quat_embed(b, ctx))
    projected = recsym.quat_project(q, ctx)
    direct = recsym.rs_add(a, b, ctx)
    assert np.allclose(projected.w, direct.w, rtol=0, atol=1e-14)
    assert projected.denom == pytest.approx(direct.denom)


def test_pauli_basis_products() -> None:
    # sigma_x sigma_y = i sigma_z
    sx = recsym.PauliQuaternion(0j, a3.cvec3(1, 0, 0))
    sy = recsym.PauliQuaternion(0j, a3.cvec3(0, 1, 0))
    p = recsym.quat_mul(sx, sy)
    assert p.s == 0
    assert p.w.tolist() == [0, 0, 1j]
    sq = recsym.quat_mul(sx, sx)
    assert sq.s == 1
    assert sq.w.tolist() == [0, 0, 0]


def test_quaternion_norm_is_multiplicative() -> None:
    p = recsym.PauliQuaternion(1 + 0.5j, a3.cvec3(0.3, -0.2j, 0.1))
    q = recsym.PauliQuaternion(0.7 + 0j, a3.cvec3(0.1j, 0.4, -0.6))
    assert recsym.quat_norm(recsym.quat_mul(p, q)) == pytest.approx(
        recsym.quat_norm(p) * recsym.quat_norm(q)
    )


def test_conjugate_gives_the_norm() -> None:
    p = recsym.PauliQuaternion(1 + 0.5j, a3.cvec3(0.3, -0.2j, 0.1))
    prod = recsym.quat_mul(p, recsym.quat_conjugate(p))
    assert prod.s == pytest.approx(recsym.quat_norm(p))
    assert np.allclose(prod.w, 0)


def test_projection_ignores_overall_scale() -> None:
    p = recsym.quat_project(recsym.PauliQuaternion(2 + 0j, a3.cvec3(1, 0, 0)))
    assert p.w.tolist() == [0.5, 0, 0]
    scaled = recsym.quat_project(recsym.PauliQuaternion(6 + 0j, a3.cvec3(9, 0, 0)), LightSpeed(3.0))
    assert scaled.w.tolist() == [4.5, 0, 0]


def test_projecting_a_degenerate_quaternion_fails() -> None:
    with pytest.raises(DegenerateDenominator):
        recsym.quat_project(recsym.PauliQuaternion(0j, a3.cvec3(1, 0, 0)))
