"""Reciprocal-symmetric (RS) velocity composition.

    a +̂ b = (a + b + (i/c) a × b) / (1 + a·b/c²)

computed either directly or as a product of Pauli quaternions: embed each
velocity as ``1 + v·σ/c``, multiply, and read the velocity back as
``c · vector / scalar``. The quaternion product is associative, and so is
``+̂``. The operation is also called "reflection symmetric".

Inputs may be arbitrary complex 3-vectors; sums of real, non-parallel
velocities are complex, and composing them again must stay possible. The only
rejection is a denominator whose modulus is at most ``DENOMINATOR_TOLERANCE``.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from . import algebra3 as a3
from .algebra3 import CScalar, CVec3, LightSpeed
from .errors import DegenerateDenominator

DENOMINATOR_TOLERANCE = 1e-12

BoolArray = npt.NDArray[np.bool_]


@dataclass(frozen=True, eq=False)
class RSum:
    w: CVec3
    # 1 + a·b/c²
    denom: CScalar


@dataclass(frozen=True, eq=False)
class PauliQuaternion:
    """``s + w·σ`` with complex scalar ``s`` and complex vector ``w``, both dimensionless."""

    s: CScalar
    w: CVec3


def add_batch(a: CVec3, b: CVec3, c: float) -> Tuple[CVec3, CScalar, BoolArray]:
    """Compose batches of shape ``(..., 3)``.

    Returns the sums, the denominators and a mask of the rows whose
    denominator passed the tolerance. Masked-out rows hold the undivided
    numerator and must not be used.
    """
    denom = 1.0 + a3.dot_bilinear(a, b) / (c * c)
    numer = a + b + (1j / c) * a3.cross(a, b)
    ok = np.abs(denom) > DENOMINATOR_TOLERANCE
    w = numer / np.where(ok, denom, 1.0)[..., None]
    return w, denom, ok


def _single(v: CVec3) -> CVec3:
    v = a3.as_cvec3(v)
    if v.shape != (3,):
        raise ValueError(f"expected a single 3-vector, got shape {v.shape}")
    return v


def rs_add(a: CVec3, b: CVec3, ctx: LightSpeed = LightSpeed()) -> RSum:
    w, denom, ok = add_batch(_single(a), _single(b), ctx.c)
    if not ok:
        raise DegenerateDenominator(f"|1 + a·b/c²| = {float(abs(denom))!r} for a={a!r}, b={b!r}")
    return RSum(w=a3.as_cvec3(w), denom=complex(denom))


def rs_relative_velocity(
    observer: CVec3, object: CVec3, ctx: LightSpeed = LightSpeed()
) -> RSum:
    """``(-observer) +̂ object``; swapping the arguments negates the result."""
    return rs_add(a3.neg(_single(observer)), object, ctx)


def cross_term(a: CVec3, b: CVec3, ctx: LightSpeed = LightSpeed()) -> CVec3:
    """The imaginary ``(i/c) a × b / (1 + a·b/c²)`` part of ``a +̂ b``.

    It changes sign when the arguments are swapped, which is what keeps
    ``-(b +̂ a) = (-a) +̂ (-b)`` true.
    """
    a, b = _single(a), _single(b)
    denom = rs_add(a, b, ctx).denom
    return a3.as_cvec3((1j / ctx.c) * a3.cross(a, b) / denom)


# --- Pauli quaternions --------------------------------------------------


def mul_batch(
    s1: CScalar, w1: CVec3, s2: CScalar, w2: CVec3
) -> Tuple[CScalar, CVec3]:
    # σj σk = δjk + i εjkl σl
    s = s1 * s2 + a3.dot_bilinear(w1, w2)
    w = (
        np.asarray(s1)[..., None] * w2
        + np.asarray(s2)[..., None] * w1
        + 1j * a3.cross(w1, w2)
    )
    return s, w


def project_batch(
    s: CScalar, w: CVec3, c: float
) -> Tuple[CVec3, CScalar, BoolArray]:
    ok = np.abs(s) > DENOMINATOR_TOLERANCE
    v = c * np.asarray(w) / np.where(ok, s, 1.0)[..., None]
    return v, s, ok


def quat_embed(v: CVec3, ctx: LightSpeed = LightSpeed()) -> PauliQuaternion:
    return PauliQuaternion(s=1 + 0j, w=a3.as_cvec3(_single(v) / ctx.c))


def quat_mul(p: PauliQuaternion, q: PauliQuaternion) -> PauliQuaternion:
    s, w = mul_batch(p.s, p.w, q.s, q.w)
    return PauliQuaternion(s=complex(s), w=a3.as_cvec3(w))


def quat_project(q: PauliQuaternion, ctx: LightSpeed = LightSpeed()) -> RSum:
    v, s, ok = project_batch(q.s, q.w, ctx.c)
    if not ok:
        raise DegenerateDenominator(f"quaternion scalar part {q.s!r} is degenerate")
    return RSum(w=a3.as_cvec3(v), denom=complex(s))


def quat_conjugate(p: PauliQuaternion) -> PauliQuaternion:
    return PauliQuaternion(s=p.s, w=a3.as_cvec3(a3.neg(p.w)))


def quat_norm(p: PauliQuaternion) -> CScalar:
    """``p · conj(p)`` as a scalar: ``s² - w·w``. Multiplicative under quat_mul."""
    return complex(p.s * p.s - a3.dot_bilinear(p.w, p.w))
