"""Lorentz-Einstein velocity composition.

The binary form used everywhere is

    a +̄ b = [ sqrt(1 - a²/c²) b + (k(a) (a·b) + 1) a ] / (1 + a·b/c²)

with ``k(a) = 1 / (c² (1 + sqrt(1 - a²/c²)))``. That is the usual relative
velocity formula ``(-V) +̄ U`` with ``a = -V`` and ``b = U``; the coefficient
is written without the ``0/0`` at ``a = 0``. ``relative_velocity`` keeps the
observer/object orientation.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from . import algebra3 as a3
from .algebra3 import LightSpeed, Velocity
from .errors import MixedContext, Superluminal

logger = logging.getLogger(__name__)

# Inputs must satisfy |v| <= (1 - SUBLUMINAL_MARGIN) * c.
SUBLUMINAL_MARGIN = 1e-12


@dataclass(frozen=True, eq=False)
class EinsteinSum:
    w: Velocity
    # 1 + a·b/c², positive for subluminal inputs
    denom: float


def add_batch(
    a: npt.NDArray[np.float64], b: npt.NDArray[np.float64], c: float
) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Compose real velocity batches of shape ``(..., 3)``; no validation."""
    c2 = c * c
    a2 = np.sum(a * a, axis=-1)
    ab = np.sum(a * b, axis=-1)
    root = np.sqrt(1.0 - a2 / c2)
    k = 1.0 / (c2 * (1.0 + root))
    denom = 1.0 + ab / c2
    w = (root[..., None] * b + (k * ab + 1.0)[..., None] * a) / denom[..., None]
    return _below_light_speed(w, c), denom


def _below_light_speed(w: npt.NDArray[np.float64], c: float) -> npt.NDArray[np.float64]:
    """Pull sums that rounded onto or past the light sphere back just inside it.

    Near-light collinear inputs have exact sums within an ulp of ``c``.
    """
    speed = np.asarray(a3.norm_hermitian(w))
    target = np.nextafter(c, 0.0)
    while np.any(speed >= c):
        factor = np.ones_like(speed)
        np.divide(target, speed, out=factor, where=speed >= c)
        w = w * factor[..., None]
        speed = np.asarray(a3.norm_hermitian(w))
        target = np.nextafter(target, 0.0)
    return w


def shared_context(*velocities: Velocity) -> LightSpeed:
    ctx = velocities[0].ctx
    for v in velocities[1:]:
        if v.ctx != ctx:
            raise MixedContext(f"light-speed contexts differ: {ctx} vs {v.ctx}")
    for v in velocities:
        if v.speed > (1 - SUBLUMINAL_MARGIN) * ctx.c:
            raise Superluminal(f"{v!r} is within the subluminal margin of c")
    return ctx


def einstein_add(a: Velocity, b: Velocity) -> EinsteinSum:
    ctx = shared_context(a, b)
    w, denom = add_batch(a.real, b.real, ctx.c)
    return EinsteinSum(w=Velocity(w, ctx), denom=float(denom))


def relative_velocity(observer: Velocity, object: Velocity) -> EinsteinSum:
    """Velocity of ``object`` as measured by ``observer``: ``(-observer) +̄ object``."""
    return einstein_add(-observer, object)


def _gyrate_batch(
    u: npt.NDArray[np.float64],
    v: npt.NDArray[np.float64],
    w: npt.NDArray[np.float64],
    c: float,
) -> npt.NDArray[np.float64]:
    uv, _ = add_batch(u, v, c)
    vw, _ = add_batch(v, w, c)
    u_vw, _ = add_batch(u, vw, c)
    out, _ = add_batch(-uv, u_vw, c)
    return out


def gyration(u: Velocity, v: Velocity, w: Velocity) -> Velocity:
    """gyr[u,v]w = -(u +̄ v) +̄ (u +̄ (v +̄ w)).

    This is the rotation that turns ``(u +̄ v) +̄ w`` into ``u +̄ (v +̄ w)``;
    it is the identity exactly when the composition is associative on the
    triple.
    """
    ctx = shared_context(u, v, w)
    return Velocity(_gyrate_batch(u.real, v.real, w.real, ctx.c), ctx)


def gyration_matrix(u: Velocity, v: Velocity) -> npt.NDArray[np.float64]:
    """Matrix of the linear map ``w -> gyr[u,v]w``."""
    ctx = shared_context(u, v)
    half = 0.5 * ctx.c
    basis = half * np.eye(3)
    images = _gyrate_batch(u.real[None, :], v.real[None, :], basis, ctx.c)
    return images.T / half


def gyration_axis_angle(u: Velocity, v: Velocity) -> Tuple[a3.RVec3, float]:
    """Unit rotation axis and angle in [0, pi] of gyr[u,v].

    The axis is the zero vector when the angle vanishes (parallel inputs).
    """
    m = gyration_matrix(u, v)
    skew = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])
    sin_angle = 0.5 * float(np.linalg.norm(skew))
    cos_angle = 0.5 * (float(np.trace(m)) - 1.0)
    angle = math.atan2(sin_angle, cos_angle)
    if sin_angle < 1e-15:
        return np.zeros(3), angle
    return skew / (2.0 * sin_angle), angle


def gamma(v: Velocity) -> float:
    return 1.0 / math.sqrt(1.0 - v.beta**2)


def _gamma_minus_one(beta: float) -> float:
    root = math.sqrt(1.0 - beta * beta)
    return beta * beta / (root * (1.0 + root))


def wigner_angle(u: Velocity, v: Velocity) -> float:
    """Closed-form angle of gyr[u,v] from the speeds and the angle between u and v."""
    shared_context(u, v)
    if u.speed == 0.0 or v.speed == 0.0:
        return 0.0
    ur, vr = u.real, v.real
    cos_theta = float(np.dot(ur, vr)) / (u.speed * v.speed)
    sin_theta = float(np.linalg.norm(np.cross(ur, vr))) / (u.speed * v.speed)
    gu1, gv1 = _gamma_minus_one(u.beta), _gamma_minus_one(v.beta)
    d = math.sqrt((gu1 + 2.0) * (gv1 + 2.0) / (gu1 * gv1))
    return 2.0 * math.atan2(sin_theta, cos_theta + d)


def rapidity(v: Velocity) -> float:
    return math.atanh(v.beta)


def with_rapidity(v: Velocity, phi: float) -> Velocity:
    """``v``'s direction with speed ``c tanh(phi)``."""
    if v.speed == 0.0:
        return v
    scaled = v.real * (v.ctx.c * math.tanh(phi) / v.speed)
    logger.debug(f"rapidity {rapidity(v)!r} -> {phi!r}")
    return Velocity(scaled, v.ctx)
