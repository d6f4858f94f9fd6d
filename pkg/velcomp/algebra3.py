"""Complex 3-vector algebra shared by both composition laws.

Vectors are numpy ``complex128`` arrays whose last axis has length 3, so every
operation here takes a single vector or a stacked batch ``(..., 3)`` alike.
Products are bilinear: nothing is conjugated except in ``norm_hermitian``,
which is only used to measure defects.
"""

import math
from dataclasses import dataclass, field
from typing import TypeAlias

import numpy as np
import numpy.typing as npt

from .errors import ComplexVelocity, NonFinite, Superluminal

CVec3: TypeAlias = npt.NDArray[np.complex128]
RVec3: TypeAlias = npt.NDArray[np.float64]
# np.complex128 subclasses complex, so batched scalars come back as arrays of it.
CScalar: TypeAlias = complex


def as_cvec3(value: npt.ArrayLike) -> CVec3:
    """Coerce to a read-only complex vector (or batch), rejecting NaN/Inf."""
    arr = np.array(value, dtype=np.complex128)
    if arr.ndim == 0 or arr.shape[-1] != 3:
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"non-finite vector component in {arr!r}")
    arr.flags.writeable = False
    return arr


def cvec3(x: complex, y: complex, z: complex) -> CVec3:
    return as_cvec3([x, y, z])


def is_real(a: CVec3) -> bool:
    return bool(np.all(np.asarray(a).imag == 0))


def to_real(a: CVec3) -> RVec3:
    """Lossless conversion of a vector with zero imaginary parts."""
    if not is_real(a):
        raise ComplexVelocity(f"vector {a!r} has nonzero imaginary parts")
    return np.asarray(a).real.astype(np.float64)


def dot_bilinear(a: CVec3, b: CVec3) -> CScalar:
    """Sum of componentwise products, no conjugation; symmetric in a, b."""
    return np.sum(np.multiply(a, b), axis=-1)


def cross(a: CVec3, b: CVec3) -> CVec3:
    return np.cross(a, b)


def norm_hermitian(a: CVec3) -> float:
    a = np.asarray(a)
    return np.sqrt(np.sum(a.real**2 + a.imag**2, axis=-1))


def magnitude_bilinear(a: CVec3) -> CScalar:
    """Principal square root of ``dot_bilinear(a, a)``.

    The branch cut is the negative real axis. Adding ``0j`` turns a ``-0.0``
    imaginary part into ``+0.0``, so a negative real self-dot maps to the
    root with positive imaginary part.
    """
    return np.sqrt(dot_bilinear(a, a) + 0j)


def add(a: CVec3, b: CVec3) -> CVec3:
    return np.add(a, b)


def sub(a: CVec3, b: CVec3) -> CVec3:
    return np.subtract(a, b)


def neg(a: CVec3) -> CVec3:
    return np.negative(a)


def scale(s: CScalar, a: CVec3) -> CVec3:
    return np.multiply(s, a)


@dataclass(frozen=True)
class LightSpeed:
    c: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.c) or self.c <= 0:
            raise ValueError(f"speed of light must be positive and finite (was {self.c})")


@dataclass(frozen=True, eq=False)
class Velocity:
    """A real velocity strictly inside the light sphere of ``ctx``."""

    v: CVec3
    ctx: LightSpeed = field(default_factory=LightSpeed)

    def __post_init__(self) -> None:
        v = as_cvec3(self.v)
        if v.shape != (3,):
            raise ValueError(f"a velocity is a single 3-vector, got shape {v.shape}")
        if not is_real(v):
            raise ComplexVelocity(f"velocity {v!r} has nonzero imaginary parts")
        speed = float(norm_hermitian(v))
        if speed >= self.ctx.c:
            raise Superluminal(f"|v| = {speed!r} is not below c = {self.ctx.c!r}")
        object.__setattr__(self, "v", v)

    @classmethod
    def of(cls, x: float, y: float, z: float, c: float = 1.0) -> "Velocity":
        return cls(cvec3(x, y, z), LightSpeed(c))

    @property
    def real(self) -> RVec3:
        return self.v.real.copy()

    @property
    def speed(self) -> float:
        return float(norm_hermitian(self.v))

    @property
    def beta(self) -> float:
        return self.speed / self.ctx.c

    def __neg__(self) -> "Velocity":
        return Velocity(neg(self.v), self.ctx)

    def __repr__(self) -> str:
        x, y, z = (float(t) for t in self.real)
        return f"Velocity({x!r}, {y!r}, {z!r}, c={self.ctx.c!r})"
