"""Seeded samplers for velocity tuples.

Samples are drawn in fixed-size chunks; chunk ``k`` of seed ``s`` has its own
generator seeded from ``SeedSequence(s, spawn_key=(k,))`` and always draws a
full chunk. Sample ``i`` therefore depends only on the seed, ``i`` and the
chunk size, never on ``count``, evaluation order or the number of threads.
"""

import logging
from dataclasses import dataclass, field
from enum import StrEnum
from typing import List, Tuple

import numpy as np
import numpy.typing as npt

from . import config
from .algebra3 import LightSpeed, Velocity

logger = logging.getLogger(__name__)


class Regime(StrEnum):
    UNIFORM_BALL = "uniform_ball"
    NEAR_LIGHTSPEED = "near_lightspeed"
    NEAR_PARALLEL = "near_parallel"
    COLLINEAR = "collinear"
    ORTHOGONAL = "orthogonal"
    COMPLEX_DISC = "complex_disc"


def _default_max_beta() -> float:
    return float(config.lawlab_setting("max_beta"))


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    count: int = 1000
    c: LightSpeed = field(default_factory=LightSpeed)
    max_beta: float = field(default_factory=_default_max_beta)
    regime: Regime = Regime.UNIFORM_BALL

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer (was {self.seed})")
        if self.count < 0:
            raise ValueError(f"count must be >= 0 (was {self.count})")
        if not 0 < self.max_beta < 1:
            raise ValueError(f"max_beta must lie in (0, 1) (was {self.max_beta})")
        object.__setattr__(self, "regime", Regime(self.regime))


def chunk_bounds(count: int, chunk_size: int) -> List[Tuple[int, int, int]]:
    """``(chunk_index, start, stop)`` triples covering ``range(count)``."""
    return [
        (k, start, min(start + chunk_size, count))
        for k, start in enumerate(range(0, count, chunk_size))
    ]


def chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk_index,)))


def _unit(rng: np.random.Generator, shape: Tuple[int, ...]) -> npt.NDArray[np.float64]:
    g = rng.standard_normal(shape + (3,))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def _perpendicular(
    rng: np.random.Generator, d: npt.NDArray[np.float64]
) -> npt.NDArray[np.float64]:
    """Random unit vectors perpendicular to the unit vectors ``d``."""
    g = rng.standard_normal(d.shape)
    g -= np.sum(g * d, axis=-1, keepdims=True) * d
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def _ball_speeds(
    rng: np.random.Generator, shape: Tuple[int, ...], top: float
) -> npt.NDArray[np.float64]:
    # density proportional to r² on [0, top]
    return top * np.cbrt(rng.random(shape))


def _draw(
    rng: np.random.Generator, n: int, arity: int, cfg: SamplerConfig
) -> npt.NDArray[np.complex128]:
    c = cfg.c.c
    top = cfg.max_beta * c

    match cfg.regime:
        case Regime.UNIFORM_BALL:
            real = _unit(rng, (n, arity)) * _ball_speeds(rng, (n, arity), top)[..., None]
        case Regime.NEAR_LIGHTSPEED:
            low = min(float(config.sampling_setting("near_lightspeed_floor")), cfg.max_beta)
            speeds = c * rng.uniform(low, cfg.max_beta, (n, arity))
            real = _unit(rng, (n, arity)) * speeds[..., None]
        case Regime.COLLINEAR:
            axis = _unit(rng, (n, 1))
            signs = rng.choice([-1.0, 1.0], (n, arity))
            speeds = signs * _ball_speeds(rng, (n, arity), top)
            real = axis * speeds[..., None]
        case Regime.NEAR_PARALLEL:
            max_angle = float(config.sampling_setting("near_parallel_max_angle"))
            # any two vectors of a tuple stay within max_angle of each other
            bound = max_angle if arity <= 2 else 0.5 * max_angle
            base = _unit(rng, (n, 1))
            tilt = _perpendicular(rng, np.broadcast_to(base, (n, arity, 3)).copy())
            angles = rng.uniform(0.0, bound, (n, arity))
            # the first vector of each tuple is the reference direction
            angles[:, 0] = 0.0
            dirs = np.cos(angles)[..., None] * base + np.sin(angles)[..., None] * tilt
            real = dirs * _ball_speeds(rng, (n, arity), top)[..., None]
        case Regime.ORTHOGONAL:
            if arity > 3:
                raise ValueError("at most three mutually orthogonal directions exist")
            first = _unit(rng, (n,))
            second = _perpendicular(rng, first)
            third = np.cross(first, second) * rng.choice([-1.0, 1.0], (n, 1))
            dirs = np.stack([first, second, third], axis=1)
            real = dirs[:, :arity] * _ball_speeds(rng, (n, arity), top)[..., None]
        case Regime.COMPLEX_DISC:
            radius = float(config.sampling_setting("complex_disc_radius")) * cfg.max_beta * c
            modulus = radius * np.sqrt(rng.random((n, arity, 3)))
            phase = rng.uniform(0.0, 2 * np.pi, (n, arity, 3))
            return modulus * np.exp(1j * phase)

    return real.astype(np.complex128)


def sample_chunk(
    cfg: SamplerConfig, arity: int, chunk_index: int, chunk_size: int
) -> npt.NDArray[np.complex128]:
    """The full chunk ``chunk_index`` as an array of shape ``(chunk_size, arity, 3)``."""
    rng = chunk_rng(cfg.seed, chunk_index)
    return _draw(rng, chunk_size, arity, cfg)


def sample(
    cfg: SamplerConfig, arity: int = 1, chunk_size: int | None = None
) -> npt.NDArray[np.complex128]:
    """``cfg.count`` tuples of ``arity`` vectors, shape ``(count, arity, 3)``.

    Real regimes return complex arrays with zero imaginary parts.
    """
    chunk_size = chunk_size or int(config.lawlab_setting("chunk_size"))
    chunks = [
        sample_chunk(cfg, arity, k, chunk_size)[: stop - start]
        for k, start, stop in chunk_bounds(cfg.count, chunk_size)
    ]
    if not chunks:
        return np.empty((0, arity, 3), dtype=np.complex128)
    logger.debug(f"sampled {cfg.count} {cfg.regime} tuples of {arity} (seed {cfg.seed})")
    return np.concatenate(chunks)


def sample_velocities(
    cfg: SamplerConfig, arity: int = 1, chunk_size: int | None = None
) -> List[Tuple[Velocity, ...]]:
    if cfg.regime is Regime.COMPLEX_DISC:
        raise ValueError("complex_disc samples are not velocities; use sample()")
    return [
        tuple(Velocity(v, cfg.c) for v in row)
        for row in sample(cfg, arity, chunk_size)
    ]
