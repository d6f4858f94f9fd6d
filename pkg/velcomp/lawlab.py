"""Seeded law checker for the two composition operations.

Every law is a defect functional on a tuple of vectors: the normalized residual

    |lhs - rhs| / max(c, |lhs|, |rhs|)

which is zero where the law holds exactly. ``check`` evaluates a law over a
sampled batch and aggregates the defects into a ``LawReport``;
``hunt_and_shrink`` finds the first violating sample and shrinks it to a
small counterexample.

Batches are evaluated in fixed-size chunks off the event loop with
``asyncio.to_thread`` and aggregated in chunk order afterwards, so a report
is bit-identical for any number of threads.
"""

import asyncio
import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from . import algebra3 as a3
from . import config
from . import einstein
from . import recsym
from .algebra3 import CVec3, LightSpeed, Velocity
from .errors import DegenerateDenominator, LawNotApplicable, VelcompError
from .sampling import Regime, SamplerConfig, chunk_bounds, sample, sample_chunk

logger = logging.getLogger(__name__)

Batch = npt.NDArray[np.complex128]
Floats = npt.NDArray[np.float64]
Mask = npt.NDArray[np.bool_]


class LawId(StrEnum):
    ASSOCIATIVITY = "associativity"
    COMMUTATIVITY = "commutativity"
    RECIPROCITY = "reciprocity"
    NEGATION_REVERSED = "negation_reversed"
    NEGATION_SAME_ORDER = "negation_same_order"
    MAGNITUDE_EQUALITY = "magnitude_equality"
    MAGNITUDE_COMMUTATIVITY = "magnitude_commutativity"
    IDENTITY = "identity"
    INVERSE = "inverse"
    SUBLUMINAL_CLOSURE = "subluminal_closure"
    DUAL_PATH = "dual_path"
    SELF_DOT_REAL = "self_dot_real"


class Op(StrEnum):
    EINSTEIN = "einstein"
    RECSYM = "recsym"


class Verdict(StrEnum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"


ARITY: Dict[LawId, int] = {
    LawId.ASSOCIATIVITY: 3,
    LawId.IDENTITY: 1,
    LawId.INVERSE: 1,
} | {law: 2 for law in LawId if law not in (LawId.ASSOCIATIVITY, LawId.IDENTITY, LawId.INVERSE)}

RECSYM_ONLY = frozenset({LawId.DUAL_PATH, LawId.SELF_DOT_REAL})

# Laws that evaluate the Einstein operation whatever ``op`` says.
_USES_EINSTEIN = frozenset({LawId.MAGNITUDE_EQUALITY})


def default_tolerance(law: LawId | str) -> float:
    return config.default_tolerance(LawId(law).value)


# --- defect functionals --------------------------------------------------


def _compose(op: Op, a: Batch, b: Batch, c: float) -> Tuple[Batch, Mask]:
    if op is Op.EINSTEIN:
        w, _ = einstein.add_batch(a.real, b.real, c)
        return w.astype(np.complex128), np.ones(w.shape[:-1], dtype=np.bool_)
    w, _, ok = recsym.add_batch(a, b, c)
    return w, ok


def _relative(lhs: Batch, rhs: Batch, c: float) -> Floats:
    scale = np.maximum(c, np.maximum(a3.norm_hermitian(lhs), a3.norm_hermitian(rhs)))
    return a3.norm_hermitian(a3.sub(lhs, rhs)) / scale


def _relative_scalar(x: npt.NDArray, y: npt.NDArray, c: float) -> Floats:
    scale = np.maximum(c, np.maximum(np.abs(x), np.abs(y)))
    return np.abs(x - y) / scale


def _speed(op: Op, w: Batch) -> Floats:
    if op is Op.EINSTEIN:
        return a3.norm_hermitian(w)
    # RS sums of real velocities are complex; their bilinear magnitude is the
    # Einstein speed.
    return np.abs(a3.magnitude_bilinear(w))


def _associativity(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y, z = v
    xy, ok1 = _compose(op, x, y, c)
    lhs, ok2 = _compose(op, xy, z, c)
    yz, ok3 = _compose(op, y, z, c)
    rhs, ok4 = _compose(op, x, yz, c)
    return _relative(lhs, rhs, c), ok1 & ok2 & ok3 & ok4


def _commutativity(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    lhs, ok1 = _compose(op, x, y, c)
    rhs, ok2 = _compose(op, y, x, c)
    return _relative(lhs, rhs, c), ok1 & ok2


def _reciprocity(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    # object u, observer v: -((-v) + u) must equal (-u) + v
    u, w = v
    seen_by_w, ok1 = _compose(op, -w, u, c)
    seen_by_u, ok2 = _compose(op, -u, w, c)
    return _relative(-seen_by_w, seen_by_u, c), ok1 & ok2


def _negation_reversed(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    xy, ok1 = _compose(op, x, y, c)
    rhs, ok2 = _compose(op, -y, -x, c)
    return _relative(-xy, rhs, c), ok1 & ok2


def _negation_same_order(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    xy, ok1 = _compose(op, x, y, c)
    rhs, ok2 = _compose(op, -x, -y, c)
    return _relative(-xy, rhs, c), ok1 & ok2


def _magnitude_equality(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    rs, ok = _compose(Op.RECSYM, x, y, c)
    lorentz, _ = _compose(Op.EINSTEIN, x, y, c)
    return _relative_scalar(a3.magnitude_bilinear(rs), a3.norm_hermitian(lorentz), c), ok


def _magnitude_commutativity(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    xy, ok1 = _compose(op, x, y, c)
    yx, ok2 = _compose(op, y, x, c)
    if op is Op.EINSTEIN:
        return _relative_scalar(a3.norm_hermitian(xy), a3.norm_hermitian(yx), c), ok1 & ok2
    return (
        _relative_scalar(a3.magnitude_bilinear(xy), a3.magnitude_bilinear(yx), c),
        ok1 & ok2,
    )


def _identity(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    (x,) = v
    zero = np.zeros_like(x)
    right, ok1 = _compose(op, x, zero, c)
    left, ok2 = _compose(op, zero, x, c)
    return np.maximum(_relative(right, x, c), _relative(left, x, c)), ok1 & ok2


def _inverse(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    (x,) = v
    w, ok = _compose(op, -x, x, c)
    return _relative(w, np.zeros_like(w), c), ok


def _subluminal_closure(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    w, ok = _compose(op, x, y, c)
    speed = _speed(op, w)
    # Any speed at or above c is a violation regardless of tolerance.
    return np.where(speed < c, 0.0, 1.0 + (speed - c) / c), ok


def _dual_path(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    direct, _, ok1 = recsym.add_batch(x, y, c)
    one = np.ones(x.shape[:-1], dtype=np.complex128)
    s, w = recsym.mul_batch(one, x / c, one, y / c)
    via_quaternion, _, ok2 = recsym.project_batch(s, w, c)
    return _relative(direct, via_quaternion, c), ok1 & ok2


def _self_dot_real(op: Op, v: Sequence[Batch], c: float) -> Tuple[Floats, Mask]:
    x, y = v
    w, ok = _compose(Op.RECSYM, x, y, c)
    d = a3.dot_bilinear(w, w)
    return np.abs(d.imag) / np.maximum(c * c, a3.norm_hermitian(w) ** 2), ok


LawFunctional = Callable[[Op, Sequence[Batch], float], Tuple[Floats, Mask]]

LAWS: Dict[LawId, LawFunctional] = {
    LawId.ASSOCIATIVITY: _associativity,
    LawId.COMMUTATIVITY: _commutativity,
    LawId.RECIPROCITY: _reciprocity,
    LawId.NEGATION_REVERSED: _negation_reversed,
    LawId.NEGATION_SAME_ORDER: _negation_same_order,
    LawId.MAGNITUDE_EQUALITY: _magnitude_equality,
    LawId.MAGNITUDE_COMMUTATIVITY: _magnitude_commutativity,
    LawId.IDENTITY: _identity,
    LawId.INVERSE: _inverse,
    LawId.SUBLUMINAL_CLOSURE: _subluminal_closure,
    LawId.DUAL_PATH: _dual_path,
    LawId.SELF_DOT_REAL: _self_dot_real,
}


def ensure_applicable(law: LawId, op: Op, regime: Optional[Regime] = None) -> None:
    if law in RECSYM_ONLY and op is not Op.RECSYM:
        raise LawNotApplicable(f"{law} is only defined for recsym")
    if regime is Regime.COMPLEX_DISC and (op is Op.EINSTEIN or law in _USES_EINSTEIN):
        raise LawNotApplicable(
            f"{law} on {op} needs real velocities; {regime} samples are complex"
        )


def defect_batch(
    law: LawId | str, op: Op | str, batch: Batch, c: float
) -> Tuple[Floats, Mask]:
    """Defects of ``batch`` (shape ``(n, arity, 3)``) and the mask of evaluated rows.

    Rows hitting a degenerate denominator, or producing a non-finite defect,
    are masked out and carry a defect of 0.
    """
    law, op = LawId(law), Op(op)
    ensure_applicable(law, op)
    arity = ARITY[law]
    if batch.ndim != 3 or batch.shape[1:] != (arity, 3):
        raise ValueError(f"{law} takes tuples of {arity} vectors, got shape {batch.shape}")
    vectors = [batch[:, i, :] for i in range(arity)]
    with np.errstate(all="ignore"):
        defects, ok = LAWS[law](op, vectors, c)
    ok = ok & np.isfinite(defects)
    return np.where(ok, defects, 0.0), ok


def defect(
    law: LawId | str,
    op: Op | str,
    inputs: Sequence[npt.ArrayLike],
    ctx: LightSpeed = LightSpeed(),
) -> float:
    """Defect of a single tuple; raises instead of skipping."""
    law, op = LawId(law), Op(op)
    vectors = [a3.as_cvec3(v) for v in inputs]
    if len(vectors) != ARITY[law] or any(v.shape != (3,) for v in vectors):
        raise ValueError(f"{law} takes {ARITY[law]} vectors, got {len(vectors)}")
    if op is Op.EINSTEIN or law in _USES_EINSTEIN:
        einstein.shared_context(*(Velocity(v, ctx) for v in vectors))
    defects, ok = defect_batch(law, op, np.stack(vectors)[None], ctx.c)
    if not ok[0]:
        raise DegenerateDenominator(f"{law} on {op} is undefined at {vectors!r}")
    return float(defects[0])


# --- check ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LawReport:
    law: LawId
    op: Op
    regime: Regime
    seed: int
    samples: int
    skips: int
    max_defect: float
    mean_defect: float
    violations: int
    tol: float
    worst_index: Optional[int]
    worst_input: Tuple[CVec3, ...]
    verdict: Verdict


@dataclass(frozen=True, eq=False)
class _ChunkStats:
    evaluated: int
    skips: int
    total: float
    max_defect: float
    violations: int
    worst_index: Optional[int]
    worst_input: Tuple[CVec3, ...]


def _chunk_defects(
    law: LawId, op: Op, cfg: SamplerConfig, chunk: Tuple[int, int, int], chunk_size: int
) -> Tuple[Batch, Floats, Mask]:
    k, start, stop = chunk
    batch = sample_chunk(cfg, ARITY[law], k, chunk_size)[: stop - start]
    defects, ok = defect_batch(law, op, batch, cfg.c.c)
    return batch, defects, ok


def _evaluate_chunk(
    law: LawId,
    op: Op,
    cfg: SamplerConfig,
    chunk: Tuple[int, int, int],
    chunk_size: int,
    tol: float,
) -> _ChunkStats:
    batch, defects, ok = _chunk_defects(law, op, cfg, chunk, chunk_size)
    start = chunk[1]
    evaluated = int(np.count_nonzero(ok))
    skips = len(batch) - evaluated
    if evaluated == 0:
        return _ChunkStats(0, skips, 0.0, 0.0, 0, None, ())
    masked = np.where(ok, defects, -np.inf)
    # argmax returns the first maximum: lowest index wins ties
    i = int(np.argmax(masked))
    logger.debug(f"{law}/{op} chunk {chunk[0]}: {evaluated} evaluated, {skips} skipped")
    return _ChunkStats(
        evaluated=evaluated,
        skips=skips,
        total=float(np.sum(defects[ok])),
        max_defect=float(masked[i]),
        violations=int(np.count_nonzero(defects[ok] > tol)),
        worst_index=start + i,
        worst_input=tuple(a3.as_cvec3(v) for v in batch[i]),
    )


def _aggregate(
    law: LawId, op: Op, cfg: SamplerConfig, tol: float, stats: Sequence[_ChunkStats]
) -> LawReport:
    samples = skips = violations = 0
    total = max_defect = 0.0
    worst_index: Optional[int] = None
    worst_input: Tuple[CVec3, ...] = ()
    for s in stats:
        samples += s.evaluated
        skips += s.skips
        violations += s.violations
        total += s.total
        if s.worst_index is not None and (worst_index is None or s.max_defect > max_defect):
            max_defect, worst_index, worst_input = s.max_defect, s.worst_index, s.worst_input
    return LawReport(
        law=law,
        op=op,
        regime=cfg.regime,
        seed=cfg.seed,
        samples=samples,
        skips=skips,
        max_defect=max_defect,
        mean_defect=total / samples if samples else 0.0,
        violations=violations,
        tol=tol,
        worst_index=worst_index,
        worst_input=worst_input,
        verdict=Verdict.VIOLATED if violations else Verdict.HOLDS,
    )


def _resolve(
    law: LawId | str,
    op: Op | str,
    cfg: SamplerConfig,
    tol: Optional[float],
    threads: Optional[int],
    chunk_size: Optional[int],
) -> Tuple[LawId, Op, float, int, int]:
    law, op = LawId(law), Op(op)
    ensure_applicable(law, op, cfg.regime)
    tol = default_tolerance(law) if tol is None else tol
    if tol <= 0:
        raise ValueError(f"tolerance must be positive (was {tol})")
    threads = threads or int(config.lawlab_setting("threads"))
    chunk_size = chunk_size or int(config.lawlab_setting("chunk_size"))
    return law, op, tol, threads, chunk_size


async def check_async(
    law: LawId | str,
    op: Op | str,
    cfg: SamplerConfig,
    tol: Optional[float] = None,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> LawReport:
    law, op, tol, threads, chunk_size = _resolve(law, op, cfg, tol, threads, chunk_size)
    semaphore = asyncio.Semaphore(threads)

    async def run(chunk: Tuple[int, int, int]) -> _ChunkStats:
        async with semaphore:
            return await asyncio.to_thread(
                _evaluate_chunk, law, op, cfg, chunk, chunk_size, tol
            )

    stats = await asyncio.gather(*(run(b) for b in chunk_bounds(cfg.count, chunk_size)))
    report = _aggregate(law, op, cfg, tol, stats)
    logger.info(
        f"check {law}/{op} on {cfg.regime}: {report.verdict} "
        f"(max defect {report.max_defect:.3e}, {report.violations} violations, "
        f"{report.skips} skipped)"
    )
    if report.skips:
        logger.warning(f"{report.skips} of {cfg.count} samples skipped on degenerate denominators")
    return report


def check(
    law: LawId | str,
    op: Op | str,
    cfg: SamplerConfig,
    tol: Optional[float] = None,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> LawReport:
    return asyncio.run(check_async(law, op, cfg, tol, threads, chunk_size))


# --- hunt and shrink -----------------------------------------------------


class NotFound(VelcompError):
    def __init__(self, law: LawId, op: Op, searched: int, skips: int = 0) -> None:
        super().__init__(
            f"no violation of {law} on {op} in {searched} samples ({skips} skipped)"
        )
        self.law = law
        self.op = op
        # evaluated samples; skipped rows are not counted
        self.searched = searched
        self.skips = skips


@dataclass(frozen=True, eq=False)
class Counterexample:
    law: LawId
    op: Op
    inputs: Tuple[CVec3, ...]
    defect: float
    tol: float
    c: float
    sample_index: int
    shrink_steps: int
    trace: Tuple[str, ...]


def _first_violation(
    law: LawId,
    op: Op,
    cfg: SamplerConfig,
    chunk: Tuple[int, int, int],
    chunk_size: int,
    tol: float,
) -> Tuple[Optional[Tuple[int, Tuple[CVec3, ...], float]], int]:
    """First violation in the chunk (if any) and the chunk's skip count."""
    batch, defects, ok = _chunk_defects(law, op, cfg, chunk, chunk_size)
    skips = int(np.count_nonzero(~ok))
    hits = np.flatnonzero(ok & (defects > tol))
    if hits.size == 0:
        return None, skips
    i = int(hits[0])
    return chunk[1] + i, tuple(a3.as_cvec3(v) for v in batch[i]), float(defects[i])), skips


def _single_defect(law: LawId, op: Op, inputs: Sequence[CVec3], c: float) -> Optional[float]:
    defects, ok = defect_batch(law, op, np.stack(inputs)[None], c)
    return float(defects[0]) if ok[0] else None


def _halve(v: CVec3, c: float) -> CVec3:
    """Halve the rapidity of a real subluminal vector; halve complex vectors outright."""
    norm = float(a3.norm_hermitian(v))
    if norm == 0.0:
        return v
    if a3.is_real(v) and norm < c:
        return a3.as_cvec3(v * (c * math.tanh(0.5 * math.atanh(norm / c)) / norm))
    return a3.as_cvec3(v / 2)


def _shrink_candidates(
    inputs: Tuple[CVec3, ...], c: float
) -> Iterator[Tuple[str, Tuple[CVec3, ...]]]:
    halved = tuple(_halve(v, c) for v in inputs)
    if any(not np.array_equal(h, v) for h, v in zip(halved, inputs)):
        yield "halve rapidities", halved
    for i, v in enumerate(inputs):
        for k, axis in enumerate("xyz"):
            if v[k] == 0:
                continue
            zeroed = v.copy()
            zeroed[k] = 0
            yield f"zero v{i}.{axis}", inputs[:i] + (a3.as_cvec3(zeroed),) + inputs[i + 1 :]
            if v[k].imag != 0 and v[k].real != 0:
                real = v.copy()
                real[k] = v[k].real
                yield (
                    f"drop imaginary part of v{i}.{axis}",
                    inputs[:i] + (a3.as_cvec3(real),) + inputs[i + 1 :],
                )


def shrink(
    law: LawId | str,
    op: Op | str,
    inputs: Sequence[npt.ArrayLike],
    tol: float,
    c: float = 1.0,
    max_steps: Optional[int] = None,
) -> Tuple[Tuple[CVec3, ...], float, Tuple[str, ...]]:
    """Greedy shrink: take the first candidate step that keeps the defect above ``tol``.

    Returns the shrunk inputs, their defect and the accepted steps.
    """
    law, op = LawId(law), Op(op)
    max_steps = max_steps if max_steps is not None else int(config.lawlab_setting("max_shrink_steps"))
    current = tuple(a3.as_cvec3(v) for v in inputs)
    current_defect = _single_defect(law, op, current, c)
    if current_defect is None or current_defect <= tol:
        raise ValueError(f"inputs do not violate {law} on {op} at tol {tol}")
    trace: List[str] = []
    while len(trace) < max_steps:
        for label, candidate in _shrink_candidates(current, c):
            d = _single_defect(law, op, candidate, c)
            if d is not None and d > tol:
                logger.debug(f"shrink {label}: defect {current_defect!r} -> {d!r}")
                current, current_defect = candidate, d
                trace.append(label)
                break
        else:
            break
    return current, current_defect, tuple(trace)


async def hunt_async(
    law: LawId | str,
    op: Op | str,
    cfg: SamplerConfig,
    tol: Optional[float] = None,
    shrink_inputs: bool = True,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> Counterexample:
    law, op, tol, threads, chunk_size = _resolve(law, op, cfg, tol, threads, chunk_size)
    bounds = chunk_bounds(cfg.count, chunk_size)

    hit = None
    skips = 0
    # Waves of `threads` chunks; the first violation in chunk order wins.
    for first in range(0, len(bounds), threads):
        wave = bounds[first : first + threads]
        results = await asyncio.gather(
            *(
                asyncio.to_thread(_first_violation, law, op, cfg, b, chunk_size, tol)
                for b in wave
            )
        )
        skips += sum(s for _, s in results)
        hit = next((h for h, _ in results if h is not None), None)
        if hit is not None:
            break
    if hit is None:
        raise NotFound(law, op, cfg.count - skips, skips)

    index, inputs, found_defect = hit
    logger.info(f"hunt {law}/{op}: violation at sample {index} (defect {found_defect:.3e})")
    trace: Tuple[str, ...] = ()
    if shrink_inputs:
        inputs, found_defect, trace = await asyncio.to_thread(
            shrink, law, op, inputs, tol, cfg.c.c, max_steps
        )
    return Counterexample(
        law=law,
        op=op,
        inputs=inputs,
        defect=found_defect,
        tol=tol,
        c=cfg.c.c,
        sample_index=index,
        shrink_steps=len(trace),
        trace=trace,
    )


def hunt_and_shrink(
    law: LawId | str,
    op: Op | str,
    cfg: SamplerConfig,
    tol: Optional[float] = None,
    shrink_inputs: bool = True,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> Counterexample:
    return asyncio.run(
        hunt_async(law, op, cfg, tol, shrink_inputs, threads, chunk_size, max_steps)
    )


# --- audits --------------------------------------------------------------


def scale_audit(
    law: LawId | str,
    op: Op | str,
    cfg: SamplerConfig,
    factor: float = 17.0,
    chunk_size: Optional[int] = None,
) -> float:
    """Largest change of any defect when all inputs and c are scaled by ``factor``."""
    law, op = LawId(law), Op(op)
    ensure_applicable(law, op, cfg.regime)
    batch = sample(cfg, ARITY[law], chunk_size)
    base, ok1 = defect_batch(law, op, batch, cfg.c.c)
    scaled, ok2 = defect_batch(law, op, batch * factor, cfg.c.c * factor)
    both = ok1 & ok2
    if not both.any():
        return 0.0
    return float(np.max(np.abs(base - scaled)[both]))


# --- suite ---------------------------------------------------------------


@dataclass(frozen=True)
class SampledCase:
    law: LawId
    op: Op
    expect: Verdict
    regime: Regime = Regime.UNIFORM_BALL
    tol: Optional[float] = None


@dataclass(frozen=True)
class WitnessCase:
    law: LawId
    op: Op
    # velocities in units of c
    inputs: Tuple[Tuple[float, float, float], ...]
    min_defect: float = 1e-3


SAMPLED_CASES: Tuple[SampledCase, ...] = (
    SampledCase(LawId.IDENTITY, Op.EINSTEIN, Verdict.HOLDS),
    SampledCase(LawId.INVERSE, Op.EINSTEIN, Verdict.HOLDS),
    SampledCase(LawId.IDENTITY, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.INVERSE, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.RECIPROCITY, Op.EINSTEIN, Verdict.VIOLATED),
    SampledCase(LawId.RECIPROCITY, Op.EINSTEIN, Verdict.HOLDS, Regime.COLLINEAR),
    SampledCase(LawId.RECIPROCITY, Op.EINSTEIN, Verdict.VIOLATED, Regime.NEAR_PARALLEL),
    SampledCase(LawId.RECIPROCITY, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.ASSOCIATIVITY, Op.EINSTEIN, Verdict.VIOLATED, tol=1e-6),
    SampledCase(LawId.ASSOCIATIVITY, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.ASSOCIATIVITY, Op.RECSYM, Verdict.HOLDS, Regime.COMPLEX_DISC),
    SampledCase(LawId.COMMUTATIVITY, Op.EINSTEIN, Verdict.VIOLATED),
    SampledCase(LawId.COMMUTATIVITY, Op.RECSYM, Verdict.VIOLATED),
    SampledCase(LawId.NEGATION_REVERSED, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.NEGATION_SAME_ORDER, Op.RECSYM, Verdict.VIOLATED),
    # (-b) +̄ (-a) = -(b +̄ a), so this is the commutativity defect in disguise
    SampledCase(LawId.NEGATION_REVERSED, Op.EINSTEIN, Verdict.VIOLATED),
    SampledCase(LawId.NEGATION_SAME_ORDER, Op.EINSTEIN, Verdict.HOLDS),
    SampledCase(LawId.MAGNITUDE_EQUALITY, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.MAGNITUDE_COMMUTATIVITY, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.MAGNITUDE_COMMUTATIVITY, Op.EINSTEIN, Verdict.HOLDS),
    SampledCase(LawId.SELF_DOT_REAL, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.DUAL_PATH, Op.RECSYM, Verdict.HOLDS),
    SampledCase(LawId.DUAL_PATH, Op.RECSYM, Verdict.HOLDS, Regime.COMPLEX_DISC),
    SampledCase(LawId.SUBLUMINAL_CLOSURE, Op.EINSTEIN, Verdict.HOLDS),
    SampledCase(LawId.SUBLUMINAL_CLOSURE, Op.EINSTEIN, Verdict.HOLDS, Regime.NEAR_LIGHTSPEED),
    SampledCase(LawId.SUBLUMINAL_CLOSURE, Op.RECSYM, Verdict.HOLDS, Regime.NEAR_LIGHTSPEED),
)

WITNESS_CASES: Tuple[WitnessCase, ...] = (
    WitnessCase(LawId.RECIPROCITY, Op.EINSTEIN, ((0.5, 0.0, 0.0), (0.0, 0.5, 0.0))),
    # gyr[x̂, ŷ] turns about ẑ, so the third vector must not lie along ẑ
    WitnessCase(
        LawId.ASSOCIATIVITY, Op.EINSTEIN, ((0.5, 0.0, 0.0), (0.0, 0.5, 0.0), (0.5, 0.0, 0.0))
    ),
    WitnessCase(LawId.COMMUTATIVITY, Op.RECSYM, ((0.5, 0.0, 0.0), (0.0, 0.5, 0.0))),
    WitnessCase(LawId.NEGATION_SAME_ORDER, Op.RECSYM, ((0.5, 0.0, 0.0), (0.0, 0.5, 0.0))),
)

SCALE_AUDIT_FACTOR = 17.0
SCALE_AUDIT_BOUND = 1e-12
SCALE_AUDIT_CASES: Tuple[Tuple[LawId, Op], ...] = (
    (LawId.ASSOCIATIVITY, Op.EINSTEIN),
    (LawId.ASSOCIATIVITY, Op.RECSYM),
    (LawId.RECIPROCITY, Op.EINSTEIN),
    (LawId.RECIPROCITY, Op.RECSYM),
    (LawId.NEGATION_REVERSED, Op.RECSYM),
    (LawId.MAGNITUDE_EQUALITY, Op.RECSYM),
)


@dataclass(frozen=True, eq=False)
class SuiteRow:
    kind: str
    law: LawId
    op: Op
    regime: Optional[Regime]
    expected: str
    observed: str
    passed: bool
    report: Optional[LawReport] = None
    value: Optional[float] = None


async def run_suite_async(
    seed: int,
    samples: int,
    c: LightSpeed = LightSpeed(),
    max_beta: Optional[float] = None,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> List[SuiteRow]:
    """Run every sampled case, fixed witness and scale audit in a fixed order."""
    rows: List[SuiteRow] = []
    beta = {} if max_beta is None else {"max_beta": max_beta}

    for case in SAMPLED_CASES:
        cfg = SamplerConfig(seed=seed, count=samples, c=c, regime=case.regime, **beta)
        report = await check_async(case.law, case.op, cfg, case.tol, threads, chunk_size)
        rows.append(
            SuiteRow(
                kind="sampled",
                law=case.law,
                op=case.op,
                regime=case.regime,
                expected=case.expect.value,
                observed=report.verdict.value,
                passed=report.verdict is case.expect,
                report=report,
                value=report.max_defect,
            )
        )

    for witness in WITNESS_CASES:
        inputs = [np.array(v) * c.c for v in witness.inputs]
        d = defect(witness.law, witness.op, inputs, c)
        rows.append(
            SuiteRow(
                kind="witness",
                law=witness.law,
                op=witness.op,
                regime=None,
                expected=f"defect > {witness.min_defect!r}",
                observed=f"defect = {d!r}",
                passed=d > witness.min_defect,
                value=d,
            )
        )

    for law, op in SCALE_AUDIT_CASES:
        cfg = SamplerConfig(seed=seed, count=samples, c=c, **beta)
        change = await asyncio.to_thread(
            scale_audit, law, op, cfg, SCALE_AUDIT_FACTOR, chunk_size
        )
        rows.append(
            SuiteRow(
                kind="scale_audit",
                law=law,
                op=op,
                regime=cfg.regime,
                expected=f"max change <= {SCALE_AUDIT_BOUND!r}",
                observed=f"max change = {change!r}",
                passed=change <= SCALE_AUDIT_BOUND,
                value=change,
            )
        )

    failed = [r for r in rows if not r.passed]
    logger.info(f"suite: {len(rows) - len(failed)}/{len(rows)} expectations met")
    for r in failed:
        logger.warning(f"suite: {r.kind} {r.law}/{r.op} expected {r.expected}, got {r.observed}")
    return rows


def run_suite(
    seed: int,
    samples: int,
    c: LightSpeed = LightSpeed(),
    max_beta: Optional[float] = None,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> List[SuiteRow]:
    return asyncio.run(run_suite_async(seed, samples, c, max_beta, threads, chunk_size))
