# Command-line front end for the composition laws and the law checker

import functools
import logging
import math
import sys
from typing import Any, Callable, Dict, Optional, Tuple

import click

from . import algebra3 as a3
from . import config
from . import einstein
from . import lawlab
from . import recsym
from . import report
from .algebra3 import CVec3, LightSpeed, Velocity
from .errors import DomainError, LawNotApplicable, VelcompError
from .lawlab import LawId, Op, Verdict
from .sampling import Regime, SamplerConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_DOMAIN = 3


class VectorType(click.ParamType):
    name = "vector"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> CVec3:
        if not isinstance(value, str):
            return value
        try:
            return report.parse_vector(value)
        except (ValueError, VelcompError) as e:
            self.fail(str(e), param, ctx)


class PositiveFinite(click.FloatRange):
    """A float in (0, inf); ``inf`` and ``nan`` are rejected."""

    def __init__(self) -> None:
        super().__init__(min=0, min_open=True)

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> Any:
        rv = super().convert(value, param, ctx)
        if not math.isfinite(rv):
            self.fail(f"{rv!r} is not a finite number.", param, ctx)
        return rv


VECTOR = VectorType()
SEED = click.IntRange(min=0, max=2**64 - 1)
POSITIVE = PositiveFinite()
BETA = click.FloatRange(min=0, max=1, min_open=True, max_open=True)
OPS = click.Choice([o.value for o in Op])
LAW_IDS = click.Choice([law.value for law in LawId])
REGIMES = click.Choice([r.value for r in Regime])


def _text_digits() -> int:
    return int(config.load_config()["cli"]["text_digits"])


def domain_errors(func: Callable[..., None]) -> Callable[..., None]:
    """Exit 3 on domain errors (name on stderr) and 2 on inapplicable laws."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            func(*args, **kwargs)
        except LawNotApplicable as e:
            raise click.UsageError(str(e))
        except DomainError as e:
            logger.debug("domain error", exc_info=True)
            click.echo(f"{type(e).__name__}: {e}", err=True)
            sys.exit(EXIT_DOMAIN)

    return wrapper


def _emit(record: report.OutputRecord) -> None:
    click.echo(record.to_json())


def _compose(law: str, a: CVec3, b: CVec3, ctx: LightSpeed) -> Tuple[CVec3, complex]:
    if Op(law) is Op.EINSTEIN:
        s = einstein.einstein_add(Velocity(a, ctx), Velocity(b, ctx))
        return s.w.v, complex(s.denom)
    r = recsym.rs_add(a, b, ctx)
    return r.w, r.denom


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log debug output to stderr.")
def cli(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        force=True,
    )


@cli.command()
@click.option("--law", type=OPS, required=True)
@click.option("--a", "a", type=VECTOR, required=True, help="x,y,z[;ix,iy,iz]")
@click.option("--b", "b", type=VECTOR, required=True, help="x,y,z[;ix,iy,iz]")
@click.option("--c", "c", type=POSITIVE, default=1.0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@domain_errors
def add(law: str, a: CVec3, b: CVec3, c: float, fmt: str) -> None:
    """Compose two velocities.

    Examples:
        $ velcomp add --law einstein --a 0.5,0,0 --b 0.5,0,0
        $ velcomp add --law recsym --a 0.5,0,0 --b 0,0.5,0
    """
    ctx = LightSpeed(c)
    w, denom = _compose(law, a, b, ctx)
    if fmt == "text":
        click.echo(report.format_vector_text(w, _text_digits()))
        return
    _emit(
        report.OutputRecord(
            command="add",
            inputs={
                "law": law,
                "a": report.format_vector_arg(a),
                "b": report.format_vector_arg(b),
                "c": c,
            },
            result={"w": report.vector_json(w)},
            diagnostics={"denominator": report.complex_json(denom)},
        )
    )


@cli.command()
@click.option("--law", type=OPS, required=True)
@click.option("--observer", type=VECTOR, required=True)
@click.option("--object", "obj", type=VECTOR, required=True)
@click.option("--c", "c", type=POSITIVE, default=1.0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@domain_errors
def relative(law: str, observer: CVec3, obj: CVec3, c: float, fmt: str) -> None:
    """Relative velocity seen from both sides, and how far it is from reciprocal.

    W is the object as seen by the observer, W~ the observer as seen by the
    object. Reciprocity requires W~ = -W.
    """
    ctx = LightSpeed(c)
    w, w_denom = _compose(law, -observer, obj, ctx)
    w_swapped, swapped_denom = _compose(law, -obj, observer, ctx)
    mismatch = float(a3.norm_hermitian(w_swapped + w))
    normalized = lawlab.defect(LawId.RECIPROCITY, law, (obj, observer), ctx)

    if fmt == "text":
        digits = _text_digits()
        click.echo(f"W  = {report.format_vector_text(w, digits)}")
        click.echo(f"W~ = {report.format_vector_text(w_swapped, digits)}")
        click.echo(f"|W~ + W| = {mismatch:.{digits}g}")
        click.echo(f"defect   = {normalized:.{digits}g}")
        return
    _emit(
        report.OutputRecord(
            command="relative",
            inputs={
                "law": law,
                "observer": report.format_vector_arg(observer),
                "object": report.format_vector_arg(obj),
                "c": c,
            },
            result={
                "w": report.vector_json(w),
                "w_swapped": report.vector_json(w_swapped),
                "reciprocity_mismatch": mismatch,
                "reciprocity_defect": normalized,
            },
            diagnostics={
                "denominators": [
                    report.complex_json(w_denom),
                    report.complex_json(swapped_denom),
                ]
            },
        )
    )


def _sampler_options(func: Callable[..., None]) -> Callable[..., None]:
    options = [
        click.option("--law-id", "law_id", type=LAW_IDS, required=True),
        click.option("--op", type=OPS, required=True),
        click.option("--samples", type=click.IntRange(min=1), default=10_000, show_default=True),
        click.option("--seed", type=SEED, default=42, show_default=True),
        click.option("--tol", type=POSITIVE, default=None, help="Defaults per law."),
        click.option("--regime", type=REGIMES, default=Regime.UNIFORM_BALL.value, show_default=True),
        click.option("--max-beta", "max_beta", type=BETA, default=None),
        click.option("--c", "c", type=POSITIVE, default=1.0, show_default=True),
        click.option("--threads", type=click.IntRange(min=1), default=None),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _sampler_config(
    seed: int, samples: int, c: float, regime: str, max_beta: Optional[float]
) -> SamplerConfig:
    extra: Dict[str, Any] = {} if max_beta is None else {"max_beta": max_beta}
    return SamplerConfig(seed=seed, count=samples, c=LightSpeed(c), regime=Regime(regime), **extra)


def _sampler_echo(
    law_id: str, op: str, samples: int, seed: int, tol: Optional[float], regime: str,
    max_beta: Optional[float], c: float,
) -> Dict[str, Any]:
    # threads is left out: it must not change the output
    return {
        "law_id": law_id,
        "op": op,
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "regime": regime,
        "max_beta": max_beta,
        "c": c,
    }


@cli.command()
@_sampler_options
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@domain_errors
def check(
    law_id: str, op: str, samples: int, seed: int, tol: Optional[float], regime: str,
    max_beta: Optional[float], c: float, threads: Optional[int], fmt: str,
) -> None:
    """Check one law over sampled inputs. Exit 0 if it holds, 1 if violated.

    Examples:
        $ velcomp check --law-id associativity --op recsym --samples 100000 --seed 42
        $ velcomp check --law-id reciprocity --op einstein --regime collinear
    """
    cfg = _sampler_config(seed, samples, c, regime, max_beta)
    result = lawlab.check(law_id, op, cfg, tol, threads)
    if fmt == "csv":
        click.echo(report.law_reports_csv([result]), nl=False)
    else:
        _emit(
            report.OutputRecord(
                command="check",
                inputs=_sampler_echo(law_id, op, samples, seed, tol, regime, max_beta, c),
                result=report.law_report_json(result),
                diagnostics={"skips": result.skips, "samples_requested": samples},
            )
        )
    sys.exit(EXIT_OK if result.verdict is Verdict.HOLDS else EXIT_NEGATIVE)


@cli.command()
@_sampler_options
@click.option("--shrink", type=click.Choice(["on", "off"]), default="on", show_default=True)
@domain_errors
def hunt(
    law_id: str, op: str, samples: int, seed: int, tol: Optional[float], regime: str,
    max_beta: Optional[float], c: float, threads: Optional[int], shrink: str,
) -> None:
    """Search for a counterexample and shrink it. Exit 0 if found, 1 if not.

    The printed ``inputs_arg`` vectors can be fed back to ``velcomp defect``.
    """
    cfg = _sampler_config(seed, samples, c, regime, max_beta)
    inputs = _sampler_echo(law_id, op, samples, seed, tol, regime, max_beta, c)
    inputs["shrink"] = shrink
    try:
        cx = lawlab.hunt_and_shrink(law_id, op, cfg, tol, shrink == "on", threads)
    except lawlab.NotFound as e:
        logger.info(str(e))
        _emit(
            report.OutputRecord(
                command="hunt",
                inputs=inputs,
                result={"found": False, "law": law_id, "op": op, "searched": e.searched},
                diagnostics={"skips": e.skips, "samples_requested": samples},
            )
        )
        sys.exit(EXIT_NEGATIVE)
    _emit(
        report.OutputRecord(
            command="hunt",
            inputs=inputs,
            result=report.counterexample_json(cx),
            diagnostics={"searched": cx.sample_index + 1},
        )
    )
    sys.exit(EXIT_OK)


@cli.command()
@click.option("--law-id", "law_id", type=LAW_IDS, required=True)
@click.option("--op", type=OPS, required=True)
@click.option("--v", "vectors", type=VECTOR, multiple=True, required=True, help="Repeat per input.")
@click.option("--c", "c", type=POSITIVE, default=1.0, show_default=True)
@domain_errors
def defect(law_id: str, op: str, vectors: Tuple[CVec3, ...], c: float) -> None:
    """Evaluate a law's defect on one input tuple.

    Example:
        $ velcomp defect --law-id reciprocity --op einstein --v 0.5,0,0 --v 0,0.5,0
    """
    try:
        value = lawlab.defect(law_id, op, vectors, LightSpeed(c))
    except LawNotApplicable:
        raise
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--v")
    _emit(
        report.OutputRecord(
            command="defect",
            inputs={
                "law_id": law_id,
                "op": op,
                "v": [report.format_vector_arg(v) for v in vectors],
                "c": c,
            },
            result={"defect": value, "tol": lawlab.default_tolerance(law_id)},
        )
    )


@cli.command()
@click.option("--samples", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=SEED, default=42, show_default=True)
@click.option("--max-beta", "max_beta", type=BETA, default=None)
@click.option("--c", "c", type=POSITIVE, default=1.0, show_default=True)
@click.option("--threads", type=click.IntRange(min=1), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@domain_errors
def suite(
    samples: int, seed: int, max_beta: Optional[float], c: float,
    threads: Optional[int], fmt: str,
) -> None:
    """Run every law/op expectation, witness and scale audit in one go.

    Exit 0 iff every expectation is met, including the expected violations
    of the Einstein laws.
    """
    rows = lawlab.run_suite(seed, samples, LightSpeed(c), max_beta, threads)
    passed = all(r.passed for r in rows)
    if fmt == "csv":
        click.echo(report.suite_csv(rows), nl=False)
    else:
        _emit(
            report.OutputRecord(
                command="suite",
                inputs={"samples": samples, "seed": seed, "max_beta": max_beta, "c": c},
                result={"passed": passed, "rows": [report.suite_row_json(r) for r in rows]},
                diagnostics={
                    "skips": sum(r.report.skips for r in rows if r.report is not None),
                    "failed": sum(1 for r in rows if not r.passed),
                },
            )
        )
    sys.exit(EXIT_OK if passed else EXIT_NEGATIVE)


if __name__ == "__main__":
    cli()
