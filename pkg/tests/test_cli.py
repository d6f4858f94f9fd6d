"""End-to-end tests of the ``velcomp`` command through click's ``CliRunner``.

Negative vector components have to be passed as ``--a=-0.5,0,0`` so click
does not read them as options.
"""

import json
from typing import List

import pytest
from click.testing import CliRunner, Result

from velcomp.cli import cli


def _run(args: List[str]) -> Result:
    return CliRunner().invoke(cli, args)


def _json(result: Result) -> dict:
    return json.loads(result.stdout)


# --- add / relative --------------------------------------------------------


def test_add_einstein_text() -> None:
    result = _run(["add", "--law", "einstein", "--a", "0.5,0,0", "--b", "0.5,0,0"])
    assert result.exit_code == 0
    assert result.stdout == "(0.8, 0, 0)\n"


def test_add_recsym_text_shows_the_imaginary_part() -> None:
    result = _run(["add", "--law", "recsym", "--a", "0.5,0,0", "--b", "0,0.5,0"])
    assert result.exit_code == 0
    assert result.stdout == "(0.5, 0.5, 0+0.25i)\n"


def test_add_json() -> None:
    result = _run(
        ["add", "--law", "einstein", "--a=-0.5,0,0", "--b", "0,0.5,0", "--format", "json"]
    )
    assert result.exit_code == 0
    body = _json(result)
    assert body["schema_version"] == "1"
    assert body["command"] == "add"
    assert body["inputs"]["a"] == "-0.5,0.0,0.0"
    assert body["result"]["w"]["re"][0] == pytest.approx(-0.5)
    assert body["diagnostics"]["denominator"] == {"re": 1.0, "im": 0.0}


def test_add_einstein_at_the_margin() -> None:
    result = _run(
        ["add", "--law", "einstein", "--a", "0.9999999999,0,0", "--b", "0.9999999999,0,0"]
    )
    assert result.exit_code == 0
    assert result.stdout == "(1, 0, 0)\n"


def test_add_with_c() -> None:
    result = _run(["add", "--law", "einstein", "--a", "150,0,0", "--b", "150,0,0", "--c", "300"])
    assert result.exit_code == 0
    assert result.stdout == "(240, 0, 0)\n"


@pytest.mark.parametrize(
    "args, error",
    [
        (["--law", "einstein", "--a", "1.5,0,0", "--b", "0,0,0"], "Superluminal"),
        (["--law", "einstein", "--a", "0.5,0,0;0,0.1,0", "--b", "0,0,0"], "ComplexVelocity"),
        (["--law", "recsym", "--a", "1,0,0", "--b=-1,0,0"], "DegenerateDenominator"),
    ],
)
def test_domain_errors_exit_3(args: List[str], error: str) -> None:
    result = _run(["add", *args])
    assert result.exit_code == 3
    assert error in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["add", "--law", "einstein", "--a", "1,2", "--b", "0,0,0"],
        ["add", "--law", "einstein", "--a", "nan,0,0", "--b", "0,0,0"],
        ["add", "--law", "galilean", "--a", "0,0,0", "--b", "0,0,0"],
        ["add", "--law", "einstein", "--a", "0,0,0", "--b", "0,0,0", "--c", "0"],
        ["add", "--law", "einstein", "--a", "0,0,0", "--b", "0,0,0", "--c", "inf"],
        ["add", "--law", "einstein", "--a", "0,0,0", "--b", "0,0,0", "--c", "nan"],
        ["relative", "--law", "recsym", "--observer", "0,0,0", "--object", "0,0,0", "--c", "inf"],
        ["defect", "--law-id", "identity", "--op", "recsym", "--v", "0,0,0", "--c", "nan"],
        ["check", "--law-id", "identity", "--op", "recsym", "--c", "inf"],
        ["check", "--law-id", "identity", "--op", "recsym", "--tol", "nan"],
        ["check", "--law-id", "identity", "--op", "recsym", "--samples", "0"],
        ["hunt", "--law-id", "identity", "--op", "recsym", "--samples", "0"],
    ],
)
def test_usage_errors_exit_2(args: List[str]) -> None:
    assert _run(args).exit_code == 2


def test_relative_text() -> None:
    result = _run(
        ["relative", "--law", "recsym", "--observer", "0.5,0,0", "--object", "0,0.5,0"]
    )
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0].startswith("W  = ")
    assert lines[1].startswith("W~ = ")
    assert lines[2] == "|W~ + W| = 0"


def test_relative_json_shows_einstein_mismatch() -> None:
    result = _run(
        [
            "relative", "--law", "einstein", "--observer", "0.5,0,0",
            "--object", "0,0.5,0", "--format", "json",
        ]
    )
    assert result.exit_code == 0
    body = _json(result)["result"]
    assert body["reciprocity_mismatch"] > 1e-3
    assert body["reciprocity_defect"] > 1e-3


# --- check -----------------------------------------------------------------


def test_check_holds_exits_0() -> None:
    result = _run(
        ["check", "--law-id", "reciprocity", "--op", "recsym", "--samples", "500", "--seed", "1"]
    )
    assert result.exit_code == 0
    body = _json(result)
    assert body["result"]["verdict"] == "HOLDS"
    assert body["inputs"]["samples"] == 500
    assert "threads" not in body["inputs"]


def test_check_violated_exits_1() -> None:
    result = _run(
        ["check", "--law-id", "reciprocity", "--op", "einstein", "--samples", "500", "--seed", "1"]
    )
    assert result.exit_code == 1
    body = _json(result)["result"]
    assert body["verdict"] == "VIOLATED"
    assert body["worst_index"] is not None


def test_check_output_does_not_depend_on_threads() -> None:
    base = ["check", "--law-id", "associativity", "--op", "einstein", "--samples", "3000"]
    one = _run([*base, "--threads", "1"])
    many = _run([*base, "--threads", "4"])
    assert one.exit_code == many.exit_code == 1
    assert one.stdout == many.stdout


def test_check_csv() -> None:
    result = _run(
        [
            "check", "--law-id", "commutativity", "--op", "recsym",
            "--samples", "100", "--format", "csv",
        ]
    )
    assert result.exit_code == 1
    header, row = result.stdout.splitlines()
    assert header.startswith("law,op,regime,seed,samples")
    assert row.startswith("commutativity,recsym,uniform_ball,42,100,")


@pytest.mark.parametrize(
    "args",
    [
        ["--law-id", "dual_path", "--op", "einstein"],
        ["--law-id", "associativity", "--op", "einstein", "--regime", "complex_disc"],
        ["--law-id", "associativity", "--op", "recsym", "--max-beta", "1.0"],
        ["--law-id", "associativity", "--op", "recsym", "--seed=-1"],
    ],
)
def test_check_usage_errors(args: List[str]) -> None:
    assert _run(["check", *args, "--samples", "10"]).exit_code == 2


# --- hunt / defect ---------------------------------------------------------


def test_hunt_output_replays_through_defect() -> None:
    result = _run(
        ["hunt", "--law-id", "commutativity", "--op", "einstein", "--samples", "200"]
    )
    assert result.exit_code == 0
    found = _json(result)["result"]
    assert found["found"] is True
    assert found["shrink_steps"] == len(found["trace"])

    args = ["defect", "--law-id", "commutativity", "--op", "einstein"]
    for arg in found["inputs_arg"]:
        args.append(f"--v={arg}")
    replay = _run(args)
    assert replay.exit_code == 0
    assert _json(replay)["result"]["defect"] == found["defect"]


def test_hunt_without_shrink() -> None:
    result = _run(
        [
            "hunt", "--law-id", "reciprocity", "--op", "einstein",
            "--samples", "200", "--shrink", "off",
        ]
    )
    assert result.exit_code == 0
    assert _json(result)["result"]["trace"] == []


def test_hunt_not_found_exits_1() -> None:
    result = _run(["hunt", "--law-id", "reciprocity", "--op", "recsym", "--samples", "200"])
    assert result.exit_code == 1
    body = _json(result)["result"]
    assert body["found"] is False
    assert body["searched"] == 200
    diagnostics = _json(result)["diagnostics"]
    assert diagnostics == {"skips": 0, "samples_requested": 200}


def test_defect_command() -> None:
    result = _run(
        ["defect", "--law-id", "reciprocity", "--op", "einstein", "--v", "0.5,0,0", "--v", "0,0.5,0"]
    )
    assert result.exit_code == 0
    body = _json(result)
    assert body["result"]["defect"] > 1e-3
    assert body["result"]["tol"] == 1e-12


def test_defect_wrong_arity_exits_2() -> None:
    result = _run(["defect", "--law-id", "associativity", "--op", "recsym", "--v", "0.5,0,0"])
    assert result.exit_code == 2


# --- suite -----------------------------------------------------------------


def test_suite_passes() -> None:
    result = _run(["suite", "--samples", "1500", "--seed", "7"])
    assert result.exit_code == 0, result.output
    body = _json(result)
    assert body["result"]["passed"] is True
    assert body["diagnostics"]["failed"] == 0
    kinds = {row["kind"] for row in body["result"]["rows"]}
    assert kinds == {"sampled", "witness", "scale_audit"}


def test_suite_csv() -> None:
    result = _run(["suite", "--samples", "300", "--format", "csv"])
    lines = result.stdout.splitlines()
    assert lines[0] == "kind,law,op,regime,expected,observed,passed,value"
    assert any(line.startswith("witness,associativity,einstein,") for line in lines)


def test_suite_rejects_zero_samples() -> None:
    assert _run(["suite", "--samples", "0"]).exit_code == 2
