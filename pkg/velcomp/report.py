"""Parsing and rendering of vectors and command records.

Vectors on the command line are ``"x,y,z"`` (real) or ``"x,y,z;ix,iy,iz"``
(real parts, then imaginary parts). JSON output carries floats in Python's
shortest round-trip form; text output uses a fixed number of significant
digits.
"""

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

from . import algebra3 as a3
from .algebra3 import CVec3
from .lawlab import Counterexample, LawReport, SuiteRow

SCHEMA_VERSION = "1"


def parse_vector(text: str) -> CVec3:
    parts = text.strip().split(";")
    if len(parts) > 2:
        raise ValueError(f"expected 'x,y,z' or 'x,y,z;ix,iy,iz', got {text!r}")
    rows = []
    for part in parts:
        fields = [f.strip() for f in part.split(",")]
        if len(fields) != 3:
            raise ValueError(f"expected three components in {part!r}")
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise ValueError(f"non-numeric component in {part!r}")
    re = np.array(rows[0])
    im = np.array(rows[1]) if len(rows) == 2 else np.zeros(3)
    return a3.as_cvec3(re + 1j * im)


def format_vector_arg(v: CVec3) -> str:
    """Canonical command-line form: imaginary parts only when any is nonzero."""
    v = np.asarray(v)
    text = ",".join(repr(float(x)) for x in v.real)
    if not a3.is_real(v):
        text += ";" + ",".join(repr(float(x)) for x in v.imag)
    return text


def _g(x: float, digits: int) -> str:
    # + 0.0 folds -0.0 into 0.0
    return f"{float(x) + 0.0:.{digits}g}"


def format_component(z: complex, digits: int = 9) -> str:
    if z.imag == 0:
        return _g(z.real, digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{_g(z.real, digits)}{sign}{_g(abs(z.imag), digits)}i"


def format_vector_text(v: CVec3, digits: int = 9) -> str:
    return "(" + ", ".join(format_component(complex(z), digits) for z in v) + ")"


def vector_json(v: CVec3) -> Dict[str, List[float]]:
    v = np.asarray(v)
    return {"re": [float(x) for x in v.real], "im": [float(x) for x in v.imag]}


def vector_from_json(obj: Dict[str, Sequence[float]]) -> CVec3:
    return a3.as_cvec3(np.array(obj["re"]) + 1j * np.array(obj["im"]))


def complex_json(z: complex) -> Dict[str, float]:
    return {"re": float(z.real), "im": float(z.imag)}


@dataclass
class OutputRecord:
    command: str
    inputs: Dict[str, Any]
    result: Dict[str, Any]
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        body = asdict(self)
        ordered = {
            key: body[key]
            for key in ("schema_version", "command", "inputs", "result", "diagnostics")
        }
        return json.dumps(ordered, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        return cls(
            command=data["command"],
            inputs=data["inputs"],
            result=data["result"],
            diagnostics=data["diagnostics"],
            schema_version=data["schema_version"],
        )


def law_report_json(report: LawReport) -> Dict[str, Any]:
    return {
        "law": report.law.value,
        "op": report.op.value,
        "regime": report.regime.value,
        "seed": report.seed,
        "samples": report.samples,
        "skips": report.skips,
        "max_defect": report.max_defect,
        "mean_defect": report.mean_defect,
        "violations": report.violations,
        "tol": report.tol,
        "worst_index": report.worst_index,
        "worst_input": [vector_json(v) for v in report.worst_input],
        "verdict": report.verdict.value,
    }


def counterexample_json(cx: Counterexample) -> Dict[str, Any]:
    return {
        "found": True,
        "law": cx.law.value,
        "op": cx.op.value,
        "inputs": [vector_json(v) for v in cx.inputs],
        "inputs_arg": [format_vector_arg(v) for v in cx.inputs],
        "defect": cx.defect,
        "tol": cx.tol,
        "c": cx.c,
        "sample_index": cx.sample_index,
        "shrink_steps": cx.shrink_steps,
        "trace": list(cx.trace),
    }


def suite_row_json(row: SuiteRow) -> Dict[str, Any]:
    body: Dict[str, Any] = {
        "kind": row.kind,
        "law": row.law.value,
        "op": row.op.value,
        "regime": row.regime.value if row.regime is not None else None,
        "expected": row.expected,
        "observed": row.observed,
        "passed": row.passed,
        "value": row.value,
    }
    if row.report is not None:
        body["report"] = law_report_json(row.report)
    return body


REPORT_CSV_FIELDS = (
    "law",
    "op",
    "regime",
    "seed",
    "samples",
    "skips",
    "max_defect",
    "mean_defect",
    "violations",
    "tol",
    "worst_index",
    "verdict",
)

SUITE_CSV_FIELDS = ("kind", "law", "op", "regime", "expected", "observed", "passed", "value")


def _csv(fields: Sequence[str], rows: Iterable[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row[k] for k in fields})
    return buf.getvalue()


def law_reports_csv(reports: Iterable[LawReport]) -> str:
    return _csv(REPORT_CSV_FIELDS, (law_report_json(r) for r in reports))


def suite_csv(rows: Iterable[SuiteRow]) -> str:
    return _csv(SUITE_CSV_FIELDS, (suite_row_json(r) for r in rows))
