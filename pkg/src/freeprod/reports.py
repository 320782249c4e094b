"""Deterministic report rendering: canonical JSON and CSV.

Identical inputs must produce byte-identical output, so JSON is rendered
with sorted keys, fixed indentation and floats rounded to 12 significant
digits; wall-clock timing is only attached when explicitly requested.
Exact rationals are rendered by the builders as a string plus a rounded
decimal (``{"fraction": "256/75", "decimal": 3.41333333333}``) — the
canonicalizer rejects raw Fraction objects to keep that explicit.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

REPORT_SCHEMA = "freeprod-report/1"


def round_float(x: float) -> float:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float in report: {x!r}")
    return float(f"{x:.12g}")


def _canon(obj: Any) -> Any:
    if obj is None or isinstance(obj, (str, bool, int)):
        return obj
    if isinstance(obj, float):
        return round_float(obj)
    if isinstance(obj, Mapping):
        out = {}
        for key, value in obj.items():
            if not isinstance(key, str):
                raise ValueError(f"non-string report key: {key!r}")
            out[key] = _canon(value)
        return out
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    raise ValueError(f"unsupported report value type: {type(obj).__name__}")


def canonical_json(payload: Mapping[str, Any]) -> str:
    return json.dumps(_canon(payload), sort_keys=True, indent=2) + "\n"


def report(
    command: str,
    inputs: Mapping[str, Any],
    outputs: Mapping[str, Any],
    *,
    timing_ms: float | None = None,
) -> dict[str, Any]:
    body: dict[str, Any] = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "inputs": dict(inputs),
        "outputs": dict(outputs),
    }
    if timing_ms is not None:
        body["timing_ms"] = round_float(timing_ms)
    return body


def fraction_fields(value: Fraction) -> dict[str, Any]:
    return {"fraction": str(value), "decimal": round_float(float(value))}


def csv_text(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(
            [f"{v:.12g}" if isinstance(v, float) else v for v in row]
        )
    return buf.getvalue()
