"""Canonical serialization and small report math (digests, CSV, JSON,
exponent fits).

Byte stability is part of the contract: JSON is emitted with sorted keys
and a fixed separator/indent policy, CSV with fixed column order and
newline discipline, and nothing ever embeds a timestamp.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

from .core import RatSet, format_scalar

SCHEMA_ENERGY = "sumprod.energy-record/1"


def fraction_str(x: Fraction | int) -> str:
    return format_scalar(Fraction(x))


def canonical_json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


def write_json(path: Path, obj) -> None:
    path.write_bytes(canonical_json_bytes(obj))


def csv_bytes(fieldnames: list[str], rows: list[dict]) -> bytes:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def write_csv(path: Path, fieldnames: list[str], rows: list[dict]) -> None:
    path.write_bytes(csv_bytes(fieldnames, rows))


def energy_record(operation: str, inputs: list[RatSet], value, budget_flags=None) -> dict:
    """The standard JSON record {operation, inputs-digest, value, flags}."""
    return {
        "schema": SCHEMA_ENERGY,
        "operation": operation,
        "inputs_digest": [s.digest() for s in inputs],
        "value": fraction_str(value) if isinstance(value, (Fraction, int)) else value,
        "budget_flags": budget_flags or {},
    }


def scan_result_rows(result) -> tuple[list[str], list[dict]]:
    """CSV shape for an SztScanResult: one row per (family, tau) cell."""
    fields = [
        "family_index",
        "tau",
        "level_count",
        "bound_num",
        "bound_den",
        "ratio",
        "anomaly",
    ]
    return fields, result.to_rows()


def suite_rows(reports: list) -> tuple[list[str], list[dict]]:
    """CSV matrix set-digest x inequality x status/detail."""
    fields = ["input_digest", "set_size", "row", "status", "detail"]
    rows = []
    for rep in reports:
        for r in rep.rows:
            rows.append(
                {
                    "input_digest": rep.input_digest,
                    "set_size": rep.set_size,
                    "row": r.row_id,
                    "status": r.status,
                    "detail": r.detail,
                }
            )
    return fields, rows


def decomposition_rows(result) -> tuple[list[str], list[dict]]:
    fields = ["j", "d_size", "delta", "mult_energy_c", "add_energy_d"]
    return fields, result.to_csv_rows()


def fit_exponent(pairs: list[tuple[int, int]]) -> float:
    """OLS slope of log(value) against log(size); report-only float math."""
    pts = [(math.log(n), math.log(v)) for n, v in pairs if n > 1 and v > 0]
    if len(pts) < 2:
        return float("nan")
    mean_x = sum(x for x, _ in pts) / len(pts)
    mean_y = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mean_x) ** 2 for x, _ in pts)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in pts)
    return sxy / sxx if sxx else float("nan")


def growth_fit_table(scan_rows: list[dict], metric: str = "max_growth") -> dict:
    """Per-family exponent fits from long-format scan rows."""
    by_family: dict[str, list[tuple[int, int]]] = {}
    for row in scan_rows:
        if row.get("metric") != metric:
            continue
        by_family.setdefault(row["kind"], []).append((int(row["size"]), int(row["value"])))
    table = {}
    for kind, pairs in sorted(by_family.items()):
        pairs.sort()
        table[kind] = {
            "points": [[n, v] for n, v in pairs],
            "fitted_exponent": round(fit_exponent(pairs), 6),
        }
    return table
