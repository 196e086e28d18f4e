"""File formats: oracle files, run configs, JSON results and cost CSVs."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .errors import DomainError, ValidationError
from .fermi.lattice import LatticeGeometry
from .fermi.scaling import CSV_HEADER, GateCostReport
from .nonlinear import OracleTable

__all__ = [
    "ARTIFACT",
    "PRNG_NAME",
    "OracleFormatError",
    "make_rng",
    "parse_oracle",
    "load_oracle",
    "oracle_to_dict",
    "load_config",
    "geometry_from_dict",
    "dumps_json",
    "envelope",
    "report_to_csv",
]

ARTIFACT = "uqcsim"
PRNG_NAME = "numpy.random.PCG64"


class OracleFormatError(ValidationError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    if seed < 0:
        raise DomainError(f"seed must be an unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def parse_oracle(data: Any) -> OracleTable:
    """Oracle record with ``n_bits`` and exactly one of ``truth_table`` / ``solutions``."""
    if not isinstance(data, dict):
        raise OracleFormatError("oracle must be a JSON object")
    n_bits = data.get("n_bits")
    if not isinstance(n_bits, int) or isinstance(n_bits, bool) or n_bits < 0:
        raise OracleFormatError(f"n_bits must be a nonnegative integer, got {n_bits!r}")
    has_table, has_sols = "truth_table" in data, "solutions" in data
    if has_table == has_sols:
        raise OracleFormatError("oracle needs exactly one of 'truth_table' or 'solutions'")
    try:
        if has_table:
            table = data["truth_table"]
            if not isinstance(table, list) or any(
                isinstance(v, bool) or v not in (0, 1) for v in table
            ):
                raise OracleFormatError("truth_table must be a list of 0/1 integers")
            return OracleTable(n_bits, np.array(table, dtype=np.uint8))
        sols = data["solutions"]
        if not isinstance(sols, list) or not all(isinstance(s, str) for s in sols):
            raise OracleFormatError("solutions must be a list of binary strings")
        return OracleTable.from_solutions(n_bits, sols)
    except OracleFormatError:
        raise
    except ValueError as exc:
        raise OracleFormatError(str(exc)) from exc


def load_oracle(path: str | Path) -> OracleTable:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OracleFormatError(f"cannot read oracle file {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OracleFormatError(f"oracle file {path} is not valid JSON: {exc}") from exc
    try:
        return parse_oracle(data)
    except OracleFormatError as exc:
        raise OracleFormatError(f"{path}: {exc}") from exc


def oracle_to_dict(oracle: OracleTable, as_solutions: bool = False) -> dict:
    if as_solutions:
        return {"n_bits": oracle.n_bits, "solutions": oracle.solutions()}
    return {"n_bits": oracle.n_bits, "truth_table": [int(v) for v in oracle.table]}


def load_config(path: str | Path) -> dict:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"config file {path} must hold a JSON object")
    return data


def geometry_from_dict(data: dict) -> LatticeGeometry:
    shape = data.get("shape", "hypercubic")
    if shape in ("hypercube", "hypercube_graph"):
        return LatticeGeometry.hypercube(int(data["d"]))
    return LatticeGeometry.hypercubic(int(data["d"]), int(data["l"]))


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps_json(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def envelope(command: str, config: dict, result: dict) -> dict:
    return {
        "artifact": ARTIFACT,
        "version": __version__,
        "command": command,
        "config": config,
        "result": result,
    }


def report_to_csv(report: GateCostReport, trailer: list[str] = ()) -> str:
    """CSV with the fixed header; ``trailer`` lines are appended as ``#`` comments."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in sorted(report.rows):
        writer.writerow(row)
    for line in trailer:
        buf.write(f"# {line}\n")
    return buf.getvalue()
