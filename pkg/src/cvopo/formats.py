"""File formats: matrix documents, report documents, condprep configs.

Matrix files are JSON with explicit ``basis`` and ``ordering`` fields, since
the same state can legitimately be written in two mode bases and silent
basis confusion is the main user hazard.  Serialization is canonical
(sorted keys, two-space indent, trailing newline) so that parse-serialize
round trips are byte-exact, and numbers are written with Python's shortest
round-trip representation so they are value-exact.
"""

from __future__ import annotations

import hashlib
import io
import json
import csv
from typing import Any

import numpy as np

from . import __version__
from .condprep import CondPrepConfig, CondPrepResult
from .criteria import CriteriaReport
from .errors import FormatError
from .gaussian import CovarianceMatrix, ModeBasis, make_covariance

MATRIX_SCHEMA = "cvopo.matrix.v1"
REPORT_SCHEMA = "cvopo.report.v1"
CONDPREP_SCHEMA = "cvopo.condprep.v1"
ORDERING = "X_A,P_A,X_B,P_B"

#: Column order of the criteria CSV rendering (frozen; see README).
REPORT_CSV_COLUMNS = (
    "basis",
    "standard_form",
    "balanced",
    "gemellity_x",
    "antigemellity_p",
    "conditional_variance_x",
    "conditional_variance_p",
    "separability",
    "eof_ebits",
    "epr_product",
    "xi",
    "log_negativity",
    "max_log_negativity",
    "gemellity_x_db",
    "antigemellity_p_db",
    "conditional_variance_x_db",
    "conditional_variance_p_db",
    "separability_db",
    "nonclassical_correlation",
    "qnd_correlated",
    "inseparable",
    "epr_correlated",
)


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise FormatError("document root must be a JSON object")
    return doc


def matrix_to_document(gamma: CovarianceMatrix, metadata: dict | None = None) -> dict:
    return {
        "schema_version": MATRIX_SCHEMA,
        "basis": gamma.basis.value,
        "ordering": ORDERING,
        "entries": [[float(v) for v in row] for row in gamma.entries],
        "metadata": dict(metadata or {}),
    }


def document_to_matrix(doc: dict) -> tuple[CovarianceMatrix, dict]:
    """Parse a matrix document; returns the matrix and its metadata."""
    if doc.get("schema_version") != MATRIX_SCHEMA:
        raise FormatError(
            f"unsupported schema_version {doc.get('schema_version')!r}, "
            f"expected {MATRIX_SCHEMA!r}"
        )
    if doc.get("ordering") != ORDERING:
        raise FormatError(f"ordering must be {ORDERING!r}, got {doc.get('ordering')!r}")
    try:
        basis = ModeBasis(doc.get("basis"))
    except ValueError:
        raise FormatError(
            f"basis must be 'signal_idler' or 'plus_minus', got {doc.get('basis')!r}"
        ) from None
    entries = doc.get("entries")
    try:
        array = np.asarray(entries, dtype=float)
    except (TypeError, ValueError):
        raise FormatError("entries must be a 4x4 array of numbers") from None
    if array.shape != (4, 4):
        raise FormatError(f"entries must be 4x4, got shape {array.shape}")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise FormatError("metadata must be an object")
    return make_covariance(array, basis), metadata


def load_matrix(path) -> tuple[CovarianceMatrix, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return document_to_matrix(loads_document(fh.read()))


def save_matrix(path, gamma: CovarianceMatrix, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(matrix_to_document(gamma, metadata)))


def sha256_of_file(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def report_document(
    report: CriteriaReport, basis: ModeBasis, input_digest: str | None = None
) -> dict:
    return {
        "schema_version": REPORT_SCHEMA,
        "tool_version": __version__,
        "input_sha256": input_digest,
        "basis": basis.value,
        "standard_form": report.standard_form,
        "balanced": report.balanced,
        "criteria": report.scalars(),
        "db": report.db_renderings(),
        "flags": report.flags,
    }


def report_to_csv(doc: dict) -> str:
    """Single header row plus one data row, '.' decimal separator."""
    flat: dict[str, Any] = {
        "basis": doc["basis"],
        "standard_form": doc["standard_form"],
        "balanced": doc["balanced"],
    }
    flat.update(doc["criteria"])
    flat.update(doc["db"])
    flat.update(doc["flags"])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_CSV_COLUMNS)
    writer.writerow([_csv_cell(flat[c]) for c in REPORT_CSV_COLUMNS])
    return buf.getvalue()


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def condprep_config_to_document(cfg: CondPrepConfig) -> dict:
    return {
        "schema_version": CONDPREP_SCHEMA,
        "fano_signal": cfg.fano_signal,
        "fano_idler": cfg.fano_idler,
        "gemellity": cfg.gemellity,
        "band_center": cfg.band_center,
        "band_halfwidth": cfg.band_halfwidth,
        "band_convention": cfg.band_convention,
        "n_bands": cfg.n_bands,
        "n_samples": cfg.n_samples,
        "seed": cfg.seed,
    }


def document_to_condprep_config(doc: dict) -> CondPrepConfig:
    if doc.get("schema_version") != CONDPREP_SCHEMA:
        raise FormatError(
            f"unsupported schema_version {doc.get('schema_version')!r}, "
            f"expected {CONDPREP_SCHEMA!r}"
        )
    required = (
        "fano_signal",
        "fano_idler",
        "gemellity",
        "band_halfwidth",
        "n_samples",
        "seed",
    )
    missing = [k for k in required if k not in doc]
    if missing:
        raise FormatError(f"missing condprep fields: {', '.join(missing)}")
    try:
        return CondPrepConfig(
            fano_signal=float(doc["fano_signal"]),
            fano_idler=float(doc["fano_idler"]),
            gemellity=float(doc["gemellity"]),
            band_halfwidth=float(doc["band_halfwidth"]),
            n_samples=int(doc["n_samples"]),
            seed=int(doc["seed"]),
            band_center=float(doc.get("band_center", 0.0)),
            n_bands=int(doc.get("n_bands", 1)),
            band_convention=str(doc.get("band_convention", "half_width")),
        )
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad condprep field: {exc}") from exc


def condprep_result_to_document(result: CondPrepResult, cfg: CondPrepConfig) -> dict:
    return {
        "schema_version": "cvopo.condprep_result.v1",
        "tool_version": __version__,
        "config": condprep_config_to_document(cfg),
        "fano_conditioned": _nan_to_none(result.fano_conditioned),
        "fano_stderr": _nan_to_none(result.fano_stderr),
        "success_rate": result.success_rate,
        "n_selected": result.n_selected,
        "n_samples": result.n_samples,
        "empty_selection": result.empty_selection,
        "per_band": [
            {
                "center": b.center,
                "halfwidth": b.halfwidth,
                "count": b.count,
                "success_rate": b.success_rate,
                "fano": _nan_to_none(b.fano),
                "fano_stderr": _nan_to_none(b.fano_stderr),
            }
            for b in result.per_band
        ],
    }


def _nan_to_none(value: float):
    if value != value:  # NaN
        return None
    return value
