"""Bundled reference states and configs, byte-stable across releases.

``fig_matrix_apm.json`` is the published covariance table of a
self-phase-locked OPO below threshold (sigma = 0.9, Omega = 0, plate angle
1.3 degrees) in the +-45 degree basis; ``fig_matrix_a1a2.json`` is the exact
basis change of that table into the signal/idler basis.  The ``_optimized``
variants are the same state after the A- phase shift that aligns the two
squeezing ellipses on orthogonal quadratures.
"""

from __future__ import annotations

from pathlib import Path

from .condprep import CondPrepConfig
from .formats import (
    MATRIX_SCHEMA,
    ORDERING,
    condprep_config_to_document,
    dumps_canonical,
)

__all__ = ["fixture_document", "fixture_names", "write_fixtures"]


def _matrix_doc(entries, basis: str, metadata: dict) -> dict:
    return {
        "schema_version": MATRIX_SCHEMA,
        "basis": basis,
        "ordering": ORDERING,
        "entries": entries,
        "metadata": metadata,
    }


_APM_ENTRIES = [
    [361.0, 0.0, 0.0, 0.0],
    [0.0, 0.00277, 0.0, 0.0],
    [0.0, 0.0, 1.383, -0.256],
    [0.0, 0.0, -0.256, 0.770],
]

# Exact 50/50 basis change of _APM_ENTRIES; the A- tilt -0.256 splits into
# +-0.128 X-P cross terms between the signal and idler modes.
_A1A2_ENTRIES = [
    [181.1915, -0.128, 179.8085, 0.128],
    [-0.128, 0.386385, 0.128, -0.383615],
    [179.8085, 0.128, 181.1915, -0.128],
    [0.128, -0.383615, -0.128, 0.386385],
]

_APM_OPT_ENTRIES = [
    [361.0, 0.0, 0.0, 0.0],
    [0.0, 0.00277, 0.0, 0.0],
    [0.0, 0.0, 0.677, 0.0],
    [0.0, 0.0, 0.0, 1.476],
]

_A1A2_OPT_ENTRIES = [
    [180.8385, 0.0, 180.1615, 0.0],
    [0.0, 0.739385, 0.0, -0.736615],
    [180.1615, 0.0, 180.8385, 0.0],
    [0.0, -0.736615, 0.0, 0.739385],
]

_VACUUM_ENTRIES = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
]

_COUPLED_META = {"sigma": 0.9, "omega": 0.0, "plate_angle_deg": 1.3}

#: Reference conditional-preparation run: 20 dB beams with gemellity 0.18,
#: selection band of half-width 0.1 sigma_0 around the mean.
CONDPREP_REFERENCE = CondPrepConfig(
    fano_signal=110.0,
    fano_idler=110.0,
    gemellity=0.18,
    band_halfwidth=0.1,
    n_samples=200_000,
    seed=12345,
)


def _fixture_documents() -> dict[str, dict]:
    return {
        "fig_matrix_apm.json": _matrix_doc(
            _APM_ENTRIES,
            "plus_minus",
            {
                "description": "self-phase-locked OPO below threshold, +-45 degree modes",
                **_COUPLED_META,
            },
        ),
        "fig_matrix_a1a2.json": _matrix_doc(
            _A1A2_ENTRIES,
            "signal_idler",
            {
                "description": (
                    "same state as fig_matrix_apm.json, exact change to the "
                    "signal/idler basis"
                ),
                **_COUPLED_META,
            },
        ),
        "fig_matrix_apm_optimized.json": _matrix_doc(
            _APM_OPT_ENTRIES,
            "plus_minus",
            {
                "description": (
                    "fig_matrix_apm.json after the A- phase shift aligning the "
                    "squeezing ellipses"
                ),
                **_COUPLED_META,
            },
        ),
        "fig_matrix_a1a2_optimized.json": _matrix_doc(
            _A1A2_OPT_ENTRIES,
            "signal_idler",
            {
                "description": (
                    "same state as fig_matrix_apm_optimized.json in the "
                    "signal/idler basis"
                ),
                **_COUPLED_META,
            },
        ),
        "vacuum.json": _matrix_doc(
            _VACUUM_ENTRIES, "signal_idler", {"description": "two independent vacua"}
        ),
        "condprep_reference.json": condprep_config_to_document(CONDPREP_REFERENCE),
    }


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(_fixture_documents()))


def fixture_document(name: str) -> dict:
    docs = _fixture_documents()
    if name not in docs:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(sorted(docs))}")
    return docs[name]


def write_fixtures(directory) -> list[Path]:
    """Write every fixture into ``directory``; returns the paths written."""
    base = Path(directory)
    base.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, doc in sorted(_fixture_documents().items()):
        path = base / name
        path.write_text(dumps_canonical(doc), encoding="utf-8")
        paths.append(path)
    return paths
