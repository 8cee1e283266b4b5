#!/usr/bin/env python3
"""Print every reference value the acceptance suite checks, from the library.

Usage: python scripts/reproduce_headline_numbers.py
"""

import numpy as np

from cvopo import (
    OpoParams,
    below_threshold_covariance,
    classify,
    conditional_variance_from_gemellity,
    db_to_variance,
    eof,
    log_negativity,
    max_log_negativity,
    optimize_nonlocal_phase,
    separability,
    symmetric_covariance,
    twin_difference_spectrum,
    variance_to_db,
)
from cvopo.condprep import run_conditional_prep
from cvopo.fixtures import CONDPREP_REFERENCE, fixture_document
from cvopo.formats import document_to_matrix


def main() -> None:
    print("== twin beams ==")
    floor = twin_difference_spectrum(0.0, 0.893)
    print(f"intensity-difference floor: {floor:.4f} ({variance_to_db(floor):+.2f} dB)")
    print(f"gemellity at -9.7 dB: {db_to_variance(-9.7):.4f}")

    print("\n== conditional preparation (F=110, G=0.18, band 0.1 sigma_0) ==")
    result = run_conditional_prep(CONDPREP_REFERENCE)
    print(
        f"conditioned Fano: {result.fano_conditioned:.4f} "
        f"+- {result.fano_stderr:.4f}, success rate {result.success_rate * 100:.3f}%"
    )

    print("\n== entanglement below threshold (measured -4.7 / -4.9 dB, F=6.6) ==")
    v1, v2 = db_to_variance(-4.7), db_to_variance(-4.9)
    state = symmetric_covariance(6.6, v1, v2)
    report = classify(state)
    print(f"separability I = {report.separability:.4f}")
    print(f"entanglement of formation = {report.eof_ebits:.4f} ebits")
    print(f"EPR product = {report.epr_product:.4f}")
    print(f"per-quadrature conditional variances: "
          f"{conditional_variance_from_gemellity(6.6, v1):.4f}, "
          f"{conditional_variance_from_gemellity(6.6, v2):.4f}")

    print("\n== ideal OPO at sigma=0.9, Omega=0 ==")
    ideal = below_threshold_covariance(OpoParams(sigma=0.9))
    print(f"antisqueezed / squeezed variances: "
          f"{ideal.entries[0, 0]:.6g}, {ideal.entries[1, 1]:.6g}")
    print(f"separability = {separability(ideal):.6g}")

    print("\n== self-phase-locked reference state ==")
    gamma, _ = document_to_matrix(fixture_document("fig_matrix_a1a2.json"))
    outcome = optimize_nonlocal_phase(gamma)
    print(f"E_N before the non-local phase shift: {outcome.e_n_before:.4f}")
    print(f"E_N after:                            {outcome.e_n_after:.4f}")
    print(f"passive bound E_N^max:                {outcome.e_n_max:.4f}")
    print(f"optimal A- phase: {outcome.best_phase:.6f} rad "
          f"({np.degrees(outcome.best_phase):.2f} deg)")
    assert abs(log_negativity(gamma)[0] - outcome.e_n_before) < 1e-12
    assert abs(max_log_negativity(gamma) - outcome.e_n_max) < 1e-12


if __name__ == "__main__":
    main()
