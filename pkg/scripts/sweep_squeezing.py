#!/usr/bin/env python3
"""Write plot-ready sweep CSVs: pump-ratio sweep, frequency sweep, and the
twin-beam toy spectrum.

Usage: python scripts/sweep_squeezing.py [out_dir]
"""

import csv
import sys
from pathlib import Path

import numpy as np

from cvopo import (
    OpoParams,
    below_threshold_covariance,
    eof,
    log_negativity,
    separability,
    twin_difference_spectrum,
    variance_to_db,
)


def sweep_rows(sigmas, omegas, eta):
    for sigma in sigmas:
        for omega in omegas:
            state = below_threshold_covariance(OpoParams(sigma=sigma, omega=omega, eta=eta))
            v_anti, v_sq = state.entries[0, 0], state.entries[1, 1]
            sep = separability(state)
            yield [
                sigma,
                omega,
                v_sq,
                v_anti,
                variance_to_db(v_sq),
                sep,
                eof(sep),
                log_negativity(state)[0],
            ]


def write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([repr(float(v)) for v in row] for row in rows)
    print(f"wrote {path}")


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("sweeps")
    out.mkdir(parents=True, exist_ok=True)
    header = ["sigma", "omega", "v_sq", "v_anti", "v_sq_db", "separability",
              "eof_ebits", "log_negativity"]

    write_csv(
        out / "pump_sweep.csv",
        header,
        sweep_rows(np.linspace(0.05, 0.98, 60), [0.0], eta=0.9),
    )
    write_csv(
        out / "frequency_sweep.csv",
        header,
        sweep_rows([0.9], np.linspace(0.0, 5.0, 80), eta=0.9),
    )
    write_csv(
        out / "twin_spectrum.csv",
        ["omega", "noise_power", "noise_power_db"],
        (
            [w, twin_difference_spectrum(w, 0.893), variance_to_db(twin_difference_spectrum(w, 0.893))]
            for w in np.linspace(0.0, 5.0, 120)
        ),
    )


if __name__ == "__main__":
    main()
