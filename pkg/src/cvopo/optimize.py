"""Entanglement extraction by passive polarization operations.

The tool here is the "non-local" phase shift: a quadrature rotation of the
A- superposition mode relative to A+.  For states whose +-45 degree form has
uncorrelated modes and a diagonal A+ block, the right phase aligns the two
squeezing ellipses on orthogonal quadratures and attains the passive bound
on the log negativity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .criteria import log_negativity, max_log_negativity
from .gaussian import (
    CovarianceMatrix,
    ModeBasis,
    PassiveTransform,
    apply_passive,
    change_basis_pm,
    composite,
    half_wave,
    phase_shift,
    quarter_wave,
    to_basis,
)

__all__ = [
    "OptimizationOutcome",
    "apply_waveplate_sequence",
    "diagonalizing_phase",
    "optimize_nonlocal_phase",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

#: The search interval: rotating A- by pi swaps the signal and idler modes,
#: which leaves the log negativity unchanged, so E_N(phi) is pi-periodic.
_PERIOD = math.pi


@dataclass(frozen=True)
class OptimizationOutcome:
    """Result of a phase-shift optimization.

    ``trace`` records every (phi, E_N) evaluation in order; the transformed
    state is returned in both mode bases.
    """

    best_phase: float
    e_n_before: float
    e_n_after: float
    e_n_max: float
    transform: PassiveTransform
    trace: tuple[tuple[float, float], ...]
    state_plus_minus: CovarianceMatrix
    state_signal_idler: CovarianceMatrix


def _phase_objective(gamma_pm: CovarianceMatrix):
    entries = gamma_pm.entries

    def evaluate(phi: float) -> float:
        c, s = math.cos(phi), math.sin(phi)
        r = np.eye(4)
        r[2:, 2:] = [[c, s], [-s, c]]
        shifted = CovarianceMatrix(entries=r @ entries @ r.T, basis=ModeBasis.PLUS_MINUS)
        return log_negativity(shifted)[0]

    return evaluate


def optimize_nonlocal_phase(
    gamma: CovarianceMatrix, grid_points: int = 721, phase_tol: float = 1e-6
) -> OptimizationOutcome:
    """Maximize E_N over a phase shift of A- relative to A+.

    Dense grid over [0, pi) followed by golden-section refinement of the
    best bracket down to ``phase_tol`` in phi.  Derivative-free on purpose:
    E_N(phi) can be flat-topped near the optimum.  Ties on the grid resolve
    to the smallest phase within 1e-9 in E_N.
    """
    pm = to_basis(gamma, ModeBasis.PLUS_MINUS)
    evaluate = _phase_objective(pm)
    trace: list[tuple[float, float]] = []

    def logged(phi: float) -> float:
        value = evaluate(phi)
        trace.append((phi, value))
        return value

    phis = np.linspace(0.0, _PERIOD, grid_points, endpoint=False)
    values = [logged(float(p)) for p in phis]
    best = max(values)
    best_idx = next(i for i, v in enumerate(values) if v >= best - 1e-9)

    # golden-section on the bracket around the grid maximum
    step = _PERIOD / grid_points
    lo = phis[best_idx] - step
    hi = phis[best_idx] + step
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = logged(x1), logged(x2)
    while hi - lo > phase_tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = logged(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = logged(x1)

    best_phase, e_n_after = max(trace, key=lambda t: t[1])
    best_phase = best_phase % _PERIOD
    # grid ties already resolved to the smallest phase; keep the grid point
    # when refinement gained nothing beyond the tie tolerance
    if abs(values[best_idx] - e_n_after) <= 1e-9:
        best_phase, e_n_after = float(phis[best_idx]), values[best_idx]

    transform = phase_shift(1, best_phase)
    after_pm = apply_passive(pm, transform)
    return OptimizationOutcome(
        best_phase=best_phase,
        e_n_before=log_negativity(pm)[0],
        e_n_after=e_n_after,
        e_n_max=max_log_negativity(pm),
        transform=transform,
        trace=tuple(trace),
        state_plus_minus=after_pm,
        state_signal_idler=change_basis_pm(after_pm),
    )


def diagonalizing_phase(gamma: CovarianceMatrix, atol: float = 1e-9) -> float:
    """Phase shift of A- that diagonalizes its block, squeezed variance first.

    Requires a +-45 degree basis matrix whose A+ block is already diagonal.
    Returns 0 for an already-diagonal A- block.
    """
    if gamma.basis is not ModeBasis.PLUS_MINUS:
        raise ValueError("diagonalizing_phase expects a plus/minus basis matrix")
    scale = max(1.0, float(np.abs(gamma.entries).max()))
    if abs(gamma.block_a[0, 1]) > atol * scale:
        raise ValueError("A+ block must be diagonal")
    block = gamma.block_b
    if abs(block[0, 1]) <= atol * scale:
        return 0.0
    w, vecs = np.linalg.eigh(block)
    u = vecs[:, 0]  # eigenvector of the squeezed (smallest) variance
    return float(math.atan2(u[1], u[0]) % _PERIOD)


def apply_waveplate_sequence(
    gamma: CovarianceMatrix, alpha_half: float, alpha_quarter: float
) -> CovarianceMatrix:
    """One half-wave then one quarter-wave plate on the physical beam.

    The plates act on the signal/idler polarization modes; the result is
    returned in the input's basis.  Both plates are orthogonal symplectics,
    so the determinant, the symplectic spectrum and the passive bound
    E_N^max are all preserved.
    """
    si = to_basis(gamma, ModeBasis.SIGNAL_IDLER)
    out = apply_passive(si, composite([half_wave(alpha_half), quarter_wave(alpha_quarter)]))
    return to_basis(out, gamma.basis)
