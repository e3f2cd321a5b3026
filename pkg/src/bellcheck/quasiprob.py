"""Quasi-probability analysis of three jointly unmeasurable observables.

For two Alice settings alpha, alpha' and one Bob setting beta, the
three-index quantity

    F[j, k, l] = <psi | x_j, a; y_l, b> <x_j, a | x_k, a'> <x_k, a'; y_l, b | psi>

sums to one and returns both measured pair tables as marginals, exactly
as a joint distribution of (X, X', Y) would -- but some of its cells go
negative, which is how quantum mechanics vetoes the joint distribution.
This module computes F, its marginal identities, the two-index setting
overlap table, and scans angle grids for negative cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .born import OUTCOME_VALUES, joint_pmf
from .errors import InternalCheckError
from .polarization import basis_matrix, singlet_state, x_operator, y_operator

_IMAG_TOL = 1e-12

# Fixed probe angles for the "beta drops out" consistency check.
_BETA_PROBES = np.random.default_rng(1278).uniform(0.0, np.pi, 10)


@dataclass(frozen=True, eq=False)
class QuasiPmf3:
    """Quasi-probability table over (j, k, l); cells may be negative."""

    values: np.ndarray
    alpha: float
    alpha_prime: float
    beta: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (2, 2, 2):
            raise ValueError(f"expected shape (2, 2, 2), got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        if abs(v.sum() - 1.0) > 1e-12:
            raise ValueError(f"values sum to {v.sum()}, not 1")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True, eq=False)
class QuasiPmf2:
    """Setting-overlap table over (j, k); both marginals are uniform."""

    values: np.ndarray
    alpha: float
    alpha_prime: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (2, 2):
            raise ValueError(f"expected shape (2, 2), got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        if abs(v.sum() - 1.0) > 1e-12:
            raise ValueError(f"values sum to {v.sum()}, not 1")
        for sums in (v.sum(axis=0), v.sum(axis=1)):
            if np.max(np.abs(sums - 0.5)) > 1e-12:
                raise ValueError("marginals must each equal 1/2")
        object.__setattr__(self, "values", v)


def _pair_amplitudes(alpha: float, beta: float) -> np.ndarray:
    """amps[j, l] = <x_j, alpha; y_l, beta | psi> for the singlet."""
    psi_block = singlet_state().reshape(2, 2)
    return basis_matrix(alpha).conj() @ psi_block @ basis_matrix(beta).conj().T


def q_value(alpha: float, alpha_prime: float, beta: float) -> float:
    """<psi| [X(a) + X(a')] Y(b) |psi>, checked against the two-table sum.

    The operator sandwich and the sum of the two sign-weighted pair
    tables must agree to 1e-12; they are two routes to the same number.
    """
    psi = singlet_state()
    op = (x_operator(alpha) + x_operator(alpha_prime)) @ y_operator(beta)
    sandwich = float(np.real(psi.conj() @ op @ psi))

    signs = np.outer(OUTCOME_VALUES, OUTCOME_VALUES)
    from_tables = float(
        np.sum(signs * joint_pmf(psi, alpha, beta).p)
        + np.sum(signs * joint_pmf(psi, alpha_prime, beta).p)
    )
    if abs(sandwich - from_tables) > 1e-12:
        raise InternalCheckError(f"operator route {sandwich} != pair-table route {from_tables}")
    return sandwich


def f_jkl(alpha: float, alpha_prime: float, beta: float) -> QuasiPmf3:
    """The eight-cell quasi-probability table at the given angles.

    Each cell is a product of three complex brackets; with the real
    singlet and real rotated bases the product is exactly real, and the
    imaginary residue is asserted below 1e-12 to catch ordering bugs.
    """
    amps = _pair_amplitudes(alpha, beta)
    amps_prime = _pair_amplitudes(alpha_prime, beta)
    overlap = basis_matrix(alpha).conj() @ basis_matrix(alpha_prime).T
    table = np.einsum("jl,jk,kl->jkl", amps.conj(), overlap, amps_prime)
    worst_imag = float(np.max(np.abs(table.imag)))
    if worst_imag > _IMAG_TOL:
        raise InternalCheckError(f"quasi-probability cells have imaginary part {worst_imag}")
    return QuasiPmf3(table.real, alpha, alpha_prime, beta)


def q_reconstruct(alpha: float, alpha_prime: float, beta: float) -> float:
    """Rebuild the three-observable value from the quasi-probability table.

    sum over (j, k, l) of (x_j + x_k) y_l F[j, k, l]; agrees with
    :func:`q_value` identically.
    """
    table = f_jkl(alpha, alpha_prime, beta).values
    v = OUTCOME_VALUES
    weights = (v[:, None] + v[None, :])[:, :, None] * v[None, None, :]
    return float(np.sum(weights * table))


def f_jk(alpha: float, alpha_prime: float) -> QuasiPmf2:
    """Sum the quasi-probability table over Bob's outcome.

    Bob's angle drops out of the result; this is verified numerically
    over ten fixed probe angles, and a residual dependence means the
    construction is broken.  The surviving table equals half the squared
    overlap of the two Alice bases, so every cell here is non-negative.
    """
    reference = f_jkl(alpha, alpha_prime, _BETA_PROBES[0]).values.sum(axis=2)
    for beta in _BETA_PROBES[1:]:
        other = f_jkl(alpha, alpha_prime, beta).values.sum(axis=2)
        spread = float(np.max(np.abs(other - reference)))
        if spread > _IMAG_TOL:
            raise InternalCheckError(f"summed table varies with Bob's angle by {spread}")
    return QuasiPmf2(reference, alpha, alpha_prime)


@dataclass(frozen=True)
class NegativityWitness:
    """One negative cell found on a grid scan; indices are 1-based."""

    alpha: float
    alpha_prime: float
    beta: float
    j: int
    k: int
    l: int
    value: float


def find_negativity(grid_step: float, threshold: float = -1e-12) -> list[NegativityWitness]:
    """Scan an angle grid for negative quasi-probability cells.

    All three angles run over [0, pi) in steps of ``grid_step`` radians.
    Returns every cell below ``threshold``, sorted by value ascending
    with ties broken lexicographically by (alpha, alpha', beta, j, k, l).
    Any grid with step <= 15 degrees contains negative cells.
    """
    if grid_step <= 0.0:
        raise ValueError("grid_step must be positive")
    grid = np.arange(0.0, np.pi, grid_step)
    witnesses = []
    for alpha in grid:
        for alpha_prime in grid:
            for beta in grid:
                table = f_jkl(alpha, alpha_prime, beta).values
                for j, k, l in np.argwhere(table < threshold):
                    witnesses.append(
                        NegativityWitness(
                            alpha, alpha_prime, beta,
                            int(j) + 1, int(k) + 1, int(l) + 1,
                            float(table[j, k, l]),
                        )
                    )
    witnesses.sort(key=lambda w: (w.value, w.alpha, w.alpha_prime, w.beta, w.j, w.k, w.l))
    return witnesses
