"""Born-rule probability tables and correlation functions.

Outcome indexing convention, used by every module in the package:
index 0 of a probability table is the +1 outcome, index 1 is the -1
outcome.  For a pair table ``p``, ``p[k, l]`` is the probability that
Alice sees value (+1, -1)[k] and Bob sees value (+1, -1)[l].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polarization import AngleConfig, basis_matrix, singlet_state

OUTCOME_VALUES = np.array([1.0, -1.0])

# Entries in [-CLAMP_TOL, 0) are rounding noise and get clamped to zero;
# anything below -CLAMP_TOL is a genuine bug in the caller.
CLAMP_TOL = 1e-12


def _clamp_probabilities(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("probabilities must be finite")
    if p.min() < -CLAMP_TOL:
        raise ValueError(f"probability {p.min()} below -{CLAMP_TOL}; not representable as rounding noise")
    if p.min() < 0.0:
        p = np.maximum(p, 0.0)
        p = p / p.sum()
    return p


@dataclass(frozen=True)
class Pmf2:
    """Probability mass function of a +-1 valued variable."""

    p_plus: float
    p_minus: float

    def __post_init__(self) -> None:
        for v in (self.p_plus, self.p_minus):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"probability {v} outside [0, 1]")
        if abs(self.p_plus + self.p_minus - 1.0) > 1e-12:
            raise ValueError("probabilities do not sum to 1")

    @property
    def expectation(self) -> float:
        return self.p_plus - self.p_minus


@dataclass(frozen=True, eq=False)
class JointPmf2x2:
    """2x2 outcome table for one pair experiment; p[k, l] as in the module note."""

    p: np.ndarray

    def __post_init__(self) -> None:
        p = _clamp_probabilities(self.p)
        if p.shape != (2, 2):
            raise ValueError(f"expected a 2x2 table, got shape {p.shape}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"table sums to {p.sum()}, not 1")
        object.__setattr__(self, "p", p)

    def x_marginal(self) -> Pmf2:
        row = self.p.sum(axis=1)
        return Pmf2(float(row[0]), float(row[1]))

    def y_marginal(self) -> Pmf2:
        col = self.p.sum(axis=0)
        return Pmf2(float(col[0]), float(col[1]))

    def product_expectation(self) -> float:
        """E[xy] under this table."""
        signs = np.outer(OUTCOME_VALUES, OUTCOME_VALUES)
        return float(np.sum(signs * self.p))


def _require_unit(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=np.complex128)
    if abs(np.linalg.norm(state) - 1.0) > 1e-10:
        raise ValueError("state vector is not unit norm")
    return state


def pmf_single(state: np.ndarray, observable: np.ndarray) -> Pmf2:
    """Outcome distribution of a +-1 valued observable in a pure state.

    The observable must be Hermitian and involutory (square = identity),
    so that (I + O)/2 and (I - O)/2 are the spectral projectors.
    """
    state = _require_unit(state)
    obs = np.asarray(observable, dtype=np.complex128)
    dim = state.shape[0]
    if obs.shape != (dim, dim):
        raise ValueError(f"observable shape {obs.shape} does not match state dimension {dim}")
    if np.max(np.abs(obs - obs.conj().T)) > 1e-10:
        raise ValueError("observable is not Hermitian")
    if np.max(np.abs(obs @ obs - np.eye(dim))) > 1e-10:
        raise ValueError("observable is not involutory; spectrum must be {+1, -1}")
    plus_proj = (np.eye(dim) + obs) / 2.0
    p_plus = float(np.real(state.conj() @ plus_proj @ state))
    p = _clamp_probabilities(np.array([p_plus, 1.0 - p_plus]))
    return Pmf2(float(p[0]), float(p[1]))


def _pair_probabilities(state: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """Raw 2x2 Born-rule table |<x_k, alpha; y_l, beta | state>|^2."""
    amps = basis_matrix(alpha).conj() @ state.reshape(2, 2) @ basis_matrix(beta).conj().T
    return np.abs(amps) ** 2


def joint_pmf(state: np.ndarray, alpha: float, beta: float) -> JointPmf2x2:
    """Joint distribution of Alice's and Bob's polarizer outcomes."""
    state = _require_unit(state)
    return JointPmf2x2(_pair_probabilities(state, alpha, beta))


def correlation(alpha: float, beta: float) -> float:
    """Singlet pair correlation E[xy]; analytically -cos 2(alpha - beta)."""
    p = _pair_probabilities(singlet_state(), alpha, beta)
    return float(p[0, 0] - p[0, 1] - p[1, 0] + p[1, 1])


def chsh_expectation(cfg: AngleConfig) -> float:
    """CHSH combination of the four singlet correlations.

    C(a1,b1) + C(a1,b2) + C(a2,b1) - C(a2,b2); bounded by 2*sqrt(2) in
    magnitude over all configurations.
    """
    return (
        correlation(cfg.alpha1, cfg.beta1)
        + correlation(cfg.alpha1, cfg.beta2)
        + correlation(cfg.alpha2, cfg.beta1)
        - correlation(cfg.alpha2, cfg.beta2)
    )
