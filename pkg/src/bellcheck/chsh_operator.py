"""The single-pair CHSH operator, its spectrum and outcome statistics.

The Hermitian combination

    X(a1) Y(b1) + X(a1) Y(b2) + X(a2) Y(b1) - X(a2) Y(b2)

is a legitimate single-pair observable even though its four summands are
not jointly measurable.  Its spectrum is {+t0, -t0, +t1, -t1} with

    t0 = 2 sqrt(1 - sin 2(a1 - a2) * sin 2(b1 - b2)),

and in the singlet state all outcome weight sits on the +-t0 atoms:
the measured value is +t0 with probability (1 + E/t0)/2 and -t0
otherwise, where E is the CHSH expectation.  At the optimal angles
t0 = 2 sqrt(2) and the outcome is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .born import chsh_expectation
from .errors import InternalCheckError
from .linalg import eig_hermitian, hermiticity_defect
from .polarization import AngleConfig, singlet_state, x_operator, y_operator
from .realworld import EstimatorResult, stream_uniforms

# Stream id for outcome sampling; experiment streams use ids 1..4.
_SAMPLER_STREAM = 0

# Below this, t0 is treated as exactly zero: both atoms collapse onto the
# origin and the outcome is deterministically 0.
_T0_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class ChshSpectrum:
    """Spectral data of the CHSH operator at one configuration.

    ``t0`` is the magnitude of the two outcome atoms (closed form),
    ``t1`` the magnitude of the remaining eigenvalue pair, which carries
    no weight in the singlet.  ``w_plus``/``w_minus`` are the outcome
    probabilities of +t0 and -t0.  ``eigenvalues`` holds the numeric
    spectrum in descending order.
    """

    t0: float
    t1: float
    w_plus: float
    w_minus: float
    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        if abs(self.w_plus + self.w_minus - 1.0) > 1e-12:
            raise ValueError("outcome weights must sum to 1")
        if not (-1e-12 <= self.w_plus <= 1.0 + 1e-12):
            raise ValueError(f"w_plus = {self.w_plus} outside [0, 1]")


def chsh_operator(cfg: AngleConfig) -> np.ndarray:
    """The 4x4 CHSH operator at the given angles."""
    op = (
        x_operator(cfg.alpha1) @ y_operator(cfg.beta1)
        + x_operator(cfg.alpha1) @ y_operator(cfg.beta2)
        + x_operator(cfg.alpha2) @ y_operator(cfg.beta1)
        - x_operator(cfg.alpha2) @ y_operator(cfg.beta2)
    )
    defect = hermiticity_defect(op)
    if defect > 1e-13:
        raise InternalCheckError(f"CHSH operator hermiticity defect {defect}")
    return op


def atom_magnitude(cfg: AngleConfig) -> float:
    """Closed form t0 = 2 sqrt(1 - sin 2(a1-a2) sin 2(b1-b2))."""
    product = math.sin(2.0 * (cfg.alpha1 - cfg.alpha2)) * math.sin(2.0 * (cfg.beta1 - cfg.beta2))
    return 2.0 * math.sqrt(max(1.0 - product, 0.0))


def closed_form_expectation(cfg: AngleConfig) -> float:
    """Four-cosine closed form of the CHSH expectation in the singlet."""
    return (
        -math.cos(2.0 * (cfg.alpha1 - cfg.beta1))
        - math.cos(2.0 * (cfg.alpha1 - cfg.beta2))
        - math.cos(2.0 * (cfg.alpha2 - cfg.beta1))
        + math.cos(2.0 * (cfg.alpha2 - cfg.beta2))
    )


def chsh_spectrum(cfg: AngleConfig) -> ChshSpectrum:
    """Spectrum and singlet outcome weights of the CHSH operator.

    The closed-form t0 is cross-checked against the Jacobi eigensolver
    (to 1e-9), and the singlet's Born weight is verified to sit entirely
    on the +-t0 eigenspaces.  Disagreement raises InternalCheckError.
    """
    evals, evecs = eig_hermitian(chsh_operator(cfg), tol=1e-10)
    t0 = atom_magnitude(cfg)
    expectation = closed_form_expectation(cfg)

    # Group eigenvalues into the +-t0 pair and the +-t1 pair by magnitude.
    distance = np.abs(np.abs(evals) - t0)
    order = np.argsort(distance, kind="stable")
    atom_idx, dark_idx = order[:2], order[2:]
    worst_atom = float(distance[atom_idx].max())
    if worst_atom > 1e-9:
        raise InternalCheckError(f"numeric spectrum misses the closed-form t0 by {worst_atom}")
    t1 = float(np.mean(np.abs(evals[dark_idx])))

    psi = singlet_state()
    overlaps = np.abs(evecs.conj().T @ psi) ** 2
    degenerate = abs(t0 - t1) <= 1e-9
    if not degenerate:
        dark_weight = float(overlaps[dark_idx].sum())
        if dark_weight > 1e-12:
            raise InternalCheckError(f"singlet carries weight {dark_weight} outside the outcome atoms")

    if t0 < _T0_FLOOR:
        if abs(expectation) > t0 + 1e-9:
            raise InternalCheckError("expectation magnitude exceeds a vanishing t0")
        w_plus = 0.5
    else:
        if abs(expectation) > t0 + 1e-9:
            raise InternalCheckError(f"|E| = {abs(expectation)} exceeds t0 = {t0}")
        w_plus = min(max((1.0 + expectation / t0) / 2.0, 0.0), 1.0)
        # Independent check of the weight through the +t0 eigenspace
        # projector, which stays well-defined even when t0 = t1.
        plus_space = np.abs(evals - t0) <= 1e-8
        w_plus_projector = float(overlaps[plus_space].sum())
        if abs(w_plus_projector - w_plus) > 1e-9:
            raise InternalCheckError(
                f"projector weight {w_plus_projector} disagrees with closed form {w_plus}"
            )
    return ChshSpectrum(t0, t1, w_plus, 1.0 - w_plus, evals.copy())


def sample_outcomes(cfg: AngleConfig, n: int, seed: int) -> EstimatorResult:
    """Draw n single-shot CHSH outcomes (+-t0) and estimate their mean.

    Uses the same counter-indexed stream layout as the experiment
    samplers, so results are reproducible for a fixed seed regardless of
    sharding.  The mean converges on the CHSH expectation.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    spectrum = chsh_spectrum(cfg)
    if spectrum.t0 < _T0_FLOOR:
        return EstimatorResult(0.0, 0.0, n)
    u = stream_uniforms(seed, _SAMPLER_STREAM, n)
    # Outcomes take only the two values +-t0, so counts give the exact
    # sample moments: v^2 = t0^2 identically.
    k_plus = int(np.count_nonzero(u < spectrum.w_plus))
    mean = spectrum.t0 * ((2 * k_plus - n) / n)
    if n < 2:
        return EstimatorResult(mean, 0.0, n)
    var = max(spectrum.t0**2 - mean * mean, 0.0) * n / (n - 1)
    return EstimatorResult(mean, math.sqrt(var / n), n)
