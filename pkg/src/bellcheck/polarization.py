"""Polarizer bases, dichotomic observables and the two-photon singlet.

Angles are plain floats in radians throughout the library; a linear
polarizer setting has period pi.  The four-dimensional pair space uses
the ordered product basis {|e1 e1>, |e1 e2>, |e2 e1>, |e2 e2>} with
Alice's index varying slowest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import kron

ANGLE_EQUALITY_TOL = 1e-12


def reduce_mod_pi(angle: float) -> float:
    """Canonical representative of a polarizer setting in [0, pi)."""
    if not math.isfinite(angle):
        raise ValueError("angle must be finite")
    return angle % math.pi


def same_setting(a: float, b: float, tol: float = ANGLE_EQUALITY_TOL) -> bool:
    """True when two angles describe the same polarizer setting mod pi."""
    d = abs(reduce_mod_pi(a) - reduce_mod_pi(b))
    return min(d, math.pi - d) <= tol


@dataclass(frozen=True)
class AngleConfig:
    """The four polarizer settings (alpha1, alpha2, beta1, beta2), radians.

    Alice's two settings must differ mod pi, and likewise Bob's; a CHSH
    combination with coincident settings on one side is degenerate.
    """

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    def __post_init__(self) -> None:
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if same_setting(self.alpha1, self.alpha2):
            raise ValueError("alpha1 and alpha2 coincide mod pi")
        if same_setting(self.beta1, self.beta2):
            raise ValueError("beta1 and beta2 coincide mod pi")

    @classmethod
    def from_degrees(cls, alpha1: float, alpha2: float, beta1: float, beta2: float) -> "AngleConfig":
        return cls(*(math.radians(v) for v in (alpha1, alpha2, beta1, beta2)))

    def experiment_angles(self) -> tuple[tuple[float, float], ...]:
        """Angle pair (Alice, Bob) for each of the four experiments E1..E4."""
        return (
            (self.alpha1, self.beta1),
            (self.alpha1, self.beta2),
            (self.alpha2, self.beta1),
            (self.alpha2, self.beta2),
        )


def singlet_state() -> np.ndarray:
    """The polarization singlet (|e1 e2> - |e2 e1>) / sqrt(2)."""
    return np.array([0.0, 1.0, -1.0, 0.0], dtype=np.complex128) / np.sqrt(2.0)


def basis_matrix(phi: float) -> np.ndarray:
    """2x2 matrix whose rows are the rotated polarizer eigenvectors.

    Row 0 is the +1 port direction (cos phi, sin phi), row 1 the
    orthogonal -1 port direction (-sin phi, cos phi).
    """
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def rotated_basis(phi: float) -> tuple[np.ndarray, np.ndarray]:
    """The orthonormal eigenvector pair of the polarizer at angle phi."""
    b = basis_matrix(phi)
    return b[0].copy(), b[1].copy()


def z_operator(phi: float) -> np.ndarray:
    """Dichotomic polarizer observable at angle phi, built spectrally.

    Returns sum_k z_k |z_k><z_k| with z_1 = +1 on the transmitted port
    and z_2 = -1 on the orthogonal port; Hermitian and involutory.
    """
    plus, minus = rotated_basis(phi)
    return np.outer(plus, plus.conj()) - np.outer(minus, minus.conj())


def x_operator(alpha: float) -> np.ndarray:
    """Alice's polarizer observable embedded in the pair space."""
    return kron(z_operator(alpha), np.eye(2, dtype=np.complex128))


def y_operator(beta: float) -> np.ndarray:
    """Bob's polarizer observable embedded in the pair space."""
    return kron(np.eye(2, dtype=np.complex128), z_operator(beta))
