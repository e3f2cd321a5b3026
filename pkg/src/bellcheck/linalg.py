"""Dense complex linear algebra for small Hilbert spaces.

Everything here works on plain ``numpy`` arrays with dtype complex128.
Vectors are 1-d arrays, operators are 2-d arrays.  The dimensions that
actually occur in this package are 2, 4 and 256; the eigensolver is a
cyclic Jacobi iteration intended for the 4x4 operators it is used on.
"""

from __future__ import annotations

import numpy as np

MAX_KRON_DIM = 65_536


def as_operator(a: np.ndarray) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix contains NaN or infinite entries")
    return m


def as_state(v: np.ndarray) -> np.ndarray:
    """Coerce to a 1-d complex128 array, rejecting non-finite entries."""
    s = np.asarray(v, dtype=np.complex128)
    if s.ndim != 1:
        raise ValueError(f"expected a vector, got ndim={s.ndim}")
    if not (np.all(np.isfinite(s.real)) and np.all(np.isfinite(s.imag))):
        raise ValueError("vector contains NaN or infinite entries")
    return s


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with an output-dimension guard.

    The guard rejects results with more than 65 536 rows or columns;
    nothing in this package legitimately needs more, so exceeding it
    signals a misuse (e.g. an unbounded kron loop).
    """
    a = as_operator(a)
    b = as_operator(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_KRON_DIM or cols > MAX_KRON_DIM:
        raise ValueError(f"kron result {rows}x{cols} exceeds the {MAX_KRON_DIM} dimension guard")
    return np.kron(a, b)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return as_operator(a).conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[a, b] = a b - b a for square matrices of equal dimension."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError(f"commutator needs equal square matrices, got {a.shape} and {b.shape}")
    return a @ b - b @ a


def hermiticity_defect(a: np.ndarray) -> float:
    """Largest entrywise deviation of ``a`` from its own adjoint."""
    a = as_operator(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(as_operator(a)))


def _jacobi_rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """2x2 unitary diagonalizing [[app, apq], [conj(apq), aqq]].

    Returns [[c, s*phase], [-s*conj(phase), c]] with phase = apq/|apq|;
    the tangent is chosen with the classic stable formula so the rotation
    angle stays within +-45 degrees.
    """
    phase = apq / abs(apq)
    theta = (aqq - app) / (2.0 * abs(apq))
    if theta >= 0.0:
        t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
    else:
        t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    return np.array([[c, s * phase], [-s * np.conj(phase), c]], dtype=np.complex128)


def eig_hermitian(a: np.ndarray, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    a : square matrix, Hermitian within ``tol`` (entrywise).
    tol : hermiticity admission tolerance; orthonormality and residual of
        the returned decomposition are good to well below ``10 * tol``.

    Returns
    -------
    (eigenvalues, eigenvectors) with eigenvalues real and sorted in
    descending order, eigenvectors as the matching orthonormal columns.

    Raises
    ------
    ValueError for non-square or non-Hermitian input, RuntimeError if the
    off-diagonal norm has not fallen below 1e-13 after 100 sweeps.
    """
    a = as_operator(a)
    n = a.shape[0]
    if n != a.shape[1]:
        raise ValueError(f"eig_hermitian needs a square matrix, got {a.shape}")
    if hermiticity_defect(a) > tol:
        raise ValueError(f"matrix is not Hermitian within tol={tol}")

    work = (a + a.conj().T) / 2.0
    vecs = np.eye(n, dtype=np.complex128)
    off_target = 1e-13

    def off_norm(m: np.ndarray) -> float:
        o = m - np.diag(np.diag(m))
        return float(np.linalg.norm(o))

    converged = off_norm(work) <= off_target
    for _ in range(100):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(work[p, q]) < 1e-300:
                    continue
                rot = _jacobi_rotation(work[p, p].real, work[q, q].real, work[p, q])
                full = np.eye(n, dtype=np.complex128)
                full[np.ix_([p, q], [p, q])] = rot
                work = full.conj().T @ work @ full
                vecs = vecs @ full
        converged = off_norm(work) <= off_target
    if not converged:
        raise RuntimeError("Jacobi iteration did not converge within 100 sweeps")

    vals = np.diag(work).real.copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]
