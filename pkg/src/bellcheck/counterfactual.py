"""The counterfactual single-pair device and Fine's feasibility criterion.

A counterfactual CHSH device would release all four dichotomic values
a1, a2, b1, b2 on every photon pair.  Its sample space has only 16
elementary outcomes, the algebraic identity
(a1 + a2) b1 + (a1 - a2) b2 = +-2 holds pointwise, and hence every
distribution over the space obeys the CHSH bound |E| <= 2.

Fine's criterion connects this to real data: a local deterministic
model for four measured pair distributions exists exactly when one
joint distribution over the 16 outcomes returns all four as marginals.
``fine_feasibility`` decides that by a small phase-1 simplex and
cross-checks the verdict against the eight CHSH sign variants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .born import JointPmf2x2, joint_pmf
from .errors import InternalCheckError
from .polarization import AngleConfig, singlet_state
from .realworld import RunRecord

_VALUES = (1, -1)  # index 0 -> +1, index 1 -> -1


@dataclass(frozen=True)
class CfOutcome:
    """Elementary outcome (k, l, m, n), one port index in {1, 2} per variable."""

    k: int
    l: int
    m: int
    n: int

    def __post_init__(self) -> None:
        for idx in (self.k, self.l, self.m, self.n):
            if idx not in (1, 2):
                raise ValueError("port indices must be 1 or 2")


def sample_space() -> list[CfOutcome]:
    """All 16 elementary outcomes, lexicographic in (k, l, m, n)."""
    return [CfOutcome(*idx) for idx in itertools.product((1, 2), repeat=4)]


def outcome_values(omega: CfOutcome) -> tuple[int, int, int, int]:
    """(a1, a2, b1, b2) carried by an elementary outcome; port 1 -> +1."""
    return (
        _VALUES[omega.k - 1],
        _VALUES[omega.l - 1],
        _VALUES[omega.m - 1],
        _VALUES[omega.n - 1],
    )


def outcome_statistic(omega: CfOutcome) -> int:
    """(a1 + a2) b1 + (a1 - a2) b2; equals +2 or -2 for every outcome."""
    a1, a2, b1, b2 = outcome_values(omega)
    return (a1 + a2) * b1 + (a1 - a2) * b2


@dataclass(frozen=True, eq=False)
class CfPmf:
    """Distribution over the 16 outcomes, stored as a (2, 2, 2, 2) array."""

    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probabilities, dtype=float)
        if p.shape != (2, 2, 2, 2):
            raise ValueError(f"expected shape (2, 2, 2, 2), got {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite")
        if p.min() < 0.0:
            raise ValueError(f"negative probability {p.min()}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {p.sum()}, not 1")
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def point_mass(cls, omega: CfOutcome) -> "CfPmf":
        p = np.zeros((2, 2, 2, 2))
        p[omega.k - 1, omega.l - 1, omega.m - 1, omega.n - 1] = 1.0
        return cls(p)

    @classmethod
    def uniform(cls) -> "CfPmf":
        return cls(np.full((2, 2, 2, 2), 1.0 / 16.0))


def _statistic_table() -> np.ndarray:
    table = np.empty((2, 2, 2, 2))
    for omega in sample_space():
        table[omega.k - 1, omega.l - 1, omega.m - 1, omega.n - 1] = outcome_statistic(omega)
    return table


_STATISTIC_TABLE = _statistic_table()


def chsh_expectation(pmf: CfPmf) -> float:
    """Expectation of the +-2 statistic; always within [-2, 2]."""
    return float(np.sum(pmf.probabilities * _STATISTIC_TABLE))


def identify_run(run: RunRecord) -> tuple[int, int, int, int] | None:
    """Collapse a four-experiment run onto the counterfactual variables.

    The identification shares one variable per polarizer setting: a1
    across the two alpha1 experiments (E1, E2), a2 across E3 and E4, b1
    across the beta1 experiments (E1, E3), b2 across E2 and E4.  Returns
    (a1, a2, b1, b2) when the run is consistent with that sharing, else
    None.  Exactly 16 of the 256 elementary runs are identifiable.
    """
    e1, e2, e3, e4 = run.outcomes
    if e1.x != e2.x or e3.x != e4.x or e1.y != e3.y or e2.y != e4.y:
        return None
    return e1.x, e3.x, e1.y, e2.y


def chsh_all_variants(c11: float, c12: float, c21: float, c22: float) -> float:
    """Largest |CHSH combination| over the eight odd-sign variants.

    Arguments are the four pair correlations E[A_i B_j] in [-1, 1].  The
    eight sign patterns with an odd number of minuses collapse to four
    absolute values; a joint distribution with these correlations exists
    only when the maximum stays at or below 2.
    """
    c = np.array([c11, c12, c21, c22], dtype=float)
    if np.any(np.abs(c) > 1.0 + 1e-12):
        raise ValueError("correlations must lie in [-1, 1]")
    total = c.sum()
    return float(np.max(np.abs(total - 2.0 * c)))


@dataclass(frozen=True, eq=False)
class PairMarginals:
    """The four measured pair tables (A1B1), (A1B2), (A2B1), (A2B2).

    Single-variable marginals must agree across the tables that share a
    variable (to 1e-10); otherwise no joint can exist for trivial
    bookkeeping reasons and the feasibility question is malformed.
    """

    a1b1: JointPmf2x2
    a1b2: JointPmf2x2
    a2b1: JointPmf2x2
    a2b2: JointPmf2x2

    def __post_init__(self) -> None:
        checks = (
            ("A1", self.a1b1.x_marginal(), self.a1b2.x_marginal()),
            ("A2", self.a2b1.x_marginal(), self.a2b2.x_marginal()),
            ("B1", self.a1b1.y_marginal(), self.a2b1.y_marginal()),
            ("B2", self.a1b2.y_marginal(), self.a2b2.y_marginal()),
        )
        for name, first, second in checks:
            if abs(first.p_plus - second.p_plus) > 1e-10:
                raise ValueError(f"inconsistent one-party marginal for {name}")

    def tables(self) -> tuple[JointPmf2x2, ...]:
        return (self.a1b1, self.a1b2, self.a2b1, self.a2b2)

    def correlations(self) -> tuple[float, float, float, float]:
        return tuple(t.product_expectation() for t in self.tables())


def pair_marginals(pmf: CfPmf) -> PairMarginals:
    """Push a joint distribution forward to its four measured pair tables."""
    p = pmf.probabilities
    return PairMarginals(
        a1b1=JointPmf2x2(p.sum(axis=(1, 3))),
        a1b2=JointPmf2x2(p.sum(axis=(1, 2))),
        a2b1=JointPmf2x2(p.sum(axis=(0, 3))),
        a2b2=JointPmf2x2(p.sum(axis=(0, 2))),
    )


def quantum_pair_marginals(cfg: AngleConfig) -> PairMarginals:
    """The four singlet pair tables at the configured angles."""
    psi = singlet_state()
    t11, t12, t21, t22 = (joint_pmf(psi, a, b) for a, b in cfg.experiment_angles())
    return PairMarginals(t11, t12, t21, t22)


@dataclass(frozen=True, eq=False)
class FeasibilityResult:
    feasible: bool
    witness: CfPmf | None
    chsh_value: float
    marginal_residual: float | None

    def __post_init__(self) -> None:
        if self.feasible and self.witness is None:
            raise ValueError("feasible verdict requires a witness")


# Pair tables read from a joint distribution: constraint row order is
# (pair, cell) with pairs (A1B1), (A1B2), (A2B1), (A2B2) and cells row-major.
_PAIR_AXES = ((1, 3), (1, 2), (0, 3), (0, 2))


def _constraint_system(marginals: PairMarginals) -> tuple[np.ndarray, np.ndarray]:
    a = np.zeros((16, 16))
    b = np.zeros(16)
    tables = marginals.tables()
    for pair_idx, (sum_axes, table) in enumerate(zip(_PAIR_AXES, tables)):
        keep_axes = tuple(ax for ax in range(4) if ax not in sum_axes)
        for cell_idx, (u, v) in enumerate(itertools.product(range(2), range(2))):
            row = pair_idx * 4 + cell_idx
            mask = np.zeros((2, 2, 2, 2))
            index = [slice(None)] * 4
            index[keep_axes[0]] = u
            index[keep_axes[1]] = v
            mask[tuple(index)] = 1.0
            a[row] = mask.reshape(-1)
            b[row] = table.p[u, v]
    return a, b


def _independent_rows(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> list[int]:
    """Greedy selection of independent constraint rows.

    Works on the augmented rows [a_i | b_i] so that a dependent
    coefficient row with an inconsistent right-hand side is detected
    rather than silently dropped.
    """
    kept: list[int] = []
    basis: list[np.ndarray] = []
    for i in range(a.shape[0]):
        row = np.concatenate([a[i], [b[i]]])
        residual = row.copy()
        for e in basis:
            residual -= np.dot(residual, e) * e
        if np.linalg.norm(residual[:-1]) > tol:
            kept.append(i)
            basis.append(residual / np.linalg.norm(residual))
        elif abs(residual[-1]) > tol:
            raise ValueError("marginals define an inconsistent linear system")
    return kept


def _phase1_simplex(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> tuple[float, np.ndarray]:
    """Minimize the artificial-variable total for a x = b, x >= 0.

    Bland's smallest-index rule on both the entering and leaving choices
    guarantees termination despite the degenerate bases these marginal
    systems produce.  Returns (optimal objective, x part of the basic
    solution); the system is solvable iff the objective is ~0.
    """
    m, n = a.shape
    a = a.copy()
    b = b.copy()
    flip = b < 0.0
    a[flip] *= -1.0
    b[flip] *= -1.0

    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = a
    tableau[:m, n : n + m] = np.eye(m)
    tableau[:m, -1] = b
    tableau[m, :n] = -a.sum(axis=0)
    tableau[m, -1] = -b.sum()
    basis = list(range(n, n + m))

    while True:
        entering = -1
        for j in range(n + m):
            if tableau[m, j] < -tol:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best = np.inf
        for i in range(m):
            coef = tableau[i, entering]
            if coef > tol:
                ratio = tableau[i, -1] / coef
                if ratio < best - 1e-12 or (abs(ratio - best) <= 1e-12 and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            raise InternalCheckError("phase-1 simplex became unbounded; constraint matrix is malformed")
        tableau[leaving] /= tableau[leaving, entering]
        for i in range(m + 1):
            if i != leaving and tableau[i, entering] != 0.0:
                tableau[i] -= tableau[i, entering] * tableau[leaving]
        basis[leaving] = entering

    objective = -tableau[m, -1]
    x = np.zeros(n + m)
    for i, var in enumerate(basis):
        x[var] = tableau[i, -1]
    return objective, x[:n]


def fine_feasibility(marginals: PairMarginals) -> FeasibilityResult:
    """Decide whether one joint distribution reproduces all four pair tables.

    Solves the 16-unknown nonnegative linear system by phase-1 simplex and
    returns a witness distribution when one exists.  The verdict is
    cross-checked against the analytic criterion (max CHSH variant <= 2);
    a clear disagreement raises :class:`InternalCheckError`.
    """
    a, b = _constraint_system(marginals)
    rows = _independent_rows(a, b)
    objective, x = _phase1_simplex(a[rows], b[rows])
    feasible = objective <= 1e-9

    chsh = chsh_all_variants(*marginals.correlations())
    if feasible and chsh > 2.0 + 1e-7:
        raise InternalCheckError(f"simplex found a witness but max CHSH variant is {chsh}")
    if not feasible and chsh < 2.0 - 1e-7:
        raise InternalCheckError(f"simplex claims infeasible but max CHSH variant is only {chsh}")

    if not feasible:
        return FeasibilityResult(False, None, chsh, None)

    if x.min() < -1e-12:
        raise InternalCheckError(f"witness has entry {x.min()} below -1e-12")
    x = np.maximum(x, 0.0)
    witness = CfPmf((x / x.sum()).reshape(2, 2, 2, 2))
    residual = max(
        float(np.max(np.abs(got.p - want.p)))
        for got, want in zip(pair_marginals(witness).tables(), marginals.tables())
    )
    if residual > 1e-9:
        raise InternalCheckError(f"witness reproduces marginals only to {residual}")
    return FeasibilityResult(True, witness, chsh, residual)
