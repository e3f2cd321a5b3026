"""Four independent pair experiments: sampling, enumeration, tensor model.

A real CHSH run consists of four separate experiments E1..E4, one per
angle pair of an :class:`~bellcheck.polarization.AngleConfig`, each on
its own photon pair.  This module provides

* seeded Monte Carlo draws from the singlet pair distribution,
* exhaustive enumeration of the 4^4 = 256 joint elementary outcomes and
  the statistic x1 y1 + x2 y2 + x3 y3 - x4 y4 (always in [-4, 4]),
* the 256-dimensional four-pair product state and its full Born-rule
  outcome table, cross-checked against the factored per-pair tables.

Random streams are counter-indexed: draw ``i`` of experiment ``n`` lives
in block ``i // BLOCK_SIZE`` whose generator is seeded from
``SeedSequence([seed, n, block])``.  Results are therefore bit-identical
no matter how draws are sharded across workers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .born import OUTCOME_VALUES, joint_pmf
from .errors import InternalCheckError
from .linalg import kron
from .polarization import AngleConfig, basis_matrix, singlet_state

BLOCK_SIZE = 1 << 16

# Per-experiment elementary outcomes in fixed order: the cell (k, l) of the
# pair table, flattened row-major, so cell index 0 -> (+1, +1), 1 -> (+1, -1),
# 2 -> (-1, +1), 3 -> (-1, -1).
CELL_VALUES = tuple(itertools.product((1, -1), (1, -1)))


@dataclass(frozen=True)
class ExperimentOutcome:
    """One draw (x, y) of experiment E1..E4."""

    experiment_index: int
    x: int
    y: int

    def __post_init__(self) -> None:
        if self.experiment_index not in (1, 2, 3, 4):
            raise ValueError("experiment_index must be in 1..4")
        if self.x not in (-1, 1) or self.y not in (-1, 1):
            raise ValueError("outcomes must be +-1")


@dataclass(frozen=True)
class RunRecord:
    """Outcomes of one joint run of all four experiments."""

    outcomes: tuple[ExperimentOutcome, ...]
    statistic: int

    def __post_init__(self) -> None:
        if len(self.outcomes) != 4 or [o.experiment_index for o in self.outcomes] != [1, 2, 3, 4]:
            raise ValueError("need one outcome per experiment, ordered E1..E4")
        if self.statistic != run_statistic(self.outcomes):
            raise ValueError("statistic does not match the outcomes")


def run_statistic(outcomes: tuple[ExperimentOutcome, ...]) -> int:
    o = outcomes
    return o[0].x * o[0].y + o[1].x * o[1].y + o[2].x * o[2].y - o[3].x * o[3].y


@dataclass(frozen=True)
class EstimatorResult:
    """Sample mean with its standard error."""

    mean: float
    stderr: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not self.stderr >= 0.0:
            raise ValueError("stderr must be non-negative")


def _estimate(total: float, total_sq: float, n: int) -> EstimatorResult:
    mean = total / n
    if n < 2:
        return EstimatorResult(mean, 0.0, n)
    var = max(total_sq / n - mean * mean, 0.0) * n / (n - 1)
    return EstimatorResult(mean, math.sqrt(var / n), n)


def _pair_cdf(alpha: float, beta: float) -> np.ndarray:
    """Cumulative cell probabilities in the fixed CELL_VALUES order."""
    p = joint_pmf(singlet_state(), alpha, beta).p
    return np.cumsum(p.reshape(-1))


def sample_pair(alpha: float, beta: float, rng: np.random.Generator) -> tuple[int, int]:
    """Draw one (x, y) outcome from the singlet pair distribution.

    Inverse-CDF over the four cells using a single uniform, so exactly
    one draw of ``rng`` is consumed per call.
    """
    cdf = _pair_cdf(alpha, beta)
    cell = int(np.searchsorted(cdf, rng.random(), side="right"))
    return CELL_VALUES[min(cell, 3)]


def _block_rng(seed: int, stream: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, stream, block]))


def stream_uniforms(seed: int, stream: int, n: int) -> np.ndarray:
    """The first ``n`` uniforms of a counter-indexed stream.

    Shared by all samplers in the package; the block layout makes the
    value of draw ``i`` independent of how [0, n) is split over workers.
    """
    out = np.empty(n)
    for block in range((n + BLOCK_SIZE - 1) // BLOCK_SIZE):
        lo = block * BLOCK_SIZE
        hi = min(lo + BLOCK_SIZE, n)
        out[lo:hi] = _block_rng(seed, stream, block).random(hi - lo)
    return out


def _sample_cells(alpha: float, beta: float, n: int, seed: int, stream: int) -> np.ndarray:
    cdf = _pair_cdf(alpha, beta)
    u = stream_uniforms(seed, stream, n)
    return np.minimum(np.searchsorted(cdf, u, side="right"), 3)


def run_experiments(
    cfg: AngleConfig, n: int, seed: int
) -> tuple[tuple[EstimatorResult, ...], EstimatorResult]:
    """Estimate the four pair correlations and their CHSH combination.

    Each experiment draws ``n`` pairs from its own independent stream
    (stream id = experiment index).  Returns the per-experiment product
    estimates C1..C4 and the combination C1 + C2 + C3 - C4 with standard
    errors combined in quadrature.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    products = np.array([1.0, -1.0, -1.0, 1.0])  # x*y per cell index
    estimates = []
    for idx, (a, b) in enumerate(cfg.experiment_angles(), start=1):
        cells = _sample_cells(a, b, n, seed, idx)
        vals = products[cells]
        estimates.append(_estimate(float(vals.sum()), float((vals**2).sum()), n))
    signs = (1.0, 1.0, 1.0, -1.0)
    mean = sum(s * e.mean for s, e in zip(signs, estimates))
    stderr = math.sqrt(sum(e.stderr**2 for e in estimates))
    return tuple(estimates), EstimatorResult(mean, stderr, n)


def enumerate_total_sample_space() -> list[RunRecord]:
    """All 256 joint elementary outcomes of the four experiments."""
    records = []
    for cells in itertools.product(range(4), repeat=4):
        outcomes = tuple(
            ExperimentOutcome(idx, *CELL_VALUES[cell]) for idx, cell in enumerate(cells, start=1)
        )
        records.append(RunRecord(outcomes, run_statistic(outcomes)))
    return records


def statistic_histogram(records: list[RunRecord] | None = None) -> dict[int, int]:
    """Counts of each statistic value over the enumerated sample space."""
    if records is None:
        records = enumerate_total_sample_space()
    hist: dict[int, int] = {}
    for r in records:
        hist[r.statistic] = hist.get(r.statistic, 0) + 1
    return dict(sorted(hist.items()))


def tensor_state() -> np.ndarray:
    """Product state of the four identically prepared singlet pairs (dim 256)."""
    psi = singlet_state().reshape(4, 1)
    state = psi
    for _ in range(3):
        state = kron(state, psi)
    return state.reshape(-1)


def tensor_joint_pmf(cfg: AngleConfig) -> np.ndarray:
    """Joint outcome table of all eight variables, shape (2,)*8.

    Axes are ordered (k1, l1, k2, l2, k3, l3, k4, l4) following the
    package outcome convention (index 0 -> value +1).  The table is
    computed twice -- once through the full 256-dimensional Born rule
    and once as the product of the four per-pair tables -- and the two
    routes must agree to 1e-12, else the basis ordering is broken.
    """
    pair_tables = [joint_pmf(singlet_state(), a, b).p for a, b in cfg.experiment_angles()]

    full_basis = np.eye(1, dtype=np.complex128)
    for a, b in cfg.experiment_angles():
        full_basis = kron(full_basis, kron(basis_matrix(a), basis_matrix(b)))
    amps = full_basis.conj() @ tensor_state()
    born_route = (np.abs(amps) ** 2).reshape((2,) * 8)

    factored = np.einsum("ab,cd,ef,gh->abcdefgh", *pair_tables)
    gap = float(np.max(np.abs(born_route - factored)))
    if gap > 1e-12:
        raise InternalCheckError(f"full Born route and factored route differ by {gap}")
    return born_route


def tensor_chsh_expectation(cfg: AngleConfig) -> float:
    """Expectation of the run statistic under the eight-variable table."""
    table = tensor_joint_pmf(cfg)
    v = OUTCOME_VALUES
    stat = (
        np.einsum("a,b->ab", v, v).reshape(2, 2, 1, 1, 1, 1, 1, 1)
        + np.einsum("c,d->cd", v, v).reshape(1, 1, 2, 2, 1, 1, 1, 1)
        + np.einsum("e,f->ef", v, v).reshape(1, 1, 1, 1, 2, 2, 1, 1)
        - np.einsum("g,h->gh", v, v).reshape(1, 1, 1, 1, 1, 1, 2, 2)
    )
    return float(np.sum(table * stat))
