"""Acceptance suite: one test per release criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or
in captured output) and enforces the stated tolerance, plus a wall-clock
budget where one applies.  Expected values marked as derived were
computed with the independent oracles embedded here (combinatorial
counts, characteristic polynomials, explicit projector sums) before
being frozen.
"""

import math
import time

import numpy as np

from bellcheck.born import chsh_expectation, correlation, joint_pmf
from bellcheck.chsh_operator import atom_magnitude, chsh_operator, chsh_spectrum, closed_form_expectation, sample_outcomes
from bellcheck.counterfactual import (
    CfPmf,
    chsh_expectation as hv_expectation,
    fine_feasibility,
    outcome_statistic,
    pair_marginals,
    quantum_pair_marginals,
    sample_space,
)
from bellcheck.linalg import commutator, eig_hermitian
from bellcheck.polarization import AngleConfig, singlet_state, x_operator, y_operator, z_operator
from bellcheck.quasiprob import f_jk, f_jkl, q_reconstruct, q_value
from bellcheck.realworld import enumerate_total_sample_space, run_experiments, statistic_histogram, tensor_chsh_expectation
from test_counterfactual import correlation_box

TWO_SQRT_TWO = 2.0 * math.sqrt(2.0)
OPTIMAL = AngleConfig.from_degrees(0.0, 45.0, 22.5, -22.5)
DEGREE_GRID = np.deg2rad(np.arange(0.0, 180.0, 1.0))
SIGMA_Y = np.array([[0, -1j], [1j, 0]])


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def _random_configs(seed: int, count: int) -> list[AngleConfig]:
    rng = np.random.default_rng(seed)
    out: list[AngleConfig] = []
    while len(out) < count:
        try:
            out.append(AngleConfig(*rng.uniform(0.0, math.pi, 4)))
        except ValueError:
            continue
    return out


def test_criterion_01_correlation_closed_form():
    start = time.perf_counter()
    worst = 0.0
    for alpha in DEGREE_GRID:
        for beta in DEGREE_GRID:
            worst = max(worst, abs(correlation(alpha, beta) + math.cos(2.0 * (alpha - beta))))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 1.0
    _report(1, ok, f"1-degree grid, worst |C + cos 2(a-b)| = {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_joint_pmf_closed_form():
    psi = singlet_state()
    m = np.ones((2, 2))
    n = np.array([[1.0, -1.0], [-1.0, 1.0]])
    worst_table = 0.0
    worst_marginal = 0.0
    for alpha in DEGREE_GRID:
        for beta in DEGREE_GRID:
            table = joint_pmf(psi, alpha, beta)
            closed = (m - math.cos(2.0 * (alpha - beta)) * n) / 4.0
            worst_table = max(worst_table, float(np.max(np.abs(table.p - closed))))
            worst_marginal = max(
                worst_marginal,
                abs(table.x_marginal().p_plus - 0.5),
                abs(table.y_marginal().p_plus - 0.5),
            )
    ok = worst_table <= 1e-12 and worst_marginal <= 1e-12
    _report(2, ok, f"table residual {worst_table:.2e}, marginal residual {worst_marginal:.2e}")


def test_criterion_03_commutator_identities():
    worst_closed = 0.0
    for phi in DEGREE_GRID:
        for phi_prime in DEGREE_GRID:
            got = commutator(z_operator(phi), z_operator(phi_prime))
            want = -2j * SIGMA_Y * math.sin(2.0 * (phi - phi_prime))
            worst_closed = max(worst_closed, float(np.max(np.abs(got - want))))
    rng = np.random.default_rng(303)
    worst_cross = 0.0
    for _ in range(1000):
        alpha, beta = rng.uniform(-math.pi, math.pi, 2)
        worst_cross = max(
            worst_cross, float(np.max(np.abs(commutator(x_operator(alpha), y_operator(beta)))))
        )
    same_side = np.linalg.norm(commutator(x_operator(0.0), x_operator(math.radians(30.0))))
    ok = worst_closed <= 1e-12 and worst_cross <= 1e-13 and same_side >= 0.1
    _report(
        3,
        ok,
        f"rotation-pair residual {worst_closed:.2e}, cross-side residual {worst_cross:.2e}, "
        f"same-side norm {same_side:.2f}",
    )


def test_criterion_04_enumeration_bound_and_histogram():
    start = time.perf_counter()
    records = enumerate_total_sample_space()
    hist = statistic_histogram(records)
    elapsed = time.perf_counter() - start
    # oracle: the statistic is a signed sum of four fair +-1 products, each
    # sign covering 2 of the 4 outcomes, so counts are 16 * C(4, j)
    oracle = {2 * j - 4: 16 * math.comb(4, j) for j in range(5)}
    stats = [r.statistic for r in records]
    ok = (
        len(records) == 256
        and max(stats) == 4
        and min(stats) == -4
        and hist == oracle
        and hist == {-4: 16, -2: 64, 0: 96, 2: 64, 4: 16}
        and elapsed < 0.1
    )
    _report(4, ok, f"256 outcomes, range [-4, 4], histogram {hist}, {elapsed * 1000:.0f}ms")


def test_criterion_05_counterfactual_identity_and_bound():
    start = time.perf_counter()
    values = {outcome_statistic(w) for w in sample_space()}
    rng = np.random.default_rng(505)
    worst = 0.0
    for _ in range(10_000):
        w = rng.random(16)
        worst = max(worst, abs(hv_expectation(CfPmf((w / w.sum()).reshape(2, 2, 2, 2)))))
    elapsed = time.perf_counter() - start
    ok = values == {-2, 2} and worst <= 2.0 + 1e-12 and elapsed < 1.0
    _report(5, ok, f"pointwise values {sorted(values)}, max |E| over 1e4 pmfs = {worst:.12f}, {elapsed:.2f}s")


def test_criterion_06_quantum_value_and_tsirelson_sweep():
    gap = abs(chsh_expectation(OPTIMAL) + TWO_SQRT_TWO)
    # tie the vectorized sweep expression to the operator route first
    worst_route = max(
        abs(chsh_expectation(cfg) - closed_form_expectation(cfg)) for cfg in _random_configs(66, 500)
    )
    # exhaustive sweep over the 1-degree grid; alpha1 = 0 w.l.o.g. since the
    # combination depends only on angle differences
    grid = DEGREE_GRID
    b1, b2 = np.meshgrid(grid, grid, indexing="ij")
    sweep_max = 0.0
    for a2 in grid:
        e = (
            -np.cos(2.0 * (0.0 - b1))
            - np.cos(2.0 * (0.0 - b2))
            - np.cos(2.0 * (a2 - b1))
            + np.cos(2.0 * (a2 - b2))
        )
        sweep_max = max(sweep_max, float(np.max(np.abs(e))))
    ok = gap <= 1e-9 and worst_route <= 1e-12 and sweep_max <= TWO_SQRT_TWO + 1e-9
    _report(
        6,
        ok,
        f"optimal-config gap {gap:.2e}, route agreement {worst_route:.2e}, sweep max {sweep_max:.10f}",
    )


def test_criterion_07_monte_carlo_consistency():
    start = time.perf_counter()
    n = 1_000_000
    per_exp, combined = run_experiments(OPTIMAL, n, seed=777)
    pulls = []
    for est, (a, b) in zip(per_exp, OPTIMAL.experiment_angles()):
        pulls.append(abs(est.mean + math.cos(2.0 * (a - b))) / est.stderr)
    combined_pull = abs(combined.mean - chsh_expectation(OPTIMAL)) / combined.stderr
    repeat = run_experiments(OPTIMAL, n, seed=777)
    elapsed = time.perf_counter() - start
    ok = (
        max(pulls) < 5.0
        and combined_pull < 5.0
        and repeat == (per_exp, combined)
        and elapsed < 30.0
    )
    _report(
        7,
        ok,
        f"n=1e6: per-experiment pulls {[f'{p:.2f}' for p in pulls]}, combined pull "
        f"{combined_pull:.2f}, deterministic repeat, {elapsed:.1f}s",
    )


def test_criterion_08_tensor_factorization():
    start = time.perf_counter()
    worst = 0.0
    for cfg in _random_configs(88, 100):
        # tensor_joint_pmf internally asserts the 256-dim Born route equals
        # the factored route to 1e-12 and raises otherwise
        gap = abs(tensor_chsh_expectation(cfg) - chsh_expectation(cfg))
        worst = max(worst, gap)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 10.0
    _report(8, ok, f"100 configs: route assertion held, |E_tensor - E_pair| <= {worst:.2e}, {elapsed:.1f}s")


def test_criterion_09_chsh_operator_spectrum():
    psi = singlet_state()
    worst_spectrum = 0.0
    worst_dark = 0.0
    worst_expectation = 0.0
    for cfg in _random_configs(99, 200) + [OPTIMAL]:
        evals, evecs = eig_hermitian(chsh_operator(cfg), tol=1e-10)
        t0 = atom_magnitude(cfg)
        s = chsh_spectrum(cfg)
        want = np.sort([t0, -t0, s.t1, -s.t1])
        worst_spectrum = max(worst_spectrum, float(np.max(np.abs(np.sort(evals) - want))))
        if abs(t0 - s.t1) > 1e-6:
            dark = np.abs(np.abs(evals) - s.t1) < 1e-8
            worst_dark = max(worst_dark, float(np.sum(np.abs(evecs[:, dark].conj().T @ psi) ** 2)))
        sandwich = float(np.real(psi.conj() @ chsh_operator(cfg) @ psi))
        worst_expectation = max(worst_expectation, abs(sandwich - closed_form_expectation(cfg)))
    optimal = chsh_spectrum(OPTIMAL)
    point_mass = (
        optimal.w_plus == 0.0
        and optimal.w_minus == 1.0
        and abs(optimal.t0 - TWO_SQRT_TWO) < 1e-12
        and sample_outcomes(OPTIMAL, 1000, seed=1).mean == -optimal.t0
        and sample_outcomes(OPTIMAL, 1000, seed=1).stderr == 0.0
    )
    ok = (
        worst_spectrum <= 1e-9
        and worst_dark <= 1e-12
        and worst_expectation <= 1e-12
        and point_mass
    )
    _report(
        9,
        ok,
        f"spectrum residual {worst_spectrum:.2e}, dark-space weight {worst_dark:.2e}, "
        f"<T> vs closed form {worst_expectation:.2e}, optimal point mass at -2sqrt2",
    )


def test_criterion_10_fine_feasibility():
    start = time.perf_counter()
    rng = np.random.default_rng(1010)
    agreements = 0
    feasible_seen = infeasible_seen = 0
    worst_residual = 0.0
    for trial in range(500):
        if trial % 2 == 0:
            w = rng.random(16)
            marginals = pair_marginals(CfPmf((w / w.sum()).reshape(2, 2, 2, 2)))
        else:
            marginals = correlation_box(*rng.uniform(-1.0, 1.0, 4))
        result = fine_feasibility(marginals)
        agreements += result.feasible == (result.chsh_value <= 2.0 + 1e-9)
        if result.feasible:
            feasible_seen += 1
            worst_residual = max(worst_residual, result.marginal_residual)
        else:
            infeasible_seen += 1
    quantum = fine_feasibility(quantum_pair_marginals(OPTIMAL))
    elapsed = time.perf_counter() - start
    ok = (
        agreements == 500
        and feasible_seen > 0
        and infeasible_seen > 0
        and not quantum.feasible
        and worst_residual <= 1e-9
        and elapsed < 5.0
    )
    _report(
        10,
        ok,
        f"500/500 criterion agreement ({feasible_seen} feasible, {infeasible_seen} infeasible), "
        f"optimal-angle marginals infeasible, witness residual {worst_residual:.2e}, {elapsed:.1f}s",
    )


def test_criterion_11_quasi_probability_identities():
    psi = singlet_state()
    grid = np.deg2rad(np.arange(0.0, 180.0, 5.0))
    pair_cache = {}

    def pair(angle_a: float, angle_b: float) -> np.ndarray:
        key = (angle_a, angle_b)
        if key not in pair_cache:
            pair_cache[key] = joint_pmf(psi, angle_a, angle_b).p
        return pair_cache[key]

    worst_sum = worst_first = worst_second = 0.0
    for alpha in grid:
        for alpha_prime in grid:
            for beta in grid:
                values = f_jkl(alpha, alpha_prime, beta).values
                worst_sum = max(worst_sum, abs(values.sum() - 1.0))
                worst_first = max(
                    worst_first, float(np.max(np.abs(values.sum(axis=0) - pair(alpha_prime, beta))))
                )
                worst_second = max(
                    worst_second, float(np.max(np.abs(values.sum(axis=1) - pair(alpha, beta))))
                )
    worst_overlap = 0.0
    for alpha in grid:
        for alpha_prime in grid:
            values = f_jk(alpha, alpha_prime).values
            worst_overlap = max(
                worst_overlap,
                float(np.max(np.abs(values.sum(axis=0) - 0.5))),
                float(np.max(np.abs(values.sum(axis=1) - 0.5))),
            )
    rng = np.random.default_rng(1111)
    worst_q = max(
        abs(q_reconstruct(*angles) - q_value(*angles))
        for angles in rng.uniform(0.0, math.pi, (500, 3))
    )
    witness = f_jkl(0.0, math.radians(60.0), math.radians(30.0)).values[0, 0, 0]
    ok = (
        worst_sum <= 1e-12
        and worst_first <= 1e-12
        and worst_second <= 1e-12
        and worst_overlap <= 1e-12
        and worst_q <= 1e-12
        and abs(witness + 0.0625) <= 1e-12
    )
    _report(
        11,
        ok,
        f"5-degree grid residuals: sum {worst_sum:.1e}, marginals {worst_first:.1e}/{worst_second:.1e}, "
        f"overlap {worst_overlap:.1e}; reconstruction {worst_q:.1e}; witness cell {witness:.6f}",
    )
