import math

import numpy as np
import pytest

from bellcheck.born import chsh_expectation
from bellcheck.chsh_operator import (
    atom_magnitude,
    chsh_operator,
    chsh_spectrum,
    closed_form_expectation,
    sample_outcomes,
)
from bellcheck.linalg import eig_hermitian, hermiticity_defect
from bellcheck.polarization import AngleConfig, singlet_state

OPTIMAL = AngleConfig.from_degrees(0.0, 45.0, 22.5, -22.5)


def random_configs(seed, count):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        try:
            out.append(AngleConfig(*rng.uniform(0.0, math.pi, 4)))
        except ValueError:
            continue
    return out


def test_operator_is_traceless_hermitian():
    for cfg in random_configs(1, 100):
        op = chsh_operator(cfg)
        assert abs(np.trace(op)) < 1e-12
        assert hermiticity_defect(op) <= 1e-13


def test_operator_sandwich_equals_chsh_expectation():
    psi = singlet_state()
    for cfg in random_configs(2, 50):
        sandwich = float(np.real(psi.conj() @ chsh_operator(cfg) @ psi))
        assert abs(sandwich - chsh_expectation(cfg)) < 1e-12


def test_spectrum_at_optimal_angles():
    s = chsh_spectrum(OPTIMAL)
    root8 = 2 * math.sqrt(2)
    assert s.t0 == pytest.approx(root8, abs=1e-12)
    assert s.t1 == pytest.approx(0.0, abs=1e-9)
    assert s.w_plus == pytest.approx(0.0, abs=1e-12)
    assert s.w_minus == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(np.sort(s.eigenvalues), [-root8, 0.0, 0.0, root8], atol=1e-9)


def test_spectrum_degenerate_when_one_side_is_orthogonal():
    # alpha1 - alpha2 = 90 deg kills the sine product, so t0 = t1 = 2
    cfg = AngleConfig.from_degrees(0.0, 90.0, 22.5, -22.5)
    s = chsh_spectrum(cfg)
    assert s.t0 == pytest.approx(2.0, abs=1e-12)
    assert s.t1 == pytest.approx(2.0, abs=1e-9)
    assert s.w_plus + s.w_minus == pytest.approx(1.0)


def test_spectrum_symmetric_and_matches_closed_forms():
    for cfg in random_configs(3, 100):
        s = chsh_spectrum(cfg)
        evals = np.sort(s.eigenvalues)
        assert np.max(np.abs(evals + evals[::-1])) < 1e-9  # symmetric about 0
        product = math.sin(2 * (cfg.alpha1 - cfg.alpha2)) * math.sin(2 * (cfg.beta1 - cfg.beta2))
        assert s.t0 == pytest.approx(2 * math.sqrt(1 - product), abs=1e-9)
        # regression fact, established against the eigensolver: the dark
        # pair sits at 2 sqrt(1 + product)
        assert s.t1 == pytest.approx(2 * math.sqrt(1 + product), abs=1e-9)
        want = np.sort([s.t0, -s.t0, s.t1, -s.t1])
        assert np.max(np.abs(evals - want)) < 1e-9
        assert s.t0 <= 2 * math.sqrt(2) + 1e-12


def test_singlet_weight_avoids_dark_eigenspace():
    psi = singlet_state()
    for cfg in random_configs(4, 50):
        s = chsh_spectrum(cfg)
        if abs(s.t0 - s.t1) <= 1e-6:
            continue
        evals, evecs = eig_hermitian(chsh_operator(cfg), tol=1e-10)
        dark = np.abs(np.abs(evals) - s.t1) < 1e-8
        weight = float(np.sum(np.abs(evecs[:, dark].conj().T @ psi) ** 2))
        assert weight <= 1e-12


def test_closed_form_expectation_properties():
    assert closed_form_expectation(OPTIMAL) == pytest.approx(-2 * math.sqrt(2), abs=1e-12)
    for a1 in np.deg2rad(np.arange(0.0, 180.0, 5.0)):
        for b1 in np.deg2rad(np.arange(0.0, 180.0, 5.0)):
            try:
                cfg = AngleConfig(a1, a1 + math.pi / 3, b1, b1 + math.pi / 3)
            except ValueError:
                continue
            e = closed_form_expectation(cfg)
            assert abs(e - chsh_expectation(cfg)) < 1e-12
            assert abs(e) <= chsh_spectrum(cfg).t0 + 1e-9


def test_atom_magnitude_vanishes_only_at_full_sine_product():
    cfg = AngleConfig.from_degrees(0.0, -45.0, 45.0, 0.0)
    assert atom_magnitude(cfg) == pytest.approx(0.0, abs=1e-12)
    s = chsh_spectrum(cfg)
    assert s.w_plus == pytest.approx(0.5)
    est = sample_outcomes(cfg, 100, seed=3)
    assert est.mean == 0.0 and est.stderr == 0.0


def test_sampling_deterministic_case():
    est = sample_outcomes(OPTIMAL, 2_000, seed=42)
    assert est.mean == pytest.approx(-2 * math.sqrt(2), abs=0.0)
    assert est.stderr == 0.0


def test_sampling_statistical_case():
    cfg = AngleConfig.from_degrees(0.0, 30.0, 15.0, 75.0)
    est = sample_outcomes(cfg, 100_000, seed=9)
    assert est.stderr > 0.0
    assert abs(est.mean - closed_form_expectation(cfg)) < 5 * est.stderr
    again = sample_outcomes(cfg, 100_000, seed=9)
    assert est == again


def test_sampling_rejects_zero_draws():
    with pytest.raises(ValueError):
        sample_outcomes(OPTIMAL, 0, seed=1)
