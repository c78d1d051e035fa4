import math

import pytest

import hessk


def test_sigma_and_fk():
    assert hessk.sigma(2, [1.0, 2.0, 3.0]) == pytest.approx(11.0)
    assert hessk.sigma(0, [4.0, 5.0]) == 1.0
    assert hessk.f_k(2, [1.0, 2.0, 3.0]) == pytest.approx(math.log(11.0))


def test_matrix_functionals():
    eye3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    assert hessk.S_k(eye3, 2) == pytest.approx(3.0)
    assert hessk.F_k(eye3, 2) == pytest.approx(math.log(3.0))
    grad = hessk.grad_F_k(eye3, 2)
    assert grad[0][0] == pytest.approx(2.0 / 3.0)
    assert grad[0][1] == pytest.approx(0.0)
    assert hessk.d2F(eye3, 2, eye3) == pytest.approx(-2.0)


def test_schedule_and_cones():
    sched = hessk.gamma_schedule(10, 7)
    assert sched.branch == "MIDRANGE"
    assert sched.gamma_k == pytest.approx(3.0 / 7.0)
    assert hessk.in_sigma_gamma([1.0] * 10, sched)
    assert not hessk.in_sigma_gamma([1.0] * 9 + [0.1], sched)
    with pytest.raises(hessk.HesskError):
        hessk.gamma_schedule(6, 2)  # free branch needs an explicit gamma


def test_ledger_values():
    sched = hessk.gamma_schedule(5, 3, 0.5)
    led = hessk.build_ledger(5, 3, 0.0, sched, 0.149)
    assert led["c6"] == pytest.approx(7.0)
    assert led["mu_k"] == pytest.approx(0.0375)
    assert led["c7"] == led["c6"]


def test_scaled_form_definite_on_slice():
    sched = hessk.gamma_schedule(5, 3, 0.5)
    lam = hessk.sample_sigma_slice(sched, seed=3)
    assert hessk.in_sigma_gamma(lam, sched)
    values, _ = hessk.sym_eigen(hessk.tilde_coeff_matrix(3, lam))
    assert values[0] < 0.0


def test_suite_runs_clean_and_deterministic():
    sched = hessk.gamma_schedule(5, 3, 0.5)
    mu = hessk.feasible_mu(5, sched, 0.05)
    rep1 = hessk.suite_dconcavity(sched, 0.05, mu, 60, 42)
    rep2 = hessk.suite_dconcavity(sched, 0.05, mu, 60, 42)
    assert rep1["violations"] == 0
    for key in ("suite", "samples", "violations", "worst_margin", "seed", "ledger"):
        assert rep1[key] == rep2[key]


def test_pair_coeff_exposes_both_forms():
    pc = hessk.pair_coeff(2, [1.0, 1.0, 1.0, 1.0], 0, 1)
    assert pc["half_form"] == pytest.approx(1.0)
    assert pc["full_form"] == pytest.approx(3.0)
    assert pc["hessian_implied"] == pytest.approx(3.0)
