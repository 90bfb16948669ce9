"""Smoke tests for the compiled perisolve module."""

import json
import math

import numpy as np
import pytest

import perisolve as ps

TWO_PI = 2.0 * math.pi


def scalar(z):
    return np.array([z], dtype=complex)


def cosine():
    f = ps.TrigPolynomial(1)
    f.set_coeff(1, scalar(0.5))
    f.set_coeff(-1, scalar(0.5))
    return f


def decay_problem(order=1):
    return ps.ProblemSpec(order, 1, np.array([[-1.0 + 0j]]), ps.DelaySpec(1, 1))


def pi_delay_problem():
    delay = ps.DelaySpec(1, 1)
    delay.add_discrete(math.pi, np.array([[-1.0 + 0j]]))
    return ps.ProblemSpec(1, 1, np.array([[0.0 + 0j]]), delay)


def test_closed_form_solve():
    sol = ps.solve(decay_problem(), cosine(), 8)
    ts = np.linspace(0.0, TWO_PI, 257)
    for t in ts:
        expect = 0.5 * (math.cos(t) + math.sin(t))
        assert abs(ps.synthesize(sol.u, t)[0] - expect) < 1e-13
    assert sol.residual_coeff < 1e-13


def test_delay_solve_coefficient():
    f = ps.TrigPolynomial.monomial(1, scalar(1.0))
    sol = ps.solve(pi_delay_problem(), f, 4)
    assert abs(sol.u.coeff(1)[0] - (-0.5 - 0.5j)) < 1e-13
    coeff_defect, grid_defect = ps.residual(pi_delay_problem(), sol.u, f)
    assert coeff_defect < 1e-12
    assert grid_defect < 1e-12


def test_resonance_raises():
    p = ps.ProblemSpec(1, 1, np.array([[0.0 + 0j]]), ps.DelaySpec(1, 1))
    with pytest.raises(ps.ResonanceError):
        ps.solve(p, ps.TrigPolynomial.constant(scalar(1.0)), 4)


def test_analysis_round_trip():
    f = ps.TrigPolynomial(2)
    f.set_coeff(0, np.array([0.3 + 0j, -1 + 0.5j]))
    f.set_coeff(3, np.array([1j, 0.25 + 0j]))
    back = ps.analyze(ps.sample(f, 16), 4)
    assert ps.coeff_distance(f, back) < 1e-12


def test_sequences_match_frozen_values():
    assert abs(ps.seq_b(2, 1) - (6 - 6j)) < 1e-12
    assert abs(ps.seq_c(2, 1) - (-2j)) < 1e-12
    assert abs(ps.seq_a(2, 1) - (3 - 1j)) < 1e-12
    for k in (1, -2, 7):
        assert abs(ps.seq_b(1, k) - 2.0 / k) < 1e-13


def test_besov_norm_and_lifting():
    one = ps.TrigPolynomial.constant(scalar(1.0))
    assert ps.besov_norm(one, 1.0, 2.0, 2.0, 4, 16) == pytest.approx(
        math.sqrt(TWO_PI), rel=1e-12
    )
    e8 = ps.TrigPolynomial.monomial(8, scalar(1.0))
    assert ps.lifting_ratio(e8, 1.0, 2.0, 2.0, 6, 64) == pytest.approx(
        1.0, rel=1e-12
    )
    part = ps.build_partition(6)
    assert part.phi(3, 8.0) == 1.0


def test_fourier_type_parseval():
    f = ps.TrigPolynomial(1)
    f.set_coeff(0, scalar(1.0))
    f.set_coeff(2, scalar(0.5 - 0.25j))
    assert ps.fourier_type_ratio(f, 2.0, 16) == pytest.approx(1.0, abs=1e-12)


def test_fd_oracle_convergence():
    p = decay_problem()
    exact = ps.solve(p, cosine(), 4)
    errors = [ps.fd_compare(ps.solve_fd(p, cosine(), grid), exact)
              for grid in (64, 128, 256)]
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(2)]
    for order in orders:
        assert 1.7 < order < 2.3


def test_audits_return_reports():
    report = ps.step2_audit(2, 16)
    assert report["pass"] is False
    assert any(row["k"] == 1 for row in report["rows"])
    step3 = ps.step3_audit(decay_problem(), 128)
    assert step3["n_family"]["pass"] is True
    assert step3["identity"]["pass"] is True


def test_problem_json_round_trip():
    f = cosine()
    text = ps.problem_to_json(pi_delay_problem(), f)
    doc = json.loads(text)
    assert doc["n"] == 1 and doc["dim"] == 1
    problem, forcing = ps.load_problem_json(text)
    assert forcing is not None
    assert ps.coeff_distance(forcing, f) == 0.0
    sol = ps.solve(problem, forcing, 4)
    assert sol.resonance_margin > 0.0


def test_uniqueness_probe():
    assert ps.uniqueness_probe(decay_problem(), 64) == pytest.approx(1.0)
    rows = ps.resonance_scan(decay_problem(), 2)
    assert [row["k"] for row in rows] == [-2, -1, 0, 1, 2]


def test_multiplier_apply_matches_solve():
    p = decay_problem()
    f = cosine()
    family = {k: ps.resolvent(p, k)[0] for k in (-1, 1)}
    u = ps.multiplier_apply(family, f)
    sol = ps.solve(p, f, 2)
    assert ps.coeff_distance(u, sol.u) == 0.0


def test_verify_transfer_discrete():
    delay = ps.DelaySpec(1, 1)
    delay.add_discrete(1.25, np.array([[0.5 + 0.25j]]))
    u = ps.TrigPolynomial.monomial(2, scalar(1.0))
    defect, bound = ps.verify_transfer(delay, u, 3, 32)
    assert defect < 1e-12
    assert bound >= 0.0
