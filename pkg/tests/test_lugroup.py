import numpy as np
import pytest

from gmx.lugroup import (
    LUParams,
    assemble,
    canonicalize,
    conjugate,
    grad_penalty,
    grad_penalty_fd,
    make_penalty_problem,
    params_to_vector,
    su2,
    vector_to_params,
)
from gmx.states import DickeParams, dicke_steady_state, diagonal_symmetric, random_density_matrix, tau_populations
from gmx.xform import penalty_f
from helpers import ghz, loop_kron

# Penalty of the symmetric four-qubit mixture at the quarter-turn optimum,
# computed with 40-digit arithmetic in an independent script.
F_EQ23_DS4 = {0.3: 0.053155208333333333333, 0.7: 0.081071875}
F_EQ23_DS3_HALF = 0.041666666666666666667


def eq23_params(n):
    return LUParams(n, np.full(n, np.pi / 4), np.zeros(n))


def test_su2_identity():
    assert np.abs(su2(0.0, 1.23) - np.eye(2)).max() < 1e-15


def test_su2_quarter_turn():
    expected = np.array([[1, 1], [-1, 1]]) / np.sqrt(2)
    assert np.abs(su2(np.pi / 4, 0.0) - expected).max() < 1e-15


def test_su2_unitary_det_one():
    rng = np.random.default_rng(0)
    for _ in range(20):
        u = su2(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        assert np.abs(u @ u.conj().T - np.eye(2)).max() < 1e-14
        assert abs(np.linalg.det(u) - 1.0) < 1e-14


def test_assemble_identity():
    p = LUParams(3, np.zeros(3), np.zeros(3))
    assert np.abs(assemble(p) - np.eye(8)).max() < 1e-15


def test_assemble_matches_kron_oracle():
    p = LUParams(2, np.array([np.pi / 4, np.pi / 4]), np.zeros(2))
    u = assemble(p)
    oracle = loop_kron(su2(np.pi / 4, 0), su2(np.pi / 4, 0))
    assert np.abs(u - oracle).max() < 1e-15


def test_assemble_unitary():
    rng = np.random.default_rng(1)
    p = LUParams(3, rng.uniform(0, np.pi, 3), rng.uniform(0, 2 * np.pi, 3))
    u = assemble(p)
    assert np.abs(u @ u.conj().T - np.eye(8)).max() < 1e-12


def test_conjugate_identity_params():
    rho = random_density_matrix(2, 3, seed=2)
    out = conjugate(rho, LUParams(2, np.zeros(2), np.zeros(2)))
    assert np.abs(out.mat - rho.mat).max() < 1e-15


def test_conjugate_preserves_trace_and_spectrum():
    rng = np.random.default_rng(3)
    for _ in range(5):
        rho = random_density_matrix(3, int(rng.integers(1, 9)), seed=int(rng.integers(1e6)))
        p = LUParams(3, rng.uniform(0, np.pi, 3), rng.uniform(0, 2 * np.pi, 3))
        out = conjugate(rho, p)
        out.validate()
        a = np.sort(np.linalg.eigvalsh(rho.mat))
        b = np.sort(np.linalg.eigvalsh(out.mat))
        assert np.abs(a - b).max() < 1e-10


def test_conjugate_dimension_mismatch():
    rho = random_density_matrix(2, 2, seed=4)
    with pytest.raises(ValueError):
        conjugate(rho, LUParams(3, np.zeros(3), np.zeros(3)))


@pytest.mark.parametrize("tau", [0.3, 0.7])
def test_penalty_at_symmetric_minimum_matches_high_precision_value(tau):
    rho = diagonal_symmetric(tau_populations(4, tau))
    got = penalty_f(conjugate(rho, eq23_params(4)))
    assert got == pytest.approx(F_EQ23_DS4[tau], abs=1e-13)


def test_penalty_at_symmetric_minimum_three_qubits():
    rho = diagonal_symmetric(tau_populations(3, 0.5))
    got = penalty_f(conjugate(rho, eq23_params(3)))
    assert got == pytest.approx(F_EQ23_DS3_HALF, abs=1e-13)


def test_gradient_vanishes_at_symmetric_minimum():
    for n in (3, 4, 5):
        rho = diagonal_symmetric(tau_populations(n, 0.4))
        g = grad_penalty_fd(rho, eq23_params(n))
        assert np.linalg.norm(g) < 1e-8


def test_gradient_vanishes_on_x_state_at_identity():
    rho = ghz(3)
    assert penalty_f(rho) == 0.0
    g = grad_penalty_fd(rho, LUParams(3, np.zeros(3), np.zeros(3)))
    assert np.linalg.norm(g) < 1e-8
    # the analytic gradient is exactly zero there
    assert np.linalg.norm(grad_penalty(rho, LUParams(3, np.zeros(3), np.zeros(3)))) == 0.0


def test_analytic_gradient_matches_finite_differences():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(30):
        n = int(rng.integers(2, 5))
        rho = random_density_matrix(n, int(rng.integers(1, 2 ** n + 1)), seed=int(rng.integers(1e6)))
        p = LUParams(n, rng.uniform(0, np.pi, n), rng.uniform(0, 2 * np.pi, n))
        ga = grad_penalty(rho, p)
        gf = grad_penalty_fd(rho, p)
        worst = max(worst, np.abs(ga - gf).max() / max(np.abs(gf).max(), 1e-12))
    assert worst < 1e-6


def test_objective_periodic_in_theta():
    rng = np.random.default_rng(6)
    rho = dicke_steady_state(DickeParams(3, 1.2))
    fun, _ = make_penalty_problem(rho.mat, 3)
    x = np.concatenate([rng.uniform(0, np.pi, 3), rng.uniform(0, 2 * np.pi, 3)])
    base = fun(x)
    for j in range(3):
        shifted = x.copy()
        shifted[j] += np.pi
        assert fun(shifted) == pytest.approx(base, abs=1e-12)


def test_canonicalize_ranges_and_round_trip():
    p = LUParams(2, np.array([np.pi / 4 + np.pi, -0.3]), np.array([2 * np.pi + 0.1, -0.2]))
    c = canonicalize(p)
    assert np.all((c.thetas >= 0) & (c.thetas < np.pi))
    assert np.all((c.phis >= 0) & (c.phis < 2 * np.pi))
    assert c.thetas[0] == pytest.approx(np.pi / 4)
    x = params_to_vector(p)
    back = vector_to_params(2, x)
    assert np.array_equal(back.thetas, p.thetas)
    assert np.array_equal(back.phis, p.phis)
