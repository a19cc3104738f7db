import numpy as np
import pytest

from errors import MarginalMismatchError, ShapeMismatchError, SizeCapExceededError
from ot_core import (
    Coupling, product_coupling, canonical_pi_e, restore_corner, sinkhorn, exact_ot,
    round_to_vertex, pd_cost_matrix, diagonal_cost, square_loss_tensor, gw_tensor, coot_tensor,
)


def naive_square_loss(X, Y, plan):
    n, n_prime = X.shape[0], Y.shape[0]
    out = np.zeros((n, n_prime))
    for i in range(n):
        for j in range(n_prime):
            for k in range(X.shape[1]):
                for l in range(Y.shape[1]):
                    out[i, j] += 0.5 * (X[i, k] - Y[j, l]) ** 2 * plan[k, l]
    return out


class TestCoupling:
    def test_product_coupling_marginals(self):
        pi = product_coupling(np.array([0.25, 0.75]), np.array([0.5, 0.3, 0.2]))
        assert pi.marginal_error() < 1e-15

    def test_canonical_form_round_trip(self):
        plan = np.array([[0.2, 0.3], [0.1, 0.4]])
        pi = Coupling(plan, plan.sum(axis=1), plan.sum(axis=0))
        canon = canonical_pi_e(pi)
        assert canon.plan[-1, -1] == 0.0
        assert canon.corner_mass == pytest.approx(0.4)
        assert canon.marginal_error() < 1e-15
        np.testing.assert_allclose(restore_corner(canon).plan, plan)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            Coupling(np.zeros((2, 2)), np.ones(3), np.ones(2))

    def test_dict_round_trip(self):
        pi = canonical_pi_e(product_coupling(np.full(2, 0.5), np.full(2, 0.5)))
        back = Coupling.from_dict(pi.to_dict())
        np.testing.assert_array_equal(back.plan, pi.plan)
        assert back.corner_mass == pi.corner_mass


class TestSinkhorn:
    def test_zero_cost_is_product(self):
        a = np.array([0.2, 0.3, 0.5])
        b = np.array([0.6, 0.4])
        pi = sinkhorn(np.zeros((3, 2)), a, b, eps=0.1)
        np.testing.assert_array_equal(pi.plan, np.outer(a, b))

    def test_small_eps_concentrates_on_diagonal(self):
        a = b = np.full(2, 0.5)
        pi = sinkhorn(np.array([[0.0, 1.0], [1.0, 0.0]]), a, b, eps=0.01)
        assert pi.plan[0, 1] < 0.05 and pi.plan[1, 0] < 0.05
        assert pi.marginal_error() < 1e-9

    def test_marginals_on_random_problem(self, rng):
        a = rng.uniform(0.1, 1, 6)
        a /= a.sum()
        b = rng.uniform(0.1, 1, 4)
        b /= b.sum()
        pi, info = sinkhorn(rng.uniform(0, 1, (6, 4)), a, b, eps=0.05, log=True)
        assert info['converged']
        assert pi.marginal_error() < 1e-8
        assert np.all(pi.plan >= 0)

    def test_zero_mass_rows(self):
        a = np.array([0.5, 0.0, 0.5])
        b = np.array([0.5, 0.5])
        pi = sinkhorn(np.array([[0.0, 1.0], [0.0, 0.0], [1.0, 0.0]]), a, b, eps=0.1)
        assert np.all(pi.plan[1] == 0)
        assert pi.marginal_error() < 1e-8

    def test_eps_scaling_agrees(self, rng):
        a = np.full(5, 0.2)
        b = np.full(5, 0.2)
        cost = rng.uniform(0, 1, (5, 5))
        plain, plain_info = sinkhorn(cost, a, b, eps=0.05, max_iter=20000, log=True)
        scaled, scaled_info = sinkhorn(cost, a, b, eps=0.05, max_iter=20000, eps_scaling=True, log=True)
        assert plain_info['converged'] and scaled_info['converged']
        np.testing.assert_allclose(plain.plan, scaled.plan, atol=1e-7)

    def test_mismatched_totals(self):
        with pytest.raises(MarginalMismatchError):
            sinkhorn(np.zeros((2, 2)), np.array([0.5, 0.5]), np.array([0.5, 0.6]), eps=0.1)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            sinkhorn(np.zeros((2, 3)), np.full(2, 0.5), np.full(2, 0.5), eps=0.1)

    def test_iteration_cap_warns(self, caplog):
        a = np.array([0.5, 0.5])
        b = np.array([0.1, 0.9])
        cost = np.array([[0.0, 1.0], [1.0, 0.0]])
        pi, info = sinkhorn(cost, a, b, eps=0.01, max_iter=1, tol=1e-15, log=True)
        assert not info['converged']
        assert 'No convergence' in caplog.text
        assert np.all(np.isfinite(pi.plan))


class TestExactOT:
    def test_one_by_one(self):
        pi = exact_ot(np.array([[3.0]]), np.array([2.0]), np.array([2.0]))
        assert pi.plan.tolist() == [[2.0]]

    def test_recovers_permutation(self, rng):
        perm = np.array([2, 0, 3, 1])
        cost = rng.uniform(1, 2, (4, 4))
        cost[np.arange(4), perm] = 0.0
        pi = exact_ot(cost, np.full(4, 0.25), np.full(4, 0.25))
        expected = np.zeros((4, 4))
        expected[np.arange(4), perm] = 0.25
        np.testing.assert_allclose(pi.plan, expected, atol=1e-12)

    def test_not_worse_than_sinkhorn(self, rng):
        a = np.full(5, 0.2)
        b = np.full(6, 1 / 6)
        cost = rng.uniform(0, 1, (5, 6))
        exact = exact_ot(cost, a, b)
        entropic = sinkhorn(cost, a, b, eps=1e-3)
        assert exact.cost(cost) <= entropic.cost(cost) + 1e-3
        assert exact.nnz(1e-12) <= 5 + 6 - 1
        assert exact.marginal_error() < 1e-12

    @pytest.mark.parametrize('seed', range(10))
    def test_not_worse_than_birkhoff_mixtures(self, seed):
        rng = np.random.default_rng(seed)
        n = 6
        cost = rng.uniform(0, 1, (n, n))
        best = exact_ot(cost, np.full(n, 1 / n), np.full(n, 1 / n)).cost(cost)
        for _ in range(20):
            weights = rng.dirichlet(np.ones(4))
            plan = sum(w * np.eye(n)[rng.permutation(n)] for w in weights) / n
            assert best <= np.sum(cost * plan) + 1e-12

    def test_zero_total(self):
        pi = exact_ot(np.ones((2, 2)), np.zeros(2), np.zeros(2))
        assert np.all(pi.plan == 0)

    def test_size_cap(self):
        with pytest.raises(SizeCapExceededError, match='sinkhorn'):
            exact_ot(np.zeros((4, 4)), np.full(4, 0.25), np.full(4, 0.25), size_cap=3)


class TestRoundToVertex:
    def test_vertex_input_is_kept(self):
        plan = np.eye(3) / 3
        pi = Coupling(plan, np.full(3, 1 / 3), np.full(3, 1 / 3))
        rounded = round_to_vertex(pi)
        assert np.sum(rounded.plan * plan) == pytest.approx(np.sum(plan * plan))

    def test_uniform_two_by_two(self):
        pi = product_coupling(np.full(2, 0.5), np.full(2, 0.5))
        rounded = round_to_vertex(pi)
        assert rounded.nnz(1e-12) <= 3
        assert np.sum(rounded.plan * pi.plan) == pytest.approx(0.25)

    def test_vertex_sparsity(self, rng):
        a = rng.uniform(0.1, 1, 5)
        a /= a.sum()
        b = rng.uniform(0.1, 1, 7)
        b /= b.sum()
        smooth = sinkhorn(rng.uniform(0, 1, (5, 7)), a, b, eps=0.1)
        rounded = round_to_vertex(smooth)
        assert rounded.nnz(1e-12) <= 5 + 7 - 1
        assert rounded.marginal_error() < 1e-9
        assert np.sum(rounded.plan * smooth.plan) >= np.sum(smooth.plan * smooth.plan) - 1e-9

    def test_diagram_optimum_survives_corner_exclusion(self):
        D = np.array([[0.0, 1.0], [0.0, 2.0], [0.0, 0.1]])
        D_prime = np.array([[0.0, 1.0], [0.0, 2.0]])
        a = np.array([1 / 3, 1 / 3, 1 / 3, 1.0])
        b = np.array([0.5, 0.5, 1.0])
        cost = pd_cost_matrix(D, D_prime)
        optimum = exact_ot(cost, a, b)
        rounded = round_to_vertex(optimum, exclude_corner=True)
        assert rounded.cost(cost) == pytest.approx(optimum.cost(cost), abs=1e-12)
        assert rounded.plan[-1, -1] == pytest.approx(optimum.plan[-1, -1])
        assert rounded.marginal_error() < 1e-9


class TestPdCost:
    def test_point_to_diagonal(self):
        cost = pd_cost_matrix(np.array([[0.0, 2.0]]), np.zeros((0, 2)))
        assert cost.shape == (2, 1)
        assert cost[0, 0] == 2.0
        assert cost[1, 0] == 0.0

    def test_identical_diagrams(self, rng):
        birth = rng.uniform(0, 1, 4)
        D = np.column_stack([birth, birth + 0.5])
        cost = pd_cost_matrix(D, D)
        assert np.all(np.diag(cost)[:4] == 0.0)
        assert cost[-1, -1] == 0.0
        np.testing.assert_allclose(cost[:4, -1], diagonal_cost(D))
        np.testing.assert_allclose(cost[-1, :4], diagonal_cost(D))

    def test_real_block(self):
        cost = pd_cost_matrix(np.array([[0.0, 1.0]]), np.array([[1.0, 3.0]]))
        assert cost[0, 0] == 5.0


class TestTensors:
    def test_gw_matches_naive_loop(self, rng):
        C = rng.uniform(0, 1, (5, 5))
        C = (C + C.T) / 2
        C_prime = rng.uniform(0, 1, (5, 5))
        C_prime = (C_prime + C_prime.T) / 2
        plan = rng.uniform(0, 1, (5, 5))
        plan /= plan.sum()
        np.testing.assert_allclose(gw_tensor(C, C_prime, plan), naive_square_loss(C, C_prime, plan), atol=1e-10)

    def test_gw_identity_plan(self, rng):
        C = rng.uniform(0, 1, (5, 5))
        C = (C + C.T) / 2
        np.fill_diagonal(C, 0)
        out = gw_tensor(C, C, np.eye(5) / 5)
        np.testing.assert_allclose(out, naive_square_loss(C, C, np.eye(5) / 5), atol=1e-10)
        # <L (x) pi, pi> vanishes for a self-coupling
        assert np.sum(out * np.eye(5) / 5) == pytest.approx(0.0, abs=1e-12)

    def test_zero_plan(self, rng):
        C = rng.uniform(0, 1, (4, 4))
        assert np.all(gw_tensor(C, C, np.zeros((4, 4))) == 0)

    def test_coot_zero_incidence(self):
        out = coot_tensor(np.zeros((3, 2)), np.zeros((4, 3)), np.ones((2, 3)) / 6)
        assert np.all(out == 0)

    def test_coot_rectangular_matches_naive(self, rng):
        omega = rng.uniform(0, 1, (4, 3))
        omega_prime = rng.uniform(0, 1, (5, 2))
        plan = rng.uniform(0, 1, (3, 2))
        np.testing.assert_allclose(coot_tensor(omega, omega_prime, plan),
                                   naive_square_loss(omega, omega_prime, plan), atol=1e-10)
        pi_v = rng.uniform(0, 1, (4, 5))
        np.testing.assert_allclose(coot_tensor(omega, omega_prime, pi_v, transpose=True),
                                   naive_square_loss(omega.T, omega_prime.T, pi_v), atol=1e-10)

    def test_coot_feature_to_diagonal(self):
        omega = np.array([[1.0, 0.0], [0.0, 0.0]])
        plan = np.array([[0.0, 1.0], [0.0, 0.0]])
        out = coot_tensor(omega, omega, plan)
        np.testing.assert_allclose(out, [[0.5, 0.5], [0.0, 0.0]])

    def test_coot_transposed_diagonal_slot(self):
        omega = np.array([[1.0, 0.0], [0.0, 0.0]])
        out = coot_tensor(omega, omega, np.eye(2) / 2, transpose=True)
        assert out[0, 1] == pytest.approx(0.25)
        assert out[1, 1] == 0.0
        assert out[0, 0] == 0.0

    def test_shape_check(self):
        with pytest.raises(ShapeMismatchError):
            square_loss_tensor(np.zeros((2, 3)), np.zeros((2, 2)), np.zeros((2, 2)))
