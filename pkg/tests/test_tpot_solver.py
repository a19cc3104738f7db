import itertools

import numpy as np
import pytest

from errors import ConfigError, ShapeMismatchError
from ot_core import Coupling, exact_ot, pd_cost_matrix
from topo_network import augment_pair
from tpot_solver import (
    TpotParams, TpotResult, CouplingPair, objective, grad_v, grad_e, term_breakdown,
    identity_pair, product_pair, solve, solve_entropic, solve_bcd, pd_wasserstein_baseline,
    parameter_sweep,
)
from tests.conftest import make_random_network

FAST = dict(eps_v=0.05, eps_e=0.05, max_iter=200, sinkhorn_max_iter=2000)


def _random_pair(rng, P, Q) -> CouplingPair:
    side, side_prime = augment_pair(P, Q)
    plan_v = rng.uniform(0.1, 1, (P.n_points, Q.n_points))
    plan_e = rng.uniform(0.1, 1, (side.n_slots, side_prime.n_slots))
    return CouplingPair(Coupling(plan_v, plan_v.sum(axis=1), plan_v.sum(axis=0)),
                        Coupling(plan_e, plan_e.sum(axis=1), plan_e.sum(axis=0)))


def _shifted(pair: CouplingPair, d_v=None, d_e=None) -> CouplingPair:
    def _move(pi, delta):
        if delta is None:
            return pi
        return Coupling(pi.plan + delta, pi.row_marginal, pi.col_marginal)
    return CouplingPair(_move(pair.pi_v, d_v), _move(pair.pi_e, d_e))


def _zero_sum_direction(rng, shape):
    d = rng.normal(size=shape)
    d -= d.mean(axis=1, keepdims=True)
    d -= d.mean(axis=0, keepdims=True)
    return d


def _naive_gw(C, C_prime, plan):
    total = 0.0
    n, n_prime = plan.shape
    for i, j, k, l in itertools.product(range(n), range(n_prime), range(n), range(n_prime)):
        total += 0.5 * (C[i, k] - C_prime[j, l]) ** 2 * plan[i, j] * plan[k, l]
    return total


@pytest.fixture
def networks(rng):
    return make_random_network(rng, 5, 3), make_random_network(rng, 6, 2)


class TestParams:
    def test_defaults_validate(self):
        TpotParams().validate()

    @pytest.mark.parametrize('kwargs', [
        {'alpha': 1.5}, {'beta': -1.0}, {'eps_v': 0.0}, {'algorithm': 'newton'}, {'max_iter': 0},
        {'sinkhorn_tol': 0.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            TpotParams(**kwargs).validate()

    def test_projection_tolerance_within_coupling_tolerance(self):
        assert 1e-9 < TpotParams().sinkhorn_tol <= 1e-6

    def test_bcd_ignores_eps(self):
        TpotParams(algorithm='bcd', eps_v=0.0).validate()

    def test_from_dict_rejects_unknown(self):
        with pytest.raises(ConfigError):
            TpotParams.from_dict({'alpha': 0.3, 'gamma': 1.0})


class TestObjective:
    def test_self_coupling_is_zero(self, rng):
        P = make_random_network(rng, 6, 3)
        assert objective(P, P, identity_pair(P), 0.5, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_pure_gw_matches_naive(self, networks, rng):
        P, Q = networks
        pair = _random_pair(rng, P, Q)
        assert objective(P, Q, pair, 1.0, 0.0) == pytest.approx(
            _naive_gw(P.affinity, Q.affinity, pair.pi_v.plan), abs=1e-10)

    def test_pure_pd_matches_lp(self, networks):
        P, Q = networks
        side, side_prime = augment_pair(P, Q)
        cost = pd_cost_matrix(P.diagram, Q.diagram)
        pi_e = exact_ot(cost, side.mass, side_prime.mass)
        pair = CouplingPair(product_pair(P, Q).pi_v, pi_e)
        assert objective(P, Q, pair, 0.0, 0.0) == pytest.approx(pi_e.cost(cost), rel=1e-12)

    def test_symmetry(self, networks, rng):
        P, Q = networks
        pair = _random_pair(rng, P, Q)
        assert objective(Q, P, pair.transpose(), 0.4, 2.0) == pytest.approx(
            objective(P, Q, pair, 0.4, 2.0), rel=1e-12)

    def test_beta_scales_cross_term(self, networks, rng):
        P, Q = networks
        pair = _random_pair(rng, P, Q)
        one = term_breakdown(P, Q, pair, 0.5, 1.0)
        three = term_breakdown(P, Q, pair, 0.5, 3.0)
        assert three['cross'] == 3.0 * one['cross']
        assert three['gw'] == one['gw'] and three['pd'] == one['pd']

    def test_nonnegative(self, networks, rng):
        P, Q = networks
        assert objective(P, Q, _random_pair(rng, P, Q), 0.5, 1.0) >= 0

    def test_shape_mismatch(self, networks):
        P, Q = networks
        with pytest.raises(ShapeMismatchError):
            objective(P, Q, product_pair(Q, P), 0.5, 1.0)


class TestGradients:
    H = 1e-5

    def _directional(self, P, Q, pair, alpha, beta, d_v=None, d_e=None):
        up = objective(P, Q, _shifted(pair, *(None if d is None else self.H * d for d in (d_v, d_e))),
                       alpha, beta)
        down = objective(P, Q, _shifted(pair, *(None if d is None else -self.H * d for d in (d_v, d_e))),
                         alpha, beta)
        return (up - down) / (2 * self.H)

    @pytest.mark.parametrize('alpha,beta', [(0.5, 1.0), (0.2, 3.0), (1.0, 0.5)])
    def test_grad_v_finite_differences(self, networks, rng, alpha, beta):
        P, Q = networks
        pair = _random_pair(rng, P, Q)
        d_v = _zero_sum_direction(rng, pair.pi_v.shape)
        analytic = float(np.sum(grad_v(P, Q, pair, alpha, beta) * d_v))
        numeric = self._directional(P, Q, pair, alpha, beta, d_v=d_v)
        assert numeric == pytest.approx(analytic, rel=1e-5)

    @pytest.mark.parametrize('alpha,beta', [(0.5, 1.0), (0.0, 2.0), (0.7, 0.0)])
    def test_grad_e_finite_differences(self, networks, rng, alpha, beta):
        P, Q = networks
        pair = _random_pair(rng, P, Q)
        d_e = _zero_sum_direction(rng, pair.pi_e.shape)
        analytic = float(np.sum(grad_e(P, Q, pair, alpha, beta) * d_e))
        numeric = self._directional(P, Q, pair, alpha, beta, d_e=d_e)
        assert numeric == pytest.approx(analytic, rel=1e-5)

    @pytest.mark.parametrize('seed', range(20))
    def test_gradients_on_random_instances(self, seed):
        rng = np.random.default_rng(seed)
        P = make_random_network(rng, int(rng.integers(3, 7)), int(rng.integers(0, 4)))
        Q = make_random_network(rng, int(rng.integers(3, 7)), int(rng.integers(1, 4)))
        alpha, beta = float(rng.uniform(0, 1)), float(rng.uniform(0, 3))
        pair = _random_pair(rng, P, Q)
        d_v = _zero_sum_direction(rng, pair.pi_v.shape)
        d_e = _zero_sum_direction(rng, pair.pi_e.shape)
        analytic_v = float(np.sum(grad_v(P, Q, pair, alpha, beta) * d_v))
        analytic_e = float(np.sum(grad_e(P, Q, pair, alpha, beta) * d_e))
        numeric_v = self._directional(P, Q, pair, alpha, beta, d_v=d_v)
        numeric_e = self._directional(P, Q, pair, alpha, beta, d_e=d_e)
        assert numeric_v == pytest.approx(analytic_v, rel=1e-5, abs=1e-9)
        assert numeric_e == pytest.approx(analytic_e, rel=1e-5, abs=1e-9)

    def test_grad_v_without_cross_term(self, networks):
        P, Q = networks
        pair = product_pair(P, Q)
        from ot_core import gw_tensor
        np.testing.assert_allclose(grad_v(P, Q, pair, 0.3, 0.0),
                                   0.6 * gw_tensor(P.affinity, Q.affinity, pair.pi_v))

    def test_grad_v_cross_term_only(self, networks, rng):
        P, Q = networks
        pair = _random_pair(rng, P, Q)
        from ot_core import coot_tensor
        side, side_prime = augment_pair(P, Q)
        np.testing.assert_allclose(grad_v(P, Q, pair, 0.0, 2.0),
                                   2.0 * coot_tensor(side.incidence, side_prime.incidence, pair.pi_e))

    def test_grad_e_without_cross_term(self, networks, rng):
        P, Q = networks
        pair = _random_pair(rng, P, Q)
        np.testing.assert_array_equal(grad_e(P, Q, pair, 0.25, 0.0),
                                      0.75 * pd_cost_matrix(P.diagram, Q.diagram))


class TestEntropic:
    def test_self_match_improves_on_product(self, rng):
        P = make_random_network(rng, 6, 2)
        params = TpotParams(**FAST)
        result = solve_entropic(P, P, params)
        start = objective(P, P, product_pair(P, P), params.alpha, params.beta)
        assert result.objective <= start + 1e-12
        assert result.objective_trace[0] == pytest.approx(start)

    def test_self_match_from_identity(self, rng):
        P = make_random_network(rng, 6, 2)
        result = solve_entropic(P, P, TpotParams(eps_v=3e-3, eps_e=1e-2, max_iter=50), init=identity_pair(P))
        assert result.objective <= 1e-2

    def test_decoupled_diagram_plan_is_lp_optimal(self, networks):
        P, Q = networks
        params = TpotParams(alpha=0.5, beta=0.0, eps_v=0.05, eps_e=1e-3, max_iter=20)
        result = solve_entropic(P, Q, params)
        side, side_prime = augment_pair(P, Q)
        cost = pd_cost_matrix(P.diagram, Q.diagram)
        best = exact_ot(cost, side.mass, side_prime.mass).cost(cost)
        assert result.term_breakdown['pd'] == pytest.approx(0.5 * best, abs=1e-6)

    def test_empty_diagrams(self, rng):
        P = make_random_network(rng, 5, 0)
        Q = make_random_network(rng, 5, 0)
        result = solve_entropic(P, Q, TpotParams(**FAST))
        assert result.pair.pi_e.shape == (1, 1)
        assert np.all(np.isfinite(result.objective_trace))
        assert result.objective_trace[-1] <= result.objective_trace[0] + 1e-9

    def test_reported_pair_is_canonical_vertex(self, networks):
        P, Q = networks
        result = solve_entropic(P, Q, TpotParams(**FAST))
        pi_v, pi_e = result.pair.pi_v, result.pair.pi_e
        assert pi_e.plan[-1, -1] == 0.0
        assert pi_v.nnz(1e-12) <= P.n_points + Q.n_points - 1
        assert pi_v.marginal_error() < 1e-9
        assert pi_e.marginal_error() < 1e-9
        assert result.objective == pytest.approx(sum(result.term_breakdown.values()))

    def test_unrounded(self, networks):
        P, Q = networks
        result = solve_entropic(P, Q, TpotParams(round_couplings=False, **FAST))
        np.testing.assert_array_equal(result.pair.pi_v.plan, result.raw_pair.pi_v.plan)

    def test_gauss_seidel_variant(self, networks):
        P, Q = networks
        result = solve_entropic(P, Q, TpotParams(gauss_seidel=True, **FAST))
        assert np.isfinite(result.objective)

    def test_max_iter_warning(self, networks, caplog):
        P, Q = networks
        result = solve_entropic(P, Q, TpotParams(max_iter=1, tol=0.0, eps_v=0.05, eps_e=0.05))
        assert not result.converged
        assert result.n_iter == 1
        assert 'max_iter' in caplog.text


class TestBCD:
    def test_identity_is_fixed_point(self, rng):
        P = make_random_network(rng, 5, 3)
        result = solve_bcd(P, P, TpotParams(algorithm='bcd'), init=identity_pair(P))
        assert result.objective <= 1e-8

    def test_decoupled_lp_in_one_iteration(self, networks):
        P, Q = networks
        result = solve_bcd(P, Q, TpotParams(algorithm='bcd', alpha=0.4, beta=0.0, max_iter=1))
        side, side_prime = augment_pair(P, Q)
        cost = pd_cost_matrix(P.diagram, Q.diagram)
        best = exact_ot(cost, side.mass, side_prime.mass).cost(cost)
        assert result.term_breakdown['pd'] == pytest.approx(0.6 * best, rel=1e-12, abs=1e-15)

    def test_half_steps_nonincreasing(self, networks):
        P, Q = networks
        result = solve_bcd(P, Q, TpotParams(algorithm='bcd'))
        steps = np.array(result.meta['half_step_trace'])
        assert np.all(np.diff(steps) <= 1e-9)

    def test_random_vertex_starts_only_improve(self, rng):
        P = make_random_network(rng, 5, 2)
        Q = make_random_network(rng, 5, 2)
        side, side_prime = augment_pair(P, Q)
        params = TpotParams(algorithm='bcd', max_iter=50)
        for _ in range(20):
            perm = rng.permutation(5)
            plan_v = np.zeros((5, 5))
            plan_v[np.arange(5), perm] = 0.2
            pi_v = Coupling(plan_v, P.point_mass, Q.point_mass)
            pi_e = exact_ot(rng.uniform(0, 1, (3, 3)), side.mass, side_prime.mass)
            init = CouplingPair(pi_v, pi_e)
            result = solve_bcd(P, Q, params, init=init)
            assert result.objective <= objective(P, Q, init, params.alpha, params.beta) + 1e-9
            assert np.all(np.diff(result.meta['half_step_trace']) <= 1e-9)

    def test_solve_dispatches(self, networks):
        P, Q = networks
        result = solve(P, Q, TpotParams(algorithm='bcd', max_iter=5))
        assert 'half_step_trace' in result.meta


class TestResult:
    def test_save_load(self, networks, tmp_path):
        P, Q = networks
        result = solve(P, Q, TpotParams(algorithm='bcd', max_iter=3))
        loaded = TpotResult.load(result.save(tmp_path / 'result.json'))
        np.testing.assert_array_equal(loaded.pair.pi_v.plan, result.pair.pi_v.plan)
        np.testing.assert_array_equal(loaded.pair.pi_e.plan, result.pair.pi_e.plan)
        assert loaded.objective == result.objective
        assert loaded.params == result.params
        assert set(loaded.term_breakdown) == {'gw', 'pd', 'cross'}


class TestBaseline:
    def test_identical_diagrams(self):
        D = np.array([[0.0, 1.0], [0.5, 2.0], [1.0, 1.3]])
        pairs, distance = pd_wasserstein_baseline(D, D)
        assert sorted(pairs) == [(0, 0), (1, 1), (2, 2)]
        assert distance == 0.0

    def test_point_against_empty(self):
        pairs, distance = pd_wasserstein_baseline(np.array([[0.0, 2.0]]), np.zeros((0, 2)))
        assert pairs == []
        assert distance == pytest.approx(np.sqrt(2.0))

    @staticmethod
    def _brute_force(D, D_prime):
        cost = pd_cost_matrix(D, D_prime)
        m, m_prime = len(D), len(D_prime)
        best = np.inf
        for k in range(min(m, m_prime) + 1):
            for rows in itertools.combinations(range(m), k):
                for cols in itertools.permutations(range(m_prime), k):
                    total = sum(cost[i, j] for i, j in zip(rows, cols))
                    total += sum(cost[i, m_prime] for i in range(m) if i not in rows)
                    total += sum(cost[m, j] for j in range(m_prime) if j not in cols)
                    best = min(best, total)
        return np.sqrt(best)

    @pytest.mark.parametrize('m,m_prime', [(1, 3), (3, 3), (4, 2), (4, 4)])
    def test_matches_enumeration(self, rng, m, m_prime):
        def diagram(k):
            birth = rng.uniform(0, 1, k)
            return np.column_stack([birth, birth + rng.uniform(0.05, 1.0, k)])
        D, D_prime = diagram(m), diagram(m_prime)
        _, distance = pd_wasserstein_baseline(D, D_prime)
        assert distance == pytest.approx(self._brute_force(D, D_prime), abs=1e-12)

    @pytest.mark.parametrize('seed', range(100))
    def test_matches_enumeration_on_random_sizes(self, seed):
        rng = np.random.default_rng(seed)

        def diagram(k):
            birth = rng.uniform(0, 1, k)
            return np.column_stack([birth, birth + rng.uniform(0.05, 1.0, k)])
        D, D_prime = diagram(int(rng.integers(0, 5))), diagram(int(rng.integers(0, 5)))
        _, distance = pd_wasserstein_baseline(D, D_prime)
        assert distance == pytest.approx(self._brute_force(D, D_prime), abs=1e-10)


def test_parameter_sweep_order(networks):
    P, Q = networks
    points = parameter_sweep(P, Q, alphas=[0.2, 0.8], betas=[0.0, 1.0],
                             base=TpotParams(algorithm='bcd', max_iter=3), num_workers=2)
    assert [(p.alpha, p.beta) for p in points] == [(0.2, 0.0), (0.2, 1.0), (0.8, 0.0), (0.8, 1.0)]
    assert all(p.result.params.alpha == p.alpha for p in points)
