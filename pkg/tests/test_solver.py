import math

import numpy as np
import pytest

from sketchbisect import (
    Graph,
    Partition,
    SolverConfig,
    brute_force_max,
    objective_value,
    solve_sdp,
)

from conftest import dense_objective, random_test_graph


class TestSolverConfig:
    def test_auto_rank_formula(self):
        for n in range(1, 200):
            want = min(n, math.ceil(math.sqrt(2 * n)) + 1)
            assert SolverConfig().resolve_rank(n) == want

    def test_explicit_rank_capped_at_n(self):
        assert SolverConfig(rank=10).resolve_rank(4) == 4
        assert SolverConfig(rank=3).resolve_rank(100) == 3

    def test_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(rank=0)
        with pytest.raises(ValueError):
            SolverConfig(max_sweeps=0)
        with pytest.raises(ValueError):
            SolverConfig(objective_tolerance=0.0)
        with pytest.raises(ValueError):
            SolverConfig(rounding="hyperplane")


class TestSolveSdp:
    def test_two_triangles(self, two_triangles):
        graph, planted = two_triangles
        sol = solve_sdp(graph, 0.5)
        assert sol.objective == pytest.approx(12.0, abs=1e-6)
        assert sol.rank_one_gap <= 1e-6
        assert sol.rounded_cut.equals_up_to_flip(planted)
        assert sol.converged

    def test_single_edge_aligned_optimum(self):
        # with mu=0 the optimum is X = all-ones: both factor rows coincide
        k2 = Graph(2, [(0, 1)])
        sol = solve_sdp(k2, 0.0)
        assert sol.objective == pytest.approx(2.0, abs=1e-6)
        assert float(sol.factors[0] @ sol.factors[1]) == pytest.approx(1.0, abs=1e-6)
        assert sol.rank_one_gap <= 1e-6

    def test_empty_graph_mu_zero(self):
        sol = solve_sdp(Graph(5, []), 0.0)
        assert sol.objective == 0.0
        assert sol.converged
        assert sol.sweeps_used == 1

    def test_monotone_ascent_and_feasibility(self):
        rng = np.random.default_rng(3)
        for _ in range(6):
            n = int(rng.integers(4, 40))
            g = random_test_graph(rng, n, 0.4)
            sol = solve_sdp(g, 0.5, SolverConfig(seed=int(rng.integers(1 << 30))))
            hist = np.asarray(sol.sweep_objectives)
            gaps = np.diff(hist)
            assert np.all(gaps >= -1e-8 * (1.0 + np.abs(hist[1:])))
            norms = np.linalg.norm(sol.factors, axis=1)
            assert np.max(np.abs(norms - 1.0)) <= 1e-12

    def test_objective_recomputable_from_factors(self):
        rng = np.random.default_rng(11)
        for mu in (0.0, 0.5, 1.0):
            g = random_test_graph(rng, 25, 0.3)
            sol = solve_sdp(g, mu, SolverConfig(seed=7))
            x = sol.factors @ sol.factors.T
            recomputed = float(np.sum(dense_objective(g, mu) * x))
            assert sol.objective == pytest.approx(recomputed, rel=1e-10, abs=1e-10)

    def test_relaxation_dominates_brute_force(self):
        rng = np.random.default_rng(19)
        for _ in range(8):
            n = int(rng.integers(4, 13)) & ~1
            g = random_test_graph(rng, n, 0.5)
            mu = float(rng.choice([0.0, 0.3, 0.5, 1.0]))
            sol = solve_sdp(g, mu, SolverConfig(seed=int(rng.integers(1 << 30))))
            _, best_balanced = brute_force_max(g, mu, balanced_only=True)
            _, best_any = brute_force_max(g, mu, balanced_only=False)
            assert sol.objective >= best_balanced - 1e-6
            assert sol.objective >= best_any - 1e-6

    def test_canonical_sign_convention(self):
        rng = np.random.default_rng(29)
        for _ in range(5):
            g = random_test_graph(rng, 10, 0.5)
            sol = solve_sdp(g, 0.5, SolverConfig(seed=int(rng.integers(1 << 30))))
            assert sol.rounded_cut.sign_of(int(g.vertex_ids[0])) == 1

    def test_deterministic_given_seed(self, two_triangles):
        graph, _ = two_triangles
        a = solve_sdp(graph, 0.5, SolverConfig(seed=42))
        b = solve_sdp(graph, 0.5, SolverConfig(seed=42))
        assert np.array_equal(a.factors, b.factors)
        assert a.objective == b.objective
        assert a.rounded_cut == b.rounded_cut

    def test_nonconvergence_is_reported_not_raised(self, two_triangles):
        graph, _ = two_triangles
        sol = solve_sdp(graph, 0.5, SolverConfig(max_sweeps=1, objective_tolerance=1e-15))
        assert sol.converged is False
        assert sol.sweeps_used == 1

    def test_input_validation(self):
        with pytest.raises(ValueError):
            solve_sdp(Graph(1, []), 0.5)
        with pytest.raises(ValueError):
            solve_sdp(Graph(3, []), -0.1)


class TestObjectiveValue:
    def test_triangles_cut_mu_free(self, two_triangles):
        graph, planted = two_triangles
        for mu in (0.0, 0.5, 2.0):
            assert objective_value(graph, mu, planted) == 12.0

    def test_single_edge_split(self):
        k2 = Graph(2, [(0, 1)])
        part = Partition.from_sides([0], [1])
        assert objective_value(k2, 1.0, part) == -2.0

    def test_triangle_all_ones(self):
        k3 = Graph(3, [(0, 1), (0, 2), (1, 2)])
        part = Partition.from_sides([0, 1, 2], [])
        assert objective_value(k3, 0.0, part) == 6.0

    def test_matches_dense_quadratic_form(self):
        rng = np.random.default_rng(31)
        g = random_test_graph(rng, 14, 0.4)
        for _ in range(10):
            signs = np.where(rng.random(14) < 0.5, 1, -1).astype(np.int8)
            part = Partition(g.vertex_ids, signs)
            mu = float(rng.random())
            sv = signs.astype(np.float64)
            want = float(sv @ dense_objective(g, mu) @ sv)
            assert objective_value(g, mu, part) == pytest.approx(want, rel=1e-12, abs=1e-9)


class TestBruteForceMax:
    def test_triangles_balanced(self, two_triangles):
        graph, planted = two_triangles
        part, val = brute_force_max(graph, 0.0, balanced_only=True)
        assert val == 12.0
        assert part.equals_up_to_flip(planted)

    def test_k4_every_balanced_cut_ties(self):
        k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        part, val = brute_force_max(k4, 0.0, balanced_only=True)
        assert val == -4.0
        assert part.n_plus == 2
        # deterministic tie-break: lexicographically smallest with g_0 = +1,
        # scanning -1 before +1, is (+1, -1, -1, +1)
        assert part.side == {0: 1, 1: -1, 2: -1, 3: 1}

    def test_isolated_pair(self):
        _, val = brute_force_max(Graph(2, []), 0.0, balanced_only=True)
        assert val == 0.0

    def test_matches_exhaustive_python_loop(self):
        rng = np.random.default_rng(37)
        for _ in range(5):
            n = int(rng.integers(2, 9)) & ~1
            g = random_test_graph(rng, n, 0.5)
            mu = float(rng.choice([0.0, 0.5, 1.0]))
            for balanced in (False, True):
                _, val = brute_force_max(g, mu, balanced_only=balanced)
                best = -math.inf
                for k in range(1 << (n - 1)):
                    signs = np.array(
                        [1] + [1 if (k >> (n - 2 - i)) & 1 else -1 for i in range(n - 1)],
                        dtype=np.int8,
                    )
                    if balanced and signs.sum() != 0:
                        continue
                    part = Partition(g.vertex_ids, signs)
                    best = max(best, objective_value(g, mu, part))
                assert val == pytest.approx(best, abs=1e-9)

    def test_guards(self):
        with pytest.raises(ValueError):
            brute_force_max(Graph(25, []), 0.0)
        with pytest.raises(ValueError):
            brute_force_max(Graph(3, []), 0.0, balanced_only=True)
