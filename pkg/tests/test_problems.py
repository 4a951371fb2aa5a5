# -*- coding: utf-8 -*-
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from zobopt.errors import (
    InputDomainError,
    InvalidDimensionError,
    InvalidSpecError,
    OracleFailureError,
    UnsupportedMetricError,
)
from zobopt.problems import (
    NoiseSpec,
    OracleProblem,
    build_problem,
    evaluate,
    make_problem,
    make_quad_ball,
    make_toy_grid,
    true_gradients,
    wrap_noise,
)


class TestEvaluate:
    def test_quad_ball_at_origin(self, quad_ball):
        h, c = evaluate(quad_ball, np.zeros(20))
        assert h == pytest.approx(2.0)
        assert_allclose(c, [-1.0])

    def test_deterministic_without_noise(self, quad_ball, rng):
        x = rng.standard_normal(20)
        h1, c1 = evaluate(quad_ball, x)
        h2, c2 = evaluate(quad_ball, x)
        assert h1 == h2
        assert_array_equal(c1, c2)

    def test_counter_increments_by_one(self, quad_ball):
        quad_ball.counter.tick(5)
        evaluate(quad_ball, np.zeros(20))
        assert quad_ball.counter.total == 6

    def test_exact_evaluation_uses_metrics_budget(self, quad_ball):
        quad_ball.evaluate_exact(np.zeros(20))
        assert quad_ball.counter.total == 0
        assert quad_ball.metrics_counter.total == 1

    @pytest.mark.parametrize("x", [np.zeros(3), np.full(20, np.nan), np.zeros((20, 1))])
    def test_bad_input_rejected(self, quad_ball, x):
        with pytest.raises(InputDomainError):
            evaluate(quad_ball, x)

    def test_non_finite_output_is_oracle_failure(self):
        problem = make_problem(lambda x: np.inf, lambda x: np.zeros(1), dim_x=2, y_upper=[1.0])
        with pytest.raises(OracleFailureError) as err:
            evaluate(problem, np.ones(2))
        assert_array_equal(err.value.x, np.ones(2))
        assert problem.counter.total == 1

    def test_wrong_constraint_length_is_oracle_failure(self):
        problem = make_problem(lambda x: 0.0, lambda x: np.zeros(2), dim_x=2, y_upper=[1.0])
        with pytest.raises(OracleFailureError):
            evaluate(problem, np.ones(2))


class TestQueryCounter:
    def test_log_sums_to_total(self, quad_ball):
        for n in (3, 1, 4):
            for _ in range(n):
                evaluate(quad_ball, np.zeros(20))
            quad_ball.counter.close_iteration()
        assert quad_ball.counter.per_iteration_log == [3, 1, 4]
        assert quad_ball.counter.total == sum(quad_ball.counter.per_iteration_log)

    def test_reset(self, quad_ball):
        evaluate(quad_ball, np.zeros(20))
        quad_ball.counter.close_iteration()
        quad_ball.counter.reset()
        assert quad_ball.counter.total == 0
        assert quad_ball.counter.per_iteration_log == []


class TestQuadBall:
    def test_at_center(self):
        problem = make_quad_ball(2, seed=7)
        x0 = 2.0 * problem.reference.x
        h, c = evaluate(problem, x0)
        assert h == pytest.approx(0.0)
        assert c[0] == pytest.approx(3.0)

    def test_reference_point(self, quad_ball):
        ref = quad_ball.reference
        h, c = quad_ball.evaluate_exact(ref.x)
        assert ref.h_star == 0.5
        assert h == pytest.approx(0.5)
        assert c[0] == pytest.approx(0.0, abs=1e-12)
        assert_allclose(ref.y, [0.5])

    def test_invalid_dimension(self):
        with pytest.raises(InvalidDimensionError):
            make_quad_ball(0)

    def test_true_gradients(self, quad_ball, rng):
        x = rng.standard_normal(20)
        grad_h, jac = true_gradients(quad_ball, x)
        assert jac.shape == (1, 20)
        assert_allclose(jac[0], 2.0 * x)
        assert_allclose(grad_h, x - 2.0 * quad_ball.reference.x)


class TestToyGrid:
    def test_constraint_violated_at_origin(self):
        problem = make_toy_grid(16, seed=0)
        h, c = evaluate(problem, np.zeros(16))
        assert h == 0.0
        # 10% da injeção nominal precisa ser cortada em x = 0
        assert c[0] > 0

    def test_constraint_sign_convention(self):
        problem = make_toy_grid(16, seed=2)
        P0 = float(problem.x_box[1].sum())
        _, c0 = evaluate(problem, np.zeros(16))
        # injeção P0 em x = 0 e D = 0.9 P0: sobra exatamente 0.1 P0
        assert c0[0] == pytest.approx(0.1 * P0, rel=1e-12)
        _, c_full = evaluate(problem, problem.x_box[1])
        assert c_full[0] < 0
        _, jac = true_gradients(problem, np.full(16, 0.2))
        assert np.all(jac[0] < 0)

    def test_same_seed_same_outputs(self):
        p1, p2 = make_toy_grid(12, seed=5), make_toy_grid(12, seed=5)
        rng = np.random.default_rng(0)
        lower, upper = p1.x_box
        for _ in range(100):
            x = rng.uniform(lower, upper)
            h1, c1 = evaluate(p1, x)
            h2, c2 = evaluate(p2, x)
            assert h1 == h2
            assert_array_equal(c1, c2)

    def test_penalty_vanishes_inside_voltage_band(self):
        problem = make_toy_grid(8, seed=1)
        # em x = 0 todas as tensões valem 1: sem penalidade e sem custo
        h, _ = evaluate(problem, np.zeros(8))
        assert h == 0.0
        grad_h, _ = true_gradients(problem, np.zeros(8))
        assert np.all(grad_h >= 0)

    def test_gradients_match_finite_differences(self):
        problem = make_toy_grid(10, seed=2)
        x = np.random.default_rng(3).uniform(*problem.x_box)
        grad_h, jac = true_gradients(problem, x)
        step = 1e-6
        fd_h, fd_c = np.zeros(10), np.zeros(10)
        h0, c0 = problem.evaluate_exact(x)
        for i in range(10):
            e = np.zeros(10)
            e[i] = step
            hp, cp = problem.evaluate_exact(x + e)
            hm, cm = problem.evaluate_exact(x - e)
            fd_h[i] = (hp - hm) / (2 * step)
            fd_c[i] = (cp[0] - cm[0]) / (2 * step)
        assert_allclose(grad_h, fd_h, rtol=1e-5, atol=1e-7)
        assert_allclose(jac[0], fd_c, rtol=1e-5, atol=1e-7)

    def test_invalid_dimension(self):
        with pytest.raises(InvalidDimensionError):
            make_toy_grid(1)


class TestNoise:
    def test_zero_std_is_transparent(self, quad_ball, rng):
        noisy = wrap_noise(quad_ball, NoiseSpec(std_dev=0.0))
        x = rng.standard_normal(20)
        assert evaluate(noisy, x)[0] == evaluate(quad_ball, x)[0]

    def test_sample_mean_matches_noise_free(self, quad_ball):
        std = 0.5
        noisy = wrap_noise(quad_ball, NoiseSpec.channels(objective=std, constraints=0.0, rng_seed=9))
        x = np.full(20, 0.1)
        h_true, c_true = quad_ball.evaluate_exact(x)
        n = 100_000
        samples = np.array([evaluate(noisy, x)[0] for _ in range(n)])
        assert abs(samples.mean() - h_true) <= 4 * std / np.sqrt(n)
        # canal da restrição sem ruído
        assert_array_equal(evaluate(noisy, x)[1], c_true)

    def test_metrics_stay_noise_free(self, quad_ball):
        noisy = wrap_noise(quad_ball, NoiseSpec(std_dev=5.0, rng_seed=1))
        x = np.zeros(20)
        assert noisy.evaluate_exact(x)[0] == quad_ball.evaluate_exact(x)[0]

    def test_negative_std_rejected(self):
        with pytest.raises(InvalidSpecError):
            NoiseSpec(std_dev=-1.0)

    def test_wrong_channel_count_rejected(self, quad_ball):
        with pytest.raises(InvalidSpecError):
            wrap_noise(quad_ball, NoiseSpec(std_dev=(1.0, 1.0, 1.0)))

    def test_clone_restarts_noise_stream(self, quad_ball):
        noisy = wrap_noise(quad_ball, NoiseSpec(std_dev=1.0, rng_seed=4))
        first = evaluate(noisy, np.zeros(20))[0]
        evaluate(noisy, np.zeros(20))
        assert evaluate(noisy.clone(), np.zeros(20))[0] == first
        assert noisy.clone().counter.total == 0


class TestMakeProblem:
    def test_equalities_expand_to_pairs(self):
        problem = make_problem(
            objective=lambda x: float(x @ x),
            constraints=lambda x: np.array([x[0] - 1.0]),
            dim_x=2,
            y_upper=[1.0, 1.0, 1.0],
            equalities=lambda x: np.array([x[0] + x[1]]),
        )
        _, c = evaluate(problem, np.array([1.0, 2.0]))
        assert_allclose(c, [0.0, 3.0, -3.0])

    def test_without_gradients_metrics_unsupported(self):
        problem = make_problem(lambda x: 0.0, None, dim_x=2, y_upper=[])
        assert not problem.has_true_grads
        with pytest.raises(UnsupportedMetricError):
            true_gradients(problem, np.zeros(2))

    def test_invalid_box(self):
        with pytest.raises(InvalidSpecError):
            OracleProblem(2, [1.0], lambda x: (0.0, np.zeros(1)), x_box=(np.ones(2), np.zeros(2)))

    def test_build_problem_unknown_kind(self):
        with pytest.raises(InvalidSpecError):
            build_problem("nope", 4)
