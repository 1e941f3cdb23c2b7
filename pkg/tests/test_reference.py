import numpy as np
import pytest

from qcbp import graph_projection
from qcbp.instance import GeneratorParams, generate
from qcbp.proximal import ball_project
from qcbp.reference import prox_f_oracle, prox_g_oracle, scripted_iteration_oracle
from qcbp.solver import PrimalDualState, SolverConfig, iterate_once


class TestProxGOracle:
    def test_zero(self):
        assert prox_g_oracle(0.0, 1.0) == pytest.approx(0.0, abs=1e-4)

    def test_v2_kappa1(self):
        assert prox_g_oracle(2.0, 1.0) == pytest.approx(1.0, abs=1e-4)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            prox_g_oracle(1.0, -1.0)
        with pytest.raises(ValueError):
            prox_g_oracle(1.0, 1.0, grid_step=0.0)


class TestProxFOracle:
    def test_interior_point_trivially_dominant(self):
        y = np.zeros(3)
        v = np.array([0.1, 0.0, 0.0])
        prox_f_oracle(v, y, 1.0, projection=v, trials=100)

    def test_exterior_projection_dominates(self):
        rng = np.random.default_rng(0)
        y = rng.standard_normal(4)
        v = y + 5.0 * rng.standard_normal(4)
        proj = ball_project(v, y, 0.5)
        prox_f_oracle(v, y, 0.5, projection=proj, trials=1000, rng=rng)

    def test_large_eta_identity(self):
        y = np.zeros(2)
        v = np.array([1.0, 1.0])
        proj = ball_project(v, y, 100.0)
        assert np.array_equal(proj, v)
        prox_f_oracle(v, y, 100.0, projection=proj, trials=50)

    def test_detects_suboptimal_point(self):
        y = np.zeros(2)
        v = np.array([5.0, 0.0])
        bad = np.array([0.0, 1.0])  # feasible but far from v
        with pytest.raises(AssertionError, match="beats"):
            prox_f_oracle(v, y, 1.0, projection=bad, trials=500)


class TestScriptedIterationOracle:
    def test_zero_steps_is_initial_state(self):
        inst = generate(GeneratorParams(d=10, p_s=0.3, p_m=0.2, eta=0.5, seed=1))
        state = scripted_iteration_oracle(inst, SolverConfig(), steps=0)
        for v in (state.x, state.z, state.x_g, state.z_g, state.xt, state.zt):
            assert np.array_equal(v, np.zeros_like(v))

    def test_single_step_matches_hand_computation(self):
        from qcbp.instance import ProblemInstance

        inst = ProblemInstance(A=np.array([[2.0, 0.0]]), y=np.array([3.0]), eta=1.0)
        state = scripted_iteration_oracle(inst, SolverConfig(), steps=1)
        np.testing.assert_allclose(state.z, [2.0], atol=1e-14)
        np.testing.assert_allclose(state.z_g, [1.6], atol=1e-14)
        np.testing.assert_allclose(state.x_g, [0.8, 0.0], atol=1e-14)
        np.testing.assert_allclose(state.xt, [-0.8, 0.0], atol=1e-14)
        np.testing.assert_allclose(state.zt, [0.4], atol=1e-14)

    @pytest.mark.parametrize("seed", [2, 3, 4])
    def test_agrees_with_optimized_iteration(self, seed):
        inst = generate(GeneratorParams(d=40, p_s=0.4, p_m=0.2, eta=0.2, seed=seed))
        cfg = SolverConfig(rho=1.5)
        oracle = scripted_iteration_oracle(inst, cfg, steps=100)
        proj = graph_projection.build(inst.A)
        state = PrimalDualState.zeros(inst.d, inst.m)
        for _ in range(100):
            state = iterate_once(state, proj, inst, cfg)
        for got, want in (
            (state.x, oracle.x), (state.z, oracle.z),
            (state.x_g, oracle.x_g), (state.z_g, oracle.z_g),
            (state.xt, oracle.xt), (state.zt, oracle.zt),
        ):
            np.testing.assert_allclose(got, want, atol=1e-9)
