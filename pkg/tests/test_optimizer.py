"""Controller internals: queue, success table, isotonic projection, solver."""

import math

import numpy as np
import pytest

from gocoexist import metrics, optimizer, rf
from gocoexist.optimizer import (
    GridEvaluator,
    SlotDecision,
    SolverConfig,
    SuccessProbTable,
    build_success_table,
    dpp_objective,
    isotonic_non_increasing,
    solve_slot,
    theoretical_bound_check,
    update_queue,
)


def test_update_queue_algebra():
    assert update_queue(0.0, True, 0.8) == 0.0
    assert update_queue(0.0, False, 0.8) == pytest.approx(0.8)
    assert update_queue(2.0, True, 0.8) == pytest.approx(1.8)
    assert update_queue(0.5, True, 0.8) == pytest.approx(0.3)
    assert update_queue(0.1, True, 0.8) == 0.0  # clamped at zero
    with pytest.raises(ValueError):
        update_queue(-1.0, True, 0.8)
    with pytest.raises(ValueError):
        update_queue(0.0, True, 1.0)


def test_virtual_queue_state_rejects_negative():
    with pytest.raises(ValueError):
        optimizer.VirtualQueueState(z=-0.1)
    assert optimizer.VirtualQueueState().z == 0.0


def _brute_isotonic_non_increasing(values):
    # O(n^2) reference: repeatedly average adjacent violating blocks
    blocks = [[float(v)] for v in values]
    changed = True
    while changed:
        changed = False
        for k in range(len(blocks) - 1):
            a = sum(blocks[k]) / len(blocks[k])
            b = sum(blocks[k + 1]) / len(blocks[k + 1])
            if a < b - 1e-15:
                blocks[k] = blocks[k] + blocks[k + 1]
                del blocks[k + 1]
                changed = True
                break
    out = []
    for blk in blocks:
        out.extend([sum(blk) / len(blk)] * len(blk))
    return np.array(out)


def test_isotonic_non_increasing_matches_reference():
    rng = np.random.default_rng(6)
    for _ in range(50):
        v = rng.random(rng.integers(1, 12))
        got = isotonic_non_increasing(v)
        want = _brute_isotonic_non_increasing(v)
        np.testing.assert_allclose(got, want, atol=1e-12)
        assert np.all(np.diff(got) <= 1e-12)


def test_isotonic_keeps_monotone_input():
    v = [0.9, 0.9, 0.7, 0.2]
    np.testing.assert_allclose(isotonic_non_increasing(v), v, atol=1e-15)


def test_success_table_lookup_and_validation():
    table = SuccessProbTable([1e-3, 1e-2], [0.9, 0.5], [100, 100], theta_th=-0.4)
    assert table.lookup(1e-2) == 0.5
    with pytest.raises(ValueError):
        table.lookup(5e-3)
    with pytest.raises(ValueError):
        SuccessProbTable([1e-3, 1e-2], [0.5, 0.9], [100, 100], theta_th=-0.4)
    with pytest.raises(ValueError):
        SuccessProbTable([1e-2, 1e-3], [0.9, 0.5], [100, 100], theta_th=-0.4)
    with pytest.raises(ValueError):
        SuccessProbTable([1e-3], [1.5], [100], theta_th=-0.4)


def test_success_table_reestimation_blends_counts():
    table = SuccessProbTable([1e-3, 1e-2], [0.9, 0.5], [100, 100], theta_th=-0.4)
    for _ in range(30):
        table.record_outcome(1, True)
    new = table.reestimated()
    assert new.p_success[0] == pytest.approx(0.9)
    assert new.p_success[1] == pytest.approx((0.5 * 100 + 30) / 130)
    assert new.n_samples.tolist() == [100, 130]


def test_success_table_reestimation_reprojects_monotone():
    table = SuccessProbTable([1e-3, 1e-2], [0.5, 0.5], [100, 100], theta_th=-0.4)
    for _ in range(100):
        table.record_outcome(0, False)  # drags level 0 below level 1
    new = table.reestimated()
    # raw would be [1/4, 1/2]; equal-weight pooling gives the midpoint
    np.testing.assert_allclose(new.p_success, [0.375, 0.375], atol=1e-12)


def test_build_success_table_noise_free_is_a_step():
    oracle = metrics.ParametricEntropyOracle(noise_std_nats=0.0)
    radio = rf.RadioConfig()
    table = build_success_table(
        oracle, radio.per_grid, -0.4, radio.packets_per_batch, 2000,
        np.random.default_rng(12),
    )
    # theta = -30 f, so the threshold sits at f = 0.4/30 ~ 1.33e-2: every grid
    # PER at or below 1e-2 passes essentially always, 2e-2 essentially never
    assert np.all(table.p_success[:-1] > 0.99)
    assert table.p_success[-1] < 0.01


def test_dpp_objective_arithmetic():
    assert dpp_objective(2.0, 0.7, True, 1e9, 1e-9) == pytest.approx(-2.4)
    assert dpp_objective(2.0, 0.7, False, 1e9, 1e-9) == pytest.approx(-1.0)
    assert dpp_objective(0.0, 1.0, True, 0.0, 1e-9) == 0.0


SMALL_RADIO = rf.RadioConfig(do_power_grid_w=(0.0, 0.02, 0.05, 0.1, 0.15, 0.2))


def _table_for(radio, theta_th=-0.4, seed=5):
    oracle = metrics.ParametricEntropyOracle()
    return build_success_table(
        oracle, radio.per_grid, theta_th, radio.packets_per_batch, 2000,
        np.random.default_rng(seed),
    )


def test_grid_evaluator_mode_restrictions():
    table = _table_for(SMALL_RADIO)
    ev = GridEvaluator(SMALL_RADIO, table, SolverConfig(mode="fixed_per", fixed_per=1e-3))
    assert ev.pers.tolist() == [1e-3]
    assert ev.powers.size == 6
    ev2 = GridEvaluator(
        SMALL_RADIO, table,
        SolverConfig(mode="fixed_both", fixed_per=1e-3, fixed_power_w=0.05),
    )
    assert ev2.pers.tolist() == [1e-3]
    assert ev2.powers.tolist() == [0.05]
    with pytest.raises(ValueError):
        GridEvaluator(SMALL_RADIO, table, SolverConfig(mode="fixed_per", fixed_per=3e-3))


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(omega=-1.0)
    with pytest.raises(ValueError):
        SolverConfig(mode="oracle")
    with pytest.raises(ValueError):
        SolverConfig(mode="fixed_per")
    with pytest.raises(ValueError):
        SolverConfig(mode="fixed_both", fixed_per=1e-3)


def _random_channel(rng):
    return rf.sample_channel(rf.Geometry(), rf.FadingParams(), rng)


def _brute_force_solve(ev, z, ch, d_comp_s, d_max_s, weight):
    """Naive double loop with first-strict-minimum tie-break."""
    best = None
    slack = d_max_s - d_comp_s
    for i in range(ev.pers.size):
        for j in range(ev.powers.size):
            s = ch.g_gg * ev.radio.go_tx_power_w / (ev.noise_w + ch.g_gd * ev.powers[j])
            cap = np.log2(1.0 + s)
            disp = np.sqrt(1.0 - 1.0 / (1.0 + s) ** 2)
            rate = max(ev.radio.bandwidth_hz * (cap - ev.backoff[i] * disp), 0.0)
            ok = slack > 0 and rate * slack >= ev.batch_bits
            s_do = ch.g_dd * ev.powers[j] / (ev.noise_w + ch.g_dg * ev.radio.go_tx_power_w)
            r_d = ev.radio.bandwidth_hz * np.log2(1.0 + s_do)
            obj = -z * weight[i] * ok - ev.solver.omega * r_d
            if best is None or obj < best[0]:
                best = (obj, i, j)
    _, i, j = best
    return int(ev.per_indices[i]), int(ev.power_indices[j])


def test_solve_matches_brute_force_enumeration():
    table = _table_for(SMALL_RADIO)
    rng = np.random.default_rng(23)
    for _ in range(200):
        mode = rng.choice(["approximate", "genie", "fixed_per"])
        if mode == "fixed_per":
            solver = SolverConfig(mode="fixed_per", fixed_per=1e-3,
                                  omega=10.0 ** rng.uniform(-11, -8))
        else:
            solver = SolverConfig(mode=mode, omega=10.0 ** rng.uniform(-11, -8))
        z = 0.0 if rng.random() < 0.3 else float(rng.exponential(2.0))
        ch = _random_channel(rng)
        d_comp = float(rng.uniform(0.02, 0.06))
        if mode == "genie":
            realized = rng.integers(0, 2, size=len(SMALL_RADIO.per_grid)).astype(float)
            realized = np.sort(realized)[::-1]  # keep the indicator non-increasing
            decision = solve_slot(z, ch, d_comp, None, solver, SMALL_RADIO, 0.045,
                                  realized_theta_ok=realized)
            ev = GridEvaluator(SMALL_RADIO, None, solver)
            weight = realized[ev.per_indices]
        else:
            decision = solve_slot(z, ch, d_comp, table, solver, SMALL_RADIO, 0.045)
            ev = GridEvaluator(SMALL_RADIO, table, solver)
            weight = ev.p_succ
        i, j = _brute_force_solve(ev, z, ch, d_comp, 0.045, weight)
        assert (decision.per_index, decision.p_d_index) == (i, j)


def test_solve_tie_break_at_zero_queue_prefers_lowest_per_max_power():
    table = _table_for(SMALL_RADIO)
    solver = SolverConfig(omega=1e-9)
    ch = _random_channel(np.random.default_rng(31))
    decision = solve_slot(0.0, ch, 0.03, table, solver, SMALL_RADIO, 0.045)
    assert decision.per == SMALL_RADIO.per_grid[0]
    assert decision.p_d_w == SMALL_RADIO.do_power_grid_w[-1]


def test_solve_tie_break_at_zero_omega_prefers_first_cell():
    table = _table_for(SMALL_RADIO)
    solver = SolverConfig(omega=0.0)
    ch = _random_channel(np.random.default_rng(37))
    # huge deadline: every cell is delay-feasible, weight has a flat plateau
    decision = solve_slot(3.0, ch, 0.03, table, solver, SMALL_RADIO, 10.0)
    assert decision.per_index == 0
    assert decision.p_d_index == 0


def test_infeasible_slack_never_claims_success_weight():
    table = _table_for(SMALL_RADIO)
    solver = SolverConfig(omega=1e-9)
    ch = _random_channel(np.random.default_rng(41))
    decision = solve_slot(5.0, ch, 0.05, table, solver, SMALL_RADIO, 0.045)
    # slack is negative: the objective reduces to the rate term alone
    assert decision.p_d_w == SMALL_RADIO.do_power_grid_w[-1]
    assert decision.per == SMALL_RADIO.per_grid[0]


def test_solve_slot_input_validation():
    table = _table_for(SMALL_RADIO)
    ch = _random_channel(np.random.default_rng(43))
    with pytest.raises(ValueError):
        solve_slot(-1.0, ch, 0.03, table, SolverConfig(), SMALL_RADIO, 0.045)
    with pytest.raises(ValueError):
        solve_slot(0.0, ch, 0.03, None, SolverConfig(), SMALL_RADIO, 0.045)
    with pytest.raises(ValueError):
        solve_slot(0.0, ch, 0.03, None, SolverConfig(mode="genie"), SMALL_RADIO, 0.045)


def test_rate_at_matches_matrix_cell():
    table = _table_for(SMALL_RADIO)
    ev = GridEvaluator(SMALL_RADIO, table, SolverConfig())
    rng = np.random.default_rng(47)
    for _ in range(20):
        ch = _random_channel(rng)
        matrix = ev.rate_matrix_go(ch)
        r_d = ev.rates_do(ch)
        i = int(rng.integers(0, ev.pers.size))
        j = int(rng.integers(0, ev.powers.size))
        decision = SlotDecision(
            per=float(ev.pers[i]), p_d_w=float(ev.powers[j]),
            per_index=int(ev.per_indices[i]), p_d_index=int(ev.power_indices[j]),
            objective=0.0,
        )
        assert ev.rate_at(ch, decision) == pytest.approx(matrix[i, j], rel=1e-12, abs=1e-9)
        assert ev.rate_do_at(ch, decision) == pytest.approx(r_d[j], rel=1e-12, abs=1e-9)


def test_theoretical_bound_check():
    t = np.arange(1, 20001, dtype=float)
    stable = theoretical_bound_check(np.sqrt(t), e_th=0.8)
    assert stable.stable
    assert stable.final_ratio == pytest.approx(math.sqrt(20000.0) / 20000.0)
    runaway = theoretical_bound_check(0.5 * t, e_th=0.8)
    assert not runaway.stable
    with pytest.raises(ValueError):
        theoretical_bound_check([], e_th=0.8)
    with pytest.raises(ValueError):
        theoretical_bound_check([1.0], e_th=0.0)
