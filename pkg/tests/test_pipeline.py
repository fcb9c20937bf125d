import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from huffdp.budget_selection import BudgetConfig, epsilon_bounds
from huffdp.huffman_core import build_tree
from huffdp.pipeline import (Mechanism, RunConfig, extract_frequencies, perturb_stream,
                             run_baseline, run_huffdp, select_value_budgets)
from huffdp.privacy_leveling import assign_levels
from huffdp.synthetic import distinct_count_stream, heavy_mode_stream, table1_stream

TABLE1_LEVELS = {180: 1, 124: 3, 167: 3, 204: 3, 332: 4, 650: 4}


def test_table1_run():
    stream = table1_stream(shuffle_seed=1)
    res = run_huffdp(stream, RunConfig(seed=3))
    assert {v: r.level for v, r in res.per_value.items()} == TABLE1_LEVELS
    assert res.noise_computation_count == 6
    assert res.budget_selections == 6
    assert len(res.perturbed) == 20
    for v, out in zip(stream, res.perturbed):
        assert out == abs(v + res.per_value[v].noise)
    cfg = BudgetConfig()
    for r in res.per_value.values():
        lo, hi = epsilon_bounds(r.level, cfg)
        assert lo <= r.epsilon < hi


def test_constant_stream():
    res = run_huffdp([7.0, 7.0, 7.0, 7.0])
    assert res.per_value[7.0].level == 1
    assert res.noise_computation_count == 1
    assert len(set(res.perturbed)) == 1


def test_1400_distinct():
    stream = distinct_count_stream(2500, 1400, seed=0)
    assert len(set(stream)) == 1400
    res = run_huffdp(stream)
    assert res.noise_computation_count == 1400
    assert 800 <= res.noise_computation_count <= 2000


@pytest.mark.parametrize("mechanism", ["laplace", "gaussian", "staircase"])
def test_baseline_count(mechanism):
    stream = distinct_count_stream(2500, 800, seed=1)
    res = run_baseline(stream, mechanism, 1.0)
    assert res.noise_computation_count == 2500
    assert len(res.perturbed) == 2500


def test_laplace_baseline_scales_equal():
    cfg = RunConfig(sensitivity=2.0)
    res = run_baseline(table1_stream(), "laplace", 0.5, cfg)
    scales = {cfg.sensitivity / e for e in res.epsilons}
    assert scales == {4.0}


@pytest.mark.parametrize("eps", [0.0, -1.0])
def test_baseline_rejects_epsilon(eps):
    with pytest.raises(ValueError):
        run_baseline([1.0, 2.0], "laplace", eps)


def test_baseline_rejects_huffdp():
    with pytest.raises(ValueError):
        run_baseline([1.0], Mechanism.HUFFDP, 1.0)


@pytest.mark.parametrize("stream", [[], [1.0, float("nan")], [float("inf")]])
def test_bad_streams(stream):
    with pytest.raises(ValueError):
        run_huffdp(stream)


def test_invalid_config():
    with pytest.raises(ValueError):
        RunConfig(sensitivity=0)
    with pytest.raises(ValueError):
        RunConfig(l_max=7)  # default tables only cover five levels
    RunConfig(l_max=7, budget=BudgetConfig(selector="sine"))


def test_stage_composition_matches_fused_run():
    stream = heavy_mode_stream(500, seed=4)
    cfg = RunConfig(seed=21, budget=BudgetConfig(selector="fuzzy"))
    levels = assign_levels(build_tree(extract_frequencies(stream)), cfg.l_max)
    budgets = select_value_budgets(levels, cfg)
    staged, cache = perturb_stream(stream, budgets, cfg)
    fused = run_huffdp(stream, cfg)
    assert staged == fused.perturbed
    assert cache.computation_count == fused.noise_computation_count


def test_same_seed_same_output_and_different_seed_differs():
    stream = heavy_mode_stream(300, seed=2)
    a = run_huffdp(stream, RunConfig(seed=5))
    b = run_huffdp(stream, RunConfig(seed=5))
    c = run_huffdp(stream, RunConfig(seed=6))
    assert a.perturbed == b.perturbed
    assert a.perturbed != c.perturbed


def test_value_noise_independent_of_other_values():
    # a value keeps its budget draw and noise when unrelated values join,
    # as long as its level is unchanged
    base = [1.0] * 4 + [2.0] * 2 + [3.0]
    more = base + [9.0]
    a = run_huffdp(base, RunConfig(seed=1)).per_value
    b = run_huffdp(more, RunConfig(seed=1)).per_value
    assert a[1.0].level == b[1.0].level
    assert a[1.0] == b[1.0]


def test_no_abs():
    res = run_huffdp([0.0] * 50 + [1.0], RunConfig(seed=2, abs_fold=False))
    v0 = res.per_value[0.0].noise
    assert res.perturbed[0] == v0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 30).map(float), min_size=1, max_size=200), st.integers(0, 2**63))
def test_count_dominance(stream, seed):
    cfg = RunConfig(seed=seed)
    huff = run_huffdp(stream, cfg)
    base = run_baseline(stream, "laplace", 1.0, cfg)
    assert huff.noise_computation_count == len(set(stream))
    assert huff.noise_computation_count <= base.noise_computation_count
    assert (huff.noise_computation_count == base.noise_computation_count) == (len(set(stream)) == len(stream))
    assert all(x >= 0 for x in huff.perturbed)
    assert set(huff.per_value) == set(stream)
    assert len(huff.perturbed) == len(stream)


def test_rare_value_gets_more_noise():
    stream = table1_stream()
    rare, common = [], []
    for seed in range(1000):
        pv = run_huffdp(stream, RunConfig(seed=seed)).per_value
        rare.append(abs(pv[650.0].noise))
        common.append(abs(pv[180.0].noise))
    assert np.mean(rare) > np.mean(common)
