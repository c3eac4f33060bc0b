"""Greedy insertion, baselines, and the brute-force oracle."""

import pytest

from hitmin import (
    EstimatorConfig,
    InstanceTooLarge,
    InvalidParameter,
    ShortcutSet,
    brute_force_opt,
    evaluate,
    gen_planted_two_community,
    gen_star_path_clique,
    greedy_exact,
    greedy_plus,
    iteration_budget,
    pure_random,
    top_hitting_baseline,
)


def test_iteration_budget_frozen_values():
    assert iteration_budget(2, 5, 0.1) == 15
    assert iteration_budget(2, 5, 0.1, estimated=True) == 29


def test_iteration_budget_validation():
    with pytest.raises(InvalidParameter):
        iteration_budget(0, 5, 0.1)
    with pytest.raises(InvalidParameter):
        iteration_budget(2, 5, 0.0)


def test_greedy_exact_path5(path5):
    shortcuts, trace = greedy_exact(path5, 1)
    assert shortcuts.endpoints == (0,)
    assert trace.values == [pytest.approx(2.75, abs=1e-9)]
    shortcuts, trace = greedy_exact(path5, 2)
    assert shortcuts.endpoints == (0, 4)
    assert trace.values == [pytest.approx(2.75, abs=1e-9), pytest.approx(2.0, abs=1e-9)]
    assert trace.mode == "exact"
    assert trace.budget == 2


def test_greedy_exact_validation(path5):
    with pytest.raises(InvalidParameter):
        greedy_exact(path5, 0)
    with pytest.raises(InvalidParameter):
        greedy_exact(path5, 1, epsilon=-0.2)


def test_greedy_stops_when_saturated(path3):
    # only one red node can still reach a new blue partner
    shortcuts, trace = greedy_exact(path3, 2)
    assert shortcuts.endpoints == (0,)
    assert evaluate(path3, shortcuts, objective="avg") == pytest.approx(2.0)
    assert evaluate(path3, shortcuts, objective="max") == pytest.approx(2.0)


def test_greedy_uncapped_exhausts_candidates(path5):
    shortcuts, trace = greedy_exact(path5, 1, cap_at_k=False)
    assert trace.budget == 8  # ceil(ln(125 / 0.1))
    assert shortcuts.endpoints == (0, 4)


def test_greedy_trace_strictly_decreases(path5):
    _, trace = greedy_exact(path5, 2)
    values = trace.values
    assert all(b < a for a, b in zip(values, values[1:]))


def test_lazy_matches_eager():
    for seed in range(10):
        inst = gen_planted_two_community(5, 5, 0.5, 0.2, 100 + seed)
        for k in (1, 2, 3):
            lazy_s, lazy_t = greedy_exact(inst, k, lazy=True)
            eager_s, eager_t = greedy_exact(inst, k, lazy=False)
            assert lazy_s.endpoints == eager_s.endpoints
            assert lazy_t.values == eager_t.values
            assert lazy_t.evaluations <= eager_t.evaluations


def test_greedy_plus_guarantee_needs_small_epsilon(path5):
    cfg = EstimatorConfig(epsilon=0.1, guarantee=True)
    with pytest.raises(InvalidParameter):
        greedy_plus(path5, 4, epsilon=0.1, estimator_config=cfg)


def test_greedy_plus_deterministic_and_correct(path5):
    cfg = EstimatorConfig(epsilon=0.1, delta=0.1, seed=21, guarantee=True)
    s1, t1 = greedy_plus(path5, 2, epsilon=0.1, estimator_config=cfg)
    s2, t2 = greedy_plus(path5, 2, epsilon=0.1, estimator_config=cfg)
    assert s1.endpoints == (0, 4)
    assert s1.endpoints == s2.endpoints
    assert t1.values == t2.values
    assert t1.mode == "estimated"


def test_brute_force_frozen_optima(path5):
    best, value = brute_force_opt(path5, 2)
    assert best.endpoints == (0, 4)
    assert value == pytest.approx(2.0, abs=1e-9)
    best, value = brute_force_opt(path5, 1)
    assert best.endpoints == (0,)
    assert value == pytest.approx(2.75, abs=1e-9)
    best, value = brute_force_opt(path5, 1, objective="max")
    assert best.endpoints == (0,)
    assert value == pytest.approx(4.0, abs=1e-9)
    best, value = brute_force_opt(path5, 0)
    assert best.endpoints == ()
    assert value == pytest.approx(3.5, abs=1e-9)


def test_brute_force_size_guard(path5):
    with pytest.raises(InstanceTooLarge):
        brute_force_opt(path5, 2, max_multisets=2)


def test_pure_random_is_seeded(path5):
    a = pure_random(path5, 2, 5)
    b = pure_random(path5, 2, 5)
    assert a.endpoints == b.endpoints
    assert set(a.endpoints) <= {0, 4}


def test_pure_random_warns_when_capacity_short(path5):
    with pytest.warns(UserWarning):
        s = pure_random(path5, 3, 0)
    assert len(s) == 2


def test_top_hitting_baseline(path5):
    assert top_hitting_baseline(path5, 1).endpoints == (0,)
    assert top_hitting_baseline(path5, 2).endpoints == (0, 4)
    # more budget than candidates: take them all
    assert top_hitting_baseline(path5, 9).endpoints == (0, 4)


def test_top_hitting_picks_slowest_node():
    inst = gen_star_path_clique(16)
    s = top_hitting_baseline(inst, 1)
    assert s.endpoints == (19,)  # deepest clique node


def test_greedy_never_worse_than_top_hitting():
    for seed in range(5):
        inst = gen_planted_two_community(6, 6, 0.5, 0.15, 200 + seed)
        k = 2
        g_greedy = evaluate(inst, greedy_exact(inst, k)[0])
        g_top = evaluate(inst, top_hitting_baseline(inst, k))
        assert g_greedy <= g_top + 1e-9
