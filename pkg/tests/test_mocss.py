import numpy as np
import pytest

from archdam import MocssConfig, get_benchmark, pareto_rank, run_mocss

from _oracles import brute_force_rank, random_population


def test_pareto_rank_matches_brute_force():
    rng = np.random.default_rng(41)
    for _ in range(60):
        F, viol = random_population(rng)
        assert np.array_equal(pareto_rank(F, viol), brute_force_rank(F, viol))


def test_pareto_rank_simple_cases():
    F = np.array([[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]])
    assert np.array_equal(pareto_rank(F), [1, 1, 1])
    F = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    assert np.array_equal(pareto_rank(F), [1, 2, 3])
    # duplicates share a rank
    F = np.array([[1.0, 1.0], [1.0, 1.0], [2.0, 0.5]])
    assert np.array_equal(pareto_rank(F), [1, 1, 1])
    # any infeasible point ranks behind every feasible one
    F = np.array([[0.0, 0.0], [5.0, 5.0]])
    viol = np.array([0.3, 0.0])
    r = pareto_rank(F, viol)
    assert r[1] < r[0]


def _small_config(**kw):
    base = dict(n_cps=16, iterations=20, archive_capacity=24, seed=5)
    base.update(kw)
    return MocssConfig(**base)


def test_determinism_same_seed():
    problem = get_benchmark("SCH")
    a = run_mocss(problem, _small_config())
    b = run_mocss(problem, _small_config())
    assert np.array_equal(a.positions, b.positions)
    assert np.array_equal(a.objectives, b.objectives)
    assert np.array_equal(a.violations, b.violations)
    assert a.n_evaluations == b.n_evaluations
    assert a.log == b.log


def test_different_seed_changes_search():
    problem = get_benchmark("ZDT1")
    a = run_mocss(problem, _small_config(seed=5))
    b = run_mocss(problem, _small_config(seed=6))
    assert a.objectives.shape != b.objectives.shape or not np.array_equal(
        a.objectives, b.objectives)


def test_zero_iterations_archive_is_initial_front():
    problem = get_benchmark("SCH")
    cfg = _small_config(iterations=0, archive_capacity=100)
    res = run_mocss(problem, cfg)
    # reproduce the initialization draw and keep its nondominated set
    rng = np.random.default_rng(cfg.seed)
    X = rng.random((cfg.n_cps, 1))
    lo, hi = problem.bounds
    F, viol = problem.evaluate_batch(lo + X * (hi - lo))
    first = pareto_rank(F, viol) == 1
    assert res.n_evaluations == cfg.n_cps
    assert np.array_equal(np.sort(res.objectives[:, 0]), np.sort(F[first][:, 0]))


def test_archive_invariants_every_iteration():
    problem = get_benchmark("ZDT1")
    cap = 20
    seen = []

    def hook(it, aF, aV):
        seen.append(it)
        assert len(aF) <= cap
        feas = aV == 0.0
        Ff = aF[feas]
        # pairwise nondomination over the feasible members
        le = (Ff[:, None, :] <= Ff[None, :, :]).all(axis=2)
        lt = (Ff[:, None, :] < Ff[None, :, :]).any(axis=2)
        dom = le & lt
        assert not dom.any()

    run_mocss(problem, _small_config(archive_capacity=cap, iterations=15), hook=hook)
    assert seen == list(range(16))  # initial archive plus every iteration


def test_positions_stay_inside_bounds():
    problem = get_benchmark("ZDT1")

    class Watch:
        name = "watch"
        bounds = problem.bounds
        hv_reference = problem.hv_reference

        def evaluate_batch(self, X):
            X = np.atleast_2d(X)
            assert np.all(X >= problem.lower - 1e-12)
            assert np.all(X <= problem.upper + 1e-12)
            return problem.evaluate_batch(X)

    res = run_mocss(Watch(), _small_config(iterations=25))
    lo, hi = problem.bounds
    assert np.all(res.positions >= lo - 1e-12) and np.all(res.positions <= hi + 1e-12)


def test_capacity_pruning_keeps_extremes():
    problem = get_benchmark("SCH")
    cfg = _small_config(n_cps=30, iterations=40, archive_capacity=10, seed=2)
    res = run_mocss(problem, cfg)
    assert len(res.objectives) <= 10
    # the prune should never drop the per-objective best corners
    f = res.objectives
    assert f[:, 0].min() < 0.05 and f[:, 1].min() < 0.05


def test_progress_log_fields():
    problem = get_benchmark("SCH")
    res = run_mocss(problem, _small_config(iterations=8), hv_reference=(4.5, 4.5))
    assert len(res.log) == 9  # initial state plus one entry per iteration
    for entry in res.log:
        assert set(entry) == {"iter", "archive_size", "fit1_min", "fit2_min", "hypervolume"}
        assert entry["archive_size"] >= 1
        assert entry["hypervolume"] is None or entry["hypervolume"] >= 0.0
    hv = [e["hypervolume"] for e in res.log]
    assert hv[-1] >= hv[0] - 1e-12


def test_evaluation_budget_accounting():
    problem = get_benchmark("SCH")
    cfg = _small_config(n_cps=12, iterations=10)
    res = run_mocss(problem, cfg)
    # init + per-iteration moves + competition reseeds; never more than
    # one full population per iteration plus the reseeded fraction
    n_rep = int(cfg.replace_fraction * cfg.n_cps)
    assert res.n_evaluations >= cfg.n_cps * (cfg.iterations + 1)
    assert res.n_evaluations <= cfg.n_cps * (cfg.iterations + 1) + 2 * n_rep * cfg.iterations


def test_config_validation():
    with pytest.raises(ValueError):
        MocssConfig(n_cps=0)
    with pytest.raises(ValueError):
        MocssConfig(iterations=-1)
    with pytest.raises(ValueError):
        MocssConfig(archive_capacity=0)
    with pytest.raises(ValueError):
        MocssConfig(replace_fraction=1.5)
    with pytest.raises(ValueError):
        MocssConfig(cmcr=-0.1)


def test_coincident_particles_are_safe():
    # a population collapsed onto one point must not divide by zero
    problem = get_benchmark("SCH")

    class Collapsed:
        name = "collapsed"
        bounds = problem.bounds
        hv_reference = problem.hv_reference

        def __init__(self):
            self.first = True

        def evaluate_batch(self, X):
            X = np.atleast_2d(X)
            if self.first:
                self.first = False
                X = np.full_like(X, 1.5)
            return problem.evaluate_batch(X)

    res = run_mocss(Collapsed(), _small_config(iterations=5))
    assert np.isfinite(res.objectives).all()
