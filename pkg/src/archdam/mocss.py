"""Multi-objective charged system search.

Charged particles (candidate designs) move under rank-gated Coulomb-like
attraction; the mutually non-dominated designs found along the way are
kept in a bounded charged memory (CM) pruned by objective-space crowding.
The optimizer works in per-variable normalized [0, 1] coordinates;
positions are denormalized only for evaluation.

Loop structure per iteration:
  1. competition: the worst-ranked CPs are reseeded near uniformly drawn
     CM members, jittered per variable by the decaying repair bandwidth
     so coincident particles (which exert no force on each other) cannot
     freeze the population (classic CSS elitism; replace_fraction 0
     disables it),
  2. charges from the current population's per-objective best/worst,
  3. pairwise forces, attraction gated by constrained Pareto rank (ties
     attract with probability 1/2) and sign-flipped to repulsion with
     probability 1 - attraction_prob,
  4. movement with scheduled acceleration/velocity coefficients,
  5. per-variable harmony repair of out-of-bounds entries: with
     probability cmcr copy the variable from a random CM member, then
     with probability par step it toward the same variable of a random
     rank-1 CP (step capped by a decaying bandwidth); otherwise redraw
     uniformly. An empty CM always redraws uniformly.
  6. evaluation, re-ranking, and CM update with crowding-based deletion
     that never removes a per-objective extreme member.

Randomness: a single seeded numpy Generator, consumed in a fixed order
each iteration - replacement member picks and their jitter, the
attraction-sign matrix, the rank-tie coin flips, the two per-CP movement
factors, then repair draws in row-major (particle, variable) order.
Repair draws depend on which variables violated, so identical seeds
reproduce identical runs only with identical inputs, which is the
determinism contract.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["MocssConfig", "MocssResult", "pareto_rank", "run_mocss"]


@dataclass
class MocssConfig:
    n_cps: int = 100
    iterations: int = 200
    archive_capacity: int = 100
    ka: float = 2.0
    kv: float = 2.0
    schedule: bool = True  # False uses ka/kv as plain constants
    radius: float = 1.0
    alpha: float = 1.0
    cmcr: float = 0.98
    par: float = 0.5
    par_step0: float = 0.02
    par_step_min: float = 1e-4
    attraction_prob: float = 0.8
    replace_fraction: float = 0.3
    infeasible_jitter: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.n_cps < 2:
            raise ValueError("need at least two charged particles")
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")
        if self.archive_capacity < 1:
            raise ValueError("archive capacity must be positive")
        if not 0.0 <= self.cmcr <= 1.0 or not 0.0 <= self.par <= 1.0:
            raise ValueError("cmcr and par must lie in [0, 1]")
        if self.radius <= 0:
            raise ValueError("interaction radius must be positive")
        if not 0.0 <= self.replace_fraction <= 1.0:
            raise ValueError("replace_fraction must lie in [0, 1]")


@dataclass
class MocssResult:
    positions: np.ndarray  # archive member designs, physical units
    objectives: np.ndarray
    violations: np.ndarray
    log: list
    n_evaluations: int


def pareto_rank(F: np.ndarray, violations=None) -> np.ndarray:
    """Constrained non-dominated front index per row, 1 = non-dominated.

    Feasible rows dominate infeasible ones; among infeasible rows, lower
    total violation dominates; among feasible rows, plain Pareto
    dominance on the objective values (minimization).
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    n = len(F)
    viol = np.zeros(n) if violations is None else np.asarray(violations, dtype=float)
    feas = viol == 0.0
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = (feas[:, None] & feas[None, :]) & le & lt
    dom |= feas[:, None] & ~feas[None, :]
    dom |= (~feas[:, None] & ~feas[None, :]) & (viol[:, None] < viol[None, :])
    np.fill_diagonal(dom, False)
    ranks = np.zeros(n, dtype=int)
    alive = np.ones(n, dtype=bool)
    r = 1
    while alive.any():
        front = alive & ~((dom & alive[:, None]).any(axis=0))
        if not front.any():  # cannot happen with a strict partial order
            front = alive.copy()
        ranks[front] = r
        alive &= ~front
        r += 1
    return ranks


def _deletion_weights(F: np.ndarray, alpha: float) -> np.ndarray:
    """Per-objective weights for the crowding distance: u_1 = alpha and
    u_k = u_{k-1} * fitworst_k / fitworst_{k-1} over the current union."""
    worst = F.max(axis=0)
    u = np.empty(F.shape[1])
    u[0] = alpha
    for k in range(1, len(u)):
        u[k] = u[k - 1] * (worst[k] / worst[k - 1]) if worst[k - 1] != 0.0 else u[k - 1]
    return u


def _prune_archive(X, F, viol, capacity, alpha):
    """Drop closest pairs in weighted objective space until within
    capacity, never deleting a per-objective extreme member."""
    if len(F) <= capacity:
        return X, F, viol
    u = _deletion_weights(F, alpha)
    W = F * u
    D = np.linalg.norm(W[:, None, :] - W[None, :, :], axis=2)
    np.fill_diagonal(D, np.inf)
    alive = np.ones(len(F), dtype=bool)
    n_alive = len(F)
    while n_alive > capacity:
        sub = np.where(alive)[0]
        extremes = {int(sub[F[sub, k].argmin()]) for k in range(F.shape[1])}
        Ds = D[np.ix_(sub, sub)]
        i_s, j_s = np.unravel_index(np.argmin(Ds), Ds.shape)
        i, j = int(sub[i_s]), int(sub[j_s])
        kill = j if j not in extremes else (i if i not in extremes else j)
        alive[kill] = False
        n_alive -= 1
    return X[alive], F[alive], viol[alive]


def _archive_update(aX, aF, aV, cX, cF, cV, capacity, alpha):
    X = np.vstack([aX, cX])
    F = np.vstack([aF, cF])
    V = np.concatenate([aV, cV])
    # exact duplicates add nothing and would flood the archive once the
    # competition step starts cloning members back into the population
    _, idx = np.unique(X, axis=0, return_index=True)
    idx = np.sort(idx)
    X, F, V = X[idx], F[idx], V[idx]
    ranks = pareto_rank(F, V)
    keep = ranks == 1
    return _prune_archive(X[keep], F[keep], V[keep], capacity, alpha)


def run_mocss(problem, config: MocssConfig, hook=None, hv_reference=None) -> MocssResult:
    """Run the optimizer against any problem exposing bounds and
    evaluate_batch(X) -> (objectives, violations).

    hook, when given, is called as hook(iteration, objectives, violations)
    with the archive state after every iteration. hv_reference overrides
    the problem's hypervolume corner for the progress log.
    """
    from .benchmarks import hypervolume2d

    lo, hi = problem.bounds
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    d = len(lo)
    span = hi - lo
    if hv_reference is None:
        hv_reference = getattr(problem, "hv_reference", None)

    rng = np.random.default_rng(config.seed)
    n = config.n_cps
    cap = config.archive_capacity

    X = rng.random((n, d))
    V = np.zeros((n, d))
    F, viol = problem.evaluate_batch(lo + X * span)
    n_evals = n
    ranks = pareto_rank(F, viol)

    first = ranks == 1
    aX, aF, aV = _prune_archive(
        X[first].copy(), F[first].copy(), viol[first].copy(), cap, config.alpha
    )

    log = []

    def _record(it):
        feas = aV == 0.0
        entry = {"iter": it, "archive_size": int(len(aF))}
        if feas.any():
            entry["fit1_min"] = float(aF[feas, 0].min())
            entry["fit2_min"] = float(aF[feas, 1].min())
            if hv_reference is not None:
                entry["hypervolume"] = hypervolume2d(aF[feas], hv_reference, strict=False)
            else:
                entry["hypervolume"] = None
        else:
            entry["fit1_min"] = None
            entry["fit2_min"] = None
            entry["hypervolume"] = None
        log.append(entry)
        if hook is not None:
            hook(it, aF.copy(), aV.copy())

    _record(0)

    for it in range(1, config.iterations + 1):
        t = it / config.iterations
        ka = 0.5 * config.ka * (1.0 + t) if config.schedule else config.ka
        kv = 0.5 * config.kv * (1.0 - t) if config.schedule else config.kv
        bw = config.par_step0 * (1.0 - t) + config.par_step_min

        # competition step: worst-ranked CPs are reseeded near CM members.
        # While the memory holds no feasible design the search is global:
        # the jitter stays wide and twice as many CPs are reseeded. Once
        # feasibility is found the jitter drops to the decaying repair
        # bandwidth, so the front densifies by small feasible steps.
        feasible_found = (aV == 0.0).any()
        n_rep = int(config.replace_fraction * n)
        if not feasible_found:
            n_rep = min(n, 2 * n_rep)
        if n_rep > 0 and len(aX) > 0:
            scale = bw if feasible_found else config.infeasible_jitter
            worst = np.argsort(-ranks, kind="stable")[:n_rep]
            pick = rng.integers(len(aX), size=n_rep)
            jitter = rng.uniform(-scale, scale, size=(n_rep, d))
            X[worst] = np.clip(aX[pick] + jitter, 0.0, 1.0)
            V[worst] = 0.0
            F[worst], viol[worst] = problem.evaluate_batch(lo + X[worst] * span)
            n_evals += n_rep
            ranks = pareto_rank(F, viol)

        # charges: product of per-objective normalized qualities
        q = np.ones(n)
        for k in range(F.shape[1]):
            best, worst_v = F[:, k].min(), F[:, k].max()
            if worst_v != best:
                q *= (F[:, k] - worst_v) / (best - worst_v)

        diff = X[None, :, :] - X[:, None, :]  # diff[j, i] = X_i - X_j
        r = np.linalg.norm(diff, axis=2)
        np.fill_diagonal(r, 1.0)
        a = config.radius
        # coincident particles (r = 0) take the linear branch, but both
        # branches are evaluated, so keep the inverse-square divisor off zero
        r_safe = np.where(r == 0.0, 1.0, r)
        mag = np.where(r < a, q[None, :] * r / a**3, q[None, :] / r_safe**2)
        ar = np.where(rng.random((n, n)) < config.attraction_prob, 1.0, -1.0)
        ties = rng.random((n, n)) < 0.5
        p = np.where(
            ranks[None, :] < ranks[:, None],
            1.0,
            np.where((ranks[None, :] == ranks[:, None]) & ties, 1.0, 0.0),
        )
        np.fill_diagonal(p, 0.0)
        force = np.einsum("ji,jid->jd", mag * ar * p, diff)

        rnd1 = rng.random(n)[:, None]
        rnd2 = rng.random(n)[:, None]
        X_new = rnd1 * ka * force + rnd2 * kv * V + X

        # harmony repair of out-of-bounds variables
        oob = (X_new < 0.0) | (X_new > 1.0)
        if oob.any():
            r1_rows = np.where(ranks == 1)[0]
            n_arch = len(aX)
            for jj, ii in zip(*np.where(oob)):
                if n_arch == 0:
                    X_new[jj, ii] = rng.random()
                    continue
                if rng.random() < config.cmcr:
                    v = aX[rng.integers(n_arch), ii]
                    if rng.random() < config.par:
                        target = X[r1_rows[rng.integers(len(r1_rows))], ii]
                        lim = bw * rng.random()
                        v = v + np.clip(target - v, -lim, lim)
                    X_new[jj, ii] = min(1.0, max(0.0, v))
                else:
                    X_new[jj, ii] = rng.random()

        V = X_new - X
        X = X_new
        F, viol = problem.evaluate_batch(lo + X * span)
        n_evals += n
        ranks = pareto_rank(F, viol)

        first = ranks == 1
        aX, aF, aV = _archive_update(
            aX, aF, aV, X[first], F[first], viol[first], cap, config.alpha
        )
        _record(it)

    return MocssResult(
        positions=lo + aX * span,
        objectives=aF.copy(),
        violations=aV.copy(),
        log=log,
        n_evaluations=n_evals,
    )
