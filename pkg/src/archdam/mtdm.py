"""Multi-criteria tournament ranking of a finite Pareto set.

Each alternative plays round-robin tournaments per objective; the
per-objective win ratios are combined into one global score R through
a weighted geometric mean reflecting decision-maker priorities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Scenario",
    "RankingResult",
    "UndefinedSetError",
    "tournament_t",
    "tournament_T",
    "rank_R",
    "acceptable_mask",
]


class UndefinedSetError(ValueError):
    """Tournament ratios are undefined on sets with fewer than two members."""


@dataclass(frozen=True)
class Scenario:
    """Named priority weights, one per objective, positive and summing to 1."""

    name: str
    weights: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a non-empty 1-d sequence")
        if not (w > 0.0).all():
            raise ValueError("weights must be strictly positive")
        if abs(w.sum() - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
        object.__setattr__(self, "weights", tuple(float(x) for x in w))


def tournament_t(a, b, objective: int) -> int:
    """1 when alternative a strictly beats b in the given objective.

    Minimization throughout: a wins iff fit(b) - fit(a) > 0. Ties score 0
    for both orderings.
    """
    fa = float(np.asarray(a, dtype=float).reshape(-1)[objective])
    fb = float(np.asarray(b, dtype=float).reshape(-1)[objective])
    return 1 if fb - fa > 0.0 else 0


def tournament_T(index: int, F: np.ndarray, objective: int) -> float:
    """Win ratio of alternative ``index`` against the rest of the set.

    F holds one row of objective values per alternative. Requires at
    least two alternatives; a singleton set has no opponents.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    n = F.shape[0]
    if n < 2:
        raise UndefinedSetError("tournament ratio needs at least 2 alternatives")
    if not 0 <= index < n:
        raise IndexError(f"alternative index {index} outside 0..{n - 1}")
    col = F[:, objective]
    wins = int((col > col[index]).sum())
    return wins / (n - 1)


@dataclass(frozen=True)
class RankingResult:
    """Global scores plus the best-first ordering they induce."""

    R: np.ndarray
    order: np.ndarray

    @property
    def best(self) -> int:
        return int(self.order[0])


def rank_R(F: np.ndarray, scenario: Scenario) -> RankingResult:
    """Score every alternative and sort best-first.

    R(a) = (prod_i T_i(a)^w_i)^(1/N). Any zero win ratio zeroes R, a
    valid score. Callers filter unacceptable alternatives beforehand;
    this function ranks exactly what it is given. Ties in R break
    toward lower last objective, then lower first (for the dam pair:
    lower fit2, then lower fit1).
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    n, m = F.shape
    w = np.asarray(scenario.weights, dtype=float)
    if w.size != m:
        raise ValueError(f"scenario has {w.size} weights for {m} objectives")
    if n < 2:
        raise UndefinedSetError("ranking needs at least 2 alternatives")

    # wins[a, i] = count of b with F[b, i] > F[a, i]; strict, so duplicated
    # rows share identical scores.
    wins = (F[None, :, :] > F[:, None, :]).sum(axis=1)
    T = wins / (n - 1)
    R = np.prod(T**w, axis=1) ** (1.0 / m)

    keys = [F[:, 0]]
    for j in range(m - 1, 0, -1):
        keys.append(F[:, j])
    keys.append(-R)
    order = np.lexsort(keys)
    return RankingResult(R=R, order=order)


def acceptable_mask(F: np.ndarray) -> np.ndarray:
    """Mask of alternatives with non-positive failure margin (fit2 <= 0).

    Decision making discards designs whose worst stress state exceeds
    the failure surface; only the remainder is ranked.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    return F[:, 1] <= 0.0
