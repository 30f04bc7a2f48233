"""Ranking-based semantics over abstract frameworks.

The categoriser assigns each argument the limit of

    cat_0(a) = 1,    cat_{i+1}(a) = 1 / (1 + sum of cat_i over attackers of a)

computed by synchronous updates from the previous full iterate.  Nodes with
the same attacker set are updated from one shared sum, so they always get
bit-identical scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .abf import AbstractAF
from .errors import NoConvergence, UnknownSemantics

CATEGORISER = "categoriser"

DEFAULT_EPSILON = 1e-6
DEFAULT_MAX_ITER = 10_000

_BEST_SCORES = {CATEGORISER: 1.0}


@dataclass(frozen=True)
class Ranking:
    """Scores indexed by node position; higher is more acceptable."""

    scores: tuple[float, ...]
    semantics_id: str
    epsilon: float
    iterations: int
    residuals: tuple[float, ...] = ()

    def __getitem__(self, i: int) -> float:
        return self.scores[i]

    def __len__(self) -> int:
        return len(self.scores)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.scores, dtype=float)


def best_score(semantics_id: str) -> float:
    """Score every unattacked argument receives under ``semantics_id``."""
    try:
        return _BEST_SCORES[semantics_id]
    except KeyError:
        raise UnknownSemantics(semantics_id) from None


def categoriser(
    af: AbstractAF, epsilon: float = DEFAULT_EPSILON, max_iter: int = DEFAULT_MAX_ITER
) -> Ranking:
    """Iterate the categoriser until the max-norm change drops below ``epsilon``.

    Raises NoConvergence (carrying the last iterate) after ``max_iter`` rounds.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    n = len(af)
    groups: dict[frozenset[int], list[int]] = {}
    for i, att in enumerate(af.attackers):
        groups.setdefault(att, []).append(i)

    group_of = np.empty(n, dtype=np.intp)
    flat: list[int] = []
    offsets: list[int] = []
    attacked_groups: list[int] = []
    for g, (att, members) in enumerate(groups.items()):
        group_of[members] = g
        if att:
            attacked_groups.append(g)
            offsets.append(len(flat))
            flat.extend(sorted(att))
    flat_idx = np.asarray(flat, dtype=np.intp)
    offsets_arr = np.asarray(offsets, dtype=np.intp)
    attacked_arr = np.asarray(attacked_groups, dtype=np.intp)

    scores = np.ones(n)
    sums = np.zeros(len(groups))
    residuals: list[float] = []
    residual = 0.0
    for it in range(1, max_iter + 1):
        if len(flat_idx):
            sums[attacked_arr] = np.add.reduceat(scores[flat_idx], offsets_arr)
        new = 1.0 / (1.0 + sums[group_of])
        residual = float(np.max(np.abs(new - scores))) if n else 0.0
        residuals.append(residual)
        scores = new
        if residual < epsilon:
            return Ranking(tuple(scores.tolist()), CATEGORISER, epsilon, it, tuple(residuals))
    last = Ranking(tuple(scores.tolist()), CATEGORISER, epsilon, max_iter, tuple(residuals))
    raise NoConvergence(last, residual)


def group_compare(s1: Iterable[int], s2: Iterable[int], r: Ranking) -> bool:
    """Whether some injection ``f: s2 -> s1`` has ``r[f(a)] >= r[a]`` for all ``a``.

    Sorting both score lists in descending order and pairing position-wise
    decides this exactly: if any injection exists, the greedy pairing works.
    """
    a = sorted((r[i] for i in s1), reverse=True)
    b = sorted((r[i] for i in s2), reverse=True)
    if len(a) < len(b):
        return False
    return all(x >= y for x, y in zip(a, b))
