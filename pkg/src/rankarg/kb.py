"""Maximal consistent subsets, minimal inconsistent subsets and free formulas.

Both families are found by plain subset scans over bitmasks: MIC in
increasing cardinality with superset pruning, MCS in decreasing
cardinality with subset pruning.  The two scans share nothing but the
consistency test, so their hitting-set duality is a meaningful check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .abf import ABF
from .entailment import TruthTables
from .errors import SizeLimitExceeded
from .formula import Formula, order_key

MAX_AB = 16


@dataclass(frozen=True)
class SubsetFamily:
    """An antichain of assumption subsets, each sorted by ``formula_order``."""

    members: tuple[tuple[Formula, ...], ...]
    abf: ABF

    def __iter__(self) -> Iterator[tuple[Formula, ...]]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def as_sets(self) -> set[frozenset[Formula]]:
        return {frozenset(m) for m in self.members}

    def union(self) -> frozenset[Formula]:
        return frozenset(f for m in self.members for f in m)


class _Scanner:
    def __init__(self, abf: ABF):
        if len(abf.ab) > MAX_AB:
            raise SizeLimitExceeded(f"|Ab| <= {MAX_AB} required, got {len(abf.ab)}")
        self.abf = abf
        self.items = abf.sorted_ab
        tt = TruthTables.for_formulas(abf.gamma + abf.ab)
        self.base = tt.models(abf.gamma)
        self.tables = [tt.table(f) for f in self.items]
        self.n = len(self.items)

    def consistent(self, mask: int) -> bool:
        models = self.base
        for i in range(self.n):
            if mask >> i & 1:
                models &= self.tables[i]
                if not models:
                    return False
        return bool(models)

    def masks_of_size(self, k: int) -> Iterator[int]:
        for combo in combinations(range(self.n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            yield mask

    def family(self, masks: list[int]) -> SubsetFamily:
        subsets = [tuple(self.items[i] for i in range(self.n) if m >> i & 1) for m in masks]
        subsets.sort(key=lambda s: (len(s), [order_key(f) for f in s]))
        return SubsetFamily(tuple(subsets), self.abf)


def enumerate_mic(abf: ABF) -> SubsetFamily:
    """Subset-minimal ``delta`` with ``gamma | delta`` inconsistent."""
    scan = _Scanner(abf)
    found: list[int] = []
    for k in range(scan.n + 1):
        for mask in scan.masks_of_size(k):
            if any(m & mask == m for m in found):
                continue
            if not scan.consistent(mask):
                found.append(mask)
    return scan.family(found)


def enumerate_mcs(abf: ABF) -> SubsetFamily:
    """Subset-maximal ``delta`` with ``gamma | delta`` consistent."""
    scan = _Scanner(abf)
    found: list[int] = []
    for k in range(scan.n, -1, -1):
        for mask in scan.masks_of_size(k):
            if any(m & mask == mask for m in found):
                continue
            if scan.consistent(mask):
                found.append(mask)
    return scan.family(found)


def free_formulas(abf: ABF) -> frozenset[Formula]:
    """Assumptions that occur in no minimal inconsistent subset."""
    return frozenset(abf.ab) - enumerate_mic(abf).union()
