"""Simple contrapositive assumption-based frameworks and their attack diagrams.

The contrary of an assumption ``psi`` is always ``!psi``.  A set of
assumptions ``delta`` attacks ``theta`` when the strict premises together
with ``delta`` derive the contrary of some member of ``theta``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .entailment import entails, is_consistent, premise_set
from .errors import (
    ContraryConditionViolated,
    DuplicateAssumption,
    EmptyAssumptions,
    GammaAbOverlap,
    SizeLimitExceeded,
    StrictPremisesInconsistent,
)
from .formula import Formula, Neg, order_key, render

MAX_POWERSET_AB = 12


@dataclass(frozen=True)
class ABF:
    """Strict premises ``gamma`` and defeasible assumptions ``ab``.

    Build instances through :func:`validate_abf`; the constructor itself
    does not check the framework conditions.
    """

    gamma: tuple[Formula, ...]
    ab: tuple[Formula, ...]

    @staticmethod
    def contrary(psi: Formula) -> Formula:
        return Neg(psi)

    @cached_property
    def sorted_ab(self) -> tuple[Formula, ...]:
        return tuple(sorted(self.ab, key=order_key))

    def describe(self) -> str:
        strict = ", ".join(render(f) for f in self.gamma)
        assume = ", ".join(render(f) for f in self.ab)
        return f"Gamma={{{strict}}} Ab={{{assume}}}"


def validate_abf(gamma: Iterable[Formula], ab: Sequence[Formula]) -> ABF:
    """Check the framework conditions and return an :class:`ABF`.

    Raises StrictPremisesInconsistent, EmptyAssumptions, GammaAbOverlap,
    DuplicateAssumption or ContraryConditionViolated.
    """
    gamma = premise_set(gamma)
    ab = tuple(ab)
    if not ab:
        raise EmptyAssumptions("the set of assumptions must be nonempty")
    seen: set[Formula] = set()
    for f in ab:
        if f in seen:
            raise DuplicateAssumption(f"assumption {render(f)} listed twice")
        seen.add(f)
    overlap = [f for f in ab if f in set(gamma)]
    if overlap:
        raise GammaAbOverlap(
            "formulas both strict and defeasible: " + ", ".join(render(f) for f in overlap)
        )
    if not is_consistent(gamma):
        raise StrictPremisesInconsistent("strict premises are inconsistent")
    for psi in ab:
        if is_consistent([psi]) and not entails([], psi):
            if entails([psi], Neg(psi)) or entails([Neg(psi)], psi):
                raise ContraryConditionViolated(f"{render(psi)} and its contrary are interderivable")
    return ABF(gamma=gamma, ab=ab)


def attacks(abf: ABF, delta: Iterable[Formula], theta: Iterable[Formula]) -> bool:
    """Whether ``delta`` attacks some member of ``theta``."""
    premises = abf.gamma + tuple(delta)
    return any(entails(premises, abf.contrary(psi)) for psi in theta)


class NodePolicy(str, enum.Enum):
    POWERSET = "powerset"
    SINGLETONS_TOP = "singletons-top"


@dataclass(frozen=True, eq=False)
class AbstractAF:
    """Argumentation framework with attacks stored as per-node attacker sets.

    ``attackers[i]`` is the set of node indices attacking node ``i``.
    Nodes sharing an attacker set may share the same frozenset object.
    """

    nodes: tuple[Hashable, ...]
    attackers: tuple[frozenset[int], ...]

    def __post_init__(self):
        n = len(self.nodes)
        if len(self.attackers) != n:
            raise ValueError("one attacker set per node required")
        if len(set(self.nodes)) != n:
            raise ValueError("node labels must be unique")
        for att in set(self.attackers):
            if att and (min(att) < 0 or max(att) >= n):
                raise ValueError("attack endpoint out of range")

    @classmethod
    def from_edges(cls, nodes: Sequence[Hashable], edges: Iterable[tuple[int, int]]) -> "AbstractAF":
        incoming: list[set[int]] = [set() for _ in nodes]
        for a, b in edges:
            if not (0 <= a < len(nodes) and 0 <= b < len(nodes)):
                raise ValueError(f"attack ({a}, {b}) out of range")
            incoming[b].add(a)
        return cls(tuple(nodes), tuple(frozenset(s) for s in incoming))

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def _index(self) -> dict:
        return {label: i for i, label in enumerate(self.nodes)}

    def index(self, label: Hashable) -> int:
        return self._index[label]

    @cached_property
    def attacks(self) -> tuple[tuple[int, int], ...]:
        """All ``(attacker, attacked)`` pairs in sorted order."""
        return tuple(sorted((a, b) for b, att in enumerate(self.attackers) for a in att))

    def unattacked(self) -> list[int]:
        return [i for i, att in enumerate(self.attackers) if not att]


def _diagram_nodes(abf: ABF, policy: NodePolicy) -> list[frozenset]:
    items = abf.sorted_ab
    if policy is NodePolicy.POWERSET:
        if len(items) > MAX_POWERSET_AB:
            raise SizeLimitExceeded(
                f"powerset diagram needs |Ab| <= {MAX_POWERSET_AB}, got {len(items)}"
            )
        return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]
    nodes = [frozenset()] + [frozenset([f]) for f in items]
    if len(items) > 1:
        nodes.append(frozenset(items))
    return nodes


def build_attack_diagram(abf: ABF, policy: NodePolicy | str = NodePolicy.POWERSET) -> AbstractAF:
    """Attack diagram over subsets of the assumptions.

    ``powerset`` uses every subset (including the empty set);
    ``singletons-top`` uses the empty set, each singleton and ``Ab`` itself.
    Node order depends only on the assumption *set*, not its listing order.
    """
    policy = NodePolicy(policy)
    nodes = _diagram_nodes(abf, policy)
    # derives[psi] = nodes whose premises derive !psi
    derives = {
        psi: frozenset(
            i for i, delta in enumerate(nodes) if entails(abf.gamma + tuple(delta), abf.contrary(psi))
        )
        for psi in abf.sorted_ab
    }
    attacker_sets = [
        frozenset().union(*(derives[psi] for psi in theta)) if theta else frozenset()
        for theta in nodes
    ]
    return AbstractAF(tuple(nodes), tuple(attacker_sets))


def subset_label(subset: Iterable[Formula]) -> str:
    """``{p,!p}``-style label, members in canonical order."""
    return "{" + ",".join(render(f) for f in sorted(subset, key=order_key)) + "}"


__all__ = [
    "ABF",
    "AbstractAF",
    "NodePolicy",
    "attacks",
    "build_attack_diagram",
    "subset_label",
    "validate_abf",
]
