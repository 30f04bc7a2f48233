"""Conclusion-support argumentation over a finite conclusion pool.

An argument is a pair ``<support, conclusion>`` with ``gamma | support``
deriving the conclusion.  The set of all arguments is infinite, so
conclusions are restricted to a pool: one representative (the
``formula_order``-least member) per ``gamma``-equivalence class among

    /\\T and !/\\T for every nonempty T within Ab,   t and !t for t in Ab,   !F

Every attack rule below only asks whether the attacker's conclusion
entails, or is equivalent to, the negation of (a conjunction of part of)
the attacked support.  The pool contains a representative of every such
negation, so restricting conclusions to it loses no attack between
supports drawn from Ab.

Attack rules (``c`` attacker conclusion, ``D`` attacked support, nonempty):

    def      gamma, c |- !/\\D
    dirdef   gamma, c |- !d                       for some d in D
    ucut     c ==_gamma !/\\D'                     for some nonempty D' within D
    canucut  c ==_gamma !/\\D
    dirucut  c ==_gamma !d                        for some d in D
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .abf import AbstractAF, subset_label, validate_abf
from .entailment import entails, equiv_under, is_consistent, premise_set
from .errors import SizeLimitExceeded
from .formula import FALSITY, Formula, Neg, conjoin, order_key, render
from .gradual import DEFAULT_MAX_ITER, Ranking, best_score, categoriser
from .kb import enumerate_mic, free_formulas
from .postulates import SUITE_EPSILON, TOL, PostulateVerdict, fingerprint

MAX_SEQUENT_AB = 6


class Rule(str, enum.Enum):
    DEF = "def"
    DIRDEF = "dirdef"
    UCUT = "ucut"
    CANUCUT = "canucut"
    DIRUCUT = "dirucut"


ALL_RULES = frozenset(Rule)


class Consistency(str, enum.Enum):
    ALLOW_INCONSISTENT = "allow-inconsistent"
    CONSISTENT_ONLY = "consistent-only"


class Minimality(str, enum.Enum):
    ALL_SUPPORTS = "all-supports"
    MINIMAL_ONLY = "minimal-only"


@dataclass(frozen=True)
class Filters:
    consistency: Consistency = Consistency.ALLOW_INCONSISTENT
    minimality: Minimality = Minimality.ALL_SUPPORTS

    @classmethod
    def parse(cls, names: Iterable[str]) -> "Filters":
        consistency, minimality = Consistency.ALLOW_INCONSISTENT, Minimality.ALL_SUPPORTS
        for name in names:
            name = name.strip().lower()
            if not name:
                continue
            if name in {c.value for c in Consistency}:
                consistency = Consistency(name)
            elif name in {m.value for m in Minimality}:
                minimality = Minimality(name)
            else:
                raise ValueError(f"unknown filter {name!r}")
        return cls(consistency, minimality)


@dataclass(frozen=True)
class SequentArgument:
    support: frozenset
    conclusion: Formula

    def label(self) -> str:
        return f"{subset_label(self.support)} => {render(self.conclusion)}"


def _check_size(ab: Sequence[Formula]) -> None:
    if len(ab) > MAX_SEQUENT_AB:
        raise SizeLimitExceeded(f"|Ab| <= {MAX_SEQUENT_AB} required, got {len(ab)}")


def _nonempty_subsets(items: Sequence[Formula]) -> list[frozenset]:
    return [frozenset(c) for k in range(1, len(items) + 1) for c in combinations(items, k)]


def canonical_pool(gamma: Iterable[Formula], ab: Sequence[Formula]) -> list[Formula]:
    """One least representative per ``gamma``-equivalence class of candidates."""
    _check_size(ab)
    gamma = premise_set(gamma)
    items = sorted(set(ab), key=order_key)
    candidates: dict[Formula, None] = {}
    for theta in _nonempty_subsets(items):
        conj = conjoin(theta)
        candidates[conj] = None
        candidates[Neg(conj)] = None
    for t in items:
        candidates[t] = None
        candidates[Neg(t)] = None
    candidates[Neg(FALSITY)] = None

    reps: list[Formula] = []
    for cand in sorted(candidates, key=order_key):
        if not any(equiv_under(gamma, rep, cand) for rep in reps):
            reps.append(cand)
    return reps


def _supports(ab: Sequence[Formula]) -> list[frozenset]:
    items = sorted(set(ab), key=order_key)
    return [frozenset()] + _nonempty_subsets(items)


def build_arguments(
    gamma: Iterable[Formula],
    ab: Sequence[Formula],
    filters: Filters = Filters(),
    pool: Optional[list[Formula]] = None,
) -> list[SequentArgument]:
    """Every ``<D, c>`` with ``D`` within Ab, ``c`` in the pool and ``gamma | D |- c``.

    Filters are applied afterwards: ``consistent-only`` drops arguments
    with an inconsistent support, then ``minimal-only`` drops an argument
    when a strictly smaller support yields the same conclusion.
    """
    _check_size(ab)
    gamma = premise_set(gamma)
    pool = canonical_pool(gamma, ab) if pool is None else pool
    args = []
    for support in _supports(ab):
        premises = gamma + tuple(support)
        if filters.consistency is Consistency.CONSISTENT_ONLY and not is_consistent(premises):
            continue
        for c in pool:
            if entails(premises, c):
                args.append(SequentArgument(support, c))
    if filters.minimality is Minimality.MINIMAL_ONLY:
        by_conclusion: dict[Formula, list[frozenset]] = {}
        for a in args:
            by_conclusion.setdefault(a.conclusion, []).append(a.support)
        args = [
            a for a in args
            if not any(s < a.support for s in by_conclusion[a.conclusion])
        ]
    return args


def rule_attacks(rule: Rule | str, attacker: SequentArgument, attacked: SequentArgument, gamma: Iterable[Formula]) -> bool:
    """Direct evaluation of one attack rule (no caching beyond entailment)."""
    rule = Rule(rule)
    gamma = premise_set(gamma)
    target = attacked.support
    if not target:
        return False
    c = attacker.conclusion
    if rule is Rule.DEF:
        return entails(gamma + (c,), Neg(conjoin(target)))
    if rule is Rule.DIRDEF:
        return any(entails(gamma + (c,), Neg(d)) for d in target)
    if rule is Rule.UCUT:
        return any(equiv_under(gamma, c, Neg(conjoin(part))) for part in _nonempty_subsets(sorted(target, key=order_key)))
    if rule is Rule.CANUCUT:
        return equiv_under(gamma, c, Neg(conjoin(target)))
    return any(equiv_under(gamma, c, Neg(d)) for d in target)


class SequentFramework:
    """Arguments of one knowledge base, with rule evaluations memoized per
    ``(conclusion, support)`` so several rule sets can share the work."""

    def __init__(self, gamma: Iterable[Formula], ab: Sequence[Formula], filters: Filters = Filters()):
        _check_size(ab)
        self.gamma = premise_set(gamma)
        self.ab = tuple(ab)
        self.filters = filters
        self.pool = canonical_pool(self.gamma, self.ab)
        self.arguments = build_arguments(self.gamma, self.ab, filters, self.pool)
        self._memo: dict[tuple, bool] = {}
        self._by_support: dict[frozenset, list[int]] = {}
        self._by_conclusion: dict[Formula, list[int]] = {}
        for i, a in enumerate(self.arguments):
            self._by_support.setdefault(a.support, []).append(i)
            self._by_conclusion.setdefault(a.conclusion, []).append(i)

    def _entails_neg(self, c: Formula, part: frozenset) -> bool:
        key = ("e", c, part)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = entails(self.gamma + (c,), Neg(conjoin(part)))
        return hit

    def _equiv_neg(self, c: Formula, part: frozenset) -> bool:
        key = ("q", c, part)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = equiv_under(self.gamma, c, Neg(conjoin(part)))
        return hit

    def fires(self, rule: Rule, c: Formula, target: frozenset) -> bool:
        if not target:
            return False
        if rule is Rule.DEF:
            return self._entails_neg(c, target)
        if rule is Rule.DIRDEF:
            return any(self._entails_neg(c, frozenset([d])) for d in target)
        if rule is Rule.UCUT:
            return any(self._equiv_neg(c, part) for part in _nonempty_subsets(sorted(target, key=order_key)))
        if rule is Rule.CANUCUT:
            return self._equiv_neg(c, target)
        return any(self._equiv_neg(c, frozenset([d])) for d in target)

    def af(self, rules: Iterable[Rule | str]) -> AbstractAF:
        rules = frozenset(Rule(x) for x in rules)
        if not rules:
            raise ValueError("at least one attack rule is required")
        attacker_sets: list[frozenset[int]] = [frozenset()] * len(self.arguments)
        for support, members in self._by_support.items():
            att: set[int] = set()
            for c, producers in self._by_conclusion.items():
                if any(self.fires(rule, c, support) for rule in rules):
                    att.update(producers)
            shared = frozenset(att)
            for i in members:
                attacker_sets[i] = shared
        return AbstractAF(tuple(self.arguments), tuple(attacker_sets))


def build_sequent_af(
    gamma: Iterable[Formula],
    ab: Sequence[Formula],
    rules: Iterable[Rule | str],
    filters: Filters = Filters(),
) -> AbstractAF:
    """Framework whose edges are the attacks fired by any rule in ``rules``."""
    return SequentFramework(gamma, ab, filters).af(rules)


# --------------------------------------------------------------------------
# postulates for conclusion-support frameworks
# --------------------------------------------------------------------------

SEQUENT_POSTULATES = (
    "seq-freeness",
    "seq-dominance",
    "seq-blame",
    "seq-consistency",
    "seq-equal-support",
)


def _w(af: AbstractAF, r: Ranking, **roles: int) -> dict:
    return {role: {"node": i, "label": af.nodes[i].label(), "score": r[i]} for role, i in roles.items()}


def _singleton_nodes(af: AbstractAF, f: Formula) -> list[int]:
    key = frozenset([f])
    return [i for i, a in enumerate(af.nodes) if a.support == key]


def check_sequent_postulates(
    gamma: Sequence[Formula],
    ab: Sequence[Formula],
    af: AbstractAF,
    r: Ranking,
) -> list[PostulateVerdict]:
    abf = validate_abf(gamma, ab)
    fp = fingerprint(abf.gamma, abf.ab)
    best = best_score(r.semantics_id)
    scores = r.as_array()
    out: list[PostulateVerdict] = []

    # freeness: supports within FREE vs every argument with nonempty support
    free = free_formulas(abf)
    psi_nodes = [i for i, a in enumerate(af.nodes) if a.support <= free]
    delta_nodes = [i for i, a in enumerate(af.nodes) if a.support]
    witness = None
    if psi_nodes and delta_nodes:
        low = min(psi_nodes, key=lambda i: scores[i])
        high = max(delta_nodes, key=lambda i: scores[i])
        if scores[low] < scores[high] - TOL:
            witness = _w(af, r, psi=low, delta=high)
    out.append(PostulateVerdict("seq-freeness", witness is None, witness, fp))

    # dominance: consistent psi entailing phi; every <{psi},.> ranks at most every <{phi},.>
    witness = None
    for psi in abf.ab:
        base = abf.gamma + (psi,)
        if witness or not is_consistent(base):
            continue
        strong = _singleton_nodes(af, psi)
        for phi in abf.ab:
            if phi == psi or not entails(base, phi):
                continue
            weak = _singleton_nodes(af, phi)
            if strong and weak:
                hi = max(strong, key=lambda i: scores[i])
                lo = min(weak, key=lambda i: scores[i])
                if scores[lo] < scores[hi] - TOL:
                    witness = _w(af, r, stronger=hi, weaker=lo)
                    break
    out.append(PostulateVerdict("seq-dominance", witness is None, witness, fp))

    # blame: members of minimal inconsistent subsets rank below the best score
    witness = None
    missing = []
    for phi in sorted(enumerate_mic(abf).union(), key=order_key):
        nodes = _singleton_nodes(af, phi)
        if not nodes:
            missing.append(render(phi))
            continue
        hi = max(nodes, key=lambda i: scores[i])
        if witness is None and not scores[hi] < best - TOL:
            witness = _w(af, r, node=hi)
            witness["best_score"] = best
    out.append(PostulateVerdict("seq-blame", witness is None, witness, fp, tuple(missing)))

    # consistency: everything at the best score when gamma | Ab is consistent
    witness = None
    if is_consistent(abf.gamma + abf.ab) and len(scores):
        worst = int(np.argmax(np.abs(scores - best)))
        if abs(scores[worst] - best) > TOL:
            witness = _w(af, r, node=worst)
            witness["best_score"] = best
    out.append(PostulateVerdict("seq-consistency", witness is None, witness, fp))

    # arguments sharing a support share their attackers, hence their score
    witness = None
    groups: dict[frozenset, list[int]] = {}
    for i, a in enumerate(af.nodes):
        groups.setdefault(a.support, []).append(i)
    for members in groups.values():
        lo = min(members, key=lambda i: scores[i])
        hi = max(members, key=lambda i: scores[i])
        if scores[hi] - scores[lo] > TOL:
            witness = _w(af, r, low=lo, high=hi)
            break
    out.append(PostulateVerdict("seq-equal-support", witness is None, witness, fp))
    return out


def sequent_postulate_suite(
    gamma: Sequence[Formula],
    ab: Sequence[Formula],
    rules: Iterable[Rule | str] = ALL_RULES,
    epsilon: float = SUITE_EPSILON,
    max_iter: int = DEFAULT_MAX_ITER,
    filters: Filters = Filters(),
    framework: Optional[SequentFramework] = None,
) -> list[PostulateVerdict]:
    """Rank the sequent framework with the categoriser and check its postulates.

    Under ``consistent-only`` a self-contradictory assumption has no
    singleton-support argument; blame then reports it as inapplicable.
    """
    framework = framework or SequentFramework(gamma, ab, filters)
    af = framework.af(rules)
    r = categoriser(af, epsilon, max_iter)
    return check_sequent_postulates(gamma, ab, af, r)


def subset_attack_relation(af: AbstractAF) -> set[tuple[frozenset, frozenset]]:
    """Pairs of supports ``(D, T)`` such that some argument on ``D`` attacks
    some argument on ``T``."""
    return {(af.nodes[a].support, af.nodes[b].support) for a, b in af.attacks}


__all__ = [
    "ALL_RULES",
    "Consistency",
    "Filters",
    "Minimality",
    "Rule",
    "SEQUENT_POSTULATES",
    "SequentArgument",
    "SequentFramework",
    "build_arguments",
    "build_sequent_af",
    "canonical_pool",
    "check_sequent_postulates",
    "rule_attacks",
    "sequent_postulate_suite",
    "subset_attack_relation",
]
