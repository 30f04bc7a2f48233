"""Culpability measures.

Three measures read off the minimal inconsistent subsets (exact rationals):

* ``d``     1 if the formula belongs to some minimal inconsistent subset, else 0
* ``star``  share of minimal inconsistent subsets containing the formula
* ``c``     sum of 1/|M| over subsets M containing it, divided by the total
            size of all minimal inconsistent subsets

The ``induced`` measure turns a ranking into a culpability value:
best score minus the categoriser score of the singleton node ``{phi}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .abf import ABF, NodePolicy, build_attack_diagram
from .formula import Formula
from .gradual import CATEGORISER, DEFAULT_EPSILON, DEFAULT_MAX_ITER, best_score, categoriser
from .kb import enumerate_mic

Value = Union[Fraction, float]

MEASURES = ("d", "star", "c", "induced")


@dataclass(frozen=True)
class CulpabilityReport:
    measure_id: str
    values: dict[Formula, Value]
    abf: ABF = field(repr=False)

    def __getitem__(self, f: Formula) -> Value:
        return self.values[f]

    def items(self):
        return self.values.items()


def culp_d(abf: ABF) -> CulpabilityReport:
    culprits = enumerate_mic(abf).union()
    values = {f: Fraction(1 if f in culprits else 0) for f in abf.ab}
    return CulpabilityReport("d", values, abf)


def culp_star(abf: ABF) -> CulpabilityReport:
    mic = enumerate_mic(abf)
    total = len(mic)
    values = {}
    for f in abf.ab:
        hits = sum(1 for m in mic if f in m)
        values[f] = Fraction(hits, total) if total else Fraction(0)
    return CulpabilityReport("star", values, abf)


def culp_c(abf: ABF) -> CulpabilityReport:
    mic = enumerate_mic(abf)
    total_size = sum(len(m) for m in mic)
    values = {}
    for f in abf.ab:
        share = sum((Fraction(1, len(m)) for m in mic if f in m), Fraction(0))
        values[f] = share / total_size if total_size else Fraction(0)
    return CulpabilityReport("c", values, abf)


def induced_culpability(
    abf: ABF,
    policy: NodePolicy | str = NodePolicy.POWERSET,
    epsilon: float = DEFAULT_EPSILON,
    max_iter: int = DEFAULT_MAX_ITER,
) -> CulpabilityReport:
    """Culpability ``best_score - score({phi})`` from the categoriser ranking.

    Values are left unnormalized in ``[0, best_score]``.
    """
    af = build_attack_diagram(abf, policy)
    ranking = categoriser(af, epsilon, max_iter)
    best = best_score(CATEGORISER)
    values = {f: best - ranking[af.index(frozenset([f]))] for f in abf.ab}
    return CulpabilityReport("induced", values, abf)


def culpability(abf: ABF, measure: str, **kwargs) -> CulpabilityReport:
    if measure == "d":
        return culp_d(abf)
    if measure == "star":
        return culp_star(abf)
    if measure == "c":
        return culp_c(abf)
    if measure == "induced":
        return induced_culpability(abf, **kwargs)
    raise ValueError(f"unknown measure {measure!r}; choose from {', '.join(MEASURES)}")
