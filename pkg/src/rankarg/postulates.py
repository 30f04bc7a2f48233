"""Executable postulate checkers, a seeded ABF generator and a suite runner.

Every checker quantifies exhaustively over the nodes of the framework it is
given and returns a :class:`PostulateVerdict`.  A failing verdict carries a
witness (node indices plus the scores involved) that :func:`recheck` can
replay against the same framework and ranking.

Real-valued comparisons use ``TOL``: ``x < y`` means ``x < y - TOL`` and
``x >= y`` means ``x >= y - TOL``.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .abf import ABF, AbstractAF, NodePolicy, build_attack_diagram, subset_label, validate_abf
from .entailment import entails, is_consistent
from .errors import ABFValidationError, GenerationExhausted, RankargError
from .formula import And, Atom, Formula, Iff, Imp, Neg, Or, render
from .gradual import CATEGORISER, DEFAULT_MAX_ITER, Ranking, best_score, categoriser, group_compare
from .kb import enumerate_mic, free_formulas

TOL = 1e-9
# tighter than the library default so near-ties are resolved well below TOL
SUITE_EPSILON = 1e-12

ABF_POSTULATES = (
    "void-precedence",
    "monotony",
    "counter-transitivity",
    "void-best-rank",
    "logical-void-precedence",
    "falsity",
    "freeness",
    "dominance",
    "blame",
    "consistency",
)


@dataclass(frozen=True)
class PostulateVerdict:
    postulate_id: str
    passed: bool
    counterexample: Optional[dict] = None
    instance_fingerprint: str = ""
    # formulas for which the postulate could not be evaluated (no node exists)
    inapplicable: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failing verdict needs a counterexample")

    @property
    def status(self) -> str:
        if not self.passed:
            return "fail"
        return "inapplicable" if self.inapplicable else "pass"

    def to_json(self) -> dict:
        return {
            "postulate": self.postulate_id,
            "status": self.status,
            "passed": self.passed,
            "instance": self.instance_fingerprint,
            "counterexample": self.counterexample,
            "inapplicable": list(self.inapplicable),
        }


def fingerprint(gamma: Iterable[Formula], ab: Iterable[Formula]) -> str:
    text = "gamma=" + ";".join(sorted(render(f) for f in gamma))
    text += "|ab=" + ";".join(sorted(render(f) for f in ab))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def node_label(node) -> str:
    if isinstance(node, frozenset):
        return subset_label(node)
    label = getattr(node, "label", None)
    return label() if callable(label) else str(node)


def _witness(af: AbstractAF, r: Ranking, **roles: int) -> dict:
    out: dict = {}
    for role, i in roles.items():
        out[role] = {"node": i, "label": node_label(af.nodes[i]), "score": r[i]}
    return out


def _verdict(pid: str, witness: Optional[dict], fp: str) -> PostulateVerdict:
    return PostulateVerdict(pid, witness is None, witness, fp)


# --------------------------------------------------------------------------
# abstract postulates
# --------------------------------------------------------------------------

def check_void_precedence(af: AbstractAF, r: Ranking, fp: str = "") -> PostulateVerdict:
    free = af.unattacked()
    for a, att in enumerate(af.attackers):
        if not att:
            continue
        for b in free:
            if not r[a] < r[b] - TOL:
                return _verdict("void-precedence", _witness(af, r, attacked=a, unattacked=b), fp)
    return _verdict("void-precedence", None, fp)


def check_monotony(af: AbstractAF, r: Ranking, fp: str = "") -> PostulateVerdict:
    for a, att_a in enumerate(af.attackers):
        for b, att_b in enumerate(af.attackers):
            if a != b and att_a <= att_b and r[a] < r[b] - TOL:
                return _verdict("monotony", _witness(af, r, a=a, b=b), fp)
    return _verdict("monotony", None, fp)


def check_counter_transitivity(af: AbstractAF, r: Ranking, fp: str = "") -> PostulateVerdict:
    for a, att_a in enumerate(af.attackers):
        for b, att_b in enumerate(af.attackers):
            if a == b or r[a] >= r[b] - TOL:
                continue
            if group_compare(att_b, att_a, r):
                return _verdict("counter-transitivity", _witness(af, r, a=a, b=b), fp)
    return _verdict("counter-transitivity", None, fp)


def check_void_best_rank(af: AbstractAF, r: Ranking, expected: float, fp: str = "") -> PostulateVerdict:
    for i in af.unattacked():
        if abs(r[i] - expected) > TOL:
            w = _witness(af, r, node=i)
            w["expected"] = expected
            return _verdict("void-best-rank", w, fp)
    return _verdict("void-best-rank", None, fp)


# --------------------------------------------------------------------------
# postulates over attack diagrams of an ABF
# --------------------------------------------------------------------------

def _free_vs_nonempty(pid: str, abf: ABF, af: AbstractAF, r: Ranking, fp: str) -> PostulateVerdict:
    free = free_formulas(abf)
    thetas = [i for i, node in enumerate(af.nodes) if node <= free]
    deltas = [i for i, node in enumerate(af.nodes) if node]
    if thetas and deltas:
        low = min(thetas, key=lambda i: r[i])
        high = max(deltas, key=lambda i: r[i])
        if r[low] < r[high] - TOL:
            return _verdict(pid, _witness(af, r, theta=low, delta=high), fp)
    return _verdict(pid, None, fp)


def check_logical_void_precedence(abf: ABF, af: AbstractAF, r: Ranking, fp: str = "") -> PostulateVerdict:
    """Subsets of free formulas (the empty set included) rank at least as
    high as every nonempty subset of the assumptions."""
    return _free_vs_nonempty("logical-void-precedence", abf, af, r, fp)


def check_freeness(abf: ABF, af: AbstractAF, r: Ranking, fp: str = "") -> PostulateVerdict:
    return _free_vs_nonempty("freeness", abf, af, r, fp)


def _singleton(af: AbstractAF, f: Formula) -> int:
    return af.index(frozenset([f]))


def check_falsity(abf: ABF, af: AbstractAF, r: Ranking, fp: str = "") -> PostulateVerdict:
    for phi in abf.ab:
        if is_consistent(abf.gamma + (phi,)):
            continue
        i = _singleton(af, phi)
        for psi in abf.ab:
            j = _singleton(af, psi)
            if r[i] > r[j] + TOL:
                return _verdict("falsity", _witness(af, r, phi=i, psi=j), fp)
    return _verdict("falsity", None, fp)


def check_dominance(abf: ABF, af: AbstractAF, r: Ranking, fp: str = "") -> PostulateVerdict:
    """A consistent assumption ranks no higher than the assumptions it entails."""
    for phi in abf.ab:
        base = abf.gamma + (phi,)
        if not is_consistent(base):
            continue
        i = _singleton(af, phi)
        for psi in abf.ab:
            if psi != phi and entails(base, psi):
                j = _singleton(af, psi)
                if r[j] < r[i] - TOL:
                    return _verdict("dominance", _witness(af, r, stronger=i, weaker=j), fp)
    return _verdict("dominance", None, fp)


def check_blame(abf: ABF, af: AbstractAF, r: Ranking, fp: str = "", best: float | None = None) -> PostulateVerdict:
    best = best_score(r.semantics_id) if best is None else best
    for phi in sorted(enumerate_mic(abf).union(), key=render):
        i = _singleton(af, phi)
        if not r[i] < best - TOL:
            w = _witness(af, r, node=i)
            w["best_score"] = best
            return _verdict("blame", w, fp)
    return _verdict("blame", None, fp)


def check_consistency(abf: ABF, af: AbstractAF, r: Ranking, fp: str = "", best: float | None = None) -> PostulateVerdict:
    best = best_score(r.semantics_id) if best is None else best
    if is_consistent(abf.gamma + abf.ab):
        for i in range(len(af)):
            if abs(r[i] - best) > TOL:
                w = _witness(af, r, node=i)
                w["best_score"] = best
                return _verdict("consistency", w, fp)
    return _verdict("consistency", None, fp)


def check_abf_postulates(
    abf: ABF,
    af: AbstractAF,
    r: Ranking,
    postulates: Iterable[str] = ABF_POSTULATES,
) -> list[PostulateVerdict]:
    """Run the named checkers on a powerset diagram ``af`` ranked by ``r``."""
    fp = fingerprint(abf.gamma, abf.ab)
    best = best_score(CATEGORISER)
    table: dict[str, Callable[[], PostulateVerdict]] = {
        "void-precedence": lambda: check_void_precedence(af, r, fp),
        "monotony": lambda: check_monotony(af, r, fp),
        "counter-transitivity": lambda: check_counter_transitivity(af, r, fp),
        "void-best-rank": lambda: check_void_best_rank(af, r, best, fp),
        "logical-void-precedence": lambda: check_logical_void_precedence(abf, af, r, fp),
        "falsity": lambda: check_falsity(abf, af, r, fp),
        "freeness": lambda: check_freeness(abf, af, r, fp),
        "dominance": lambda: check_dominance(abf, af, r, fp),
        "blame": lambda: check_blame(abf, af, r, fp, best),
        "consistency": lambda: check_consistency(abf, af, r, fp, best),
    }
    out = []
    for pid in postulates:
        if pid not in table:
            raise ValueError(f"unknown postulate {pid!r}")
        out.append(table[pid]())
    return out


def flatten_ranking(af: AbstractAF, r: Ranking) -> Ranking:
    """Deliberately broken ranking (every node at the best score), for testing
    that checkers and the CLI report violations."""
    best = best_score(r.semantics_id)
    return Ranking(tuple(best for _ in r.scores), r.semantics_id, r.epsilon, r.iterations)


def check_instance(
    abf: ABF,
    postulates: Iterable[str] = ABF_POSTULATES,
    epsilon: float = SUITE_EPSILON,
    max_iter: int = DEFAULT_MAX_ITER,
    corrupt: Optional[Callable[[AbstractAF, Ranking], Ranking]] = None,
) -> list[PostulateVerdict]:
    af = build_attack_diagram(abf, NodePolicy.POWERSET)
    r = categoriser(af, epsilon, max_iter)
    if corrupt is not None:
        r = corrupt(af, r)
    return check_abf_postulates(abf, af, r, postulates)


# --------------------------------------------------------------------------
# witness replay
# --------------------------------------------------------------------------

def recheck(verdict: PostulateVerdict, af: AbstractAF, r: Ranking, abf: Optional[ABF] = None) -> bool:
    """True iff the verdict's witness still exhibits a violation in ``(af, r)``."""
    w = verdict.counterexample
    if w is None:
        return False
    node = {role: w[role]["node"] for role in w if isinstance(w[role], dict)}
    pid = verdict.postulate_id
    att = af.attackers
    if pid == "void-precedence":
        a, b = node["attacked"], node["unattacked"]
        return bool(att[a]) and not att[b] and not r[a] < r[b] - TOL
    if pid == "monotony":
        a, b = node["a"], node["b"]
        return att[a] <= att[b] and r[a] < r[b] - TOL
    if pid == "counter-transitivity":
        a, b = node["a"], node["b"]
        return group_compare(att[b], att[a], r) and r[a] < r[b] - TOL
    if pid == "void-best-rank":
        i = node["node"]
        return not att[i] and abs(r[i] - w["expected"]) > TOL
    if pid in ("logical-void-precedence", "freeness"):
        t, d = node["theta"], node["delta"]
        return af.nodes[t] <= free_formulas(abf) and bool(af.nodes[d]) and r[t] < r[d] - TOL
    if pid == "falsity":
        (phi,) = af.nodes[node["phi"]]
        return not is_consistent(abf.gamma + (phi,)) and r[node["phi"]] > r[node["psi"]] + TOL
    if pid == "dominance":
        (phi,) = af.nodes[node["stronger"]]
        (psi,) = af.nodes[node["weaker"]]
        base = abf.gamma + (phi,)
        return is_consistent(base) and entails(base, psi) and r[node["weaker"]] < r[node["stronger"]] - TOL
    if pid == "blame":
        (phi,) = af.nodes[node["node"]]
        return phi in enumerate_mic(abf).union() and not r[node["node"]] < w["best_score"] - TOL
    if pid == "consistency":
        return is_consistent(abf.gamma + abf.ab) and abs(r[node["node"]] - w["best_score"]) > TOL
    raise ValueError(f"no replay rule for {pid!r}")


# --------------------------------------------------------------------------
# random instances
# --------------------------------------------------------------------------

ATOM_NAMES = ("p", "q", "r", "s")
MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 42
    max_atoms: int = 4
    ab_size: tuple[int, int] = (1, 5)
    gamma_size: tuple[int, int] = (0, 2)
    max_depth: int = 2

    def __post_init__(self):
        if not 1 <= self.max_atoms <= len(ATOM_NAMES):
            raise ValueError("max_atoms must lie in [1, 4]")
        lo, hi = self.ab_size
        if not 1 <= lo <= hi <= 5:
            raise ValueError("ab_size must lie within [1, 5]")
        lo, hi = self.gamma_size
        if not 0 <= lo <= hi <= 2:
            raise ValueError("gamma_size must lie within [0, 2]")
        if not 0 <= self.max_depth <= 2:
            raise ValueError("max_depth must lie in [0, 2]")


_BINARY = (And, Or, Imp, Iff)


def random_formula(rng: random.Random, names: tuple[str, ...], depth: int) -> Formula:
    """40% atom, 25% negation, 35% binary connective; atoms at depth 0."""
    if depth <= 0:
        return Atom(rng.choice(names))
    u = rng.random()
    if u < 0.40:
        return Atom(rng.choice(names))
    if u < 0.65:
        return Neg(random_formula(rng, names, depth - 1))
    op = rng.choice(_BINARY)
    return op(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def random_abf(params: GeneratorParams, index: int) -> ABF:
    """Deterministic ABF number ``index`` of the stream seeded by ``params.seed``.

    Candidates are redrawn until they pass :func:`validate_abf`.
    """
    rng = random.Random(f"{params.seed}:{index}")
    names = ATOM_NAMES[: params.max_atoms]
    for _ in range(MAX_ATTEMPTS):
        n_ab = rng.randint(*params.ab_size)
        n_gamma = rng.randint(*params.gamma_size)
        gamma = [random_formula(rng, names, params.max_depth) for _ in range(n_gamma)]
        ab = [random_formula(rng, names, params.max_depth) for _ in range(n_ab)]
        try:
            return validate_abf(gamma, ab)
        except ABFValidationError:
            continue
    raise GenerationExhausted(f"no valid ABF after {MAX_ATTEMPTS} draws (seed {params.seed}, index {index})")


def run_suite(
    params: GeneratorParams,
    count: int,
    postulates: Iterable[str] = ABF_POSTULATES,
    epsilon: float = SUITE_EPSILON,
    max_iter: int = DEFAULT_MAX_ITER,
    corrupt: Optional[Callable[[AbstractAF, Ranking], Ranking]] = None,
) -> list[PostulateVerdict]:
    """Check every postulate on ``count`` generated instances, in index order.

    An instance that raises gets a single failing ``instance-error`` verdict;
    the suite carries on with the next one.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    postulates = tuple(postulates)
    verdicts: list[PostulateVerdict] = []
    for index in range(count):
        try:
            abf = random_abf(params, index)
            verdicts.extend(check_instance(abf, postulates, epsilon, max_iter, corrupt))
        except RankargError as exc:
            verdicts.append(
                PostulateVerdict(
                    "instance-error",
                    False,
                    {"index": index, "error": f"{type(exc).__name__}: {exc}"},
                    f"{params.seed}:{index}",
                )
            )
    return verdicts


def summarize(verdicts: Iterable[PostulateVerdict]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for v in verdicts:
        bucket = out.setdefault(v.postulate_id, {"pass": 0, "fail": 0, "inapplicable": 0})
        bucket[v.status] += 1
    return out
