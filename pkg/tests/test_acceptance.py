"""Acceptance criteria, each at its stated tolerance.

Every test appends one ``PASS``/``FAIL`` line that is printed in the
terminal summary, then asserts.
"""

import time
from fractions import Fraction as Fr
from itertools import combinations

import pytest

from rankarg.abf import AbstractAF, attacks, build_attack_diagram, subset_label
from rankarg.culpability import culp_c, culp_d, culp_star, induced_culpability
from rankarg.formula import parse_formula, render
from rankarg.gradual import CATEGORISER, Ranking, categoriser, group_compare
from rankarg.kb import enumerate_mcs, enumerate_mic
from rankarg.postulates import ABF_POSTULATES, GeneratorParams, random_abf, run_suite, summarize
from rankarg.sequent import Rule, SequentFramework, check_sequent_postulates, subset_attack_relation
from rankarg.postulates import SUITE_EPSILON
from conftest import ACCEPTANCE_LINES, EX26, SEC4, SEC23, make_abf
import oracles

pytestmark = pytest.mark.acceptance


def record(number, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def by_label(af, r):
    return {subset_label(n): r[i] for i, n in enumerate(af.nodes)}


def test_criterion_1_singletons_top_example():
    start = time.perf_counter()
    abf = make_abf(EX26)
    af = build_attack_diagram(abf, "singletons-top")
    r = categoriser(af)
    elapsed = time.perf_counter() - start
    got = by_label(af, r)
    want = {"{}": 1.00, "{q}": 0.71, "{p}": 0.52, "{!p}": 0.52, "{p,q,!p}": 0.41}
    worst = max(abs(got[k] - v) for k, v in want.items())
    ok = set(got) == set(want) and worst <= 0.005 and elapsed < 1.0
    record(1, ok, f"max deviation {worst:.4f} (tol 0.005), {elapsed * 1000:.1f} ms")


def test_criterion_2_powerset_against_scalar_oracle():
    af = build_attack_diagram(make_abf(EX26))
    got = by_label(af, categoriser(af, 1e-12))
    oracle = oracles.powerset_example_scores()
    want = {"{}": 1.0, "{q}": oracle["q"]}
    want.update({k: oracle["consistent"] for k in ("{p}", "{!p}", "{p,q}", "{q,!p}")})
    want.update({k: oracle["inconsistent"] for k in ("{p,!p}", "{p,q,!p}")})
    worst = max(abs(got[k] - v) for k, v in want.items())
    ok = len(got) == 8 and set(got) == set(want) and worst <= 1e-6
    record(2, ok, f"8 nodes, max deviation {worst:.2e} (tol 1e-6)")


def _values(report):
    return {render(f): v for f, v in report.items()}


def test_criterion_3_culpability_exactness():
    abf = make_abf(SEC23)
    others = ["(p & !p)", "q", "r", "(!q | !r)"]
    d, star, c = _values(culp_d(abf)), _values(culp_star(abf)), _values(culp_c(abf))
    ok = (
        d == {"s": 0, **{k: 1 for k in others}}
        and star == {"s": 0, **{k: Fr(1, 2) for k in others}}
        and c == {"s": 0, "(p & !p)": Fr(1, 4), "q": Fr(1, 12), "r": Fr(1, 12), "(!q | !r)": Fr(1, 12)}
        and all(isinstance(v, Fr) for m in (d, star, c) for v in m.values())
    )
    record(3, ok, f"C^c = {{{', '.join(f'{k}: {v}' for k, v in c.items())}}}")


def test_criterion_4_discriminating_example():
    abf = make_abf(SEC4)
    star, d, c = _values(culp_star(abf)), _values(culp_d(abf)), _values(culp_c(abf))
    induced = _values(induced_culpability(abf))
    contra = "(p & !p)"
    ok = (
        star[contra] == Fr(1, 3) and star["q"] == Fr(2, 3)
        and d[contra] == d["q"] == 1
        and c[contra] == c["q"] == Fr(1, 5)
        and induced[contra] >= induced["q"]
    )
    record(4, ok, f"C^*: 1/3 vs 2/3; induced {induced[contra]:.6f} >= {induced['q']:.6f}")


def test_criterion_5_golden_fixed_point():
    af = AbstractAF.from_edges(["a"], [(0, 0)])
    r = categoriser(af, 1e-6)
    err = abs(r[0] - 0.6180339887)
    ok = err <= 1e-6 and r.iterations <= 60
    record(5, ok, f"score {r[0]:.10f}, error {err:.1e}, {r.iterations} iterations")


def test_criterion_6_abf_property_suite():
    start = time.perf_counter()
    verdicts = run_suite(GeneratorParams(seed=42, max_atoms=4, ab_size=(1, 5)), 200)
    elapsed = time.perf_counter() - start
    counts = summarize(verdicts)
    failures = sum(c["fail"] for c in counts.values())
    ok = set(counts) == set(ABF_POSTULATES) and failures == 0 and elapsed < 60
    ok = ok and all(c["pass"] == 200 for c in counts.values())
    record(6, ok, f"200 instances x {len(counts)} postulates, {failures} violations, {elapsed:.2f} s")


SEQUENT_RULE_SETS = [[r] for r in Rule] + [list(Rule)]


def test_criterion_7_sequent_suite():
    start = time.perf_counter()
    params = GeneratorParams(seed=42, ab_size=(1, 4))
    fails: dict[str, int] = {}
    total = 0
    first: dict[str, str] = {}
    for index in range(100):
        abf = random_abf(params, index)
        fw = SequentFramework(abf.gamma, abf.ab)
        for rules in SEQUENT_RULE_SETS:
            af = fw.af(rules)
            r = categoriser(af, SUITE_EPSILON)
            for v in check_sequent_postulates(abf.gamma, abf.ab, af, r):
                total += 1
                if not v.passed:
                    fails[v.postulate_id] = fails.get(v.postulate_id, 0) + 1
                    first.setdefault(v.postulate_id, f"#{index} {'+'.join(x.value for x in rules)}")
    elapsed = time.perf_counter() - start
    ok = not fails and elapsed < 120
    detail = ", ".join(f"{k} {n} (first {first[k]})" for k, n in sorted(fails.items())) or "none"
    record(7, ok, f"{total} verdicts, violations: {detail}; {elapsed:.2f} s")


def _all_subsets(items):
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


def test_criterion_8_duality_and_group_comparison():
    params = GeneratorParams(seed=42)
    duality_bad = 0
    pairs = 0
    compare_bad = 0
    for index in range(100):
        abf = random_abf(params, index)
        ab = frozenset(abf.ab)
        mic = enumerate_mic(abf).as_sets()
        mcs = enumerate_mcs(abf).as_sets()
        if {ab - m for m in mcs} != oracles.minimal_hitting_sets(mic, ab):
            duality_bad += 1
        af = build_attack_diagram(abf)
        r = categoriser(af)
        small = sorted({a for a in af.attackers if len(a) <= 5}, key=sorted)
        for s1 in small:
            for s2 in small:
                pairs += 1
                if group_compare(s1, s2, r) != oracles.group_dominates(s1, s2, r.scores):
                    compare_bad += 1
    # exhaustive over every subset pair of a 5-node pool with tied scores
    scores = (0.3, 0.5, 0.5, 0.8, 1.0)
    ranking = Ranking(scores, CATEGORISER, 1e-6, 1)
    for s1 in _all_subsets(range(5)):
        for s2 in _all_subsets(range(5)):
            pairs += 1
            if group_compare(s1, s2, ranking) != oracles.group_dominates(s1, s2, scores):
                compare_bad += 1
    ok = duality_bad == 0 and compare_bad == 0
    record(8, ok, f"duality failures {duality_bad}/100, group_compare disagreements {compare_bad}/{pairs}")


def test_criterion_9_dirdef_matches_assumption_attacks():
    params = GeneratorParams(seed=42)
    mismatches = 0
    checked = 0
    for index in range(50):
        abf = random_abf(params, index)
        rel = subset_attack_relation(SequentFramework(abf.gamma, abf.ab).af([Rule.DIRDEF]))
        for delta in _all_subsets(abf.ab):
            for theta in _all_subsets(abf.ab):
                checked += 1
                if ((delta, theta) in rel) != attacks(abf, delta, theta):
                    mismatches += 1
    record(9, mismatches == 0, f"{checked} subset pairs over 50 KBs, {mismatches} mismatches")
