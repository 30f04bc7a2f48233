import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankarg.abf import AbstractAF, build_attack_diagram, subset_label
from rankarg.errors import NoConvergence, UnknownSemantics
from rankarg.gradual import CATEGORISER, Ranking, best_score, categoriser, group_compare
import oracles


def graph(n, edges):
    return AbstractAF.from_edges(list(range(n)), edges)


def test_self_attacker_reaches_golden_ratio():
    r = categoriser(graph(1, [(0, 0)]), 1e-6)
    assert abs(r[0] - oracles.golden_fixed_point()) < 1e-6
    assert r.iterations <= 60


def test_unattacked_nodes_score_one():
    r = categoriser(graph(3, [(0, 1)]))
    assert r[0] == 1.0 and r[2] == 1.0 and r[1] == 0.5


def test_chain():
    r = categoriser(graph(3, [(0, 1), (1, 2)]))
    assert r.scores == (1.0, 0.5, pytest.approx(2 / 3, abs=1e-6))


def test_empty_framework():
    r = categoriser(graph(0, []))
    assert r.scores == () and r.iterations == 1


def test_singletons_top_example(ex26):
    af = build_attack_diagram(ex26, "singletons-top")
    r = categoriser(af)
    got = {subset_label(n): round(r[i], 2) for i, n in enumerate(af.nodes)}
    assert got == {"{}": 1.0, "{q}": 0.71, "{p}": 0.52, "{!p}": 0.52, "{p,q,!p}": 0.41}


def test_powerset_example_against_scalar_oracle(ex26):
    af = build_attack_diagram(ex26)
    r = categoriser(af, 1e-12)
    want = oracles.powerset_example_scores()
    score = {subset_label(n): r[i] for i, n in enumerate(af.nodes)}
    assert score["{q}"] == pytest.approx(want["q"], abs=1e-9)
    for label in ("{p}", "{!p}", "{p,q}", "{q,!p}"):
        assert score[label] == pytest.approx(want["consistent"], abs=1e-9)
    for label in ("{p,!p}", "{p,q,!p}"):
        assert score[label] == pytest.approx(want["inconsistent"], abs=1e-9)


def test_equal_attacker_sets_give_identical_scores(ex26):
    af = build_attack_diagram(ex26)
    r = categoriser(af)
    i, j = af.index(frozenset(ex26.ab[:2])), af.index(frozenset(ex26.ab))
    assert r[i] == r[j]


def test_no_convergence_carries_last_iterate():
    with pytest.raises(NoConvergence) as info:
        categoriser(graph(1, [(0, 0)]), 1e-12, max_iter=5)
    assert info.value.ranking.iterations == 5
    assert len(info.value.ranking.scores) == 1
    assert info.value.residual > 1e-12


def test_bad_parameters():
    with pytest.raises(ValueError):
        categoriser(graph(1, []), 0)
    with pytest.raises(ValueError):
        categoriser(graph(1, []), 1e-6, 0)


def test_best_score():
    assert best_score(CATEGORISER) == 1.0
    with pytest.raises(UnknownSemantics):
        best_score("h-index")


def test_residuals_decrease_eventually():
    rng = random.Random(0)
    edges = [(a, b) for a in range(6) for b in range(6) if rng.random() < 0.3]
    r = categoriser(graph(6, edges), 1e-10)
    assert r.residuals[-1] < 1e-10 and len(r.residuals) == r.iterations


@given(st.integers(1, 7), st.data())
def test_fixed_point_against_plain_iteration(n, data):
    edges = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    af = graph(n, edges)
    r = categoriser(af, 1e-12)
    ref = oracles.categoriser(af.attackers, 3000)
    assert all(math.isclose(a, b, abs_tol=1e-8) for a, b in zip(r.scores, ref))
    for i, att in enumerate(af.attackers):
        assert r[i] == pytest.approx(1 / (1 + sum(r[j] for j in att)), abs=1e-9)


def _ranking(scores):
    return Ranking(tuple(scores), CATEGORISER, 1e-6, 1)


def test_group_compare_example_case(ex26):
    af = build_attack_diagram(ex26)
    r = categoriser(af)
    pnp, q = af.index(frozenset(ex26.ab[:2])), af.index(frozenset(ex26.ab[2:]))
    assert group_compare(af.attackers[pnp], af.attackers[q], r)
    assert not group_compare(af.attackers[q], af.attackers[pnp], r)


def test_group_compare_edge_cases():
    r = _ranking([0.2, 0.5, 0.9])
    assert group_compare([], [], r)
    assert group_compare([0], [], r)
    assert not group_compare([], [0], r)
    assert group_compare([2, 0], [1], r)
    assert not group_compare([1, 0], [2], r)


@given(st.data())
def test_group_compare_against_matching_oracle(data):
    n = 8
    scores = data.draw(st.lists(st.sampled_from([0.1, 0.25, 0.5, 0.75, 1.0]), min_size=n, max_size=n))
    s1 = data.draw(st.sets(st.integers(0, n - 1), max_size=5))
    s2 = data.draw(st.sets(st.integers(0, n - 1), max_size=5))
    assert group_compare(s1, s2, _ranking(scores)) == oracles.group_dominates(s1, s2, scores)
