from fractions import Fraction as Fr

import pytest

from rankarg.culpability import MEASURES, culp_c, culp_d, culp_star, culpability, induced_culpability
from rankarg.formula import render
from rankarg.postulates import GeneratorParams, random_abf
from conftest import make_abf
import oracles


def values(report):
    return {render(f): v for f, v in report.items()}


def test_drastic_measure_worked_example(sec23):
    got = values(culp_d(sec23))
    assert got == {"s": 0, "(p & !p)": 1, "q": 1, "r": 1, "(!q | !r)": 1}
    assert all(isinstance(v, Fr) for v in got.values())


def test_share_measure_worked_example(sec23):
    got = values(culp_star(sec23))
    assert got == {"s": 0, "(p & !p)": Fr(1, 2), "q": Fr(1, 2), "r": Fr(1, 2), "(!q | !r)": Fr(1, 2)}


def test_size_weighted_measure_worked_example(sec23):
    got = values(culp_c(sec23))
    assert got == {"s": 0, "(p & !p)": Fr(1, 4), "q": Fr(1, 12), "r": Fr(1, 12), "(!q | !r)": Fr(1, 12)}


def test_discriminating_example(sec4):
    star, d, c = values(culp_star(sec4)), values(culp_d(sec4)), values(culp_c(sec4))
    assert star["(p & !p)"] == Fr(1, 3) and star["q"] == Fr(2, 3)
    assert d["(p & !p)"] == d["q"] == 1
    assert c["(p & !p)"] == c["q"] == Fr(1, 5)


def test_induced_measure_puts_contradiction_first(sec4):
    got = values(induced_culpability(sec4))
    assert all(got["(p & !p)"] >= v for v in got.values())


def test_induced_measure_on_example(ex26):
    got = values(induced_culpability(ex26))
    want = oracles.powerset_example_scores()
    assert got["q"] == pytest.approx(1 - want["q"], abs=1e-5)
    assert got["p"] == pytest.approx(1 - want["consistent"], abs=1e-5)
    assert got["q"] < got["p"] == got["!p"]


@pytest.mark.parametrize("measure", MEASURES)
def test_consistent_kb_is_blameless(measure):
    report = culpability(make_abf(["p", "q", "p -> q"]), measure)
    assert all(v == 0 for _, v in report.items())


def test_unknown_measure(sec23):
    with pytest.raises(ValueError):
        culpability(sec23, "max")


@pytest.mark.parametrize("index", range(20))
def test_exact_measures_against_brute_force(index):
    abf = random_abf(GeneratorParams(seed=5), index)
    mic = oracles.mic(abf.gamma, abf.ab)
    total = sum(len(m) for m in mic)
    d, star, c = culp_d(abf), culp_star(abf), culp_c(abf)
    for f in abf.ab:
        hits = [m for m in mic if f in m]
        assert d[f] == (1 if hits else 0)
        assert star[f] == (Fr(len(hits), len(mic)) if mic else 0)
        assert c[f] == (sum(Fr(1, len(m)) for m in hits) / total if mic else 0)


@pytest.mark.parametrize("index", range(20))
def test_culpability_postulates_hold_for_exact_measures(index):
    abf = random_abf(GeneratorParams(seed=6), index)
    mic = oracles.mic(abf.gamma, abf.ab)
    culprits = set().union(*mic) if mic else set()
    for report in (culp_d(abf), culp_star(abf), culp_c(abf)):
        for f in abf.ab:
            assert (report[f] > 0) == (f in culprits)
