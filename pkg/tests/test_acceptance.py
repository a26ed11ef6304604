"""Acceptance suite.

Test names carry their criterion number (``test_criterion_<n>_...``); the
conftest hook prints one PASS/FAIL line per criterion at the end of the run.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction as Q

import pytest

from laf import (
    CycleViolation,
    FuzzyAlgebra,
    INTUITION,
    SolverError,
    Status,
    TagAlgebra,
    build_equations,
    build_graph,
    evaluate,
    ground,
    parse_kb,
    serialize_kb,
    solve,
)
from laf.algebra import fuzzy_aggregate, fuzzy_conflict, fuzzy_support
from laf.data import read

from conftest import NINE_UNCHALLENGED
from kbgen import random_kb, random_valid_kb
from oracles import equation_residuals, has_tag_fixed_point, topological_labeling
from test_propagation import hand_evaluation

REL, INT = 0, 1
N_LAWS = 10_000
N_KBS = 500


# -- criterion 1: status partition of the fertility example -------------------------

@pytest.fixture(scope="module")
def example_run():
    t0 = time.perf_counter()
    ev = evaluate(parse_kb(read("fertility.laf"), "fertility.laf"))
    return ev, time.perf_counter() - t0


def test_criterion_1_assured(example_run):
    ev, _ = example_run
    assert ev.statuses.partition(REL)[Status.ASSURED] == {"genetic_dis(cp)", "n1"}


def test_criterion_1_weakened(example_run):
    ev, _ = example_run
    assert ev.statuses.partition(REL)[Status.WEAKENED] == {"med_repr(cp)"}


def test_criterion_1_rejected(example_run):
    ev, _ = example_run
    assert ev.statuses.partition(REL)[Status.REJECTED] == {"~med_repr(cp)"}


def test_criterion_1_unchallenged(example_run):
    # The listed nine omit sol_rep_prob(cp), whose label is untouched by
    # conflict (no complement exists), so it lands in S^U as a tenth member.
    ev, _ = example_run
    unchallenged = ev.statuses.partition(REL)[Status.UNCHALLENGED]
    print(f"S^U computed: {sorted(unchallenged)}")
    print(f"extra members: {sorted(unchallenged - NINE_UNCHALLENGED)}")
    assert unchallenged == NINE_UNCHALLENGED


def test_criterion_1_runtime(example_run):
    _, elapsed = example_run
    assert elapsed < 1.0


# -- criterion 2: intuition outcome ----------------------------------------------

def test_criterion_2_intuitions(example_run):
    ev, _ = example_run
    assert ev.labeling.mu_minus["sol_rep_prob(cp)"][INT] == frozenset({"PL", "FCH"})


# -- criterion 3: the reported 0.72 vs. the hand oracle -------------------------

@pytest.mark.parametrize("rap, expected", [(True, Q("0.5352")), (False, Q("0.76"))])
def test_criterion_3_final_relevance(fertility_kb, rap, expected):
    oracle = hand_evaluation(rap)["sol"]
    assert oracle == expected
    value = evaluate(fertility_kb, rules_as_premises=rap).labeling.mu_minus["sol_rep_prob(cp)"][REL]
    assert abs(value - float(oracle)) <= 1e-9
    # neither convention gives the reference figure of 0.72
    assert abs(value - 0.72) > 1e-3


# -- criterion 4: algebra laws ---------------------------------------------------

TOL = 1e-12


def _unit(rng):
    r = rng.random()
    # hit the boundaries now and then
    return 0.0 if r < 0.02 else 1.0 if r < 0.04 else rng.random()


@pytest.fixture(scope="module")
def law_clock():
    return {"t0": time.perf_counter()}


def test_criterion_4_fuzzy_laws(law_clock):
    rng = random.Random(4)
    for _ in range(N_LAWS):
        a, b, c = _unit(rng), _unit(rng), _unit(rng)
        for op in (fuzzy_support, fuzzy_aggregate):
            assert abs(op(a, b) - op(b, a)) <= TOL
            assert abs(op(op(a, b), c) - op(a, op(b, c))) <= TOL
            assert 0.0 <= op(a, b) <= 1.0
        # identities and absorbing elements
        assert abs(fuzzy_support(a, 1.0) - a) <= TOL and fuzzy_support(a, 0.0) == 0.0
        assert abs(fuzzy_aggregate(a, 0.0) - a) <= TOL and abs(fuzzy_aggregate(a, 1.0) - 1.0) <= TOL
        # monotonicity
        lo, hi = sorted((b, c))
        assert fuzzy_support(a, lo) <= fuzzy_support(a, hi) + TOL
        assert fuzzy_aggregate(a, lo) <= fuzzy_aggregate(a, hi) + TOL
        assert fuzzy_support(a, b) <= min(a, b) + TOL
        assert fuzzy_aggregate(a, b) >= max(a, b) - TOL
        # conflict: anti-extensive, clamped, antitone in the attacker
        x = fuzzy_conflict(a, b)
        assert 0.0 <= x <= a
        assert x == max(a - b, 0.0)
        assert fuzzy_conflict(a, hi) <= fuzzy_conflict(a, lo)
        assert fuzzy_conflict(a, 0.0) == a


def test_criterion_4_intuition_laws(law_clock):
    rng = random.Random(44)
    alg = INTUITION
    order = alg.order

    def tags():
        return frozenset(t for t in order if rng.random() < 0.5)

    def scan_min(s):
        # lowest-ranked tag present
        for t in reversed(order):
            if t in s:
                return frozenset({t})
        return frozenset()

    for _ in range(N_LAWS):
        a, b, c = tags(), tags(), tags()
        assert alg.aggregate(a, b) == a | b == alg.aggregate(b, a)
        assert alg.aggregate(alg.aggregate(a, b), c) == alg.aggregate(a, alg.aggregate(b, c))
        assert alg.aggregate(a, frozenset()) == a
        assert alg.conflict(a, b) == a - b
        assert alg.leq(alg.conflict(a, b), a)
        assert alg.conflict(a, frozenset()) == a
        assert alg.support(a, b) == scan_min(a | b) == alg.support(b, a)
        assert alg.support(alg.support(a, b), c) == alg.support(a, alg.support(b, c))
        assert alg.leq(alg.bottom, a) and alg.leq(a, alg.top)
        if a <= b:
            assert alg.leq(alg.aggregate(a, c), alg.aggregate(b, c))
            assert alg.leq(alg.conflict(c, b), alg.conflict(c, a))


def test_criterion_4_runtime(law_clock):
    assert time.perf_counter() - law_clock["t0"] < 10.0


# -- criteria 5 and 6: randomized knowledge bases --------------------------------

@pytest.fixture(scope="module")
def random_runs():
    """500 random valid KBs, each evaluated under both conventions."""
    rng = random.Random(2024)
    t0 = time.perf_counter()
    runs = []
    for _ in range(N_KBS):
        kb = random_valid_kb(rng, max_atoms=8, max_rules=6)
        for rap in (True, False):
            g = build_graph(ground(kb), rules_as_premises=rap)
            try:
                lab, _ = solve(build_equations(g))
            except SolverError as exc:
                runs.append((g, None, exc))
            else:
                runs.append((g, lab, None))
    return runs, time.perf_counter() - t0


def test_criterion_5_model_property(random_runs):
    runs, _ = random_runs
    solved = [(g, lab) for g, lab, _ in runs if lab is not None]
    worst = {"fuzzy": 0.0, "tags": 0.0}
    for g, lab in solved:
        for var, i, r in equation_residuals(g, lab):
            alg = g.algebras[i]
            if isinstance(alg, FuzzyAlgebra):
                worst["fuzzy"] = max(worst["fuzzy"], r)
                assert r < 1e-9, (var, alg.name, r)
            else:
                worst["tags"] = max(worst["tags"], r)
                assert r == 0, (var, alg.name, r)
    print(f"solved {len(solved)}/{len(runs)} evaluations, worst residuals {worst}")


def test_criterion_5_failures_have_no_fixed_point(random_runs):
    # Some tag systems with a conflict cycle admit no solution at all; the
    # solver must only give up on those, never on a solvable one.
    runs, _ = random_runs
    failed = [(g, exc) for g, lab, exc in runs if lab is None]
    unproven = []
    for g, exc in failed:
        assert exc.no_fixed_point
        tag_algs = [i for i, a in enumerate(g.algebras) if isinstance(a, TagAlgebra)]
        verdicts = [has_tag_fixed_point(g, i) for i in tag_algs]
        if False not in verdicts:
            unproven.append(g)
    print(f"{len(failed)} evaluations without a fixed point, {len(unproven)} unproven")
    assert not unproven


def test_criterion_5_runtime(random_runs):
    _, elapsed = random_runs
    assert elapsed < 30.0


def test_criterion_6_oracle_equivalence(random_runs):
    runs, _ = random_runs
    compared = 0
    for g, lab, _ in runs:
        expected = topological_labeling(g)
        if expected is None:
            continue
        assert lab is not None
        for i, alg in enumerate(g.algebras):
            for k in g.inodes:
                assert alg.distance(lab.mu_plus[k][i], expected[i][("+", k)]) <= 1e-9
                assert alg.distance(lab.mu_minus[k][i], expected[i][("-", k)]) <= 1e-9
        compared += 1
    print(f"compared {compared}/{len(runs)} acyclic evaluations")
    assert compared > len(runs) // 2


# -- criterion 7: structural checks ----------------------------------------------

def test_criterion_7_cycle_witness():
    with pytest.raises(CycleViolation) as exc:
        evaluate(parse_kb(read("cyclic.laf")))
    assert exc.value.cycle == ["a(x)", "RA(r2)", "b(x)", "RA(r1)", "a(x)"]
    assert "a(x) -> RA(r2) -> b(x) -> RA(r1) -> a(x)" in str(exc.value)


def test_criterion_7_round_trip():
    rng = random.Random(7)
    for _ in range(1000):
        kb = random_kb(rng)
        text = serialize_kb(kb)
        again = parse_kb(text)
        assert again == kb
        assert serialize_kb(again) == text


def test_criterion_7_partition(random_runs):
    from laf import classify_all

    runs, _ = random_runs
    for g, lab, _ in runs:
        if lab is None:
            continue
        statuses = classify_all(lab)
        for i in range(len(g.algebras)):
            parts = statuses.partition(i)
            members = [k for part in parts.values() for k in part]
            assert sorted(members) == sorted(g.inodes)
