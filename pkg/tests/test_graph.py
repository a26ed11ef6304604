import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laf import CycleViolation, KnowledgeBase, build_graph, ground, parse_kb, validate_cycles
from laf.data import read
from laf.graph import ArgGraph

from kbgen import random_kb, random_valid_kb


def graph_of(src: str, **kw) -> ArgGraph:
    return build_graph(ground(parse_kb(src)), **kw)


def test_fertility_graph_counts(fertility):
    g = fertility.graph
    facts = {"~physical_imp(cp)", "genere_child(cp)", "rsn_exp_life(cp)", "genetic_dis(cp)", "edu_health_child(cp)"}
    rules = {"r1", "r2", "n1", "n2", "n3"}
    derived = {"~steril(cp)", "med_repr(cp)", "~med_repr(cp)", "sol_rep_prob(cp)"}
    assert set(g.inodes) == facts | rules | derived
    assert len(g.ranodes) == 5
    assert [c.pair for c in g.canodes.values()] == [("med_repr(cp)", "~med_repr(cp)")]


def test_fertility_graph_rules_as_premises(fertility, fertility_off):
    ra = fertility.graph.ranodes["n1[X=cp]"]
    assert set(ra.premises) == {"genetic_dis(cp)", "med_repr(cp)", "n1"}
    assert ra.conclusion == "sol_rep_prob(cp)"
    assert set(fertility_off.graph.ranodes["n1[X=cp]"].premises) == {"genetic_dis(cp)", "med_repr(cp)"}
    # rule I-nodes stay in the graph either way
    assert "n1" in fertility_off.graph.inodes


def test_complementary_facts_only():
    g = graph_of("algebra r fuzzy; fact p(a) labels [0.5]; fact ~p(a) labels [0.5];")
    assert len(g.inodes) == 2 and not g.ranodes and len(g.canodes) == 1


def test_single_rule_graph():
    g = graph_of("algebra r fuzzy; fact a(x) labels [1]; rule r: b(x) <- a(x) labels [1];")
    assert set(g.inodes) == {"a(x)", "r", "b(x)"}
    (ra,) = g.ranodes.values()
    assert set(ra.premises) == {"a(x)", "r"}
    assert not g.canodes


def test_non_firing_rule_keeps_inode():
    g = graph_of("algebra r fuzzy; fact a(x) labels [1]; rule r: b(x) <- c(x) labels [1];")
    assert "r" in g.inodes and not g.ranodes and "b(x)" not in g.inodes


def test_cyclic_kb_rejected_with_witness():
    with pytest.raises(CycleViolation) as exc:
        graph_of(read("cyclic.laf"))
    assert exc.value.cycle == ["a(x)", "RA(r2)", "b(x)", "RA(r1)", "a(x)"]


def test_validate_fertility_graph_ok(fertility):
    assert validate_cycles(fertility.graph) is None


def test_validate_single_fact_ok():
    assert validate_cycles(graph_of("algebra r fuzzy; fact a(x) labels [1];")) is None


def test_self_supporting_rule_rejected():
    with pytest.raises(CycleViolation) as exc:
        graph_of("algebra r fuzzy; fact a(x) labels [1]; rule r: a(x) <- a(x) labels [1];")
    assert exc.value.cycle == ["a(x)", "RA(r)", "a(x)"]


def test_witness_is_lexicographically_smallest():
    # two cycles through a(x); they first differ at the RA-node, where r1 < r3
    src = (
        "algebra r fuzzy; fact a(x) labels [1];"
        "rule r1: c(x) <- a(x) labels [1]; rule r2: a(x) <- c(x) labels [1];"
        "rule r3: b(x) <- a(x) labels [1]; rule r4: a(x) <- b(x) labels [1];"
    )
    with pytest.raises(CycleViolation) as exc:
        graph_of(src)
    assert exc.value.cycle == ["a(x)", "RA(r1)", "c(x)", "RA(r2)", "a(x)"]


def test_conflict_cycle_is_allowed():
    # ~a is derived from a: the only cycle runs through the CA-node
    g = graph_of("algebra r fuzzy; fact a(x) labels [1]; rule r: ~a(x) <- a(x) labels [1];")
    assert len(g.canodes) == 1


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_graph_invariants(rng):
    kb = random_kb(rng)
    try:
        g = build_graph(ground(kb))
    except CycleViolation:
        return
    assert validate_cycles(g) is None
    for ra in g.ranodes.values():
        assert ra.premises and ra.conclusion in g.inodes
    assert len(g.canodes) == len(g.complementary_pairs())
    # every derived literal has a supporting RA-node
    for key, node in g.inodes.items():
        if not node.in_kb:
            assert g.supporters(key)
    # brute-force count of complementary pairs among literal I-nodes
    lits = [n.literal for n in g.inodes.values() if n.literal is not None]
    pairs = sum(1 for x in lits for y in lits if x < y and x.complement() == y)
    assert pairs == len(g.canodes)


def test_order_insensitive():
    rng = random.Random(11)
    for _ in range(50):
        kb = random_valid_kb(rng)
        facts, rules = list(kb.facts), list(kb.rules)
        rng.shuffle(facts)
        rng.shuffle(rules)
        shuffled = KnowledgeBase(kb.algebras, tuple(facts), tuple(rules), kb.constants)
        a, b = build_graph(ground(kb)), build_graph(ground(shuffled))
        assert a.nodes() == b.nodes()
        assert sorted(a.edges()) == sorted(b.edges())
