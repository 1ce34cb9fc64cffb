"""Core types: rule taxonomy, grammar classes, invariants."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from asnf import (Grammar, GrammarClass, Production, RuleKind, Symbol,
                  classify_grammar, classify_production, nonterminal,
                  parse_grammar, terminal)
from asnf.grammar import lint_grammar

A, B, C = nonterminal("A"), nonterminal("B"), nonterminal("C")
a, b = terminal("a"), terminal("b")


def g_of(*rules, start=None, extra=()):
    prods = [Production(l, r) for l, r in rules]
    nts = {s for p in prods for s in p.lhs + p.rhs if s.is_nonterminal}
    nts |= set(extra)
    ts = {s for p in prods for s in p.lhs + p.rhs if s.is_terminal}
    start = start or next(iter(sorted(nts, key=lambda s: s.name)))
    return Grammar(sorted(nts, key=lambda s: s.name),
                   sorted(ts, key=lambda s: s.name), start, prods)


def test_symbol_invariants():
    with pytest.raises(ValueError):
        Symbol("", nonterminal("X").kind)
    with pytest.raises(ValueError):
        nonterminal("has space")


def test_production_needs_nonterminal_lhs():
    with pytest.raises(ValueError):
        Production((a,), (b,))
    with pytest.raises(ValueError):
        Production((), (a,))


def test_grammar_rejects_kind_clash():
    with pytest.raises(ValueError):
        Grammar([A, Symbol("a", A.kind)], [a], A, [])


def test_rule_kinds():
    assert classify_production(Production((A,), (B, C))) is RuleKind.SS
    assert classify_production(Production((A, B), ())) is RuleKind.ANNIHILATE2
    assert classify_production(Production((a, A), (b,))) is RuleKind.OTHER
    assert classify_production(Production((A,), (B,))) is RuleKind.REN
    assert classify_production(Production((A,), (a,))) is RuleKind.TERMINAL
    assert classify_production(Production((A, B), (C,))) is RuleKind.RSS
    assert classify_production(Production((A,), ())) is RuleKind.EPSILON


def test_rule_kind_partition_exhaustive():
    """Every lhs/rhs shape up to length 3 gets exactly one kind."""
    pool = [A, B, a]
    shapes = 0
    for ln in range(1, 4):
        for lhs in itertools.product(pool, repeat=ln):
            if not any(s.is_nonterminal for s in lhs):
                continue
            for rn in range(0, 4):
                for rhs in itertools.product(pool, repeat=rn):
                    kind = classify_production(Production(lhs, rhs))
                    assert isinstance(kind, RuleKind)
                    shapes += 1
    assert shapes > 400


def test_classify_grammar_examples():
    assert classify_grammar(parse_grammar("@start S\nS -> a S b | a b\n")) is GrammarClass.CFG
    assert classify_grammar(parse_grammar("@start S\nS -> a S | a\n")) is GrammarClass.REG
    assert classify_grammar(parse_grammar("@start A\nA B -> C\nA -> a\n")) is GrammarClass.GG


def test_classify_csg():
    # contexts preserved around a single rewritten nonterminal, gamma nonempty
    g = parse_grammar("@start S\nS -> A B\nA B -> A b B\nA -> a\nB -> b\n")
    assert classify_grammar(g) is GrammarClass.CSG


def test_classify_csg_pattern_fails_for_swap():
    """Brute-force pattern search confirms C B -> B C fits no alpha A beta
    -> alpha gamma beta decomposition."""
    from asnf.grammar import _csg_pattern
    swap = Production((C, B), (B, C))
    decompositions = []
    for i, sym in enumerate(swap.lhs):
        alpha, beta = swap.lhs[:i], swap.lhs[i + 1:]
        la, lb = len(alpha), len(beta)
        if len(swap.rhs) >= la + lb + 1:
            if swap.rhs[:la] == alpha and (not beta or swap.rhs[-lb:] == beta):
                decompositions.append((alpha, sym, beta))
    assert decompositions == []
    assert not _csg_pattern(swap)


def test_epsilon_amendment_in_csg_classification():
    g = parse_grammar("@start S\nS -> @eps\nS -> A B\nA B -> A b B\nA -> a\nB -> b\n")
    assert classify_grammar(g) is GrammarClass.CSG


_CLASS_ORDER = {GrammarClass.REG: 0, GrammarClass.CFG: 1,
                GrammarClass.CSG: 2, GrammarClass.GG: 3}

_SYMS = st.sampled_from([A, B, C, a, b])


@st.composite
def _rule(draw):
    lhs = tuple(draw(st.lists(_SYMS, min_size=1, max_size=2)))
    if not any(s.is_nonterminal for s in lhs):
        lhs = (draw(st.sampled_from([A, B, C])),) + lhs[1:]
    rhs = tuple(draw(st.lists(_SYMS, min_size=0, max_size=3)))
    return Production(lhs, rhs)


@given(st.lists(_rule(), min_size=1, max_size=6), _rule())
def test_classify_monotone(rules, extra):
    """Adding a production never makes the class strictly more restrictive."""
    base = g_of(*[(p.lhs, p.rhs) for p in rules], start=A, extra=[A, B, C])
    grown = g_of(*[(p.lhs, p.rhs) for p in rules + [extra]], start=A, extra=[A, B, C])
    assert _CLASS_ORDER[classify_grammar(grown)] >= _CLASS_ORDER[classify_grammar(base)]


def test_lint_flags_self_renaming_and_duplicates():
    g = g_of(((A,), (A,)), ((A,), (a,)), ((A,), (a,)))
    findings = lint_grammar(g)
    assert any("self renaming" in f for f in findings)
    assert any("duplicate" in f for f in findings)
