"""Grammar file format: parsing, serialization, round trips, errors."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from asnf import RuleKind, classify_production, parse_grammar, serialize_grammar
from asnf.errors import GrammarSyntaxError
from asnf.textio import grammar_from_json, grammar_to_json


def test_basic_parse():
    g = parse_grammar("@start S\nS -> a S b\nS -> a b\n")
    assert {s.name for s in g.nonterminals} == {"S"}
    assert {s.name for s in g.terminals} == {"a", "b"}
    assert len(g.productions) == 2


def test_eps_spelling():
    g = parse_grammar("@start S\nS -> @eps\n")
    (p,) = g.productions
    assert classify_production(p) is RuleKind.EPSILON


def test_rss_parse():
    g = parse_grammar("@start A\nA B -> C\n")
    (p,) = g.productions
    assert classify_production(p) is RuleKind.RSS


def test_alternatives_split_into_rules():
    g = parse_grammar("@start S\nS -> a | b | a S\n")
    assert len(g.productions) == 3


def test_declarations_override_lexical_rule():
    g = parse_grammar("@start S\n@terminals X\n@nonterminals lower\nS -> lower X\n")
    assert {s.name for s in g.terminals} == {"X"}
    assert {s.name for s in g.nonterminals} == {"S", "lower"}


def test_comments_and_blanks_ignored():
    g = parse_grammar("# heading\n\n@start S\n# rule\nS -> a\n")
    assert len(g.productions) == 1


def test_eps_free_annotation_round_trips():
    g = parse_grammar("@start S\n@eps-free\nS -> a\n")
    assert g.meta.get("eps_free") == "true"
    assert "@eps-free" in serialize_grammar(g)
    assert parse_grammar(serialize_grammar(g)).meta.get("eps_free") == "true"


@pytest.mark.parametrize("text,fragment", [
    ("S -> a\n", "missing @start"),
    ("@start S\n@start S\nS -> a\n", "duplicate @start"),
    ("@start S\nS a\n", "exactly one '->'"),
    ("@start S\n-> a\n", "empty rule lhs"),
    ("@start S\na b -> a\n", "no nonterminal"),
    ("@start S\nS -> a @eps b\n", "must stand alone"),
    ("@start S\n@terminals x\n@nonterminals x\nS -> x\n", "both terminal and nonterminal"),
    ("@start s\n@terminals s\ns -> a\n", "declared as terminal"),
    ("@start S\nS -> \n", "empty rule rhs"),
    ("@start S\nS -> a | | b\n", "empty alternative"),
    ("@start S\n@bogus\nS -> a\n", "unknown directive"),
])
def test_syntax_errors(text, fragment):
    with pytest.raises(GrammarSyntaxError) as err:
        parse_grammar(text)
    assert fragment in str(err.value)


def test_error_carries_line_and_column():
    with pytest.raises(GrammarSyntaxError) as err:
        parse_grammar("@start S\nS -> a\nA b c\n")
    assert err.value.line == 3
    assert err.value.column == 1


def test_roundtrip_identity():
    text = "@start S\nS -> a S b | a b\nA B -> C\nC -> @eps\n"
    g = parse_grammar(text)
    again = parse_grammar(serialize_grammar(g))
    assert again == g
    # and serialization is a fixed point
    assert serialize_grammar(again) == serialize_grammar(g)


_NAMES_NT = st.sampled_from(["S", "A", "B", "C", "Long_One"])
_NAMES_T = st.sampled_from(["a", "b", "c", "x1"])


@st.composite
def _grammar_text(draw):
    lines = ["@start S"]
    n = draw(st.integers(1, 6))
    for _ in range(n):
        lhs = draw(st.lists(st.one_of(_NAMES_NT, _NAMES_T), min_size=1, max_size=2))
        if not any(s[0].isupper() for s in lhs):
            lhs[0] = draw(_NAMES_NT)
        rhs = draw(st.lists(st.one_of(_NAMES_NT, _NAMES_T), min_size=0, max_size=3))
        lines.append(" ".join(lhs) + " -> " + (" ".join(rhs) if rhs else "@eps"))
    return "\n".join(lines) + "\n"


@given(_grammar_text())
def test_roundtrip_property(text):
    g = parse_grammar(text)
    assert parse_grammar(serialize_grammar(g)) == g


@given(_grammar_text())
def test_json_roundtrip_property(text):
    g = parse_grammar(text)
    assert grammar_from_json(grammar_to_json(g)) == g
