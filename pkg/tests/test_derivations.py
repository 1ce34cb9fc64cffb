"""Derivation replay, validation, and the JSON view."""

from __future__ import annotations

from asnf import Production, parse_grammar
from asnf.derivations import (Derivation, DerivationStep, derivation_from_json,
                              derivation_to_json, final_form, length_profile,
                              trace_cells, validate_derivation)

ANBN = parse_grammar("@start S\nS -> a S b | a b\n")
S = ANBN.start
a = ANBN.find_terminal("a")
b = ANBN.find_terminal("b")
GROW = Production((S,), (a, S, b))
BASE = Production((S,), (a, b))


def test_two_step_replay():
    d = Derivation((S,), (DerivationStep(0, GROW), DerivationStep(1, BASE)), ANBN)
    res = validate_derivation(d)
    assert res.ok
    assert res.final == (a, a, b, b)


def test_position_out_of_bounds_fails():
    d = Derivation((S,), (DerivationStep(4, BASE),), ANBN)
    res = validate_derivation(d)
    assert not res.ok and res.failed_index == 0


def test_mismatched_window_reports_expected_vs_found():
    d = Derivation((S,), (DerivationStep(0, GROW), DerivationStep(0, BASE)), ANBN)
    res = validate_derivation(d)
    assert not res.ok and res.failed_index == 1
    assert "does not match" in res.reason


def test_foreign_production_rejected():
    other = parse_grammar("@start S\nS -> a\n")
    d = Derivation((S,), (DerivationStep(0, other.productions[0]),), ANBN)
    res = validate_derivation(d)
    assert not res.ok and "not in grammar" in res.reason


def test_length_profile():
    d = Derivation((S,), (DerivationStep(0, GROW), DerivationStep(1, BASE)), ANBN)
    assert length_profile(d) == [1, 3, 4]


def test_cell_trace_tracks_births_and_deaths():
    d = Derivation((S,), (DerivationStep(0, GROW), DerivationStep(1, BASE)), ANBN)
    cells = trace_cells(d)
    assert len(cells.final_cells) == 4
    root = cells.start_cells[0]
    assert cells.consumed_at[root] == 0
    # the inner S was produced by step 0 and consumed by step 1
    inner = cells.step_cells[0][1][1]
    assert cells.symbol_of[inner] == S
    assert cells.consumed_at[inner] == 1


def test_json_roundtrip():
    d = Derivation((S,), (DerivationStep(0, GROW), DerivationStep(1, BASE)), ANBN)
    doc = derivation_to_json(d)
    assert doc["word"] == ["a", "a", "b", "b"]
    again = derivation_from_json(doc, ANBN)
    assert again.steps == d.steps
    assert final_form(again) == final_form(d)
