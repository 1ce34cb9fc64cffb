"""Normal-form validators and the tolerated empty-word pair."""

from __future__ import annotations

from asnf import FormId, parse_grammar, validate_normal_form
from asnf.forms import epsilon_exemption
from asnf.textio import report_to_json


def test_duplicate_rhs_violates_strong_uniqueness():
    g = parse_grammar("@start A\nA -> B C\nD -> B C\nA -> a\n")
    report = validate_normal_form(g, FormId.STRONG_GEN_ASNF)
    assert not report.ok
    assert any("rhs B C" in reason for _, reason in report.violations)


def test_single_terminal_rule_is_weak_cfg():
    g = parse_grammar("@start S\nS -> a\n")
    assert validate_normal_form(g, FormId.WEAK_CFG_ASNF).ok


def test_weak_gen_accepts_rss_weak_cfg_does_not():
    g = parse_grammar("@start A\nA B -> C\nA -> a\n")
    assert validate_normal_form(g, FormId.WEAK_GEN_ASNF).ok
    report = validate_normal_form(g, FormId.WEAK_CFG_ASNF)
    assert not report.ok and "RSS" in report.violations[0][1]


def test_gknf_shapes():
    g = parse_grammar("@start A\nA -> @eps\nA B -> C D\nA -> B C\nA -> a\n")
    assert validate_normal_form(g, FormId.GKNF).ok
    bad = parse_grammar("@start A\nA -> B\n")
    assert not validate_normal_form(bad, FormId.GKNF).ok


def test_savitch_shapes_forbid_renamings():
    g = parse_grammar("@start A\nA B -> @eps\nA -> B C\nA -> a\n")
    assert validate_normal_form(g, FormId.SAVITCH).ok
    assert not validate_normal_form(
        parse_grammar("@start A\nA -> B\nA -> a\n"), FormId.SAVITCH).ok


def test_strong_savitch_lhs_uniqueness_only_for_annihilations():
    dup = parse_grammar("@start A\nA B -> @eps\nA B -> @eps\nA -> a\n")
    # identical duplicates still count as two owners of the same lhs
    report = validate_normal_form(dup, FormId.STRONG_SAVITCH)
    assert not report.ok
    ok = parse_grammar("@start A\nA B -> @eps\nA -> a\n")
    assert validate_normal_form(ok, FormId.STRONG_SAVITCH).ok


def test_multiple_renamings_allowed_in_strong_forms():
    g = parse_grammar("@start A\nA -> B\nA -> C\nB -> a\nC -> b\n")
    assert validate_normal_form(g, FormId.STRONG_CFG_ASNF).ok


def test_shared_lhs_between_ss_and_terminal_violates():
    g = parse_grammar("@start A\nA -> B C\nA -> a\n")
    report = validate_normal_form(g, FormId.STRONG_CFG_ASNF)
    assert not report.ok
    assert sum("lhs A" in reason for _, reason in report.violations) == 2


def test_epsilon_exemption_detected_and_tolerated():
    g = parse_grammar("@start S0\nS -> a\nS0 -> @eps\nS0 -> S\n")
    pair = epsilon_exemption(g)
    assert pair is not None and pair[0].rhs == ()
    report = validate_normal_form(g, FormId.STRONG_CFG_ASNF)
    assert report.ok and report.epsilon_exempt == pair


def test_exemption_requires_start_out_of_rhs():
    g = parse_grammar("@start S0\nS -> a S0\nS0 -> @eps\nS0 -> S\n")
    assert epsilon_exemption(g) is None
    assert not validate_normal_form(g, FormId.WEAK_CFG_ASNF).ok


def test_report_json_shape():
    g = parse_grammar("@start A\nA -> B C\nD -> B C\n")
    doc = report_to_json(validate_normal_form(g, FormId.STRONG_GEN_ASNF))
    assert doc["form"] == "strong-gen-asnf"
    assert doc["ok"] is False
    assert {"rule", "reason"} <= set(doc["violations"][0])
