"""Normal-form identifiers and shape validators.

Each form is a checkable predicate over production shapes, with the strong
variants adding uniqueness constraints on top.  Validation never aborts at
the first problem: the report accumulates every violation so a whole corpus
can be debugged in one pass.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

from .grammar import Grammar, Production, RuleKind, classify_production


class FormId(enum.Enum):
    WEAK_CFG_ASNF = "weak-cfg-asnf"
    WEAK_GEN_ASNF = "weak-gen-asnf"
    STRONG_CFG_ASNF = "strong-cfg-asnf"
    STRONG_GEN_ASNF = "strong-gen-asnf"
    GKNF = "gknf"
    SAVITCH = "savitch"
    STRONG_SAVITCH = "strong-savitch"


#: rule kinds admitted by each form (shape level only)
_ALLOWED = {
    FormId.WEAK_CFG_ASNF: {RuleKind.REN, RuleKind.SS, RuleKind.TERMINAL},
    FormId.WEAK_GEN_ASNF: {RuleKind.REN, RuleKind.SS, RuleKind.TERMINAL, RuleKind.RSS},
    FormId.STRONG_CFG_ASNF: {RuleKind.REN, RuleKind.SS, RuleKind.TERMINAL},
    FormId.STRONG_GEN_ASNF: {RuleKind.REN, RuleKind.SS, RuleKind.TERMINAL, RuleKind.RSS},
    FormId.GKNF: {RuleKind.EPSILON, RuleKind.SS, RuleKind.TERMINAL},
    FormId.SAVITCH: {RuleKind.ANNIHILATE2, RuleKind.SS, RuleKind.TERMINAL},
    FormId.STRONG_SAVITCH: {RuleKind.REN, RuleKind.ANNIHILATE2, RuleKind.SS, RuleKind.TERMINAL},
}

#: kinds whose rules must be the unique owner of both their lhs and rhs
_STRONG_BOTH = {
    FormId.STRONG_CFG_ASNF: {RuleKind.SS, RuleKind.TERMINAL},
    FormId.STRONG_GEN_ASNF: {RuleKind.SS, RuleKind.TERMINAL, RuleKind.RSS},
    FormId.STRONG_SAVITCH: {RuleKind.SS, RuleKind.TERMINAL},
}

#: kinds with lhs-uniqueness only (annihilations observe it by default)
_STRONG_LHS_ONLY = {
    FormId.STRONG_SAVITCH: {RuleKind.ANNIHILATE2},
}


@dataclass(frozen=True)
class ValidationReport:
    form: FormId
    ok: bool
    violations: Tuple[Tuple[Production, str], ...]
    epsilon_exempt: Optional[Tuple[Production, Production]] = None

    def __bool__(self) -> bool:
        return self.ok


def epsilon_exemption(g: Grammar) -> Optional[Tuple[Production, Production]]:
    """Detect the tolerated pair {S -> eps, S -> S'} on a wrapped grammar.

    Present only when the start symbol has exactly those two rules and
    appears in no rhs.
    """
    s = g.start
    if any(s in p.rhs for p in g.productions):
        return None
    s_rules = [p for p in g.productions if p.lhs == (s,)]
    if len(s_rules) != 2:
        return None
    eps = [p for p in s_rules if classify_production(p) is RuleKind.EPSILON]
    ren = [p for p in s_rules if classify_production(p) is RuleKind.REN]
    if len(eps) == 1 and len(ren) == 1:
        return (eps[0], ren[0])
    return None


def _gknf_extra_ok(p: Production) -> bool:
    """GKNF additionally admits the 2->2 shape AB -> CD over nonterminals."""
    return (len(p.lhs) == 2 and len(p.rhs) == 2
            and all(s.is_nonterminal for s in p.lhs + p.rhs))


def validate_normal_form(g: Grammar, form: FormId) -> ValidationReport:
    violations = []
    exempt = epsilon_exemption(g)
    exempt_set = set(exempt) if exempt else set()
    rules = [p for p in g.productions if p not in exempt_set]

    for p in rules:
        kind = classify_production(p)
        if kind in _ALLOWED[form]:
            continue
        if form is FormId.GKNF and _gknf_extra_ok(p):
            continue
        violations.append((p, f"shape {kind.value} not allowed in {form.value}"))

    lhs_count = {}
    rhs_count = {}
    for p in rules:
        lhs_count[p.lhs] = lhs_count.get(p.lhs, 0) + 1
        rhs_count[p.rhs] = rhs_count.get(p.rhs, 0) + 1

    for p in rules:
        kind = classify_production(p)
        if kind in _STRONG_BOTH.get(form, ()):
            if lhs_count[p.lhs] > 1:
                violations.append((p, f"lhs {_side(p.lhs)} owned by {lhs_count[p.lhs]} rules"))
            if rhs_count[p.rhs] > 1:
                violations.append((p, f"rhs {_side(p.rhs)} owned by {rhs_count[p.rhs]} rules"))
        elif kind in _STRONG_LHS_ONLY.get(form, ()):
            if lhs_count[p.lhs] > 1:
                violations.append((p, f"lhs {_side(p.lhs)} owned by {lhs_count[p.lhs]} rules"))

    return ValidationReport(
        form=form,
        ok=not violations,
        violations=tuple(violations),
        epsilon_exempt=exempt,
    )


def _side(symbols) -> str:
    return " ".join(s.name for s in symbols) or "@eps"
