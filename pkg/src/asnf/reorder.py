"""Derivation rearrangement: factorization, terminal postponement, and the
grow-shrink phase ordering.

All procedures permute (or minimally re-target) the steps of a valid
derivation while preserving the derived word.  Termination of the phase
ordering follows from a strictly decreasing violation count; a hard swap
cap backs that argument up and trips CAP_EXCEEDED on an implementation bug
rather than looping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .derivations import (Derivation, DerivationStep, final_form,
                          length_profile, replay)
from .errors import CapExceeded, FormViolation, SegmentRewritten, ShapeViolation
from .forms import FormId, validate_normal_form
from .grammar import Production, RuleKind, classify_production


# -- Lemma-style factorization ----------------------------------------------

def factorize_derivation(d: Derivation, span: Tuple[int, int]
                         ) -> Tuple[Derivation, Derivation]:
    """Split a derivation that never rewrites the tracked middle segment of
    its start form into independent left and right derivations."""
    lo, hi = span
    if not (0 <= lo <= hi <= len(d.start)):
        raise ValueError(f"span {span} out of range for start of length {len(d.start)}")
    mu_lo, mu_hi = lo, hi
    left_steps: List[DerivationStep] = []
    right_steps: List[DerivationStep] = []
    for i, step in enumerate(d.steps):
        k = len(step.production.lhs)
        delta = len(step.production.rhs) - k
        if step.position + k <= mu_lo:
            left_steps.append(step)
            mu_lo += delta
            mu_hi += delta
        elif step.position >= mu_hi:
            right_steps.append(DerivationStep(step.position - mu_hi, step.production))
        else:
            raise SegmentRewritten(
                f"step {i} rewrites positions [{step.position}, {step.position + k}) "
                f"inside the tracked segment [{mu_lo}, {mu_hi})")
    left = Derivation(d.start[:lo], tuple(left_steps), d.grammar)
    right = Derivation(d.start[hi:], tuple(right_steps), d.grammar)
    return left, right


# -- terminal postponement ----------------------------------------------------

def _check_postpone_shapes(d: Derivation) -> None:
    for p in d.grammar.productions:
        if classify_production(p) is RuleKind.TERMINAL:
            continue
        if all(s.is_nonterminal for s in p.lhs) and all(s.is_nonterminal for s in p.rhs):
            continue
        raise ShapeViolation(
            f"rule {p!r} is neither all-nonterminal nor a terminal rule")


def postpone_terminals(d: Derivation) -> Derivation:
    """Reorder so that every terminal-rule step forms the suffix.

    Adjacent swaps: a terminal step immediately followed by a non-terminal
    step commutes because no other rule can touch the emitted terminal cell.
    Each swap removes one inversion, so the procedure terminates.
    """
    _check_postpone_shapes(d)
    steps = list(d.steps)
    is_term = [classify_production(s.production) is RuleKind.TERMINAL for s in steps]
    changed = True
    while changed:
        changed = False
        for i in range(len(steps) - 1):
            if is_term[i] and not is_term[i + 1]:
                steps[i], steps[i + 1] = _swap_terminal(steps[i], steps[i + 1])
                is_term[i], is_term[i + 1] = is_term[i + 1], is_term[i]
                changed = True
    out = Derivation(d.start, tuple(steps), d.grammar)
    _assert_same_word(d, out, "postpone_terminals")
    return out


def _swap_terminal(t_step: DerivationStep, other: DerivationStep
                   ) -> Tuple[DerivationStep, DerivationStep]:
    """Commute [A -> a at p, rule at q] into [rule first, A -> a after]."""
    p = t_step.position
    q = other.position
    delta = len(other.production.rhs) - len(other.production.lhs)
    if q < p:
        new_p = p + delta
    else:
        new_p = p
    return DerivationStep(q, other.production), DerivationStep(new_p, t_step.production)


def _assert_same_word(before: Derivation, after: Derivation, who: str) -> None:
    res = replay(after)
    if not res.ok:
        raise AssertionError(f"{who} produced an invalid derivation: {res.reason}")
    if res.final != final_form(before):
        raise AssertionError(f"{who} changed the derived word")


# -- grow-shrink ordering -----------------------------------------------------

@dataclass(frozen=True)
class PhaseReport:
    boundaries: Tuple[int, int]
    phase1_kinds: frozenset
    phase2_kinds: frozenset
    phase3_kinds: frozenset
    length_profile: Tuple[int, ...]


def phase_report_to_json(report: PhaseReport) -> dict:
    return {
        "boundaries": list(report.boundaries),
        "length_profile": list(report.length_profile),
        "phase_kinds": [sorted(k.value for k in ks) for ks in (
            report.phase1_kinds, report.phase2_kinds, report.phase3_kinds)],
    }


def grow_shrink_reorder(d: Derivation) -> Tuple[Derivation, PhaseReport]:
    """Rearrange a derivation of a terminal word into grow, shrink, and
    terminal phases.

    On the strong Savitch form the shrink phase holds annihilations only; on
    the strong general form it holds reverse superstructures plus renamings
    (every renaming is an in-edge of its target in the abstractions graph).
    """
    g = d.grammar
    if validate_normal_form(g, FormId.STRONG_SAVITCH).ok:
        shrink_kind = RuleKind.ANNIHILATE2
    elif validate_normal_form(g, FormId.STRONG_GEN_ASNF).ok:
        shrink_kind = RuleKind.RSS
    else:
        raise FormViolation(
            "grammar passes neither the strong Savitch nor the strong "
            "general ASNF validator")
    res = replay(d)
    if not res.ok:
        raise FormViolation(f"invalid derivation: {res.reason}")
    if any(s.is_nonterminal for s in res.final):
        raise FormViolation("derivation does not end in a terminal word")

    d = postpone_terminals(d)
    steps = list(d.steps)
    cap = 10 * max(1, len(steps)) ** 2
    spent = 0

    while True:
        all_kinds = [classify_production(s.production) for s in steps]
        core_end = next((i for i, k in enumerate(all_kinds)
                         if k is RuleKind.TERMINAL), len(steps))
        kinds = all_kinds[:core_end]
        if shrink_kind is RuleKind.ANNIHILATE2:
            grow = {RuleKind.REN, RuleKind.SS}
            k = _last_violating(kinds, RuleKind.ANNIHILATE2, grow)
            if k is None:
                break
            spent += _hoist_past_annihilation(steps, kinds, k)
        else:
            k, j0 = _last_rss_before_ss(kinds)
            if k is None:
                break
            spent += _resolve_rss_ss(steps, k, j0, d.grammar)
        if spent > cap:
            raise CapExceeded(f"swap budget {cap} exhausted; this is a bug")

    out = Derivation(d.start, tuple(steps), g)
    _assert_same_word(d, out, "grow_shrink_reorder")
    return out, _build_report(out, shrink_kind)


def _last_violating(kinds, shrink, grow) -> Optional[int]:
    """Index of the last shrink step followed by at least one grow step."""
    seen_grow = False
    for i in range(len(kinds) - 1, -1, -1):
        if kinds[i] in grow:
            seen_grow = True
        elif kinds[i] is shrink and seen_grow:
            return i
    return None


def _hoist_past_annihilation(steps, kinds, k) -> int:
    """Move the REN/SS block after annihilation step k in front of it."""
    g_end = k + 1
    while g_end < len(kinds) and kinds[g_end] in (RuleKind.REN, RuleKind.SS):
        g_end += 1
    ann = steps[k]
    cut = ann.position  # two cells [cut, cut+2) vanish
    block: List[DerivationStep] = []
    d_point = cut
    for step in steps[k + 1:g_end]:
        q = step.position
        if q < d_point:
            block.append(step)
            d_point += len(step.production.rhs) - 1
        else:
            block.append(DerivationStep(q + 2, step.production))
    steps[k:g_end] = block + [DerivationStep(d_point, ann.production)]
    return g_end - k - 1


def _last_rss_before_ss(kinds) -> Tuple[Optional[int], Optional[int]]:
    """Last RSS step with a later SS step, plus the first such SS index."""
    nearest_ss = None
    for i in range(len(kinds) - 1, -1, -1):
        if kinds[i] is RuleKind.SS:
            nearest_ss = i
        elif kinds[i] is RuleKind.RSS and nearest_ss is not None:
            return i, nearest_ss
    return None, None


def _resolve_rss_ss(steps, k, j0, grammar) -> int:
    """Fix one RSS-before-SS inversion.

    Between k and j0 only renamings occur (a reverse superstructure there
    would be a later violation; a superstructure would contradict j0 being
    the first).  If the superstructure at j0 does not act on the cell the
    reverse superstructure produced, everything off that cell commutes in
    front of it; otherwise the pattern is an eraser absorption that grew
    back afterwards, and the absorption is re-targeted onto the freshly
    grown neighbor.
    """
    rss = steps[k]
    p = rss.position
    window = steps[k + 1:j0 + 1]
    ss = steps[j0]
    # renamings on the produced cell must stay behind the reverse
    # superstructure; everything else commutes in front of it
    chain = [s for s in window if s.position == p]
    others = [s for s in window if s.position != p]

    if ss.position != p:
        adjusted = [s if s.position < p else DerivationStep(s.position + 1, s.production)
                    for s in others]
        new_p = p + (1 if ss.position < p else 0)
        steps[k:j0 + 1] = (adjusted
                           + [DerivationStep(new_p, rss.production)]
                           + [DerivationStep(new_p, s.production) for s in chain])
        return len(window)

    # absorption surgery: the chain on cell p is [product -> y, renames, SS]
    if not chain or chain[0].production.lhs != (rss.production.rhs[0],):
        raise FormViolation(
            "a superstructure follows a reverse superstructure on the same "
            "cell but the rewrite is not an absorption pattern")
    y = chain[0].production.rhs[0]
    a, b = rss.production.lhs
    if y == a:
        eraser, y_pre, e_offset = b, p, 1      # lhs is (y, E)
    elif y == b:
        eraser, y_pre, e_offset = a, p + 1, 0  # lhs is (E, y)
    else:
        raise FormViolation(
            "reverse superstructure does not restore either of its inputs; "
            "cannot phase this derivation")

    new_steps: List[DerivationStep] = []
    for step in others:
        q = step.position
        new_steps.append(step if q < p else DerivationStep(q + 1, step.production))
    # renaming chain minus the absorb-back, then the superstructure, applied
    # to the pre-absorption y cell
    for step in chain[1:-1]:
        new_steps.append(DerivationStep(y_pre, step.production))
    new_steps.append(DerivationStep(y_pre, ss.production))
    # re-absorb the eraser with its new neighbor
    if y == a:
        z = ss.production.rhs[1]
        pair = (z, eraser)
        e_pos = p + 1
    else:
        z = ss.production.rhs[0]
        pair = (eraser, z)
        e_pos = p
    absorb = _absorption_rules(grammar, pair)
    new_steps.extend(DerivationStep(e_pos, r) for r in absorb)
    steps[k:j0 + 1] = new_steps
    return len(window)


def _absorption_rules(grammar, pair) -> Tuple[Production, Production]:
    """The RSS consuming ``pair`` plus the renaming back to the survivor."""
    rss = next((r for r in grammar.productions if r.lhs == pair
                and classify_production(r) is RuleKind.RSS), None)
    if rss is None:
        raise FormViolation(
            f"no absorption rule for adjacent pair {pair[0].name} {pair[1].name}")
    back = next((r for r in grammar.productions
                 if r.lhs == rss.rhs and classify_production(r) is RuleKind.REN), None)
    if back is None:
        raise FormViolation(f"no absorb-back renaming for {rss.rhs[0].name}")
    return rss, back


def _build_report(d: Derivation, shrink_kind) -> PhaseReport:
    kinds = [classify_production(s.production) for s in d.steps]
    j = next((i for i, k in enumerate(kinds) if k is RuleKind.TERMINAL), len(kinds))
    if shrink_kind is RuleKind.ANNIHILATE2:
        i = next((x for x, k in enumerate(kinds[:j]) if k is RuleKind.ANNIHILATE2), j)
    else:
        i = next((x for x, k in enumerate(kinds[:j]) if k is RuleKind.RSS), j)
    return PhaseReport(
        boundaries=(i, j),
        phase1_kinds=frozenset(kinds[:i]),
        phase2_kinds=frozenset(kinds[i:j]),
        phase3_kinds=frozenset(kinds[j:]),
        length_profile=tuple(length_profile(d)),
    )
