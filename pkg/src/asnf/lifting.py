"""Forward lifting of derivations through transform traces.

Given a derivation valid in a transform's input grammar, produce one valid
in its output grammar deriving the same word.  Most stages substitute each
use of a removed rule by the recorded straight-line fragment; the stages
whose rewriting depends on context (erasures that consume a neighbor,
renaming elimination, the survivor marking) get dedicated lifters.
Reverse lifting is out of scope.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .derivations import (Derivation, DerivationStep, final_form, replay,
                          trace_cells)
from .errors import TraceMismatch
from .grammar import Grammar, Production, RuleKind, Symbol, classify_production
from .trace import TraceStage, TransformTrace
from .reorder import postpone_terminals


def lift_derivation(trace: TransformTrace, d: Derivation) -> Derivation:
    """Lift ``d`` stage by stage; raises TRACE_MISMATCH when a step uses a
    production the trace does not map and the output grammar lacks."""
    res = replay(d)
    if not res.ok:
        raise TraceMismatch(f"input derivation invalid: {res.reason}")
    word = res.final

    stages = trace.stages
    if word == () and stages and stages[-1].stage_id == "eps-wrapper":
        out = stages[-1].grammar_after
        eps_rule = next(p for p in out.productions
                        if p.lhs == (out.start,) and p.rhs == ())
        return Derivation((out.start,), (DerivationStep(0, eps_rule),), out)

    i = 0
    while i < len(stages):
        stage = stages[i]
        if (stage.stage_id == "annihilate-to-rss"
                and i + 1 < len(stages) and stages[i + 1].stage_id == "absorption"):
            d = _lift_annihilations(stage, stages[i + 1], d)
            i += 2
            continue
        lifter = _LIFTERS.get(stage.stage_id, _lift_fragments)
        d = lifter(stage, d)
        i += 1
    return d


def _rules_of(stage: TraceStage):
    return set(stage.grammar_after.productions)


def _fragment_map(stage: TraceStage) -> Dict[Production, tuple]:
    return {r.removed: r.added for r in stage.replacements if r.removed is not None}


# -- generic fragment substitution -------------------------------------------

def _lift_fragments(stage: TraceStage, d: Derivation) -> Derivation:
    """Works whenever each replaced rule's fragment rewrites the lhs to the
    original rhs in place (positions carried as deltas)."""
    kept = _rules_of(stage)
    frag = _fragment_map(stage)
    steps: List[DerivationStep] = []
    for step in d.steps:
        if step.production in kept:
            steps.append(step)
        elif step.production in frag:
            for delta, rule in frag[step.production]:
                steps.append(DerivationStep(step.position + delta, rule))
        else:
            raise TraceMismatch(
                f"step {step!r} uses a rule the {stage.stage_id} stage "
                f"neither kept nor mapped")
    return Derivation(d.start, tuple(steps), stage.grammar_after)


# -- nullable-occurrence elimination ------------------------------------------

def _lift_nullable(stage: TraceStage, d: Derivation) -> Derivation:
    """Drop the erased subderivations and use the variants that omit the
    erased cells."""
    cells = trace_cells(d)
    erased: Dict[int, bool] = {}

    def is_erased(cid: int) -> bool:
        if cid in erased:
            return erased[cid]
        consumed = cells.consumed_at[cid]
        if consumed is None:
            erased[cid] = False
        else:
            produced = cells.step_cells[consumed][1]
            erased[cid] = all(is_erased(c) for c in produced)
        return erased[cid]

    out_rules = _rules_of(stage)
    lifted_form: List[int] = [c for c in cells.start_cells if not is_erased(c)]
    if not lifted_form:
        raise TraceMismatch("whole derivation erases; the empty word cannot lift here")
    steps: List[DerivationStep] = []
    for idx, step in enumerate(d.steps):
        consumed, produced = cells.step_cells[idx]
        cell = consumed[0]
        if is_erased(cell):
            continue
        keep = [c for c in produced if not is_erased(c)]
        rhs = tuple(cells.symbol_of[c] for c in keep)
        rule = Production(step.production.lhs, rhs)
        if rule not in out_rules:
            raise TraceMismatch(f"nullable variant {rule!r} missing from output")
        pos = lifted_form.index(cell)
        steps.append(DerivationStep(pos, rule))
        lifted_form[pos:pos + 1] = keep
    return Derivation(
        tuple(cells.symbol_of[c] for c in cells.start_cells if not is_erased(c)),
        tuple(steps), stage.grammar_after)


# -- terminal separation -------------------------------------------------------

def _lift_terminal_lift(stage: TraceStage, d: Derivation) -> Derivation:
    """Steps map rule for rule; lifted cells hold X_t where the original had
    t, and a suffix of X_t -> t steps finishes the word."""
    lift_of: Dict[Symbol, Symbol] = {}
    for rule in stage.additions:  # the X_t -> t rules
        lift_of[rule.rhs[0]] = rule.lhs[0]
    frag = _fragment_map(stage)
    kept = _rules_of(stage)

    def lift_syms(symbols, mapping) -> Tuple[Symbol, ...]:
        return tuple(mapping.get(s, s) for s in symbols)

    # which cells hold lifted stand-ins is exactly determined by the rules
    steps: List[DerivationStep] = []
    form = list(d.start)
    for step in d.steps:
        if step.production in frag:
            (_, rule), = frag[step.production]
        elif step.production in kept:
            rule = step.production
        else:
            raise TraceMismatch(f"terminal-lift cannot map {step.production!r}")
        steps.append(DerivationStep(step.position, rule))
        form[step.position:step.position + len(rule.lhs)] = list(rule.rhs)
    # discharge surviving stand-ins left to right (positions are stable:
    # X_t -> t preserves length)
    for pos, sym in enumerate(form):
        if sym.is_nonterminal and sym in set(lift_of.values()):
            t = next(t for t, x in lift_of.items() if x == sym)
            steps.append(DerivationStep(pos, Production((sym,), (t,))))
            form[pos] = t
    return Derivation(d.start, tuple(steps), stage.grammar_after)


# -- eraser elimination (weak general form, step 3) ---------------------------

def _lift_eps_erasure(stage: TraceStage, d: Derivation) -> Derivation:
    """Funnel renamings into the eraser vanish; instead the funnel symbol is
    absorbed by a nonterminal neighbor at the moment it would have renamed.

    Terminal steps are postponed first so the neighbor is a nonterminal.
    """
    d = postpone_terminals(d)
    frag = _fragment_map(stage)   # funnel renamings and E -> eps, mapped to ()
    kept = _rules_of(stage)
    dropped = {r for r, added in frag.items() if added == ()}
    funnel_rens = {r for r in dropped if r.rhs != ()}
    by_pair = {}
    for rule in stage.additions:
        by_pair[rule.lhs] = rule

    cells = trace_cells(d)
    # cells that will hold the eraser: produced by funnel renamings
    lifted: List[int] = list(cells.start_cells)
    steps: List[DerivationStep] = []
    for idx, step in enumerate(d.steps):
        consumed, produced = cells.step_cells[idx]
        rule = step.production
        if rule in funnel_rens:
            # absorb the funnel cell with a neighbor instead of renaming it
            cell = consumed[0]
            pos = lifted.index(cell)
            left = lifted[pos - 1] if pos > 0 else None
            right = lifted[pos + 1] if pos + 1 < len(lifted) else None
            funnel_sym = rule.lhs[0]
            if left is not None and cells.symbol_of[left].is_nonterminal:
                host = cells.symbol_of[left]
                absorb = by_pair.get((host, funnel_sym))
                at = pos - 1
            elif right is not None and cells.symbol_of[right].is_nonterminal:
                host = cells.symbol_of[right]
                absorb = by_pair.get((funnel_sym, host))
                at = pos
            else:
                raise TraceMismatch(
                    "funnel symbol has no nonterminal neighbor to absorb it")
            if absorb is None:
                raise TraceMismatch(
                    f"no erasure rule for funnel {funnel_sym.name} next to {host.name}")
            steps.append(DerivationStep(at, absorb))
            # the eraser cell never existed in lifted land; the host cell
            # survives the absorption unchanged
            del lifted[pos]
            # the produced eraser cell maps to nothing
            continue
        if rule in dropped:
            # E -> eps: its cell was never materialized
            continue
        if rule not in kept:
            raise TraceMismatch(f"eps-erasure cannot map {rule!r}")
        cell = consumed[0]
        pos = lifted.index(cell)
        steps.append(DerivationStep(pos, rule))
        lifted[pos:pos + len(consumed)] = list(produced)
    return Derivation(d.start, tuple(steps), stage.grammar_after)


# -- renaming elimination (unit closure) ---------------------------------------

def _lift_unit_closure(stage: TraceStage, d: Derivation) -> Derivation:
    """Delete each renaming step and substitute its source symbol into the
    rule that eventually consumes the renamed cell."""
    out_rules = _rules_of(stage)
    steps = [(s.position, s.production) for s in d.steps]

    def consumer_of(start_idx: int, pos: int) -> Tuple[int, int]:
        """Next step whose lhs covers ``pos``; tracks position shifts."""
        p = pos
        for j in range(start_idx, len(steps)):
            q, rule = steps[j]
            k = len(rule.lhs)
            if q <= p < q + k:
                return j, p - q
            if q + k <= p:
                p += len(rule.rhs) - k
        raise TraceMismatch("renamed cell is never consumed")

    i = 0
    while i < len(steps):
        pos, rule = steps[i]
        if classify_production(rule) is not RuleKind.REN:
            i += 1
            continue
        j, offset = consumer_of(i + 1, pos)
        q, consumer = steps[j]
        new_lhs = list(consumer.lhs)
        new_lhs[offset] = rule.lhs[0]
        steps[j] = (q, Production(tuple(new_lhs), consumer.rhs))
        del steps[i]
        # deleting a renaming changes no lengths, later positions stand
    lifted = []
    for pos, rule in steps:
        if rule not in out_rules:
            raise TraceMismatch(f"closed rule {rule!r} missing from output")
        lifted.append(DerivationStep(pos, rule))
    return Derivation(d.start, tuple(lifted), stage.grammar_after)


# -- annihilations into the eraser machinery -----------------------------------

def _lift_annihilations(rss_stage: TraceStage, absorb_stage: TraceStage,
                        d: Derivation) -> Derivation:
    """Each annihilation becomes name-it, rename-to-eraser, absorb-with-
    neighbor; terminal steps are postponed first so neighbors are
    nonterminal."""
    d = postpone_terminals(d)
    frag = _fragment_map(rss_stage)
    out = absorb_stage.grammar_after
    out_rules = set(out.productions)
    absorb_by_pair = {rule.lhs: rule for rule in absorb_stage.additions}
    back_of = {rule.lhs[0]: rule for rule in absorb_stage.additions
               if classify_production(rule) is RuleKind.REN}

    cells = trace_cells(d)
    lifted: List[int] = list(cells.start_cells)
    steps: List[DerivationStep] = []
    for idx, step in enumerate(d.steps):
        rule = step.production
        consumed, _produced = cells.step_cells[idx]
        if rule in frag:
            # annihilation AB -> eps
            (d0, name_rule), (_d1, ren_rule) = frag[rule]
            cell = consumed[0]
            pos = lifted.index(cell)
            steps.append(DerivationStep(pos + d0, name_rule))
            steps.append(DerivationStep(pos, ren_rule))
            # now the eraser sits at pos; absorb with a neighbor
            left = lifted[pos - 1] if pos > 0 else None
            right = lifted[pos + 2] if pos + 2 < len(lifted) else None
            eraser = ren_rule.rhs[0]
            if left is not None and cells.symbol_of[left].is_nonterminal:
                host = cells.symbol_of[left]
                pair = (host, eraser)
                at = pos - 1
            elif right is not None and cells.symbol_of[right].is_nonterminal:
                host = cells.symbol_of[right]
                pair = (eraser, host)
                at = pos
            else:
                raise TraceMismatch("annihilation site has no nonterminal neighbor")
            absorb = absorb_by_pair.get(pair)
            if absorb is None:
                raise TraceMismatch(
                    f"no absorption for pair {pair[0].name} {pair[1].name}")
            steps.append(DerivationStep(at, absorb))
            steps.append(DerivationStep(at, back_of[absorb.rhs[0]]))
            del lifted[pos:pos + 2]
            continue
        if rule not in out_rules:
            raise TraceMismatch(f"annihilation lift cannot map {rule!r}")
        cell = consumed[0]
        pos = lifted.index(cell)
        steps.append(DerivationStep(pos, rule))
        lifted[pos:pos + len(consumed)] = list(cells.step_cells[idx][1])
    return Derivation(d.start, tuple(steps), out)


# -- survivor marking ----------------------------------------------------------

def _lift_eps_mark(stage: TraceStage, d: Derivation) -> Derivation:
    """Thread the mark along one surviving terminal's ancestry."""
    res = replay(d)
    word = res.final
    if not word:
        raise TraceMismatch("the marked grammar cannot derive the empty word")
    cells = trace_cells(d)
    # hatted twins are recorded as fresh symbols in stage order matching the
    # input grammar's nonterminal table
    hat: Dict[Symbol, Symbol] = {}
    nts = [s for s in d.grammar.nonterminals]
    for base, fresh in zip(nts, stage.fresh):
        hat[base] = fresh.symbol

    # pick the leftmost surviving terminal cell and chase its ancestry
    target = cells.final_cells[next(
        i for i, s in enumerate(res.final) if s.is_terminal)]
    on_thread = {target}
    cur = target
    while cells.born_at[cur] != -1:
        step_idx = cells.born_at[cur]
        parent = cells.step_cells[step_idx][0][0]
        on_thread.add(parent)
        cur = parent

    out_rules = _rules_of(stage)

    def mark(symbols, flags):
        return tuple(hat[s] if f and s.is_nonterminal else s
                     for s, f in zip(symbols, flags))

    start_flags = [c in on_thread for c in cells.start_cells]
    if sum(start_flags) != 1:
        raise TraceMismatch("survivor thread must cross the start form once")
    steps: List[DerivationStep] = []
    for idx, step in enumerate(d.steps):
        consumed, produced = cells.step_cells[idx]
        lhs_flags = [c in on_thread for c in consumed]
        rhs_flags = [c in on_thread for c in produced]
        if not any(lhs_flags):
            steps.append(step)
            continue
        rhs = step.production.rhs
        marked_rhs = mark(rhs, rhs_flags) if any(rhs_flags) else rhs
        rule = Production(mark(step.production.lhs, lhs_flags), marked_rhs)
        if rule not in out_rules:
            raise TraceMismatch(f"marked rule {rule!r} missing from output")
        steps.append(DerivationStep(step.position, rule))
    return Derivation(mark(d.start, start_flags), tuple(steps), stage.grammar_after)


# -- wrappers ------------------------------------------------------------------

def _lift_start_wrapper(stage: TraceStage, d: Derivation) -> Derivation:
    out = stage.grammar_after
    if d.start == (stage.additions[0].rhs[0],):
        wrapper = stage.additions[0]
        steps = (DerivationStep(0, wrapper),) + tuple(d.steps)
        return Derivation((out.start,), steps, out)
    return Derivation(d.start, d.steps, out)


def _lift_eps_wrapper(stage: TraceStage, d: Derivation) -> Derivation:
    out = stage.grammar_after
    inner = next(p for p in stage.additions if p.rhs != ())
    if d.start == (inner.rhs[0],):
        steps = (DerivationStep(0, inner),) + tuple(d.steps)
        return Derivation((out.start,), steps, out)
    return Derivation(d.start, d.steps, out)


_LIFTERS = {
    "nullable": _lift_nullable,
    "terminal-lift": _lift_terminal_lift,
    "eps-erasure": _lift_eps_erasure,
    "unit-closure": _lift_unit_closure,
    "eps-mark": _lift_eps_mark,
    "start-wrapper": _lift_start_wrapper,
    "eps-wrapper": _lift_eps_wrapper,
}
