"""Empty-word handling around the normal-form constructions.

The normal forms other than Kuroda cannot generate the empty word, so a
grammar with eps in its language is split: a core grammar for L \\ {eps} is
converted, and a fresh start with the tolerated pair {S0 -> eps, S0 -> S'}
is wrapped around the result.  S0 appears in no rhs.

Removing eps from the language is exact:

* for regular and context-free grammars, by the usual nullable-occurrence
  expansion with all eps rules dropped;
* for everything else, by first converting to the Kuroda shape set (which is
  transparent to eps) and then building a marked copy in which a single
  survivor mark must be discharged into a terminal: the mark starts on the
  start symbol, each rule application involving the marked cell hands the
  mark to one of its products, and only hat(A) -> a discharges it.  A word is
  derivable in the marked grammar iff it is derivable in the original and
  contains at least one terminal, i.e. is not empty.

Whether eps is in the language at all is decided exactly for CFGs and by
bounded search otherwise; if the search is inconclusive and the grammar does
not carry the @eps-free annotation the construction refuses rather than
guessing.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Dict, List

from ..errors import EpsilonUndecided
from ..grammar import (Grammar, GrammarClass, Production, RuleKind, Symbol,
                       classify_grammar, classify_production)
from ..search import DEFAULT_BUDGET, SearchBudget, decide_epsilon, nullable_nonterminals
from ..trace import TransformResult
from ._base import Pipeline
from .gknf import compile_stage, is_kuroda_shape, terminal_lift_stage

CoreTransform = Callable[[Grammar], TransformResult]


def nullable_elimination_stage(pipe: Pipeline) -> None:
    """Drop eps rules, expanding every nullable occurrence away (CFG only)."""
    g = pipe.current
    nullable = nullable_nonterminals(g)
    targets = [p for p in g.productions
               if not p.rhs or any(s in nullable for s in p.rhs)]
    if not targets:
        return
    builder = pipe.stage("nullable")
    for p in targets:
        variants = []
        positions = [i for i, s in enumerate(p.rhs) if s in nullable]
        for r in range(len(positions) + 1):
            for drop in combinations(positions, r):
                rhs = tuple(s for i, s in enumerate(p.rhs) if i not in drop)
                if rhs:
                    v = Production(p.lhs, rhs)
                    if v not in variants:
                        variants.append(v)
        builder.replace(p, tuple((0, v) for v in variants))
    pipe.commit(builder)


def survivor_mark_stage(pipe: Pipeline) -> None:
    """On a Kuroda-shape grammar, build the marked copy generating L \\ {eps}."""
    g = pipe.current
    for p in g.productions:
        if not is_kuroda_shape(p):
            raise AssertionError(f"survivor mark needs Kuroda shapes, got {p!r}")
    builder = pipe.stage("eps-mark")
    hat: Dict[Symbol, Symbol] = {}
    for s in g.nonterminals:
        hat[s] = builder.fresh_nonterminal(f"{s.name}m", "survivor-mark")
    for p in g.productions:
        kind = classify_production(p)
        if kind is RuleKind.EPSILON:
            continue
        if kind is RuleKind.TERMINAL:
            builder.add(Production((hat[p.lhs[0]],), p.rhs))
        elif kind is RuleKind.SS:
            a, (b, c) = p.lhs[0], p.rhs
            builder.add(Production((hat[a],), (hat[b], c)))
            builder.add(Production((hat[a],), (b, hat[c])))
        else:  # AB -> CD
            (a, b), (c, d) = p.lhs, p.rhs
            for marked_lhs in ((hat[a], b), (a, hat[b])):
                builder.add(Production(marked_lhs, (hat[c], d)))
                builder.add(Production(marked_lhs, (c, hat[d])))
    builder.new_start = hat[g.start]
    pipe.commit(builder)


def remove_epsilon_stages(pipe: Pipeline) -> None:
    """Extend the pipeline with stages taking L to L \\ {eps} exactly."""
    if classify_grammar(pipe.current) in (GrammarClass.REG, GrammarClass.CFG):
        nullable_elimination_stage(pipe)
    else:
        terminal_lift_stage(pipe)
        compile_stage(pipe)
        survivor_mark_stage(pipe)


def wrap_stage(pipe: Pipeline) -> None:
    """Fresh start S0 with the tolerated pair {S0 -> eps, S0 -> S'}."""
    builder = pipe.stage("eps-wrapper")
    inner = pipe.current.start
    s0 = builder.fresh_nonterminal(f"{inner.name}0", "eps-wrapper-start")
    builder.add(Production((s0,), ()))
    builder.add(Production((s0,), (inner,)))
    builder.new_start = s0
    pipe.commit(builder)


def epsilon_construction(
    g: Grammar,
    core: CoreTransform,
    budget: SearchBudget = DEFAULT_BUDGET,
    transform_id: str = "epsilon_construction",
) -> TransformResult:
    """Apply ``core`` directly when eps is not in the language; otherwise
    convert the eps-free remainder and wrap it."""
    has_eps = decide_epsilon(g, budget)
    if has_eps is None:
        raise EpsilonUndecided(
            "cannot decide whether the empty word is generated within the "
            "search budget; raise the budget or annotate the grammar @eps-free")
    if not has_eps:
        inner = core(g)
        from ..trace import TransformTrace
        return TransformResult(inner.grammar,
                               TransformTrace(transform_id, inner.trace.stages))
    pipe = Pipeline(g, transform_id)
    remove_epsilon_stages(pipe)
    pipe.extend(core(pipe.current))
    wrap_stage(pipe)
    return pipe.result()


def identity_core(g: Grammar) -> TransformResult:
    """Core that changes nothing; useful to wrap an already-converted grammar."""
    return Pipeline(g, "identity").result()
