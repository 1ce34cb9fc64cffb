"""Savitch shape set {AB -> eps, A -> BC, A -> a} and its strong variant.

From the {REN, SS, TERMINAL, RSS} form:

* renamings are removed by unit closure: every rule is copied across all
  renaming-reachable replacements of its lhs symbols (for reverse
  superstructures that means all reachable pairs);
* each reverse superstructure AB -> C is compiled into A -> C K and
  K B -> eps with a dedicated fresh annihilator K: the annihilator is inert
  until the adjacent B it waits for appears, so regions on either side
  evolve independently, mirroring the independent-context factorization
  used by the reordering arguments.  The bounded-equivalence harness is the
  correctness evidence for this encoding.

The strong variant reapplies the uniqueness construction to the
superstructure and terminal rules; annihilations keep lhs-uniqueness by
set semantics alone.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from ..grammar import (Grammar, Production, RuleKind, Symbol,
                       classify_production)
from ..search import DEFAULT_BUDGET, SearchBudget
from ..trace import TransformResult
from ._base import Pipeline
from .epsilon import epsilon_construction
from .uniqueness import start_wrapper_stage, uniqueness_stage
from .weakgen import _weak_gen_core


def _ren_reach(g: Grammar) -> Dict[Symbol, Tuple[Symbol, ...]]:
    """Renaming-reachable set per nonterminal, deterministic order, self first."""
    edges: Dict[Symbol, List[Symbol]] = {}
    for p in g.productions:
        if classify_production(p) is RuleKind.REN:
            edges.setdefault(p.lhs[0], []).append(p.rhs[0])
    reach = {}
    for a in g.nonterminals:
        seen = {a: None}
        queue = [a]
        while queue:
            cur = queue.pop(0)
            for nxt in edges.get(cur, ()):
                if nxt not in seen:
                    seen[nxt] = None
                    queue.append(nxt)
        reach[a] = tuple(seen)
    return reach


def unit_closure_stage(pipe: Pipeline) -> None:
    g = pipe.current
    if not any(classify_production(p) is RuleKind.REN for p in g.productions):
        return
    reach = _ren_reach(g)
    sources: Dict[Symbol, List[Symbol]] = {}
    for a in g.nonterminals:
        for b in reach[a]:
            sources.setdefault(b, []).append(a)

    builder = pipe.stage("unit-closure")
    for p in g.productions:
        kind = classify_production(p)
        if kind is RuleKind.REN:
            builder.replace(p, ())
        elif len(p.lhs) == 1:
            variants = []
            for a in sources.get(p.lhs[0], [p.lhs[0]]):
                v = Production((a,), p.rhs)
                if v not in variants:
                    variants.append(v)
            if variants != [p]:
                builder.replace(p, tuple((0, v) for v in variants))
        else:  # reverse superstructure: close both lhs symbols
            variants = []
            for a in sources.get(p.lhs[0], [p.lhs[0]]):
                for b in sources.get(p.lhs[1], [p.lhs[1]]):
                    v = Production((a, b), p.rhs)
                    if v not in variants:
                        variants.append(v)
            if variants != [p]:
                builder.replace(p, tuple((0, v) for v in variants))
    pipe.commit(builder)


def annihilator_stage(pipe: Pipeline) -> None:
    g = pipe.current
    targets = [p for p in g.productions if classify_production(p) is RuleKind.RSS]
    if not targets:
        return
    builder = pipe.stage("annihilate-encode")
    for p in targets:
        a, b = p.lhs
        k = builder.fresh_nonterminal(f"K{b.name}", "annihilator", (p,))
        builder.replace(p, ((0, Production((a,), (p.rhs[0], k))),
                            (1, Production((k, b), ()))))
    pipe.commit(builder)


def _savitch_core(g: Grammar) -> TransformResult:
    pipe = Pipeline(g, "to_savitch")
    pipe.extend(_weak_gen_core(pipe.current))
    unit_closure_stage(pipe)
    annihilator_stage(pipe)
    return pipe.result()


def to_savitch(g: Grammar, budget: SearchBudget = DEFAULT_BUDGET) -> TransformResult:
    """Convert any grammar into annihilations, superstructures, and terminal
    rules only (no renamings)."""
    return epsilon_construction(g, _savitch_core, budget, "to_savitch")


def _strong_savitch_core(g: Grammar) -> TransformResult:
    pipe = Pipeline(g, "to_strong_savitch")
    pipe.extend(_savitch_core(pipe.current))
    start_wrapper_stage(pipe)
    uniqueness_stage(pipe, tolerate_annihilations=True)
    return pipe.result()


def to_strong_savitch(g: Grammar, budget: SearchBudget = DEFAULT_BUDGET) -> TransformResult:
    return epsilon_construction(g, _strong_savitch_core, budget, "to_strong_savitch")
