"""General grammars into the {REN, SS, TERMINAL, RSS} shape set.

Starting from the Kuroda shape set, three steps:

1. pair split: each AB -> CD becomes AB -> X (a reverse superstructure) and
   X -> CD, with a dedicated fresh X per rule;
2. eps funnel: every A -> eps is rerouted through a dedicated fresh symbol
   and a single distinguished eraser E, as A -> X_A_E, X_A_E -> E, E -> eps,
   so exactly one eps rule remains and only renamings reach E;
3. eps erasure: the funnel renamings and E -> eps are removed; instead every
   funnel symbol F can be absorbed by any nonterminal neighbor via Z F -> Z
   and F Z -> Z.  Neighbors range over nonterminals only: terminal rewrites
   can always be postponed past erasures, so no word is lost.
"""

from __future__ import annotations

from typing import List

from ..grammar import Grammar, Production, RuleKind, Symbol, classify_production
from ..search import DEFAULT_BUDGET, SearchBudget
from ..trace import TransformResult, side_tag
from ._base import Pipeline
from .epsilon import epsilon_construction
from .gknf import compile_stage, terminal_lift_stage


def pair_split_stage(pipe: Pipeline) -> None:
    g = pipe.current
    targets = [p for p in g.productions
               if len(p.lhs) == 2 and len(p.rhs) == 2
               and all(s.is_nonterminal for s in p.lhs + p.rhs)]
    if not targets:
        return
    builder = pipe.stage("pair-split")
    for p in targets:
        x = builder.fresh_nonterminal(
            f"X{side_tag(p.lhs)}{side_tag(p.rhs)}", "pair-split", (p,))
        builder.replace(p, ((0, Production(p.lhs, (x,))),
                            (0, Production((x,), p.rhs))))
    pipe.commit(builder)


def eps_funnel_stage(pipe: Pipeline) -> List[Symbol]:
    """Returns the funnel symbols (those with an X -> E rule)."""
    g = pipe.current
    targets = [p for p in g.productions if classify_production(p) is RuleKind.EPSILON]
    if not targets:
        return []
    builder = pipe.stage("eps-funnel")
    e = builder.fresh_nonterminal("E", "distinguished-eraser", tuple(targets))
    eps_rule = Production((e,), ())
    funnels: List[Symbol] = []
    for p in targets:
        a = p.lhs[0]
        x = builder.fresh_nonterminal(f"X{a.name}E", "eps-funnel", (p,))
        funnels.append(x)
        builder.replace(p, ((0, Production((a,), (x,))),
                            (0, Production((x,), (e,))),
                            (0, eps_rule)))
    pipe.commit(builder)
    return funnels


def eps_erasure_stage(pipe: Pipeline, funnels: List[Symbol]) -> None:
    if not funnels:
        return
    g = pipe.current
    builder = pipe.stage("eps-erasure")
    eraser_rules = [p for p in g.productions
                    if classify_production(p) is RuleKind.EPSILON]
    funnel_set = set(funnels)
    funnel_rens = [p for p in g.productions
                   if classify_production(p) is RuleKind.REN
                   and p.lhs[0] in funnel_set]
    e_symbols = {p.rhs[0] for p in funnel_rens}
    hosts = [s for s in g.nonterminals if s not in e_symbols]
    for p in funnel_rens + eraser_rules:
        builder.replace(p, ())
    for f in funnels:
        for z in hosts:
            builder.add(Production((z, f), (z,)))
            builder.add(Production((f, z), (z,)))
    pipe.commit(builder)


def _weak_gen_core(g: Grammar) -> TransformResult:
    pipe = Pipeline(g, "to_weak_gen_asnf")
    terminal_lift_stage(pipe)
    compile_stage(pipe)
    pair_split_stage(pipe)
    funnels = eps_funnel_stage(pipe)
    eps_erasure_stage(pipe, funnels)
    return pipe.result()


def to_weak_gen_asnf(g: Grammar, budget: SearchBudget = DEFAULT_BUDGET) -> TransformResult:
    """Convert any grammar into renamings, superstructures, terminal rules,
    and reverse superstructures only."""
    return epsilon_construction(g, _weak_gen_core, budget, "to_weak_gen_asnf")
