"""Context-free conversion to the {REN, SS, TERMINAL} shape set.

The standard Chomsky pipeline with one deliberate difference: unit rules
(renamings) are retained, since the target form admits A -> B.  Stages:
nullable-occurrence elimination, terminal separation, rhs binarization.
"""

from __future__ import annotations

from ..errors import NotContextFree
from ..grammar import Grammar, GrammarClass, classify_grammar
from ..search import DEFAULT_BUDGET, SearchBudget
from ..trace import TransformResult
from ._base import Pipeline
from .epsilon import epsilon_construction, nullable_elimination_stage
from .gknf import _binarize, terminal_lift_stage


def binarize_stage(pipe: Pipeline) -> None:
    g = pipe.current
    targets = [p for p in g.productions if len(p.rhs) > 2]
    if not targets:
        return
    builder = pipe.stage("binarize")
    for p in targets:
        builder.replace(p, tuple(_binarize(builder, p)))
    pipe.commit(builder)


def _weak_cfg_core(g: Grammar) -> TransformResult:
    pipe = Pipeline(g, "to_weak_cfg_asnf")
    nullable_elimination_stage(pipe)
    terminal_lift_stage(pipe)
    binarize_stage(pipe)
    return pipe.result()


def to_weak_cfg_asnf(g: Grammar, budget: SearchBudget = DEFAULT_BUDGET) -> TransformResult:
    """Convert a REG or CFG grammar; renamings are kept, eps handled by the
    wrapper construction when the empty word is generated."""
    if classify_grammar(g) not in (GrammarClass.REG, GrammarClass.CFG):
        offender = next(p for p in g.productions
                        if len(p.lhs) != 1 or not p.lhs[0].is_nonterminal)
        raise NotContextFree(f"rule {offender!r} has a non-unit lhs")
    return epsilon_construction(g, _weak_cfg_core, budget, "to_weak_cfg_asnf")
