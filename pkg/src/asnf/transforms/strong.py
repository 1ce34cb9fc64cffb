"""Strong ASNF: weak conversion followed by the uniqueness construction."""

from __future__ import annotations

from ..errors import NotContextFree
from ..grammar import Grammar, GrammarClass, classify_grammar
from ..search import DEFAULT_BUDGET, SearchBudget
from ..trace import TransformResult
from ._base import Pipeline
from .chomsky import _weak_cfg_core
from .epsilon import epsilon_construction
from .uniqueness import start_wrapper_stage, uniqueness_stage
from .weakgen import _weak_gen_core


def _strong_core(weak_core, transform_id):
    def core(g: Grammar) -> TransformResult:
        pipe = Pipeline(g, transform_id)
        pipe.extend(weak_core(pipe.current))
        start_wrapper_stage(pipe)
        uniqueness_stage(pipe)
        return pipe.result()
    return core


def to_strong_asnf(g: Grammar, flavor: str = "gen",
                   budget: SearchBudget = DEFAULT_BUDGET) -> TransformResult:
    """flavor "cfg" restricts input to context-free grammars and targets the
    three-shape strong form; "gen" accepts anything and keeps reverse
    superstructures."""
    if flavor == "cfg":
        if classify_grammar(g) not in (GrammarClass.REG, GrammarClass.CFG):
            offender = next(p for p in g.productions
                            if len(p.lhs) != 1 or not p.lhs[0].is_nonterminal)
            raise NotContextFree(f"rule {offender!r} has a non-unit lhs")
        core = _strong_core(_weak_cfg_core, "to_strong_asnf")
    elif flavor == "gen":
        core = _strong_core(_weak_gen_core, "to_strong_asnf")
    else:
        raise ValueError(f"unknown flavor {flavor!r} (use 'cfg' or 'gen')")
    return epsilon_construction(g, core, budget, "to_strong_asnf")
