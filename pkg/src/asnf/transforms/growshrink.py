"""From the strong Savitch form back into strong ASNF with the three-phase
derivation property.

Every annihilation AB -> eps becomes a reverse superstructure AB -> X_AB
renamed into a distinguished eraser E; every other nonterminal X gets an
absorption family XE -> X_XE -> X and EX -> X_EX -> X, plus one EE -> X_EE
-> E pair so adjacent erasers can merge.  The absorption pass is a single
non-recursive sweep over the nonterminals present before it runs (the
merge pair makes deeper nesting reachable by rewriting order alone); its
sufficiency is exercised by the bounded-equivalence harness.
"""

from __future__ import annotations

from ..errors import InputNotStrongSavitch
from ..forms import FormId, epsilon_exemption, validate_normal_form
from ..grammar import (Grammar, Production, RuleKind, Symbol,
                       classify_production)
from ..search import DEFAULT_BUDGET, SearchBudget
from ..trace import TransformResult, TransformTrace, side_tag
from ._base import Pipeline
from .savitch import _strong_savitch_core
from .epsilon import epsilon_construction


def annihilate_to_rss_stage(pipe: Pipeline):
    """Returns (eraser symbol, funnel symbols) or (None, ()) if no work."""
    g = pipe.current
    targets = [p for p in g.productions
               if classify_production(p) is RuleKind.ANNIHILATE2]
    if not targets:
        return None, ()
    builder = pipe.stage("annihilate-to-rss")
    e = builder.fresh_nonterminal("E", "distinguished-eraser", tuple(targets))
    funnels = []
    for p in targets:
        x = builder.fresh_nonterminal(f"X{side_tag(p.lhs)}", "annihilation-name", (p,))
        funnels.append(x)
        builder.replace(p, ((0, Production(p.lhs, (x,))),
                            (0, Production((x,), (e,)))))
    pipe.commit(builder)
    return e, tuple(funnels)


def absorption_stage(pipe: Pipeline, eraser: Symbol, funnels) -> None:
    g = pipe.current
    exempt = epsilon_exemption(g)
    skip = {eraser}
    # The annihilation names are excluded: an absorb-back renaming into one
    # of them would share its rhs with the reverse superstructure that mints
    # it, breaking uniqueness; adjacency with the eraser is still covered
    # because such a name can always rename to the eraser first and merge.
    skip.update(funnels)
    if exempt:
        # the wrapped start must stay out of every rhs to keep its exemption
        skip.add(g.start)
    hosts = [s for s in g.nonterminals if s not in skip]
    builder = pipe.stage("absorption")
    for x in hosts:
        right = builder.fresh_nonterminal(f"X{x.name}E", "absorb-right")
        left = builder.fresh_nonterminal(f"XE{x.name}", "absorb-left")
        builder.add(Production((x, eraser), (right,)))
        builder.add(Production((right,), (x,)))
        builder.add(Production((eraser, x), (left,)))
        builder.add(Production((left,), (x,)))
    merge = builder.fresh_nonterminal("XEE", "absorb-merge")
    builder.add(Production((eraser, eraser), (merge,)))
    builder.add(Production((merge,), (eraser,)))
    pipe.commit(builder)


def savitch_to_strong_gen_asnf(g: Grammar) -> TransformResult:
    """Input must already pass the strong Savitch validator."""
    report = validate_normal_form(g, FormId.STRONG_SAVITCH)
    if not report.ok:
        raise InputNotStrongSavitch(
            f"{len(report.violations)} violations, first: {report.violations[0][1]}")
    pipe = Pipeline(g, "savitch_to_strong_gen_asnf")
    eraser, funnels = annihilate_to_rss_stage(pipe)
    if eraser is not None:
        absorption_stage(pipe, eraser, funnels)
    return pipe.result()


def to_grow_shrink_asnf(g: Grammar, budget: SearchBudget = DEFAULT_BUDGET) -> TransformResult:
    """Full pipeline: any grammar into the strong ASNF whose derivations
    reorder into grow, shrink, and terminal phases."""

    def core(inner: Grammar) -> TransformResult:
        pipe = Pipeline(inner, "to_grow_shrink_asnf")
        pipe.extend(_strong_savitch_core(inner))
        sub = savitch_to_strong_gen_asnf(pipe.current)
        pipe.extend(sub)
        return pipe.result()

    return epsilon_construction(g, core, budget, "to_grow_shrink_asnf")
