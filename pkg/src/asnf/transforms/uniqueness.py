"""Strong uniqueness: funnel every shared rule side through a fresh name.

Works on grammars whose rules are renamings A -> B, productions A -> z with
z not a single nonterminal (superstructures, terminal rules), or z -> B with
z not a single nonterminal (reverse superstructures).  A fresh start S' with
S' -> S is always added first.  Then, for every z that some rule needs on a
side it shares with another rule, the construction routes all owners through
X_z -> z (rhs side) or z -> Y_z (lhs side), leaving the z strings untouched
so shape restrictions survive.

Rules that already satisfy strong uniqueness outright (sole owner of their
lhs and of their rhs, the wrapper included in the counting) pass through
unchanged; this keeps the conversion a fixed point on already-strong
grammars.  Annihilations AB -> eps are outside the admissible shapes; the
Savitch variant asks for them to be tolerated, in which case they pass
through untouched (duplicates collapse by set semantics).
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, List, Tuple

from ..errors import ShapeViolation
from ..grammar import Grammar, Production, RuleKind, Symbol, classify_production
from ..trace import TransformResult, side_tag
from ._base import Pipeline


def _shape_of(p: Production) -> str:
    if classify_production(p) is RuleKind.REN:
        return "ren"
    if len(p.lhs) == 1 and not (len(p.rhs) == 1 and p.rhs[0].is_nonterminal):
        return "rhs-string"  # A -> z
    if len(p.rhs) == 1 and p.rhs[0].is_nonterminal:
        return "lhs-string"  # z -> B
    return "other"


def start_wrapper_stage(pipe: Pipeline) -> None:
    builder = pipe.stage("start-wrapper")
    old = pipe.current.start
    fresh = builder.fresh_nonterminal(f"{old.name}p", "uniqueness-start")
    builder.add(Production((fresh,), (old,)))
    builder.new_start = fresh
    pipe.commit(builder)


def uniqueness_stage(pipe: Pipeline, tolerate_annihilations: bool = False) -> None:
    g = pipe.current
    shapes: Dict[Production, str] = {}
    for p in g.productions:
        shape = _shape_of(p)
        if shape == "other":
            if tolerate_annihilations and classify_production(p) is RuleKind.ANNIHILATE2:
                shape = "tolerated"
            else:
                raise ShapeViolation(
                    f"rule {p!r} is neither a renaming, A -> string, nor string -> B")
        shapes[p] = shape

    lhs_count = Counter(p.lhs for p in g.productions)
    rhs_count = Counter(p.rhs for p in g.productions)

    # group the string-sided rules by their shared string, in rule order
    rhs_groups: Dict[Tuple[Symbol, ...], List[Production]] = {}
    lhs_groups: Dict[Tuple[Symbol, ...], List[Production]] = {}
    for p in g.productions:
        if shapes[p] == "rhs-string":
            rhs_groups.setdefault(p.rhs, []).append(p)
        elif shapes[p] == "lhs-string":
            lhs_groups.setdefault(p.lhs, []).append(p)

    builder = pipe.stage("uniqueness")
    for zeta, rules in rhs_groups.items():
        if rhs_count[zeta] == 1 and lhs_count[rules[0].lhs] == 1:
            continue  # already strongly unique
        x = builder.fresh_nonterminal(f"X{side_tag(zeta)}", "rhs-funnel", tuple(rules))
        x_rule = Production((x,), zeta)
        for p in rules:
            builder.replace(p, ((0, Production(p.lhs, (x,))), (0, x_rule)))
    for zeta, rules in lhs_groups.items():
        if lhs_count[zeta] == 1 and rhs_count[rules[0].rhs] == 1:
            continue
        y = builder.fresh_nonterminal(f"Y{side_tag(zeta)}", "lhs-funnel", tuple(rules))
        y_rule = Production(zeta, (y,))
        for p in rules:
            builder.replace(p, ((0, y_rule), (0, Production((y,), p.rhs))))
    pipe.commit(builder)


def enforce_strong_uniqueness(g: Grammar,
                              tolerate_annihilations: bool = False) -> TransformResult:
    pipe = Pipeline(g, "enforce_strong_uniqueness")
    start_wrapper_stage(pipe)
    uniqueness_stage(pipe, tolerate_annihilations)
    return pipe.result()
