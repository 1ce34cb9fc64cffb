"""Conversion to the generalized Kuroda shape set: A->eps, AB->CD, A->BC, A->a.

The pipeline is terminal separation followed by one compile stage:

* terminal separation replaces terminal occurrences by fresh lifted
  nonterminals X_t with X_t -> t.  A terminal that occurs in some lhs must be
  lifted everywhere (its cells have to stay rewritable in simulated
  derivations); other terminals are lifted only inside rules that are not
  already of the A -> a shape.
* the compile stage turns every remaining non-Kuroda rule into a chain of
  2->2 pair rules plus a binary expansion of the right-hand tail, padding
  with a shared erasable nonterminal when the rhs is shorter than the lhs;
  renamings A -> B become A -> B E0 with the same shared E0 -> eps.

Rules already of a Kuroda shape pass through untouched, so the conversion is
a fixed point on its own outputs.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..grammar import (Grammar, Production, RuleKind, Symbol,
                       classify_production)
from ..trace import TransformResult
from ._base import Pipeline, StageBuilder


def is_kuroda_shape(p: Production) -> bool:
    kind = classify_production(p)
    if kind in (RuleKind.EPSILON, RuleKind.SS, RuleKind.TERMINAL):
        return True
    return (len(p.lhs) == 2 and len(p.rhs) == 2
            and all(s.is_nonterminal for s in p.lhs + p.rhs))


def terminal_lift_stage(pipe: Pipeline) -> Dict[Symbol, Symbol]:
    """Separate terminals out of structural rules; returns the lift map."""
    g = pipe.current
    consumed = {s for p in g.productions for s in p.lhs if s.is_terminal}

    def needs_lift(p: Production) -> bool:
        if classify_production(p) is RuleKind.TERMINAL:
            return p.rhs[0] in consumed
        return any(s.is_terminal for s in p.lhs + p.rhs)

    targets = [p for p in g.productions if needs_lift(p)]
    if not targets:
        return {}

    builder = pipe.stage("terminal-lift")
    lifted: Dict[Symbol, Symbol] = {}

    def lift(sym: Symbol, source: Production) -> Symbol:
        if sym.is_nonterminal:
            return sym
        x = lifted.get(sym)
        if x is None:
            x = builder.fresh_nonterminal(f"X{sym.name}", "lifted-terminal", (source,))
            lifted[sym] = x
            builder.add(Production((x,), (sym,)))
        return x

    for p in targets:
        new = Production(tuple(lift(s, p) for s in p.lhs),
                         tuple(lift(s, p) for s in p.rhs))
        builder.replace(p, ((0, new),))
    pipe.commit(builder)
    return lifted


def compile_stage(pipe: Pipeline) -> None:
    g = pipe.current
    targets = [p for p in g.productions if not is_kuroda_shape(p)]
    if not targets:
        return
    builder = pipe.stage("gknf-compile")

    eraser: Optional[Symbol] = None
    eraser_rule: Optional[Production] = None

    def get_eraser(source: Production) -> Symbol:
        nonlocal eraser, eraser_rule
        if eraser is None:
            eraser = builder.fresh_nonterminal("E0", "shared-eraser", (source,))
            eraser_rule = Production((eraser,), ())
            builder.add(eraser_rule)
        return eraser

    for p in targets:
        if any(s.is_terminal for s in p.lhs + p.rhs):
            raise AssertionError(f"terminal survived lifting in {p!r}")
        m, n = len(p.lhs), len(p.rhs)
        if m == 1 and n == 1:
            # renaming: A -> B becomes A -> B E0, E0 -> eps
            e = get_eraser(p)
            builder.replace(p, ((0, Production(p.lhs, (p.rhs[0], e))),
                                (1, Production((e,), ()))))
        elif m == 1:
            builder.replace(p, tuple(_binarize(builder, p)))
        else:
            builder.replace(p, tuple(_chain(builder, p, get_eraser)))
    pipe.commit(builder)


def _binarize(builder: StageBuilder, p: Production):
    """A -> B0..Bk (k >= 2) as a cascade of superstructures."""
    rhs = p.rhs
    fragments = []
    carrier = p.lhs[0]
    for i in range(len(rhs) - 2):
        nxt = builder.fresh_nonterminal("D", "binarize-carrier", (p,))
        fragments.append((i, Production((carrier,), (rhs[i], nxt))))
        carrier = nxt
    fragments.append((len(rhs) - 2, Production((carrier,), rhs[-2:])))
    return fragments


def _chain(builder: StageBuilder, p: Production, get_eraser):
    """Multi-symbol lhs: pair-rule cascade consuming A1..Am while emitting
    the (padded) rhs, then erase the padding."""
    m = len(p.lhs)
    rhs = p.rhs
    padded: Tuple[Symbol, ...] = rhs
    if len(padded) < m:
        e = get_eraser(p)
        padded = padded + (e,) * (m - len(padded))

    fragments = []
    carrier = p.lhs[0]
    for i in range(m - 1):
        is_last = i == m - 2
        tail = padded[m - 1:]
        if is_last and len(tail) == 1:
            nxt = builder.fresh_nonterminal("D", "chain-carrier", (p,))
            fragments.append((i, Production((carrier, p.lhs[i + 1]), (padded[i], nxt))))
            e = get_eraser(p)
            fragments.append((i + 1, Production((nxt,), (tail[0], e))))
            expanded = padded + (e,)
            break
        nxt = builder.fresh_nonterminal("D", "chain-carrier", (p,))
        fragments.append((i, Production((carrier, p.lhs[i + 1]), (padded[i], nxt))))
        carrier = nxt
    else:
        # tail of length >= 2: binary expansion at the carrier
        tail = padded[m - 1:]
        pos = m - 1
        for j in range(len(tail) - 2):
            nxt = builder.fresh_nonterminal("D", "chain-carrier", (p,))
            fragments.append((pos + j, Production((carrier,), (tail[j], nxt))))
            carrier = nxt
        fragments.append((pos + len(tail) - 2, Production((carrier,), tail[-2:])))
        expanded = padded

    # the expansion is the original rhs followed by erasers; erasing left to
    # right keeps every remaining eraser at the index right after the rhs
    erase = []
    kept = 0
    for sym in expanded:
        if kept < len(p.rhs) and sym == p.rhs[kept]:
            kept += 1
        else:
            erase.append((kept, Production((sym,), ())))
    return fragments + erase


def to_gknf(g: Grammar) -> TransformResult:
    """Rewrite any grammar into the generalized Kuroda shape set.

    The construction is transparent to the empty word (A -> eps is a legal
    shape), so no epsilon wrapper is involved.
    """
    pipe = Pipeline(g, "to_gknf")
    terminal_lift_stage(pipe)
    compile_stage(pipe)
    return pipe.result()
