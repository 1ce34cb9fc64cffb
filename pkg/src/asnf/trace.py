"""Transform traces: what a grammar-to-grammar construction did.

A trace is a sequence of stages.  Each stage records the fresh symbols it
minted, which productions it removed, and what it put in their place.  Where
the replacement of one rule application is a fixed straight-line fragment,
the fragment carries position deltas so derivations can be lifted through
the stage mechanically; stages whose rewriting is context dependent get a
dedicated lifter keyed on the stage id (see lifting.py).

Replaying a trace against the input grammar must reproduce the output
grammar exactly; tests rely on this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .grammar import Grammar, Production, Symbol
from .textio import production_to_json


@dataclass(frozen=True)
class FreshSymbol:
    symbol: Symbol
    origin: str
    sources: Tuple[Production, ...] = ()


@dataclass(frozen=True)
class Replacement:
    removed: Optional[Production]
    #: (position delta, production) straight-line fragment, in application order
    added: Tuple[Tuple[int, Production], ...]


@dataclass(frozen=True)
class TraceStage:
    stage_id: str
    replacements: Tuple[Replacement, ...]
    #: standalone productions appended by this stage (not tied to a removal)
    additions: Tuple[Production, ...]
    fresh: Tuple[FreshSymbol, ...]
    grammar_after: Grammar


@dataclass(frozen=True)
class TransformTrace:
    transform_id: str
    stages: Tuple[TraceStage, ...]

    @property
    def fresh_symbols(self) -> Tuple[FreshSymbol, ...]:
        return tuple(f for st in self.stages for f in st.fresh)

    @property
    def replacements(self) -> Tuple[Replacement, ...]:
        return tuple(r for st in self.stages for r in st.replacements)


@dataclass(frozen=True)
class TransformResult:
    grammar: Grammar
    trace: TransformTrace


def dedup_rules(rules) -> Tuple[Production, ...]:
    seen: Dict[Production, None] = {}
    for r in rules:
        seen.setdefault(r, None)
    return tuple(seen)


def replay_stage(g: Grammar, stage: TraceStage) -> Grammar:
    """Apply one stage's record to a grammar; used by trace-soundness tests."""
    removal_map: Dict[Production, Tuple[Production, ...]] = {}
    for rep in stage.replacements:
        if rep.removed is not None:
            removal_map[rep.removed] = tuple(p for _, p in rep.added)
    out: List[Production] = []
    for p in g.productions:
        if p in removal_map:
            out.extend(removal_map[p])
        else:
            out.append(p)
    out.extend(stage.additions)
    after = stage.grammar_after
    return Grammar(after.nonterminals, after.terminals, after.start,
                   dedup_rules(out), meta=g.meta)


def replay_trace(g: Grammar, trace: TransformTrace) -> Grammar:
    cur = g
    for stage in trace.stages:
        cur = replay_stage(cur, stage)
    return cur


# -- fresh-name allocation ---------------------------------------------------

class FreshNames:
    """Deterministic fresh-symbol naming: ``<base>_<n>`` with a per-base
    monotone counter, skipping anything already taken."""

    def __init__(self, taken):
        self._taken = {s.name if isinstance(s, Symbol) else s for s in taken}
        self._counters: Dict[str, int] = {}

    def fresh(self, base: str) -> str:
        n = self._counters.get(base, 0)
        while True:
            n += 1
            name = f"{base}_{n}"
            if name not in self._taken:
                self._counters[base] = n
                self._taken.add(name)
                return name

    def claim(self, name: str) -> None:
        self._taken.add(name)


def side_tag(symbols) -> str:
    """Compact name fragment for a rule side, used in fresh-symbol bases."""
    return "".join(s.name for s in symbols) if symbols else "eps"


# -- JSON ---------------------------------------------------------------------

def trace_to_json(trace: TransformTrace) -> dict:
    """Top-level fields plus full per-stage detail so a trace file can be
    loaded back for derivation lifting."""
    from .textio import grammar_to_json

    def frsh(f: FreshSymbol) -> dict:
        return {"name": f.symbol.name, "origin": f.origin,
                "sources": [production_to_json(p) for p in f.sources]}

    def repl(st: TraceStage, r: Replacement) -> dict:
        return {"stage": st.stage_id,
                "removed": production_to_json(r.removed) if r.removed else None,
                "added": [dict(production_to_json(p), at=delta) for delta, p in r.added]}

    return {
        "transform_id": trace.transform_id,
        "fresh_symbols": [frsh(f) for st in trace.stages for f in st.fresh],
        "replacements": [repl(st, r) for st in trace.stages for r in st.replacements],
        "stages": [
            {"stage": st.stage_id,
             "replacements": [repl(st, r) for r in st.replacements],
             "additions": [production_to_json(p) for p in st.additions],
             "fresh": [frsh(f) for f in st.fresh],
             "grammar_after": grammar_to_json(st.grammar_after)}
            for st in trace.stages
        ],
    }


def trace_from_json(doc: dict) -> TransformTrace:
    from .textio import grammar_from_json

    stages = []
    for entry in doc["stages"]:
        grammar = grammar_from_json(entry["grammar_after"])
        by_name = {s.name: s for s in grammar.symbols()}

        def prod(pdoc: dict) -> Production:
            return Production(tuple(by_name[n] for n in pdoc["lhs"]),
                              tuple(by_name[n] for n in pdoc["rhs"]))

        replacements = tuple(
            Replacement(
                removed=prod(r["removed"]) if r["removed"] else None,
                added=tuple((a["at"], prod(a)) for a in r["added"]),
            )
            for r in entry["replacements"]
        )
        fresh = tuple(
            FreshSymbol(by_name[f["name"]], f["origin"],
                        tuple(prod(p) for p in f["sources"]))
            for f in entry["fresh"]
        )
        stages.append(TraceStage(
            stage_id=entry["stage"],
            replacements=replacements,
            additions=tuple(prod(p) for p in entry["additions"]),
            fresh=fresh,
            grammar_after=grammar,
        ))
    return TransformTrace(doc["transform_id"], tuple(stages))
