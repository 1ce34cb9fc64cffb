"""Shared plumbing for grammar transforms.

Each transform is a pipeline of stages.  A stage is described against its
input grammar as (replacements, standalone additions, fresh symbols); the
output grammar is built by inlining replacements at the removed rule's spot,
appending additions, and deduplicating.  Replaying the recorded stage does
exactly the same thing, which is what makes traces sound by construction.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from ..grammar import Grammar, Production, Symbol, SymbolKind
from ..trace import (FreshNames, FreshSymbol, Replacement, TraceStage,
                     TransformResult, TransformTrace, dedup_rules)


class StageBuilder:
    def __init__(self, g: Grammar, stage_id: str, names: FreshNames):
        self.g = g
        self.stage_id = stage_id
        self.names = names
        self._replacements: List[Replacement] = []
        self._removed_index = {}
        self._additions: List[Production] = []
        self._fresh: List[FreshSymbol] = []
        self._new_nts: List[Symbol] = []
        self.new_start: Optional[Symbol] = None

    def fresh_nonterminal(self, base: str, origin: str, sources=()) -> Symbol:
        sym = Symbol(self.names.fresh(base), SymbolKind.NONTERMINAL)
        self._new_nts.append(sym)
        self._fresh.append(FreshSymbol(sym, origin, tuple(sources)))
        return sym

    def replace(self, removed: Production, fragments) -> None:
        """Replace one input rule by a list of (position delta, rule)."""
        rep = Replacement(removed, tuple(fragments))
        if removed in self._removed_index:
            raise ValueError(f"rule {removed!r} replaced twice in stage {self.stage_id}")
        self._removed_index[removed] = rep
        self._replacements.append(rep)

    def add(self, production: Production) -> None:
        self._additions.append(production)

    @property
    def changed(self) -> bool:
        return bool(self._replacements or self._additions or self.new_start)

    def build(self) -> Tuple[Grammar, TraceStage]:
        rules: List[Production] = []
        for p in self.g.productions:
            rep = self._removed_index.get(p)
            if rep is not None:
                rules.extend(r for _, r in rep.added)
            else:
                rules.append(p)
        rules.extend(self._additions)
        start = self.new_start or self.g.start
        grammar = Grammar(
            self.g.nonterminals + tuple(self._new_nts),
            self.g.terminals,
            start,
            dedup_rules(rules),
            meta=self.g.meta,
        )
        stage = TraceStage(
            stage_id=self.stage_id,
            replacements=tuple(self._replacements),
            additions=tuple(self._additions),
            fresh=tuple(self._fresh),
            grammar_after=grammar,
        )
        return grammar, stage


class Pipeline:
    """Accumulates stages; skips stages that did nothing."""

    def __init__(self, g: Grammar, transform_id: str):
        self.input = g
        self.current = g
        self.transform_id = transform_id
        self.names = FreshNames(s.name for s in g.symbols())
        self.stages: List[TraceStage] = []

    def stage(self, stage_id: str) -> StageBuilder:
        return StageBuilder(self.current, stage_id, self.names)

    def commit(self, builder: StageBuilder) -> Grammar:
        if builder.changed:
            self.current, stage = builder.build()
            self.stages.append(stage)
        return self.current

    def extend(self, result: TransformResult) -> Grammar:
        """Absorb a sub-transform's stages (grammars must line up)."""
        for stage in result.trace.stages:
            self.stages.append(stage)
        self.current = result.grammar
        # keep fresh-name allocation collision-free across sub-transforms
        for f in result.trace.fresh_symbols:
            self.names.claim(f.symbol.name)
        return self.current

    def result(self) -> TransformResult:
        return TransformResult(
            grammar=self.current,
            trace=TransformTrace(self.transform_id, tuple(self.stages)),
        )
