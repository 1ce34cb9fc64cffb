"""Derivations as explicit, replayable objects.

A derivation is a start sentential form plus an ordered list of steps, each
naming a production and the 0-based position where its lhs matches.  Steps
carry arbitrary positions (not leftmost normal form) because the reordering
procedures move rewrites around freely; leftmost display is a convenience
only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .grammar import Grammar, Production, Symbol, fmt_symbols

#: a sentential form is a (possibly empty) run of symbols
SententialForm = Tuple[Symbol, ...]


@dataclass(frozen=True)
class DerivationStep:
    position: int
    production: Production

    def __repr__(self) -> str:
        return f"@{self.position} {self.production!r}"


@dataclass(frozen=True)
class Derivation:
    start: SententialForm
    steps: Tuple[DerivationStep, ...]
    grammar: Grammar

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    final: Optional[SententialForm]
    failed_index: Optional[int] = None
    reason: str = ""


def apply_step(form: SententialForm, step: DerivationStep) -> Optional[SententialForm]:
    """Splice one rewrite into the form, or None if the lhs does not match."""
    lhs, rhs = step.production.lhs, step.production.rhs
    pos = step.position
    if pos < 0 or pos + len(lhs) > len(form):
        return None
    if form[pos:pos + len(lhs)] != lhs:
        return None
    return form[:pos] + rhs + form[pos + len(lhs):]


def replay(d: Derivation) -> ReplayResult:
    form = d.start
    rule_set = set(d.grammar.productions)
    for i, step in enumerate(d.steps):
        if step.production not in rule_set:
            return ReplayResult(False, None, i, "production not in grammar")
        nxt = apply_step(form, step)
        if nxt is None:
            window = fmt_symbols(form[step.position:step.position + len(step.production.lhs)])
            return ReplayResult(
                False, None, i,
                f"lhs {fmt_symbols(step.production.lhs)!r} does not match "
                f"{window!r} at position {step.position}")
        form = nxt
    return ReplayResult(True, form)


def validate_derivation(d: Derivation) -> ReplayResult:
    """True plus the final form iff every step replays; else the first
    failing step index and an expected-vs-found message."""
    return replay(d)


def forms_of(d: Derivation) -> Iterator[SententialForm]:
    """Yield every intermediate form, starting form included."""
    form = d.start
    yield form
    for step in d.steps:
        nxt = apply_step(form, step)
        if nxt is None:
            raise ValueError(f"invalid derivation at step {step!r}")
        form = nxt
        yield form


def length_profile(d: Derivation) -> List[int]:
    return [len(f) for f in forms_of(d)]


def final_form(d: Derivation) -> SententialForm:
    res = replay(d)
    if not res.ok:
        raise ValueError(f"invalid derivation: step {res.failed_index}: {res.reason}")
    return res.final


def leftmost_display(d: Derivation) -> str:
    """Human-readable replay, one form per line."""
    return "\n".join(fmt_symbols(f) if f else "@eps" for f in forms_of(d))


# -- cell-level tracking ---------------------------------------------------
#
# Several rewriting procedures need to follow individual symbol occurrences
# through splices (who created a cell, who consumed it).  Cells get fresh
# integer ids; each step consumes a contiguous run and produces a new run.

@dataclass
class CellTrace:
    """Occurrence-level account of a derivation replay."""

    start_cells: Tuple[int, ...]
    #: per step: (consumed cell ids, produced cell ids)
    step_cells: List[Tuple[Tuple[int, ...], Tuple[int, ...]]]
    #: cell id -> symbol
    symbol_of: dict
    #: cell id -> (step index that produced it, or -1 for start cells)
    born_at: dict
    #: cell id -> step index that consumed it, or None if it survives
    consumed_at: dict
    final_cells: Tuple[int, ...]


def trace_cells(d: Derivation) -> CellTrace:
    counter = 0
    cells: List[int] = []
    symbol_of = {}
    born_at = {}
    consumed_at = {}

    def new_cell(sym: Symbol, step_idx: int) -> int:
        nonlocal counter
        cid = counter
        counter += 1
        symbol_of[cid] = sym
        born_at[cid] = step_idx
        consumed_at[cid] = None
        return cid

    for sym in d.start:
        cells.append(new_cell(sym, -1))
    start_cells = tuple(cells)

    step_cells = []
    for i, step in enumerate(d.steps):
        k = len(step.production.lhs)
        consumed = tuple(cells[step.position:step.position + k])
        if tuple(symbol_of[c] for c in consumed) != step.production.lhs:
            raise ValueError(f"invalid derivation at step {i}")
        for c in consumed:
            consumed_at[c] = i
        produced = tuple(new_cell(s, i) for s in step.production.rhs)
        cells[step.position:step.position + k] = list(produced)
        step_cells.append((consumed, produced))

    return CellTrace(start_cells, step_cells, symbol_of, born_at, consumed_at, tuple(cells))


# -- JSON ------------------------------------------------------------------

def derivation_to_json(d: Derivation) -> dict:
    word = final_form(d)
    return {
        "start": [s.name for s in d.start],
        "steps": [
            {"pos": s.position,
             "lhs": [x.name for x in s.production.lhs],
             "rhs": [x.name for x in s.production.rhs]}
            for s in d.steps
        ],
        "word": [s.name for s in word],
    }


def derivation_from_json(doc: dict, g: Grammar) -> Derivation:
    by_name = {s.name: s for s in g.symbols()}

    def syms(names) -> Tuple[Symbol, ...]:
        return tuple(by_name[n] for n in names)

    steps = tuple(
        DerivationStep(entry["pos"], Production(syms(entry["lhs"]), syms(entry["rhs"])))
        for entry in doc["steps"]
    )
    return Derivation(syms(doc["start"]), steps, g)
