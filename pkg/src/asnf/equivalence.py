"""Bounded language equivalence and the size-2 finiteness check.

The equivalence verdict compares the two bounded enumerations per word
length: a counterexample needs both sides conclusive at the witness length,
full equivalence needs both sides conclusive through the whole bound, and
everything else is reported inconclusive rather than guessed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import AlphabetMismatch
from .grammar import Grammar
from .search import DEFAULT_BUDGET, EnumerationResult, SearchBudget, bounded_enumerate


class EquivStatus(enum.Enum):
    EQUIVALENT_UP_TO_BOUND = "equivalent-up-to-bound"
    COUNTEREXAMPLE = "counterexample"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EquivVerdict:
    status: EquivStatus
    bound: int
    witness: Optional[Tuple[str, ...]]
    #: whether each side's enumeration covered every length up to the bound
    conclusive_sides: Tuple[bool, bool]
    #: which side generated the witness (0 or 1), when present
    witness_side: Optional[int] = None


def verdict_to_json(v: EquivVerdict) -> dict:
    return {
        "status": v.status.value,
        "bound": v.bound,
        "witness": list(v.witness) if v.witness is not None else None,
        "witness_side": v.witness_side,
        "conclusive_sides": list(v.conclusive_sides),
    }


def bounded_equiv(g1: Grammar, g2: Grammar, max_len: int,
                  budget: SearchBudget = DEFAULT_BUDGET) -> EquivVerdict:
    """Compare the bounded languages; shortest-then-lexicographic witness."""
    t1 = {s.name for s in g1.terminals}
    t2 = {s.name for s in g2.terminals}
    if t1 != t2:
        raise AlphabetMismatch(
            f"terminal alphabets differ: {sorted(t1 ^ t2)} not shared")
    r1 = bounded_enumerate(g1, max_len, budget)
    r2 = bounded_enumerate(g2, max_len, budget)
    return _compare(r1, r2, max_len)


def _compare(r1: EnumerationResult, r2: EnumerationResult, max_len: int) -> EquivVerdict:
    w1 = {tuple(s.name for s in w) for w in r1.words}
    w2 = {tuple(s.name for s in w) for w in r2.words}
    both_upto = min(r1.conclusive_upto, r2.conclusive_upto)
    diff = [(w, 0) for w in w1 - w2 if len(w) <= both_upto]
    diff += [(w, 1) for w in w2 - w1 if len(w) <= both_upto]
    if diff:
        witness, side = min(diff, key=lambda ws: (len(ws[0]), ws[0]))
        return EquivVerdict(EquivStatus.COUNTEREXAMPLE, max_len, witness,
                            (r1.conclusive, r2.conclusive), side)
    if r1.conclusive and r2.conclusive:
        if w1 == w2:
            return EquivVerdict(EquivStatus.EQUIVALENT_UP_TO_BOUND, max_len, None,
                                (True, True))
        # sets differ only above both_upto, impossible when both conclusive
        witness, side = min(((w, 0) for w in w1 ^ w2),
                            key=lambda ws: (len(ws[0]), ws[0]))
        return EquivVerdict(EquivStatus.COUNTEREXAMPLE, max_len, witness,
                            (True, True), side)
    return EquivVerdict(EquivStatus.INCONCLUSIVE, max_len, None,
                        (r1.conclusive, r2.conclusive))


# -- minimality ---------------------------------------------------------------

@dataclass(frozen=True)
class FiniteLanguageReport:
    shape_ok: bool
    language: frozenset
    all_short: bool

    def word_names(self):
        return sorted((tuple(s.name for s in w) for w in self.language),
                      key=lambda w: (len(w), w))


def minimality_check(g: Grammar,
                     budget: SearchBudget = DEFAULT_BUDGET) -> FiniteLanguageReport:
    """With every production of size |lhs|+|rhs| <= 2, no rule ever grows a
    form beyond the lone start symbol, so exploration terminates and every
    word has length at most one."""
    shape_ok = all(len(p.lhs) + len(p.rhs) <= 2 for p in g.productions)
    if not shape_ok:
        return FiniteLanguageReport(False, frozenset(), False)
    # budget is a guard only; the reachable set is at most the symbol count
    res = bounded_enumerate(g, max(2, budget.max_form_length), budget)
    all_short = res.conclusive and all(len(w) <= 1 for w in res.words)
    return FiniteLanguageReport(True, res.words, all_short)
