"""Bounded derivation search: enumeration, membership, CYK.

Language questions about general grammars are undecidable, so every search
here runs under an explicit budget and reports honestly whether it was
conclusive.  Two kinds of pruning are distinguished:

* sound prunes, justified by a per-grammar analysis (see below), which can
  never hide a word within the requested bound and therefore preserve
  conclusiveness;
* budget prunes (form length, depth, visited caps), which do lose
  information; the result then reports the shortest word length that might
  have been affected.

The per-grammar analysis computes a yield weight for every symbol: the
largest 0/1 assignment such that no rule decreases total weight.  The weight
of a form is then a lower bound on the length of every word derivable from
it, so forms weighing more than the requested bound are safely pruned.  For
grammars with no contracting rule this degenerates to pruning on form
length.  Two further sound prunes drop provably dead forms: forms containing
an inert nonterminal (one no rule can ever rewrite or consume) and forms
whose edge symbols can never evolve into a word edge.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from . import _kernel
from .derivations import Derivation, DerivationStep, SententialForm
from .errors import WordHasNonterminal
from .grammar import Grammar, Production, RuleKind, Symbol, classify_production

_UNBOUNDED = 10 ** 9


@dataclass(frozen=True)
class SearchBudget:
    """Hard limits guarding the undecidable searches."""

    max_form_length: int = 24
    max_steps: int = 10000
    max_visited: int = 200000

    def __post_init__(self):
        if min(self.max_form_length, self.max_steps, self.max_visited) <= 0:
            raise ValueError("budget fields must be positive")

    def scaled(self, factor: float) -> "SearchBudget":
        return SearchBudget(
            max(1, int(self.max_form_length * factor)),
            max(1, int(self.max_steps * factor)),
            max(1, int(self.max_visited * factor)),
        )


DEFAULT_BUDGET = SearchBudget()


class _Index:
    """Int encoding of a grammar plus the sound-prune analyses."""

    def __init__(self, g: Grammar):
        self.grammar = g
        self.symbols: Tuple[Symbol, ...] = g.nonterminals + g.terminals
        self.id_of: Dict[Symbol, int] = {s: i for i, s in enumerate(self.symbols)}
        self.n_nonterminals = len(g.nonterminals)
        self.rule_lhs: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(self.id_of[s] for s in p.lhs) for p in g.productions)
        self.rule_rhs: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(self.id_of[s] for s in p.rhs) for p in g.productions)
        by_first: Dict[int, List[int]] = {}
        for ridx, lhs in enumerate(self.rule_lhs):
            by_first.setdefault(lhs[0], []).append(ridx)
        self.rules_by_first = {k: tuple(v) for k, v in by_first.items()}

        self.contracting = any(len(r) < len(l)
                               for l, r in zip(self.rule_lhs, self.rule_rhs))
        self.consumes_terminals = any(
            any(s >= self.n_nonterminals for s in l) for l in self.rule_lhs)

        self.weights = self._yield_weights()
        self.inert = self._inert_nonterminals()
        self.good_first, self.good_last = self._good_edges()

    def encode(self, form: SententialForm) -> Tuple[int, ...]:
        return tuple(self.id_of[s] for s in form)

    def decode(self, form: Tuple[int, ...]) -> SententialForm:
        return tuple(self.symbols[i] for i in form)

    def is_word(self, form: Tuple[int, ...]) -> bool:
        nn = self.n_nonterminals
        return all(i >= nn for i in form)

    def _yield_weights(self) -> List[int]:
        """Large 0/1 weights no rule can decrease.

        Any assignment satisfying every rule's constraint is sound; which
        lhs symbols get zeroed when a rule violates it only affects how
        tight the prune is.  A few lowering strategies are tried and the
        heaviest surviving assignment wins (nonterminals are always lowered
        before terminals so words keep full weight whenever possible).
        """
        best = None
        for strategy in ("all", "first", "last"):
            w = self._lower_until_feasible(strategy)
            if best is None or sum(w) > sum(best):
                best = w
        return best

    def _lower_until_feasible(self, strategy: str) -> List[int]:
        w = [1] * len(self.symbols)
        nn = self.n_nonterminals
        while True:
            violated = None
            for lhs, rhs in zip(self.rule_lhs, self.rule_rhs):
                if sum(w[s] for s in lhs) > sum(w[s] for s in rhs):
                    violated = lhs
                    break
            if violated is None:
                return w
            live_nts = [s for s in violated if s < nn and w[s]]
            pool = live_nts or [s for s in violated if w[s]]
            if strategy == "all":
                for s in pool:
                    w[s] = 0
            elif strategy == "first":
                w[pool[0]] = 0
            else:
                w[pool[-1]] = 0

    def _inert_nonterminals(self) -> Set[int]:
        in_lhs = {s for lhs in self.rule_lhs for s in lhs}
        return {i for i in range(self.n_nonterminals) if i not in in_lhs}

    def _good_edges(self) -> Tuple[Set[int], Set[int]]:
        nn = self.n_nonterminals
        first: Set[int] = set(range(nn, len(self.symbols)))
        last: Set[int] = set(range(nn, len(self.symbols)))
        changed = True
        while changed:
            changed = False
            for lhs, rhs in zip(self.rule_lhs, self.rule_rhs):
                if lhs[0] not in first and (not rhs or rhs[0] in first):
                    first.add(lhs[0])
                    changed = True
                if lhs[-1] not in last and (not rhs or rhs[-1] in last):
                    last.add(lhs[-1])
                    changed = True
        return first, last

    def lower_bound(self, form: Tuple[int, ...]) -> int:
        w = self.weights
        return sum(w[s] for s in form)

    def dead(self, form: Tuple[int, ...]) -> bool:
        if not form:
            return False
        if form[0] not in self.good_first or form[-1] not in self.good_last:
            return True
        inert = self.inert
        return bool(inert) and any(s in inert for s in form)


_INDEX_CACHE: Dict[Grammar, _Index] = {}


def grammar_index(g: Grammar) -> _Index:
    idx = _INDEX_CACHE.get(g)
    if idx is None:
        idx = _Index(g)
        _INDEX_CACHE[g] = idx
    return idx


# -- enumeration -------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationResult:
    words: frozenset
    conclusive: bool
    #: word lengths <= this value are definitely complete
    conclusive_upto: int
    visited: int
    expanded: int

    def word_names(self) -> List[Tuple[str, ...]]:
        return sorted((tuple(s.name for s in w) for w in self.words),
                      key=lambda w: (len(w), w))


def bounded_enumerate(g: Grammar, max_len: int,
                      budget: SearchBudget = DEFAULT_BUDGET) -> EnumerationResult:
    """Collect the terminal words of length <= max_len reachable from S.

    conclusive=True means the search space was exhausted with only sound
    prunes applied: the returned set is then exactly the bounded language.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    idx = grammar_index(g)
    start = idx.encode((g.start,))
    words: Set[Tuple[int, ...]] = set()
    min_lb_lost = _UNBOUNDED

    if idx.lower_bound(start) > max_len or idx.dead(start):
        # the start prune is itself sound, nothing is lost
        return EnumerationResult(frozenset(), True, max_len, 0, 0)

    visited = {start}
    queue = deque([(start, 0)])
    expanded = 0
    successors = _kernel.successors
    cap_visited = budget.max_visited
    cap_len = budget.max_form_length
    cap_depth = budget.max_steps

    while queue:
        form, depth = queue.popleft()
        if idx.is_word(form):
            if len(form) <= max_len:
                words.add(form)
            continue
        if depth >= cap_depth:
            min_lb_lost = min(min_lb_lost, idx.lower_bound(form))
            continue
        expanded += 1
        for _pos, _ridx, nf in successors(form, idx.rules_by_first,
                                          idx.rule_lhs, idx.rule_rhs):
            if nf in visited:
                continue
            lb = idx.lower_bound(nf)
            if lb > max_len or idx.dead(nf):
                continue
            if len(nf) > cap_len or len(visited) >= cap_visited:
                min_lb_lost = min(min_lb_lost, lb)
                continue
            visited.add(nf)
            queue.append((nf, depth + 1))

    conclusive_upto = max_len if min_lb_lost == _UNBOUNDED else min(max_len, min_lb_lost - 1)
    return EnumerationResult(
        words=frozenset(idx.decode(w) for w in words),
        conclusive=min_lb_lost == _UNBOUNDED,
        conclusive_upto=conclusive_upto,
        visited=len(visited),
        expanded=expanded,
    )


# -- membership --------------------------------------------------------------

class MembershipStatus(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MembershipResult:
    status: MembershipStatus
    derivation: Optional[Derivation] = None
    method: str = "search"


def is_asnf_cfg(g: Grammar) -> bool:
    """All rules REN/SS/TERMINAL, up to the tolerated epsilon pair."""
    from .forms import epsilon_exemption
    exempt = epsilon_exemption(g)
    skip = set(exempt) if exempt else set()
    ok = {RuleKind.REN, RuleKind.SS, RuleKind.TERMINAL}
    return all(classify_production(p) in ok for p in g.productions if p not in skip)


def membership(g: Grammar, word: SententialForm,
               budget: SearchBudget = DEFAULT_BUDGET) -> MembershipResult:
    """Decide whether ``word`` is generated; exact via CYK on ASNF-CFG
    grammars, budget-bounded search otherwise."""
    word = tuple(word)
    for s in word:
        if not s.is_terminal:
            raise WordHasNonterminal(f"word symbol {s.name!r} is a nonterminal")
    if is_asnf_cfg(g):
        return _cyk_membership(g, word)
    return _search_membership(g, word, budget)


def _search_membership(g: Grammar, word, budget: SearchBudget) -> MembershipResult:
    idx = grammar_index(g)
    target = idx.encode(word)
    start = idx.encode((g.start,))
    wl = len(word)
    word_terms = [s for s in target]

    parents: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], int, int]]] = {start: None}
    if start == target:
        return MembershipResult(MembershipStatus.YES,
                                Derivation((g.start,), (), g), "search")
    hit_budget = False
    if idx.lower_bound(start) > wl or idx.dead(start):
        return MembershipResult(MembershipStatus.NO, None, "search")

    queue = deque([(start, 0)])
    successors = _kernel.successors
    check_subseq = not idx.consumes_terminals
    check_len = not idx.contracting
    nn = idx.n_nonterminals

    while queue:
        form, depth = queue.popleft()
        if depth >= budget.max_steps:
            hit_budget = True
            continue
        for pos, ridx, nf in successors(form, idx.rules_by_first,
                                        idx.rule_lhs, idx.rule_rhs):
            if nf in parents:
                continue
            if nf == target:
                parents[nf] = (form, pos, ridx)
                return MembershipResult(
                    MembershipStatus.YES, _rebuild(g, idx, parents, nf), "search")
            if idx.lower_bound(nf) > wl or idx.dead(nf):
                continue
            if check_len and len(nf) > wl:
                continue
            if check_subseq and not _is_subsequence(
                    [s for s in nf if s >= nn], word_terms):
                continue
            if len(nf) > budget.max_form_length or len(parents) >= budget.max_visited:
                hit_budget = True
                continue
            parents[nf] = (form, pos, ridx)
            queue.append((nf, depth + 1))

    if hit_budget:
        return MembershipResult(MembershipStatus.UNKNOWN, None, "search")
    return MembershipResult(MembershipStatus.NO, None, "search")


def _is_subsequence(sub: List[int], seq: List[int]) -> bool:
    it = iter(seq)
    return all(x in it for x in sub)


def _rebuild(g: Grammar, idx: _Index, parents, final) -> Derivation:
    chain = []
    cur = final
    while parents[cur] is not None:
        parent, pos, ridx = parents[cur]
        chain.append((pos, g.productions[ridx]))
        cur = parent
    chain.reverse()
    steps = tuple(DerivationStep(pos, prod) for pos, prod in chain)
    return Derivation((g.start,), steps, g)


# -- CYK ---------------------------------------------------------------------

def _cyk_membership(g: Grammar, word) -> MembershipResult:
    from .forms import epsilon_exemption
    exempt = epsilon_exemption(g)
    if not word:
        if exempt:
            eps_rule = exempt[0]
            d = Derivation((g.start,), (DerivationStep(0, eps_rule),), g)
            return MembershipResult(MembershipStatus.YES, d, "cyk")
        return MembershipResult(MembershipStatus.NO, None, "cyk")

    skip = set(exempt) if exempt else set()
    ren = [p for p in g.productions if p not in skip
           and classify_production(p) is RuleKind.REN]
    term = [p for p in g.productions if p not in skip
            and classify_production(p) is RuleKind.TERMINAL]
    binary = [p for p in g.productions if p not in skip
              and classify_production(p) is RuleKind.SS]
    if exempt:
        ren.append(exempt[1])

    n = len(word)
    # chart cell (i, j) maps nonterminal -> backpointer
    chart: Dict[Tuple[int, int], Dict[Symbol, tuple]] = {}

    def close(cell: Dict[Symbol, tuple]):
        changed = True
        while changed:
            changed = False
            for p in ren:
                if p.rhs[0] in cell and p.lhs[0] not in cell:
                    cell[p.lhs[0]] = ("unit", p)
                    changed = True

    for i in range(n):
        cell: Dict[Symbol, tuple] = {}
        for p in term:
            if p.rhs[0] == word[i] and p.lhs[0] not in cell:
                cell[p.lhs[0]] = ("leaf", p)
        close(cell)
        chart[(i, i + 1)] = cell

    for span in range(2, n + 1):
        for i in range(0, n - span + 1):
            j = i + span
            cell = {}
            for k in range(i + 1, j):
                left, right = chart[(i, k)], chart[(k, j)]
                for p in binary:
                    if p.lhs[0] not in cell and p.rhs[0] in left and p.rhs[1] in right:
                        cell[p.lhs[0]] = ("split", p, k)
            close(cell)
            chart[(i, j)] = cell

    if g.start not in chart[(0, n)]:
        return MembershipResult(MembershipStatus.NO, None, "cyk")
    return MembershipResult(
        MembershipStatus.YES, _cyk_derivation(g, chart, word), "cyk")


def _cyk_derivation(g: Grammar, chart, word) -> Derivation:
    n = len(word)
    # form holds either ("node", A, i, j) entries or plain terminal symbols
    form: List = [("node", g.start, 0, n)]
    steps: List[DerivationStep] = []
    while True:
        pos = next((i for i, x in enumerate(form) if isinstance(x, tuple)), None)
        if pos is None:
            break
        _tag, sym, i, j = form[pos]
        bp = chart[(i, j)][sym]
        if bp[0] == "leaf":
            steps.append(DerivationStep(pos, bp[1]))
            form[pos:pos + 1] = [word[i]]
        elif bp[0] == "unit":
            steps.append(DerivationStep(pos, bp[1]))
            form[pos:pos + 1] = [("node", bp[1].rhs[0], i, j)]
        else:
            _tag2, p, k = bp
            steps.append(DerivationStep(pos, p))
            form[pos:pos + 1] = [("node", p.rhs[0], i, k), ("node", p.rhs[1], k, j)]
    return Derivation((g.start,), tuple(steps), g)


# -- empty-word detection ----------------------------------------------------

def nullable_nonterminals(g: Grammar) -> Set[Symbol]:
    """Fixpoint nullable set; exact for context-free grammars."""
    nullable: Set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if len(p.lhs) == 1 and p.lhs[0] not in nullable:
                if all(s in nullable for s in p.rhs):
                    nullable.add(p.lhs[0])
                    changed = True
    return nullable


def decide_epsilon(g: Grammar, budget: SearchBudget = DEFAULT_BUDGET) -> Optional[bool]:
    """Is the empty word in L(g)?  None when undecided within budget."""
    from .grammar import GrammarClass, classify_grammar
    if classify_grammar(g) in (GrammarClass.REG, GrammarClass.CFG):
        return g.start in nullable_nonterminals(g)
    res = bounded_enumerate(g, 0, budget)
    if () in res.words:
        return True
    if res.conclusive_upto >= 0:
        # lengths <= conclusive_upto are complete, and 0 is covered
        return False
    if g.meta.get("eps_free") == "true":
        return False
    return None
