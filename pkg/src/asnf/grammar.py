"""Core grammar objects: symbols, productions, grammars, and rule taxonomy.

All types here are immutable after construction and safe to share across
threads.  A grammar is the usual quadruple: disjoint nonterminal and terminal
tables, a start symbol drawn from the nonterminals, and an ordered list of
rewrite rules ``lhs -> rhs`` where the lhs contains at least one nonterminal.
Production order is preserved because serialization and transform traces are
required to be reproducible; it never affects the generated language.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Tuple


class SymbolKind(enum.Enum):
    TERMINAL = "terminal"
    NONTERMINAL = "nonterminal"


@dataclass(frozen=True, order=True)
class Symbol:
    """An interned grammar symbol; identity is (name, kind)."""

    name: str
    kind: SymbolKind = field(compare=True)

    def __post_init__(self):
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(f"bad symbol name {self.name!r}: empty or contains whitespace")

    @property
    def is_terminal(self) -> bool:
        return self.kind is SymbolKind.TERMINAL

    @property
    def is_nonterminal(self) -> bool:
        return self.kind is SymbolKind.NONTERMINAL

    def __repr__(self) -> str:
        tag = "T" if self.is_terminal else "N"
        return f"{self.name}:{tag}"


def nonterminal(name: str) -> Symbol:
    return Symbol(name, SymbolKind.NONTERMINAL)


def terminal(name: str) -> Symbol:
    return Symbol(name, SymbolKind.TERMINAL)


@dataclass(frozen=True)
class Production:
    """One rewrite rule.  The lhs is non-empty and contains a nonterminal;
    the rhs may be empty (the empty word)."""

    lhs: Tuple[Symbol, ...]
    rhs: Tuple[Symbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs:
            raise ValueError("production lhs must be non-empty")
        if not any(s.is_nonterminal for s in self.lhs):
            raise ValueError(f"production lhs {fmt_symbols(self.lhs)!r} has no nonterminal")

    def __repr__(self) -> str:
        return f"{fmt_symbols(self.lhs)} -> {fmt_symbols(self.rhs) or '@eps'}"


def fmt_symbols(symbols: Sequence[Symbol]) -> str:
    return " ".join(s.name for s in symbols)


class RuleKind(enum.Enum):
    """Shape taxonomy of a single production.

    The seven kinds partition all possible rules: REN (A -> B), SS (A -> BC),
    TERMINAL (A -> a), RSS (AB -> C), ANNIHILATE2 (AB -> eps),
    EPSILON (A -> eps), and OTHER for everything else.
    """

    REN = "REN"
    SS = "SS"
    TERMINAL = "TERMINAL"
    RSS = "RSS"
    ANNIHILATE2 = "ANNIHILATE2"
    EPSILON = "EPSILON"
    OTHER = "OTHER"


class GrammarClass(enum.Enum):
    REG = "REG"
    CFG = "CFG"
    CSG = "CSG"
    GG = "GG"


class Grammar:
    """Immutable grammar quadruple plus provenance metadata.

    Symbol tables keep insertion order for deterministic iteration, but
    equality treats them as sets; production order is part of equality.
    """

    __slots__ = ("nonterminals", "terminals", "start", "productions", "meta",
                 "_nt_set", "_t_set", "_hash")

    def __init__(
        self,
        nonterminals: Iterable[Symbol],
        terminals: Iterable[Symbol],
        start: Symbol,
        productions: Iterable[Production],
        meta: Optional[Mapping[str, str]] = None,
    ):
        self.nonterminals: Tuple[Symbol, ...] = _dedup(nonterminals)
        self.terminals: Tuple[Symbol, ...] = _dedup(terminals)
        self.start = start
        self.productions: Tuple[Production, ...] = tuple(productions)
        self.meta: Mapping[str, str] = dict(meta) if meta else {}
        self._nt_set = frozenset(self.nonterminals)
        self._t_set = frozenset(self.terminals)
        self._hash = None
        self._check()

    def _check(self):
        for s in self.nonterminals:
            if not s.is_nonterminal:
                raise ValueError(f"{s!r} listed as nonterminal but tagged terminal")
        for s in self.terminals:
            if not s.is_terminal:
                raise ValueError(f"{s!r} listed as terminal but tagged nonterminal")
        names_nt = {s.name for s in self.nonterminals}
        names_t = {s.name for s in self.terminals}
        clash = names_nt & names_t
        if clash:
            raise ValueError(f"symbols declared both terminal and nonterminal: {sorted(clash)}")
        if self.start not in self._nt_set:
            raise ValueError(f"start symbol {self.start!r} is not a registered nonterminal")
        known = self._nt_set | self._t_set
        for p in self.productions:
            for s in p.lhs + p.rhs:
                if s not in known:
                    raise ValueError(f"rule {p!r} uses unregistered symbol {s!r}")

    # -- queries ---------------------------------------------------------

    def symbols(self) -> Tuple[Symbol, ...]:
        return self.nonterminals + self.terminals

    def is_nonterminal(self, s: Symbol) -> bool:
        return s in self._nt_set

    def is_terminal_symbol(self, s: Symbol) -> bool:
        return s in self._t_set

    def find_terminal(self, name: str) -> Optional[Symbol]:
        for s in self.terminals:
            if s.name == name:
                return s
        return None

    def rules_with_lhs(self, lhs: Tuple[Symbol, ...]) -> Tuple[Production, ...]:
        return tuple(p for p in self.productions if p.lhs == lhs)

    # -- equality --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return (self._nt_set == other._nt_set
                and self._t_set == other._t_set
                and self.start == other.start
                and self.productions == other.productions)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nt_set, self._t_set, self.start, self.productions))
        return self._hash

    def __repr__(self) -> str:
        return (f"Grammar(start={self.start.name}, |N|={len(self.nonterminals)}, "
                f"|T|={len(self.terminals)}, |R|={len(self.productions)})")


def _dedup(items: Iterable) -> tuple:
    seen = {}
    for x in items:
        seen.setdefault(x, None)
    return tuple(seen)


# -- rule taxonomy --------------------------------------------------------

def classify_production(p: Production, g: Optional[Grammar] = None) -> RuleKind:
    """Assign the unique RuleKind for one production.

    The grammar argument exists for interface symmetry; kinds depend only on
    the symbols' own terminal/nonterminal tags.
    """
    lhs, rhs = p.lhs, p.rhs
    if len(lhs) == 1 and lhs[0].is_nonterminal:
        if len(rhs) == 0:
            return RuleKind.EPSILON
        if len(rhs) == 1:
            if rhs[0].is_nonterminal:
                return RuleKind.REN
            return RuleKind.TERMINAL
        if len(rhs) == 2 and all(s.is_nonterminal for s in rhs):
            return RuleKind.SS
        return RuleKind.OTHER
    if len(lhs) == 2 and all(s.is_nonterminal for s in lhs):
        if len(rhs) == 1 and rhs[0].is_nonterminal:
            return RuleKind.RSS
        if len(rhs) == 0:
            return RuleKind.ANNIHILATE2
    return RuleKind.OTHER


# -- grammar classification -----------------------------------------------

def classify_grammar(g: Grammar) -> GrammarClass:
    """Most restrictive class (REG < CFG < CSG < GG) all rules satisfy."""
    if all(_is_reg_rule(p) for p in g.productions):
        return GrammarClass.REG
    if all(len(p.lhs) == 1 and p.lhs[0].is_nonterminal for p in g.productions):
        return GrammarClass.CFG
    if _is_csg(g):
        return GrammarClass.CSG
    return GrammarClass.GG


def _is_reg_rule(p: Production) -> bool:
    if len(p.lhs) != 1 or not p.lhs[0].is_nonterminal:
        return False
    # rhs in T* or T*N: only the last symbol may be a nonterminal
    return all(s.is_terminal for s in p.rhs[:-1])


def _is_csg(g: Grammar) -> bool:
    start_in_rhs = any(g.start in p.rhs for p in g.productions)
    for p in g.productions:
        if not p.rhs:
            # the epsilon amendment: one S -> eps with S absent from every rhs
            if p.lhs == (g.start,) and not start_in_rhs:
                continue
            return False
        if not _csg_pattern(p):
            return False
    return True


def _csg_pattern(p: Production) -> bool:
    """Check lhs = alpha A beta, rhs = alpha gamma beta with gamma nonempty."""
    lhs, rhs = p.lhs, p.rhs
    for i, sym in enumerate(lhs):
        if not sym.is_nonterminal:
            continue
        alpha, beta = lhs[:i], lhs[i + 1:]
        if len(rhs) < len(alpha) + len(beta) + 1:
            continue
        if rhs[:len(alpha)] == alpha and (not beta or rhs[-len(beta):] == beta):
            return True
    return False


# -- lint ------------------------------------------------------------------

def lint_grammar(g: Grammar) -> list:
    """Non-fatal style findings: self renamings, unreachable duplicates."""
    findings = []
    for i, p in enumerate(g.productions):
        if classify_production(p) is RuleKind.REN and p.lhs[0] == p.rhs[0]:
            findings.append(f"rule {i}: self renaming {p!r} (dropped by graph construction)")
    seen = {}
    for i, p in enumerate(g.productions):
        if (p.lhs, p.rhs) in seen:
            findings.append(f"rule {i}: duplicate of rule {seen[(p.lhs, p.rhs)]}: {p!r}")
        else:
            seen[(p.lhs, p.rhs)] = i
    return findings
