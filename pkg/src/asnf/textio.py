"""Grammar file format and JSON views.

The text format, line by line:

* ``# ...`` comment lines and blank lines are ignored.
* ``@start <symbol>`` exactly once.
* ``@terminals <sym> ...`` / ``@nonterminals <sym> ...`` optional overrides
  for the lexical rule (uppercase-initial symbols are nonterminals).
* ``@eps-free`` optional annotation: the author asserts the empty word is
  not in the language (consulted when bounded detection is inconclusive).
* rule lines ``<sym> [<sym> ...] -> <rhs> [| <rhs> ...]`` where each rhs is a
  symbol list or the literal ``@eps``.

Serialization emits ``@start``, the two declaration lines (symbols sorted),
then the rules in stored order, one alternative per line.
"""

from __future__ import annotations

import re
from typing import Dict, Iterator, List, Tuple

from .errors import GrammarSyntaxError
from .forms import ValidationReport
from .grammar import (Grammar, Production, Symbol, SymbolKind, fmt_symbols)

_TOKEN = re.compile(r"\S+")
EPS_LITERAL = "@eps"


def _tokens(line: str) -> Iterator[Tuple[str, int]]:
    for m in _TOKEN.finditer(line):
        yield m.group(), m.start() + 1


def parse_grammar(text: str, name: str = "<grammar>") -> Grammar:
    """Parse the text format into a Grammar; raises GrammarSyntaxError."""
    lines = text.splitlines()
    start_name = None
    start_pos = (0, 0)
    declared: Dict[str, SymbolKind] = {}
    decl_order: List[str] = []
    eps_free = False

    # pass 1: directives
    for ln, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = list(_tokens(raw))
        head, col = toks[0]
        if head == "@start":
            if start_name is not None:
                raise GrammarSyntaxError("duplicate @start directive", ln, col)
            if len(toks) != 2:
                raise GrammarSyntaxError("@start takes exactly one symbol", ln, col)
            start_name, start_pos = toks[1][0], (ln, toks[1][1])
        elif head in ("@terminals", "@nonterminals"):
            kind = SymbolKind.TERMINAL if head == "@terminals" else SymbolKind.NONTERMINAL
            for tok, tcol in toks[1:]:
                if tok.startswith("@"):
                    raise GrammarSyntaxError(f"bad symbol name {tok!r}", ln, tcol)
                if declared.get(tok, kind) is not kind:
                    raise GrammarSyntaxError(
                        f"symbol {tok!r} declared both terminal and nonterminal", ln, tcol)
                if tok not in declared:
                    declared[tok] = kind
                    decl_order.append(tok)
        elif head == "@eps-free":
            eps_free = True
        elif head.startswith("@"):
            raise GrammarSyntaxError(f"unknown directive {head!r}", ln, col)

    if start_name is None:
        raise GrammarSyntaxError("missing @start directive (undeclared start symbol)", 1, 1)
    if declared.get(start_name) is SymbolKind.TERMINAL:
        raise GrammarSyntaxError(
            f"start symbol {start_name!r} declared as terminal", *start_pos)

    def kind_of(tok: str) -> SymbolKind:
        if tok in declared:
            return declared[tok]
        return SymbolKind.NONTERMINAL if tok[:1].isupper() else SymbolKind.TERMINAL

    symtab: Dict[str, Symbol] = {}
    nts: List[Symbol] = []
    ts: List[Symbol] = []

    def intern(tok: str, ln: int, col: int) -> Symbol:
        if tok.startswith("@"):
            raise GrammarSyntaxError(f"bad symbol name {tok!r}", ln, col)
        sym = symtab.get(tok)
        if sym is None:
            sym = Symbol(tok, kind_of(tok))
            symtab[tok] = sym
            (nts if sym.is_nonterminal else ts).append(sym)
        return sym

    for tok in decl_order:
        intern(tok, 1, 1)
    start = intern(start_name, *start_pos)

    # pass 2: rules
    productions: List[Production] = []
    for ln, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        toks = list(_tokens(raw))
        if toks[0][0].startswith("@"):
            continue
        arrow_idx = [i for i, (t, _) in enumerate(toks) if t == "->"]
        if len(arrow_idx) != 1:
            raise GrammarSyntaxError("rule needs exactly one '->'", ln, toks[0][1])
        ai = arrow_idx[0]
        lhs_toks, rhs_toks = toks[:ai], toks[ai + 1:]
        if not lhs_toks:
            raise GrammarSyntaxError("empty rule lhs", ln, toks[ai][1])
        lhs = tuple(intern(t, ln, c) for t, c in lhs_toks)
        if not any(s.is_nonterminal for s in lhs):
            raise GrammarSyntaxError(
                f"rule lhs {' '.join(t for t, _ in lhs_toks)!r} has no nonterminal",
                ln, lhs_toks[0][1])
        if not rhs_toks:
            raise GrammarSyntaxError("empty rule rhs (use @eps for the empty word)",
                                     ln, toks[ai][1])
        alternatives: List[List[Tuple[str, int]]] = [[]]
        for t, c in rhs_toks:
            if t == "|":
                alternatives.append([])
            else:
                alternatives[-1].append((t, c))
        for alt in alternatives:
            if not alt:
                raise GrammarSyntaxError("empty alternative in rhs", ln, toks[ai][1])
            if any(t == EPS_LITERAL for t, _ in alt):
                if len(alt) != 1:
                    raise GrammarSyntaxError(f"{EPS_LITERAL} must stand alone",
                                             ln, alt[0][1])
                productions.append(Production(lhs, ()))
            else:
                productions.append(Production(lhs, tuple(intern(t, ln, c) for t, c in alt)))

    meta = {"name": name}
    if eps_free:
        meta["eps_free"] = "true"
    return Grammar(nts, ts, start, productions, meta=meta)


def serialize_grammar(g: Grammar) -> str:
    out = [f"@start {g.start.name}"]
    if g.nonterminals:
        out.append("@nonterminals " + " ".join(sorted(s.name for s in g.nonterminals)))
    if g.terminals:
        out.append("@terminals " + " ".join(sorted(s.name for s in g.terminals)))
    if g.meta.get("eps_free") == "true":
        out.append("@eps-free")
    for p in g.productions:
        rhs = fmt_symbols(p.rhs) if p.rhs else EPS_LITERAL
        out.append(f"{fmt_symbols(p.lhs)} -> {rhs}")
    return "\n".join(out) + "\n"


# -- JSON views ------------------------------------------------------------

def production_to_json(p: Production) -> dict:
    return {"lhs": [s.name for s in p.lhs], "rhs": [s.name for s in p.rhs]}


def grammar_to_json(g: Grammar) -> dict:
    return {
        "nonterminals": sorted(s.name for s in g.nonterminals),
        "terminals": sorted(s.name for s in g.terminals),
        "start": g.start.name,
        "productions": [production_to_json(p) for p in g.productions],
    }


def grammar_from_json(doc: dict) -> Grammar:
    nts = [Symbol(n, SymbolKind.NONTERMINAL) for n in doc["nonterminals"]]
    ts = [Symbol(n, SymbolKind.TERMINAL) for n in doc["terminals"]]
    by_name = {s.name: s for s in nts + ts}
    productions = [
        Production(tuple(by_name[n] for n in entry["lhs"]),
                   tuple(by_name[n] for n in entry["rhs"]))
        for entry in doc["productions"]
    ]
    return Grammar(nts, ts, by_name[doc["start"]], productions)


def report_to_json(report: ValidationReport) -> dict:
    doc = {
        "form": report.form.value,
        "ok": report.ok,
        "violations": [
            {"rule": production_to_json(p), "reason": reason}
            for p, reason in report.violations
        ],
    }
    if report.epsilon_exempt:
        doc["epsilon_exempt"] = [production_to_json(p) for p in report.epsilon_exempt]
    return doc
