"""Directed graph over the renaming rules, with per-node views.

Nodes are the grammar's nonterminals; there is one edge A -> B per renaming
rule, self loops dropped (the corresponding rules never change the
language).  The per-node views pair a center with its out-edges (the
abstraction at A) or its in-edges (the reverse abstraction at A).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import FrozenSet, Tuple

from .errors import UnknownNode
from .forms import FormId, validate_normal_form
from .grammar import Grammar, RuleKind, Symbol, classify_production


@dataclass(frozen=True)
class NodeView:
    """A node with one side of its incident edges."""

    center: Symbol
    edges: FrozenSet[Tuple[Symbol, Symbol]]

    def others(self) -> FrozenSet[Symbol]:
        return frozenset(a if b == self.center else b for a, b in self.edges)


@dataclass(frozen=True)
class AbstractionsGraph:
    nodes: FrozenSet[Symbol]
    edges: FrozenSet[Tuple[Symbol, Symbol]]

    def out_edges(self, node: Symbol):
        return frozenset(e for e in self.edges if e[0] == node)

    def in_edges(self, node: Symbol):
        return frozenset(e for e in self.edges if e[1] == node)


_ASNF_FORMS = (FormId.WEAK_CFG_ASNF, FormId.WEAK_GEN_ASNF,
               FormId.STRONG_CFG_ASNF, FormId.STRONG_GEN_ASNF)


def build_abstractions_graph(g: Grammar) -> AbstractionsGraph:
    """Nodes are all nonterminals; edges the non-self renaming rules.

    Inputs outside the ASNF shape sets are accepted (only their renamings
    matter) with a warning.
    """
    if not any(validate_normal_form(g, f).ok for f in _ASNF_FORMS):
        warnings.warn("building an abstractions graph over a grammar outside "
                      "the ASNF shape sets; only its renaming rules are used",
                      stacklevel=2)
    edges = set()
    for p in g.productions:
        if classify_production(p) is RuleKind.REN and p.lhs[0] != p.rhs[0]:
            edges.add((p.lhs[0], p.rhs[0]))
    return AbstractionsGraph(frozenset(g.nonterminals), frozenset(edges))


def abstraction_at(ag: AbstractionsGraph, node: Symbol) -> NodeView:
    if node not in ag.nodes:
        raise UnknownNode(f"{node.name!r} is not a node of the graph")
    return NodeView(node, ag.out_edges(node))


def reverse_abstraction_at(ag: AbstractionsGraph, node: Symbol) -> NodeView:
    if node not in ag.nodes:
        raise UnknownNode(f"{node.name!r} is not a node of the graph")
    return NodeView(node, ag.in_edges(node))


def to_dot(ag: AbstractionsGraph) -> str:
    """Deterministic DOT text: nodes then edges, lexicographic order."""
    lines = ["digraph AG {"]
    for node in sorted(ag.nodes, key=lambda s: s.name):
        lines.append(f'  "{node.name}";')
    for a, b in sorted(ag.edges, key=lambda e: (e[0].name, e[1].name)):
        lines.append(f'  "{a.name}" -> "{b.name}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
