"""Grammar normal-form toolkit.

Constructive conversions between generative-grammar normal forms built from
four structural rule shapes (renaming, superstructure, and their reverses),
explicit replayable derivations with phase-reordering procedures, an
abstractions graph over the renaming rules, and a bounded language
equivalence harness that checks each conversion at desk scale.
"""

from .grammar import (Grammar, GrammarClass, Production, RuleKind, Symbol,
                      SymbolKind, classify_grammar, classify_production,
                      nonterminal, terminal)
from .forms import FormId, ValidationReport, validate_normal_form
from .textio import parse_grammar, serialize_grammar

__version__ = "0.1.0"

__all__ = [
    "FormId",
    "Grammar",
    "GrammarClass",
    "Production",
    "RuleKind",
    "Symbol",
    "SymbolKind",
    "ValidationReport",
    "classify_grammar",
    "classify_production",
    "nonterminal",
    "parse_grammar",
    "serialize_grammar",
    "terminal",
    "validate_normal_form",
    "__version__",
]
