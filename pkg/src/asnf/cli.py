"""Command-line front end.

One subcommand per library operation; composition is left to shells and
test harnesses so each construction stays individually exercisable.  All
output is deterministic byte for byte given the same inputs and flags.

Exit codes: 0 success (or positive verdict), 1 negative verdict
(counterexample, non-member, failed validation), 2 inconclusive verdict,
65 parse error, 66 input file missing, 70 operation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .derivations import (Derivation, derivation_from_json, derivation_to_json,
                          final_form, validate_derivation)
from .equivalence import EquivStatus, bounded_equiv, minimality_check, verdict_to_json
from .errors import GrammarSyntaxError, ToolkitError
from .forms import FormId, validate_normal_form
from .grammar import classify_grammar, classify_production
from .graph import build_abstractions_graph, to_dot
from .lifting import lift_derivation
from .reorder import grow_shrink_reorder, phase_report_to_json, postpone_terminals
from .search import MembershipStatus, SearchBudget, bounded_enumerate, membership
from .textio import (grammar_to_json, parse_grammar, report_to_json,
                     serialize_grammar)
from .trace import trace_from_json, trace_to_json
from . import transforms

EX_DATAERR = 65
EX_NOINPUT = 66
EX_SOFTWARE = 70

TRANSFORMS = {
    "weak-cfg-asnf": (transforms.to_weak_cfg_asnf, FormId.WEAK_CFG_ASNF),
    "gknf": (lambda g, budget: transforms.to_gknf(g), FormId.GKNF),
    "weak-gen-asnf": (transforms.to_weak_gen_asnf, FormId.WEAK_GEN_ASNF),
    "strong-cfg-asnf": (lambda g, budget: transforms.to_strong_asnf(g, "cfg", budget),
                        FormId.STRONG_CFG_ASNF),
    "strong-gen-asnf": (lambda g, budget: transforms.to_strong_asnf(g, "gen", budget),
                        FormId.STRONG_GEN_ASNF),
    "savitch": (transforms.to_savitch, FormId.SAVITCH),
    "strong-savitch": (transforms.to_strong_savitch, FormId.STRONG_SAVITCH),
    "grow-shrink": (transforms.to_grow_shrink_asnf, FormId.STRONG_GEN_ASNF),
}

FORMS = {f.value: f for f in FormId}


def _budget(args) -> SearchBudget:
    scale = float(os.environ.get("ASNF_BUDGET_SCALE", "1"))
    base = SearchBudget(args.max_form_length, args.max_steps, args.max_visited)
    return base.scaled(scale) if scale != 1 else base


def _load_grammar(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_NOINPUT)
    return parse_grammar(text, name=path)


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_NOINPUT)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _word_symbols(g, word_text: str):
    symbols = []
    for token in word_text.split():
        sym = g.find_terminal(token)
        if sym is None:
            raise ToolkitError(f"word symbol {token!r} is not a terminal of the grammar")
        symbols.append(sym)
    return tuple(symbols)


# -- subcommand handlers -------------------------------------------------------

def _cmd_parse(args) -> int:
    g = _load_grammar(args.grammar)
    if args.json:
        _emit(_dump(grammar_to_json(g)), args.output)
    else:
        _emit(serialize_grammar(g), args.output)
    return 0


def _cmd_classify(args) -> int:
    g = _load_grammar(args.grammar)
    cls = classify_grammar(g)
    if args.json:
        _emit(_dump({"class": cls.value}), None)
    else:
        print(cls.value)
    return 0


def _cmd_validate(args) -> int:
    g = _load_grammar(args.grammar)
    report = validate_normal_form(g, FORMS[args.form])
    if args.json:
        _emit(_dump(report_to_json(report)), None)
    else:
        print(f"{args.form}: {'ok' if report.ok else 'FAIL'}")
        for rule, reason in report.violations:
            print(f"  {rule!r}: {reason}")
        if report.epsilon_exempt:
            pair = ", ".join(repr(p) for p in report.epsilon_exempt)
            print(f"  tolerated pair: {pair}")
    return 0 if report.ok else 1


def _cmd_transform(args) -> int:
    g = _load_grammar(args.grammar)
    fn, _form = TRANSFORMS[args.to]
    result = fn(g, _budget(args))
    _emit(serialize_grammar(result.grammar), args.output)
    if args.emit_trace:
        _emit(_dump(trace_to_json(result.trace)), args.emit_trace)
    return 0


def _cmd_derive(args) -> int:
    g = _load_grammar(args.grammar)
    word = _word_symbols(g, args.word)
    res = membership(g, word, _budget(args))
    if res.status is MembershipStatus.YES:
        _emit(_dump(derivation_to_json(res.derivation)), args.output)
        return 0
    print(f"{res.status.value}: no derivation emitted", file=sys.stderr)
    return 1 if res.status is MembershipStatus.NO else 2


def _cmd_member(args) -> int:
    g = _load_grammar(args.grammar)
    word = _word_symbols(g, args.word)
    res = membership(g, word, _budget(args))
    if args.json:
        _emit(_dump({"status": res.status.value, "method": res.method}), None)
    else:
        print(res.status.value)
    return {MembershipStatus.YES: 0, MembershipStatus.NO: 1,
            MembershipStatus.UNKNOWN: 2}[res.status]


def _cmd_enumerate(args) -> int:
    g = _load_grammar(args.grammar)
    res = bounded_enumerate(g, args.max_len, _budget(args))
    words = [" ".join(w) for w in res.word_names()]
    if args.json:
        _emit(_dump({"words": words, "conclusive": res.conclusive,
                     "conclusive_upto": res.conclusive_upto}), None)
    else:
        for w in words:
            print(w if w else "@eps")
        print(f"# conclusive: {res.conclusive} (complete through length "
              f"{res.conclusive_upto})")
    return 0


def _cmd_reorder(args) -> int:
    g = _load_grammar(args.grammar)
    d = derivation_from_json(_load_json(args.derivation), g)
    if args.mode == "terminals":
        out = postpone_terminals(d)
        doc = derivation_to_json(out)
    else:
        out, report = grow_shrink_reorder(d)
        doc = {"derivation": derivation_to_json(out),
               "phases": phase_report_to_json(report)}
    _emit(_dump(doc), args.output)
    return 0


def _cmd_lift(args) -> int:
    g = _load_grammar(args.grammar)
    trace = trace_from_json(_load_json(args.trace))
    d = derivation_from_json(_load_json(args.derivation), g)
    lifted = lift_derivation(trace, d)
    _emit(_dump(derivation_to_json(lifted)), args.output)
    return 0


def _cmd_equiv(args) -> int:
    g1 = _load_grammar(args.grammar1)
    g2 = _load_grammar(args.grammar2)
    verdict = bounded_equiv(g1, g2, args.max_len, _budget(args))
    if args.json:
        _emit(_dump(verdict_to_json(verdict)), None)
    else:
        print(verdict.status.value)
        if verdict.witness is not None:
            side = "first" if verdict.witness_side == 0 else "second"
            print(f"witness ({side} grammar only): "
                  f"{' '.join(verdict.witness) or '@eps'}")
    return {EquivStatus.EQUIVALENT_UP_TO_BOUND: 0,
            EquivStatus.COUNTEREXAMPLE: 1,
            EquivStatus.INCONCLUSIVE: 2}[verdict.status]


def _cmd_graph(args) -> int:
    g = _load_grammar(args.grammar)
    ag = build_abstractions_graph(g)
    if args.dot:
        _emit(to_dot(ag), args.output)
    else:
        doc = {
            "nodes": sorted(s.name for s in ag.nodes),
            "edges": sorted([a.name, b.name] for a, b in ag.edges),
        }
        _emit(_dump(doc), args.output)
    return 0


def _cmd_minimality(args) -> int:
    g = _load_grammar(args.grammar)
    report = minimality_check(g, _budget(args))
    doc = {
        "shape_ok": report.shape_ok,
        "language": [" ".join(w) for w in report.word_names()],
        "all_short": report.all_short,
    }
    if args.json:
        _emit(_dump(doc), None)
    else:
        print(f"shape_ok: {report.shape_ok}")
        if report.shape_ok:
            print(f"language: {{{', '.join(w or '@eps' for w in doc['language'])}}}")
            print(f"all_short: {report.all_short}")
    return 0 if (report.shape_ok and report.all_short) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asnf",
        description="grammar normal-form toolkit: conversions, derivations, "
                    "bounded equivalence")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-form-length", type=int, default=24)
        p.add_argument("--max-steps", type=int, default=10000)
        p.add_argument("--max-visited", type=int, default=200000)
        if output:
            p.add_argument("-o", "--output", default=None,
                           help="output path (default stdout)")

    p = sub.add_parser("parse", help="parse and reserialize a grammar file")
    p.add_argument("grammar")
    common(p)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("classify", help="most restrictive grammar class")
    p.add_argument("grammar")
    common(p, output=False)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("validate", help="check a normal form")
    p.add_argument("grammar")
    p.add_argument("--form", required=True, choices=sorted(FORMS))
    common(p, output=False)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("transform", help="convert to a normal form")
    p.add_argument("grammar")
    p.add_argument("--to", required=True, choices=sorted(TRANSFORMS))
    p.add_argument("--emit-trace", default=None, metavar="PATH")
    common(p)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("derive", help="find a derivation for a word")
    p.add_argument("grammar")
    p.add_argument("--word", required=True, help="space-separated terminals")
    common(p)
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("member", help="decide membership of a word")
    p.add_argument("grammar")
    p.add_argument("--word", required=True)
    common(p, output=False)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("enumerate", help="bounded language enumeration")
    p.add_argument("grammar")
    p.add_argument("--max-len", type=int, default=6)
    common(p, output=False)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("reorder", help="rearrange a derivation into phases")
    p.add_argument("grammar")
    p.add_argument("--derivation", required=True, metavar="JSON")
    p.add_argument("--mode", choices=["terminals", "grow-shrink"], default="grow-shrink")
    common(p)
    p.set_defaults(func=_cmd_reorder)

    p = sub.add_parser("lift", help="lift a derivation through a transform trace")
    p.add_argument("grammar", help="the transform's input grammar")
    p.add_argument("--trace", required=True, metavar="JSON")
    p.add_argument("--derivation", required=True, metavar="JSON")
    common(p)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("equiv", help="bounded language equivalence")
    p.add_argument("grammar1")
    p.add_argument("grammar2")
    p.add_argument("--max-len", type=int, default=6)
    common(p, output=False)
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("graph", help="abstractions graph over renamings")
    p.add_argument("grammar")
    p.add_argument("--dot", action="store_true", help="emit DOT text")
    common(p)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("minimality", help="size-2 rules give finite languages")
    p.add_argument("grammar")
    common(p, output=False)
    p.set_defaults(func=_cmd_minimality)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GrammarSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
