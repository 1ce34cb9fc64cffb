"""Shared grammar corpus for the test suite.

Named grammars cover REG, CFG, and general grammars; the random ones are
generated from a fixed seed and filtered to be usable at desk scale
(nonempty eps-free bounded language, conclusive enumeration).  Everything
here is deterministic across runs and hash seeds.
"""

from __future__ import annotations

import random
from typing import Dict, List

from asnf import Grammar, parse_grammar
from asnf.search import SearchBudget, bounded_enumerate, decide_epsilon

ANBN = """\
@start S
S -> a S b | a b
"""

DYCK1 = """\
# nonempty balanced strings; a opens, b closes
@start S
S -> a b | a S b | S S
"""

PALINDROME = """\
@start S
S -> a | b | a a | b b | a S a | b S b
"""

AB_PLUS = """\
# (ab)+ as a right-linear grammar
@start S
S -> a b S | a b
"""

EVEN_AS = """\
# a^(2n), n >= 1, with a renaming kept on purpose
@start S
S -> A
A -> a a A | a a
"""

ANBNCN = """\
@start S
S -> a S B C | a B C
C B -> B C
a B -> a b
b B -> b b
b C -> b c
c C -> c c
"""

# Copy language w w over {a, b}: the first letter converts immediately and
# launches a copier; copiers walk right past pending letters and deposits,
# append their letter before the end marker, and the marker is folded away
# by the last conversion wave.
WW = """\
@start S
S -> a Ca T | b Cb T
T -> Aa T | Ab T | E
a Aa -> a a Ca
a Ab -> a b Cb
b Aa -> b a Ca
b Ab -> b b Cb
Ca Aa -> Aa Ca
Ca Ab -> Ab Ca
Cb Aa -> Aa Cb
Cb Ab -> Ab Cb
Ca Ba -> Ba Ca
Ca Bb -> Bb Ca
Cb Ba -> Ba Cb
Cb Bb -> Bb Cb
Ca E -> Ba E
Cb E -> Bb E
a Ba -> a a
a Bb -> a b
b Ba -> b a
b Bb -> b b
a E -> a
b E -> b
"""

NAMED: Dict[str, str] = {
    "anbn": ANBN,
    "dyck1": DYCK1,
    "palindrome": PALINDROME,
    "ab_plus": AB_PLUS,
    "even_as": EVEN_AS,
    "anbncn": ANBNCN,
    "ww": WW,
}

_VET_BUDGET = SearchBudget(24, 2000, 40000)


def _random_candidate(rng: random.Random) -> str:
    nts = ["S"] + rng.sample(["A", "B", "C", "D", "F"], rng.randint(1, 4))
    ts = rng.sample(["a", "b", "c"], rng.randint(1, 2))
    lines = [f"@start S", "@nonterminals " + " ".join(nts), "@terminals " + " ".join(ts)]
    n_rules = rng.randint(3, 7)
    rules = []
    for i in range(n_rules):
        if i == 0:
            lhs = ["S"]
        elif rng.random() < 0.25:
            lhs = [rng.choice(nts), rng.choice(nts)]
        else:
            lhs = [rng.choice(nts)]
        rlen = rng.randint(0, 3)
        rhs = [rng.choice(nts if rng.random() < 0.5 else ts) for _ in range(rlen)]
        rules.append(" ".join(lhs) + " -> " + (" ".join(rhs) if rhs else "@eps"))
    return "\n".join(lines + rules) + "\n"


def _acceptable(g: Grammar) -> bool:
    if decide_epsilon(g, _VET_BUDGET) is not False:
        return False
    res = bounded_enumerate(g, 8, _VET_BUDGET)
    if not res.conclusive or not res.words:
        return False
    if all(len(w) <= 1 for w in res.words):
        return False
    return True


def random_corpus(count: int = 5, seed: int = 20240817) -> List[Grammar]:
    rng = random.Random(seed)
    out: List[Grammar] = []
    attempt = 0
    while len(out) < count:
        attempt += 1
        if attempt > 4000:
            raise RuntimeError("random corpus generation did not converge")
        text = _random_candidate(rng)
        try:
            g = parse_grammar(text, name=f"random{len(out)}")
        except Exception:
            continue
        if _acceptable(g):
            out.append(g)
    return out


def full_corpus() -> Dict[str, Grammar]:
    corpus = {name: parse_grammar(text, name=name) for name, text in NAMED.items()}
    for i, g in enumerate(random_corpus()):
        corpus[f"random{i}"] = g
    return corpus
