"""Pure-Python successor kernel for the sentential-form search.

Forms are tuples of small ints (symbol indices).  ``successors`` returns the
one-step rewrites of a form ordered by (position, rule index), which fixes
the tie-breaking order for every search built on top.
"""

from __future__ import annotations

KERNEL_NAME = "pure"


def successors(form, rules_by_first, rule_lhs, rule_rhs):
    """All one-step rewrites of ``form``.

    rules_by_first maps a symbol id to the ascending tuple of indices of
    rules whose lhs starts with that symbol; rule_lhs / rule_rhs are tuples
    of int tuples.  Returns [(pos, rule_index, new_form), ...].
    """
    out = []
    n = len(form)
    for pos in range(n):
        cands = rules_by_first.get(form[pos])
        if not cands:
            continue
        for ridx in cands:
            lhs = rule_lhs[ridx]
            k = len(lhs)
            if pos + k <= n and form[pos:pos + k] == lhs:
                out.append((pos, ridx, form[:pos] + rule_rhs[ridx] + form[pos + k:]))
    return out
