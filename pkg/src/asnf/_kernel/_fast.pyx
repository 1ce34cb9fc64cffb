# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled successor kernel; same contract as the pure module.

The win over the pure loop is avoiding a slice allocation per candidate
rule: the lhs is compared element by element and a new tuple is built only
on an actual match.
"""

KERNEL_NAME = "cython"


def successors(tuple form, dict rules_by_first, tuple rule_lhs, tuple rule_rhs):
    """All one-step rewrites of ``form`` ordered by (position, rule index)."""
    cdef Py_ssize_t n = len(form)
    cdef Py_ssize_t pos, k, i
    cdef bint ok
    cdef tuple lhs, cands
    cdef object ridx, first
    cdef list out = []
    for pos in range(n):
        first = form[pos]
        cands = <tuple> rules_by_first.get(first)
        if cands is None:
            continue
        for ridx in cands:
            lhs = <tuple> rule_lhs[ridx]
            k = len(lhs)
            if pos + k > n:
                continue
            ok = True
            for i in range(1, k):
                if form[pos + i] != lhs[i]:
                    ok = False
                    break
            if ok:
                out.append((pos, ridx, form[:pos] + (<tuple> rule_rhs[ridx]) + form[pos + k:]))
    return out
