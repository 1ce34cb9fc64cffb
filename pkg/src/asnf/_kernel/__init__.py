"""Successor-kernel selection.

The search inner loop (matching every rule lhs against every position of a
sentential form) dominates the runtime of enumeration, membership, and the
equivalence harness.  A compiled Cython kernel is used when it was built for
this installation; the pure-Python kernel is the always-available fallback
and the reference for correctness.  Set ``ASNF_PURE_KERNEL=1`` to force the
fallback (the benchmark and the kernel-agreement tests do).

Both kernels implement the same function with the same deterministic
ordering contract; selection can never change any result, only speed.
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("ASNF_PURE_KERNEL") == "1":
    active = pure
else:
    try:
        from . import _fast as active  # type: ignore[no-redef]
    except ImportError:
        active = pure

successors = active.successors
KERNEL_NAME = active.KERNEL_NAME
