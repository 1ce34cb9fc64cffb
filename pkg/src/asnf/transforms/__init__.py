"""Grammar-to-grammar constructions.

Every transform returns a TransformResult: the output grammar plus a trace
of fresh symbols and rule replacements precise enough to replay the
construction and to lift derivations forward through it.
"""

from ..trace import TransformResult, TransformTrace
from .chomsky import to_weak_cfg_asnf
from .epsilon import epsilon_construction, identity_core
from .gknf import to_gknf
from .growshrink import savitch_to_strong_gen_asnf, to_grow_shrink_asnf
from .savitch import to_savitch, to_strong_savitch
from .strong import to_strong_asnf
from .uniqueness import enforce_strong_uniqueness
from .weakgen import to_weak_gen_asnf

__all__ = [
    "TransformResult",
    "TransformTrace",
    "epsilon_construction",
    "identity_core",
    "enforce_strong_uniqueness",
    "savitch_to_strong_gen_asnf",
    "to_gknf",
    "to_grow_shrink_asnf",
    "to_savitch",
    "to_strong_asnf",
    "to_strong_savitch",
    "to_weak_cfg_asnf",
    "to_weak_gen_asnf",
]
