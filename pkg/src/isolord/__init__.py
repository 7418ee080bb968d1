"""Isolated left orderings of cyclic amalgamated free products.

Groups are trees of infinite cyclic leaves joined by amalgams
``G *_{z_G = z_H} H``.  The package decides the isolated ordering on such a
group, produces definite-word certificates, and cross-checks both against
independent oracles.
"""

from .engine import Comparison, Sign, compare, cofinal_exponent, equal, is_identity, sign, syllables
from .groups import amalgam, cyclic, load_spec, rank_bound, validate
from .nodes import AmalgamNode, CyclicNode
from .words import EMPTY, Word, parse_word

__all__ = [
    "AmalgamNode",
    "Comparison",
    "CyclicNode",
    "EMPTY",
    "Sign",
    "Word",
    "amalgam",
    "cofinal_exponent",
    "compare",
    "cyclic",
    "equal",
    "is_identity",
    "load_spec",
    "parse_word",
    "rank_bound",
    "sign",
    "syllables",
    "validate",
]
