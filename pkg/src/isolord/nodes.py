"""Recursive group descriptions.

A group is a binary tree whose leaves are infinite cyclic groups and whose
inner nodes are cyclic amalgamations ``X = G *_{z_G = z_H} H``.  Elements of
any node are words over the union of its leaf generators.

Cone generators of an amalgam are ``x_i = g_i * Delta^-1`` (one for each cone
generator ``g_i`` of the left factor) followed by the right factor's cone
generators ``h_j``, where ``Delta = z_H * h_1^-1``.

Nodes are plain immutable records; validation and ordering queries live in
:mod:`isolord.groups` and :mod:`isolord.engine`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .words import EMPTY, Substitution, Word


@dataclass(frozen=True, eq=False)
class CyclicNode:
    generator: str
    reversed: bool = False
    name: str | None = None

    is_leaf = True
    cofinal = None

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    @property
    def leaves(self) -> frozenset[str]:
        return frozenset((self.generator,))

    @property
    def leaf_order(self) -> tuple[str, ...]:
        return (self.generator,)

    @property
    def orientation(self) -> int:
        return -1 if self.reversed else 1

    @property
    def cone_generators(self) -> tuple[Word, ...]:
        return (Word.gen(self.generator, self.orientation),)

    @property
    def minimal_positive(self) -> Word:
        return self.cone_generators[0]

    def __repr__(self) -> str:
        r = ", reversed" if self.reversed else ""
        return f"CyclicNode({self.name or self.generator!s}{r})"


@dataclass(frozen=True, eq=False)
class AmalgamNode:
    left: "GroupNode"
    right: "GroupNode"
    z_left: Word
    z_right: Word
    certificate: Word | None = None
    name: str | None = None
    assume_invariance: bool = False
    # derived in __post_init__
    leaves: frozenset = field(init=False, repr=False)
    leaf_order: tuple = field(init=False, repr=False)
    delta: Word = field(init=False, repr=False)
    cone_generators: tuple = field(init=False, repr=False)

    is_leaf = False

    def __post_init__(self):
        overlap = self.left.leaves & self.right.leaves
        if overlap:
            raise ValueError(f"factors share generators {sorted(overlap)}")
        h1 = self.right.minimal_positive
        delta = self.z_right * h1.inverse()
        xs = tuple(g * delta.inverse() for g in self.left.cone_generators)
        setattr_ = object.__setattr__
        setattr_(self, "leaves", self.left.leaves | self.right.leaves)
        setattr_(self, "leaf_order", self.left.leaf_order + self.right.leaf_order)
        setattr_(self, "delta", delta)
        setattr_(self, "cone_generators", xs + tuple(self.right.cone_generators))
        setattr_(self, "_cache", {})

    @property
    def m(self) -> int:
        """Number of x-generators (cone generators coming from the left factor)."""
        return len(self.left.cone_generators)

    @property
    def n(self) -> int:
        return len(self.right.cone_generators)

    @property
    def minimal_positive(self) -> Word:
        return self.cone_generators[0]

    @property
    def cofinal(self) -> Word:
        return self.z_left

    def side_of(self, generator: str) -> int:
        if generator in self.left.leaves:
            return 0
        if generator in self.right.leaves:
            return 1
        raise KeyError(generator)

    def factor(self, side: int) -> "GroupNode":
        return self.right if side else self.left

    def z(self, side: int) -> Word:
        return self.z_right if side else self.z_left

    def __repr__(self) -> str:
        label = self.name or "amalgam"
        return f"AmalgamNode({label}: {self.left!r} * {self.right!r}, {self.z_left} = {self.z_right})"


GroupNode = Union[CyclicNode, AmalgamNode]


def cone_names(node: GroupNode) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(1, len(node.cone_generators) + 1))


def cone_substitution(node: GroupNode) -> Substitution:
    """``s_i -> i-th cone generator`` as a leaf word."""
    return Substitution(dict(zip(cone_names(node), node.cone_generators)))


def cone_index(name: str) -> int:
    return int(name[1:])


def iter_nodes(node: GroupNode):
    """Post-order traversal."""
    if not node.is_leaf:
        yield from iter_nodes(node.left)
        yield from iter_nodes(node.right)
    yield node


def relators(node: GroupNode) -> list[Word]:
    """Defining relators ``z_left * z_right^-1`` of every amalgam in the tree."""
    return [n.z_left * n.z_right.inverse() for n in iter_nodes(node) if not n.is_leaf]


def depth(node: GroupNode) -> int:
    return 0 if node.is_leaf else 1 + max(depth(node.left), depth(node.right))


__all__ = [
    "AmalgamNode",
    "CyclicNode",
    "GroupNode",
    "EMPTY",
    "cone_names",
    "cone_substitution",
    "cone_index",
    "iter_nodes",
    "relators",
    "depth",
]
