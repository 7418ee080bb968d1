"""Builders for the standard families.

* ``two_cyclic(m, n)``: ``<x, y | x^m = y^n>`` with cone ``{x y^(1-n), y}``.
* ``build_tower``: ``<x1..xk | x1^a1 = ... = xk^ak>`` along any association
  tree, optionally with permuted or reversed leaves.
* ``build_centerless``: ``<a> *_{a^p = (bc)^q} <b, c | b^m = c^n>``, where
  ``(bc)^q`` is not central and is admitted through the certificate
  ``(min z)^q`` of the inner node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import engine
from .groups import amalgam, cyclic
from .nodes import GroupNode
from .words import Word, parse_word

Tree = Union[int, tuple]


class TowerSpecError(ValueError):
    pass


def left_comb(m: int) -> Tree:
    tree: Tree = 1
    for i in range(2, m + 1):
        tree = (tree, i)
    return tree


def right_comb(m: int) -> Tree:
    tree: Tree = m
    for i in range(m - 1, 0, -1):
        tree = (i, tree)
    return tree


def tree_leaves(tree: Tree) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    left, right = tree
    return tree_leaves(left) + tree_leaves(right)


def all_trees(lo: int, hi: int):
    """Every binary association tree over the leaves lo..hi in order."""
    if lo == hi:
        yield lo
        return
    for cut in range(lo, hi):
        for left in all_trees(lo, cut):
            for right in all_trees(cut + 1, hi):
                yield (left, right)


def parse_tree(text: str) -> Tree:
    """Parse ``((1,2),3)`` style text."""
    import ast

    try:
        value = ast.literal_eval(text)
    except (ValueError, SyntaxError) as exc:
        raise TowerSpecError(f"bad association tree {text!r}") from exc

    def check(t):
        if isinstance(t, int):
            return t
        if isinstance(t, tuple) and len(t) == 2:
            return (check(t[0]), check(t[1]))
        raise TowerSpecError(f"bad association tree {text!r}")

    return check(value)


@dataclass(frozen=True)
class TowerSpec:
    exponents: tuple[int, ...]
    association: Tree | None = None
    reversed: tuple[bool, ...] | None = None
    permutation: tuple[int, ...] | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        m = len(self.exponents)
        if m < 2:
            raise TowerSpecError("a tower needs at least two exponents")
        if any(a < 2 for a in self.exponents):
            raise TowerSpecError(f"exponents must be >= 2, got {self.exponents}")
        tree = self.association if self.association is not None else left_comb(m)
        if tree_leaves(tree) != list(range(1, m + 1)):
            raise TowerSpecError(f"association tree must list 1..{m} in order")
        object.__setattr__(self, "association", tree)
        rev = self.reversed if self.reversed is not None else (False,) * m
        if len(rev) != m:
            raise TowerSpecError("one reversal flag per leaf")
        object.__setattr__(self, "reversed", tuple(rev))
        perm = self.permutation if self.permutation is not None else tuple(range(1, m + 1))
        if sorted(perm) != list(range(1, m + 1)):
            raise TowerSpecError(f"{perm} is not a permutation of 1..{m}")
        object.__setattr__(self, "permutation", tuple(perm))
        names = self.names if self.names is not None else tuple(f"x{i}" for i in range(1, m + 1))
        if len(names) != m or len(set(names)) != m:
            raise TowerSpecError("need m distinct generator names")
        object.__setattr__(self, "names", tuple(names))

    @property
    def m(self) -> int:
        return len(self.exponents)

    def slot(self, position: int) -> int:
        """Original leaf index placed at tree position ``position`` (both 1-based)."""
        return self.permutation[position - 1]


def _leaf_z(spec: TowerSpec, position: int) -> Word:
    i = spec.slot(position)
    sign = -1 if spec.reversed[i - 1] else 1
    return Word.gen(spec.names[i - 1], sign * spec.exponents[i - 1])


def closed_form_cone(spec: TowerSpec) -> list[Word]:
    """``s_i = x_i x_(i+1)^(1-a_(i+1)) ... x_m^(1-a_m)`` in tree-position order."""
    out = []
    for i in range(1, spec.m + 1):
        w = Word.gen(spec.names[spec.slot(i) - 1])
        for j in range(i + 1, spec.m + 1):
            k = spec.slot(j)
            w = w * Word.gen(spec.names[k - 1], 1 - spec.exponents[k - 1])
        out.append(w)
    return out


def build_tower(spec: TowerSpec, *, check_closed_form: bool = True) -> GroupNode:
    def build(tree: Tree) -> GroupNode:
        if isinstance(tree, int):
            i = spec.slot(tree)
            return cyclic(spec.names[i - 1], spec.reversed[i - 1])
        left, right = tree
        return amalgam(
            build(left),
            build(right),
            _leaf_z(spec, tree_leaves(left)[0]),
            _leaf_z(spec, tree_leaves(right)[0]),
        )

    node = build(spec.association)
    object.__setattr__(node, "tower_spec", spec)
    if check_closed_form and not any(spec.reversed):
        for i, (got, want) in enumerate(zip(node.cone_generators, closed_form_cone(spec)), 1):
            if not engine.equal(node, got, want):
                raise AssertionError(f"cone generator {i} is {got}, expected {want}")
    return node


def tower(*exponents: int, **kwargs) -> GroupNode:
    return build_tower(TowerSpec(tuple(exponents), **kwargs))


def two_cyclic(m: int = 2, n: int = 3) -> GroupNode:
    """``<x, y | x^m = y^n>``; K is ``two_cyclic(2, 3)``."""
    return build_tower(TowerSpec((m, n), names=("x", "y")))


def permuted_minimal_positive(spec: TowerSpec) -> Word:
    return closed_form_cone(spec)[0]


def cyclic_permutations(m: int) -> list[tuple[int, ...]]:
    base = list(range(1, m + 1))
    return [tuple(base[k:] + base[:k]) for k in range(m)]


# -- the centerless family ---------------------------------------------------


@dataclass(frozen=True)
class CenterlessSpec:
    p: int
    q: int
    m: int
    n: int

    def __post_init__(self):
        if min(self.p, self.q, self.m, self.n) < 2:
            raise TowerSpecError("p, q, m, n must all be >= 2")


def build_centerless(spec: CenterlessSpec) -> GroupNode:
    inner = amalgam(cyclic("b"), cyclic("c"), Word.gen("b", spec.m), Word.gen("c", spec.n), name="G_mn")
    bc = parse_word("b*c")
    cert = parse_word("min*z") ** spec.q
    return amalgam(cyclic("a"), inner, Word.gen("a", spec.p), bc ** spec.q, cert, name="H_pqmn")


def centerless(p: int = 2, q: int = 3, m: int = 2, n: int = 3) -> GroupNode:
    return build_centerless(CenterlessSpec(p, q, m, n))


def displayed_centerless_cone(spec: CenterlessSpec) -> list[Word]:
    """The set ``{a (bc)^(1-q), b c^(1-n), c}`` as printed for this family."""
    bc = parse_word("b*c")
    return [
        Word.gen("a") * bc ** (1 - spec.q),
        Word.gen("b") * Word.gen("c", 1 - spec.n),
        Word.gen("c"),
    ]


# -- shorthand ---------------------------------------------------------------


class ShorthandError(ValueError):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise ShorthandError(f"expected comma-separated integers, got {text!r}") from None


def from_shorthand(text: str) -> GroupNode:
    """``tower:2,3,4 [assoc=left|right|TREE] [perm=2,3,1] [rev=0,1,0]`` or ``centerless:p,q,m,n``.

    A two-exponent tower names its generators x1, x2.
    """
    head, *opts = text.split()
    kind, _, args = head.partition(":")
    if kind == "centerless":
        if opts:
            raise ShorthandError("centerless takes no options")
        vals = _int_list(args)
        if len(vals) != 4:
            raise ShorthandError("centerless needs p,q,m,n")
        return build_centerless(CenterlessSpec(*vals))
    if kind != "tower":
        raise ShorthandError(f"unknown shorthand {kind!r}")
    exps = _int_list(args)
    kw: dict = {}
    for opt in opts:
        key, _, val = opt.partition("=")
        if key == "assoc":
            if val == "left":
                kw["association"] = left_comb(len(exps))
            elif val == "right":
                kw["association"] = right_comb(len(exps))
            else:
                kw["association"] = parse_tree(val)
        elif key == "perm":
            kw["permutation"] = _int_list(val)
        elif key == "rev":
            kw["reversed"] = tuple(bool(v) for v in _int_list(val))
        else:
            raise ShorthandError(f"unknown tower option {key!r}")
    return build_tower(TowerSpec(exps, **kw))


__all__ = [
    "TowerSpec",
    "CenterlessSpec",
    "build_tower",
    "build_centerless",
    "tower",
    "two_cyclic",
    "centerless",
    "permuted_minimal_positive",
    "cyclic_permutations",
    "closed_form_cone",
    "displayed_centerless_cone",
    "left_comb",
    "right_comb",
    "all_trees",
    "from_shorthand",
]
