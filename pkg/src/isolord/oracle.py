"""Brute-force oracles that do not go through the order engine.

``central_normal_form`` solves the word problem for towers
``<t_1, ..., t_k | t_1^a_1 = ... = t_k^a_k>`` by exponent arithmetic alone:
z = t_i^a_i is central, so every element is ``z^e`` times an alternating
word with exponents in ``(0, a_i)``.

``enumerate_ball`` lists the products of at most ``radius`` cone generators,
which is the positive cone seen through a finite window.  ``oracle_sign``
answers sign queries from that list and says Unknown when the window is too
small.  For groups without a central normal form, deduplication falls back on
``engine.is_identity`` inside buckets keyed by an abelian weight and syllable count, so that
oracle is only partly independent.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import engine
from .nodes import GroupNode, cone_names, iter_nodes
from .words import EMPTY, Word


class NotFullyCentral(ValueError):
    pass


@dataclass(frozen=True)
class CentralNormalForm:
    z_exponent: int
    syllables: tuple[tuple[str, int], ...]

    @property
    def is_identity(self) -> bool:
        return self.z_exponent == 0 and not self.syllables

    def __str__(self) -> str:
        body = ", ".join(f"({g},{e})" for g, e in self.syllables)
        return f"(z^{self.z_exponent}; [{body}])"


def central_exponents(node: GroupNode) -> dict[str, int] | None:
    """``{t: k_t}`` with every ``t^k_t`` equal to one common central z, or None.

    That holds exactly when every amalgam relation reads ``s^k = t^l`` for
    single leaves and each leaf is used with one exponent throughout.
    """
    cache = node._cache
    if "central_exponents" in cache:
        return cache["central_exponents"]
    exps: dict[str, int] = {}
    result: dict[str, int] | None = exps
    if node.is_leaf:
        result = None
    for n in iter_nodes(node):
        if n.is_leaf or result is None:
            continue
        for z in (n.z_left, n.z_right):
            if len(z.letters) != 1:
                result = None
                break
            g, k = z.letters[0]
            if exps.setdefault(g, k) != k:
                result = None
                break
    if result is not None and set(exps) != set(node.leaves):
        result = None
    cache["central_exponents"] = result
    return result


def central_normal_form(node: GroupNode, w: Word) -> CentralNormalForm:
    exps = central_exponents(node)
    if exps is None:
        raise NotFullyCentral(f"{node!r} is not a tower with a common central element")
    z_exp = 0
    stack: list[list] = []  # [generator, exponent] with 0 < exponent < |k|

    def push(g: str, e: int) -> None:
        nonlocal z_exp
        while True:
            if stack and stack[-1][0] == g:
                e += stack.pop()[1]
            k = exps[g]
            q, rem = divmod(e, abs(k))
            z_exp += q if k > 0 else -q
            if rem:
                stack.append([g, rem])
                return
            # the syllable vanished; its neighbours may now merge
            if not stack:
                return
            g, e = stack.pop()

    for g, e in w.letters:
        if g not in exps:
            raise KeyError(g)
        push(g, e)
    return CentralNormalForm(z_exp, tuple((g, e) for g, e in stack))


# -- abelian weights ---------------------------------------------------------


def leaf_weights(node: GroupNode) -> dict[str, Fraction]:
    """A homomorphism to the rationals, used only to bucket elements."""
    if node.is_leaf:
        return {node.generator: Fraction(1)}
    left, right = leaf_weights(node.left), leaf_weights(node.right)

    def value(weights, w):
        return sum((weights[g] * e for g, e in w.letters), Fraction(0))

    a, b = value(left, node.z_left), value(right, node.z_right)
    if a == 0 and b == 0:
        alpha, beta = Fraction(1), Fraction(1)
    elif a == 0:
        alpha, beta = Fraction(1), Fraction(0)
    elif b == 0:
        alpha, beta = Fraction(0), Fraction(1)
    else:
        alpha, beta = b, a
    out = {g: v * alpha for g, v in left.items()}
    out.update({g: v * beta for g, v in right.items()})
    return out


def weight(node: GroupNode, w: Word) -> Fraction:
    weights = node._cache.get("weights")
    if weights is None:
        weights = node._cache["weights"] = leaf_weights(node)
    return sum((weights[g] * e for g, e in w.letters), Fraction(0))


# -- element sets ------------------------------------------------------------


class ElementSet:
    """Set of group elements with an exact key when available, buckets otherwise."""

    def __init__(self, node: GroupNode):
        self.node = node
        self.central = central_exponents(node) is not None
        self.exact: dict = {}
        self.buckets: dict[tuple, list[tuple[Word, object]]] = {}
        self.comparisons = 0

    def _key(self, w: Word):
        if self.central:
            return central_normal_form(self.node, w)
        # syllable count is an invariant of the element once interior syllables avoid <z>
        return weight(self.node, w), len(engine.syllables(self.node, w).parts)

    def find(self, w: Word):
        key = self._key(w)
        if self.central:
            return self.exact.get(key)
        for rep, value in self.buckets.get(key, ()):
            self.comparisons += 1
            if engine.is_identity(self.node, rep.inverse() * w):
                return value
        return None

    def add(self, w: Word, value) -> bool:
        """Insert unless an equal element is present; True if inserted."""
        if self.find(w) is not None:
            return False
        key = self._key(w)
        if self.central:
            self.exact[key] = value
        else:
            self.buckets.setdefault(key, []).append((w, value))
        return True


@dataclass(frozen=True)
class BallEntry:
    element: Word  # leaf word, the first representative found
    word: Word  # shortest positive cone word


@dataclass
class BallTable:
    radius: int
    entries: list[BallEntry]
    provenance: str
    dedup: str
    layer_sizes: list[int] = field(default_factory=list)
    identity_hits: list[Word] = field(default_factory=list)
    _index: ElementSet | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, w: Word) -> BallEntry | None:
        return self._index.find(w)


def _label(node: GroupNode) -> str:
    return node.name or ("leaf " + node.generator if node.is_leaf else "amalgam")


def _is_identity_independent(node: GroupNode, w: Word) -> bool:
    if central_exponents(node) is not None:
        return central_normal_form(node, w).is_identity
    return engine.is_identity(node, w)


def enumerate_ball(node: GroupNode, radius: int) -> BallTable:
    """All products of 1..radius cone generators, one entry per element."""
    cache_key = ("ball", radius)
    if cache_key in node._cache:
        return node._cache[cache_key]
    gens = list(zip(cone_names(node), node.cone_generators))
    index = ElementSet(node)
    table = BallTable(
        radius,
        [],
        _label(node),
        "central normal form" if index.central else "buckets by abelian weight and syllable count, engine equality",
        _index=index,
    )
    frontier = [BallEntry(EMPTY, EMPTY)]
    for _ in range(radius):
        nxt = []
        for entry in frontier:
            for name, g in gens:
                element = entry.element * g
                if _is_identity_independent(node, element):
                    table.identity_hits.append(entry.word * Word.gen(name))
                    continue
                new = BallEntry(element, entry.word * Word.gen(name))
                if index.add(element, new):
                    nxt.append(new)
        table.entries.extend(nxt)
        table.layer_sizes.append(len(nxt))
        frontier = nxt
    node._cache[cache_key] = table
    return table


class OracleVerdict(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    ZERO = "0"
    UNKNOWN = "?"

    def agrees_with(self, s: engine.Sign) -> bool | None:
        if self is OracleVerdict.UNKNOWN:
            return None
        return self.value == s.symbol


def oracle_sign(node: GroupNode, w: Word, radius: int) -> OracleVerdict:
    if _is_identity_independent(node, w):
        return OracleVerdict.ZERO
    table = enumerate_ball(node, radius)
    if table.lookup(w) is not None:
        return OracleVerdict.POSITIVE
    if table.lookup(w.inverse()) is not None:
        return OracleVerdict.NEGATIVE
    return OracleVerdict.UNKNOWN
