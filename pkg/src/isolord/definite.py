"""Definite-word certificates.

Every nontrivial element is written as a word over the cone generators
``s1, s2, ...`` whose letters are all positive or all negative.  Certificates
are checked against the input with the engine before they are returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .engine import Sign
from .nodes import AmalgamNode, GroupNode, cone_names, cone_substitution
from .words import EMPTY, Word, apply


class IdentityInput(ValueError):
    """The element is trivial, so it has no definite rendering."""


class BudgetExhausted(LookupError):
    pass


class CertificateError(AssertionError):
    """A produced certificate failed verification (an internal bug)."""


@dataclass(frozen=True)
class DefiniteCertificate:
    input: Word
    rendering: Word
    polarity: Sign
    verified: bool

    def text(self) -> str:
        return f"{self.polarity.symbol}\n{self.rendering}"


def _shift(w: Word, offset: int) -> Word:
    if not offset:
        return w
    return Word._trusted(tuple((f"s{int(g[1:]) + offset}", e) for g, e in w.letters))


def _delta_rendering(node: AmalgamNode) -> Word:
    cache = node._cache
    if "delta_rendering" not in cache:
        cache["delta_rendering"] = _shift(positive_rendering(node.right, node.delta), node.m)
    return cache["delta_rendering"]


def g_letters_to_x(node: AmalgamNode, ks: list[int], trailing_delta: bool) -> Word:
    """Rewrite ``g_k1 ... g_kt`` with ``g = x Delta`` as a word over ``node``'s cone names."""
    d = _delta_rendering(node)
    out = EMPTY
    for j, k in enumerate(ks):
        out = out * Word.gen(f"s{k}")
        if trailing_delta or j < len(ks) - 1:
            out = out * d
    return out


def positive_rendering(node: GroupNode, w: Word) -> Word:
    """Positive (or empty) cone word for an element ``w >= 1``; unverified."""
    if node.is_leaf:
        e = engine._leaf_exponent(node, w) * node.orientation
        if e < 0:
            raise ValueError(f"{w} is negative in {node!r}")
        return Word.gen("s1", e)
    key = ("pos", w)
    cache = node._cache
    if key in cache:
        return cache[key]
    nf = engine.reduce_via_normal_form(node, w)
    m = node.m
    if engine.sign(node.right, nf.r) < 0:
        raise ValueError(f"{w} is negative")
    out = _shift(positive_rendering(node.right, nf.r), m)
    for f_star, q_star in zip(nf.trace["f_star"], nf.trace["q_star"]):
        ks = [int(g[1:]) for g, _ in positive_rendering(node.left, f_star).expand()]
        out = out * g_letters_to_x(node, ks, trailing_delta=False)
        out = out * _shift(positive_rendering(node.right, q_star), m)
    cache[key] = out
    return out


def _verify(node: GroupNode, w: Word, rendering: Word) -> bool:
    return engine.is_identity(node, w.inverse() * apply(cone_substitution(node), rendering))


def definite_word(node: GroupNode, w: Word) -> DefiniteCertificate:
    s = engine.sign(node, w)
    if s == Sign.ZERO:
        raise IdentityInput(str(w))
    if s > 0:
        rendering = positive_rendering(node, w)
    else:
        rendering = positive_rendering(node, w.inverse()).inverse()
    if not _verify(node, w, rendering):
        raise CertificateError(f"certificate {rendering} does not evaluate to {w}")
    if any((e > 0) != (s > 0) for _, e in rendering.letters):
        raise CertificateError(f"certificate {rendering} is not {s.name.lower()}")
    return DefiniteCertificate(w, rendering, s, True)


def positive_words(k: int, max_length: int):
    """All positive words over ``s1..sk`` of length 1..max_length, shortest first."""
    layer = [EMPTY]
    for _ in range(max_length):
        layer = [w * Word.gen(f"s{i}") for w in layer for i in range(1, k + 1)]
        yield from layer


def definite_search_bounded(node: GroupNode, w: Word, budget: int, equal=None) -> DefiniteCertificate:
    """Breadth-first search for a definite word of length <= ``budget``.

    ``equal(u, v)`` decides equality of leaf words; it defaults to the engine
    but callers that own an independent word problem should pass it in.
    """
    if equal is None:
        equal = lambda u, v: engine.is_identity(node, u.inverse() * v)  # noqa: E731
    if equal(w, EMPTY):
        raise IdentityInput(str(w))
    sub = cone_substitution(node)
    winv = w.inverse()
    for cand in positive_words(len(cone_names(node)), budget):
        value = apply(sub, cand)
        if equal(value, w):
            return DefiniteCertificate(w, cand, Sign.POSITIVE, True)
        if equal(value, winv):
            return DefiniteCertificate(w, cand.inverse(), Sign.NEGATIVE, True)
    raise BudgetExhausted(f"no definite word of length <= {budget} for {w}")
