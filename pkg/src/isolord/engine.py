"""Order decision for the isolated ordering of a cyclic amalgamation.

For ``X = G *_{z} H`` an element is first brought to alternating syllable
form ``q0 f1 q1 ... fl ql`` (interior syllables outside ``<z>``).  With

    z^N_i  <= f_i       < z^(N_i+1)     (in G)
    z^M_i  <= Delta q_i < z^(M_i+1)     (in H)
    L_i = sum_{j>i} (N_j + M_j)

the element equals ``r * prod (f_i* Delta^-1) q_i*`` where ``r = q0 z^L_0``,
``f_i* = z^-N_i f_i`` lies strictly between 1 and z, and
``q_i* = z^-L_i (z^-M_i Delta q_i) z^L_i`` lies in ``[1, z)``.  Every factor
after ``r`` is then a positive word over the cone generators, and the element
is positive exactly when ``r >= 1`` (and nontrivial).

Factor orderings are decided recursively, so any tree of amalgams over
infinite cyclic leaves is handled.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .nodes import AmalgamNode, GroupNode
from .words import EMPTY, UnknownGenerator, Word

LEFT, RIGHT = 0, 1


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __neg__(self) -> "Sign":
        return Sign(-int(self))

    @property
    def symbol(self) -> str:
        return {-1: "-", 0: "0", 1: "+"}[int(self)]


class Comparison(enum.Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"


@dataclass(frozen=True)
class Syllable:
    side: int
    word: Word
    # bracket of the syllable in its own factor: z^exponent <= word < z^(exponent+1)
    exponent: int
    in_z: bool


@dataclass(frozen=True)
class SyllableDecomposition:
    q0: Word
    parts: tuple[tuple[Word, Word], ...]
    g_exponents: tuple[int, ...] = field(default=(), repr=False)

    def evaluate(self) -> Word:
        out = self.q0
        for f, q in self.parts:
            out = out * f * q
        return out


@dataclass(frozen=True)
class StandardFactorization:
    """``r p_1 q_1 ... p_l q_l`` with ``p_i`` positive words in the x-generators.

    ``p_i`` is stored as a tuple of 1-based x-indices, ``r`` and ``q_i`` as
    leaf words of the right factor.
    """

    r: Word
    parts: tuple[tuple[tuple[int, ...], Word], ...]
    pre_reduced: bool = False
    reduced: bool = False
    reducible_count: int | None = None
    trace: dict | None = field(default=None, compare=False, repr=False)

    @property
    def complexity(self) -> int:
        return len(self.parts)

    def evaluate(self, node: AmalgamNode) -> Word:
        xs = node.cone_generators
        out = self.r
        for p, q in self.parts:
            for i in p:
                out = out * xs[i - 1]
            out = out * q
        return out

    def describe(self) -> str:
        def p_text(p):
            out, prev, run = [], None, 0
            for i in p + (None,):
                if i == prev:
                    run += 1
                    continue
                if prev is not None:
                    out.append(f"x{prev}" + (f"^{run}" if run > 1 else ""))
                prev, run = i, 1
            return "*".join(out)

        pieces = [f"[{self.r}]"]
        for p, q in self.parts:
            pieces.append(p_text(p))
            pieces.append(f"[{q}]")
        return " ".join(pieces)


# -- leaf helpers ------------------------------------------------------------


def _leaf_exponent(node, w: Word) -> int:
    total = 0
    for g, e in w.letters:
        if g != node.generator:
            raise UnknownGenerator(g)
        total += e
    return total


def _leaf_sign(node, w: Word) -> Sign:
    e = _leaf_exponent(node, w) * node.orientation
    return Sign((e > 0) - (e < 0))


# -- cofinal brackets --------------------------------------------------------


def bracket(group: GroupNode, z: Word, f: Word) -> tuple[int, bool]:
    """``(N, exact)`` with ``z^N <= f < z^(N+1)`` in ``group``; exact iff f = z^N.

    ``z`` must be positive and cofinal in ``group``.
    """
    if group.is_leaf:
        k = _leaf_exponent(group, z) * group.orientation
        e = _leaf_exponent(group, f) * group.orientation
        n, rem = divmod(e, k)
        return n, rem == 0
    zinv = z.inverse()
    probes: dict[int, Sign] = {}

    def probe(k: int) -> Sign:
        s = probes.get(k)
        if s is None:
            s = probes[k] = sign(group, (zinv ** k) * f) if k >= 0 else sign(group, (z ** -k) * f)
        return s

    # k -> sign(z^-k f) is nonincreasing; find the largest k with probe(k) >= 0
    if probe(0) >= 0:
        lo, hi = 0, 1
        while probe(hi) >= 0:
            lo, hi = hi, hi * 2
    else:
        lo, hi = -1, 0
        while probe(lo) < 0:
            lo, hi = lo * 2, lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if probe(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return lo, probe(lo) == Sign.ZERO


def _bracket(node: AmalgamNode, side: int, f: Word) -> tuple[int, bool]:
    return bracket(node.factor(side), node.z(side), f)


def zexp(node: GroupNode, w: Word) -> int:
    """Largest N with ``z^N <= w`` for the node's own cofinal element (the generator for a leaf)."""
    return cofinal_exponent(node, None, w)


def _target(node: GroupNode, side: int | None) -> tuple[GroupNode, Word]:
    if side is None:
        return node, (node.cofinal if not node.is_leaf else node.minimal_positive)
    return node.factor(side), node.z(side)


def cofinal_exponent(node: AmalgamNode, side: int | None, f: Word) -> int:
    """Largest N with ``z^N <= f`` in the factor on ``side`` (0 = left, 1 = right, None = the node itself)."""
    return bracket(*_target(node, side), f)[0]


def member_z(node: AmalgamNode, side: int | None, f: Word) -> tuple[bool, int | None]:
    n, exact = bracket(*_target(node, side), f)
    return (True, n) if exact else (False, None)


# -- syllables ---------------------------------------------------------------


def syllables(node: AmalgamNode, w: Word) -> SyllableDecomposition:
    """Alternating decomposition with every interior syllable outside ``<z>``.

    Syllables that turn out to be powers of z are rewritten in the other
    factor and merged into their neighbours, repeatedly, using a stack.
    """
    left = node.left.leaves
    right = node.right.leaves
    runs: list[tuple[int, list]] = []
    for g, e in w.letters:
        if g in left:
            side = LEFT
        elif g in right:
            side = RIGHT
        else:
            raise UnknownGenerator(g)
        if runs and runs[-1][0] == side:
            runs[-1][1].append((g, e))
        else:
            runs.append((side, [(g, e)]))

    stack: list[Syllable] = []
    for side, letters in runs:
        cur_side, cur = side, Word._trusted(tuple(letters))
        while True:
            if stack and stack[-1].in_z:
                # a lone power of z at the bottom: absorb it on the current side
                top = stack.pop()
                cur = (node.z(cur_side) ** top.exponent) * cur
            elif stack and stack[-1].side == cur_side:
                cur = stack.pop().word * cur
            if not cur:
                break
            n, exact = _bracket(node, cur_side, cur)
            if exact and stack:
                cur_side = 1 - cur_side
                cur = node.z(cur_side) ** n
                continue
            stack.append(Syllable(cur_side, cur, n, exact))
            break

    if not stack:
        return SyllableDecomposition(EMPTY, ())
    if len(stack) == 1 and stack[0].in_z:
        return SyllableDecomposition(node.z_right ** stack[0].exponent, ())
    i = 0
    q0 = EMPTY
    if stack[0].side == RIGHT:
        q0 = stack[0].word
        i = 1
    parts = []
    exps = []
    while i < len(stack):
        f = stack[i]
        q = stack[i + 1].word if i + 1 < len(stack) else EMPTY
        parts.append((f.word, q))
        exps.append(f.exponent)
        i += 2
    return SyllableDecomposition(q0, tuple(parts), tuple(exps))


# -- normal form -------------------------------------------------------------


@dataclass(frozen=True)
class _Head:
    r: Word
    n: tuple[int, ...]
    m: tuple[int, ...]
    l: tuple[int, ...]  # L_0 .. L_l


def _head(node: AmalgamNode, dec: SyllableDecomposition) -> _Head:
    delta = node.delta
    ms = tuple(cofinal_exponent(node, RIGHT, delta * q) for _, q in dec.parts)
    ns = dec.g_exponents
    ls = [0] * (len(ns) + 1)
    for i in range(len(ns) - 1, -1, -1):
        ls[i] = ls[i + 1] + ns[i] + ms[i]
    r = dec.q0 * (node.z_right ** ls[0])
    return _Head(r, ns, ms, tuple(ls))


def sign(node: GroupNode, w: Word) -> Sign:
    if node.is_leaf:
        return _leaf_sign(node, w)
    if not w:
        return Sign.ZERO
    dec = syllables(node, w)
    if not dec.parts:
        return sign(node.right, dec.q0)
    head = _head(node, dec)
    return Sign.POSITIVE if sign(node.right, head.r) >= 0 else Sign.NEGATIVE


def is_identity(node: GroupNode, w: Word) -> bool:
    return sign(node, w) == Sign.ZERO


def equal(node: GroupNode, u: Word, v: Word) -> bool:
    return is_identity(node, u.inverse() * v)


def compare(node: GroupNode, u: Word, v: Word) -> Comparison:
    s = sign(node, u.inverse() * v)
    if s > 0:
        return Comparison.LESS
    if s < 0:
        return Comparison.GREATER
    return Comparison.EQUAL


def reduce_via_normal_form(node: AmalgamNode, w: Word) -> StandardFactorization:
    """Reduced standard factorization built from the syllable normal form.

    Each ``f_i*`` is rendered as a positive word ``g_k1 ... g_kt`` over the
    left factor's cone generators and converted with ``g = x Delta``, giving
    parts ``(x_k1, Delta), ..., (x_kt, q_i*)``.  An interior ``q_i* = 1`` is
    merged into the next part and reported in the trace.
    """
    from .definite import positive_rendering  # mutual recursion with certificates

    dec = syllables(node, w)
    head = _head(node, dec)
    z, zinv = node.z_right, node.z_right.inverse()
    zg_inv = node.z_left.inverse()
    delta = node.delta
    f_stars, q_stars, letters = [], [], []
    for i, (f, q) in enumerate(dec.parts):
        f_star = (zg_inv ** head.n[i]) * f
        li = head.l[i + 1]
        q_star = (zinv ** li) * (zinv ** head.m[i]) * delta * q * (z ** li)
        f_stars.append(f_star)
        q_stars.append(q_star)
        letters.append(positive_rendering(node.left, f_star).expand())

    parts: list[tuple[tuple[int, ...], Word]] = []
    merged_trivial = []
    pending: list[int] = []
    for i, (rend, q_star) in enumerate(zip(letters, q_stars)):
        ks = [int(g[1:]) for g, _ in rend]
        for k in ks[:-1]:
            pending.append(k)
            parts.append((tuple(pending), delta))
            pending = []
        pending.append(ks[-1])
        last = i == len(q_stars) - 1
        if not last and is_identity(node.right, q_star):
            merged_trivial.append(i + 1)
            continue
        parts.append((tuple(pending), q_star))
        pending = []
    trace = {
        "q0": dec.q0,
        "N": head.n,
        "M": head.m,
        "L": head.l,
        "f_star": tuple(f_stars),
        "q_star": tuple(q_stars),
        "merged_trivial_q": tuple(merged_trivial),
    }
    return StandardFactorization(
        head.r, tuple(parts), pre_reduced=True, reduced=True, reducible_count=0, trace=trace
    )
