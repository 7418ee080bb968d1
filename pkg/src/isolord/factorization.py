"""The x/h-alphabet pipeline: standard, pre-reduced and reduced factorizations.

A standard factorization writes an element as ``r p_1 q_1 ... p_l q_l`` with
``r, q_i`` in the right factor H and ``p_i`` nonempty positive words in the
x-generators.  This module builds one directly from a word, normalizes the
``q_i`` into ``(1, z)``, and then removes reducible distinguished spans (runs
``Delta x_j Delta ... x_j Delta``) one at a time.  The sign is read off ``r``
at the end.  It is slower than :mod:`isolord.engine` and exists to
cross-check it.

Witnesses for reducibility are the boundary letters of the neighbouring
``p_i`` as stored, not every possible splitting in the x-semigroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import engine
from .definite import positive_rendering
from .engine import RIGHT, Sign, StandardFactorization
from .nodes import AmalgamNode
from .words import EMPTY, UnknownGenerator, Word


class InvalidFactorization(ValueError):
    pass


class NotReducible(ValueError):
    pass


class StuckReduction(RuntimeError):
    def __init__(self, message: str, factorization: StandardFactorization | None = None):
        super().__init__(message)
        self.factorization = factorization


@dataclass(frozen=True)
class DistinguishedSubfactorization:
    """Span ``q_start p_(start+1) ... q_end`` with every q equal to Delta.

    Indices are 1-based positions of the q's.  ``a`` is the last letter of
    ``p_start``; ``u`` is the first letter of ``p_(end+1)`` or None when the
    span runs to the end.
    """

    start: int
    end: int
    interior: tuple[int, ...]
    a: int
    u: int | None
    product: Word  # g_a g_w g_u in the left factor
    reducible: bool


@dataclass
class ReductionStep:
    rule: str
    before: StandardFactorization
    after: StandardFactorization
    measure_before: tuple[int, int]
    measure_after: tuple[int, int]


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)
    bound: tuple[int, int] | None = None

    def __len__(self) -> int:
        return len(self.steps)


# -- helpers -----------------------------------------------------------------


def _g(node: AmalgamNode, k: int) -> Word:
    return node.left.cone_generators[k - 1]


def _g_indices(node: AmalgamNode, f: Word) -> list[int]:
    """Indices of a positive rendering of ``f >= 1`` over the left cone."""
    return [int(g[1:]) for g, _ in positive_rendering(node.left, f).expand()]


def _freeze(r: Word, parts) -> StandardFactorization:
    return StandardFactorization(r, tuple((tuple(p), q) for p, q in parts))


def _shift_blocks(node: AmalgamNode, r: Word, parts, shifts) -> tuple[Word, list]:
    """Replace ``q_i`` by ``z^-L_(i+1) (z^-k_i q_i) z^L_(i+1)`` with ``L_i = sum_(j>=i) k_j``."""
    z, zinv = node.z_right, node.z_right.inverse()
    total = 0
    out = []
    for (p, q), k in zip(reversed(parts), reversed(shifts)):
        out.append((p, (zinv ** total) * (zinv ** k) * q * (z ** total)))
        total += k
    out.reverse()
    return r * (z ** total), out


def canonicalize(node: AmalgamNode, r: Word, parts) -> tuple[Word, list]:
    """Absorb blocks ``q_i`` that are powers of z into the block to their left.

    z commutes with the x-generators, so ``q_(i-1) p_i z^N = (q_(i-1) z^N) p_i``
    and ``p_i`` merges with ``p_(i+1)``.  Parts with an empty p are folded
    into the preceding block.
    """
    z = node.z_right
    # entries [p, q]; q is None while a block has been absorbed and p waits for the next part
    out: list[list] = []

    def settle() -> None:
        nonlocal r
        while out and out[-1][1] is not None:
            n, exact = engine._bracket(node, RIGHT, out[-1][1])
            if not exact:
                return
            out[-1][1] = None
            if len(out) == 1:
                r = r * (z ** n)
                return
            prev = out[-2]
            prev[1] = prev[1] * (z ** n)
            if not engine._bracket(node, RIGHT, prev[1])[1]:
                return
            # prev became a power of z too: merge the waiting p into it and keep pushing
            prev[0].extend(out.pop()[0])

    for p, q in parts:
        if out and out[-1][1] is None:
            out[-1][0].extend(p)
            out[-1][1] = q
        elif p:
            out.append([list(p), q])
        elif out:
            out[-1][1] = out[-1][1] * q
        else:
            r = r * q
            continue
        settle()
    return r, [(p, EMPTY if q is None else q) for p, q in out]


# -- building ----------------------------------------------------------------


class _Stream:
    """Accumulates tokens into ``r`` and ``[p, q]`` parts."""

    def __init__(self, node: AmalgamNode):
        self.node = node
        self.r = EMPTY
        self.parts: list[list] = []

    def x(self, k: int) -> None:
        if not self.parts or self.parts[-1][1]:
            self.parts.append([[k], EMPTY])
        else:
            self.parts[-1][0].append(k)

    def h(self, w: Word) -> None:
        if not self.parts:
            self.r = self.r * w
        else:
            self.parts[-1][1] = self.parts[-1][1] * w

    def z_power(self, e: int) -> None:
        # z commutes with the x's, so it lands at the right end of the last H-block
        zp = self.node.z_right ** e
        if self.parts and self.parts[-1][1]:
            self.parts[-1][1] = self.parts[-1][1] * zp
        elif len(self.parts) >= 2:
            self.parts[-2][1] = self.parts[-2][1] * zp
        else:
            self.r = self.r * zp

    def g_positive(self, ks, trailing_delta: bool = True) -> None:
        delta = self.node.delta
        for j, k in enumerate(ks):
            self.x(k)
            if trailing_delta or j < len(ks) - 1:
                self.h(delta)

    def x_inverse(self, k: int) -> None:
        # x_k^-1 = z^-1 Delta P_k, where P_k renders z_G g_k^-1 > 1 in the left factor
        node = self.node
        self.z_power(-1)
        self.h(node.delta)
        self.g_positive(_g_indices(node, node.z_left * _g(node, k).inverse()))

    def g_element(self, f: Word) -> None:
        node = self.node
        s = engine.sign(node.left, f)
        if s == Sign.ZERO:
            return
        if s > 0:
            self.g_positive(_g_indices(node, f))
            return
        # g^-1 = Delta^-1 x^-1
        for k in reversed(_g_indices(node, f.inverse())):
            self.h(node.delta.inverse())
            self.x_inverse(k)


def build_standard_factorization(node: AmalgamNode, w: Word, *, cone_word: bool = False) -> StandardFactorization:
    """Standard factorization of ``w``, given over the leaves or (``cone_word``) over s1..sk.

    Every ``q_i`` of the result is ``> 1`` and not a power of z (``q_l`` may
    be 1).  Blocks that start at or below 1 are lifted by powers of z.
    """
    stream = _Stream(node)
    if cone_word:
        m = node.m
        hs = node.right.cone_generators
        for g, e in w.letters:
            i = int(g[1:])
            if not 1 <= i <= m + len(hs):
                raise UnknownGenerator(g)
            if i > m:
                stream.h(hs[i - m - 1] ** e)
            elif e > 0:
                for _ in range(e):
                    stream.x(i)
            else:
                for _ in range(-e):
                    stream.x_inverse(i)
    else:
        dec_runs: list[tuple[int, list]] = []
        for g, e in w.letters:
            side = node.side_of(g) if g in node.leaves else None
            if side is None:
                raise UnknownGenerator(g)
            if dec_runs and dec_runs[-1][0] == side:
                dec_runs[-1][1].append((g, e))
            else:
                dec_runs.append((side, [(g, e)]))
        for side, letters in dec_runs:
            word = Word(letters)
            if side == RIGHT:
                stream.h(word)
            else:
                stream.g_element(word)
    r, parts = canonicalize(node, stream.r, [(p, q) for p, q in stream.parts])
    shifts = [min(engine.cofinal_exponent(node, RIGHT, q), 0) for _, q in parts]
    r, parts = _shift_blocks(node, r, parts, shifts)
    return _freeze(r, parts)


# -- pre-reduction -----------------------------------------------------------


def _check_standard(node: AmalgamNode, F: StandardFactorization) -> list[int]:
    ms = []
    last = len(F.parts) - 1
    for i, (p, q) in enumerate(F.parts):
        if not p:
            raise InvalidFactorization(f"p_{i + 1} is empty")
        n, exact = engine._bracket(node, RIGHT, q)
        if exact and not (i == last and n == 0):
            raise InvalidFactorization(f"q_{i + 1} = {q} equals z^{n}")
        if n < 0:
            raise InvalidFactorization(f"q_{i + 1} = {q} is not >= 1")
        ms.append(n)
    return ms


def pre_reduce(node: AmalgamNode, F: StandardFactorization) -> StandardFactorization:
    """Move each ``q_i`` into ``(1, z)`` by pulling powers of z to the front."""
    ms = _check_standard(node, F)
    r, parts = _shift_blocks(node, F.r, list(F.parts), ms)
    return StandardFactorization(r, tuple(parts), pre_reduced=True)


# -- distinguished spans -----------------------------------------------------


def _is_delta(node: AmalgamNode, q: Word) -> bool:
    return engine.is_identity(node.right, node.delta.inverse() * q)


def find_distinguished(node: AmalgamNode, F: StandardFactorization) -> list[DistinguishedSubfactorization]:
    parts = F.parts
    is_delta = [_is_delta(node, q) for _, q in parts]
    spans = []
    i = 0
    while i < len(parts):
        if not is_delta[i]:
            i += 1
            continue
        start = i
        while i + 1 < len(parts) and is_delta[i + 1] and len(parts[i + 1][0]) == 1:
            i += 1
        end = i
        interior = tuple(parts[j][0][0] for j in range(start + 1, end + 1))
        a = parts[start][0][-1]
        u = parts[end + 1][0][0] if end + 1 < len(parts) else None
        product = _g(node, a)
        for k in interior:
            product = product * _g(node, k)
        if u is not None:
            product = product * _g(node, u)
        reducible = engine.sign(node.left, product.inverse() * node.z_left) <= 0
        spans.append(DistinguishedSubfactorization(start + 1, end + 1, interior, a, u, product, reducible))
        i += 1
    return spans


def measure(node: AmalgamNode, F: StandardFactorization) -> tuple[int, int]:
    return sum(s.reducible for s in find_distinguished(node, F)), len(F.parts)


# -- reducing ----------------------------------------------------------------


def reduce_step(
    node: AmalgamNode, F: StandardFactorization, target: DistinguishedSubfactorization
) -> StandardFactorization:
    """Remove one reducible span; the result is pre-reduced."""
    if not target.reducible:
        raise NotReducible(f"span q_{target.start}..q_{target.end} is irreducible")
    n, exact = engine._bracket(node, 0, target.product)
    N = n - 1 if exact else n
    parts = [(list(p), q) for p, q in F.parts]
    i, s = target.start - 1, target.end  # 0-based index of p_i and of p_s
    z, zinv = node.z_right, node.z_right.inverse()
    trailing = target.u is None

    if trailing and exact:
        N += 1
    prefix = [(p, (zinv ** N) * q * (z ** N)) for p, q in parts[:i]]
    r = F.r * (z ** N)
    p_i = parts[i][0][:-1]
    tail: list = []
    if trailing:
        rule = "trailing-exact" if exact else "trailing"
        if exact:
            tail = [(p_i, EMPTY)]
        else:
            ks = _g_indices(node, (node.z_left.inverse() ** N) * target.product)
            tail = [(p_i + [ks[0]], node.delta)] + [([k], node.delta) for k in ks[1:]]
    else:
        p_s = parts[s][0][1:]
        q_s = parts[s][1]
        rest = parts[s + 1 :]
        if exact:
            rule = "exact"
            tail = [(p_i, node.right.minimal_positive), (p_s, q_s)]
        else:
            f = (node.z_left.inverse() ** N) * target.product
            g_prime = f * _g(node, 1).inverse()
            if engine.is_identity(node.left, g_prime):
                rule = "merge"
                tail = [(p_i + [1] + p_s, q_s)]
            else:
                rule = "split"
                ks = _g_indices(node, g_prime)
                tail = [(p_i + [ks[0]], node.delta)] + [([k], node.delta) for k in ks[1:]]
                tail.append(([1] + p_s, q_s))
        tail += rest
    r, merged = canonicalize(node, r, prefix + tail)
    out = pre_reduce(node, _freeze(r, merged))
    object.__setattr__(out, "trace", {"rule": rule, "N": N})
    return out


def _sign_of(node: AmalgamNode, F: StandardFactorization) -> Sign:
    s = engine.sign(node.right, F.r)
    if not F.parts:
        return s
    return Sign.POSITIVE if s >= 0 else Sign.NEGATIVE


def reduce_fully(
    node: AmalgamNode, F: StandardFactorization, *, check: bool = False, max_steps: int | None = None
) -> tuple[StandardFactorization, ReductionTrace]:
    """Apply reduce_step until no reducible span remains."""
    trace = ReductionTrace()
    value = F.evaluate(node) if check else None
    current = F if F.pre_reduced else pre_reduce(node, F)
    spans = find_distinguished(node, current)
    m_cur = (sum(s.reducible for s in spans), len(current.parts))
    trace.bound = m_cur
    if max_steps is None:
        max_steps = 4 * (m_cur[0] + 1) * (m_cur[1] + 1) + 16
    while True:
        targets = [s for s in spans if s.reducible]
        if not targets:
            break
        if len(trace) >= max_steps:
            raise StuckReduction(f"no reduced form after {max_steps} steps", current)
        nxt = reduce_step(node, current, targets[0])
        spans = find_distinguished(node, nxt)
        m_nxt = (sum(s.reducible for s in spans), len(nxt.parts))
        if not m_nxt < m_cur:
            raise StuckReduction(f"measure did not decrease: {m_cur} -> {m_nxt}", nxt)
        if check:
            if not engine.is_identity(node, value.inverse() * nxt.evaluate(node)):
                raise AssertionError(f"reduce_step changed the element: {nxt.describe()}")
            if engine.sign(node.right, current.r) > 0 and engine.sign(node.right, nxt.r) <= 0:
                raise AssertionError("r stopped being positive")
        trace.steps.append(ReductionStep(nxt.trace["rule"], current, nxt, m_cur, m_nxt))
        current, m_cur = nxt, m_nxt
    done = StandardFactorization(
        current.r, current.parts, pre_reduced=True, reduced=True, reducible_count=0, trace={"steps": len(trace)}
    )
    return done, trace


def cross_sign(node: AmalgamNode, w: Word, *, cone_word: bool = False, check: bool = False) -> Sign:
    """Sign of ``w`` computed entirely through the x/h pipeline."""
    if node.is_leaf:
        return engine.sign(node, w)
    F = build_standard_factorization(node, w, cone_word=cone_word)
    reduced, _ = reduce_fully(node, pre_reduce(node, F), check=check)
    return _sign_of(node, reduced)


def lemma_basic_rewrite(node: AmalgamNode, j: int, i: int) -> tuple[Word, Word]:
    """``h_j^-1 x_i = (h_j^-1 h_1) x_1^-1 (z_G^-1 g_1 g_i) Delta^-1`` as leaf words."""
    if not 1 <= j <= node.n:
        raise IndexError(f"h index {j} outside 1..{node.n}")
    if not 1 <= i <= node.m:
        raise IndexError(f"x index {i} outside 1..{node.m}")
    hs = node.right.cone_generators
    xs = node.cone_generators
    lhs = hs[j - 1].inverse() * xs[i - 1]
    middle = node.z_left.inverse() * _g(node, 1) * _g(node, i)
    rhs = hs[j - 1].inverse() * hs[0] * xs[0].inverse() * middle * node.delta.inverse()
    return lhs, rhs
