"""Building and validating group descriptions.

``amalgam`` checks the hypotheses under which the cone generators of an
amalgam define an isolated left ordering:

* z_G is nontrivial and central in G, z_H is nontrivial;
* every cone generator of G lies strictly below z_G, and likewise for H;
* the ordering of H is invariant under right multiplication by z_H.

The last condition is only certified, never searched for: z_H is accepted
when it is central in H, or when a certificate word over ``min`` (the
minimal positive element of H) and ``z`` (the cofinal element of H) evaluates
to z_H.  Both of those are right-invariant, hence so is any product of them.
"""

from __future__ import annotations

import random
import shlex
from dataclasses import dataclass, field

from . import engine
from .engine import Sign
from .nodes import AmalgamNode, CyclicNode, GroupNode
from .words import EMPTY, Substitution, Word, apply, parse_word


class ValidationError(ValueError):
    hypothesis = "hypothesis"

    def __init__(self, message: str, witness: Word | None = None):
        super().__init__(message)
        self.witness = witness


class TrivialAmalgamElement(ValidationError):
    hypothesis = "nontrivial z"


class FactorEqualsCenter(ValidationError):
    hypothesis = "factor differs from <z>"


class CentralityViolation(ValidationError):
    hypothesis = "z_G central"


class CofinalityViolation(ValidationError):
    hypothesis = "CF"


class MissingInvarianceCertificate(ValidationError):
    hypothesis = "INV(H)"


class ConsequenceViolation(ValidationError):
    """A proven consequence of the hypotheses failed; indicates a bug or an unsound assumption."""

    hypothesis = "consequence"


class ConeMismatch(ValueError):
    pass


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: Word | None = None
    error: type | None = None


@dataclass
class ValidationReport:
    node: str
    checks: list[Check] = field(default_factory=list)
    unsound: bool = False

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail="", witness=None, error=None) -> bool:
        self.checks.append(Check(name, bool(passed), detail, witness, None if passed else error))
        return bool(passed)

    def raise_if_failed(self) -> None:
        for c in self.checks:
            if not c.passed:
                msg = f"{self.node}: {c.name} failed"
                if c.detail:
                    msg += f" ({c.detail})"
                if c.witness is not None:
                    msg += f"; witness {c.witness}"
                raise (c.error or ValidationError)(msg, c.witness)

    def text(self) -> str:
        lines = [f"validation of {self.node}: {'PASS' if self.ok else 'FAIL'}"]
        if self.unsound:
            lines.append("  WARNING: invariance was sampled, not certified (unsound mode)")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = f" -- {c.detail}" if c.detail else ""
            if c.witness is not None and not c.passed:
                extra += f" [witness {c.witness}]"
            lines.append(f"  {mark} {c.name}{extra}")
        return "\n".join(lines)


def _label(node: GroupNode) -> str:
    return node.name or (node.generator if node.is_leaf else "amalgam")


def _commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def _is_central(factor: GroupNode, z: Word) -> Word | None:
    """Return a cone generator not commuting with z, or None if z is central."""
    if factor.is_leaf:
        return None
    for g in factor.cone_generators:
        if not engine.is_identity(factor, _commutator(z, g)):
            return g
    return None


def _factor_is_cyclic_on(factor: GroupNode, z: Word) -> tuple[bool, str]:
    if factor.is_leaf:
        k = abs(z.exponent_sum())
        return k == 1, f"{z} generates <{factor.generator}>" if k == 1 else ""
    gens = factor.cone_generators
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if not engine.is_identity(factor, _commutator(a, b)):
                return False, ""
    return True, "factor is abelian"


def evaluate_certificate(right: GroupNode, certificate: Word) -> Word:
    if right.is_leaf:
        images = {"min": right.minimal_positive}
    else:
        images = {"min": right.minimal_positive, "z": right.cofinal}
    return apply(Substitution(images), certificate)


def _sampled_right_invariance(node: GroupNode, z: Word, samples: int, seed: int) -> Word | None:
    rng = random.Random(seed)
    letters = sorted(node.leaves)
    zinv = z.inverse()
    for _ in range(samples):
        w = Word((rng.choice(letters), rng.choice((1, -1))) for _ in range(rng.randint(1, 12)))
        if engine.sign(node, zinv * w * z) != engine.sign(node, w):
            return w
    return None


def validate(node: GroupNode, *, samples: int = 200, seed: int = 0) -> ValidationReport:
    report = ValidationReport(_label(node))
    if node.is_leaf:
        report.add("cyclic leaf", True)
        return report
    G, H = node.left, node.right
    zg, zh = node.z_left, node.z_right

    if not report.add("z_G nontrivial", not engine.is_identity(G, zg), str(zg), zg, TrivialAmalgamElement):
        return report
    if not report.add("z_H nontrivial", not engine.is_identity(H, zh), str(zh), zh, TrivialAmalgamElement):
        return report

    for label, factor, z in (("G", G, zg), ("H", H, zh)):
        cyclic, why = _factor_is_cyclic_on(factor, z)
        if factor.is_leaf:
            report.add(f"{label} != <z_{label}>", not cyclic, why, z, FactorEqualsCenter)
        else:
            report.add(f"{label} != <z_{label}>", not cyclic, why or "factor is non-abelian", z, FactorEqualsCenter)
    if not report.ok:
        return report

    bad = _is_central(G, zg)
    if not report.add("z_G central in G", bad is None, "", bad, CentralityViolation):
        return report

    for label, factor, z in (("CF(G)", G, zg), ("CF(H)", H, zh)):
        for g in factor.cone_generators:
            if engine.sign(factor, g.inverse() * z) != Sign.POSITIVE:
                report.add(label, False, f"{g} is not below {z}", g, CofinalityViolation)
                break
        else:
            report.add(label, True, f"all cone generators below {z}")
    if not report.ok:
        return report

    if _is_central(H, zh) is None:
        report.add("INV(H)", True, "z_H is central in H")
    elif node.certificate is not None:
        value = evaluate_certificate(H, node.certificate)
        same = engine.is_identity(H, value.inverse() * zh)
        report.add(
            "INV(H)",
            same,
            f"certificate {node.certificate} evaluates to {value}",
            node.certificate,
            MissingInvarianceCertificate,
        )
    elif node.assume_invariance:
        bad = _sampled_right_invariance(H, zh, samples, seed)
        report.add("INV(H)", bad is None, f"sampled on {samples} words (UNSOUND)", bad, MissingInvarianceCertificate)
        report.unsound = True
    else:
        report.add("INV(H)", False, "z_H is not central and no certificate was given", zh, MissingInvarianceCertificate)
    if not report.ok:
        return report

    # consequences of the hypotheses; a failure here means a bug, not bad input
    h1 = H.minimal_positive
    report.add(
        "z_H commutes with h_1",
        engine.is_identity(H, _commutator(zh, h1)),
        "",
        _commutator(zh, h1),
        ConsequenceViolation,
    )
    chain = (EMPTY,) + tuple(node.cone_generators) + (zg,)
    for a, b in zip(chain, chain[1:]):
        if engine.sign(node, a.inverse() * b) != Sign.POSITIVE:
            report.add("ascending chain", False, f"{a} < {b} fails", b, ConsequenceViolation)
            break
    else:
        report.add("ascending chain", True, f"{len(chain) - 1} strict inequalities up to z")
    for x in node.cone_generators[: node.m]:
        if not engine.is_identity(node, _commutator(zg, x)):
            report.add("z commutes with x_i", False, "", x, ConsequenceViolation)
            break
    else:
        report.add("z commutes with x_i", True)
    return report


# -- builders ----------------------------------------------------------------


def cyclic(generator: str, reversed: bool = False, name: str | None = None) -> CyclicNode:
    return CyclicNode(generator, reversed, name)


def _as_word(value, alphabet, what: str) -> Word:
    if isinstance(value, Word):
        extra = value.generators() - set(alphabet)
        if extra:
            raise ValueError(f"{what} uses generators {sorted(extra)} outside the factor")
        return value
    return parse_word(value, alphabet)


def amalgam(
    left: GroupNode,
    right: GroupNode,
    z_left,
    z_right,
    certificate=None,
    *,
    name: str | None = None,
    assume_invariance: bool = False,
) -> AmalgamNode:
    """Build ``left *_{z_left = z_right} right`` and validate it (raises ValidationError)."""
    zl = _as_word(z_left, left.leaves, "z_left")
    zr = _as_word(z_right, right.leaves, "z_right")
    cert = None if certificate is None else _as_word(certificate, ("min", "z"), "certificate")
    node = AmalgamNode(left, right, zl, zr, cert, name, assume_invariance)
    report = validate(node)
    object.__setattr__(node, "report", report)
    report.raise_if_failed()
    return node


def cone_generators(node: GroupNode) -> list[Word]:
    return list(node.cone_generators)


@dataclass(frozen=True)
class RankBound:
    value: int


def rank_bound(node: GroupNode) -> RankBound:
    """Upper bound on the rank: each cyclic leaf contributes one."""
    if node.is_leaf:
        return RankBound(1)
    return RankBound(rank_bound(node.left).value + rank_bound(node.right).value)


def normalize_generating_set(
    node: GroupNode, gens: list[Word], z: Word | None = None, *, budget: int = 6
) -> list[Word]:
    """Fold a generating set of the positive cone below the cofinal element z.

    Each generator h is replaced by ``z^-N h`` with ``1 < z^-N h <= z``; one
    that lands exactly on z is replaced by ``h_1^-1 z``.  The result is sorted
    ascending and deduplicated.  Raises ConeMismatch unless ``gens`` generate
    the node's cone (membership of each cone generator is searched up to
    ``budget`` letters).
    """
    from .definite import positive_words

    if z is None:
        z = node.cofinal
    if z is None:
        raise ValueError("a cofinal element must be supplied for a cyclic node")
    for h in gens:
        if engine.sign(node, h) != Sign.POSITIVE:
            raise ConeMismatch(f"{h} is not positive")
    sub = Substitution({f"s{i}": h for i, h in enumerate(gens, 1)})
    for c in node.cone_generators:
        if not any(engine.is_identity(node, c.inverse() * h) for h in gens):
            for cand in positive_words(len(gens), budget):
                if engine.is_identity(node, c.inverse() * apply(sub, cand)):
                    break
            else:
                raise ConeMismatch(f"cone generator {c} is not a product of the given set")

    zinv = z.inverse()
    folded = []
    for h in gens:
        k = 0
        # largest k with z^k < h, found by stepping; h is positive and z cofinal
        while engine.sign(node, (zinv ** (k + 1)) * h) == Sign.POSITIVE:
            k += 1
        folded.append((zinv ** k) * h)
    h1 = min_element(node, folded)
    out = []
    for h in folded:
        if engine.is_identity(node, h.inverse() * z):
            h = h1.inverse() * h
        if not any(engine.is_identity(node, h.inverse() * o) for o in out):
            out.append(h)
    return sort_ascending(node, out)


def min_element(node: GroupNode, words: list[Word]) -> Word:
    best = words[0]
    for w in words[1:]:
        if engine.sign(node, w.inverse() * best) == Sign.POSITIVE:
            best = w
    return best


def sort_ascending(node: GroupNode, words: list[Word]) -> list[Word]:
    import functools

    def cmp(u, v):
        return -int(engine.sign(node, u.inverse() * v))

    return sorted(words, key=functools.cmp_to_key(cmp))


# -- spec files --------------------------------------------------------------


class SpecSyntaxError(ValueError):
    pass


def load_spec(text: str, *, assume_invariance: bool = False) -> GroupNode:
    """Parse the line-oriented group spec format; the last declared node is returned.

    ``cyclic NAME gen=G [reversed]``
    ``amalgam NAME left=NODE right=NODE zleft="WORD" zright="WORD" [cert="WORD"]``
    """
    nodes: dict[str, GroupNode] = {}
    last = None
    names_seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            tokens = shlex.split(line)
        except ValueError as exc:
            raise SpecSyntaxError(f"line {lineno}: {exc}") from None
        kind, rest = tokens[0], tokens[1:]
        if not rest:
            raise SpecSyntaxError(f"line {lineno}: missing node name")
        name, opts = rest[0], rest[1:]
        if name in nodes:
            raise SpecSyntaxError(f"line {lineno}: node {name!r} declared twice")
        flags = {o for o in opts if "=" not in o}
        kv = dict(o.split("=", 1) for o in opts if "=" in o)
        if kind == "cyclic":
            if "gen" not in kv:
                raise SpecSyntaxError(f"line {lineno}: cyclic node needs gen=")
            if flags - {"reversed"} or set(kv) - {"gen"}:
                raise SpecSyntaxError(f"line {lineno}: unknown options {sorted(flags - {'reversed'}) + sorted(set(kv) - {'gen'})}")
            gen = kv["gen"]
            if gen in names_seen:
                raise SpecSyntaxError(f"line {lineno}: generator {gen!r} used twice")
            names_seen.add(gen)
            node = cyclic(gen, "reversed" in flags, name)
        elif kind == "amalgam":
            missing = {"left", "right", "zleft", "zright"} - set(kv)
            if missing:
                raise SpecSyntaxError(f"line {lineno}: missing {sorted(missing)}")
            if flags or set(kv) - {"left", "right", "zleft", "zright", "cert"}:
                raise SpecSyntaxError(f"line {lineno}: unknown options")
            try:
                left, right = nodes[kv["left"]], nodes[kv["right"]]
            except KeyError as exc:
                raise SpecSyntaxError(f"line {lineno}: unknown node {exc.args[0]!r}") from None
            try:
                zl = parse_word(kv["zleft"], left.leaves)
                zr = parse_word(kv["zright"], right.leaves)
                cert = parse_word(kv["cert"], ("min", "z")) if "cert" in kv else None
            except (ValueError, KeyError) as exc:
                raise SpecSyntaxError(f"line {lineno}: {exc}") from None
            node = amalgam(left, right, zl, zr, cert, name=name, assume_invariance=assume_invariance)
        else:
            raise SpecSyntaxError(f"line {lineno}: unknown declaration {kind!r}")
        nodes[name] = last = node
    if last is None:
        raise SpecSyntaxError("empty spec")
    return last
