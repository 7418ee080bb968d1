"""Named audits over a validated group.

Each suite checks one consequence of the ordering being an isolated left
ordering with the computed cone, and returns a :class:`SuiteReport` with
counts, failures (with witness words), and Unknown verdicts kept separate
from passes.  All randomness comes from ``params["seed"]``.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from . import engine, factorization
from .definite import definite_word
from .engine import Sign
from .nodes import GroupNode, cone_names, cone_substitution, iter_nodes, relators
from .oracle import (
    OracleVerdict,
    central_exponents,
    central_normal_form,
    enumerate_ball,
    oracle_sign,
)
from .words import EMPTY, Word, apply


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checked: int = 0
    failures: list[tuple[str, list[str]]] = field(default_factory=list)
    unknowns: int = 0
    counts: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def status(self) -> str:
        if self.failures:
            return "FAIL"
        if self.unknowns:
            return "INCONCLUSIVE"
        return "PASS"

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def fail(self, what: str, *witnesses: Word) -> None:
        self.failures.append((what, [str(w) for w in witnesses]))

    def text(self, max_failures: int = 10) -> str:
        lines = [f"{self.suite}: {self.status}, {self.checked} checks in {self.runtime:.2f}s"]
        for k, v in self.counts.items():
            lines.append(f"  {k}: {v}")
        if self.unknowns:
            lines.append(f"  unknown verdicts: {self.unknowns}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        for what, ws in self.failures[:max_failures]:
            lines.append(f"  failure: {what} [{', '.join(ws)}]")
        if len(self.failures) > max_failures:
            lines.append(f"  ... {len(self.failures) - max_failures} more failures")
        return "\n".join(lines)

    def machine(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "params": self.params,
            "seed": self.params.get("seed"),
            "checked": self.checked,
            "unknowns": self.unknowns,
            "counts": self.counts,
            "failures": [{"what": w, "witnesses": ws} for w, ws in self.failures],
            "notes": self.notes,
            "runtime": round(self.runtime, 4),
        }

    def json(self) -> str:
        return json.dumps(self.machine(), indent=2, sort_keys=True)


# -- word generators ---------------------------------------------------------


def random_word(rng: random.Random, letters, max_length: int, min_length: int = 0) -> Word:
    n = rng.randint(min_length, max_length)
    return Word((rng.choice(letters), rng.choice((1, -1))) for _ in range(n))


def positive_cone_words(node: GroupNode, max_length: int):
    """``(cone word, leaf word)`` for every positive cone word of length 1..max_length."""
    gens = list(zip(cone_names(node), node.cone_generators))
    layer = [(EMPTY, EMPTY)]
    for _ in range(max_length):
        layer = [(cw * Word.gen(n), lw * g) for cw, lw in layer for n, g in gens]
        yield from layer


def reduced_cone_words(node: GroupNode, radius: int):
    """Every freely reduced word of length 0..radius over the cone letters and inverses."""
    letters = [(n, e) for n in cone_names(node) for e in (1, -1)]
    layer = [EMPTY]
    yield EMPTY
    for _ in range(radius):
        nxt = []
        for w in layer:
            last = w.letters[-1] if w.letters else None
            for g, e in letters:
                if last is not None and last[0] == g and last[1] * e < 0:
                    continue
                nxt.append(w * Word.gen(g, e))
        yield from nxt
        layer = nxt


def insert_relator(rng: random.Random, node: GroupNode, w: Word) -> Word:
    rels = relators(node)
    rel = rng.choice(rels)
    if rng.random() < 0.5:
        rel = rel.inverse()
    # conjugate by a short random word so the insertion is not always a whole syllable
    c = random_word(rng, sorted(node.leaves), 2)
    rel = c * rel * c.inverse()
    cut = rng.randint(0, len(w.letters))
    return Word(w.letters[:cut]) * rel * Word(w.letters[cut:])


# -- suites ------------------------------------------------------------------


def _property_a(node, report, p):
    n = p.get("length", 8)
    central = central_exponents(node) is not None
    for cw, lw in positive_cone_words(node, n):
        report.checked += 1
        if engine.is_identity(node, lw) or (central and central_normal_form(node, lw).is_identity):
            report.fail("positive word is trivial", cw)
    report.counts["positive words"] = report.checked
    report.counts["max length"] = n


def _property_c(node, report, p):
    radius = p.get("radius", 5)
    sub = cone_substitution(node)
    signs = {s: 0 for s in Sign}
    for cw in reduced_cone_words(node, radius):
        report.checked += 1
        w = apply(sub, cw)
        s = engine.sign(node, w)
        signs[s] += 1
        if s == Sign.ZERO:
            continue
        try:
            cert = definite_word(node, w)
        except Exception as exc:  # any failure to certify is a failure of the suite
            report.fail(f"definite_word raised {type(exc).__name__}: {exc}", cw)
            continue
        if cert.polarity != s:
            report.fail("certificate polarity disagrees with sign", cw, cert.rendering)
    report.counts.update({f"sign {s.symbol}": v for s, v in signs.items()})


def _chain(node, report, p):
    chain = [EMPTY] + list(node.cone_generators) + [node.cofinal]
    for a, b in zip(chain, chain[1:]):
        report.checked += 1
        if engine.sign(node, a.inverse() * b) != Sign.POSITIVE:
            report.fail("chain inequality fails", a, b)
    report.counts["inequalities"] = len(chain) - 1
    _commute(node, report, p)


def _commute(node, report, p):
    before = report.checked
    for n in iter_nodes(node):
        if n.is_leaf:
            continue
        zh, h1 = n.z_right, n.right.minimal_positive
        report.checked += 1
        if not engine.is_identity(n.right, zh * h1 * zh.inverse() * h1.inverse()):
            report.fail("z_H does not commute with h_1", zh, h1)
        for x in n.cone_generators[: n.m]:
            report.checked += 1
            if not engine.is_identity(n, n.z_left * x * n.z_left.inverse() * x.inverse()):
                report.fail("z does not commute with x_i", n.z_left, x)
    report.counts["commutations"] = report.checked - before


def _ball_elements(node, radius):
    table = enumerate_ball(node, radius)
    for e in table.entries:
        yield e.element
        yield e.element.inverse()


def _convexity(node, report, p):
    radius, kmax = p.get("radius", 6), p.get("k", 3)
    x1 = node.minimal_positive
    powers = {k: x1 ** k for k in range(-kmax, kmax + 2)}
    for w in _ball_elements(node, radius):
        for k in range(-kmax, kmax + 1):
            report.checked += 1
            lo, hi = powers[k], powers[k + 1]
            if engine.sign(node, lo.inverse() * w) > 0 and engine.sign(node, w.inverse() * hi) > 0:
                report.fail(f"element strictly between x1^{k} and x1^{k + 1}", w)
    report.counts["ball radius"] = radius


def _minimal(node, report, p):
    radius = p.get("radius", 6)
    x1 = node.minimal_positive
    for w in _ball_elements(node, radius):
        report.checked += 1
        if engine.sign(node, w) > 0 and engine.sign(node, w.inverse() * x1) > 0:
            report.fail("positive element below x1", w)


def _rightinv(node, report, p):
    rng = random.Random(p["seed"])
    z = node.cofinal
    letters = sorted(node.leaves)
    for _ in range(p.get("samples", 1000)):
        w = random_word(rng, letters, p.get("max_length", 20))
        report.checked += 1
        if engine.sign(node, z.inverse() * w * z) != engine.sign(node, w):
            report.fail("sign changes under z-conjugation", w)


def _welldefined(node, report, p):
    rng = random.Random(p["seed"])
    letters = sorted(node.leaves)
    for _ in range(p.get("samples", 1000)):
        w = random_word(rng, letters, p.get("max_length", 20))
        v = insert_relator(rng, node, w)
        report.checked += 1
        if engine.sign(node, v) != engine.sign(node, w):
            report.fail("sign changes after inserting a relator", w, v)


def _oracle_agreement(node, report, p):
    radius = p.get("radius", 6)
    table = enumerate_ball(node, radius)
    report.counts["ball size"] = len(table)
    report.counts["layer sizes"] = table.layer_sizes
    report.counts["dedup"] = table.dedup
    for cw in table.identity_hits:
        report.fail("product of cone generators is the identity", cw)
    for e in table.entries:
        report.checked += 1
        if engine.sign(node, e.element) != Sign.POSITIVE:
            report.fail("engine sign of ball entry is not +", e.word)
        if engine.sign(node, e.element.inverse()) != Sign.NEGATIVE:
            report.fail("engine sign of inverse ball entry is not -", e.word)
        if table.lookup(e.element.inverse()) is not None:
            report.fail("P and P^-1 intersect", e.word)
    if central_exponents(node) is None:
        report.notes.append("no engine-independent word problem here; equality tests use the engine")


def _oracle_sign_agreement(node, report, p):
    rng = random.Random(p["seed"])
    radius = p.get("radius", 6)
    letters = sorted(node.leaves)
    for _ in range(p.get("samples", 200)):
        w = random_word(rng, letters, p.get("max_length", 8))
        verdict = oracle_sign(node, w, radius)
        report.checked += 1
        if verdict is OracleVerdict.UNKNOWN:
            report.counts["outside ball"] = report.counts.get("outside ball", 0) + 1
            continue
        if not verdict.agrees_with(engine.sign(node, w)):
            report.fail(f"oracle says {verdict.value}, engine disagrees", w)


def _cross_pipeline(node, report, p):
    rng = random.Random(p["seed"])
    letters = sorted(node.leaves)
    stuck = 0
    for _ in range(p.get("samples", 1000)):
        w = random_word(rng, letters, p.get("max_length", 30))
        report.checked += 1
        try:
            s = factorization.cross_sign(node, w)
        except factorization.StuckReduction:
            stuck += 1
            report.fail("StuckReduction", w)
            continue
        if s != engine.sign(node, w):
            report.fail("cross_sign disagrees with sign", w)
    report.counts["stuck reductions"] = stuck


def _nf_agreement(node, report, p):
    if central_exponents(node) is None:
        report.notes.append("not a fully central tower; suite skipped")
        report.unknowns += 1
        return
    rng = random.Random(p["seed"])
    letters = sorted(node.leaves)
    trivial = 0
    for i in range(p.get("samples", 1000)):
        u = random_word(rng, letters, p.get("max_length", 12))
        if i % 2:
            # u times a relator-scrambled copy of u^-1 is trivial
            w = u * insert_relator(rng, node, u.inverse())
        else:
            w = insert_relator(rng, node, u)
        report.checked += 1
        a = engine.is_identity(node, w)
        b = central_normal_form(node, w).is_identity
        trivial += b
        if a != b:
            report.fail("engine and normal form disagree on triviality", w)
    report.counts["trivial samples"] = trivial


def _tower_spec(node):
    spec = getattr(node, "tower_spec", None)
    if spec is None:
        raise ValueError("this suite needs a tower built by the catalog")
    return spec


def _assoc_independence(node, report, p):
    from dataclasses import replace

    from .catalog import all_trees, build_tower

    spec = _tower_spec(node)
    others = [build_tower(replace(spec, association=t)) for t in all_trees(1, spec.m)]
    report.counts["association trees"] = len(others)
    for other in others:
        for a, b in zip(node.cone_generators, other.cone_generators):
            report.checked += 1
            if not engine.equal(node, a, b):
                report.fail(f"cone generators differ for tree {other.tower_spec.association}", a, b)
    rng = random.Random(p["seed"])
    letters = sorted(node.leaves)
    for _ in range(p.get("samples", 1000)):
        w = random_word(rng, letters, p.get("max_length", 20))
        s = engine.sign(node, w)
        for other in others:
            report.checked += 1
            if engine.sign(other, w) != s:
                report.fail(f"signs differ for tree {other.tower_spec.association}", w)


def _permuted(node, report, p):
    from dataclasses import replace

    from .catalog import build_tower, cyclic_permutations, permuted_minimal_positive

    spec = _tower_spec(node)
    perms = cyclic_permutations(spec.m) if not p.get("all") else None
    if perms is None:
        import itertools

        perms = list(itertools.permutations(range(1, spec.m + 1)))
    mins = []
    for perm in perms:
        s = replace(spec, permutation=tuple(perm))
        built = build_tower(s)  # validates and checks the closed form
        mp = permuted_minimal_positive(s)
        report.checked += 1
        if not engine.equal(built, built.minimal_positive, mp):
            report.fail(f"minimal positive of {perm} differs from the closed form", mp)
        mins.append((perm, mp))
    for i, (pa, a) in enumerate(mins):
        for pb, b in mins[i + 1 :]:
            report.checked += 1
            if engine.equal(node, a, b):
                report.fail(f"permutations {pa} and {pb} give the same minimal positive", a, b)
    report.counts["permutations"] = len(perms)


SUITES = {
    "propertyA": _property_a,
    "propertyC": _property_c,
    "chain": _chain,
    "commute": _commute,
    "convexity": _convexity,
    "minimal": _minimal,
    "rightinv": _rightinv,
    "welldefined": _welldefined,
    "oracle-agreement": _oracle_agreement,
    "oracle-sign": _oracle_sign_agreement,
    "cross-pipeline": _cross_pipeline,
    "nf-agreement": _nf_agreement,
    "assoc-independence": _assoc_independence,
    "permuted": _permuted,
}


def run_suite(node: GroupNode, suite: str, params: dict | None = None) -> SuiteReport:
    try:
        fn = SUITES[suite]
    except KeyError:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}") from None
    params = dict(params or {})
    params.setdefault("seed", 0)
    report = SuiteReport(suite, params)
    t0 = time.perf_counter()
    fn(node, report, params)
    report.runtime = time.perf_counter() - t0
    return report
