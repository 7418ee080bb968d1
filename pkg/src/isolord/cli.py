"""Command-line interface.

    isolord sign -g tower:2,3 "x1*x2^-2"
    isolord definite -g centerless:2,3,2,3 "b*c"
    isolord verify -g tower:2,3 propertyA --len 8
    isolord bench -g tower:2,3 --lengths 10,100,1000

``-g`` takes ``tower:A,B,... [assoc=left|right|TREE] [perm=...] [rev=...]``,
``centerless:p,q,m,n``, or the path of a group spec file.

Exit codes: 0 success, 1 a suite failed, 2 parse error, 3 validation
failure, 4 identity input where a nontrivial element is required.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from pathlib import Path

from . import engine, factorization
from .catalog import ShorthandError, TowerSpecError, from_shorthand
from .definite import IdentityInput, definite_search_bounded, definite_word
from .groups import SpecSyntaxError, ValidationError, load_spec, rank_bound, validate
from .nodes import cone_names
from .oracle import enumerate_ball
from .suites import SUITES, UnknownSuite, random_word, run_suite
from .words import UnknownGenerator, WordSyntaxError, parse_word

EXIT_OK, EXIT_SUITE_FAILED, EXIT_PARSE, EXIT_VALIDATION, EXIT_IDENTITY = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def load_group(spec: str, assume_invariance: bool = False):
    try:
        if spec.split(":", 1)[0] in ("tower", "centerless"):
            return from_shorthand(spec)
        path = Path(spec)
        if not path.exists():
            raise CliError(f"no such group spec file: {spec}", EXIT_PARSE)
        return load_spec(path.read_text(), assume_invariance=assume_invariance)
    except ValidationError as exc:
        raise CliError(f"validation failed [{exc.hypothesis}]: {exc}", EXIT_VALIDATION) from None
    except (SpecSyntaxError, ShorthandError, TowerSpecError, WordSyntaxError, UnknownGenerator) as exc:
        raise CliError(f"cannot parse group spec: {exc}", EXIT_PARSE) from None


def parse(node, text: str, *, cone: bool = False):
    alphabet = cone_names(node) if cone else node.leaves
    try:
        return parse_word(text, alphabet)
    except UnknownGenerator as exc:
        raise CliError(f"unknown generator {exc.args[0]!r} in {text!r}; expected one of {sorted(alphabet)}", EXIT_PARSE)
    except WordSyntaxError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def emit(args, text: str, data: dict) -> None:
    if args.format == "machine":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


# -- commands ----------------------------------------------------------------


def cmd_validate(args, node) -> int:
    report = validate(node, seed=args.seed)
    cone = [str(w) for w in node.cone_generators]
    text = report.text() + "\ncone generators: " + ", ".join(cone) + f"\nrank bound: {rank_bound(node).value}"
    emit(
        args,
        text,
        {
            "ok": report.ok,
            "unsound": report.unsound,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
            "cone_generators": cone,
            "rank_bound": rank_bound(node).value,
        },
    )
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_sign(args, node) -> int:
    w = parse(node, args.word, cone=args.cone)
    if args.cone:
        from .nodes import cone_substitution

        w = cone_substitution(node)(w)
    s = engine.sign(node, w)
    emit(args, s.symbol, {"word": args.word, "sign": s.symbol})
    return EXIT_OK


def cmd_compare(args, node) -> int:
    u, v = parse(node, args.left), parse(node, args.right)
    c = engine.compare(node, u, v)
    emit(args, c.value, {"left": args.left, "right": args.right, "comparison": c.value})
    return EXIT_OK


def cmd_definite(args, node) -> int:
    w = parse(node, args.word)
    try:
        if args.search is not None:
            cert = definite_search_bounded(node, w, args.search)
        else:
            cert = definite_word(node, w)
    except IdentityInput:
        raise CliError(f"{args.word} is the identity; it has no definite word", EXIT_IDENTITY) from None
    emit(
        args,
        cert.text(),
        {"word": args.word, "polarity": cert.polarity.symbol, "rendering": str(cert.rendering), "verified": cert.verified},
    )
    return EXIT_OK


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value if isinstance(value, int) else str(value)


def cmd_factorize(args, node) -> int:
    if node.is_leaf:
        raise CliError("factorizations need an amalgam", EXIT_PARSE)
    w = parse(node, args.word)
    if args.pipeline == "engine":
        F = engine.reduce_via_normal_form(node, w)
        trace = {k: _plain(v) for k, v in F.trace.items()}
        lines = [F.describe()] + [f"  {k}: {v}" for k, v in trace.items()]
    else:
        F0 = factorization.build_standard_factorization(node, w)
        F1 = factorization.pre_reduce(node, F0)
        F, rtrace = factorization.reduce_fully(node, F1)
        trace = {
            "standard": F0.describe(),
            "pre_reduced": F1.describe(),
            "steps": [{"rule": s.rule, "after": s.after.describe(), "measure": list(s.measure_after)} for s in rtrace.steps],
        }
        lines = [F.describe(), f"  standard: {trace['standard']}", f"  pre-reduced: {trace['pre_reduced']}"]
        lines += [f"  step {i}: {s['rule']} -> {s['after']} (d, c) = {tuple(s['measure'])}" for i, s in enumerate(trace["steps"], 1)]
    s = engine.sign(node.right, F.r)
    verdict = engine.Sign.ZERO if not F.parts and s == 0 else (engine.Sign.POSITIVE if s >= 0 else engine.Sign.NEGATIVE)
    lines.append(f"sign: {verdict.symbol}")
    emit(args, "\n".join(lines), {"word": args.word, "factorization": F.describe(), "trace": trace, "sign": verdict.symbol})
    return EXIT_OK


def cmd_zexp(args, node) -> int:
    w = parse(node, args.word)
    n = engine.zexp(node, w)
    emit(args, str(n), {"word": args.word, "zexp": n})
    return EXIT_OK


def cmd_ball(args, node) -> int:
    table = enumerate_ball(node, args.radius)
    lines = [f"ball of radius {table.radius} in {table.provenance}: {len(table)} elements", f"layers: {table.layer_sizes}", f"dedup: {table.dedup}"]
    if table.identity_hits:
        lines.append(f"IDENTITY HITS: {[str(w) for w in table.identity_hits]}")
    shown = table.entries if args.show is None else table.entries[: args.show]
    lines += [f"  {e.word} = {e.element}" for e in shown]
    emit(
        args,
        "\n".join(lines),
        {
            "radius": table.radius,
            "size": len(table),
            "layers": table.layer_sizes,
            "dedup": table.dedup,
            "identity_hits": [str(w) for w in table.identity_hits],
            "entries": [{"word": str(e.word), "element": str(e.element)} for e in shown],
        },
    )
    return EXIT_OK


def cmd_verify(args, node) -> int:
    params = {"seed": args.seed}
    for key in ("length", "radius", "samples", "max_length", "k"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    try:
        report = run_suite(node, args.suite, params)
    except UnknownSuite as exc:
        raise CliError(str(exc.args[0]), EXIT_PARSE) from None
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    emit(args, report.text(), report.machine())
    return EXIT_OK if report.passed else EXIT_SUITE_FAILED


def bench(node, lengths, samples: int, seed: int):
    """Mean wall time of ``sign`` on random leaf words, and the fitted log-log slope."""
    import math

    rng = random.Random(seed)
    letters = sorted(node.leaves)
    rows = []
    for n in lengths:
        words = [random_word(rng, letters, n, n) for _ in range(samples)]
        t0 = time.perf_counter()
        for w in words:
            engine.sign(node, w)
        rows.append((n, (time.perf_counter() - t0) / samples))
    xs = [math.log(n) for n, _ in rows]
    ys = [math.log(max(t, 1e-9)) for _, t in rows]
    slope = statistics.linear_regression(xs, ys).slope if len(rows) > 1 else float("nan")
    return rows, slope


def cmd_bench(args, node) -> int:
    try:
        lengths = [int(t) for t in args.lengths.split(",")]
    except ValueError:
        raise CliError(f"bad --lengths {args.lengths!r}", EXIT_PARSE) from None
    rows, slope = bench(node, lengths, args.samples, args.seed)
    lines = [f"{n:>8} {t * 1000:10.3f} ms" for n, t in rows] + [f"growth exponent: {slope:.3f}"]
    emit(args, "\n".join(lines), {"rows": [{"length": n, "mean_seconds": t} for n, t in rows], "growth_exponent": slope})
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--group", required=True, metavar="SPEC", help="tower:..., centerless:..., or a spec file")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--format", choices=("text", "machine"), default="text", help="output style (default text)")
    common.add_argument(
        "--assume-invariance",
        action="store_true",
        help="accept uncertified z_H in spec files after random sampling (UNSOUND; default off)",
    )

    parser = argparse.ArgumentParser(prog="isolord", description="Isolated orderings of cyclic amalgams.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the hypotheses and print the cone")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sign", parents=[common], help="print +, - or 0")
    p.add_argument("word")
    p.add_argument("--cone", action="store_true", help="read the word over the cone names s1, s2, ...")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("compare", parents=[common], help="print <, = or >")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("definite", parents=[common], help="print a verified definite word")
    p.add_argument("word")
    p.add_argument("--search", type=int, default=None, metavar="BUDGET", help="use bounded search instead (default off)")
    p.set_defaults(func=cmd_definite)

    p = sub.add_parser("factorize", parents=[common], help="print a reduced standard factorization")
    p.add_argument("word")
    p.add_argument("--pipeline", choices=("engine", "lab"), default="engine", help="which construction (default engine)")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("zexp", parents=[common], help="largest N with z^N <= w")
    p.add_argument("word")
    p.set_defaults(func=cmd_zexp)

    p = sub.add_parser("ball", parents=[common], help="enumerate products of cone generators")
    p.add_argument("--radius", type=int, default=4, help="maximum word length (default 4)")
    p.add_argument("--show", type=int, default=20, help="entries to print (default 20)")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("verify", parents=[common], help="run an audit suite")
    p.add_argument("suite", help="one of: " + ", ".join(sorted(SUITES)))
    p.add_argument("--len", dest="length", type=int, default=None, help="word length for propertyA (default 8)")
    p.add_argument("--radius", type=int, default=None, help="ball radius (suite default)")
    p.add_argument("--samples", type=int, default=None, help="random samples (suite default)")
    p.add_argument("--max-length", type=int, default=None, help="random word length bound (suite default)")
    p.add_argument("--k", type=int, default=None, help="power range for convexity (default 3)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time sign over random words")
    p.add_argument("--lengths", default="10,100,1000", help="comma-separated lengths (default 10,100,1000)")
    p.add_argument("--samples", type=int, default=20, help="words per length (default 20)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        node = load_group(args.group, args.assume_invariance)
        return args.func(args, node)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
