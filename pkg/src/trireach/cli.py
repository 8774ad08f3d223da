"""Command-line front end: verification, construction, region queries, grid
scans, oracle runs, cross checks and the expansion-lemma checker.

Exit codes: 0 success, 1 claim failed (a verification, certification,
consistency or lemma check did not hold), 2 usage or parse error. Rationals
on the command line use the exact "p/q" form; decimals are rejected. Every
command is deterministic given its flags (random subcommands take explicit
seeds), and witness files are the only interchange format.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import fileio, oracle, regions, witnesses
from .graphs import (
    ConstraintParams,
    LemmaOutcome,
    LemmaPreconditionError,
    Mode,
    WeightedTripartite,
    check_expansion_lemma,
    max_reach,
    verify,
)
from .rationals import RationalParseError, format_rational, parse_rational

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2

_MODES = {"bi": Mode.BICONSTRAINED, "con": Mode.CONSTRAINED}


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except RationalParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _sizes(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a,b,c sizes, got {text!r}")
    return (int(parts[0]), int(parts[1]), int(parts[2]))


def _point(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y point, got {text!r}")
    return (_rational(parts[0]), _rational(parts[1]))


def cmd_verify(args: argparse.Namespace) -> int:
    parsed = fileio.read_graph_file(args.file)
    params = ConstraintParams(args.x, args.y, _MODES[args.mode])
    report = verify(parsed.graph, params)
    reach, vertex = max_reach(parsed.graph)
    if report.ok:
        print(f"pass: max_reach {format_rational(reach)} at C[{vertex}]")
        return EXIT_OK
    print(f"fail: {report.violation} (max_reach {format_rational(reach)} at C[{vertex}])")
    return EXIT_CLAIM_FAILED


def cmd_construct(args: argparse.Namespace) -> int:
    def need(*names: str) -> None:
        missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
        if missing:
            raise ValueError(
                f"construct --method {args.method} requires --" + ", --".join(missing)
            )

    if args.method == "interval":
        need("n", "p", "q")
        witness = witnesses.interval_witness(args.n, int(args.p), int(args.q))
    elif args.method == "circulant":
        need("x", "y", "a", "b")
        witness = witnesses.circulant_witness(args.x, args.y, args.a, args.b)
    else:
        need("base", "x", "y", "z")
        base = witnesses.load_witness(args.base)
        pq = None
        if args.p is not None or args.q is not None:
            need("p", "q")
            pq = (args.p, args.q)
        if args.method == "extend-phi":
            witness = witnesses.extend_phi(base, args.x, args.y, args.z)
        elif args.method == "extend-psi-top":
            witness = witnesses.extend_psi_top(base, args.x, args.y, args.z, pq)
        else:
            witness = witnesses.extend_psi_bottom(base, args.x, args.y, args.z, pq)
    witnesses.save_witness(witness, args.out)
    kind = "strict" if witness.strict else "nonstrict"
    print(
        f"{witness.function.value}({format_rational(witness.x)},{format_rational(witness.y)}) "
        f"{'<' if witness.strict else '<='} {format_rational(witness.z)} "
        f"({kind}, reach {format_rational(witness.reach)}) -> {args.out}"
    )
    return EXIT_OK


def cmd_region(args: argparse.Namespace) -> int:
    x, y = args.point
    catalog = regions.predicate_catalog(include_suspect_branch=not args.no_suspect_branch)
    verdict = regions.evaluate_point(x, y, catalog)
    rel = {"at_least": ">=", "below": "<", "at_most": "<="}
    for f in verdict.findings:
        print(f"{f.source}: {f.function.value} {rel[f.relation.value]} {format_rational(f.level)}")
    if verdict.contradictions:
        for c in verdict.contradictions:
            print(f"CONTRADICTION: {c}")
        return EXIT_CLAIM_FAILED
    print(f"{len(verdict.findings)} findings, no contradictions")
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    catalog = regions.predicate_catalog(include_suspect_branch=not args.no_suspect_branch)
    report = regions.scan_grid(args.step, args.out, catalog=catalog)
    print("\n".join(report.summary_lines()))
    if report.contradictions:
        for x, y, c in report.contradictions:
            print(f"CONTRADICTION at ({format_rational(x)}, {format_rational(y)}): {c}")
        return EXIT_CLAIM_FAILED
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    params = ConstraintParams(args.x, args.y, _MODES[args.mode])
    if args.randomized:
        result = oracle.randomized_upper_bound(args.sizes, params, args.trials, args.seed)
        if result.value is None:
            print(f"no feasible sample in {result.trials} trials")
            return EXIT_CLAIM_FAILED
        print(
            f"randomized upper bound {format_rational(result.value)} "
            f"({result.feasible_trials}/{result.trials} feasible trials)"
        )
        graph, kind = result.graph, "randomized"
    else:
        outcome = oracle.exhaustive_min_max(
            oracle.OracleQuery(args.sizes[0], args.sizes[1], args.sizes[2], params)
        )
        if outcome.infeasible:
            print("infeasible: no graph of these sizes passes verify")
            return EXIT_CLAIM_FAILED
        print(format_rational(outcome.value))
        graph, kind = outcome.graph, "exhaustive"
    if args.out and graph is not None:
        fileio.write_graph_file(args.out, WeightedTripartite.uniform(graph), oracle=kind)
    return EXIT_OK


def cmd_cross_check(args: argparse.Namespace) -> int:
    parsed = fileio.read_graph_file(args.file)
    if parsed.claim is None:
        print("file carries no claim line; nothing to cross-check", file=sys.stderr)
        return EXIT_USAGE
    c = parsed.claim
    params = ConstraintParams(c.x, c.y, c.function.mode)
    report = verify(parsed.graph, params)
    reach, _ = max_reach(parsed.graph)
    if not report.ok:
        print(f"claim fails verify: {report.violation}")
        return EXIT_CLAIM_FAILED
    bound_ok = reach < c.z if c.strict else reach <= c.z
    if not bound_ok:
        print(f"claim fails reach bound: reach {format_rational(reach)} vs z {format_rational(c.z)}")
        return EXIT_CLAIM_FAILED
    witness = witnesses.Witness(
        parsed.graph, c.function, c.x, c.y, c.z, c.function.mode, c.strict, reach,
        parsed.provenance or "file",
    )
    cc = oracle.cross_check(witness, enum_limit=args.enum_limit)
    print(f"blow-up sizes: {cc.blowup_sizes}")
    print(f"weighted reach {format_rational(cc.weighted_reach)}, "
          f"blow-up reach {format_rational(cc.blowup_reach)}, match: {cc.reach_matches}")
    if cc.exhaustive_value is not None:
        print(f"exhaustive minimum at blow-up sizes: {format_rational(cc.exhaustive_value)} "
              f"(consistent: {cc.exhaustive_consistent})")
    for note in cc.notes:
        print(note)
    print("ok" if cc.ok else "cross-check FAILED")
    return EXIT_OK if cc.ok else EXIT_CLAIM_FAILED


def cmd_lemma_check(args: argparse.Namespace) -> int:
    parsed = fileio.read_graph_file(args.file)
    if args.z is not None:
        z = args.z
    elif parsed.claim is not None:
        z = parsed.claim.z
    else:
        print("no --z given and file carries no claim line", file=sys.stderr)
        return EXIT_USAGE
    if parsed.claim is not None:
        x, y = parsed.claim.x, parsed.claim.y
    elif args.x is not None and args.y is not None:
        x, y = args.x, args.y
    else:
        print("no claim line: pass --x and --y", file=sys.stderr)
        return EXIT_USAGE
    params = ConstraintParams(x, y, Mode.BICONSTRAINED)
    nb = parsed.graph.structure.b_size

    subsets: list[list[int]]
    if args.subset is not None:
        subsets = [[int(t) for t in args.subset.split(",") if t != ""]]
    else:
        rng = random.Random(args.seed)
        subsets = [
            [j for j in range(nb) if rng.random() < 0.5] for _ in range(args.random)
        ]
    counts = {o: 0 for o in LemmaOutcome}
    try:
        for subset in subsets:
            outcome = check_expansion_lemma(parsed.graph, params, z, args.k, subset)
            counts[outcome] += 1
            if len(subsets) == 1:
                print(outcome.value)
    except LemmaPreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_CLAIM_FAILED
    if len(subsets) > 1:
        print(
            f"{len(subsets)} subsets: {counts[LemmaOutcome.HOLDS]} holds, "
            f"{counts[LemmaOutcome.NOT_APPLICABLE]} not_applicable, "
            f"{counts[LemmaOutcome.COUNTEREXAMPLE]} COUNTEREXAMPLE"
        )
    return EXIT_CLAIM_FAILED if counts[LemmaOutcome.COUNTEREXAMPLE] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trireach",
        description="Exact reach-bound toolkit for degree-constrained tripartite graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a graph file against (x, y) constraints")
    p.add_argument("file")
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--y", type=_rational, required=True)
    p.add_argument("--mode", choices=sorted(_MODES), default="bi")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a certified witness file")
    p.add_argument(
        "--method",
        required=True,
        choices=["interval", "circulant", "extend-phi", "extend-psi-top", "extend-psi-bottom"],
    )
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_rational)
    p.add_argument("--q", type=_rational)
    p.add_argument("--x", type=_rational)
    p.add_argument("--y", type=_rational)
    p.add_argument("--z", type=_rational)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--base", help="witness file used as the lifting base")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("region", help="evaluate every region rule at one point")
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--no-suspect-branch", action="store_true",
                   help="drop the verbatim-but-suspect level-3/4 branch")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("scan", help="grid scan; writes one CSV row per finding")
    p.add_argument("--step", type=_rational, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-suspect-branch", action="store_true",
                   help="drop the verbatim-but-suspect level-3/4 branch")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="brute-force minimum of the maximal reach")
    p.add_argument("--sizes", type=_sizes, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--y", type=_rational, required=True)
    p.add_argument("--mode", choices=sorted(_MODES), default="con")
    p.add_argument("--randomized", action="store_true")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("cross-check", help="recheck a witness file via its blow-up")
    p.add_argument("file")
    p.add_argument("--enum-limit", type=int, default=oracle.MAX_EXHAUSTIVE_SIZE)
    p.set_defaults(func=cmd_cross_check)

    p = sub.add_parser("lemma-check", help="expansion check on B-subsets of a witness")
    p.add_argument("file")
    p.add_argument("--z", type=_rational)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--x", type=_rational)
    p.add_argument("--y", type=_rational)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--subset", help="comma-separated B indices")
    group.add_argument("--random", type=int, help="number of random subsets")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_lemma_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RationalParseError, fileio.FileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (witnesses.ConstructionError, witnesses.CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLAIM_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
