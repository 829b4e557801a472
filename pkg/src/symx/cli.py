"""``symx`` command line: run law suites, evaluate expressions, analyse names."""
from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, SymxError, UnknownSuite
from .forcing import TruncatedPoset, compile_name, forces
from .group import CUT_IDEAL, FINITE_IDEAL, ONE, Automorphism, FullGroup, Ideal
from .names import Name, apply_name, support
from .order import Nat, Plain
from .sexpr import parse, parse_automorphism, parse_condition, parse_formula, parse_name
from .suites import SUITES, RunConfig, run_suite
from .symmetry import SymmetricSystem, is_hereditarily_symmetric

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"symx: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--index-size", type=int, default=2)
    p.add_argument("--slots", type=int, default=2)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--in", dest="infile", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symx", description="symbolic workbench for symmetric extensions")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    run = sub.add_parser("run", help="run a law suite")
    run.add_argument("suite", help="one of: " + ", ".join(SUITES))
    _common(run)
    ev = sub.add_parser("eval", help="evaluate one expression")
    ev.add_argument("action", choices=("apply", "support", "compile", "force"))
    ev.add_argument("args", nargs="*")
    ev.add_argument("--ideal", choices=("finite", "cuts"), default="finite")
    _common(ev)
    an = sub.add_parser("analyze", help="hereditary-symmetry witness tree for a name")
    an.add_argument("name", nargs="?")
    _common(an)
    return parser


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, default=str))
    elif isinstance(obj, dict):
        print(" ".join(f"{k}={v}" for k, v in obj.items()))
    else:
        print(obj)


def _inputs(args) -> list[str]:
    items = list(getattr(args, "args", None) or [])
    if getattr(args, "name", None):
        items.append(args.name)
    if args.infile:
        with open(args.infile, encoding="utf-8") as fh:
            items += [line.strip() for line in fh if line.strip()]
    return items


def _poset_for(args, *names: Name) -> TruncatedPoset:
    from .names import structural_points
    pts = set()
    for n in names:
        pts |= structural_points(n)
    pts |= {Nat(i) for i in range(args.index_size)} if not pts else set()
    return TruncatedPoset(pts, args.slots)


def cmd_run(args) -> int:
    cfg = RunConfig(args.suite, args.index_size, args.slots, args.depth, args.cases,
                    args.seed, args.budget, args.format)
    rep = run_suite(cfg)
    if args.format == "json":
        for ce in rep.counterexamples[:50]:
            print(json.dumps({"kind": "counterexample", **ce}, default=str))
        print(json.dumps({"kind": "report", **rep.to_dict()}, default=str))
    else:
        status = "PASS" if rep.passed else "FAIL"
        print(f"{rep.suite}: {status} seed={rep.seed} wall={rep.wall:.2f}s {rep.counts}")
        for ce in rep.counterexamples[:10]:
            print("  counterexample:", ce)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_eval(args) -> int:
    items = _inputs(args)
    act = args.action
    if act == "apply":
        if len(items) != 2:
            raise ParseError("apply needs an automorphism and a name")
        pi, n = parse_automorphism(items[0]), parse_name(items[1])
        _emit(str(apply_name(pi, n)), "text")
    elif act == "support":
        if len(items) != 1:
            raise ParseError("support needs one name")
        ideal = FINITE_IDEAL if args.ideal == "finite" else CUT_IDEAL
        _emit(str(support(parse_name(items[0]), ideal)), "text")
    elif act == "compile":
        if len(items) != 1:
            raise ParseError("compile needs one name")
        n = parse_name(items[0])
        _emit(str(compile_name(n, _poset_for(args, n))), "text")
    else:
        if len(items) not in (1, 2):
            raise ParseError("force needs a formula and optionally a condition")
        phi = parse_formula(items[0])
        p = parse_condition(items[1]) if len(items) == 2 else ONE
        from .forcing import map_names
        seen: list = []
        map_names(phi, lambda n: seen.append(n) or n)
        T = _poset_for(args, *seen)
        pts = set(T.points) | p.supp()
        T = TruncatedPoset(pts, args.slots)
        result = forces(p, phi, T)
        _emit({"forces": result, "p": str(p), "formula": str(phi)} if args.format == "json"
              else str(result).lower(), args.format)
    return EXIT_PASS


def cmd_analyze(args) -> int:
    items = _inputs(args)
    if not items:
        raise ParseError("analyze needs a name")
    status = EXIT_PASS
    for text in items:
        n = parse_name(text)
        T = _poset_for(args, n)
        n_pts = len(T.points)
        S = SymmetricSystem.over(T, FullGroup(Plain(n_pts)), FINITE_IDEAL)
        w = is_hereditarily_symmetric(n, S)
        _emit({"name": str(n), "hs": bool(w), "witness": w.to_json()}, "json")
        if not w:
            status = EXIT_FAIL
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # positionals that follow an option are left over by argparse
        stray = [x for x in extra if x.startswith("-")]
        if stray or (extra and args.command != "eval"):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        if extra:
            args.args = list(args.args) + extra
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"run": cmd_run, "eval": cmd_eval, "analyze": cmd_analyze}[args.command]
    try:
        return handler(args)
    except (ParseError, UnknownSuite, ValueError) as exc:
        print(f"symx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SymxError as exc:
        print(f"symx: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
