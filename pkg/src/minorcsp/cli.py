"""Command-line front end.

Results go to stdout as JSON (``--human`` for plain text).  Exit codes:
0 ok/true, 1 false/not-found, 2 usage error, 10 SAT, 20 UNSAT,
30 not in class.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import jsonio
from .catalogue import catalogue_names, make_named
from .core import Instance, RelationSpec
from .errors import MinorCspError, NotInClass, UnknownName
from .gadgets import Cnf, build_gc_gadget, build_sat_gadget, parse_dimacs, provenance, verify_gadget
from .generator import gen_random
from .occurrence import forbids
from .solvers import METHODS, classify, solve
from .core import pattern_from_instance, subdivide

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_NOT_IN_CLASS = 30


def _load_instance(path: str) -> Instance:
    return jsonio.instance_from_json(json.loads(Path(path).read_text()))


def _load_pattern(key_or_path: str):
    try:
        return make_named(key_or_path)
    except UnknownName:
        pass
    p = Path(key_or_path)
    if p.exists():
        return jsonio.pattern_from_json(json.loads(p.read_text()))
    raise UnknownName(
        f"{key_or_path!r} is neither a catalogue name ({', '.join(catalogue_names())}) "
        f"nor a pattern file")


def _emit(payload, human: bool):
    if human:
        print(_human_lines(payload))
    else:
        print(jsonio.dumps(payload))


def _human_lines(payload, indent=0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_human_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(f"{pad}- {json.dumps(item, default=str)}" for item in payload)
    return f"{pad}{payload}"


def _check(args, mode: str) -> int:
    instance = _load_instance(args.instance)
    pattern = _load_pattern(args.pattern)
    rel = RelationSpec.neq() if args.relation == "neq" else None
    from .core import AugmentedPattern

    if isinstance(pattern, AugmentedPattern) and rel is None:
        rel = RelationSpec.neq()  # the catalogue's augmented entries are disequality-based
    ok, violation = forbids([pattern], instance, mode, rel)
    payload = {"mode": mode, "pattern": args.pattern, "occurs": not ok}
    if violation and args.witness:
        payload["witness"] = jsonio.witness_to_json(violation[1])
    _emit(payload, args.human)
    return EXIT_TRUE if not ok else EXIT_FALSE


def _cmd_check_sp(args) -> int:
    return _check(args, "SP")


def _cmd_check_tm(args) -> int:
    return _check(args, "TM")


def _cmd_classify(args) -> int:
    instance = _load_instance(args.instance)
    _emit(classify(instance, pivot_bound=args.pivot_bound), args.human)
    return EXIT_TRUE


def _cmd_solve(args) -> int:
    instance = _load_instance(args.instance)
    try:
        result = solve(instance, args.method)
    except NotInClass as exc:
        _emit({"status": "NotInClass", "detail": str(exc)}, args.human)
        return EXIT_NOT_IN_CLASS
    payload = {"status": result.status, "assignment": result.assignment,
               "stats": result.stats}
    _emit(payload, args.human)
    return EXIT_SAT if result.is_sat else EXIT_UNSAT


def _cmd_ac(args) -> int:
    from .solvers import establish_ac

    instance = _load_instance(args.instance)
    _emit(jsonio.instance_to_json(establish_ac(instance)), args.human)
    return EXIT_TRUE


def _cmd_sac(args) -> int:
    from .solvers import establish_sac

    instance = _load_instance(args.instance)
    _emit(jsonio.instance_to_json(establish_sac(instance)), args.human)
    return EXIT_TRUE


def _cmd_subdivide(args) -> int:
    pattern = _load_pattern(args.pattern)
    from .core import AugmentedPattern

    if isinstance(pattern, AugmentedPattern):
        pattern = pattern.pattern
    result = subdivide(pattern, args.parts[0], args.parts[1])
    _emit(jsonio.pattern_to_json(result), args.human)
    return EXIT_TRUE


def _cmd_gen_random(args) -> int:
    instance = gen_random(args.vars, args.dom, args.density, args.seed)
    _emit(jsonio.instance_to_json(instance), args.human)
    return EXIT_TRUE


def _cmd_gen_sat_gadget(args) -> int:
    cnf = parse_dimacs(Path(args.cnf).read_text())
    if args.variant == "standard":
        instance, pattern = build_sat_gadget(cnf)
    else:
        instance, pattern = build_gc_gadget(cnf)
    payload = {
        "instance": jsonio.instance_to_json(instance),
        "forbidden_pattern": jsonio.pattern_to_json(pattern),
        "provenance": provenance(cnf, args.variant),
    }
    _emit(payload, args.human)
    return EXIT_TRUE


def _cmd_verify_gadget(args) -> int:
    cnf = parse_dimacs(Path(args.cnf).read_text())
    report = verify_gadget(cnf, variant=args.variant)
    _emit(report, args.human)
    return EXIT_TRUE if report["agree"] else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minorcsp",
        description="Patterns, occurrence tests, and tractable-class solvers for binary CSPs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--human", action="store_true", help="plain text instead of JSON")

    for name, fn in (("check-sp", _cmd_check_sp), ("check-tm", _cmd_check_tm)):
        p = sub.add_parser(name, help=f"{name.split('-')[1].upper()} occurrence check")
        p.add_argument("--pattern", required=True, help="catalogue name or pattern JSON file")
        p.add_argument("--instance", required=True, help="instance JSON file")
        p.add_argument("--relation", choices=("neq",), default=None,
                       help="relation spec for augmented patterns (default: neq when needed)")
        p.add_argument("--witness", action="store_true", help="emit the occurrence witness")
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("classify", help="tractable-class membership report")
    p.add_argument("--instance", required=True)
    p.add_argument("--pivot-bound", type=int, default=3)
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("solve", help="decide satisfiability")
    p.add_argument("--instance", required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    common(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("ac", help="establish arc consistency")
    p.add_argument("--instance", required=True)
    common(p)
    p.set_defaults(fn=_cmd_ac)

    p = sub.add_parser("sac", help="establish singleton arc consistency")
    p.add_argument("--instance", required=True)
    common(p)
    p.set_defaults(fn=_cmd_sac)

    p = sub.add_parser("subdivide", help="subdivide a pattern at two parts")
    p.add_argument("--pattern", required=True)
    p.add_argument("--parts", nargs=2, type=int, required=True, metavar=("U", "V"))
    common(p)
    p.set_defaults(fn=_cmd_subdivide)

    gen = sub.add_parser("gen", help="generators")
    gsub = gen.add_subparsers(dest="generator", required=True)

    p = gsub.add_parser("random", help="seeded random instance")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--dom", type=int, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_gen_random)

    p = gsub.add_parser("sat-gadget", help="reduction instance from a DIMACS 3-CNF")
    p.add_argument("--cnf", required=True)
    p.add_argument("--variant", choices=("standard", "gc"), default="standard")
    common(p)
    p.set_defaults(fn=_cmd_gen_sat_gadget)

    p = sub.add_parser("verify-gadget", help="cross-check a reduction gadget")
    p.add_argument("--cnf", required=True)
    p.add_argument("--variant", choices=("standard", "gc"), default="standard")
    common(p)
    p.set_defaults(fn=_cmd_verify_gadget)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except MinorCspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
