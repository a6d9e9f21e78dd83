"""Command-line front end.

Exit codes: 0 success or member, 1 verified negative, 2 inconclusive or budget exhausted,
64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ParseError, RejectedInput
from .geometry import LineConfig, Placement, dump_json, rational, verify_realization
from .graphs import Graph, PatternKind, find_induced, load_graph, make_pattern
from .reduction import (
    DEFAULT_SEED,
    Assignment,
    LayoutProfile,
    ReductionInstance,
    WitnessError,
    formula_corpus,
    parse_nae3sat,
    reduce,
    self_check,
    solve_nae_bruteforce,
    witness_embedding,
)
from .recognize import (
    SearchBudget,
    SearchStatus,
    Verdict,
    apud11_obstructions,
    apud11_sufficient,
    apud_gt2_sufficient,
    solve_placement_grid,
    uig_obstruction,
    uig_oracle,
    ORACLE_GUARD,
    GRID_GUARD,
)
from .render import render_svg

OK, NEGATIVE, INCONCLUSIVE, USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str) -> dict:
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})", exc.lineno) from None


def _write(path: str | None, text: str):
    if path:
        Path(path).write_text(text)


def _budget(args) -> SearchBudget:
    return SearchBudget(rational(args.step), rational(args.window), args.max_nodes)


def _emit(args, code: int, payload: dict, summary: str) -> int:
    if args.format == "json":
        sys.stdout.write(dump_json({"exit": code, **payload}))
    else:
        print(summary)
    return code


# commands ----------------------------------------------------------------


def cmd_reduce(args) -> int:
    formula = parse_nae3sat(_read(args.formula))
    profile = self_check(LayoutProfile(rational(args.epsilon)))
    inst = reduce(formula, profile)
    _write(args.output, dump_json(inst.to_json()))
    g, lines = inst.graph, inst.lines
    bottom, top = inst.flag_counts()
    stats = {
        "vertices": g.n,
        "edges": len(g.edges),
        "horizontal_lines": len(lines.horizontals),
        "vertical_lines": len(lines.verticals),
        "flags": {"bottom": bottom, "top": top},
    }
    summary = (
        f"|V|={g.n} |E|={len(g.edges)} horizontal lines={len(lines.horizontals)} "
        f"vertical lines={len(lines.verticals)}"
    )
    return _emit(args, OK, {"stats": stats, "output": args.output}, summary)


def cmd_solve_nae(args) -> int:
    formula = parse_nae3sat(_read(args.formula))
    a = solve_nae_bruteforce(formula)
    if a is None:
        return _emit(args, NEGATIVE, {"satisfiable": False}, "NAE-unsatisfiable")
    return _emit(args, OK, {"satisfiable": True, "assignment": str(a)}, f"NAE-satisfiable: {a}")


def cmd_witness(args) -> int:
    inst = ReductionInstance.from_json(_read_json(args.bundle))
    if args.assignment:
        a = Assignment.parse(args.assignment)
    elif inst.formula is None:
        a = Assignment((True,) * inst.n)
    else:
        a = solve_nae_bruteforce(inst.formula)
        if a is None:
            return _emit(args, NEGATIVE, {"satisfiable": False}, "NAE-unsatisfiable")
    try:
        pl = witness_embedding(inst, a)
    except WitnessError as exc:
        report = exc.report.to_json() if exc.report is not None else None
        print(f"error: {exc}", file=sys.stderr)
        if report is not None:
            sys.stderr.write(dump_json(report))
        return NEGATIVE
    report = verify_realization(inst.graph, inst.lines, pl)
    _write(args.output, dump_json(pl.to_json()))
    _write(args.report, dump_json(report.to_json()))
    return _emit(
        args,
        OK if report.valid else NEGATIVE,
        {"assignment": str(a), "report": report.to_json(), "output": args.output},
        f"assignment {a}: {report.summary()}",
    )


def _graph_and_lines(paths: list[str]) -> tuple[Graph, LineConfig, list[str]]:
    # either GRAPH LINES ... or BUNDLE ...
    first = _read(paths[0])
    try:
        data = json.loads(first)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, dict) and "params" in data:
        inst = ReductionInstance.from_json(data)
        return inst.graph, inst.lines, paths[1:]
    if len(paths) < 2:
        raise UsageError("expected a line configuration file after the graph file")
    return load_graph(first), LineConfig.from_json(_read_json(paths[1])), paths[2:]


def cmd_verify(args) -> int:
    g, lines, rest = _graph_and_lines(args.files)
    if len(rest) != 1:
        raise UsageError("usage: verify GRAPH LINES PLACEMENT  or  verify BUNDLE PLACEMENT")
    pl = Placement.from_json(_read_json(rest[0]))
    report = verify_realization(g, lines, pl)
    return _emit(args, OK if report.valid else NEGATIVE, {"report": report.to_json()}, report.summary())


def cmd_recognize(args) -> int:
    g = load_graph(_read(args.graph))
    if args.mode == "uig":
        if g.n > args.guard:
            raise RejectedInput(f"unit interval recognition is limited to {args.guard} vertices, got {g.n}")
        obstruction = uig_obstruction(g)
        if obstruction is not None:
            payload = {"verdict": Verdict.NOT_IN_CLASS.value, "found": [obstruction.to_json()]}
            return _emit(args, NEGATIVE, payload, f"not unit interval: induced {obstruction.pattern} at {list(obstruction.vertices)}")
        payload = {"verdict": "Member", "found": []}
        if g.n <= ORACLE_GUARD:
            xs = uig_oracle(g)
            payload["coordinates"] = {str(v): f"{x.numerator}/{x.denominator}" for v, x in sorted(xs.items())}
        return _emit(args, OK, payload, "unit interval")

    if args.mode == "gt2":
        if args.k is None or args.m is None:
            raise UsageError("gt2 needs --k and --m")
        report = apud_gt2_sufficient(g, args.k, args.m, guard=args.guard)
        code = OK if report.verdict is Verdict.SUFFICIENT_MEMBER else INCONCLUSIVE
        return _emit(args, code, report.to_json(), f"{report.verdict.value}: {report.note}")

    if args.mode == "apud11":
        report = apud11_obstructions(g)
        if report.verdict is Verdict.NOT_IN_CLASS:
            names = ", ".join(f"{o.pattern}{list(o.vertices)}" for o in report.found)
            return _emit(args, NEGATIVE, report.to_json(), f"NotInClass: {names}")
        report = apud11_sufficient(g, guard=args.guard)
        if report.verdict is Verdict.SUFFICIENT_MEMBER:
            return _emit(args, OK, report.to_json(), f"SufficientMember: {report.note}")
        lines = LineConfig((0,), (0,))
    else:  # grid
        if not args.lines:
            raise UsageError("grid mode needs --lines")
        lines = LineConfig.from_json(_read_json(args.lines))
        report = None

    if args.no_grid or g.n > GRID_GUARD:
        payload = report.to_json() if report else {"verdict": Verdict.INCONCLUSIVE.value}
        return _emit(args, INCONCLUSIVE, payload, "Inconclusive: grid search skipped")
    result = solve_placement_grid(g, lines, _budget(args), jobs=args.jobs)
    payload = {"verdict": "Member" if result.found else Verdict.INCONCLUSIVE.value, "search": result.to_json()}
    if report is not None:
        payload["checks"] = report.to_json()
    if result.found:
        _write(args.output, dump_json(result.placement.to_json()))
    if result.found:
        return _emit(args, OK, payload, f"Member: verified grid placement after {result.nodes} nodes")
    if result.status is SearchStatus.EXHAUSTED:
        return _emit(args, INCONCLUSIVE, payload, f"Inconclusive: node budget of {args.max_nodes} exhausted")
    return _emit(
        args,
        INCONCLUSIVE,
        payload,
        f"Inconclusive: no placement at step {args.step} within window {args.window} ({result.nodes} nodes)",
    )


def cmd_find_pattern(args) -> int:
    g = load_graph(_read(args.graph))
    pattern = make_pattern(args.pattern, args.size)
    name = args.pattern if args.size is None else f"{args.pattern}{args.size}"
    found = find_induced(g, pattern, name)
    payload = {"pattern": name, "count": len(found), "occurrences": [o.to_json() for o in found]}
    lines = [f"{len(found)} induced {name}"] + [" ".join(map(str, o.vertices)) for o in found]
    return _emit(args, OK if found else NEGATIVE, payload, "\n".join(lines))


def cmd_render(args) -> int:
    pl = Placement.from_json(_read_json(args.placement))
    lines_data = _read_json(args.lines)
    roles = None
    if "params" in lines_data:
        inst = ReductionInstance.from_json(lines_data)
        lines, roles = inst.lines, inst.roles
    else:
        lines = LineConfig.from_json(lines_data)
    svg = render_svg(lines, pl, roles)
    if args.output:
        _write(args.output, svg)
    else:
        sys.stdout.write(svg)
        return OK
    return _emit(args, OK, {"output": args.output, "circles": len(pl.points)}, f"wrote {args.output}")


def cmd_corpus(args) -> int:
    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for i, f in enumerate(formula_corpus(args.seed, args.count)):
        name = f"formula_{i:03d}.nae"
        (out / name).write_text(f.to_text())
        names.append(name)
    return _emit(args, OK, {"seed": args.seed, "files": names}, f"wrote {len(names)} formulas to {out}")


# parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--step", default="1/20", help="grid pitch (num/den)")
    budget.add_argument("--window", default="4", help="half-width of the searched span per line")
    budget.add_argument("--max-nodes", type=int, default=SearchBudget().max_nodes)
    budget.add_argument("--jobs", type=int, default=1)

    p = _Parser(prog="apud", description="Unit disks on axes-parallel lines: reduction, verification, recognition.")
    p.add_argument("--version", action="version", version=f"apud {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("reduce", parents=[common], help="build the reduction instance of a formula")
    s.add_argument("formula")
    s.add_argument("-o", "--output")
    s.add_argument("--epsilon", default="1/10")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve-nae", parents=[common], help="brute-force a NAE assignment")
    s.add_argument("formula")
    s.set_defaults(func=cmd_solve_nae)

    s = sub.add_parser("witness", parents=[common], help="exact placement of an instance from an assignment")
    s.add_argument("bundle")
    s.add_argument("--assignment", help="T/F string, one character per variable")
    s.add_argument("-o", "--output")
    s.add_argument("--report")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("verify", parents=[common], help="check a placement exactly")
    s.add_argument("files", nargs="+", metavar="FILE", help="GRAPH LINES PLACEMENT, or BUNDLE PLACEMENT")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("recognize", parents=[common, budget], help="class membership checks")
    s.add_argument("graph")
    s.add_argument("--mode", choices=("uig", "apud11", "gt2", "grid"), default="uig")
    s.add_argument("--k", type=int, help="horizontal line count (gt2)")
    s.add_argument("--m", type=int, help="vertical line count (gt2)")
    s.add_argument("--lines", help="line configuration for grid mode")
    s.add_argument("--no-grid", action="store_true", help="skip the grid search fallback")
    s.add_argument("--guard", type=int, default=64)
    s.add_argument("-o", "--output", help="write the placement when one is found")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("find-pattern", parents=[common], help="list induced copies of a pattern")
    s.add_argument("graph")
    s.add_argument("--pattern", choices=[k.value for k in PatternKind], required=True)
    s.add_argument("--size", type=int)
    s.set_defaults(func=cmd_find_pattern)

    s = sub.add_parser("render", parents=[common], help="draw a placement as SVG")
    s.add_argument("placement")
    s.add_argument("lines", help="line configuration or instance bundle (bundles add role colours)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("corpus", parents=[common], help="write the seeded random formula corpus")
    s.add_argument("directory")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--count", type=int, default=50)
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except RejectedInput as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
