"""Command-line front end.

Exit codes: 0 success (or suite satisfied), 1 suite not satisfied,
2 bad input, 3 criterion inapplicable or unsatisfiable, 4 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fixtures
from .coverage import check
from .criteria import parse_criterion
from .errors import (CriterionInapplicableError, FsmCovError,
                     IndistinguishableStatesError, ResourceError, UnknownPairError,
                     UnsatisfiableError)
from .generator import GenConfig, generate, minimize
from .graph import parse_graph_dot, parse_graph_json
from .paths import fmt, parse_suite_json
from .requirements import requirements_for

EXIT_OK, EXIT_UNSATISFIED, EXIT_INPUT, EXIT_INAPPLICABLE, EXIT_RESOURCE = range(5)

CRITERION_HELP = """\
criterion spec: name[:param], case-insensitive
  nc ec bc epc ppc srtc crtc bpc wmc apc
  nsc:N          N-switch coverage, N >= 0
  bic[:K]        boundary-interior with loop depth bound K (default 1)
  spc:@FILE      specified paths from a JSON list or suite document
"""


class _Usage(Exception):
    pass


def _bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _u64(text: str) -> int:
    n = int(text)
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return n


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from exc


def load_graph(path):
    text = _read(path)
    if path.endswith(".dot") or path.endswith(".gv") or not text.lstrip().startswith("{"):
        return parse_graph_dot(text)
    return parse_graph_json(text)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise _Usage(f"--{n.replace('_', '-')} is required for {args.command}")


def _criterion(args):
    _need(args, "criterion")
    return parse_criterion(args.criterion, base_dir=Path.cwd())


class _Style:
    def __init__(self, stream):
        env = os.environ.get("FSMCOV_COLOR")
        self.on = env == "1" or (env is None and hasattr(stream, "isatty") and stream.isatty())

    def __call__(self, text, code):
        return f"\033[{code}m{text}\033[0m" if self.on else text


def _emit(args, doc, text_lines):
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(text_lines))


def _show(item):
    if isinstance(item, (tuple, list)):
        return fmt(item) if item else "(empty)"
    return str(item)


def cmd_requirements(args):
    _need(args, "graph")
    g = load_graph(args.graph)
    c = _criterion(args)
    reqs = requirements_for(g, c)
    lines = [f"{reqs.criterion}: {len(reqs.items)} requirement(s)"]
    lines += [f"  {_show(r)}" for r in reqs.items]
    _emit(args, reqs.to_dict(), lines)
    return EXIT_OK


def cmd_check(args):
    _need(args, "graph", "suite")
    g = load_graph(args.graph)
    suite = parse_suite_json(_read(args.suite))
    c = _criterion(args)
    report = check(g, suite, c)
    style = _Style(sys.stdout)
    verdict = style("satisfied", "32") if report.satisfied else style("NOT satisfied", "31")
    ratio = f"{report.ratio.numerator}/{report.ratio.denominator}"
    lines = [f"{report.criterion}: {verdict} ({len(report.covered)} of "
             f"{len(report.covered) + len(report.missing)} covered, ratio {ratio})"]
    if report.missing:
        lines.append("missing: " + ", ".join(_show(m) for m in report.missing))
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.satisfied else EXIT_UNSATISFIED


def _gen_config(args):
    return GenConfig(anchor_start=args.anchor_start,
                     anchor_end=args.anchor_end,
                     seed=args.seed if args.seed is not None else 0,
                     max_paths=args.max_paths)


def _print_suite(args, suite):
    lines = [fmt(p) for p in suite.canonical()]
    _emit(args, suite.to_dict(), lines)


def cmd_generate(args):
    _need(args, "graph")
    g = load_graph(args.graph)
    c = _criterion(args)
    _print_suite(args, generate(g, c, _gen_config(args)))
    return EXIT_OK


def cmd_minimize(args):
    _need(args, "graph", "suite")
    g = load_graph(args.graph)
    suite = parse_suite_json(_read(args.suite))
    c = _criterion(args)
    if not check(g, suite, c).satisfied:
        raise _Usage(f"the input suite does not satisfy {c.label}")
    _print_suite(args, minimize(g, suite, c))
    return EXIT_OK


def _lab_spec(args):
    from .lab import RandomGraphSpec
    return RandomGraphSpec(min_vertices=args.min_vertices, max_vertices=args.max_vertices,
                           seed=args.seed if args.seed is not None else 42)


def _verdict_lines(v):
    lines = [f"{v.pair[0]} vs {v.pair[1]} (table: {v.expected}): {v.status}, "
             f"{v.trials} trial(s), {v.violations} violation(s), {v.skipped} skipped"]
    if v.witness is not None:
        lines.append(f"  witness from {v.witness.source}")
        lines.append("  suite: " + ", ".join(fmt(p) for p in v.witness.suite.paths))
        lines.append("  missing: " + ", ".join(str(m) for m in v.witness.missing))
    if v.reverse is not None:
        lines += ["  reverse: " + line.strip() for line in _verdict_lines(v.reverse)]
    return lines


def cmd_subsume(args):
    from .lab import search_counterexample, verify_cell, verify_subsumes
    from .lab.table import expected_relation

    c1 = parse_criterion(args.c1)
    c2 = parse_criterion(args.c2)
    spec = _lab_spec(args)
    try:
        expected_relation(c1, c2)
        in_table = c1.kind == c1.label and c2.kind == c2.label
    except UnknownPairError:
        in_table = False
    if in_table:
        v = verify_cell(c1.kind, c2.kind, spec, args.trials)
    elif c2.kind == "APC":
        v = search_counterexample(c1, c2, spec, args.trials)
    else:
        v = verify_subsumes(c1, c2, spec, args.trials)
    _emit(args, v.to_dict(), _verdict_lines(v))
    return EXIT_OK


def cmd_table(args):
    from .lab import run_table_verification

    def progress(v):
        if args.format == "text" and args.verbose:
            print("\n".join(_verdict_lines(v)), file=sys.stderr)

    report = run_table_verification(_lab_spec(args), args.trials, progress=progress)
    s = report["summary"]
    lines = []
    for cell in report["cells"]:
        mark = "" if not cell.get("exploratory") else " (exploratory)"
        rev = f" / reverse {cell['reverse']['status']}" if "reverse" in cell else ""
        lines.append(f"{cell['pair'][0]:>5} vs {cell['pair'][1]:<5} {cell['expected']:<5}"
                     f"{cell['status']}{rev}{mark}")
    lines.append("")
    lines.append("open questions:")
    for q in report["open_questions"]:
        lines.append(f"  [{q['id']}] {q['question']}")
    lines.append("")
    lines.append(f"summary: {s['agree']}/{s['asserted']} asserted cells agree, "
                 f"{s['contradictions']} contradiction(s), {s['unresolved']} unresolved, "
                 f"{s['exploratory']} exploratory ({s['exploratory_witnesses']} with witnesses)")
    _emit(args, report, lines)
    return EXIT_OK


def cmd_fixtures(args):
    chosen = [fixtures.get(args.name)] if args.name else list(fixtures.ALL)
    doc = {f.name: {"graph": f.graph.to_dict(),
                    "suites": {k: {"paths": v} for k, v in f.suites.items()},
                    "note": f.note} for f in chosen}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for f in chosen:
            stem = f.name.lower()
            (out / f"{stem}.json").write_text(f.graph.to_json(indent=2) + "\n")
            (out / f"{stem}.dot").write_text(f.graph.to_dot())
            for k, v in f.suites.items():
                (out / f"{stem}.{k}.suite.json").write_text(json.dumps({"paths": v}) + "\n")
    lines = []
    for f in chosen:
        lines.append(f"{f.name}: {len(f.graph.vertices)} vertices, {len(f.graph.edges)} edges, "
                     f"start {f.graph.start}, ends {sorted(f.graph.ends)}")
        lines.append(f"  {f.note}")
        for k, v in f.suites.items():
            lines.append(f"  suite {k}: " + ", ".join(fmt(p) for p in v))
    _emit(args, doc, lines)
    return EXIT_OK


COMMANDS = {
    "requirements": cmd_requirements,
    "check": cmd_check,
    "generate": cmd_generate,
    "minimize": cmd_minimize,
    "subsume": cmd_subsume,
    "table": cmd_table,
    "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file (JSON, or DOT by extension or content)")
    common.add_argument("--suite", help="suite JSON file {\"paths\": [[edge ids...], ...]}")
    common.add_argument("--criterion", help="criterion spec, see the epilog")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=_u64, default=None)
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--max-paths", type=int, default=10_000)
    common.add_argument("--anchor-start", type=_bool, default=True, metavar="BOOL")
    common.add_argument("--anchor-end", type=_bool, default=None, metavar="BOOL",
                        help="default: true when the graph has end vertices")
    common.add_argument("--min-vertices", type=int, default=4)
    common.add_argument("--max-vertices", type=int, default=8)

    parser = argparse.ArgumentParser(
        prog="fsmcov", description="Graph coverage criteria for finite state machines.",
        epilog=CRITERION_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
            ("requirements", "print the test requirements of a criterion"),
            ("check", "check a suite; exit 0 when satisfied, 1 when not"),
            ("generate", "generate a suite satisfying a criterion"),
            ("minimize", "drop redundant paths from a satisfying suite"),
            ("table", "verify every cell of the relation table")):
        sub.add_parser(name, parents=[common], help=helptext, epilog=CRITERION_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p = sub.add_parser("subsume", parents=[common], help="test whether C1 subsumes C2")
    p.add_argument("c1", metavar="C1")
    p.add_argument("c2", metavar="C2")
    sub.choices["table"].add_argument("-v", "--verbose", action="store_true",
                                      help="print each cell to stderr as it finishes")
    p = sub.add_parser("fixtures", parents=[common], help="dump the reference fixtures")
    p.add_argument("name", nargs="?", help="a single fixture, e.g. FIX-DIAMOND or diamond")
    p.add_argument("--out", help="also write graph, DOT and suite files to this directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (CriterionInapplicableError, IndistinguishableStatesError,
            UnsatisfiableError) as exc:
        print(f"fsmcov: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except ResourceError as exc:
        print(f"fsmcov: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FsmCovError, _Usage, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fsmcov: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
