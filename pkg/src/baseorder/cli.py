"""Command line entry point.

Reports go to stdout (or --output) as JSON, a one-line summary to stderr.
Exit status: 0 true / counts match, 1 false / mismatch, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import pipeline
from .core import MatroidError, PresentationError


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="baseorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, jobs=False):
        sp.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
        if jobs:
            sp.add_argument("--jobs", "-j", type=int, default=pipeline.default_jobs(),
                            help="worker processes (default: available cores)")

    t = sub.add_parser("table1", help="count critical graphs by obstruction status")
    t.add_argument("--rank", "-r", type=int, required=True)
    t.add_argument("--verify", action="store_true", help="certify every M(Delta) as an excluded minor")
    t.add_argument("--long", action="store_true", help="allow ranks 8 and 9")
    common(t, jobs=True)

    c = sub.add_parser("check", help="decide a property of a matroid JSON file")
    c.add_argument("file")
    c.add_argument("--property", "-p", required=True,
                   help="bo, sbo, kbo=K, kl=K,L, transversal, cotransversal, paving, sparse-paving")
    common(c)

    k = sub.add_parser("construct", help="build a matroid from a named family")
    k.add_argument("family", choices=["mdelta", "malpha", "mbeta", "uniform", "mk4"])
    k.add_argument("params", nargs="*",
                   help="mdelta: graph.json; malpha: a,b,c,d,e,f; mbeta: k a,b,d,e; uniform: r n")
    common(k)

    g = sub.add_parser("catalog", help="build, query or diff a catalog directory")
    g.add_argument("action", choices=["build", "query", "diff"])
    g.add_argument("store")
    g.add_argument("other", nargs="?", help="second store for diff")
    g.add_argument("--property", "-p", help="query: property name")
    g.add_argument("--verdict", choices=["true", "false"], help="query: required verdict")
    g.add_argument("--family", help="query: restrict to one family")
    common(g, jobs=True)

    e = sub.add_parser("enumerate-critical", help="list critical graphs as JSON lines")
    e.add_argument("--rank", "-r", type=int, required=True)
    e.add_argument("--long", action="store_true", help="allow ranks 8 and 9")
    common(e)
    return p


def _summary(cmd: str, report) -> str:
    if cmd == "table1":
        rows = ", ".join(f"K{r['shape'][0]},{r['shape'][1]}: {r['no_obstruction']}+"
                         f"{r['with_obstruction']}" for r in report["rows"])
        tail = "" if "all_consistent" not in report else f"; verified {report['all_consistent']}"
        return f"r={report['r']}: {rows}; matches table {report['matches']}{tail}"
    if cmd == "check":
        return f"{report['property']}: {report['verdict']}"
    if cmd == "construct":
        return f"{len(report['ground'])} elements, {len(report['cyclic_flats'])} cyclic flats"
    if cmd == "enumerate-critical":
        return f"{len(report)} critical graphs"
    if "records" in report:
        return f"{report['records']} records written"
    if "count" in report:
        return f"{report['count']} matching records"
    return f"{len(report['differences'])} differing records"


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    cmd = args.command
    try:
        if cmd == "table1":
            report, code = pipeline.cmd_table1(args.rank, args.verify, args.jobs, args.long)
        elif cmd == "check":
            report, code = pipeline.cmd_check(args.file, args.property)
        elif cmd == "construct":
            report, code = pipeline.cmd_construct(args.family, args.params)
        elif cmd == "enumerate-critical":
            report, code = pipeline.cmd_enumerate_critical(args.rank, args.long)
        else:
            verdict = None if args.verdict is None else args.verdict == "true"
            report, code = pipeline.cmd_catalog(args.action, args.store, args.other,
                                                args.property, verdict, args.family, args.jobs)
    except PresentationError as exc:
        r = exc.report
        print(f"error: presentation fails {r.axiom}: {r.message}", file=sys.stderr)
        return pipeline.EXIT_USAGE
    except (MatroidError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return pipeline.EXIT_USAGE

    if cmd == "enumerate-critical":
        text = "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in report)
    else:
        text = json.dumps(report, indent=1) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(_summary(cmd, report), file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
