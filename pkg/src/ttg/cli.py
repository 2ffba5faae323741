"""``ttg`` command-line driver.

Exit codes: 0 success or every property holds; 1 some property verdict is
false; 2 parse error (including bad command-line usage); 3 semantic error;
4 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import explorer
from .dsl import load
from .emit import check_report, emit, format_text, full_report, object_supports
from .errors import (
    ContractError, InputError, ParseError, ResourceCapError, SemanticError, TheoremViolation,
)
from .report import Report, fmt_set
from .rickard import gamma_point_support

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_SEMANTIC, EXIT_CAP = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(f"usage: {message}")


def _verdict_exit(rep: Report) -> int:
    return EXIT_OK if rep.all_pass else EXIT_FALSE


def _write(out, data) -> None:
    if isinstance(data, bytes):
        out.flush()
        buf = getattr(out, "buffer", None)
        if buf is not None:
            buf.write(data)
            buf.flush()
        else:
            out.write(data.decode("utf-8"))
    else:
        out.write(data)


def cmd_check(args, out) -> int:
    wb = load(args.file)
    rep = check_report(wb, args.support)
    _write(out, rep.dumps() if args.format == "json" else format_text(rep))
    return _verdict_exit(rep)


def cmd_extend(args, out) -> int:
    wb = load(args.file)
    obj = wb.object(args.object)
    sds = [wb.support(args.support)] if args.support else None
    entries = object_supports(wb, args.object, sds)
    if args.format == "json":
        _write(out, json.dumps(entries, separators=(",", ":"), ensure_ascii=False) + "\n")
        return EXIT_OK
    lines = [f"{args.object} = {obj.describe()}", f"  Supp = {fmt_set(obj.base, obj.supp)}"]
    for e in entries:
        lines.append(f"  {e['support']}: extended {e['extended']}")
        if "hat" in e:
            lines.append(f"  {e['support']}: eta-preimage {e['hat']}")
    _write(out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_gamma(args, out) -> int:
    wb = load(args.file)
    sd = wb.support(args.support)
    if args.point not in sd.target.points:
        raise SemanticError(f"unknown point {args.point!r} of support {args.support!r}")
    _write(out, fmt_set(sd.base, gamma_point_support(sd, args.point)) + "\n")
    return EXIT_OK


def cmd_universal(args, out) -> int:
    wb = load(args.file)
    sd = wb.support(args.support)
    if not (sd.tensorial and sd.realizing):
        raise ContractError(f"support {args.support!r} is not tensorial and realizing")
    lines = ["eta " + " ".join(f"{a}->{b}" for a, b in sd.eta_map.as_dict().items())]
    comp = sd.comparative
    if comp:
        lines.append("rho " + " ".join(f"{a}->{b}" for a, b in comp.value.as_dict().items()))
    _write(out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_search(args, out) -> int:
    family = explorer.InstanceFamily(args.max_base, args.max_target, dedup=args.dedup,
                                     cap=args.cap)
    found = explorer.search_counterexamples(args.predicate, family, limit=args.limit)
    if args.format == "json":
        payload = {"predicate": args.predicate, "count": len(found),
                   "witnesses": [w.to_json() for w in found]}
        _write(out, json.dumps(payload, separators=(",", ":"), ensure_ascii=False) + "\n")
    else:
        lines = [f"{args.predicate}: {len(found)} witness(es)"]
        lines += [f"  {w.instance.describe()}  # {w.detail}" for w in found]
        _write(out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_suite(args, out) -> int:
    kinds = explorer.KINDS if args.kind == "all" else (
        (explorer.PULLBACK_INJECTIVE, explorer.PUSHFORWARD_SURJECTIVE)
        if args.kind == "default" else (args.kind,))
    suite = explorer.default_suite()
    if args.entries:
        suite = suite.subset(args.entries.split(","))
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.progress else None
    reports = []
    violations = 0
    for kind in kinds:
        family = explorer.InstanceFamily(args.max_base, args.max_target, kind, cap=args.cap)
        summary = explorer.run_family(family, suite, workers=args.workers, progress=progress)
        violations += summary.violations
        reports.append((kind, summary, summary.to_report(suite.names(), family)))
    if args.format == "json":
        payload = b"".join(r.dumps().encode("utf-8") for _, _, r in reports)
        _write(out, payload)
    else:
        lines = []
        for kind, summary, _ in reports:
            lines.append(f"{kind}: {summary.instances} instances, "
                         f"{summary.violations} violations")
            for name in suite.names():
                lines.append(f"  {name:<24} applicable {summary.applicable.get(name, 0):>7}"
                             f"  violations {summary.failures.get(name, 0)}")
                if name in summary.first_failure:
                    lines.append(f"    first: {summary.first_failure[name][1]}")
        _write(out, "\n".join(lines) + "\n")
    return EXIT_OK if violations == 0 else EXIT_FALSE


def cmd_report(args, out) -> int:
    wb = load(args.file)
    if args.format == "dot":
        _write(out, emit(wb, "dot"))
        return EXIT_OK
    rep = full_report(wb, args.support)
    _write(out, emit(rep, "json"))
    return _verdict_exit(rep)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ttg", description="Finite support-datum workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="axioms and tensorial/faithful/realizing/comparative verdicts")
    c.add_argument("file")
    c.add_argument("--support", action="append", help="restrict to this support (repeatable)")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("extend", help="extended supports of an object")
    e.add_argument("file")
    e.add_argument("--object", required=True)
    e.add_argument("--support")
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.set_defaults(func=cmd_extend)

    g = sub.add_parser("gamma", help="support of the point idempotent Gamma_x 1")
    g.add_argument("file")
    g.add_argument("--support", required=True)
    g.add_argument("--point", required=True)
    g.set_defaults(func=cmd_gamma)

    u = sub.add_parser("universal", help="universal map eta, and rho when comparative")
    u.add_argument("file")
    u.add_argument("--support", required=True)
    u.set_defaults(func=cmd_universal)

    s = sub.add_parser("search", help="counterexample search over small instances")
    s.add_argument("--predicate", required=True, choices=sorted(explorer.PREDICATES))
    s.add_argument("--max-base", type=int, required=True)
    s.add_argument("--max-target", type=int)
    s.add_argument("--limit", type=int)
    s.add_argument("--dedup", choices=("labeled", "iso"), default="labeled")
    s.add_argument("--cap", type=int, help="override the enumeration cap")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("suite", help="exhaustive theorem verification")
    t.add_argument("--max-base", type=int, required=True)
    t.add_argument("--max-target", type=int)
    t.add_argument("--kind", default="default",
                   choices=("default", "all") + explorer.KINDS)
    t.add_argument("--entries", help="comma-separated subset of suite entries")
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--cap", type=int, help="override the enumeration cap")
    t.add_argument("--progress", action="store_true")
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.set_defaults(func=cmd_suite)

    r = sub.add_parser("report", help="full report as JSON, or the spaces as DOT")
    r.add_argument("file")
    r.add_argument("--support", action="append")
    r.add_argument("--format", choices=("json", "dot"), default="json")
    r.set_defaults(func=cmd_report)
    return p


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=err)
        return EXIT_PARSE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=err)
        return EXIT_CAP
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=err)
        return EXIT_FALSE
    except (SemanticError, ContractError, InputError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_SEMANTIC


def main(argv=None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


__all__ = ["run_command", "main", "build_parser"]

if __name__ == "__main__":
    main()
