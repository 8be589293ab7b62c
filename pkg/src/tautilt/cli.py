"""Command-line interface: ``tautilt basis|classify|check-theorem|export``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import corpus
from .algebra import DEFAULT_MAX_LENGTH, AlgebraError, build_basis, has_loop, parse_algebra_spec
from .classify import ClassificationReport, check_theorem
from .export import compat_dot, families_dot
from .modules import CapExceeded, default_cap

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _source_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help=f"one of: {', '.join(corpus.CORPUS)}")
    src.add_argument("--file", metavar="PATH", help="algebra description file")
    p.add_argument("--field", type=int, metavar="P", help="prime field characteristic (default 2)")
    p.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH, metavar="N",
                   help="path length cutoff when building the basis")


def _bound_args(p: argparse.ArgumentParser):
    p.add_argument("--max-dim", metavar="SPEC",
                   help="per-vertex bound 'a,b,c' or a single integer")
    p.add_argument("--cap", type=int, metavar="N", help="enumeration cap (env TAUTILT_CAP)")
    p.add_argument("--no-saturation", action="store_true",
                   help="skip the bound+1 saturation check")


def _load(args):
    """(name, algebra, recommended bound or None, families flag)."""
    if args.builtin:
        entry = corpus.get(args.builtin)
        A = entry.algebra(args.field, args.max_length)
        return entry.name, A, entry.dim_bound, entry.families
    text = Path(args.file).read_text()
    try:
        spec = parse_algebra_spec(text, args.field)
    except AlgebraError as exc:
        raise AlgebraError(f"{args.file}: {exc}") from None
    return Path(args.file).stem, build_basis(spec, args.max_length), None, True


def _parse_bound(spec: str | None, n: int, default):
    if spec is None:
        return default if default is not None else (2,) * n
    try:
        parts = [int(x) for x in spec.split(",")]
    except ValueError:
        raise UsageError(f"bad --max-dim {spec!r}") from None
    if len(parts) == 1:
        return tuple(parts) * n
    if len(parts) != n:
        raise UsageError(f"--max-dim has {len(parts)} entries but the algebra has {n} vertices")
    return tuple(parts)


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=".tautilt-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, target)


def _run_report(args) -> ClassificationReport:
    name, A, default_bound, families = _load(args)
    bound = _parse_bound(args.max_dim, A.n, default_bound)
    cap = args.cap if args.cap is not None else default_cap()
    return check_theorem(A, bound, name=name, cap=cap, families=families,
                         saturation=not args.no_saturation, max_length=args.max_length)


def report_json(report: ClassificationReport) -> str:
    return json.dumps(report.to_json(), indent=2) + "\n"


def report_text(report: ClassificationReport) -> str:
    A, T = report.algebra, report.table
    yn = {True: "yes", False: "no"}
    lines = [
        f"algebra {report.name} over F_{A.p}, dim = {A.dim}, "
        f"bound ({','.join(map(str, report.bound))})",
        f"hereditary: {yn[report.hereditary]}; loop: {yn[report.has_loop]}",
        "pd of simples: " + ", ".join(f"S{v}={d}" for v, d in report.simple_pd.items()),
        f"indecomposables ({len(T)}): " + ", ".join(T.labels),
    ]
    if report.families_computed:
        lines.append("the class of tilting modules is {"
                     + ", ".join(report.family_labels(report.tilting)) + "}")
        lines.append("the class of tau-tilting modules is {"
                     + ", ".join(report.family_labels(report.tau_tilting)) + "}")
        lines.append(f"support tau-tilting modules ({len(report.support_tau_tilting)}): "
                     + ", ".join(T.label(e.summands) for e in report.support_tau_tilting))
    else:
        lines.append("families: NOT COMPUTED (per-module facts only)")
    verdict = f"verdict: {report.verdict}"
    if report.witness is not None:
        verdict += f" (witness {T.label(report.witness)} is tau-tilting but not tilting)"
    lines.append(verdict)
    lines.extend(f"warning: {w}" for w in report.warnings)
    return "\n".join(lines) + "\n"


def cmd_basis(args) -> int:
    name, A, _, _ = _load(args)
    if args.json:
        obj = {"name": name, "field": A.p, "dimension": A.dim, "has_loop": has_loop(A.quiver),
               "basis": [{"name": b.name, "source": b.source, "target": b.target}
                         for b in A.basis]}
        if args.table:
            obj["table"] = A.table.tolist()
        _write(json.dumps(obj, indent=2) + "\n", None)
        return EXIT_OK
    out = [f"dim = {A.dim}, loop: {'yes' if has_loop(A.quiver) else 'no'}"]
    for k, b in enumerate(A.basis):
        out.append(f"  [{k}] {b.name}: {b.source} -> {b.target}")
    if args.table:
        out.append("products (nonzero):")
        for a in range(A.dim):
            for b in range(A.dim):
                vec = A.table[a, b]
                if vec.any():
                    terms = " + ".join((f"{c}*" if c != 1 else "") + A.basis[k].name
                                       for k, c in enumerate(vec) if c)
                    out.append(f"  {A.basis[a].name} . {A.basis[b].name} = {terms}")
    _write("\n".join(out) + "\n", None)
    return EXIT_OK


def cmd_classify(args) -> int:
    report = _run_report(args)
    text = report_text(report) if args.text else report_json(report)
    _write(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_check_theorem(args) -> int:
    names = list(corpus.CORPUS) if args.all else args.names
    if not names:
        raise UsageError("give --all or at least one builtin name")
    rows = []
    for name in names:
        entry = corpus.get(name)
        A = entry.algebra(args.field, args.max_length)
        bound = _parse_bound(args.max_dim, A.n, entry.dim_bound)
        cap = args.cap if args.cap is not None else default_cap()
        r = check_theorem(A, bound, name=name, cap=cap, families=entry.families,
                          saturation=False)
        rows.append(r)
    ok = all(r.passed for r in rows)
    if args.json:
        data = [{"name": r.name, "hereditary": r.hereditary, "loop": r.has_loop,
                 "families_equal": r.families_equal, "verdict": r.verdict} for r in rows]
        _write(json.dumps(data, indent=2) + "\n", args.out)
    else:
        yn = {True: "yes", False: "no", None: "n/a"}
        width = max(len(r.name) for r in rows)
        out = [f"{'algebra':<{width}}  hereditary  loop  equal  verdict"]
        for r in rows:
            out.append(f"{r.name:<{width}}  {yn[r.hereditary]:<10}  {yn[r.has_loop]:<4}  "
                       f"{yn[r.families_equal]:<5}  {r.verdict}")
        _write("\n".join(out) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    report = _run_report(args)
    text = compat_dot(report) if args.dot == "compat" else families_dot(report)
    _write(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tautilt",
                                     description="tau-tilting theory of bound quiver algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="print a basis of kQ/I")
    _source_args(p)
    p.add_argument("--table", action="store_true", help="also print the multiplication table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("classify", help="classify tilting and tau-tilting modules")
    _source_args(p)
    _bound_args(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--text", action="store_true", help="plain-text report")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-theorem", help="check the hereditary characterisation")
    p.add_argument("names", nargs="*", metavar="NAME")
    p.add_argument("--all", action="store_true", help="every builtin algebra")
    p.add_argument("--field", type=int, metavar="P")
    p.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH, metavar="N")
    p.add_argument("--max-dim", metavar="SPEC")
    p.add_argument("--cap", type=int, metavar="N")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_check_theorem)

    p = sub.add_parser("export", help="DOT export of the compatibility graph or families")
    _source_args(p)
    _bound_args(p)
    p.add_argument("--dot", choices=["compat", "families"], default="compat")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        dv = f" (dimension vector {exc.dim_vector})" if exc.dim_vector else ""
        print(f"tautilt: enumeration cap exceeded{dv}: {exc}", file=sys.stderr)
    except (AlgebraError, UsageError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"tautilt: error: {msg}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
