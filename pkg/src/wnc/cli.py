"""Command-line front end: classify rings and elements, sweep Z_n, run the
theorem suite, and dump tables.

Exit codes: 0 success / all checks pass, 1 a check failed or an --expect
assertion did not hold, 2 usage or build errors.  Output is deterministic;
the human table format prints a version banner unless --plain is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .construct import build_text
from .decomp import (
    DecompKind,
    find_decomp,
    kind_takes_subset,
    ring_verdict,
    verdict_to_json,
    zero_one_subset,
)
from .errors import RingError
from .structure import structure
from .table import tables_to_csv
from .theorems import (
    check_ids,
    default_corpus,
    parse_corpus,
    report_to_json,
    run_suite,
    suite_failed,
)

FORMATS = ("table", "json", "csv")


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _render_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return out.getvalue()


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_kinds(spec: str) -> list[DecompKind]:
    kinds = []
    for name in spec.split(","):
        name = name.strip()
        if name:
            kinds.append(DecompKind.from_name(name))
    if not kinds:
        raise ValueError("no decomposition kinds given")
    return kinds


def _verdict(ring, kind: DecompKind):
    # The S variants have no set syntax on the CLI; they use the distinguished
    # subset {0, 1}.
    s = zero_one_subset(ring) if kind_takes_subset(kind) else None
    return ring_verdict(ring, kind, s)


def _banner(args) -> str:
    return "" if args.plain else f"# wnc {__version__}\n"


def cmd_classify(args) -> int:
    ring = build_text(args.ring)
    kinds = _parse_kinds(args.kinds)
    verdicts = [(kind, _verdict(ring, kind)) for kind in kinds]
    if args.format == "json":
        _emit(json.dumps([verdict_to_json(ring, v) for _, v in verdicts], indent=2) + "\n",
              args.output)
    else:
        headers = ["kind", "holds", "witness"]
        rows = [
            [kind.value, _bool_text(v.holds), "" if v.witness is None else str(v.witness)]
            for kind, v in verdicts
        ]
        if args.format == "csv":
            _emit(_render_csv(headers, rows), args.output)
        else:
            _emit(_banner(args) + _render_table(headers, rows), args.output)
    if args.expect:
        failures = []
        got = {kind.value: v.holds for kind, v in verdicts}
        for clause in args.expect.split(","):
            name, _, want = clause.partition("=")
            name, want = name.strip(), want.strip().lower()
            if want not in ("true", "false"):
                raise ValueError(f"--expect wants true/false, got {want!r}")
            if name not in got:
                raise ValueError(f"--expect names unclassified kind {name!r}")
            if got[name] != (want == "true"):
                failures.append(f"{name}: expected {want}, got {_bool_text(got[name])}")
        if failures:
            for failure in failures:
                sys.stderr.write(f"expectation failed: {failure}\n")
            return 1
    return 0


def cmd_element(args) -> int:
    ring = build_text(args.ring)
    ring.check_element(args.element)
    kinds = _parse_kinds(args.kinds)
    results = []
    for kind in kinds:
        s = zero_one_subset(ring) if kind_takes_subset(kind) else None
        results.append((kind, find_decomp(ring, args.element, kind, s)))
    if args.format == "json":
        payload = []
        for kind, cert in results:
            item = {"ring": ring.label, "kind": kind.value, "x": args.element}
            if cert is None:
                item["cert"] = None
            else:
                item["cert"] = {
                    "e": cert.idempotent,
                    "companion": cert.companion,
                    "sign": cert.sign,
                    "commutes": cert.commutes,
                }
            payload.append(item)
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return 0
    headers = ["kind", "found", "idempotent", "companion", "sign", "commutes"]
    rows = []
    for kind, cert in results:
        if cert is None:
            rows.append([kind.value, "false", "", "", "", ""])
        else:
            rows.append(
                [kind.value, "true", str(cert.idempotent), str(cert.companion),
                 cert.sign, _bool_text(cert.commutes)]
            )
    if args.format == "csv":
        _emit(_render_csv(headers, rows), args.output)
    else:
        _emit(_banner(args) + _render_table(headers, rows), args.output)
    return 0


def _parse_range(spec: str) -> tuple[int, int]:
    lo, sep, hi = spec.partition("..")
    if not sep:
        raise ValueError(f"range must look like 2..100, got {spec!r}")
    start, end = int(lo), int(hi)
    if start < 1 or end < start:
        raise ValueError(f"empty or invalid range {spec!r}")
    return start, end


def cmd_sweep(args) -> int:
    start, end = _parse_range(args.zn)
    kinds = _parse_kinds(args.kinds)
    headers = ["n"] + [kind.value for kind in kinds]
    rows = []
    for n in range(start, end + 1):
        ring = build_text(f"Z({n})")
        rows.append([str(n)] + [_bool_text(_verdict(ring, kind).holds) for kind in kinds])
    if args.format == "json":
        payload = [
            {"n": int(row[0]), **{kind.value: cell == "true"
                                  for kind, cell in zip(kinds, row[1:])}}
            for row in rows
        ]
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
    elif args.format == "csv":
        _emit(_render_csv(headers, rows), args.output)
    else:
        _emit(_banner(args) + _render_table(headers, rows), args.output)
    return 0


def cmd_verify(args) -> int:
    if args.corpus == "default":
        corpus = default_corpus()
    else:
        with open(args.corpus, "r", encoding="utf-8") as fh:
            corpus = parse_corpus(fh.read())
    selected = None if args.checks == "all" else [c.strip() for c in args.checks.split(",")]
    cells = run_suite(corpus, selected)
    if args.format == "json":
        _emit(report_to_json(cells), args.output)
    else:
        headers = ["ring", "check_id", "outcome", "witness"]
        rows = [
            [cell["ring"], cell["check_id"], cell["outcome"], cell.get("witness", "")]
            for cell in cells
        ]
        if args.format == "csv":
            _emit(_render_csv(headers, rows), args.output)
        else:
            _emit(_banner(args) + _render_table(headers, rows), args.output)
    return 1 if suite_failed(cells) else 0


def cmd_dump(args) -> int:
    ring = build_text(args.ring)
    if args.what == "tables":
        _emit(tables_to_csv(ring), args.output)
        return 0
    cache = structure(ring)
    lines = [
        f"# ring,{ring.label},order,{ring.order}",
        f"# units,{len(cache.units)},idempotents,{len(cache.idempotents)},"
        f"nilpotents,{len(cache.nilpotency)},radical,{len(cache.radical)}",
    ]
    headers = ["index", "element", "unit", "inverse", "idempotent", "nilpotency", "radical"]
    rows = []
    for x in ring.elements():
        rows.append(
            [
                str(x),
                ring.name_of(x),
                _bool_text(x in cache.units),
                str(cache.inverse[x]) if x in cache.inverse else "",
                _bool_text(x in cache.idempotent_set),
                str(cache.nilpotency[x]) if x in cache.nilpotency else "",
                _bool_text(x in cache.radical),
            ]
        )
    _emit("\n".join(lines) + "\n" + _render_csv(headers, rows), args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wnc",
        description="Finite-ring cleanness toolkit: classify, sweep, verify, dump.",
        epilog=(
            "Ring grammar: Z(n) | prod(e,e,...) | M<k>(e) | T<k>(e) | eqdiag<k>(e) | "
            "idealize(e, self|Z(m)) | corner(e, index) | quot(e, [i,...]) | "
            "skew(e, id|swap(i,j), n).  Keywords are case-insensitive."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, output=True):
        p.add_argument("--format", choices=FORMATS, default="table")
        p.add_argument("--plain", action="store_true",
                       help="suppress the version banner in table output")
        if output:
            p.add_argument("--output", default="-", help="output path ('-' = stdout)")

    p = sub.add_parser("classify", help="decide ring-level cleanness kinds")
    p.add_argument("--ring", required=True, help="ring expression")
    p.add_argument("--kinds", required=True, help="comma-separated kind names")
    p.add_argument("--expect", default=None,
                   help="assert outcomes, e.g. weak-nil-clean=true,nil-clean=false")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("element", help="find decompositions of one element")
    p.add_argument("--ring", required=True)
    p.add_argument("--element", required=True, type=int)
    p.add_argument("--kinds", required=True)
    add_common(p)
    p.set_defaults(func=cmd_element)

    p = sub.add_parser("sweep", help="classify Z_n over a range")
    p.add_argument("--zn", required=True, help="range, e.g. 2..100")
    p.add_argument("--kinds", required=True)
    add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the theorem suite over a corpus")
    p.add_argument("--corpus", default="default", help="'default' or a corpus file path")
    p.add_argument("--checks", default="all",
                   help="'all' or comma-separated check ids: " + ",".join(check_ids()))
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="dump operation tables or the structure map")
    p.add_argument("--ring", required=True)
    p.add_argument("--what", choices=("tables", "structure"), default="structure")
    add_common(p)
    p.set_defaults(func=cmd_dump)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
