"""Command-line surface: expand named series, verify identities, discover
linear relations.

Exit status: 0 on success or all-PASS, 1 when a verification finds a
mismatch, 2 on usage errors and unknown names or ids, 3 when an order or
window is insufficient.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .characters import UnknownNameError, named_series
from .series import PuiseuxSeries, to_text
from .verify import (
    IdentityRecord,
    InsufficientRowsError,
    Status,
    UnknownIdentityError,
    VerificationReport,
    check_record,
    discover,
    load_registry,
    registry,
)

__all__ = ["Command", "UsageError", "parse_args", "execute", "main"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INSUFFICIENT = 3

_ORDER_RE = re.compile(r"-?\d+(?:/\d+)?$")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Command:
    verb: str
    targets: tuple[str, ...]
    order: Fraction
    machine: bool
    registry_path: Optional[str] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _order_arg(text: str) -> Fraction:
    if not _ORDER_RE.fullmatch(text):
        raise argparse.ArgumentTypeError(
            f"order must be an integer or p/q fraction, got {text!r}"
        )
    return Fraction(text)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qserieslab", description=__doc__)
    commands = parser.add_subparsers(dest="verb", required=True)

    def common(sub: argparse.ArgumentParser, with_registry: bool) -> None:
        sub.add_argument("--order", type=_order_arg, default=Fraction(50),
                         help="exclusive truncation order as p/q (default 50)")
        sub.add_argument("--json", action="store_true", help="machine-readable output")
        if with_registry:
            sub.add_argument("--registry", metavar="PATH", default=None,
                             help="replace the built-in identity registry")

    expand = commands.add_parser("expand", help="print a named series")
    expand.add_argument("name")
    common(expand, with_registry=False)

    verify = commands.add_parser("verify", help="check one identity")
    verify.add_argument("id")
    common(verify, with_registry=True)

    verify_all = commands.add_parser("verify-all", help="check every identity")
    common(verify_all, with_registry=True)

    disc = commands.add_parser("discover", help="find rational linear relations")
    disc.add_argument("names", nargs="+")
    common(disc, with_registry=False)
    return parser


def parse_args(argv: Sequence[str]) -> Command:
    ns = _build_parser().parse_args(list(argv))
    if ns.verb == "expand":
        targets: tuple[str, ...] = (ns.name,)
    elif ns.verb == "verify":
        targets = (ns.id,)
    elif ns.verb == "discover":
        if len(ns.names) < 2:
            raise UsageError("discover needs at least two series names")
        targets = tuple(ns.names)
    else:
        targets = ()
    return Command(ns.verb, targets, ns.order, ns.json, getattr(ns, "registry", None))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _report_json(report: VerificationReport) -> str:
    mismatch = None
    if report.mismatch is not None:
        mismatch = {
            "exponent": _frac_str(report.mismatch.exponent),
            "lhs": _frac_str(report.mismatch.lhs),
            "rhs": _frac_str(report.mismatch.rhs),
            "z": report.mismatch.z_exponent,
        }
    payload = {
        "id": report.id,
        "status": report.status.value,
        "order": _frac_str(report.order_checked),
        "mismatch": mismatch,
        "elapsed_ms": report.elapsed_ms,
    }
    return json.dumps(payload, separators=(",", ":"))


def _report_text(report: VerificationReport) -> str:
    line = f"{report.id} {report.status.value} order={_frac_str(report.order_checked)}"
    if report.mismatch is not None:
        m = report.mismatch
        where = f"q^{_frac_str(m.exponent)}"
        if m.z_exponent is not None:
            where = f"z^{m.z_exponent} {where}"
        line += f" mismatch at {where}: lhs={_frac_str(m.lhs)} rhs={_frac_str(m.rhs)}"
    return line


def _status_exit(statuses: Sequence[Status]) -> int:
    if any(s is Status.FAIL for s in statuses):
        return EXIT_FAIL
    if any(s is Status.INSUFFICIENT_ORDER for s in statuses):
        return EXIT_INSUFFICIENT
    return EXIT_OK


def _load(cmd: Command) -> Sequence[IdentityRecord]:
    if cmd.registry_path is None:
        return registry()
    return load_registry(cmd.registry_path)


def execute(cmd: Command) -> int:
    if cmd.verb == "expand":
        return _run_expand(cmd)
    if cmd.verb == "verify":
        return _run_verify(cmd)
    if cmd.verb == "verify-all":
        return _run_verify_all(cmd)
    return _run_discover(cmd)


def _run_expand(cmd: Command) -> int:
    try:
        series = named_series(cmd.targets[0], cmd.order)
    except UnknownNameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cmd.machine:
        payload = {
            "name": cmd.targets[0],
            "D": series.grading,
            "O": _frac_str(series.order),
            "terms": [[_frac_str(e), _frac_str(c)] for e, c in series.terms],
        }
        print(json.dumps(payload, separators=(",", ":")))
    else:
        sys.stdout.write(to_text(series))
    return EXIT_OK


def _find(records: Sequence[IdentityRecord], identity_id: str) -> IdentityRecord:
    for record in records:
        if record.id == identity_id:
            return record
    raise UnknownIdentityError(identity_id)


def _run_verify(cmd: Command) -> int:
    try:
        record = _find(_load(cmd), cmd.targets[0])
    except UnknownIdentityError:
        print(f"error: unknown identity id {cmd.targets[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    report = check_record(record, cmd.order)
    print(_report_json(report) if cmd.machine else _report_text(report))
    return _status_exit([report.status])


def _run_verify_all(cmd: Command) -> int:
    records = _load(cmd)
    reports = [check_record(record, cmd.order) for record in records]
    for report in reports:
        print(_report_json(report) if cmd.machine else _report_text(report))
    return _status_exit([r.status for r in reports])


def _run_discover(cmd: Command) -> int:
    series: list[PuiseuxSeries] = []
    try:
        for name in cmd.targets:
            series.append(named_series(name, cmd.order))
    except UnknownNameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        relations = discover(series, cmd.order)
    except InsufficientRowsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    if cmd.machine:
        payload = {
            "names": list(cmd.targets),
            "order": _frac_str(cmd.order),
            "relations": [[_frac_str(c) for c in rel.coefficients] for rel in relations],
        }
        print(json.dumps(payload, separators=(",", ":")))
    else:
        if not relations:
            print("no relations found")
        for rel in relations:
            print("relation: " + " ".join(_frac_str(c) for c in rel.coefficients))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        cmd = parse_args(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return execute(cmd)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
