"""Command-line entry point: ``hocohom <command> [options]``.

Exit status: 0 when every check passes, 1 when one fails, 2 for usage or
input errors, 3 when a resource bound is hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import WorkbenchError
from .fixtures import load_fixture
from .report import Report, dumps, emit, table_csv
from .workbench import RUNNERS

log = logging.getLogger("hocohom")

FIXTURE_KIND = {"fuchsian": "fuchsian", "finite": "finite", "es": "modular"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hocohom", description="Verification runs for higher-order group cohomology.")
    p.add_argument("command", choices=sorted(RUNNERS))
    p.add_argument("--fixture", action="append", help="fixture name or path (repeatable)")
    p.add_argument("--qmax", type=int, help="largest order q")
    p.add_argument("--g", type=int, help="genus")
    p.add_argument("--s", type=int, help="number of cusps")
    p.add_argument("--n", type=int, help="weight parameter n (even)")
    p.add_argument("--order", type=int, help="order q of the cusp form in the numeric suite (1 or 2)")
    p.add_argument("--tol", type=float, help="quadrature tolerance")
    p.add_argument("--min-im", type=float, dest="min_im", help="lowest admissible height for q-series evaluation")
    p.add_argument("--out", help="output directory for the JSON/CSV report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--config", help="JSON file with defaults for any of the options above")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _config(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise WorkbenchError(f"cannot read config {args.config}: {e}") from None
        if not isinstance(cfg, dict):
            raise WorkbenchError("config file must hold a JSON object")
    for key in ("qmax", "g", "s", "n", "order", "tol", "min_im", "threads"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    if args.fixture:
        cfg["fixture"] = list(args.fixture)
    cfg.setdefault("threads", 1)
    return cfg


def _summary(report: Report) -> str:
    lines = []
    for name, rows in sorted(report.tables.items()):
        if 0 < len(rows) <= 40:
            lines.append(f"[{name}]")
            lines.extend(table_csv(rows).splitlines())
    for r in report.records:
        if r.verdict != "PASS" or len(report.records) <= 60:
            lines.append(f"{r.verdict:4}  {r.name}: computed {dumps(r.computed)}")
    lines.append(f"{report.command}: {len(report.records)} checks, {len(report.failures)} failed -> "
                 f"{'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)


def run(argv: list[str] | None = None) -> tuple[Report | None, int]:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = _config(args)
        runner = RUNNERS[args.command]
        kw = {}
        if args.command in FIXTURE_KIND and cfg.get("fixture"):
            fixtures = [load_fixture(f) for f in cfg["fixture"]]
            want = FIXTURE_KIND[args.command]
            for fx in fixtures:
                if fx.kind != want:
                    raise WorkbenchError(f"fixture {fx.name} has kind {fx.kind}; {args.command} needs {want}")
            kw["fixtures"] = fixtures
        report = runner(cfg, **kw)
        if args.out:
            for path in emit(report, args.out, args.format):
                log.info("wrote %s", path)
    except WorkbenchError as e:
        print(f"error: {e}", file=sys.stderr)
        return None, e.exit_code
    except OSError as e:
        print(f"error: cannot write report: {e}", file=sys.stderr)
        return None, 2
    print(_summary(report))
    return report, 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
