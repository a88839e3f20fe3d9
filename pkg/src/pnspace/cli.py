"""Command line front end: ``pnspace <command> --config PATH | --scenario NAME``.

Exit codes: 0 when the report verdict is pass, 2 when any check fails,
1 when the configuration cannot be used.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from .config import ConfigError, ScenarioConfig, load, load_scenario, scenario_names
from .metrize import construct_nu, run_full_verification
from .report import PASS, Tally, VerificationReport
from .suite import (gate_record, run_embedding_topology, run_embedding_verification,
                    run_metrization_topology, run_tnorm_checks)
from .tnorm import check_tnorm_axioms, hypothesis_records

EXIT_PASS, EXIT_CONFIG, EXIT_FAIL = 0, 1, 2
COMMANDS = ("check-tnorm", "metrize", "embed", "topology-audit")


def cmd_check_tnorm(cfg: ScenarioConfig) -> VerificationReport:
    """t-norm axioms and, optionally, the metrization hypotheses"""
    return run_tnorm_checks(cfg.require_tnorm(), cfg.grids.tnorm_grid, cfg.hypotheses,
                            cfg.variant, cfg.delta, _echo(cfg, "check-tnorm"))


def cmd_metrize(cfg: ScenarioConfig) -> VerificationReport:
    """build the probabilistic norm from a filter base and verify it"""
    T = cfg.require_tnorm()
    gate = gate_record(T, cfg.variant, cfg.delta)
    if gate.failed:
        report = VerificationReport("metrize", _echo(cfg, "metrize"))
        report.add(gate)
        report.extend(check_tnorm_axioms(T, cfg.grids.tnorm_grid))
        report.extend(hypothesis_records(T, cfg.delta, cfg.variant))
        return report
    result = construct_nu(cfg.base, T, cfg.variant, cfg.delta)
    return run_full_verification(result, cfg.samples(), cfg.grids, _echo(cfg, "metrize"))


def cmd_embed(cfg: ScenarioConfig) -> VerificationReport:
    """verify the step-function embedding of a normed space"""
    return run_embedding_verification(cfg.embedding(), cfg.samples(), cfg.grids,
                                      _echo(cfg, "embed"), topology=cfg.topology)


def cmd_topology_audit(cfg: ScenarioConfig) -> VerificationReport:
    """neighbourhood and uniformity checks only"""
    if cfg.space == "embed":
        return run_embedding_topology(cfg.embedding(), cfg.samples(), cfg.grids, _echo(cfg, "topology-audit"))
    return run_metrization_topology(cfg.base, cfg.require_tnorm(), cfg.variant, cfg.samples(), cfg.grids,
                                    cfg.delta, _echo(cfg, "topology-audit"))


HANDLERS: dict = {
    "check-tnorm": cmd_check_tnorm,
    "metrize": cmd_metrize,
    "embed": cmd_embed,
    "topology-audit": cmd_topology_audit,
}


def _echo(cfg: ScenarioConfig, command: str) -> dict:
    return dict(cfg.echo(), command=command)


def _crash_report(command: str, cfg: ScenarioConfig, err: Exception) -> VerificationReport:
    report = VerificationReport(command, _echo(cfg, command))
    t = Tally(f"error.{command}")
    t.bad({"error": type(err).__name__, "message": str(err)})
    report.add(t.record())
    return report


def run(command: str, cfg: ScenarioConfig) -> VerificationReport:
    """Run one command; domain errors become a failed ``error.*`` record."""
    handler: Callable = HANDLERS[command]
    try:
        return handler(cfg)
    except ConfigError:
        raise
    except (ValueError, ArithmeticError, KeyError) as err:
        return _crash_report(command, cfg, err)


def write_report(report: VerificationReport, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.to_json())
    (out / "report.txt").write_text(report.to_text())


class _Parser(argparse.ArgumentParser):
    # usage errors share the config-error exit code; 2 means "checks failed"
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pnspace", description="Exact checks for probabilistic normed spaces.")
    parser.add_argument("--list-scenarios", action="store_true", help="print the shipped scenario names")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HANDLERS[name].__doc__ or name)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--config", type=Path, metavar="PATH", help="scenario JSON file")
        src.add_argument("--scenario", metavar="NAME", help="shipped scenario name")
        p.add_argument("--out", type=Path, metavar="DIR", help="write report.json and report.txt here")
        p.add_argument("--seed", type=int, help="override the scenario seed")
        p.add_argument("--quiet", action="store_true", help="do not print the text report")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_scenarios:
        print("\n".join(scenario_names()))
        return EXIT_PASS
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load(args.config) if args.config else load_scenario(args.scenario)
        if args.seed is not None:
            cfg = cfg.with_seed(args.seed)
        report = run(args.command, cfg)
    except ConfigError as err:
        print(f"pnspace: config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    if args.out:
        write_report(report, args.out)
    if not args.quiet:
        sys.stdout.write(report.to_text())
    return EXIT_PASS if report.verdict == PASS else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
