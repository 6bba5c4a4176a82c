"""Command-line front end: simulate, reconstruct, roundtrip, render, generate.

Exit codes: 0 success, 2 parse error, 3 invariant violation, 4 insufficient
observations, 5 ground truth not recovered.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import GeometryError, InsufficientObservations
from .generate import CASES, generate
from .geom import DEFAULT_TOL
from .kinematics import ObservationSet, simulate_observations
from .reconstruct import ACCEPT_RESIDUAL, CandidateSet, matches_any, reconstruct
from .scenario import (
    ParseError,
    Scenario,
    ScenarioInvariantError,
    load_scenario,
    parse_candidates,
    serialize,
    write_text,
)
from .svg import render_svg

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_INSUFFICIENT = 4
EXIT_CONTAINMENT = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        write_text(output, text)


def _load(path: str) -> Scenario:
    try:
        return load_scenario(path)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc
    except ScenarioInvariantError as exc:
        raise CliError(EXIT_INVARIANT, f"{path}: {exc}") from exc


def _simulate(scenario: Scenario, tol: float) -> ObservationSet:
    if scenario.ground_truth is None:
        raise CliError(EXIT_INVARIANT, "scenario has no ground_truth to simulate")
    try:
        return simulate_observations(scenario.ground_truth, scenario.radars, scenario.policy, tol=tol)
    except ValueError as exc:
        raise CliError(EXIT_INVARIANT, str(exc)) from exc


def _observations(scenario: Scenario, tol: float) -> ObservationSet:
    """Recorded observations if the file has them, else simulated ones."""
    if scenario.observations is not None:
        return scenario.observations
    return _simulate(scenario, tol)


def _case_of(scenario: Scenario, case: str | None) -> str:
    case = case or scenario.metadata.get("case")
    if case not in CASES:
        raise CliError(EXIT_PARSE, f"no usable case (got {case!r}); pass --case")
    return case


def _solve(scenario: Scenario, case: str, obs: ObservationSet, tol: float) -> CandidateSet:
    try:
        return reconstruct(case, scenario.radars, obs, tol=tol)
    except InsufficientObservations as exc:
        raise CliError(EXIT_INSUFFICIENT, str(exc)) from exc
    except GeometryError as exc:
        raise CliError(EXIT_INVARIANT, f"{type(exc).__name__}: {exc}") from exc


@dataclass(frozen=True)
class RoundtripReport:
    path: str
    case: str
    candidates: int
    best_residual: float | None
    matched: bool
    reason: str | None

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.matched else EXIT_CONTAINMENT

    def line(self) -> str:
        best = "-" if self.best_residual is None else f"{self.best_residual:.3e}"
        status = "PASS" if self.matched else "FAIL"
        extra = f" reason={self.reason}" if self.reason else ""
        return f"{status} {self.path} case={self.case} candidates={self.candidates} best_residual={best}{extra}"


def run_roundtrip(path: str, case: str | None = None, tol: float = DEFAULT_TOL) -> RoundtripReport:
    scenario = _load(path)
    if scenario.ground_truth is None:
        raise CliError(EXIT_INVARIANT, f"{path}: roundtrip needs ground_truth")
    case = _case_of(scenario, case)
    cands = _solve(scenario, case, _observations(scenario, tol), tol)
    residuals = [c.residual for c in cands]
    return RoundtripReport(
        path,
        case,
        len(cands),
        min(residuals) if residuals else None,
        matches_any(scenario.ground_truth, cands, ACCEPT_RESIDUAL),
        cands.reason,
    )


# -- subcommands ----------------------------------------------------------------


def cmd_simulate(args) -> int:
    obs = _simulate(_load(args.scenario), args.tolerance)
    _emit(serialize(obs), args.output)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    scenario = _load(args.scenario)
    case = _case_of(scenario, args.case)
    cands = _solve(scenario, case, _observations(scenario, args.tolerance), args.tolerance)
    _emit(serialize(cands), args.output)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    if args.all is not None:
        paths = sorted(str(p) for p in Path(args.all).glob("*.json"))
        if not paths:
            raise CliError(EXIT_PARSE, f"no scenario files in {args.all}")
    elif args.scenario is not None:
        paths = [args.scenario]
    else:
        raise CliError(EXIT_PARSE, "roundtrip needs a scenario path or --all DIR")
    worst = EXIT_OK
    for path in paths:
        try:
            report = run_roundtrip(path, args.case, args.tolerance)
        except CliError as exc:
            print(f"FAIL {path} exit={exc.code} {exc}")
            worst = max(worst, exc.code)
            continue
        print(report.line())
        worst = max(worst, report.exit_code)
    return worst


def cmd_render(args) -> int:
    scenario = _load(args.scenario)
    cands = None
    if args.candidates is not None:
        try:
            cands = parse_candidates(Path(args.candidates).read_text(encoding="utf-8"))
        except (OSError, ParseError) as exc:
            raise CliError(EXIT_PARSE, f"{args.candidates}: {exc}") from exc
        except ScenarioInvariantError as exc:
            raise CliError(EXIT_INVARIANT, f"{args.candidates}: {exc}") from exc
    obs = None
    if args.aux:
        obs = scenario.observations
        if obs is None and scenario.ground_truth is not None:
            obs = _simulate(scenario, args.tolerance)
    _emit(render_svg(scenario, cands, observations=obs, aux=args.aux), args.output)
    return EXIT_OK


def cmd_generate(args) -> int:
    _emit(serialize(generate(args.case, args.seed)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trajectory-oracle",
        description="Reconstruct straight and one-turn routes from radar observation fragments.",
    )
    parser.add_argument(
        "--tolerance", type=float, default=DEFAULT_TOL,
        help=f"relative geometric tolerance (default {DEFAULT_TOL})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write the observations a scenario's ground truth leaks")
    p.add_argument("scenario")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="write candidate routes for one case")
    p.add_argument("scenario")
    p.add_argument("--case", choices=CASES, help="default: the scenario's metadata.case")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("roundtrip", help="simulate, reconstruct and check the ground truth is recovered")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--case", choices=CASES)
    p.add_argument("--all", metavar="DIR", help="check every *.json scenario in DIR")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("render", help="draw a scenario and optional candidates as SVG")
    p.add_argument("scenario")
    p.add_argument("candidates", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--aux", action="store_true", help="include construction circles")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("generate", help="write a random scenario for one case")
    p.add_argument("--case", choices=CASES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not args.tolerance > 0:
        print("error: --tolerance must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
