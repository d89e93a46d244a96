"""Command-line front end: welfare sweeps, equilibrium lookups, verification.

Subcommands
    sweep         closed-form welfare of every regime over a cost grid (CSV/JSON)
    equilibrium   strategy/equilibrium report for one regime at a state
    best-response cutoff best response, optionally cross-checked by grid search
    verify        run the oracle-vs-closed-form suite; exit 2 on any failure

Exit codes: 0 success, 1 usage error, 2 verification failure.  All output
is deterministic for a given argument list (fixed seeds, 12-significant-
digit formatting, LF line endings) so runs can be diffed byte for byte.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from . import bayesian, cooperative, full_info, oracle
from .payoffs import State

__all__ = [
    "RunConfig",
    "SWEEP_COLUMNS",
    "cmd_best_response",
    "cmd_equilibrium",
    "cmd_sweep",
    "cmd_verify",
    "main",
    "sweep_rows",
    "verification_checks",
]

SWEEP_COLUMNS = (
    "c",
    "case1",
    "case2_ne",
    "case2_opt",
    "case3_max",
    "case3_min",
    "reg_case2",
    "reg_case3",
)

# Hidden self-test hook: shifts every verification target so the negative
# control in the test-suite can prove `verify` actually fails on bad values.
_TARGET_OFFSET_ENV = "SERVERGAME_VERIFY_TARGET_OFFSET"


def _fmt(x: float) -> str:
    """12 significant digits, shortest form, '.' decimal separator."""
    return format(float(x), ".12g")


@dataclass(frozen=True)
class RunConfig:
    """Grid/sampling/output settings shared by sweep and verify."""

    c_start: float = 0.0
    c_stop: float = 1.0
    c_step: float = 0.01
    samples: int = 1_000_000
    seed: int = 42
    output_format: str = "csv"
    out: str | None = None

    def cost_grid(self) -> list[float]:
        if self.c_step <= 0:
            raise ValueError(f"c-step must be positive, got {self.c_step}")
        if self.c_start > self.c_stop:
            raise ValueError(
                f"c-start {self.c_start} exceeds c-stop {self.c_stop}"
            )
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        count = math.floor((self.c_stop - self.c_start) / self.c_step + 1e-9)
        return [round(self.c_start + k * self.c_step, 10) for k in range(count + 1)]


def _snap(value: float) -> float:
    # welfare columns live in [0, 4/3]; formulas that are 0 at c = 1 can
    # evaluate to -1e-16, which would leak out of the column contract
    if -1e-12 <= value < 0.0:
        return 0.0
    if 4.0 / 3.0 < value <= 4.0 / 3.0 + 1e-12:
        return 4.0 / 3.0
    return value


def sweep_rows(config: RunConfig) -> list[dict]:
    """One row of closed-form welfare values per cost in the grid."""
    rows = []
    for c in config.cost_grid():
        ne = bayesian.nash_threshold(c)
        opt = bayesian.optimal_thresholds(c)
        row = {
            "c": c,
            "case1": _snap(cooperative.welfare_case1(c)),
            "case2_ne": _snap(bayesian.welfare_thresholds(ne.t1, ne.t2, c).total),
            "case2_opt": _snap(bayesian.welfare_thresholds(opt.t1, opt.t2, c).total),
            "case3_max": _snap(full_info.welfare_case3_max(c)),
            "case3_min": _snap(full_info.welfare_case3_min(c)),
        }
        # the subsidy moves the cutoff equilibrium to the optimal pair; the
        # side payment restores the cooperative optimum (transfers are
        # welfare neutral, so the regulated columns reuse those values)
        row["reg_case2"] = row["case2_opt"]
        row["reg_case3"] = row["case1"]
        _check_sweep_row(row)
        rows.append(row)
    return rows


def _check_sweep_row(row: dict) -> None:
    slack = 1e-9
    for column in SWEEP_COLUMNS[1:]:
        if not 0.0 <= row[column] <= 4.0 / 3.0:
            raise AssertionError(f"{column}={row[column]} outside [0, 4/3] at c={row['c']}")
    if not (
        row["case1"] >= row["case3_max"] - slack
        and row["case3_max"] >= row["case3_min"] - slack
        and row["case2_opt"] >= row["case2_ne"] - slack
    ):
        raise AssertionError(f"welfare ordering violated at c={row['c']}")
    if row["reg_case3"] != row["case1"]:
        raise AssertionError(f"reg_case3 must equal case1 exactly at c={row['c']}")


def _render_sweep(rows: list[dict], output_format: str) -> str:
    if output_format == "csv":
        lines = [",".join(SWEEP_COLUMNS)]
        for row in rows:
            lines.append(",".join(_fmt(row[col]) for col in SWEEP_COLUMNS))
        return "\n".join(lines) + "\n"
    if output_format == "json":
        payload = [
            {col: float(_fmt(row[col])) for col in SWEEP_COLUMNS} for row in rows
        ]
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown format {output_format!r}")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def cmd_sweep(config: RunConfig) -> int:
    try:
        text = _render_sweep(sweep_rows(config), config.output_format)
        _emit(text, config.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


# --------------------------------------------------------------------------
# equilibrium reports


def _profile_words(profile) -> tuple[str, str]:
    def word(sigma: float) -> str:
        if sigma == 1.0:
            return "active"
        if sigma == 0.0:
            return "inactive"
        return f"active with probability {_fmt(sigma)}"

    return word(profile.sigma1), word(profile.sigma2)


def _equilibrium_payload(case: str, s: State | None, c: float, regulated: bool) -> dict:
    if case == "I":
        profile = cooperative.optimal_profile(s, c)
        return {
            "case": case,
            "state": {"p1": s.p1, "p2": s.p2},
            "c": c,
            "profile": {"server1": _profile_words(profile)[0], "server2": _profile_words(profile)[1]},
            "welfare": cooperative.pointwise_welfare(s, profile, c),
        }
    if case == "II":
        pair = bayesian.nash_threshold(c, regulated=regulated)
        welfare = bayesian.welfare_thresholds(pair.t1, pair.t2, c).total
        return {
            "case": case,
            "regulated": regulated,
            "c": c,
            "thresholds": {"t1": pair.t1, "t2": pair.t2},
            "expected_welfare": welfare,
        }
    # case III
    if regulated:
        profile = full_info.regulated_equilibrium(s, c)
        return {
            "case": case,
            "regulated": True,
            "state": {"p1": s.p1, "p2": s.p2},
            "c": c,
            "profile": {"server1": _profile_words(profile)[0], "server2": _profile_words(profile)[1]},
            "welfare": cooperative.pointwise_welfare(s, profile, c, variant="case3_reg"),
        }
    result = full_info.classify_state(s, c)
    payload = {
        "case": case,
        "regulated": False,
        "state": {"p1": s.p1, "p2": s.p2},
        "c": c,
        "kind": result.kind.value,
        "pure_equilibria": [
            [a1.value, a2.value] for a1, a2 in result.pure_equilibria
        ],
    }
    if result.mixed is not None:
        payload["mixed"] = {"sigma1": result.mixed[0], "sigma2": result.mixed[1]}
    payload["welfare"] = {
        "best_equilibrium": cooperative.pointwise_welfare(
            s, full_info.select_equilibrium(s, c, "max_welfare"), c
        ),
        "worst_equilibrium": cooperative.pointwise_welfare(
            s, full_info.select_equilibrium(s, c, "min_welfare"), c
        ),
    }
    return payload


def _render_report(payload: dict, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(payload, indent=2, default=float) + "\n"
    lines = []
    for key, value in payload.items():
        if isinstance(value, dict):
            inner = ", ".join(
                f"{k}={_fmt(v) if isinstance(v, float) else v}" for k, v in value.items()
            )
            lines.append(f"{key}: {inner}")
        elif isinstance(value, list):
            lines.append(f"{key}: " + "; ".join("(" + ", ".join(item) + ")" for item in value))
        elif isinstance(value, float):
            lines.append(f"{key}: {_fmt(value)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def cmd_equilibrium(args) -> int:
    s = None
    if args.case in ("I", "III"):
        if args.p1 is None or args.p2 is None:
            print(
                f"error: case {args.case} needs --p1 and --p2", file=sys.stderr
            )
            return 1
        s = State(args.p1, args.p2)
    payload = _equilibrium_payload(args.case, s, args.c, args.regulated)
    _emit(_render_report(payload, args.format), args.out)
    return 0


def cmd_best_response(args) -> int:
    value = bayesian.best_response_threshold(args.t_opp, args.c, regulated=args.regulated)
    payload = {
        "t_opp": args.t_opp,
        "c": args.c,
        "regulated": args.regulated,
        "best_response": value,
    }
    if args.check:
        payload["grid_oracle"] = oracle.grid_best_response(
            args.t_opp, args.c, regulated=args.regulated, step=args.step
        )
        payload["agreement"] = abs(payload["grid_oracle"] - value) <= args.step
    _emit(_render_report(payload, args.format), args.out)
    return 0


# --------------------------------------------------------------------------
# verification suite


def verification_checks(samples: int, seed: int, target_offset: float = 0.0) -> list[dict]:
    """Every oracle-vs-closed-form check, as rows of name/target/estimate.

    Monte Carlo rows pass within three standard errors; deterministic
    quadrature and grid rows carry fixed tolerances.  ``target_offset``
    shifts the closed-form targets and exists only so a negative control
    can prove failures are detected.
    """
    rows = []

    def mc_row(name, target, strategy, c, seed_offset):
        est = oracle.mc_welfare(strategy, c, n=samples, seed=seed + seed_offset)
        tol = 3.0 * est.stderr
        target = target + target_offset
        rows.append(
            {
                "check": name,
                "target": target,
                "estimate": est.mean,
                "stderr": est.stderr,
                "tol": tol,
                "passed": abs(est.mean - target) <= tol,
            }
        )

    def exact_row(name, target, estimate, tol):
        target = target + target_offset
        rows.append(
            {
                "check": name,
                "target": target,
                "estimate": estimate,
                "stderr": 0.0,
                "tol": tol,
                "passed": abs(estimate - target) <= tol,
            }
        )

    offset = 0
    for c in (0.1, 0.25, 0.5, 0.75, 0.9):
        offset += 1
        mc_row(
            f"case1 welfare mc c={c:g}",
            cooperative.welfare_case1(c),
            lambda p1, p2, cc: cooperative.optimal_activity(p1, p2, cc),
            c,
            offset,
        )
    for c in (0.25, 0.5, 0.8):
        ne = bayesian.nash_threshold(c)
        opt = bayesian.optimal_thresholds(c)
        offset += 1
        mc_row(
            f"case2 equilibrium welfare mc c={c:g}",
            bayesian.welfare_thresholds(ne.t1, ne.t2, c).total,
            ne,
            c,
            offset,
        )
        offset += 1
        mc_row(
            f"case2 optimal-cutoff welfare mc c={c:g}",
            bayesian.welfare_thresholds(opt.t1, opt.t2, c).total,
            opt,
            c,
            offset,
        )
        offset += 1
        mc_row(
            f"case3 max welfare mc c={c:g}",
            full_info.welfare_case3_max(c),
            lambda p1, p2, cc: full_info.equilibrium_activity(p1, p2, cc, "max_welfare"),
            c,
            offset,
        )
        offset += 1
        mc_row(
            f"case3 min welfare mc c={c:g}",
            full_info.welfare_case3_min(c),
            lambda p1, p2, cc: full_info.equilibrium_activity(p1, p2, cc, "min_welfare"),
            c,
            offset,
        )
        offset += 1
        mc_row(
            f"case3 regulated welfare mc c={c:g}",
            cooperative.welfare_case1(c),
            lambda p1, p2, cc: full_info.regulated_activity(p1, p2, cc),
            c,
            offset,
        )

    for t1, t2, c in ((0.3, 0.7, 0.2), (0.1, 0.55, 0.6), (0.25, 0.8, 0.45)):
        share = oracle.threshold_welfare_by_quadrature(t1, t2, c).server1
        exact_row(
            f"cutoff welfare quadrature t=({t1:g},{t2:g}) c={c:g}",
            bayesian.welfare_thresholds(t1, t2, c).server1,
            share,
            1e-10,
        )

    for t_opp, c in ((0.0, 0.32), (0.8, 0.25), (0.4, 0.5), (1.0, 0.4)):
        for regulated in (False, True):
            label = "regulated" if regulated else "unregulated"
            exact_row(
                f"best response grid {label} t_opp={t_opp:g} c={c:g}",
                bayesian.best_response_threshold(t_opp, c, regulated=regulated),
                oracle.grid_best_response(t_opp, c, regulated=regulated, step=1e-3),
                1e-3,
            )
    return rows


def cmd_verify(config: RunConfig) -> int:
    try:
        target_offset = float(os.environ.get(_TARGET_OFFSET_ENV, "0") or "0")
    except ValueError:
        target_offset = 0.0
    rows = verification_checks(config.samples, config.seed, target_offset)
    width = max(len(row["check"]) for row in rows)
    lines = [
        f"{'check':<{width}}  {'target':>15}  {'estimate':>15}  {'stderr':>12}  status"
    ]
    for row in rows:
        status = "pass" if row["passed"] else "FAIL"
        lines.append(
            f"{row['check']:<{width}}  {_fmt(row['target']):>15}  "
            f"{_fmt(row['estimate']):>15}  {_fmt(row['stderr']):>12}  {status}"
        )
    failures = sum(not row["passed"] for row in rows)
    lines.append(
        f"{len(rows)} checks, {failures} failed "
        f"(samples={config.samples}, seed={config.seed})"
    )
    _emit("\n".join(lines) + "\n", config.out)
    return 2 if failures else 0


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; argparse's default of 2 is reserved for
    # verification failures
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="servergame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="welfare of every regime over a cost grid")
    sweep.add_argument("--c-start", type=float, default=0.0)
    sweep.add_argument("--c-stop", type=float, default=1.0)
    sweep.add_argument("--c-step", type=float, default=0.01)
    sweep.add_argument("--c", type=float, default=None, help="single cost (overrides the grid)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--out", default=None)

    eq = sub.add_parser("equilibrium", help="equilibrium report for one regime")
    eq.add_argument("--case", choices=("I", "II", "III"), required=True)
    eq.add_argument("--p1", type=float, default=None)
    eq.add_argument("--p2", type=float, default=None)
    eq.add_argument("--c", type=float, required=True)
    eq.add_argument("--regulated", action="store_true")
    eq.add_argument("--format", choices=("text", "json"), default="text")
    eq.add_argument("--out", default=None)

    br = sub.add_parser("best-response", help="cutoff best response to an opponent cutoff")
    br.add_argument("--c", type=float, required=True)
    br.add_argument("--t-opp", type=float, required=True)
    br.add_argument("--regulated", action="store_true")
    br.add_argument("--check", action="store_true", help="also run the grid-search oracle")
    br.add_argument("--step", type=float, default=1e-3)
    br.add_argument("--format", choices=("text", "json"), default="text")
    br.add_argument("--out", default=None)

    verify = sub.add_parser("verify", help="run the oracle-vs-closed-form checks")
    verify.add_argument("--samples", type=int, default=1_000_000)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--out", default=None)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "sweep":
            start = args.c if args.c is not None else args.c_start
            stop = args.c if args.c is not None else args.c_stop
            config = RunConfig(
                c_start=start,
                c_stop=stop,
                c_step=args.c_step,
                output_format=args.format,
                out=args.out,
            )
            return cmd_sweep(config)
        if args.command == "equilibrium":
            return cmd_equilibrium(args)
        if args.command == "best-response":
            return cmd_best_response(args)
        if args.command == "verify":
            config = RunConfig(samples=args.samples, seed=args.seed, out=args.out)
            return cmd_verify(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
