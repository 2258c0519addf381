"""Command-line front end.

Subcommands: value (solve a game), winprob (one win probability by any
method), figures (CSV parameter sweeps), verify (run the inequality
check suites), simulate (Monte Carlo battles, optionally logged).

Contract: results as JSON on stdout (one object, or one object per line
for battle logs), diagnostics on stderr, floats printed with 17
significant digits so reruns are byte-comparable. Exit codes: 0 ok,
1 internal error, 2 usage error, 3 verification failure.

GLADIATOR_THREADS caps verify workers (unset = 1, 0 = all cores); worker
count never changes any output byte, only wall time.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .core import PROPORTIONAL, AllocationError, ContestRule, GameSpec, allocation
from .equilibrium import solve_equilibrium
from .inequalities import (
    check_bet_trichotomy,
    check_betabin_family,
    check_engine_agreement,
    check_mean_median,
    check_minimizer_structure,
    check_perturbation_endpoint_min,
    check_perturbation_monotonicity,
    check_value_monotonicity,
    perturbation_regime,
)
from .simulator import EngagementPolicy, estimate_winprob, iter_battles
from .winprob import (
    winprob_beta_closed_form,
    winprob_duel_dp,
    winprob_exp_sum_mc,
    winprob_geometric_dp,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    """Bad flags or flag combinations; exits 2."""


# ---------------------------------------------------------------------------
# Deterministic JSON: every float at 17 significant digits.
# ---------------------------------------------------------------------------

def dumps(obj) -> str:
    out = io.StringIO()
    _dump(obj, out)
    return out.getvalue()


def _dump(obj, out) -> None:
    if obj is None:
        out.write("null")
    elif obj is True:
        out.write("true")
    elif obj is False:
        out.write("false")
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif isinstance(obj, int):
        out.write(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite float in output: {obj}")
        out.write(format(obj, ".17g"))
    elif isinstance(obj, dict):
        out.write("{")
        for pos, (k, v) in enumerate(obj.items()):
            if pos:
                out.write(", ")
            out.write(json.dumps(str(k)))
            out.write(": ")
            _dump(v, out)
        out.write("}")
    elif isinstance(obj, (list, tuple)):
        out.write("[")
        for pos, v in enumerate(obj):
            if pos:
                out.write(", ")
            _dump(v, out)
        out.write("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _fmt(x) -> str:
    """CSV cell: ints plain, floats at 17 significant digits."""
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# Flag parsing helpers.
# ---------------------------------------------------------------------------

def _parse_team(text: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} wants a comma-separated number list, got {text!r}")
    try:
        return allocation(values).strengths
    except AllocationError as exc:
        raise UsageError(f"{flag}: {exc}")


def _rule_from(args) -> ContestRule:
    if args.rule is not None and args.gamma is not None:
        raise UsageError("--gamma and --rule are mutually exclusive")
    if args.rule == "zero":
        return ContestRule.zero_limit()
    if args.rule == "inf":
        return ContestRule.infinity_limit()
    if args.gamma is None:
        return PROPORTIONAL
    try:
        return ContestRule.power(args.gamma)
    except ValueError as exc:
        raise UsageError(str(exc))


def _require_proportional(rule: ContestRule, method: str) -> None:
    if rule != PROPORTIONAL:
        raise UsageError(
            f"method {method!r} is exact only under the proportional rule "
            "(gamma 1); use --method dp for other rules"
        )


def _require_trials(trials: int) -> None:
    if trials < 1:
        raise UsageError(f"--trials must be >= 1, got {trials}")


def _as_count(x: float, what: str) -> int:
    i = int(round(x))
    if abs(x - i) > 1e-9 or i < 1:
        raise UsageError(f"{what} must be a positive integer, got {x}")
    return i


# ---------------------------------------------------------------------------
# value
# ---------------------------------------------------------------------------

def cmd_value(args) -> int:
    try:
        spec = GameSpec(args.m, args.n, args.ca, args.cb)
    except ValueError as exc:
        raise UsageError(str(exc))
    sol = solve_equilibrium(spec)
    print(dumps({
        "m": spec.m,
        "n": spec.n,
        "c_a": spec.c_a,
        "c_b": spec.c_b,
        "r_star": sol.r_star,
        "regime": sol.regime.value,
        "value": sol.value,
        "weak_team": sol.weak_team,
        "a_star": list(sol.a_star.strengths),
        "b_star": list(sol.b_star.strengths),
        "maximizers": list(sol.maximizers),
    }))
    return EXIT_OK


# ---------------------------------------------------------------------------
# winprob
# ---------------------------------------------------------------------------

def cmd_winprob(args) -> int:
    a = _parse_team(args.a, "--a")
    b = _parse_team(args.b, "--b")
    rule = _rule_from(args)
    if args.method == "dp":
        wp = winprob_duel_dp(a, b, rule)
    elif args.method == "geo":
        _require_proportional(rule, "geo")
        if any(x != b[0] for x in b):
            raise UsageError("--method geo needs uniform --b strengths")
        wp = winprob_geometric_dp(a, len(b), b[0])
    elif args.method == "beta":
        _require_proportional(rule, "beta")
        if any(x != a[0] for x in a) or any(x != b[0] for x in b):
            raise UsageError("--method beta needs equal splits on both sides")
        wp = winprob_beta_closed_form(len(a), len(b), math.fsum(a), math.fsum(b))
    else:
        _require_proportional(rule, "mc")
        _require_trials(args.trials)
        wp = winprob_exp_sum_mc(a, b, args.trials, args.seed)
    payload = {"value": wp.value, "method": wp.method.value}
    if wp.stderr is not None:
        payload["stderr"] = wp.stderr
        payload["trials"] = wp.trials
    print(dumps(payload))
    return EXIT_OK


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FigureSpec:
    """One sweep family: vary sweep_name along columns, one curve per
    series value; every row records r_star (the weaker team's support
    size) and the game value for A."""

    figure_id: int
    title: str
    sweep_name: str
    sweep_default: tuple[float, ...]
    series_names: tuple[str, ...]
    series_default: tuple
    build: Callable[..., GameSpec]


def _frange(start: float, stop: float, step: float) -> tuple[float, ...]:
    count = int(round((stop - start) / step)) + 1
    return tuple(start + k * step for k in range(count))


FIGURES: dict[int, FigureSpec] = {
    1: FigureSpec(
        1, "weak-team support size vs c_B, equal headcounts",
        "c_B", _frange(100, 200, 1), ("m",), (5, 10, 20, 40),
        lambda s, x: GameSpec(_as_count(s, "m"), _as_count(s, "n"), 100.0, float(x)),
    ),
    2: FigureSpec(
        2, "weak-team support size vs c_B, n = 20",
        "c_B", _frange(100, 200, 1), ("m",), (5, 10, 20, 40),
        lambda s, x: GameSpec(_as_count(s, "m"), 20, 100.0, float(x)),
    ),
    3: FigureSpec(
        3, "weak-team support size vs c_B, m = 40",
        "c_B", _frange(100, 200, 1), ("n",), (5, 10, 20, 40),
        lambda s, x: GameSpec(40, _as_count(s, "n"), 100.0, float(x)),
    ),
    4: FigureSpec(
        4, "game value vs c_B, m = 40",
        "c_B", _frange(100, 200, 1), ("n",), (5, 10, 20, 40),
        lambda s, x: GameSpec(40, _as_count(s, "n"), 100.0, float(x)),
    ),
    5: FigureSpec(
        5, "game value vs n at equal budgets, m = 20",
        "n", _frange(1, 40, 1), ("c",), (100,),
        lambda s, x: GameSpec(20, _as_count(x, "n"), float(s), float(s)),
    ),
    6: FigureSpec(
        6, "game value vs n for budget pairs, m = 20",
        "n", _frange(1, 40, 1), ("c_A", "c_B"),
        ((100, 100), (100, 110), (100, 130), (100, 160)),
        lambda s, x: GameSpec(20, _as_count(x, "n"), float(s[0]), float(s[1])),
    ),
    7: FigureSpec(
        7, "game value vs n, c_A = 10, m = 20",
        "n", _frange(1, 40, 1), ("c_B",), (15, 20, 30, 40),
        lambda s, x: GameSpec(20, _as_count(x, "n"), 10.0, float(s)),
    ),
    8: FigureSpec(
        8, "game value vs c_B, c_A = 10, m = 20",
        "c_B", _frange(20, 60, 1), ("n",), (2, 5, 10, 20),
        lambda s, x: GameSpec(20, _as_count(s, "n"), 10.0, float(x)),
    ),
}


def _parse_series(text: str, fig: FigureSpec) -> tuple:
    items = []
    for part in text.split(","):
        if ":" in part:
            items.append(tuple(float(p) for p in part.split(":")))
        else:
            items.append(float(part))
    pairs = len(fig.series_names) > 1
    for item in items:
        if pairs != isinstance(item, tuple):
            want = "a:b pairs" if pairs else "scalars"
            raise UsageError(f"figure {fig.figure_id} series values are {want}")
        if pairs and len(item) != len(fig.series_names):
            raise UsageError(f"series item {item} should have {len(fig.series_names)} parts")
    return tuple(items)


def _parse_sweep(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--sweep wants start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"--sweep wants numbers, got {text!r}")
    if not (step > 0 and stop >= start):
        raise UsageError("--sweep needs step > 0 and stop >= start")
    return _frange(start, stop, step)


def figure_rows(fig: FigureSpec, series_values=None, sweep_values=None):
    """Header row then data rows for one figure's CSV."""
    series_values = fig.series_default if series_values is None else series_values
    sweep_values = fig.sweep_default if sweep_values is None else sweep_values
    yield [fig.sweep_name, *fig.series_names, "r_star", "value"]
    for s in series_values:
        cells = list(s) if isinstance(s, tuple) else [s]
        for x in sweep_values:
            try:
                spec = fig.build(s, x)
            except ValueError as exc:
                raise UsageError(f"figure {fig.figure_id}: {exc}")
            sol = solve_equilibrium(spec)
            yield [_fmt(x), *map(_fmt, cells), sol.r_star, _fmt(sol.value)]


def cmd_figures(args) -> int:
    fig = FIGURES.get(args.figure)
    if fig is None:
        raise UsageError(f"unknown figure id {args.figure} (valid: 1-8)")
    series = _parse_series(args.series, fig) if args.series else None
    sweep = _parse_sweep(args.sweep) if args.sweep else None
    rows = figure_rows(fig, series, sweep)
    if args.out == "-":
        _write_csv(sys.stdout, rows)
    else:
        with open(args.out, "w", newline="") as fh:
            count = _write_csv(fh, rows)
        print(f"figure {fig.figure_id}: {count} rows -> {args.out}", file=sys.stderr)
    return EXIT_OK


def _write_csv(fh, rows) -> int:
    writer = csv.writer(fh, lineterminator="\n")
    count = -1  # header excluded
    for row in rows:
        writer.writerow(row)
        count += 1
    return count


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _suite_minimizer(mmax, nmax):
    reports = []
    for b in (0.5, 1.0, 1.5, 2.0):
        for m in range(1, (mmax or 6) + 1):
            for n in range(1, (nmax or 8) + 1):
                reports.append(check_minimizer_structure(m, n, b, grid_k=12))
    return reports


def _suite_monotonicity(mmax, nmax):
    return [check_value_monotonicity(mmax or 30, nmax or 30)]


def _suite_betabin(mmax, nmax):
    return [check_betabin_family(mmax or 50, nmax or 50)]


def _suite_bet(mmax, nmax):
    return [
        check_bet_trichotomy(n_max=nmax or 15, m_max=mmax or 45),
        check_mean_median(),
    ]


def _suite_perturbation(mmax, nmax):
    del mmax, nmax  # grid is regime-driven, not size-driven
    reports = []
    for k in (1, 2, 3):
        for m in (k + 1, 2 * (k + 1)):
            for n in (2, 3, 4, 6):
                for b in (0.5, 1.0, 2.0):
                    if perturbation_regime(k, m, n, b) != "middle":
                        reports.append(check_perturbation_monotonicity(k, m, n, b))
                    reports.append(check_perturbation_endpoint_min(k, m, n, b))
    return reports


def _suite_crosscheck(mmax, nmax):
    return [check_engine_agreement(r_max=mmax or 10, n_max=nmax or 10)]


SUITES = {
    "minimizer": _suite_minimizer,
    "monotonicity": _suite_monotonicity,
    "betabin": _suite_betabin,
    "bet": _suite_bet,
    "perturbation": _suite_perturbation,
    "crosscheck": _suite_crosscheck,
}


def _run_suite(name: str, mmax, nmax) -> dict:
    reports = SUITES[name](mmax, nmax)
    return {
        "suite": name,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }


def _worker_count() -> int:
    raw = os.environ.get("GLADIATOR_THREADS", "").strip()
    if not raw:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"GLADIATOR_THREADS={raw!r} is not an integer")
    if k < 0:
        raise UsageError("GLADIATOR_THREADS must be >= 0")
    return k if k else (os.cpu_count() or 1)


def cmd_verify(args) -> int:
    if args.suite == "all":
        names = list(SUITES)
        workers = min(_worker_count(), len(names))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_suite, nm, args.mmax, args.nmax)
                           for nm in names]
                results = [f.result() for f in futures]
        else:
            results = [_run_suite(nm, args.mmax, args.nmax) for nm in names]
        payload = {
            "suite": "all",
            "passed": all(r["passed"] for r in results),
            "suites": results,
        }
    else:
        payload = _run_suite(args.suite, args.mmax, args.nmax)
    for res in payload.get("suites", [payload]):
        checks = res["reports"]
        bad = sum(1 for c in checks if not c["passed"])
        print(f"{res['suite']}: {len(checks)} checks, {bad} failing", file=sys.stderr)
    print(dumps(payload))
    return EXIT_OK if payload["passed"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    a = _parse_team(args.a, "--a")
    b = _parse_team(args.b, "--b")
    rule = _rule_from(args)
    policy = EngagementPolicy(args.policy)
    _require_trials(args.trials)
    if args.log is None:
        wp = estimate_winprob(a, b, rule, policy, args.trials, args.seed)
        wins = round(wp.value * args.trials)
    else:
        sink = sys.stdout if args.log == "-" else open(args.log, "w")
        try:
            wins = 0
            for log in iter_battles(a, b, rule, policy, args.trials, args.seed):
                wins += log.winner == "A"
                sink.write(dumps(log.to_dict()))
                sink.write("\n")
        finally:
            if sink is not sys.stdout:
                sink.close()
                print(f"{args.trials} battle logs -> {args.log}", file=sys.stderr)
    phat = wins / args.trials
    print(dumps({
        "value": phat,
        "stderr": (phat * (1.0 - phat) / args.trials) ** 0.5,
        "trials": args.trials,
        "wins": wins,
        "method": "monte_carlo",
        "policy": policy.value,
        "seed": args.seed,
    }))
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gladiator",
        description="Exact solver and verification suite for team duel games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", help="solve a game: equilibrium and value")
    p.add_argument("--m", type=int, required=True, help="team A size")
    p.add_argument("--n", type=int, required=True, help="team B size")
    p.add_argument("--ca", type=float, required=True, help="team A budget")
    p.add_argument("--cb", type=float, required=True, help="team B budget")
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("winprob", help="P(team A wins) for fixed allocations")
    p.add_argument("--a", required=True, help="comma list of A strengths")
    p.add_argument("--b", required=True, help="comma list of B strengths")
    p.add_argument("--gamma", type=float, default=None, help="contest exponent (default 1)")
    p.add_argument("--rule", choices=("zero", "inf"), default=None,
                   help="limit rule instead of --gamma")
    p.add_argument("--method", choices=("dp", "geo", "beta", "mc"), default="dp")
    p.add_argument("--trials", type=int, default=100_000, help="mc only")
    p.add_argument("--seed", type=int, default=0, help="mc only")
    p.set_defaults(func=cmd_winprob)

    p = sub.add_parser("figures", help="write one figure's sweep data as CSV")
    p.add_argument("--figure", type=int, required=True, help="figure id 1-8")
    p.add_argument("--out", default="-", help="output path (default: stdout)")
    p.add_argument("--series", default=None,
                   help="override series values, e.g. 5,10,20 or 100:110,100:130")
    p.add_argument("--sweep", default=None, help="override sweep as start:stop:step")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("verify", help="run inequality check suites")
    p.add_argument("--suite", choices=("all", *SUITES), default="all")
    p.add_argument("--mmax", type=int, default=None, help="override grid size in m")
    p.add_argument("--nmax", type=int, default=None, help="override grid size in n")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo battles")
    p.add_argument("--a", required=True, help="comma list of A strengths")
    p.add_argument("--b", required=True, help="comma list of B strengths")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--rule", choices=("zero", "inf"), default=None)
    p.add_argument("--policy", default="fixed",
                   choices=tuple(pol.value for pol in EngagementPolicy))
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--log", nargs="?", const="-", default=None,
                   help="emit battle logs as JSON lines (to PATH, or stdout)")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # CLI boundary: report, don't traceback
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
