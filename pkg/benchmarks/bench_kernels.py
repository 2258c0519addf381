"""Compare the compiled and pure kernel backends on the hot paths.

Usage: python3 benchmarks/bench_kernels.py [--trials N] [--repeats K]

Each kernel runs K times per backend; the table reports the best wall
time and the speedup of the compiled extension over the numpy fallback.
Both backends consume identical draw streams, so the simulate rows also
double-check that the win counts agree.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from gladiator import _kernels_py
from gladiator.core import PROPORTIONAL, contest_matrix

try:
    from gladiator import _kernels_c
except ImportError:
    _kernels_c = None


def best_time(fn, repeats: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeats):
        tic = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - tic)
    return best, result


def rows(trials: int, repeats: int):
    rng = np.random.default_rng(7)
    pm_small = contest_matrix(PROPORTIONAL, rng.uniform(0.2, 4.0, 5),
                              rng.uniform(0.2, 4.0, 4))
    pm_large = contest_matrix(PROPORTIONAL, rng.uniform(0.2, 4.0, 200),
                              rng.uniform(0.2, 4.0, 200))
    odds = rng.uniform(0.2, 4.0, 50)

    cases = [
        ("duel_win_prob 5x4", lambda k: k.duel_win_prob(pm_small)),
        ("duel_win_prob 200x200", lambda k: k.duel_win_prob(pm_large)),
        ("geom_loss_prob 50v400", lambda k: k.geom_loss_prob(odds, 400)),
        ("betainc_int (300,400)", lambda k: k.betainc_int(0.43, 300, 400)),
    ]
    for name, policy in (("fixed", 0), ("bench", 1), ("random", 2)):
        cases.append((
            f"simulate {name} 5x4 x{trials}",
            lambda k, p=policy: k.simulate_win_count(pm_small, p, trials, 42),
        ))

    for name, call in cases:
        t_py, r_py = best_time(lambda: call(_kernels_py), repeats)
        if _kernels_c is None:
            yield name, t_py, None, None, ""
            continue
        t_c, r_c = best_time(lambda: call(_kernels_c), repeats)
        note = ""
        if name.startswith("simulate") and r_c != r_py:
            note = f"MISMATCH {r_c} != {r_py}"
        yield name, t_py, t_c, t_py / t_c, note


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100_000,
                    help="simulation trials per run (default 100000)")
    ap.add_argument("--repeats", type=int, default=5,
                    help="timing repeats, best is kept (default 5)")
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled backend not importable; timing the pure backend only",
              file=sys.stderr)

    header = f"{'kernel':<28} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    bad = False
    for name, t_py, t_c, speedup, note in rows(args.trials, args.repeats):
        pure = f"{t_py * 1e3:9.3f}ms"
        if t_c is None:
            print(f"{name:<28} {pure:>10} {'-':>10} {'-':>8}")
            continue
        comp = f"{t_c * 1e3:9.3f}ms"
        print(f"{name:<28} {pure:>10} {comp:>10} {speedup:7.1f}x {note}")
        bad = bad or bool(note)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
