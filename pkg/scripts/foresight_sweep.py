"""Mean payoff of limited-forecast players against a random opponent, across budgets.

    python scripts/foresight_sweep.py --games 500 --budgets 1 2 4 6 8 16 32 inf
"""

import argparse
import math

from lfdominoes.harness import ExperimentConfig, run_tournament


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-pip", type=int, default=3)
    ap.add_argument("--tiles", type=int, default=4)
    ap.add_argument("--games", type=int, default=500)
    ap.add_argument("--seed", type=int, default=1000)
    ap.add_argument("--opponent", default="random")
    ap.add_argument("--budgets", nargs="+", default=["1", "2", "4", "6", "8", "16", "32", "inf"])
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    print(f"{'agent':>14} {'win rate':>9} {'95% CI':>17} {'mean payoff':>12} {'s.e.':>6}")
    for c in args.budgets:
        cfg = ExperimentConfig(args.max_pip, args.tiles, args.games, args.seed, "free:1",
                               f"lf:c={c}", args.opponent, True, args.jobs)
        a = run_tournament(cfg).agents[0]
        se = math.sqrt(a.payoff_variance / a.games)
        lo, hi = a.win_rate_ci
        print(f"{a.agent:>14} {a.win_rate:9.3f} [{lo:.3f}, {hi:.3f}] {a.mean_payoff:12.3f} {se:6.3f}")


if __name__ == "__main__":
    main()
