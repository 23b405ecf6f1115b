"""Print worst-case branching factors for binary (alpha) and pivot (beta) branching."""

import argparse

from kmdb import branching_factor


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=6)
    args = ap.parse_args(argv)
    print(f"{'k':>3} {'alpha':>8} {'beta':>8}")
    for k in range(args.max_k + 1):
        print(f"{k:>3} {branching_factor(k, 'alpha'):8.4f} {branching_factor(k, 'beta'):8.4f}")


if __name__ == "__main__":
    main()
