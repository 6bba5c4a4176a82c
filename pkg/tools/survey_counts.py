"""Histogram of candidate-set sizes over generated scenarios.

    python tools/survey_counts.py CASE TRIALS

The maxima it reports back the count bounds asserted in the test suite.
"""

import argparse
import collections
import time

from trajectory_oracle.generate import CASES, generate
from trajectory_oracle.kinematics import simulate_observations
from trajectory_oracle.reconstruct import reconstruct


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("case", choices=CASES)
    parser.add_argument("trials", type=int)
    args = parser.parse_args()
    hist: collections.Counter[int] = collections.Counter()
    start = time.perf_counter()
    for seed in range(args.trials):
        sc = generate(args.case, seed)
        obs = simulate_observations(sc.ground_truth, sc.radars, sc.policy)
        hist[len(reconstruct(args.case, sc.radars, obs))] += 1
    print(f"case {args.case}: {args.trials} trials, sizes {dict(sorted(hist.items()))}, "
          f"{time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
