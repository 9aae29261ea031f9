"""Black-box bound error vs Monte Carlo sample size, with and without common random numbers.

    python scripts/mc_convergence.py --theta 0.3
"""

import argparse
import math

import numpy as np

from fisherbound import HardLimiterModel, estimate_from_samples, hardlimiter_exact_closed_form, sample


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--theta", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    model = HardLimiterModel(0.0)
    exact = hardlimiter_exact_closed_form(args.theta, 0.0)
    print(f"{'n':>9} {'h':>7} {'CRN err':>9} {'CRN se':>9} {'indep err':>10}")
    for n in (10**4, 10**5, 10**6):
        h = n ** -0.2 * (1 + abs(args.theta))
        thetas = args.theta + np.array([-h, 0.0, h])
        crn = [sample(model, t, args.seed, n) for t in thetas]
        indep = [sample(model, t, args.seed + i, n) for i, t in enumerate(thetas)]
        a = estimate_from_samples(thetas, crn, [args.seed] * 3)[1]
        b = estimate_from_samples(thetas, indep)[1]
        se = a.diagnostics["mc_stderr"]["bound"][0, 0]
        print(f"{n:9d} {h:7.4f} {a.bound.scalar() - exact:9.5f} {se:9.5f} {b.bound.scalar() - exact:10.5f}")
    print(f"exact {exact:.6f}, 2/pi = {2 / math.pi:.6f}")


if __name__ == "__main__":
    main()
