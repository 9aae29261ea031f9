"""Moment bound vs exact Fisher information of the 1-bit quantizer over a sweep.

    python scripts/hardlimiter_tightness.py --alpha 0.5 --points 61
"""

import argparse

import numpy as np

from fisherbound import HardLimiterModel, analyze, hardlimiter_exact_closed_form


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alpha", type=float, default=0.0)
    parser.add_argument("--span", type=float, default=3.0)
    parser.add_argument("--points", type=int, default=61)
    args = parser.parse_args()

    model = HardLimiterModel(args.alpha)
    print(f"{'theta-alpha':>12} {'bound':>14} {'closed form':>14} {'rel err':>10}")
    worst = 0.0
    for d in np.linspace(-args.span, args.span, args.points):
        r = analyze(model, args.alpha + d, moments="enumeration")
        exact = hardlimiter_exact_closed_form(args.alpha + d, args.alpha)
        rel = abs(r.bound.scalar() - exact) / exact
        worst = max(worst, rel)
        print(f"{d:12.3f} {r.bound.scalar():14.10f} {exact:14.10f} {rel:10.2e}")
    print(f"max relative error {worst:.2e}")


if __name__ == "__main__":
    main()
