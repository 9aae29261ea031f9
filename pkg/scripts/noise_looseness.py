"""Ratio bound/exact for additive Gaussian and Laplace noise and a variance-carrying Gaussian.

    python scripts/noise_looseness.py
"""

import numpy as np

from fisherbound import analyze, exp_variance_gaussian, gaussian_location, laplace_location

CASES = [
    ("gaussian noise", gaussian_location(1.0)),
    ("laplace noise", laplace_location(1.0)),
    ("exp variance", exp_variance_gaussian()),
]


def main():
    print(f"{'model':>16} {'theta':>7} {'bound':>10} {'exact':>10} {'ratio':>8}")
    for name, model in CASES:
        for theta in np.linspace(-1.0, 1.0, 5):
            r = analyze(model, theta, exact="quadrature")
            print(f"{name:>16} {theta:7.2f} {r.bound.scalar():10.6f} {r.exact.scalar():10.6f} {r.ratio:8.4f}")


if __name__ == "__main__":
    main()
