"""Write seeded hard-limiter sample CSVs and a matching estimate config.

    python scripts/make_hardlimiter_samples.py --out runs/hl --thetas=-0.1,0,0.1
    fisherbound estimate --config runs/hl/estimate.conf
"""

import argparse
from pathlib import Path

from fisherbound import HardLimiterModel, sample
from fisherbound.cli import write_samples_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True)
    parser.add_argument("--thetas", default="-0.1,0,0.1")
    parser.add_argument("--alpha", type=float, default=0.0)
    parser.add_argument("--n", type=int, default=10**6)
    parser.add_argument("--seed", type=int, default=20260101)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    model = HardLimiterModel(args.alpha)
    sections = []
    for i, t in enumerate(float(v) for v in args.thetas.split(",")):
        path = out / f"theta_{i:02d}.csv"
        # one seed for every theta gives common random numbers
        write_samples_csv(str(path), sample(model, t, args.seed, args.n))
        sections.append(f"[samples]\ntheta = {t!r}\nfile = {path.resolve()}\nseed = {args.seed}\n")
    (out / "estimate.conf").write_text("".join(sections))
    print(f"wrote {len(sections)} files and {out / 'estimate.conf'}")


if __name__ == "__main__":
    main()
