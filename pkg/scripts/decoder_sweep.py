"""Decode many seeded random instances and report the worst projected error.

    python scripts/decoder_sweep.py --count 500 --m 10 --n 4 --q 2
"""
import argparse

import numpy as np

from robustproj import ProblemSpec, l0_decode, robust_projector
from robustproj.bench import InstanceConfig, gen_instance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--m", type=int, default=10)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--magnitude", type=float, default=1e3)
    args = ap.parse_args()

    worst, full = 0.0, 0
    for seed in range(args.count):
        cfg = InstanceConfig(args.m, args.n, args.q, seed=seed,
                             corruption_magnitude=args.magnitude)
        A, x_star, _, y = gen_instance(cfg)
        spec = ProblemSpec(A, args.q)
        proj = robust_projector(spec)
        x_hat = l0_decode(spec, y).x_hat
        err = np.linalg.norm(proj.U @ (x_hat - x_star)) / (1 + np.linalg.norm(x_star))
        worst = max(worst, err)
        full += proj.rank == spec.n
    print(f"{args.count} instances, worst relative |U(x_hat - x*)| = {worst:.3e}, "
          f"full recovery possible in {full}")


if __name__ == "__main__":
    main()
