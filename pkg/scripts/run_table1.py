"""Time the projector on the m in {8, 16}, n in {8, 16, 32}, q in {1, 3, 7} sweep.

    python scripts/run_table1.py --runs 10 --csv table1.csv
"""
import argparse

from robustproj.bench import bench, table1_grid, write_bench_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv")
    args = ap.parse_args()

    print(f"{'m':>3} {'n':>3} {'q':>2} {'subsets':>8}  time (ms)")
    records = bench(
        table1_grid(args.seed), runs=args.runs, workers=args.workers,
        progress=lambda r: print(f"{r.m:3d} {r.n:3d} {r.q:2d} {r.subsets:8d}  "
                                 f"{r.mean_ms:.3f} +/- {r.std_ms:.3f}"),
    )
    if args.csv:
        write_bench_csv(records, args.csv)


if __name__ == "__main__":
    main()
