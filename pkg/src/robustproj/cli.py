"""Command-line entry point: ``robustproj <subcommand> ...``.

Exit codes: 0 success, 2 BudgetExceeded, 3 parse/dimension errors,
4 BudgetTooLarge.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from . import io
from .ambiguity import certify_linear_robust, robustness_defect, robustness_witness
from .bench import BENCH_FIELDS, InstanceConfig, bench, gen_instance, read_grid, table1_grid, write_bench_csv
from .decoder import l0_decode
from .errors import BudgetExceeded, BudgetTooLarge, DimensionMismatch, ParseError
from .numerics import ToleranceConfig
from .projector import ProblemSpec, robust_projector
from .recovery import recovery_set

EXIT_OK = 0
EXIT_BUDGET_EXCEEDED = 2
EXIT_INPUT = 3
EXIT_BUDGET_TOO_LARGE = 4


def _add_tol_args(p):
    g = p.add_argument_group("tolerances")
    g.add_argument("--tol-rank-rel", type=float, default=None,
                   help="relative singular-value cutoff (default max(rows, cols) * eps)")
    g.add_argument("--tol-eig-zero", type=float, default=1e-10)
    g.add_argument("--tol-supp-abs", type=float, default=1e-9)
    g.add_argument("--tol-consist-rel", type=float, default=1e-9)


def _tol(args) -> ToleranceConfig:
    return ToleranceConfig(
        rank_rel=args.tol_rank_rel,
        eig_zero=args.tol_eig_zero,
        supp_abs=args.tol_supp_abs,
        consist_rel=args.tol_consist_rel,
    )


def _emit(obj, args):
    text = io.dump_json(obj, getattr(args, "json", None))
    if getattr(args, "json", None) is None:
        print(text)


def cmd_projector(args):
    spec = ProblemSpec(io.read_matrix(args.A), args.q)
    proj = robust_projector(spec, _tol(args), workers=args.workers)
    _emit(io.projector_to_dict(proj), args)


def cmd_decode(args):
    spec = ProblemSpec(io.read_matrix(args.A), args.q)
    result = l0_decode(spec, io.read_vector(args.y), _tol(args))
    _emit(io.decode_to_dict(result), args)


def cmd_recover(args):
    tol = _tol(args)
    spec = ProblemSpec(io.read_matrix(args.A), args.q)
    result = l0_decode(spec, io.read_vector(args.y), tol)
    proj = robust_projector(spec, tol, workers=args.workers)
    _emit(io.projector_to_dict(proj, recovery_set(result.x_hat, proj)), args)


def cmd_certify(args):
    tol = _tol(args)
    spec = ProblemSpec(io.read_matrix(args.A), args.q)
    M = io.read_matrix(args.M)
    if M.shape[1] != spec.n:
        raise DimensionMismatch(f"M has {M.shape[1]} columns, A has {spec.n}")
    proj = robust_projector(spec, tol)
    robust = certify_linear_robust(spec, M, proj, tol)
    witness = None if robust else robustness_witness(M, proj)
    _emit({
        "format": io.JSON_FORMAT_VERSION,
        "robust": robust,
        "defect": robustness_defect(M, proj),
        "witness": None if witness is None else witness.tolist(),
    }, args)


def cmd_bench(args):
    grid = table1_grid(args.seed) if args.grid is None else read_grid(args.grid, args.seed)

    def report(rec):
        print(f"m={rec.m:3d} n={rec.n:3d} q={rec.q:2d} subsets={rec.subsets:6d} "
              f"{rec.mean_ms:10.3f} +/- {rec.std_ms:.3f} ms", file=sys.stderr)

    records = bench(grid, runs=args.runs, workers=args.workers, progress=report)
    if args.csv is not None:
        write_bench_csv(records, args.csv)
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for rec in records:
            writer.writerow(asdict(rec))


def cmd_gen(args):
    cfg = InstanceConfig(args.m, args.n, args.q, seed=args.seed,
                         corruption_magnitude=args.magnitude)
    A, x_star, e, y = gen_instance(cfg)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    io.write_matrix(out / "A.txt", A)
    io.write_vector(out / "x_star.txt", x_star)
    io.write_vector(out / "e.txt", e)
    io.write_vector(out / "y.txt", y)
    print(f"wrote A.txt x_star.txt e.txt y.txt to {out}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robustproj",
        description="Robust orthogonal projector and l0 recovery under q-sparse corruption.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("projector", help="compute the robust orthogonal projector U")
    p.add_argument("-A", required=True, help="matrix file")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--json", help="write JSON here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    _add_tol_args(p)
    p.set_defaults(func=cmd_projector)

    p = sub.add_parser("decode", help="l0-decode y = A x + e")
    p.add_argument("-A", required=True)
    p.add_argument("-y", required=True, help="vector file (m x 1)")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--json")
    _add_tol_args(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("recover", help="decode and return x_hat + ker(U)")
    p.add_argument("-A", required=True)
    p.add_argument("-y", required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--json")
    p.add_argument("--workers", type=int, default=1)
    _add_tol_args(p)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("certify", help="check whether x -> M x is (A, q)-robust")
    p.add_argument("-A", required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-M", required=True)
    p.add_argument("--json")
    _add_tol_args(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bench", help="time the projector over a grid")
    p.add_argument("--grid", help="CSV with columns m,n,q[,seed]; default is the 15-point sweep")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="output CSV path (default stdout)")
    p.add_argument("--workers", type=int, default=1,
                   help="threads for the projector's chunked reduction")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--magnitude", type=float, default=10.0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET_EXCEEDED
    except BudgetTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET_TOO_LARGE
    except (ParseError, DimensionMismatch, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
