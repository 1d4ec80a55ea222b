"""Exact l0 decoding by combinatorial search over dropped rows."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded
from .numerics import DEFAULT_TOL, ToleranceConfig, as_vector, min_norm_solve, support
from .projector import ProblemSpec


@dataclass(frozen=True)
class DecodeResult:
    x_hat: np.ndarray = field(repr=False)
    e_hat: np.ndarray = field(repr=False)
    support: tuple[int, ...]
    support_size: int
    dropped_rows: tuple[int, ...]


def _dropped_sets(m, k, order):
    sets = itertools.combinations(range(m), k)
    if order == "lex":
        return sets
    if order == "revlex":
        return reversed(list(sets))
    raise ValueError(f"unknown order {order!r}")


def l0_decode(spec: ProblemSpec, y, tol: ToleranceConfig = DEFAULT_TOL,
              order: str = "lex") -> DecodeResult:
    """Find ``x_hat`` minimizing ``||y - A x||_0``.

    Tries k = 0, 1, ..., q dropped rows. For each k the dropped sets are
    visited in lexicographic order (``order="revlex"`` reverses it, which
    only changes tie-breaking). The first subsystem ``A_K x = y_K`` that is
    consistent wins and its minimum-norm solution is returned.

    Consistency is judged against ``consist_rel * (1 + ||y||)``, with y the
    full measurement vector so that large corruptions do not loosen the test
    on the kept rows.

    Raises BudgetExceeded if no subsystem with at most q dropped rows is
    consistent.
    """
    A, m = spec.A, spec.m
    y = as_vector(y, m, "y")
    threshold = tol.consist_rel * (1.0 + float(np.linalg.norm(y)))
    for k in range(spec.q + 1):
        for dropped in _dropped_sets(m, k, order):
            keep = np.setdiff1d(np.arange(m), dropped)
            x, res = min_norm_solve(A[keep], y[keep], tol)
            if res <= threshold:
                e_hat = y - A @ x
                supp = support(e_hat, tol)
                return DecodeResult(
                    x_hat=x, e_hat=e_hat, support=supp,
                    support_size=len(supp), dropped_rows=tuple(dropped),
                )
    raise BudgetExceeded(
        f"no consistent subsystem after dropping up to q={spec.q} rows; "
        "the corruption is denser than q or y does not follow the model"
    )


def l0_residual_norm(spec: ProblemSpec, y, x, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Numerical ``||y - A x||_0`` under ``supp_abs``."""
    y = as_vector(y, spec.m, "y")
    x = as_vector(x, spec.n, "x")
    return len(support(y - spec.A @ x, tol))
