"""Robust subspace and its orthogonal projector.

The robust subspace of ``(A, q)`` is the intersection of the row spaces of
every submatrix ``A_T`` that keeps ``m - 2q`` rows. Its orthogonal
complement is the sum of the kernels ``ker(A_T)``, which is what the main
path accumulates.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import BudgetTooLarge
from .numerics import (
    DEFAULT_TOL,
    OrthonormalBasis,
    ToleranceConfig,
    as_matrix,
    fix_signs,
    kernel_mask,
    projector_onto_span,
    split_spectrum,
)

# subsets per batched SVD call
CHUNK_SIZE = 512


@dataclass(frozen=True)
class ProblemSpec:
    """Measurement matrix ``A`` (m x n) and corruption budget ``q`` with ``2q < m``."""

    A: np.ndarray = field(repr=False)
    q: int

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        A.setflags(write=False)
        object.__setattr__(self, "A", A)
        if int(self.q) != self.q or self.q < 0:
            raise ValueError(f"q must be a non-negative integer, got {self.q!r}")
        object.__setattr__(self, "q", int(self.q))
        if 2 * self.q >= A.shape[0]:
            raise BudgetTooLarge(f"need 2q < m, got q={self.q}, m={A.shape[0]}")

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def keep(self) -> int:
        """Rows kept in every subsystem, ``m - 2q``."""
        return self.m - 2 * self.q


@dataclass(frozen=True)
class RobustProjector:
    U: np.ndarray = field(repr=False)
    rank: int
    image_basis: OrthonormalBasis
    kernel_basis: OrthonormalBasis
    m: int
    n: int
    q: int
    subsets_processed: int

    def __call__(self, x):
        return self.U @ np.asarray(x, dtype=float)


def subset_count(m: int, q: int) -> int:
    """Number of row subsets of size ``m - 2q``, i.e. ``C(m, 2q)``."""
    if q < 0 or 2 * q >= m:
        raise BudgetTooLarge(f"need 0 <= 2q < m, got q={q}, m={m}")
    return math.comb(m, 2 * q)


def _chunks(it, size):
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def _partial_accumulator(A, subsets, tol):
    """Sum of kernel projectors ``B_T B_T^T`` over one chunk of subsets."""
    idx = np.asarray(subsets, dtype=np.intp)
    sub = A[idx]  # (batch, keep, n)
    _, s, vt = np.linalg.svd(sub, full_matrices=True)
    mask = kernel_mask(s, sub.shape[1:], tol)
    V = vt[mask]  # kernel vectors of every subset, stacked as rows
    return V.T @ V


def _tree_sum(parts):
    """Pairwise reduction in a fixed order, independent of how parts were computed."""
    parts = list(parts)
    if not parts:
        return None
    while len(parts) > 1:
        nxt = [parts[i] + parts[i + 1] for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def kernel_accumulator(spec: ProblemSpec, tol: ToleranceConfig = DEFAULT_TOL,
                       workers: int = 1, early_exit: bool = False):
    """Accumulate ``C = sum_T B_T B_T^T`` over all subsets of size ``m - 2q``.

    Subsets are enumerated lexicographically and processed in chunks of
    ``CHUNK_SIZE``; chunk partials are combined by a fixed pairwise tree, so
    the result is bit-identical for any ``workers`` value.

    With ``early_exit`` the loop stops once ``C`` is nonsingular (the robust
    subspace is then ``{0}`` and more terms cannot change that). Only checked
    between chunks.

    Returns ``(C, subsets_processed)``.
    """
    A, n = spec.A, spec.n
    combos = itertools.combinations(range(spec.m), spec.keep)
    parts, processed = [], 0

    if workers > 1 and not early_exit:
        blocks = list(_chunks(combos, CHUNK_SIZE))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _partial_accumulator(A, b, tol), blocks))
        processed = sum(len(b) for b in blocks)
    else:
        for block in _chunks(combos, CHUNK_SIZE):
            parts.append(_partial_accumulator(A, block, tol))
            processed += len(block)
            if early_exit and np.linalg.eigvalsh(_tree_sum(parts))[0] >= tol.eig_zero:
                break

    C = _tree_sum(parts)
    if C is None:
        C = np.zeros((n, n))
    return C, processed


def robust_projector(spec: ProblemSpec, tol: ToleranceConfig = DEFAULT_TOL,
                     workers: int = 1, early_exit: bool = False) -> RobustProjector:
    """Orthogonal projector onto the robust subspace of ``(A, q)``.

    Sums the kernel projectors of every ``A_T`` with ``|T| = m - 2q``; the
    zero eigenspace of that sum is the robust subspace and its nonzero
    eigenspace spans the ambiguity set.
    """
    C, processed = kernel_accumulator(spec, tol, workers=workers, early_exit=early_exit)
    image, kernel = split_spectrum(C, tol)
    return RobustProjector(
        U=projector_onto_span(image),
        rank=image.dim,
        image_basis=image,
        kernel_basis=kernel,
        m=spec.m,
        n=spec.n,
        q=spec.q,
        subsets_processed=processed,
    )


def _orth_complement(Q, n):
    """Orthonormal basis (columns) of the complement of span(Q) in R^n."""
    if Q.shape[1] == 0:
        return np.eye(n)
    return scipy.linalg.null_space(Q.T)


def _intersect(Q1, Q2, n, angle_tol):
    """Intersection of two column spans, via the kernel of the stacked complements.

    The singular values of the stacked complements are sines of principal
    angles (up to sqrt 2), so ``angle_tol`` is an angle threshold in radians.
    """
    N = np.hstack([_orth_complement(Q1, n), _orth_complement(Q2, n)])
    if N.shape[1] == 0:
        return np.eye(n)
    return scipy.linalg.null_space(N.T, rcond=angle_tol)


def robust_projector_oracle(spec: ProblemSpec, tol: ToleranceConfig = DEFAULT_TOL,
                            angle_tol: float = 1e-9) -> RobustProjector:
    """Independent cross-check: intersect the row spaces ``rowspan(A_T)`` pairwise.

    Uses scipy's ``orth``/``null_space`` rather than the accumulator path.
    Repeated intersections accumulate rounding, so two subspaces are taken to
    share a direction when their principal angle is below ``angle_tol``.
    Meant for small problems (m <= 12, n <= 8).
    """
    A, n = spec.A, spec.n
    R = np.eye(n)
    count = 0
    for T in itertools.combinations(range(spec.m), spec.keep):
        sub = A[list(T)]
        rcond = tol.rank_cutoff(sub.shape)
        rows = scipy.linalg.orth(sub.T, rcond=rcond)
        R = _intersect(R, rows, n, angle_tol) if R.shape[1] else R
        count += 1
    # re-orthonormalize so accumulated rounding does not leak into the projector
    if R.shape[1]:
        R = scipy.linalg.orth(R)
    image = OrthonormalBasis(n, fix_signs(R.T))
    kernel = OrthonormalBasis(n, fix_signs(_orth_complement(R, n).T))
    return RobustProjector(
        U=projector_onto_span(image),
        rank=image.dim,
        image_basis=image,
        kernel_basis=kernel,
        m=spec.m,
        n=spec.n,
        q=spec.q,
        subsets_processed=count,
    )
