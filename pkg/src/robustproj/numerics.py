"""Dense linear-algebra primitives and the tolerance policy used everywhere else.

All thresholds live in :class:`ToleranceConfig`. Functions here take plain
numpy arrays and never mutate their inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonSymmetricInput

EPS = np.finfo(np.float64).eps

# orthonormality checks on OrthonormalBasis
BASIS_ATOL = 1e-12


@dataclass(frozen=True)
class ToleranceConfig:
    """Floating-point thresholds.

    rank_rel : relative singular-value cutoff. ``None`` means
        ``max(rows, cols) * eps`` of the matrix being factored.
    eig_zero : absolute cutoff below which an eigenvalue of the
        accumulator is treated as zero.
    supp_abs : entries with magnitude above this count toward a support.
    consist_rel : a linear system is consistent when its least-squares
        residual is at most ``consist_rel * (1 + ||rhs||)``.
    """

    rank_rel: float | None = None
    eig_zero: float = 1e-10
    supp_abs: float = 1e-9
    consist_rel: float = 1e-9

    def __post_init__(self):
        for name in ("eig_zero", "supp_abs", "consist_rel"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.rank_rel is not None and not self.rank_rel > 0:
            raise ValueError("rank_rel must be strictly positive")

    def rank_cutoff(self, shape) -> float:
        """Relative cutoff for a matrix of the given shape."""
        if self.rank_rel is not None:
            return self.rank_rel
        return max(shape) * EPS


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class OrthonormalBasis:
    """Orthonormal vectors in R^ambient_dim, stored as the rows of ``vectors``."""

    ambient_dim: int
    vectors: np.ndarray = field(repr=False)

    def __post_init__(self):
        vecs = np.asarray(self.vectors, dtype=float)
        if vecs.size == 0:
            vecs = np.zeros((0, self.ambient_dim))
        if vecs.ndim != 2 or vecs.shape[1] != self.ambient_dim:
            raise DimensionMismatch(
                f"basis vectors must have shape (k, {self.ambient_dim}), got {vecs.shape}"
            )
        if vecs.shape[0] > self.ambient_dim:
            raise DimensionMismatch("more basis vectors than ambient dimension")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.vectors)

    def as_columns(self) -> np.ndarray:
        return self.vectors.T

    def is_orthonormal(self, atol=BASIS_ATOL) -> bool:
        gram = self.vectors @ self.vectors.T
        return bool(np.all(np.abs(gram - np.eye(self.dim)) <= atol))

    def projector(self) -> np.ndarray:
        return projector_onto_span(self)


def as_matrix(M, name="matrix") -> np.ndarray:
    """Validate and return a finite 2-D float array with at least one row and column."""
    arr = np.asarray(M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_vector(v, length=None, name="vector") -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatch(f"{name} must have length {length}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def fix_signs(vectors: np.ndarray, atol=1e-12) -> np.ndarray:
    """Flip each row so its first entry with magnitude above ``atol`` is positive."""
    out = np.array(vectors, dtype=float, copy=True)
    for row in out:
        nz = np.flatnonzero(np.abs(row) > atol)
        if nz.size and row[nz[0]] < 0:
            row *= -1.0
    return out


def numerical_rank(M, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    M = as_matrix(M)
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rank_cutoff(M.shape) * s[0]))


def kernel_mask(s: np.ndarray, shape, tol: ToleranceConfig) -> np.ndarray:
    """Boolean mask over the ``cols`` right singular vectors marking the kernel.

    ``s`` holds the ``min(shape)`` singular values in descending order, possibly
    with leading batch axes. Right singular vectors beyond ``len(s)`` always
    belong to the kernel.
    """
    n = shape[-1]
    cutoff = tol.rank_cutoff(shape) * s[..., :1]
    small = s <= cutoff
    pad = np.ones(s.shape[:-1] + (n - s.shape[-1],), dtype=bool)
    return np.concatenate([small, pad], axis=-1)


def kernel_basis(M, tol: ToleranceConfig = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis of ``{v : M v = 0}`` from the SVD of ``M``.

    Singular values at or below ``rank_rel * sigma_max`` are treated as zero,
    so ``len(result) == cols - numerical_rank(M)``.
    """
    M = as_matrix(M)
    n = M.shape[1]
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    mask = kernel_mask(s, M.shape, tol)
    return OrthonormalBasis(n, fix_signs(vt[mask]))


def row_space_basis(M, tol: ToleranceConfig = DEFAULT_TOL) -> OrthonormalBasis:
    M = as_matrix(M)
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    mask = kernel_mask(s, M.shape, tol)
    return OrthonormalBasis(M.shape[1], fix_signs(vt[~mask]))


def projector_onto_span(B: OrthonormalBasis) -> np.ndarray:
    """Return ``sum_i b_i b_i^T``; the zero matrix for an empty basis."""
    V = B.vectors
    return V.T @ V


def split_spectrum(C, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigen-split a symmetric PSD matrix into its zero and nonzero eigenspaces.

    Returns ``(zero_basis, nonzero_basis)``. Eigenvalues below ``eig_zero``
    (absolute) are zero.
    """
    C = as_matrix(C, "C")
    if C.shape[0] != C.shape[1]:
        raise DimensionMismatch(f"C must be square, got {C.shape}")
    scale = max(1.0, float(np.max(np.abs(C))))
    asym = float(np.max(np.abs(C - C.T)))
    if asym > 1e-12 * scale:
        raise NonSymmetricInput(f"C is not symmetric (max asymmetry {asym:.3e})")
    C = 0.5 * (C + C.T)
    w, Q = np.linalg.eigh(C)
    zero = w < tol.eig_zero
    n = C.shape[0]
    return (
        OrthonormalBasis(n, fix_signs(Q[:, zero].T)),
        OrthonormalBasis(n, fix_signs(Q[:, ~zero].T)),
    )


def zero_eigenspace(C, tol: ToleranceConfig = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis for the eigenvectors of ``C`` with eigenvalue below ``eig_zero``."""
    return split_spectrum(C, tol)[0]


def min_norm_solve(M, b, tol: ToleranceConfig = DEFAULT_TOL):
    """Minimum-norm least-squares solution of ``M x = b``.

    Returns ``(x, residual_norm)`` where ``residual_norm = ||M x - b||_2``.
    """
    M = as_matrix(M)
    b = as_vector(b, M.shape[0], "b")
    x, *_ = np.linalg.lstsq(M, b, rcond=tol.rank_cutoff(M.shape))
    return x, float(np.linalg.norm(M @ x - b))


def support(v, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[int, ...]:
    """Indices whose magnitude exceeds ``supp_abs``."""
    v = np.asarray(v, dtype=float)
    return tuple(int(i) for i in np.flatnonzero(np.abs(v) > tol.supp_abs))
