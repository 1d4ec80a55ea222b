"""Ambiguity set membership, sparse-pair witnesses and robustness of linear maps.

A vector ``v`` is in the ambiguity set when ``||A v||_0 <= 2q``: two signals
differing by ``v`` can produce identical corrupted measurements.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotAMember
from .numerics import (
    DEFAULT_TOL,
    OrthonormalBasis,
    ToleranceConfig,
    as_matrix,
    as_vector,
    split_spectrum,
    support,
)
from .projector import ProblemSpec, RobustProjector, kernel_accumulator

# certify_linear_robust threshold, relative to 1 + max|M|
CERTIFY_REL = 1e-8


@dataclass(frozen=True)
class AmbiguityCertificate:
    v: np.ndarray = field(repr=False)
    support: tuple[int, ...]
    support_size: int
    q: int
    is_member: bool


@dataclass(frozen=True)
class SparsePairWitness:
    """Two q-sparse corruptions with ``A (x + v) + e = A x + e_prime`` for every x."""

    e_prime: np.ndarray
    e: np.ndarray


def ambiguity_member(spec: ProblemSpec, v, tol: ToleranceConfig = DEFAULT_TOL) -> AmbiguityCertificate:
    v = as_vector(v, spec.n, "v")
    supp = support(spec.A @ v, tol)
    return AmbiguityCertificate(
        v=v, support=supp, support_size=len(supp), q=spec.q,
        is_member=len(supp) <= 2 * spec.q,
    )


def balanced_partition(indices):
    """Split sorted indices alternately: positions 0, 2, 4, ... go to the first part."""
    idx = sorted(indices)
    return tuple(idx[0::2]), tuple(idx[1::2])


def sparse_pair_witness(spec: ProblemSpec, v, tol: ToleranceConfig = DEFAULT_TOL) -> SparsePairWitness:
    cert = ambiguity_member(spec, v, tol)
    if not cert.is_member:
        raise NotAMember(
            f"||Av||_0 = {cert.support_size} exceeds 2q = {2 * spec.q}"
        )
    Av = spec.A @ cert.v
    first, second = balanced_partition(cert.support)
    e_prime = np.zeros(spec.m)
    e = np.zeros(spec.m)
    e_prime[list(first)] = Av[list(first)]
    e[list(second)] = -Av[list(second)]
    return SparsePairWitness(e_prime=e_prime, e=e)


def span_ambiguity(spec: ProblemSpec, tol: ToleranceConfig = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis of the span of the ambiguity set (the image of the accumulator)."""
    C, _ = kernel_accumulator(spec, tol)
    return split_spectrum(C, tol)[1]


def robustness_defect(M, proj: RobustProjector) -> float:
    """``max |M (I - U)|``; zero exactly when ``x -> M x`` ignores ker(U)."""
    M = as_matrix(M, "M")
    if M.shape[1] != proj.n:
        raise DimensionMismatch(f"M must have {proj.n} columns, got {M.shape[1]}")
    return float(np.max(np.abs(M - M @ proj.U)))


def certify_linear_robust(spec: ProblemSpec, M, proj: RobustProjector,
                          tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when the linear map ``x -> M x`` is (A, q)-robust.

    For a linear map, being constant along the ambiguity set is the same as
    annihilating its span, which is ``ker(U)``.
    """
    M = as_matrix(M, "M")
    if proj.n != spec.n:
        raise DimensionMismatch("projector does not match the problem dimension")
    bound = CERTIFY_REL * (1.0 + float(np.max(np.abs(M))))
    return robustness_defect(M, proj) <= bound


def robustness_witness(M, proj: RobustProjector):
    """Direction in ker(U) that ``M`` moves the most, or None if ker(U) is trivial.

    When certification fails, ``M @ witness`` exposes the non-robust part.
    """
    M = as_matrix(M, "M")
    if proj.kernel_basis.dim == 0:
        return None
    K = proj.kernel_basis.vectors
    # top right singular vector of M restricted to ker(U)
    _, _, vt = np.linalg.svd(M @ K.T)
    return vt[0] @ K
