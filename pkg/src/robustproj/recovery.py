"""End-to-end recovery of the affine set ``x_hat + ker(U)``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decoder import l0_decode
from .errors import DimensionMismatch
from .numerics import DEFAULT_TOL, OrthonormalBasis, ToleranceConfig, as_vector
from .projector import ProblemSpec, RobustProjector, robust_projector

# membership and set-equality threshold, relative to 1 + norm
SET_REL = 1e-8


@dataclass(frozen=True)
class RecoverySet:
    """Affine set ``anchor + span(kernel_basis)``.

    ``projected_anchor = U @ anchor`` is the same for every decode of the same
    truth, so it is the canonical summary of the set.
    """

    anchor: np.ndarray = field(repr=False)
    kernel_basis: OrthonormalBasis
    projected_anchor: np.ndarray
    rank: int

    @property
    def n(self) -> int:
        return self.anchor.shape[0]

    def projector(self) -> np.ndarray:
        """U, rebuilt as I minus the projector onto the kernel basis."""
        return np.eye(self.n) - self.kernel_basis.projector()


def recovery_set(x_hat, proj: RobustProjector) -> RecoverySet:
    x_hat = as_vector(x_hat, proj.n, "x_hat")
    return RecoverySet(
        anchor=x_hat,
        kernel_basis=proj.kernel_basis,
        projected_anchor=proj.U @ x_hat,
        rank=proj.rank,
    )


def recover(spec: ProblemSpec, y, tol: ToleranceConfig = DEFAULT_TOL,
            proj: RobustProjector | None = None, order: str = "lex") -> RecoverySet:
    """Decode ``y`` and return every signal consistent with it under the budget.

    ``proj`` may be passed to reuse a projector already computed for ``spec``.
    """
    result = l0_decode(spec, y, tol, order=order)
    if proj is None:
        proj = robust_projector(spec, tol)
    return recovery_set(result.x_hat, proj)


def _off_span_residual(d, basis: OrthonormalBasis):
    K = basis.vectors
    return float(np.linalg.norm(d - K.T @ (K @ d)))


def set_member(rset: RecoverySet, x, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    x = as_vector(x, rset.n, "x")
    res = _off_span_residual(x - rset.anchor, rset.kernel_basis)
    return res <= SET_REL * (1.0 + float(np.linalg.norm(x)))


def sets_equal(s1: RecoverySet, s2: RecoverySet, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    if s1.n != s2.n:
        raise DimensionMismatch("recovery sets live in different dimensions")
    P1, P2 = s1.kernel_basis.projector(), s2.kernel_basis.projector()
    if np.max(np.abs(P1 - P2)) > SET_REL:
        return False
    U = np.eye(s1.n) - P1
    a1, a2 = U @ s1.anchor, U @ s2.anchor
    scale = 1.0 + max(np.linalg.norm(a1), np.linalg.norm(a2))
    return bool(np.linalg.norm(a1 - a2) <= SET_REL * scale)
