"""Dense symmetric linear algebra and the structured inverses used by the
closed-form resistance derivations.

Matrices are plain ``numpy.ndarray`` objects.  Generalized inverses are
wrapped in :class:`GenInverse` so callers know which identities hold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import (
    ContractViolationError,
    DisconnectedGraphError,
    InvalidParameterError,
    SingularMatrixError,
)

__all__ = [
    "GenInverse",
    "COND_LIMIT",
    "checked_inverse",
    "check_symmetric",
    "sym_eigen",
    "block_inverse",
    "one_inverse_block",
    "shifted_group_inverse",
    "ri_minus_sj_inverse",
    "laplacian_pseudoinverse",
    "inverse_residuals",
    "dump_matrix",
    "load_matrix",
]

COND_LIMIT = 1e12
SYM_TOL = 1e-12


@dataclass(frozen=True)
class GenInverse:
    """A generalized inverse ``matrix`` of some ``source`` matrix.

    ``kind`` is one of ``"one_inverse"`` (M X M = M), ``"group_inverse"``
    (additionally X M X = X and M X = X M) or ``"ordinary_inverse"``.
    """

    matrix: np.ndarray
    kind: str
    source: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("one_inverse", "group_inverse", "ordinary_inverse"):
            raise InvalidParameterError(f"unknown inverse kind {self.kind!r}")

    def residuals(self, m: np.ndarray | None = None) -> dict:
        m = self.source if m is None else m
        if m is None:
            raise ContractViolationError("no source matrix to check against")
        return inverse_residuals(m, self.matrix)


def inverse_residuals(m: np.ndarray, x: np.ndarray) -> dict:
    """Max-abs residuals of the three group-inverse identities."""
    mx, xm = m @ x, x @ m
    return {
        "MXM": float(np.max(np.abs(mx @ m - m), initial=0.0)),
        "XMX": float(np.max(np.abs(xm @ x - x), initial=0.0)),
        "MX-XM": float(np.max(np.abs(mx - xm), initial=0.0)),
    }


def check_symmetric(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolationError(f"{what} must be square, got shape {m.shape}")
    if not np.all(np.abs(m - m.T) <= SYM_TOL * np.maximum(1.0, np.abs(m))):
        raise ContractViolationError(f"{what} is not symmetric")
    return m


def checked_inverse(m: np.ndarray, what: str) -> np.ndarray:
    if m.size == 0:
        return np.zeros((0, 0))
    if not np.all(np.isfinite(m)) or np.linalg.cond(m) > COND_LIMIT:
        raise SingularMatrixError(f"{what} is singular (condition number above {COND_LIMIT:g})")
    return np.linalg.inv(m)


def sym_eigen(m: np.ndarray):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    m = check_symmetric(m)
    return np.linalg.eigh(m)


def block_inverse(c0, c1, c2, c3) -> np.ndarray:
    """Invert ``[[C0, C1], [C2, C3]]`` through the Schur complement
    ``P = C3 - C2 C0^{-1} C1``.

    Only ``C0`` and ``P`` need to be nonsingular; the top-left block is
    written as ``C0^{-1} + C0^{-1} C1 P^{-1} C2 C0^{-1}``, which equals
    ``(C0 - C1 C3^{-1} C2)^{-1}`` whenever ``C3`` is invertible too.
    """
    c0, c1, c2, c3 = (np.atleast_2d(np.asarray(c, dtype=float)) for c in (c0, c1, c2, c3))
    a, b = c0.shape[0], c3.shape[0]
    if c0.shape != (a, a) or c3.shape != (b, b) or c1.shape != (a, b) or c2.shape != (b, a):
        raise ContractViolationError("block shapes are inconsistent")
    c0_inv = checked_inverse(c0, "C0")
    p = c3 - c2 @ c0_inv @ c1
    p_inv = checked_inverse(p, "Schur complement P")
    upper_right = -c0_inv @ c1 @ p_inv
    lower_left = -p_inv @ c2 @ c0_inv
    upper_left = c0_inv - upper_right @ c2 @ c0_inv
    return np.block([[upper_left, upper_right], [lower_left, p_inv]])


def _laplacian_group_inverse(lap: np.ndarray) -> np.ndarray:
    n = lap.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    j = np.full((n, n), 1.0 / n)
    return checked_inverse(lap + j, "L + J/n") - j


def one_inverse_block(l1, l2, l3) -> GenInverse:
    """{1}-inverse ``diag(L1^{-1}, S^#)`` of the Laplacian ``[[L1, L2], [L2^T, L3]]``
    with ``S = L3 - L2^T L1^{-1} L2``.

    Valid when every column of ``L2^T`` is all -1 or all 0.  ``S`` is then
    itself a connected Laplacian, so its group inverse comes from the same
    rank-one shift as :func:`laplacian_pseudoinverse`.
    """
    l1 = check_symmetric(np.atleast_2d(l1), "L1")
    l3 = check_symmetric(np.atleast_2d(np.asarray(l3, dtype=float)), "L3")
    l2 = np.asarray(l2, dtype=float).reshape(l1.shape[0], l3.shape[0])
    for c, col in enumerate(l2):
        if not (np.all(col == 0.0) or np.all(col == -1.0)):
            raise ContractViolationError(
                f"column {c} of L2^T is neither all -1 nor all 0; the block {{1}}-inverse does not apply")
    l1_inv = checked_inverse(l1, "L1")
    s = l3 - l2.T @ l1_inv @ l2
    s_sharp = _laplacian_group_inverse(s)
    a, b = l1.shape[0], l3.shape[0]
    x = np.block([[l1_inv, np.zeros((a, b))], [np.zeros((b, a)), s_sharp]])
    full = np.block([[l1, l2], [l2.T, l3]])
    return GenInverse(x, "one_inverse", full)


def shifted_group_inverse(lap, a: float, n: int | None = None) -> np.ndarray:
    """Group inverse of ``L + aI - (a/n)J`` computed as ``(L + aI)^{-1} - J/(a n)``."""
    if not a > 0:
        raise InvalidParameterError(f"shift a must be positive, got {a}")
    lap = check_symmetric(np.atleast_2d(lap), "L")
    n = lap.shape[0] if n is None else n
    if n != lap.shape[0]:
        raise ContractViolationError(f"dimension {n} does not match L ({lap.shape[0]})")
    shifted = checked_inverse(lap + a * np.eye(n), "L + aI")
    return shifted - np.full((n, n), 1.0 / (a * n))


def ri_minus_sj_inverse(r: float, s: float, n: int) -> np.ndarray:
    """``(rI - sJ)^{-1} = I/r + s/(r(r - ns)) J``."""
    if n < 1:
        raise InvalidParameterError(f"dimension must be positive, got {n}")
    if r == 0:
        raise SingularMatrixError("rI - sJ is singular for r = 0")
    if np.isclose(r, n * s, rtol=1e-14, atol=0.0):
        raise SingularMatrixError(f"rI - sJ is singular for r = n*s ({r} = {n}*{s})")
    return np.eye(n) / r + (s / (r * (r - n * s))) * np.ones((n, n))


def laplacian_pseudoinverse(lap) -> GenInverse:
    """Group inverse of a connected-graph Laplacian: ``(L + J/n)^{-1} - J/n``."""
    lap = check_symmetric(np.atleast_2d(lap), "Laplacian")
    n = lap.shape[0]
    if n > 1:
        ncomp, _ = connected_components(lap != 0, directed=False)
        if ncomp > 1:
            raise DisconnectedGraphError(f"graph has {ncomp} connected components")
    return GenInverse(_laplacian_group_inverse(lap), "group_inverse", lap)


def dump_matrix(m: np.ndarray) -> str:
    """One row per line, single-space separated, 17 significant digits."""
    m = np.atleast_2d(m)
    return "".join(" ".join(f"{x:.17g}" for x in row) + "\n" for row in m)


def load_matrix(text: str) -> np.ndarray:
    rows = [[float(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    return np.array(rows, dtype=float)
