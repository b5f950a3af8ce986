"""Dense complex linear algebra primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Spectra are
always returned sorted nonincreasing so callers never re-sort.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from entsort.errors import DependentSystemError, DimensionError, DomainError, NumericError
from entsort.tolerances import T_DROP, T_ORTHO


class SvdResult(NamedTuple):
    left: np.ndarray
    singular: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular) @ self.right.conj().T


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-d complex array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or 0 in a.shape:
        raise DimensionError(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def is_hermitean(h, tol: float = T_ORTHO) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and np.max(np.abs(h - h.conj().T), initial=0.0) <= tol


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt scalar product tr(a^H b)."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm(a) -> float:
    return float(np.sqrt(hs_inner(a, a).real))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def gram_schmidt(system: Sequence, drop_tol: float = T_DROP) -> list[np.ndarray]:
    """Orthonormalize a list of equally shaped matrices in the HS product.

    Modified Gram-Schmidt with one full re-orthogonalization pass.  If
    every input is hermitean the projection coefficients are real, and the
    outputs are hermitean too; they are symmetrized to remove rounding.

    Raises
    ------
    DependentSystemError
        If a residual falls below ``drop_tol`` relative to its input norm.
    """
    mats = [as_matrix(m) for m in system]
    if not mats:
        return []
    shape = mats[0].shape
    for m in mats:
        if m.shape != shape:
            raise DimensionError(f"shape mismatch {m.shape} vs {shape}")
    hermitean = all(is_hermitean(m) for m in mats)

    out: list[np.ndarray] = []
    for k, m in enumerate(mats):
        scale = np.linalg.norm(m)
        v = m.copy()
        for _ in range(2):
            for f in out:
                c = np.vdot(f, v)
                if hermitean:
                    c = c.real
                v = v - c * f
        residual = np.linalg.norm(v)
        if residual <= drop_tol * max(scale, 1.0):
            raise DependentSystemError(k, residual)
        v = v / residual
        if hermitean:
            v = (v + v.conj().T) / 2
        out.append(v)
    return out


def svd(m) -> SvdResult:
    """Thin SVD with singular values in nonincreasing order."""
    a = as_matrix(m)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD did not converge: {exc}") from exc
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(s)) and np.all(np.isfinite(vh))):
        raise NumericError("SVD produced non-finite output")
    return SvdResult(u, s, vh.conj().T)


def eigh(h, tol: float = T_ORTHO) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (nonincreasing) and orthonormal eigenvector columns."""
    a = as_matrix(h)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"eigh needs a square matrix, got {a.shape}")
    if not is_hermitean(a, tol):
        raise DomainError("eigh needs a hermitean matrix")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition did not converge: {exc}") from exc
    return w[::-1].copy(), v[:, ::-1].copy()


def eigvalsh(h, tol: float = T_ORTHO) -> np.ndarray:
    a = as_matrix(h)
    if not is_hermitean(a, tol):
        raise DomainError("eigvalsh needs a hermitean matrix")
    try:
        return np.linalg.eigvalsh(a)[::-1].copy()
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition did not converge: {exc}") from exc


def partial_trace(rho, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Reduce a bipartite operator to subsystem ``keep`` ("A" or "B")."""
    a = as_matrix(rho)
    n = dim_a * dim_b
    if a.shape != (n, n):
        raise DimensionError(f"operator of shape {a.shape} is not on a {dim_a}x{dim_b} system")
    t = a.reshape(dim_a, dim_b, dim_a, dim_b)
    keep = keep.upper()
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")
