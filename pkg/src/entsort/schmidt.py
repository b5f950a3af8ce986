"""Schmidt decompositions of pure states and density operators.

For a density operator the decomposition lives in Hilbert-Schmidt space:
rho is expanded over products of HS-orthonormal local operator bases and the
resulting coefficient matrix is diagonalized by an SVD.  The singular values
themselves are the Schmidt coefficients; with orthonormal factors they are
the only choice that reproduces rho term by term.
"""

from __future__ import annotations

import dataclasses
import enum
from functools import cached_property
from typing import Sequence

import numpy as np

from entsort.numerics import as_matrix, svd
from entsort.states import DensityState, PureState
from entsort.tolerances import T_CROSS, T_ORTHO, T_RANK


def _numerical_rank(s: np.ndarray, rel_tol: float) -> int:
    if s.size == 0 or s[0] <= 0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


@dataclasses.dataclass(frozen=True, eq=False)
class PureSchmidt:
    """psi = sum_a coefficients[a] * left[:, a] (x) right[:, a]."""

    rank: int
    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return np.einsum("a,ia,ja->ij", self.coefficients, self.left_vectors, self.right_vectors).reshape(-1)


@dataclasses.dataclass(frozen=True, eq=False)
class OperatorSchmidt:
    """rho = sum_a coefficients[a] * left_ops[a] (x) right_ops[a]."""

    rank: int
    coefficients: np.ndarray
    left_ops: np.ndarray
    right_ops: np.ndarray
    hermitean_basis_used: bool

    def reconstruct(self) -> np.ndarray:
        return sum(
            lam * np.kron(ea, eb)
            for lam, ea, eb in zip(self.coefficients, self.left_ops, self.right_ops)
        )

    @property
    def coefficient_sum(self) -> float:
        return float(np.sum(self.coefficients))

    def factors_positive(self, tol: float = T_ORTHO) -> bool:
        """True when every factor operator is hermitean PSD up to a global sign.

        Diagnostic only: sufficiency for separability is not established here.
        """
        for op in (*self.left_ops, *self.right_ops):
            if np.max(np.abs(op - op.conj().T)) > tol:
                return False
            w = np.linalg.eigvalsh((op + op.conj().T) / 2)
            if not (np.all(w >= -tol) or np.all(w <= tol)):
                return False
        return True


@dataclasses.dataclass(frozen=True, eq=False)
class SchmidtData:
    """Kind-agnostic view consumed by the ordering oracle."""

    rank: int
    coefficients: np.ndarray
    kind: str = "pure"  # "pure" or "operator"

    @cached_property
    def weights(self) -> np.ndarray:
        """Squared coefficients, normalized to sum 1 for operator data."""
        w = np.asarray(self.coefficients, dtype=float) ** 2
        if self.kind == "operator":
            w = w / w.sum()
        return w

    @cached_property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.weights)


def schmidt_pure(psi: PureState, rank_tol: float = T_RANK) -> PureSchmidt:
    res = svd(psi.coefficient_matrix)
    r = _numerical_rank(res.singular, rank_tol)
    # psi_ij = sum_a U_ia s_a conj(V_ja)
    return PureSchmidt(
        rank=r,
        coefficients=res.singular[:r].copy(),
        left_vectors=res.left[:, :r].copy(),
        right_vectors=res.right[:, :r].conj(),
    )


def hermitean_basis(d: int) -> list[np.ndarray]:
    """HS-orthonormal hermitean basis of d x d matrices.

    Order: I/sqrt(d), then the symmetric, antisymmetric and diagonal
    generalized Gell-Mann families, each scaled to unit HS norm.
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    basis = [np.eye(d, dtype=np.complex128) / np.sqrt(d)]
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        m = np.zeros((d, d), dtype=np.complex128)
        m[j, k] = m[k, j] = 1 / np.sqrt(2)
        basis.append(m)
    for j, k in pairs:
        m = np.zeros((d, d), dtype=np.complex128)
        m[j, k] = -1j / np.sqrt(2)
        m[k, j] = 1j / np.sqrt(2)
        basis.append(m)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        basis.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(np.complex128))
    return basis


def coefficient_matrix(rho, dim_a: int, dim_b: int, basis_a, basis_b) -> np.ndarray:
    """c_ij = <F^A_i (x) F^B_j, rho>_HS for the given local bases."""
    t = as_matrix(rho).reshape(dim_a, dim_b, dim_a, dim_b)
    fa = np.asarray(basis_a, dtype=np.complex128)
    fb = np.asarray(basis_b, dtype=np.complex128)
    return np.einsum("iac,jbd,abcd->ij", fa.conj(), fb.conj(), t, optimize=True)


def schmidt_operator(
    rho: DensityState,
    basis_a: Sequence | None = None,
    basis_b: Sequence | None = None,
    rank_tol: float = T_RANK,
) -> OperatorSchmidt:
    """Canonical operator Schmidt decomposition of a density state.

    ``basis_a`` / ``basis_b`` default to :func:`hermitean_basis`; any
    complete HS-orthonormal systems give the same coefficients.
    """
    fa = np.asarray(hermitean_basis(rho.dim_a) if basis_a is None else basis_a, dtype=np.complex128)
    fb = np.asarray(hermitean_basis(rho.dim_b) if basis_b is None else basis_b, dtype=np.complex128)
    hermitean = all(np.allclose(f, f.conj().T, atol=T_ORTHO) for f in (*fa, *fb))

    c = coefficient_matrix(rho.matrix, rho.dim_a, rho.dim_b, fa, fb)
    if hermitean:
        # rho and the basis are hermitean, so C is real up to rounding.
        c = c.real
    res = svd(c)
    r = _numerical_rank(res.singular, rank_tol)
    u, v = res.left[:, :r], res.right[:, :r]
    left = np.einsum("ia,ixy->axy", u, fa)
    right = np.einsum("ja,jxy->axy", v.conj(), fb)
    return OperatorSchmidt(
        rank=r,
        coefficients=res.singular[:r].copy(),
        left_ops=left,
        right_ops=right,
        hermitean_basis_used=hermitean,
    )


class CrossNorm(enum.Enum):
    ENTANGLED = "Entangled"
    INCONCLUSIVE = "Inconclusive"


def cross_norm_check(rho: DensityState | OperatorSchmidt, tol: float = T_CROSS) -> CrossNorm:
    """One-sided test: a coefficient sum above 1 certifies entanglement."""
    dec = rho if isinstance(rho, OperatorSchmidt) else schmidt_operator(rho)
    return CrossNorm.ENTANGLED if dec.coefficient_sum > 1 + tol else CrossNorm.INCONCLUSIVE


def schmidt_of(state, rank_tol: float = T_RANK) -> SchmidtData:
    if isinstance(state, SchmidtData):
        return state
    if isinstance(state, PureState):
        dec = schmidt_pure(state, rank_tol)
        return SchmidtData(dec.rank, dec.coefficients, "pure")
    if isinstance(state, DensityState):
        dec = schmidt_operator(state, rank_tol=rank_tol)
        return SchmidtData(dec.rank, dec.coefficients, "operator")
    raise TypeError(f"cannot decompose {type(state).__name__}")
