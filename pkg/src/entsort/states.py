"""Bipartite state containers and the test ensembles built from them.

Basis ordering is row-major throughout: ``|i>_A |j>_B`` sits at index
``i * dim_b + j``.
"""

from __future__ import annotations

import dataclasses
from functools import cached_property
from typing import Sequence

import numpy as np

from entsort.errors import DimensionError, DomainError
from entsort.numerics import as_matrix, eigvalsh, is_hermitean
from entsort.tolerances import T_NORM, T_ORTHO


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.flags.writeable = False
    return a


def _check_dims(dim_a, dim_b):
    if int(dim_a) < 1 or int(dim_b) < 1:
        raise DomainError(f"subsystem dimensions must be positive, got ({dim_a}, {dim_b})")


@dataclasses.dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector on a ``dim_a x dim_b`` bipartite space."""

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_dims(self.dim_a, self.dim_b)
        amp = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amp.size != self.dim_a * self.dim_b:
            raise DimensionError(
                f"{amp.size} amplitudes do not fit a {self.dim_a}x{self.dim_b} system"
            )
        if not np.all(np.isfinite(amp)):
            raise DomainError("amplitudes must be finite")
        norm2 = float(np.vdot(amp, amp).real)
        if abs(norm2 - 1.0) > T_NORM:
            raise DomainError(f"state is not normalized (norm^2 = {norm2!r})")
        object.__setattr__(self, "dim_a", int(self.dim_a))
        object.__setattr__(self, "dim_b", int(self.dim_b))
        object.__setattr__(self, "amplitudes", _frozen(amp))

    @property
    def coefficient_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to ``(dim_a, dim_b)``."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def fidelity(self, other: "PureState") -> float:
        """|<self|other>|, insensitive to global phase."""
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))


@dataclasses.dataclass(frozen=True, eq=False)
class DensityState:
    """Hermitean, unit-trace, positive semidefinite operator on ``dim_a x dim_b``."""

    dim_a: int
    dim_b: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_dims(self.dim_a, self.dim_b)
        m = as_matrix(self.matrix)
        n = self.dim_a * self.dim_b
        if m.shape != (n, n):
            raise DimensionError(f"matrix of shape {m.shape} is not on a {self.dim_a}x{self.dim_b} system")
        if not is_hermitean(m, T_ORTHO):
            raise DomainError("density matrix is not hermitean")
        tr = np.trace(m)
        if abs(tr - 1.0) > T_NORM:
            raise DomainError(f"density matrix has trace {tr!r}")
        if eigvalsh(m)[-1] < -1e-9:
            raise DomainError("density matrix is not positive semidefinite")
        object.__setattr__(self, "dim_a", int(self.dim_a))
        object.__setattr__(self, "dim_b", int(self.dim_b))
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def purity(self) -> float:
        return float(np.vdot(self.matrix, self.matrix).real)


class QuditGateSet:
    """Generalized Pauli, Fourier and controlled-shift gates on ``d`` levels."""

    def __init__(self, d: int):
        if d < 2:
            raise DomainError(f"qudit dimension must be >= 2, got {d}")
        self.d = d

    @cached_property
    def omega(self) -> complex:
        return np.exp(2j * np.pi / self.d)

    @cached_property
    def X(self) -> np.ndarray:
        # |j> -> |j+1 mod d>
        return np.roll(np.eye(self.d, dtype=np.complex128), 1, axis=0)

    @cached_property
    def Z(self) -> np.ndarray:
        return np.diag(self.omega ** np.arange(self.d))

    @cached_property
    def H(self) -> np.ndarray:
        j = np.arange(self.d)
        return self.omega ** np.outer(j, j) / np.sqrt(self.d)

    @cached_property
    def I(self) -> np.ndarray:
        return np.eye(self.d, dtype=np.complex128)

    @cached_property
    def CNOT(self) -> np.ndarray:
        d = self.d
        m = np.zeros((d * d, d * d), dtype=np.complex128)
        for i in range(d):
            for j in range(d):
                m[i * d + (i + j) % d, i * d + j] = 1.0
        return m


def _check_indices(d, p, q):
    if d < 2:
        raise DomainError(f"qudit dimension must be >= 2, got {d}")
    if not (0 <= p < d and 0 <= q < d):
        raise DomainError(f"Bell indices must satisfy 0 <= p, q <= {d - 1}, got p={p}, q={q}")


def bell_state(d: int, p: int, q: int) -> PureState:
    """The maximally entangled state (1/sqrt d) sum_j w^(jp) |j>|j+q mod d>."""
    _check_indices(d, p, q)
    amp = np.zeros(d * d, dtype=np.complex128)
    for j in range(d):
        amp[j * d + (j + q) % d] = np.exp(2j * np.pi * j * p / d) / np.sqrt(d)
    return PureState(d, d, amp)


def _run_bell_circuit(gates: QuditGateSet, local_a: np.ndarray, p: int, q: int) -> np.ndarray:
    # Gates in time order: X^q on B, local_a on A, Z^p on A, then CNOT.
    g = gates
    psi = np.zeros(g.d * g.d, dtype=np.complex128)
    psi[0] = 1.0
    for _ in range(q):
        psi = np.kron(g.I, g.X) @ psi
    psi = np.kron(local_a, g.I) @ psi
    for _ in range(p):
        psi = np.kron(g.Z, g.I) @ psi
    return g.CNOT @ psi


def bell_state_circuit(d: int, p: int, q: int) -> PureState:
    """Bell state prepared by the qudit gate sequence instead of the closed form."""
    _check_indices(d, p, q)
    g = QuditGateSet(d)
    return PureState(d, d, _run_bell_circuit(g, g.H, p, q))


def random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random real orthogonal matrix (QR of a Gaussian, sign-fixed)."""
    qm, r = np.linalg.qr(rng.standard_normal((d, d)))
    return qm * np.sign(np.diag(r))


def random_entangled_state(d: int, p: int = 0, q: int = 0, seed=None) -> PureState:
    """Bell circuit with the Fourier gate swapped for a seeded random rotation.

    The Schmidt coefficients are the magnitudes of the first column of the
    rotation, so they are generically unequal.  ``seed`` is anything
    ``numpy.random.default_rng`` accepts.
    """
    _check_indices(d, p, q)
    rng = np.random.default_rng(seed)
    g = QuditGateSet(d)
    return PureState(d, d, _run_bell_circuit(g, random_orthogonal(d, rng), p, q))


def random_pure_state(dim_a: int, dim_b: int, seed=None) -> PureState:
    """Haar-random pure state."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim_a * dim_b) + 1j * rng.standard_normal(dim_a * dim_b)
    return PureState(dim_a, dim_b, v / np.linalg.norm(v))


def _unit(v, name):
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    if v.size == 0 or abs(np.linalg.norm(v) - 1.0) > T_NORM:
        raise DomainError(f"{name} must be a unit vector")
    return v


def product_state(psi_a, psi_b) -> PureState:
    a, b = _unit(psi_a, "psi_a"), _unit(psi_b, "psi_b")
    return PureState(a.size, b.size, np.kron(a, b))


def density_from_pure(psi: PureState) -> DensityState:
    return DensityState(psi.dim_a, psi.dim_b, np.outer(psi.amplitudes, psi.amplitudes.conj()))


def random_density(dim_a: int, dim_b: int, seed=None, rank: int | None = None) -> DensityState:
    """Random mixed state G G^H / tr(G G^H) with a Ginibre ``G``."""
    rng = np.random.default_rng(seed)
    n = dim_a * dim_b
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityState(dim_a, dim_b, rho / np.trace(rho).real)


def random_product_density(dim_a: int, dim_b: int, seed=None) -> DensityState:
    """Tensor product of two independent random local density matrices."""
    rng = np.random.default_rng(seed)
    parts = []
    for d in (dim_a, dim_b):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        r = g @ g.conj().T
        parts.append(r / np.trace(r).real)
    rho = np.kron(*parts)
    return DensityState(dim_a, dim_b, (rho + rho.conj().T) / 2)


def mix(states: Sequence[DensityState], weights) -> DensityState:
    """Convex combination of density states with matching dimensions."""
    states = list(states)
    w = np.asarray(weights, dtype=float).reshape(-1)
    if not states or w.size != len(states):
        raise DomainError("need one weight per state and at least one state")
    if np.any(w < 0) or abs(w.sum() - 1.0) > T_NORM:
        raise DomainError("weights must be nonnegative and sum to 1")
    dims = {(s.dim_a, s.dim_b) for s in states}
    if len(dims) != 1:
        raise DimensionError(f"states have mismatched dimensions {sorted(dims)}")
    rho = sum(wi * s.matrix for wi, s in zip(w, states))
    dim_a, dim_b = dims.pop()
    return DensityState(dim_a, dim_b, rho)


def random_separable(dim_a: int, dim_b: int, seed=None, max_terms: int = 10) -> DensityState:
    """Random convex mixture of between 1 and ``max_terms`` product densities."""
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, max_terms + 1))
    parts = [random_product_density(dim_a, dim_b, rng) for _ in range(k)]
    w = rng.random(k)
    return mix(parts, w / w.sum())
