"""Von Neumann entropy of reduced states and linear sorting by it."""

from __future__ import annotations

import dataclasses
from typing import Hashable, Iterable, Sequence

import numpy as np

from entsort.errors import DomainError, StateError
from entsort.numerics import eigvalsh, partial_trace
from entsort.states import DensityState, PureState
from entsort.tolerances import T_EIG, T_RECON


@dataclasses.dataclass(frozen=True)
class EntropyRecord:
    state_id: Hashable
    entropy: float


def entropy_from_spectrum(p: Iterable[float], eig_tol: float = T_EIG) -> float:
    """-sum p log2 p over the entries above ``eig_tol``."""
    p = np.asarray(list(p), dtype=float)
    p = p[p > eig_tol]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def von_neumann_entropy(rho, eig_tol: float = T_EIG) -> float:
    """Entropy in bits of a unit-trace hermitean matrix."""
    tr = np.trace(np.asarray(rho))
    if abs(tr - 1.0) > T_RECON:
        raise DomainError(f"entropy needs a unit-trace matrix, trace is {tr!r}")
    w = eigvalsh(rho)
    if w[0] > 1 + 1e-9 or w[-1] < -1e-9:
        raise DomainError("eigenvalues outside [0, 1]")
    return entropy_from_spectrum(w, eig_tol)


def reduced_state(state: PureState | DensityState) -> np.ndarray:
    """Density matrix of subsystem A."""
    if isinstance(state, PureState):
        m = state.coefficient_matrix
        return m @ m.conj().T
    if isinstance(state, DensityState):
        return partial_trace(state.matrix, state.dim_a, state.dim_b, "A")
    raise TypeError(f"expected a PureState or DensityState, got {type(state).__name__}")


def entanglement_entropy(psi: PureState | DensityState) -> float:
    """Entropy of the A-marginal; an entanglement measure only for pure input."""
    return von_neumann_entropy(reduced_state(psi))


def lsea_sort(
    states: Sequence[PureState | DensityState],
    ids: Sequence[Hashable] | None = None,
) -> list[EntropyRecord]:
    """Stable ascending sort of states by reduced-state entropy.

    ``ids`` default to input positions.  A failure on any member is raised
    as :class:`StateError` carrying its position.
    """
    ids = list(range(len(states))) if ids is None else list(ids)
    if len(ids) != len(states):
        raise ValueError("ids and states differ in length")
    records = []
    for i, (sid, s) in enumerate(zip(ids, states)):
        try:
            records.append(EntropyRecord(sid, entanglement_entropy(s)))
        except (DomainError, TypeError, ArithmeticError) as exc:
            raise StateError(i, exc) from exc
    # sorted() is stable
    return sorted(records, key=lambda r: r.entropy)
