"""Numerical tolerances shared by every module.

The bundle can be overridden at the command line through the
``ENTSORT_TOLERANCE`` environment variable, a comma-separated list of
``NAME=value`` pairs, e.g. ``ENTSORT_TOLERANCE="T_MAJ=1e-8,T_RANK=1e-9"``.
"""

from __future__ import annotations

import dataclasses
import os

T_ORTHO = 1e-10   # orthonormality / hermiticity checks
T_RECON = 1e-9    # reconstruction and eigen-residual checks
T_DROP = 1e-12    # Gram-Schmidt residual below which a system is dependent
T_RANK = 1e-10    # singular values below T_RANK * s_max count as zero
T_EIG = 1e-12     # eigenvalues at or below this are dropped from entropies
T_CROSS = 1e-9    # slack on the cross-norm bound
T_MAJ = 1e-9      # absolute slack on majorization partial sums
T_NORM = 1e-10    # state normalization / trace checks

ENV_VAR = "ENTSORT_TOLERANCE"


@dataclasses.dataclass(frozen=True)
class Tolerances:
    T_ORTHO: float = T_ORTHO
    T_RECON: float = T_RECON
    T_DROP: float = T_DROP
    T_RANK: float = T_RANK
    T_EIG: float = T_EIG
    T_CROSS: float = T_CROSS
    T_MAJ: float = T_MAJ
    T_NORM: float = T_NORM

    @classmethod
    def parse(cls, text: str) -> "Tolerances":
        """Build a bundle from ``NAME=value`` pairs; unknown names raise."""
        known = {f.name for f in dataclasses.fields(cls)}
        overrides = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            name, sep, value = item.partition("=")
            name = name.strip().upper()
            if not sep or name not in known:
                raise ValueError(f"bad tolerance override {item!r}")
            overrides[name] = float(value)
        return cls(**overrides)

    @classmethod
    def from_env(cls, environ=None) -> "Tolerances":
        environ = os.environ if environ is None else environ
        text = environ.get(ENV_VAR, "")
        return cls.parse(text) if text.strip() else cls()
