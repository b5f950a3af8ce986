# %% [markdown]
# # Schmidt decomposition of density matrices
#
# A density matrix on H_A (x) H_B is expanded over products of hermitean,
# Hilbert-Schmidt orthonormal local bases (generalized Gell-Mann).  An SVD
# of the coefficient matrix gives rho = sum_a lambda_a E^A_a (x) E^B_a.

# %%
import numpy as np

from entsort import (
    DensityState,
    bell_state,
    cross_norm_check,
    density_from_pure,
    random_density,
    random_separable,
    schmidt_operator,
)

np.set_printoptions(precision=4, suppress=True)

# %%
rho = random_density(3, 2, seed=11)
dec = schmidt_operator(rho)
print("rank:", dec.rank)
print("coefficients:", dec.coefficients)
print("reconstruction error:", np.linalg.norm(rho.matrix - dec.reconstruct()))
print("sum of squares vs purity:", np.sum(dec.coefficients**2), rho.purity)

# %% [markdown]
# ## Cross-norm test
#
# Separable states never have a coefficient sum above 1, so a larger sum
# certifies entanglement.  The converse does not hold, which is why the
# verdict is only ever "Entangled" or "Inconclusive".

# %%
examples = {
    "Bell (pure)": density_from_pure(bell_state(2, 0, 0)),
    "maximally mixed": DensityState(2, 2, np.eye(4) / 4),
    "random separable": random_separable(2, 2, seed=3),
    "Werner-like 0.8 Bell + 0.2 noise": DensityState(
        2, 2, 0.8 * density_from_pure(bell_state(2, 0, 0)).matrix + 0.2 * np.eye(4) / 4
    ),
}
for name, state in examples.items():
    dec = schmidt_operator(state)
    print(f"{name:34s} rank={dec.rank} sum={dec.coefficient_sum:.4f} -> {cross_norm_check(dec).value}")
