# %% [markdown]
# # Qudit Bell states
#
# The d^2 maximally entangled two-qudit states can be written down directly
# or prepared with a short gate sequence: shift the second qudit q times,
# apply the d-level Fourier gate to the first, phase it p times, then a
# controlled shift.  Both routes give the same state up to a global phase.

# %%
import itertools

import numpy as np

from entsort import bell_state, bell_state_circuit, entanglement_entropy, schmidt_pure

np.set_printoptions(precision=4, suppress=True)

# %%
psi = bell_state(2, 1, 1)
print("|psi_11> for qubits:", psi.amplitudes)     # (|01> - |10>)/sqrt2

# %%
for d in (2, 3, 4):
    worst = max(
        abs(1 - bell_state(d, p, q).fidelity(bell_state_circuit(d, p, q)))
        for p, q in itertools.product(range(d), repeat=2)
    )
    print(f"d={d}: worst 1 - fidelity over all (p, q) = {worst:.1e}")

# %% [markdown]
# Every Bell state has d equal Schmidt coefficients 1/sqrt(d), hence an
# entanglement entropy of log2(d) bits.

# %%
for d in (2, 3, 4, 5):
    dec = schmidt_pure(bell_state(d, 0, 0))
    print(f"d={d}: rank={dec.rank} coefficients={dec.coefficients} "
          f"entropy={entanglement_entropy(bell_state(d, 0, 0)):.6f} (log2 d = {np.log2(d):.6f})")
