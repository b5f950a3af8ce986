# %% [markdown]
# # Sorting registers by entanglement entropy
#
# Reduce each state to subsystem A, diagonalize, take the von Neumann
# entropy, then sort.  Random non-maximally entangled states are made by
# swapping the Fourier gate of the Bell circuit for a random rotation.

# %%
from entsort import bell_state, lsea_sort, product_state, random_entangled_state
from entsort.cli import run_bench

# %%
states = [bell_state(2, 0, 0), product_state([1, 0], [1, 0])]
states += [random_entangled_state(2, seed=s) for s in range(6)]
names = ["bell", "product"] + [f"random-{s}" for s in range(6)]

for rec in lsea_sort(states, ids=names):
    print(f"{rec.state_id:10s} {rec.entropy:.4f}")

# %% [markdown]
# Timing table for growing ensemble sizes.  Absolute numbers depend on the
# machine; only the growth with n is meaningful.

# %%
for row in run_bench("linear", [10, 100, 1000, 2000], d=2, seed=0, repeats=3):
    print(f"{row.n_registers:6d}  {row.wall_time_seconds:.6f} s")
