"""
Teleporting one and two qubits
==============================

The same five-qubit channel teleports a single qubit with a five-particle
measurement, or two qubits with a generated basis of sixteen states.
"""
import numpy as np

from ghzbell.statevec import haar_random_state
from ghzbell.tables import format_table, table_fivequbit, table_teleport
from ghzbell.teleport import teleport_2, teleport_n_branches

rng = np.random.default_rng(1)

# %%
# What Bob holds after each of Alice's outcomes, written for a generic input
# alpha|0> + beta|1>.
print(format_table(table_fivequbit(), "single qubit, five-particle measurement"))

# %%
# For two qubits the input is alpha|00> + gamma|01> + mu|10> + beta|11>.
print(format_table(table_teleport(2), "two qubits, sixteen outcomes"))

# %%
# One sampled run. The transcript lists the classical message and Bob's fix.
psi = haar_random_state(2, rng)
run = teleport_2(psi, rng)
print(run.labels["table_row"], run.classical_messages[0], run.corrections[0].label(), f"fidelity {run.fidelity:.12f}")

# %%
# Every outcome works, not only the sampled one, and they are equally likely.
for N in (1, 2, 3, 4):
    branches = teleport_n_branches(haar_random_state(N, rng), N)
    probs = np.array([b.probability for b in branches])
    print(f"N={N}: {len(branches)} outcomes, min fidelity {min(b.fidelity for b in branches):.12f}, "
          f"probabilities in [{probs.min():.6f}, {probs.max():.6f}]")
