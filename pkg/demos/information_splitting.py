"""
Splitting a secret between Bob and Charlie
==========================================

Alice holds an unknown state. After she and Bob both measure, Charlie can
rebuild it, but only with both of their outcomes.
"""
import numpy as np

from ghzbell.qis import SINGLE_CORRECTIONS, qis_n_branches, qis_single_branches, secrecy_check
from ghzbell.statevec import haar_random_state
from ghzbell.tables import format_table, table_qis_alice, table_qis_single_alice, table_qis_single_bob

rng = np.random.default_rng(2)

# %%
# Protocol (i): Alice makes a Bell measurement, Bob measures his three qubits.
print(format_table(table_qis_single_alice("i"), "after Alice (unnormalized)"))
print(format_table(table_qis_single_bob("i"), "after Bob, given Alice's first outcome"))

# %%
# Charlie's fix for each pair of outcomes, found by trying every Pauli.
for protocol, table in SINGLE_CORRECTIONS.items():
    print(protocol, " ".join(f"{a}{b}:{c}" for (a, b), c in sorted(table.items())))

# %%
# All three single-qubit protocols reach fidelity one on every branch.
psi = haar_random_state(1, rng)
for protocol in ("i", "ii", "iii"):
    branches = qis_single_branches(protocol, psi)
    print(protocol, len(branches), "branches, min fidelity", min(b.fidelity for b in branches))

# %%
# Two qubits: the joint Bob-Charlie state for each of Alice's sixteen outcomes.
print(format_table(table_qis_alice(2), "two-qubit splitting"))
branches = qis_n_branches(haar_random_state(3, rng), 3)
print("N=3:", len(branches), "branches, min fidelity", min(b.fidelity for b in branches))

# %%
# Neither helper learns anything alone: their reduced states do not depend on
# the secret.
for protocol in ("i", "two"):
    for check in secrecy_check(protocol, N=2, trials=10, rng=rng).checks:
        print(protocol, check.name, f"{check.value:.1e}")
