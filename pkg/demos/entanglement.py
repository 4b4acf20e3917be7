"""
How entangled is the channel?
=============================

Trace out Alice's qubits and look at what is left for Bob.
"""
import numpy as np

from ghzbell.bases import Party, channel_teleport
from ghzbell.statevec import DensityMatrix, entropy, partial_trace
from ghzbell.verify import entanglement_report

zeta, parties = channel_teleport(2)
print("Alice", parties.positions(Party.ALICE), "Bob", parties.positions(Party.BOB))

# %%
# Bob's two qubits are maximally mixed: two full bits of entanglement.
rho = partial_trace(zeta, parties.positions(Party.BOB))
print(np.round(rho.entries.real, 3))
print("entropy", entropy(rho))

# %%
# If Alice keeps four qubits, Bob's single qubit is I/2, one bit.
print(entanglement_report(zeta, ((1, 2, 3, 4), (5,)), expected_entropy=1.0).to_dict())

# %%
# A quarter of the identity on one qubit has trace one half, so it is not a
# state at all.
try:
    DensityMatrix(1, np.eye(2) / 4)
except ValueError as exc:
    print("rejected:", exc)

# %%
# The same holds for longer channels: Bob's N qubits carry N bits.
for N in (1, 2, 3, 4):
    state, p = channel_teleport(N)
    print(N, round(entropy(partial_trace(state, p.positions(Party.BOB))), 12))
