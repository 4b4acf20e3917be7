"""
Superdense coding through a GHZ state and a Bell pair
=====================================================

Alice holds three of the five qubits. Each of the 32 five-bit messages is a
Pauli string on her qubits, and Bob reads it back with one joint measurement.
"""
import numpy as np

from ghzbell.superdense import capacity_check, decode, encode, encode_pauli, table_text

# %%
# The encoding table: bit string, Alice's operator (her own qubit numbers),
# the resulting state and how it factors into GHZ and Bell pieces.
print(table_text(2))

# %%
# Send one message. The operator only touches Alice's positions 1, 2 and 4.
bits = "10110"
print("operator:", encode_pauli(2, bits).label(), "support", encode_pauli(2, bits).support)
state = encode(2, bits)
rng = np.random.default_rng(0)
print("Bob decodes:", decode(state, 2, rng))

# %%
# Bigger channels keep the count of 2N+1 bits through N+1 qubits.
for N in (1, 2, 3):
    rep = capacity_check(N)
    print(f"N={N}: {rep.num_states} orthonormal states, Alice sends {rep.alice_qubit_count} qubits, "
          f"{rep.ratio} bits per qubit")
