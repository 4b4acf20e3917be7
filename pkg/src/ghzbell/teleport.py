"""Deterministic teleportation through the GHZ-Bell channel.

Alice measures her register (input qubits first, then her channel qubits in
ascending position) and sends the outcome index; Bob fixes his qubits with a
Pauli string read off the outcome bits.
"""
from __future__ import annotations

from .bases import (
    Party,
    PartyAssignment,
    channel_teleport,
    omega_basis_teleport,
    table2_basis,
)
from .errors import DomainError
from .protocol import (
    Branch,
    ProtocolTranscript,
    Step,
    as_rng,
    enumerate_branches,
    sample_branch,
    transcript,
)
from .statevec import PauliString, StateVector, tensor


def correction_for(N: int, j: int) -> PauliString:
    """Bob's fix for outcome ``j = b_2N ... b_1``: Z on qubit k if ``b_k``, X if ``b_(k+N)``.

    Bob's qubits are numbered GHZ qubit first, then the Bell partners in order.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if not 0 <= j < 1 << (2 * N):
        raise DomainError(f"outcome {j} outside 0..{(1 << 2 * N) - 1}")
    z = [k for k in range(1, N + 1) if j >> (k - 1) & 1]
    x = [k for k in range(1, N + 1) if j >> (k + N - 1) & 1]
    return PauliString.from_positions(N, x=x, z=z)


def _check_input(state: StateVector, n: int):
    if state.num_qubits != n:
        raise DomainError(f"expected a {n}-qubit input, got {state.num_qubits}")
    if abs(state.norm() - 1.0) > 1e-10:
        raise DomainError(f"input is not normalized (norm {state.norm():.12g})")


def teleport_steps(N: int) -> tuple[StateVector, list[Step]]:
    """Channel state and Alice's measurement, with input qubits at 1..N."""
    channel, parties = channel_teleport(N)
    alice = tuple(range(1, N + 1)) + tuple(N + p for p in parties.positions(Party.ALICE))
    step = Step(Party.ALICE, alice, omega_basis_teleport(N), 2 * N, Party.BOB)
    return channel, [step]


def teleport_n_branches(state: StateVector, N: int) -> list[Branch]:
    _check_input(state, N)
    channel, steps = teleport_steps(N)
    return enumerate_branches(tensor(state, channel), steps, lambda o: correction_for(N, o[0]), state)


def teleport_n(state: StateVector, N: int, rng=None) -> ProtocolTranscript:
    _check_input(state, N)
    rng, seed = as_rng(rng)
    channel, steps = teleport_steps(N)
    branch = sample_branch(tensor(state, channel), steps, lambda o: correction_for(N, o[0]), state, rng)
    return transcript("teleport-n", N, seed, steps, branch)


def teleport_2(state: StateVector, rng=None) -> ProtocolTranscript:
    """Two-qubit teleportation; the outcome index is the row of the 16-row table."""
    t = teleport_n(state, 2, rng)
    t.protocol_id = "teleport-2"
    t.labels["table_row"] = f"Omega_{t.outcome_indices[0]}"
    return t


# -- five-qubit single-qubit variant ----------------------------------------

# Bob's fix per row of the five-particle basis: I, Z, X, XZ
FIVEQUBIT_CORRECTIONS = (
    PauliString(1),
    PauliString(1, z_mask=1),
    PauliString(1, x_mask=1),
    PauliString(1, x_mask=1, z_mask=1),
)


def fivequbit_assignment() -> PartyAssignment:
    return PartyAssignment.from_groups(5, A=[1, 2, 3, 4], B=[5])


def fivequbit_steps() -> tuple[StateVector, list[Step]]:
    channel, _ = channel_teleport(2)
    step = Step(Party.ALICE, (1, 2, 3, 4, 5), table2_basis(), 2, Party.BOB)
    return channel, [step]


def fivequbit_branches(state: StateVector) -> list[Branch]:
    _check_input(state, 1)
    channel, steps = fivequbit_steps()
    return enumerate_branches(tensor(state, channel), steps, lambda o: FIVEQUBIT_CORRECTIONS[o[0]], state)


def teleport_1_fivequbit(state: StateVector, rng=None) -> ProtocolTranscript:
    _check_input(state, 1)
    rng, seed = as_rng(rng)
    channel, steps = fivequbit_steps()
    branch = sample_branch(
        tensor(state, channel), steps, lambda o: FIVEQUBIT_CORRECTIONS[o[0]], state, rng
    )
    return transcript("teleport-fivequbit", 1, seed, steps, branch, {"table_row": branch.outcomes[0] + 1})
