"""Quantum information splitting among Alice, Bob and Charlie.

Alice holds the secret and measures first, Bob measures second, and Charlie
recovers the state with a Pauli correction fixed by both outcomes. Neither
helper can rebuild the state alone.

Combined register layout: input qubits first, then the channel.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .bases import (
    Party,
    bell_basis,
    channel_qis,
    channel_teleport,
    four_particle_basis,
    ghz_pair_basis,
    hadamard_basis,
    omega_basis_qis,
    qis_single_assignments,
    three_particle_basis,
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
from .statevec import (
    DensityMatrix,
    PauliString,
    StateVector,
    haar_random_state,
    partial_trace,
    project,
    tensor,
    trace_distance,
)
from .teleport import correction_for, teleport_steps
from .verify import VerificationReport

SINGLE_PROTOCOLS = ("i", "ii", "iii")

_P = {
    "I": PauliString(1),
    "Z": PauliString(1, z_mask=1),
    "X": PauliString(1, x_mask=1),
    "ZX": PauliString(1, x_mask=1, z_mask=1),
}

# Charlie's correction per (Alice outcome, Bob outcome), generated by
# exhaustive search over {I, Z, X, ZX}; tests regenerate and compare.
SINGLE_CORRECTIONS: dict[str, dict[tuple[int, int], str]] = {
    "i": {
        (0, 0): "I", (0, 1): "X", (0, 2): "Z", (0, 3): "ZX",
        (1, 0): "Z", (1, 1): "ZX", (1, 2): "I", (1, 3): "X",
        (2, 0): "X", (2, 1): "I", (2, 2): "ZX", (2, 3): "Z",
        (3, 0): "ZX", (3, 1): "Z", (3, 2): "X", (3, 3): "I",
    },
    "ii": {
        (0, 0): "I", (0, 1): "Z", (0, 2): "X", (0, 3): "ZX",
        (1, 0): "Z", (1, 1): "I", (1, 2): "ZX", (1, 3): "X",
        (2, 0): "X", (2, 1): "ZX", (2, 2): "I", (2, 3): "Z",
        (3, 0): "ZX", (3, 1): "X", (3, 2): "Z", (3, 3): "I",
    },
    "iii": {
        (0, 0): "I", (0, 1): "Z", (1, 0): "Z", (1, 1): "I",
        (2, 0): "I", (2, 1): "Z", (3, 0): "Z", (3, 1): "I",
        (4, 0): "X", (4, 1): "ZX", (5, 0): "ZX", (5, 1): "X",
        (6, 0): "X", (6, 1): "ZX", (7, 0): "ZX", (7, 1): "X",
    },
}


def _check_input(state: StateVector, n: int):
    if state.num_qubits != n:
        raise DomainError(f"expected a {n}-qubit input, got {state.num_qubits}")
    if abs(state.norm() - 1.0) > 1e-10:
        raise DomainError(f"input is not normalized (norm {state.norm():.12g})")


def single_steps(protocol: str) -> tuple[StateVector, list[Step]]:
    """Channel and measurement sequence for single-qubit protocol i, ii or iii."""
    if protocol not in SINGLE_PROTOCOLS:
        raise DomainError(f"unknown protocol {protocol!r}; expected one of {SINGLE_PROTOCOLS}")
    channel, _ = channel_teleport(2)
    owners = qis_single_assignments()[protocol].shifted(1)
    alice = (1,) + owners[Party.ALICE]
    bob = owners[Party.BOB]
    if protocol == "i":
        # Bell pair on (input, Alice) then Bob's three qubits
        a_basis, a_bits, b_basis, b_bits = bell_basis(), 2, ghz_pair_basis(), 2
    elif protocol == "ii":
        # only the first four three-particle outcomes can occur, so 2 cbits suffice
        a_basis, a_bits, b_basis, b_bits = three_particle_basis(), 2, bell_basis(), 2
    else:
        a_basis, a_bits, b_basis, b_bits = four_particle_basis(), 3, hadamard_basis(), 1
    return channel, [
        Step(Party.ALICE, alice, a_basis, a_bits, Party.CHARLIE),
        Step(Party.BOB, bob, b_basis, b_bits, Party.CHARLIE),
    ]


def single_correction(protocol: str, alice: int, bob: int) -> PauliString:
    return _P[SINGLE_CORRECTIONS[protocol][(alice, bob)]]


def qis_single_branches(protocol: str, state: StateVector) -> list[Branch]:
    _check_input(state, 1)
    channel, steps = single_steps(protocol)
    return enumerate_branches(
        tensor(state, channel), steps, lambda o: single_correction(protocol, *o), state
    )


def qis_single(protocol: str, state: StateVector, rng=None) -> ProtocolTranscript:
    _check_input(state, 1)
    rng, seed = as_rng(rng)
    channel, steps = single_steps(protocol)
    branch = sample_branch(
        tensor(state, channel), steps, lambda o: single_correction(protocol, *o), state, rng
    )
    return transcript(f"qis-{protocol}", 1, seed, steps, branch)


# -- N-qubit splitting -------------------------------------------------------


def qis_correction(N: int, alice: int, bob: int) -> PauliString:
    """Teleportation fix for ``alice``, plus Z on Charlie's first qubit when Bob saw ``|->``."""
    c = correction_for(N, alice)
    if bob:
        c = PauliString(N, c.x_mask, c.z_mask ^ (1 << (N - 1)))
    return c


def qis_n_steps(N: int) -> tuple[StateVector, list[Step]]:
    channel, parties = channel_qis(N)
    owners = parties.shifted(N)
    alice = tuple(range(1, N + 1)) + owners[Party.ALICE]
    return channel, [
        Step(Party.ALICE, alice, omega_basis_qis(N), 2 * N, Party.CHARLIE),
        Step(Party.BOB, owners[Party.BOB], hadamard_basis(), 1, Party.CHARLIE),
    ]


def qis_n_branches(state: StateVector, N: int) -> list[Branch]:
    _check_input(state, N)
    channel, steps = qis_n_steps(N)
    return enumerate_branches(tensor(state, channel), steps, lambda o: qis_correction(N, *o), state)


def qis_n(state: StateVector, N: int, rng=None) -> ProtocolTranscript:
    _check_input(state, N)
    rng, seed = as_rng(rng)
    channel, steps = qis_n_steps(N)
    branch = sample_branch(tensor(state, channel), steps, lambda o: qis_correction(N, *o), state, rng)
    return transcript("qis-n", N, seed, steps, branch)


def qis_two(state: StateVector, rng=None) -> ProtocolTranscript:
    t = qis_n(state, 2, rng)
    t.protocol_id = "qis-two"
    return t


def qis_two_branches(state: StateVector) -> list[Branch]:
    return qis_n_branches(state, 2)


# -- secrecy -----------------------------------------------------------------

SECRECY_PROTOCOLS = SINGLE_PROTOCOLS + ("two", "n", "teleport")


def _setup(protocol: str, N: int):
    """(input size, channel, steps, parties-with-positions in the combined register)."""
    if protocol in SINGLE_PROTOCOLS:
        channel, steps = single_steps(protocol)
        owners = qis_single_assignments()[protocol].shifted(1)
        return 1, channel, steps, owners
    if protocol in ("two", "n"):
        n = 2 if protocol == "two" else N
        channel, steps = qis_n_steps(n)
        return n, channel, steps, channel_qis(n)[1].shifted(n)
    if protocol == "teleport":
        channel, steps = teleport_steps(N)
        return N, channel, steps, channel_teleport(N)[1].shifted(N)
    raise DomainError(f"unknown protocol {protocol!r}")


def _averaged_after_first_step(combined: StateVector, step: Step, keep: tuple[int, ...]) -> DensityMatrix:
    """Reduced state of ``keep`` after the first measurement, averaged over its outcomes."""
    proj = project(combined, list(step.positions), step.basis)
    local = [proj.complement.index(p) + 1 for p in keep]
    d = 1 << len(keep)
    rho = np.zeros((d, d), dtype=np.complex128)
    for k, p in enumerate(proj.probabilities):
        if p > 1e-14:
            rho += p * partial_trace(proj.post_state(k), local).entries
    return DensityMatrix(len(keep), rho)


def _max_pairwise(mats: list[DensityMatrix]) -> float:
    return max((trace_distance(a, b) for a, b in combinations(mats, 2)), default=0.0)


def secrecy_check(protocol: str, N: int = 1, trials: int = 10, rng=None) -> VerificationReport:
    """Is every helper's view independent of the secret input?

    For each party other than the dealer, the reduced state of its qubits
    before anyone measures is compared across ``trials`` Haar-random inputs.
    The receiver's state after the dealer's measurement, averaged over the
    dealer's outcomes (nothing announced yet), is compared the same way.
    Each check is a max trace distance against 1e-10.
    """
    if trials < 2:
        raise DomainError("need at least two inputs to compare")
    rng, _ = as_rng(rng)
    n_in, channel, steps, owners = _setup(protocol, N)
    receiver = Party.BOB if protocol == "teleport" else Party.CHARLIE
    inputs = [haar_random_state(n_in, rng) for _ in range(trials)]
    combined = [tensor(s, channel) for s in inputs]

    report = VerificationReport(f"secrecy:{protocol}" + (f"(N={N})" if protocol in ("n", "teleport") else ""))
    for party in (Party.BOB, Party.CHARLIE):
        pos = owners[party]
        if not pos:
            continue
        mats = [partial_trace(c, pos) for c in combined]
        report.below(f"{party.name.lower()}_pre_measurement", _max_pairwise(mats), 1e-10)
    mats = [_averaged_after_first_step(c, steps[0], owners[receiver]) for c in combined]
    report.below(f"{receiver.name.lower()}_after_{steps[0].party.name.lower()}_averaged", _max_pairwise(mats), 1e-10)
    return report
