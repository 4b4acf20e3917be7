"""Superdense coding of 2N+1 classical bits through N+1 transmitted qubits."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bases import (
    BitString,
    Party,
    channel_teleport,
    named_state,
    state_names,
    superdense_basis,
)
from .errors import DomainError
from .render import format_ket_sum
from .statevec import (
    PauliString,
    StateVector,
    apply_pauli,
    canonical_phase,
    fidelity,
    measure_in_basis,
    tensor,
)


def _as_bits(N: int, bits) -> BitString:
    if isinstance(bits, str):
        bits = BitString.parse(bits)
    elif isinstance(bits, (int, np.integer)):
        bits = BitString(2 * N + 1, int(bits))
    if bits.length != 2 * N + 1:
        raise DomainError(f"N={N} encodes exactly {2 * N + 1} bits, got {bits.length}")
    return bits


def x_position(l: int) -> int:
    """Qubit flipped by bit ``a_(l+N)``: 1, 2, 4, 6, ..., 2N for l = 1..N+1."""
    return 1 if l == 1 else 2 * l - 2


def encode_pauli(N: int, bits: BitString | str | int) -> PauliString:
    """Alice's encoding operator for ``a_(2N+1) ... a_1``, in global positions.

    ``a_k`` (k <= N) puts Z on qubit 2k; ``a_(N+l)`` puts X on
    :func:`x_position` ``(l)``.
    """
    bits = _as_bits(N, bits)
    z = [2 * k for k in range(1, N + 1) if bits.bit(k)]
    x = [x_position(l) for l in range(1, N + 2) if bits.bit(l + N)]
    return PauliString.from_positions(2 * N + 1, x=x, z=z)


def encode(N: int, bits: BitString | str | int) -> StateVector:
    zeta0, _ = channel_teleport(N)
    return apply_pauli(zeta0, encode_pauli(N, bits))


def decode(state: StateVector, N: int, rng: np.random.Generator) -> BitString:
    """Bob's joint measurement of all 2N+1 qubits in the encoding basis."""
    if state.num_qubits != 2 * N + 1:
        raise DomainError(f"expected {2 * N + 1} qubits, got {state.num_qubits}")
    basis = superdense_basis(N)
    k, _, _ = measure_in_basis(state, list(range(1, 2 * N + 2)), basis, rng)
    return BitString(2 * N + 1, k)


def decode_lookup(state: StateVector, N: int) -> BitString:
    """Cross-check decoder: pick the basis element with the largest overlap."""
    overlaps = np.abs(superdense_basis(N).matrix.conj() @ state.amplitudes)
    return BitString(2 * N + 1, int(np.argmax(overlaps)))


@dataclass(frozen=True)
class CapacityReport:
    N: int
    num_states: int
    all_orthonormal: bool
    alice_qubit_count: int
    gram_deviation: float
    local_to_alice: bool

    @property
    def bits(self) -> int:
        return 2 * self.N + 1

    @property
    def ratio(self) -> Fraction:
        """Classical bits per transmitted qubit."""
        return Fraction(self.bits, self.alice_qubit_count)


def capacity_check(N: int) -> CapacityReport:
    basis = superdense_basis(N)
    _, parties = channel_teleport(N)
    alice = set(parties.positions(Party.ALICE))
    local = all(
        set(encode_pauli(N, b).support) <= alice for b in BitString.all(2 * N + 1)
    )
    return CapacityReport(
        N=N,
        num_states=len(basis),
        all_orthonormal=basis.is_orthonormal(),
        alice_qubit_count=len(alice),
        gram_deviation=basis.gram_deviation,
        local_to_alice=local,
    )


# -- table rendering ---------------------------------------------------------


def factor_names(state: StateVector) -> list[str]:
    """Name the GHZ factor on (1,2,3) and each Bell factor on (2m+2, 2m+3)."""
    n = state.num_qubits
    blocks = [3] + [2] * ((n - 3) // 2)
    names = []
    rest = state
    for size in blocks:
        for name in state_names(size):
            cand = named_state(name)
            if rest.num_qubits == size:
                if fidelity(cand, rest) > 1 - 1e-9:
                    names.append(name)
                    break
                continue
            # contract the leading block with the candidate
            m = rest.amplitudes.reshape(1 << size, -1)
            tail = cand.amplitudes.conj() @ m
            if np.linalg.norm(tail) ** 2 > 1 - 1e-9:
                names.append(name)
                rest = StateVector(rest.num_qubits - size, tail)
                break
        else:
            raise DomainError("state does not factor into named GHZ and Bell states")
    return names


def table_rows(N: int) -> list[dict]:
    """Regenerate the encoding table: bits, operator, state and its factorization.

    The operator column uses Alice-local qubit numbers (her k-th qubit is
    ``k``), states are shown with the lowest ket positive.
    """
    _, parties = channel_teleport(N)
    alice = parties.positions(Party.ALICE)
    local = {p: i for i, p in enumerate(alice, start=1)}
    relabel = [local.get(p, p) for p in range(1, 2 * N + 2)]
    rows = []
    for bits in BitString.all(2 * N + 1):
        op = encode_pauli(N, bits)
        state = canonical_phase(encode(N, bits))
        rows.append(
            {
                "bits": str(bits),
                "operator": op.label(relabel),
                "state": state,
                "factors": factor_names(state),
            }
        )
    return rows


def table_text(N: int) -> str:
    lines = []
    for row in table_rows(N):
        lines.append(
            f"{row['bits']} {row['operator']} {format_ket_sum(row['state'])} {' '.join(row['factors'])}"
        )
    return "\n".join(lines) + "\n"


def product_state(*names: str) -> StateVector:
    states = [named_state(n) for n in names]
    return tensor(*states) if len(states) > 1 else states[0]
