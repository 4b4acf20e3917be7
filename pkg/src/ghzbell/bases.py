"""Named states, the GHZ-Bell channels, party layouts and measurement bases.

Channel layout for ``N``: the GHZ state ``xi+`` sits on positions 1, 2, 3 and
the m-th Bell pair ``psi+`` (m = 1..N-1) on positions ``2m+2, 2m+3``. In the
teleportation/superdense layout Alice owns 1, 2 and every even position from
4 on; Bob owns 3 and the odd positions from 5 on.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .errors import DomainError
from .statevec import (
    MeasurementBasis,
    PauliString,
    QubitPermutation,
    StateVector,
    apply_pauli,
    basis_state,
    permute,
    tensor,
)

__all__ = [
    "BitString",
    "MeasurementBasis",
    "Party",
    "PartyAssignment",
    "bell_basis",
    "channel_qis",
    "channel_teleport",
    "fixed_bases",
    "hadamard_basis",
    "named_state",
    "omega_basis_qis",
    "omega_basis_teleport",
    "omega_qis_placement",
    "omega_teleport_placement",
    "qis_single_assignments",
    "superdense_basis",
]

_S = 1 / np.sqrt(2)

# name -> (first ket, second ket); the state is (|first> +/- |second>)/sqrt2
_PAIRS = {
    "xi": ("000", "111"),
    "chi": ("011", "100"),
    "vartheta": ("010", "101"),
    "theta": ("001", "110"),
    "psi": ("00", "11"),
    "phi": ("01", "10"),
}
_ALIASES = {"ξ": "xi", "χ": "chi", "ϑ": "vartheta", "θ": "theta", "ψ": "psi", "φ": "phi"}


def named_state(name: str) -> StateVector:
    """One of the eight GHZ-type or four Bell-type states, e.g. ``"xi+"`` or ``"φ-"``.

    ``xi/chi/vartheta/theta`` are three-qubit, ``psi/phi`` two-qubit. Note that
    here ``psi+ = (|00>+|11>)/sqrt2`` and ``phi+ = (|01>+|10>)/sqrt2``.
    """
    name = name.strip().replace("⁺", "+").replace("⁻", "-")
    if len(name) < 2 or name[-1] not in "+-":
        raise DomainError(f"unknown state name {name!r}")
    stem, sign = name[:-1], name[-1]
    stem = _ALIASES.get(stem, stem)
    if stem not in _PAIRS:
        raise DomainError(f"unknown state name {name!r}")
    a, b = _PAIRS[stem]
    s = 1.0 if sign == "+" else -1.0
    return StateVector.from_kets([(_S, a), (s * _S, b)])


def state_names(num_qubits: int) -> list[str]:
    stems = [k for k, (a, _) in _PAIRS.items() if len(a) == num_qubits]
    return [f"{stem}{sign}" for stem in stems for sign in "+-"]


class Party(str, enum.Enum):
    ALICE = "A"
    BOB = "B"
    CHARLIE = "C"


@dataclass(frozen=True)
class PartyAssignment:
    num_qubits: int
    owner: Mapping[int, Party]

    def __post_init__(self):
        owner = {int(p): Party(v) for p, v in dict(self.owner).items()}
        if sorted(owner) != list(range(1, self.num_qubits + 1)):
            raise DomainError("every position 1..num_qubits needs exactly one owner")
        object.__setattr__(self, "owner", owner)

    @classmethod
    def from_groups(cls, num_qubits: int, **groups) -> PartyAssignment:
        """``from_groups(5, A=[1, 2, 4], B=[3, 5])``."""
        owner = {}
        for party, positions in groups.items():
            for p in positions:
                if p in owner:
                    raise DomainError(f"position {p} assigned twice")
                owner[p] = Party(party)
        return cls(num_qubits, owner)

    def positions(self, party: Party | str) -> tuple[int, ...]:
        party = Party(party)
        return tuple(p for p in sorted(self.owner) if self.owner[p] is party)

    def count(self, party: Party | str) -> int:
        return len(self.positions(party))

    def shifted(self, offset: int) -> dict[Party, tuple[int, ...]]:
        """Positions per party after ``offset`` qubits are prepended."""
        return {party: tuple(p + offset for p in self.positions(party)) for party in Party}


@dataclass(frozen=True)
class BitString:
    """``a_length ... a_2 a_1`` with ``a_1`` the least significant bit."""

    length: int
    value: int

    def __post_init__(self):
        if self.length < 1:
            raise DomainError("bit string length must be positive")
        if not 0 <= self.value < 1 << self.length:
            raise DomainError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def parse(cls, text: str) -> BitString:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise DomainError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def all(cls, length: int):
        return (cls(length, v) for v in range(1 << length))

    def bit(self, k: int) -> int:
        """``a_k`` for k = 1..length."""
        if not 1 <= k <= self.length:
            raise DomainError(f"bit index {k} outside 1..{self.length}")
        return self.value >> (k - 1) & 1

    def __str__(self):
        return format(self.value, f"0{self.length}b")


# -- channels ----------------------------------------------------------------


def _check_n(N: int):
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")


@lru_cache(maxsize=None)
def _ghz_bell_product(N: int) -> StateVector:
    state = named_state("xi+")
    bell = named_state("psi+")
    for _ in range(N - 1):
        state = tensor(state, bell)
    return state


def channel_teleport(N: int) -> tuple[StateVector, PartyAssignment]:
    """``xi+ (x) psi+^(N-1)`` on 2N+1 qubits; Alice holds N+1, Bob N."""
    _check_n(N)
    alice = [1, 2] + [2 * m + 2 for m in range(1, N)]
    bob = [3] + [2 * m + 3 for m in range(1, N)]
    return _ghz_bell_product(N), PartyAssignment.from_groups(2 * N + 1, A=alice, B=bob)


def channel_qis(N: int) -> tuple[StateVector, PartyAssignment]:
    """Same state as :func:`channel_teleport`; GHZ split A/B/C, Bell pairs A/C."""
    _check_n(N)
    alice = [1] + [2 * m + 2 for m in range(1, N)]
    charlie = [3] + [2 * m + 3 for m in range(1, N)]
    return _ghz_bell_product(N), PartyAssignment.from_groups(2 * N + 1, A=alice, B=[2], C=charlie)


def qis_single_assignments() -> dict[str, PartyAssignment]:
    """Three ways to split the five-qubit channel for single-qubit splitting."""
    return {
        "i": PartyAssignment.from_groups(5, A=[1], B=[2, 3, 4], C=[5]),
        "ii": PartyAssignment.from_groups(5, A=[1, 2], B=[3, 4], C=[5]),
        "iii": PartyAssignment.from_groups(5, A=[1, 2, 4], B=[3], C=[5]),
    }


# -- generated basis families ----------------------------------------------


@lru_cache(maxsize=None)
def superdense_basis(N: int) -> MeasurementBasis:
    """All ``2^(2N+1)`` encodings of the channel, ordered by the encoded value."""
    from .superdense import encode_pauli

    _check_n(N)
    zeta0, _ = channel_teleport(N)
    width = 2 * N + 1
    elements = tuple(apply_pauli(zeta0, encode_pauli(N, BitString(width, j))) for j in range(1 << width))
    return MeasurementBasis(f"superdense(N={N})", width, elements)


def omega_teleport_placement(N: int) -> QubitPermutation:
    """Where the factors of ``xi+ (x) psi+^(N-1)`` go in Alice's register.

    Alice's register is (input qubits 1..N, her channel qubits ascending), so
    slot N+1 and N+2 are her GHZ qubits and slot N+2+m her half of Bell pair m.
    The GHZ factor pairs input 1 with both GHZ slots; Bell factor m pairs input
    m+1 with slot N+2+m. For N=2 this is ``[1, 4, 3, 2, 5]``.
    """
    _check_n(N)
    placement = [1, N + 2, N + 1]
    for m in range(1, N):
        placement += [m + 1, N + 2 + m]
    return QubitPermutation(2 * N + 1, tuple(placement))


def omega_qis_placement(N: int) -> QubitPermutation:
    """Bell factor k of ``psi+^N`` on slots ``(k, N+k)``."""
    _check_n(N)
    placement = []
    for k in range(1, N + 1):
        placement += [k, N + k]
    return QubitPermutation(2 * N, tuple(placement))


def omega_pauli(num_qubits: int, N: int, j: int) -> PauliString:
    """``(x)_k Z_k^{b_k} X_k^{b_(k+N)}`` on slots 1..N, with ``j = b_2N ... b_1``."""
    if not 0 <= j < 1 << (2 * N):
        raise DomainError(f"outcome index {j} outside 0..{(1 << 2 * N) - 1}")
    z = [k for k in range(1, N + 1) if j >> (k - 1) & 1]
    x = [k for k in range(1, N + 1) if j >> (k + N - 1) & 1]
    return PauliString.from_positions(num_qubits, x=x, z=z)


def _omega_family(omega0: StateVector, N: int, label: str) -> MeasurementBasis:
    n = omega0.num_qubits
    elements = tuple(apply_pauli(omega0, omega_pauli(n, N, j)) for j in range(1 << (2 * N)))
    return MeasurementBasis(label, n, elements)


@lru_cache(maxsize=None)
def omega_basis_teleport(N: int) -> MeasurementBasis:
    _check_n(N)
    omega0 = permute(_ghz_bell_product(N), omega_teleport_placement(N))
    return _omega_family(omega0, N, f"omega-teleport(N={N})")


@lru_cache(maxsize=None)
def omega_basis_qis(N: int) -> MeasurementBasis:
    _check_n(N)
    bell = named_state("psi+")
    state = bell
    for _ in range(N - 1):
        state = tensor(state, bell)
    omega0 = permute(state, omega_qis_placement(N))
    return _omega_family(omega0, N, f"omega-qis(N={N})")


# -- fixed bases -------------------------------------------------------------


def _pm_basis(label: str, pairs: list[tuple[str, str]], norm: float = _S) -> MeasurementBasis:
    elements = []
    for a, b in pairs:
        for s in (1.0, -1.0):
            elements.append(StateVector.from_kets([(norm, a), (s * norm, b)]))
    return MeasurementBasis(label, len(pairs[0][0]), tuple(elements))


def bell_basis() -> MeasurementBasis:
    """``psi+, psi-, phi+, phi-``."""
    return MeasurementBasis("bell", 2, tuple(named_state(s) for s in ("psi+", "psi-", "phi+", "phi-")))


def hadamard_basis() -> MeasurementBasis:
    """``|+>, |->``."""
    plus = StateVector.from_kets([(_S, "0"), (_S, "1")])
    minus = StateVector.from_kets([(_S, "0"), (-_S, "1")])
    return MeasurementBasis("hadamard", 1, (plus, minus))


def table2_basis() -> MeasurementBasis:
    """Five-particle basis of the single-qubit teleportation, in table order."""
    rows = [
        [(+1, "00000"), (+1, "01110"), (+1, "10001"), (+1, "11111")],
        [(+1, "00000"), (+1, "01110"), (-1, "10001"), (-1, "11111")],
        [(+1, "00001"), (+1, "01111"), (+1, "10000"), (+1, "11110")],
        [(+1, "00001"), (+1, "01111"), (-1, "10000"), (-1, "11110")],
    ]
    elements = tuple(StateVector.from_kets([(0.5 * s, k) for s, k in row]) for row in rows)
    return MeasurementBasis("table-ii", 5, elements)


def three_particle_basis() -> MeasurementBasis:
    """``000+-111, 011+-100, 001+-110, 010+-101`` (plus before minus)."""
    return _pm_basis("three-particle", [("000", "111"), ("011", "100"), ("001", "110"), ("010", "101")])


def four_particle_basis() -> MeasurementBasis:
    """``0000+-1111, 0110+-1001, 0001+-1110, 1000+-0111`` (plus before minus)."""
    return _pm_basis(
        "four-particle", [("0000", "1111"), ("0110", "1001"), ("0001", "1110"), ("1000", "0111")]
    )


def ghz_pair_basis() -> MeasurementBasis:
    """Bob's three-particle basis, in table order: ``000+111, 001+110, 000-111, 001-110``."""
    ket = lambda s, a, b: StateVector.from_kets([(_S, a), (s * _S, b)])  # noqa: E731
    elements = (ket(1, "000", "111"), ket(1, "001", "110"), ket(-1, "000", "111"), ket(-1, "001", "110"))
    return MeasurementBasis("ghz-pair", 3, elements)


def fixed_bases() -> dict[str, MeasurementBasis]:
    return {
        "table-ii": table2_basis(),
        "three-particle": three_particle_basis(),
        "four-particle": four_particle_basis(),
        "bell": bell_basis(),
        "ghz-pair": ghz_pair_basis(),
        "hadamard": hadamard_basis(),
    }


def computational_basis(num_qubits: int) -> MeasurementBasis:
    return MeasurementBasis(
        f"computational({num_qubits})",
        num_qubits,
        tuple(basis_state(num_qubits, i) for i in range(1 << num_qubits)),
    )
