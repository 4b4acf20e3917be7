"""State-vector simulation of superdense coding, teleportation and
quantum information splitting over a GHZ state joined with Bell pairs."""
from .bases import (
    BitString,
    Party,
    PartyAssignment,
    channel_qis,
    channel_teleport,
    named_state,
    omega_basis_qis,
    omega_basis_teleport,
    superdense_basis,
)
from .errors import DomainError, ProtocolError
from .protocol import ProtocolTranscript
from .qis import qis_n, qis_single, qis_two, secrecy_check
from .statevec import (
    DensityMatrix,
    MeasurementBasis,
    PauliString,
    QubitPermutation,
    StateVector,
    apply_pauli,
    fidelity,
    haar_random_state,
    measure_in_basis,
    partial_trace,
    permute,
    tensor,
)
from .superdense import capacity_check, decode, encode
from .teleport import teleport_1_fivequbit, teleport_2, teleport_n
from .verify import VerificationReport, check_orthonormal, decompose, entanglement_report, search_correction

__all__ = [
    "BitString", "Party", "PartyAssignment", "channel_qis", "channel_teleport", "named_state",
    "omega_basis_qis", "omega_basis_teleport", "superdense_basis",
    "DomainError", "ProtocolError", "ProtocolTranscript",
    "qis_n", "qis_single", "qis_two", "secrecy_check",
    "DensityMatrix", "MeasurementBasis", "PauliString", "QubitPermutation", "StateVector",
    "apply_pauli", "fidelity", "haar_random_state", "measure_in_basis", "partial_trace", "permute", "tensor",
    "capacity_check", "decode", "encode",
    "teleport_1_fivequbit", "teleport_2", "teleport_n",
    "VerificationReport", "check_orthonormal", "decompose", "entanglement_report", "search_correction",
]
