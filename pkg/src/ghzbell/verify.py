"""Brute-force oracles and verification reports.

Nothing here imports the protocol modules. :func:`decompose` deliberately uses
explicit index gathering instead of the reshape/transpose path used by
measurement, so the two routes check each other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, ProtocolError
from .statevec import (
    ATOL,
    DensityMatrix,
    MeasurementBasis,
    PauliString,
    StateVector,
    apply_pauli,
    entropy,
    fidelity,
    partial_trace,
    trace_distance,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float
    passed: bool
    relation: str = "<"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "bound": self.bound,
            "relation": self.relation,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def below(self, name: str, value: float, bound: float) -> Check:
        c = Check(name, float(value), float(bound), bool(value < bound), "<")
        self.checks.append(c)
        return c

    def at_least(self, name: str, value: float, bound: float) -> Check:
        c = Check(name, float(value), float(bound), bool(value >= bound), ">=")
        self.checks.append(c)
        return c

    def equals(self, name: str, value: float, expected: float, tol: float = ATOL) -> Check:
        c = Check(name, float(value), float(expected), bool(abs(value - expected) < tol), "~=")
        self.checks.append(c)
        return c

    def truth(self, name: str, ok: bool) -> Check:
        c = Check(name, float(bool(ok)), 1.0, bool(ok), "==")
        self.checks.append(c)
        return c

    def extend(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.value, c.bound, c.passed, c.relation))

    def to_dict(self) -> dict:
        return {"suite": self.suite, "checks": [c.to_dict() for c in self.checks], "pass": self.passed}


def check_orthonormal(basis: MeasurementBasis, atol: float = ATOL) -> VerificationReport:
    m = np.array([e.amplitudes for e in basis.elements])
    gram = m.conj() @ m.T
    dev = float(np.max(np.abs(gram - np.eye(len(m)))))
    report = VerificationReport(f"orthonormal:{basis.label}")
    report.below("max_gram_deviation", dev, atol)
    return report


def basis_rank(basis: MeasurementBasis, atol: float = 1e-8) -> int:
    m = np.array([e.amplitudes for e in basis.elements])
    return int(np.linalg.matrix_rank(m, tol=atol))


# -- decomposition oracle ---------------------------------------------------


def _gather_indices(n: int, subset: Sequence[int], complement: Sequence[int]) -> np.ndarray:
    """``idx[s, c]``: full-register index with ``s`` on subset bits and ``c`` on the rest."""
    k, r = len(subset), len(complement)
    s = np.arange(1 << k)[:, None]
    c = np.arange(1 << r)[None, :]
    idx = np.zeros((1 << k, 1 << r), dtype=np.int64)
    for i, pos in enumerate(subset):
        idx |= ((s >> (k - 1 - i)) & 1) << (n - pos)
    for i, pos in enumerate(complement):
        idx |= ((c >> (r - 1 - i)) & 1) << (n - pos)
    return idx


@dataclass(frozen=True, eq=False)
class Decomposition:
    """``combined = sum_j sqrt(w_j) basis_j (x) residual_j`` plus ``outside_weight``.

    When the subset is the whole register there is no residual state; the
    complex overlap ``<basis_j|combined>`` is kept in ``scalars`` instead.
    """

    num_qubits: int
    subset: tuple[int, ...]
    complement: tuple[int, ...]
    branches: tuple[tuple[int, StateVector | None, float], ...]
    outside_weight: float
    scalars: dict[int, complex] = field(default_factory=dict)

    def __iter__(self) -> Iterator[tuple[int, StateVector, float]]:
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)

    @property
    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.branches))


def decompose(
    combined: StateVector,
    alice_positions: Sequence[int],
    basis: MeasurementBasis,
    cutoff: float = 1e-14,
) -> Decomposition:
    """Split ``combined`` into basis elements on ``alice_positions`` times residuals.

    Branches with weight below ``cutoff`` are dropped; the weight not captured by
    the basis is reported in ``outside_weight``.
    """
    n = combined.num_qubits
    subset = [int(p) for p in alice_positions]
    if len(subset) != basis.subset_size:
        raise DomainError("basis size does not match the number of positions")
    if len(set(subset)) != len(subset) or not all(1 <= p <= n for p in subset):
        raise DomainError(f"bad positions {subset}")
    complement = [p for p in range(1, n + 1) if p not in subset]
    idx = _gather_indices(n, subset, complement)
    block = combined.amplitudes[idx]
    branches = []
    scalars = {}
    captured = 0.0
    for j, e in enumerate(basis.elements):
        r = e.amplitudes.conj() @ block
        w = float(np.vdot(r, r).real)
        captured += w
        if w > cutoff and complement:
            branches.append((j, StateVector(len(complement), r / np.sqrt(w)), w))
        elif w > cutoff:
            branches.append((j, None, w))
            scalars[j] = complex(r[0])
    outside = float(combined.norm() ** 2 - captured)
    return Decomposition(n, tuple(subset), tuple(complement), tuple(branches), outside, scalars)


def reconstruct(decomp: Decomposition, basis: MeasurementBasis) -> StateVector:
    """Reassemble ``sum_j sqrt(w_j) basis_j (x) residual_j`` in the original qubit order."""
    n = decomp.num_qubits
    idx = _gather_indices(n, decomp.subset, decomp.complement)
    amps = np.zeros(1 << n, dtype=np.complex128)
    for j, resid, w in decomp:
        if resid is None:
            amps[idx] += np.outer(basis[j].amplitudes, [decomp.scalars[j]])
        else:
            amps[idx] += np.sqrt(w) * np.outer(basis[j].amplitudes, resid.amplitudes)
    return StateVector(n, amps)


# -- correction search ------------------------------------------------------


def pauli_candidates(num_qubits: int, candidate_qubits: Sequence[int]) -> Iterator[PauliString]:
    """All ``4^k`` X/Z strings supported on ``candidate_qubits``."""
    qubits = list(candidate_qubits)
    for xs, zs in product(product((0, 1), repeat=len(qubits)), repeat=2):
        x = [q for q, b in zip(qubits, xs) if b]
        z = [q for q, b in zip(qubits, zs) if b]
        yield PauliString.from_positions(num_qubits, x=x, z=z)


def search_correction(
    target: StateVector,
    candidate_qubits: Sequence[int],
    actual: StateVector,
    atol: float = ATOL,
) -> PauliString | None:
    """The unique Pauli string P on ``candidate_qubits`` with ``P actual = target`` up to phase.

    Returns None when no candidate works; raises ProtocolError when more than
    one does (the target is too symmetric to pin a correction).
    """
    if target.num_qubits != actual.num_qubits:
        raise DomainError("target and actual differ in size")
    hits = [
        p for p in pauli_candidates(actual.num_qubits, candidate_qubits)
        if fidelity(apply_pauli(actual, p), target) >= 1 - atol
    ]
    if len(hits) > 1:
        raise ProtocolError(f"ambiguous correction: {[h.label() for h in hits]}")
    return hits[0] if hits else None


# -- entanglement -----------------------------------------------------------


def maximally_mixed(num_qubits: int) -> DensityMatrix:
    d = 1 << num_qubits
    return DensityMatrix(num_qubits, np.eye(d) / d)


def entanglement_report(
    state: StateVector,
    partition: tuple[Sequence[int], Sequence[int]],
    expected_entropy: float | None = None,
) -> VerificationReport:
    """Entropy of the smaller side and its distance from maximally mixed.

    With ``expected_entropy`` the entropy is checked against it; when that
    value is the side's qubit count the state must also be maximally mixed.
    """
    a, b = (sorted(set(s)) for s in partition)
    if set(a) & set(b) or sorted(a + b) != list(range(1, state.num_qubits + 1)):
        raise DomainError("partition must split all qubits into two disjoint sides")
    small = a if len(a) <= len(b) else b
    rho = partial_trace(state, small)
    s = entropy(rho)
    dist = trace_distance(rho, maximally_mixed(len(small)))
    report = VerificationReport(f"entanglement:{a}|{b}")
    if expected_entropy is None:
        report.below("entropy_bits", s, len(small) + ATOL)
    else:
        report.equals("entropy_bits", s, expected_entropy)
        if abs(expected_entropy - len(small)) < ATOL:
            report.below("distance_from_maximally_mixed", dist, ATOL)
    report.values.update(entropy=s, distance=dist, side=small)
    return report
