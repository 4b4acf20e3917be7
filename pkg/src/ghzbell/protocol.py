"""Measurement sequences, branch enumeration and run transcripts.

A protocol is a list of :class:`Step` measurements on a combined register
(input qubits first, then the channel), followed by a Pauli correction on
whatever qubits survive. Sampling and enumeration both go through
:func:`ghzbell.statevec.project`, so they cannot disagree about probabilities.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bases import MeasurementBasis, Party
from .errors import ProtocolError
from .statevec import (
    PauliString,
    StateVector,
    apply_pauli,
    check_support,
    fidelity,
    project,
    sample_outcome,
)

BRANCH_CUTOFF = 1e-12

# correction as a function of the outcome tuple
CorrectionRule = Callable[[tuple[int, ...]], PauliString]


@dataclass(frozen=True, eq=False)
class Step:
    party: Party
    positions: tuple[int, ...]  # global positions in the combined register
    basis: MeasurementBasis
    cbits: int
    receiver: Party

    def payload(self, outcome: int) -> str:
        if outcome >= 1 << self.cbits:
            raise ProtocolError(
                f"outcome {outcome} of {self.basis.label!r} does not fit in {self.cbits} cbits"
            )
        return format(outcome, f"0{self.cbits}b")


@dataclass(frozen=True)
class ClassicalMessage:
    sender: str
    receiver: str
    bits: int
    payload: str


@dataclass(frozen=True, eq=False)
class Branch:
    outcomes: tuple[int, ...]
    probabilities: tuple[float, ...]  # conditional probability of each step
    pre_correction: StateVector
    correction: PauliString
    final: StateVector
    fidelity: float

    @property
    def probability(self) -> float:
        return float(np.prod(self.probabilities))


@dataclass
class ProtocolTranscript:
    protocol_id: str
    N: int
    seed: int | None
    outcome_indices: list[int]
    classical_messages: list[ClassicalMessage]
    corrections: list[PauliString]
    fidelity: float
    probability: float
    final_state: StateVector | None = field(default=None, repr=False)
    labels: dict = field(default_factory=dict)

    @property
    def cbits(self) -> int:
        return sum(m.bits for m in self.classical_messages)

    def to_dict(self) -> dict:
        return {
            "protocol_id": self.protocol_id,
            "N": self.N,
            "seed": self.seed,
            "outcome_indices": list(self.outcome_indices),
            "classical_messages": [
                {"sender": m.sender, "receiver": m.receiver, "bits": m.bits, "payload": m.payload}
                for m in self.classical_messages
            ],
            "corrections": [c.label() for c in self.corrections],
            "fidelity": self.fidelity,
            "probability": self.probability,
            **({"labels": self.labels} if self.labels else {}),
        }


def _local(alive: Sequence[int], positions: Sequence[int]) -> list[int]:
    try:
        return [alive.index(p) + 1 for p in positions]
    except ValueError as exc:
        raise ProtocolError(f"positions {positions} were already measured") from exc


def _finish(outcomes, probs, state, rule, target) -> Branch:
    corr = rule(tuple(outcomes))
    final = apply_pauli(state, corr)
    return Branch(tuple(outcomes), tuple(probs), state, corr, final, fidelity(final, target))


def enumerate_branches(
    combined: StateVector,
    steps: Sequence[Step],
    rule: CorrectionRule,
    target: StateVector,
) -> list[Branch]:
    """Every outcome sequence with nonzero probability, outcome-major order."""
    out: list[Branch] = []

    def walk(state, alive, depth, outcomes, probs):
        if depth == len(steps):
            out.append(_finish(outcomes, probs, state, rule, target))
            return
        step = steps[depth]
        proj = project(state, _local(alive, step.positions), step.basis)
        check_support(proj, step.basis.label)
        remaining = [alive[i - 1] for i in proj.complement]
        for k, p in enumerate(proj.probabilities):
            if p > BRANCH_CUTOFF:
                walk(proj.post_state(k), remaining, depth + 1, outcomes + [k], probs + [float(p)])

    walk(combined, list(range(1, combined.num_qubits + 1)), 0, [], [])
    return out


def sample_branch(
    combined: StateVector,
    steps: Sequence[Step],
    rule: CorrectionRule,
    target: StateVector,
    rng: np.random.Generator,
) -> Branch:
    state, alive = combined, list(range(1, combined.num_qubits + 1))
    outcomes, probs = [], []
    for step in steps:
        proj = project(state, _local(alive, step.positions), step.basis)
        check_support(proj, step.basis.label)
        k = sample_outcome(proj.probabilities, rng)
        outcomes.append(k)
        probs.append(float(proj.probabilities[k]))
        alive = [alive[i - 1] for i in proj.complement]
        state = proj.post_state(k)
    return _finish(outcomes, probs, state, rule, target)


def as_rng(rng) -> tuple[np.random.Generator, int | None]:
    """Accept a Generator, an integer seed or None."""
    if isinstance(rng, np.random.Generator):
        return rng, None
    if rng is None:
        return np.random.default_rng(), None
    seed = int(rng)
    return np.random.default_rng(seed), seed


def transcript(
    protocol_id: str,
    N: int,
    seed: int | None,
    steps: Sequence[Step],
    branch: Branch,
    labels: dict | None = None,
) -> ProtocolTranscript:
    messages = [
        ClassicalMessage(s.party.name.lower(), s.receiver.name.lower(), s.cbits, s.payload(k))
        for s, k in zip(steps, branch.outcomes)
    ]
    return ProtocolTranscript(
        protocol_id=protocol_id,
        N=N,
        seed=seed,
        outcome_indices=list(branch.outcomes),
        classical_messages=messages,
        corrections=[branch.correction],
        fidelity=branch.fidelity,
        probability=branch.probability,
        final_state=branch.final,
        labels=labels or {},
    )


def outcome_distribution(combined: StateVector, step: Step) -> np.ndarray:
    """Born probabilities of the first measurement, without sampling."""
    proj = project(combined, list(step.positions), step.basis)
    check_support(proj, step.basis.label)
    return proj.probabilities
