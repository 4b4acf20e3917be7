import numpy as np
import pytest

from conftest import ket
from ghzbell.errors import DomainError
from ghzbell.protocol import outcome_distribution
from ghzbell.statevec import (
    PauliString,
    StateVector,
    basis_state,
    fidelity,
    haar_random_state,
    tensor,
    trial_rng,
)
from ghzbell.teleport import (
    FIVEQUBIT_CORRECTIONS,
    correction_for,
    fivequbit_branches,
    fivequbit_steps,
    teleport_1_fivequbit,
    teleport_2,
    teleport_n,
    teleport_n_branches,
    teleport_steps,
)
from ghzbell.verify import search_correction


def test_correction_for_examples():
    assert correction_for(2, 12) == PauliString.from_positions(2, x=[1, 2])
    assert correction_for(2, 0).is_identity and correction_for(3, 0).is_identity
    assert correction_for(2, 1) == PauliString.from_positions(2, z=[1])
    with pytest.raises(DomainError):
        correction_for(2, 16)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_correction_rule_matches_exhaustive_search(N):
    psi = haar_random_state(N, trial_rng(11, N))
    for b in teleport_n_branches(psi, N):
        assert search_correction(psi, range(1, N + 1), b.pre_correction) == b.correction


def test_n1_outcome_zero_needs_no_correction():
    alpha, beta = 0.6, 0.8j
    psi = StateVector(1, [alpha, beta])
    b0 = teleport_n_branches(psi, 1)[0]
    assert b0.outcomes == (0,)
    assert fidelity(b0.pre_correction, psi) == pytest.approx(1.0)


def test_n1_ground_input_uniform():
    branches = teleport_n_branches(basis_state(1, 0), 1)
    assert [b.probability for b in branches] == pytest.approx([0.25] * 4)
    assert all(b.fidelity > 1 - 1e-10 for b in branches)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_every_branch_succeeds(N):
    for t in range(25 if N < 4 else 5):
        psi = haar_random_state(N, trial_rng(3, t))
        branches = teleport_n_branches(psi, N)
        assert len(branches) == 4**N
        assert min(b.fidelity for b in branches) >= 1 - 1e-10
        assert max(abs(b.probability - 4.0**-N) for b in branches) < 1e-10


def test_outcome_distribution_is_analytic():
    psi = haar_random_state(2, np.random.default_rng(1))
    channel, steps = teleport_steps(2)
    probs = outcome_distribution(tensor(psi, channel), steps[0])
    assert np.allclose(probs, 1 / 16, atol=1e-12)


def test_teleport_2_transcript():
    psi = haar_random_state(2, np.random.default_rng(5))
    t = teleport_2(psi, 99)
    assert t.seed == 99
    assert t.cbits == 4
    assert t.fidelity >= 1 - 1e-10
    assert t.labels["table_row"] == f"Omega_{t.outcome_indices[0]}"
    assert t.classical_messages[0].payload == format(t.outcome_indices[0], "04b")
    again = teleport_2(psi, 99)
    assert again.outcome_indices == t.outcome_indices


def test_table_iii_row_five_bob_state():
    a, g, m, b = 0.1, 0.3 + 0.2j, -0.5, 0.7
    psi = StateVector(2, np.array([a, g, m, b]) / np.linalg.norm([a, g, m, b]))
    branch = teleport_n_branches(psi, 2)[5]
    expected = StateVector(2, np.array([-m, -b, a, g]) / np.linalg.norm([a, g, m, b]))
    assert fidelity(branch.pre_correction, expected) == pytest.approx(1.0, abs=1e-12)
    assert search_correction(psi, [1, 2], branch.pre_correction) == branch.correction


def test_teleport_n_cbits_and_sizes():
    for N in (1, 2, 3):
        t = teleport_n(haar_random_state(N, np.random.default_rng(N)), N, np.random.default_rng(0))
        assert t.cbits == 2 * N
        assert t.final_state.num_qubits == N
        assert len(t.corrections) == 1 and t.corrections[0].num_qubits == N


def test_teleport_input_validation():
    with pytest.raises(DomainError):
        teleport_n(StateVector(1, [1, 1]), 1)
    with pytest.raises(DomainError):
        teleport_n(basis_state(2, 0), 1)


def test_linearity_spot_check():
    rng = np.random.default_rng(17)
    basis_runs = [teleport_n_branches(basis_state(2, i), 2) for i in range(4)]
    for _ in range(5):
        c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        c /= np.linalg.norm(c)
        sup = teleport_n_branches(StateVector(2, c), 2)
        for j, branch in enumerate(sup):
            combo = sum(ci * runs[j].final.amplitudes for ci, runs in zip(c, basis_runs))
            assert fidelity(branch.final, StateVector(2, combo)) == pytest.approx(1.0, abs=1e-10)


# -- five-qubit variant ---------------------------------------------------------


def test_fivequbit_rows():
    alpha, beta = 0.6, 0.8
    psi = StateVector(1, [alpha, beta])
    branches = fivequbit_branches(psi)
    bob = [b.pre_correction for b in branches]
    assert bob[0].allclose(psi)
    assert fidelity(bob[3], ket((-beta, "0"), (alpha, "1"))) == pytest.approx(1.0)
    assert [b.correction for b in branches] == list(FIVEQUBIT_CORRECTIONS)
    assert [b.correction.label() for b in branches] == ["I", "Z1", "X1", "Z1X1"]


def test_fivequbit_plus_input_uniform():
    plus = ket((1, "0"), (1, "1"))
    assert [b.probability for b in fivequbit_branches(plus)] == pytest.approx([0.25] * 4)


def test_fivequbit_corrections_from_search():
    psi = haar_random_state(1, np.random.default_rng(4))
    for b in fivequbit_branches(psi):
        assert search_correction(psi, [1], b.pre_correction) == b.correction


def test_fivequbit_transcript():
    t = teleport_1_fivequbit(ket((1, "0"), (1j, "1")), 3)
    assert t.cbits == 2 and t.fidelity >= 1 - 1e-10
    assert t.labels["table_row"] == t.outcome_indices[0] + 1
    _, steps = fivequbit_steps()
    assert steps[0].positions == (1, 2, 3, 4, 5)
