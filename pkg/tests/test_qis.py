import numpy as np
import pytest

from conftest import golden_lines
from ghzbell.errors import DomainError
from ghzbell.qis import (
    SECRECY_PROTOCOLS,
    SINGLE_CORRECTIONS,
    SINGLE_PROTOCOLS,
    qis_correction,
    qis_n,
    qis_n_branches,
    qis_single,
    qis_single_branches,
    qis_two,
    qis_two_branches,
    secrecy_check,
    single_correction,
    single_steps,
)
from ghzbell.statevec import PauliString, StateVector, fidelity, haar_random_state, trial_rng
from ghzbell.tables import table_qis_alice, table_qis_single_alice, table_qis_single_bob
from ghzbell.teleport import correction_for
from ghzbell.verify import search_correction

GENERIC = StateVector(1, np.array([0.6, 0.8j]))

# Printed Table VI row r is the outcome index TABLE_VI_ROW_TO_J[r] (swapped b1/b2 and b3/b4)
TABLE_VI_ROW_TO_J = [0, 2, 1, 3, 8, 10, 9, 11, 4, 6, 5, 7, 12, 14, 13, 15]


def strip_prefix(text: str) -> str:
    for p in ("1/sqrt2(", "1/2("):
        if text.startswith(p):
            return text[len(p):-1]
    return text


def golden_rows(name):
    return [tuple(line.split(" -> ")) for line in golden_lines(name)]


@pytest.mark.parametrize("protocol", SINGLE_PROTOCOLS)
def test_shipped_correction_table_regenerates(protocol):
    branches = qis_single_branches(protocol, GENERIC)
    assert len(branches) == 16
    regenerated = {}
    for b in branches:
        found = search_correction(GENERIC, [1], b.pre_correction)
        assert found is not None
        regenerated[b.outcomes] = found
    assert set(regenerated) == set(SINGLE_CORRECTIONS[protocol])
    for outcomes, p in regenerated.items():
        assert single_correction(protocol, *outcomes) == p


@pytest.mark.parametrize("protocol", SINGLE_PROTOCOLS)
def test_single_protocols_all_branches(protocol):
    for t in range(10):
        psi = haar_random_state(1, trial_rng(8, t))
        branches = qis_single_branches(protocol, psi)
        assert len(branches) == 16
        assert min(b.fidelity for b in branches) >= 1 - 1e-10
        assert sum(b.probability for b in branches) == pytest.approx(1.0, abs=1e-10)
        assert all(b.probability == pytest.approx(1 / 16, abs=1e-10) for b in branches)


@pytest.mark.parametrize("protocol, cbits", [("i", 4), ("ii", 4), ("iii", 4)])
def test_single_protocol_cbits(protocol, cbits):
    _, steps = single_steps(protocol)
    assert [s.cbits for s in steps] == {"i": [2, 2], "ii": [2, 2], "iii": [3, 1]}[protocol]
    t = qis_single(protocol, GENERIC, 1)
    assert t.cbits == cbits and t.fidelity >= 1 - 1e-10


def test_protocol_ii_uses_only_four_alice_outcomes():
    assert {b.outcomes[0] for b in qis_single_branches("ii", GENERIC)} == {0, 1, 2, 3}


def test_protocol_ii_first_outcomes_need_no_correction():
    b = qis_single_branches("ii", GENERIC)[0]
    assert b.outcomes == (0, 0) and b.correction == PauliString(1)


def test_unknown_protocol():
    with pytest.raises(DomainError):
        single_steps("iv")


def test_table_iv_matches_golden_as_a_set():
    generated = {(strip_prefix(r["measured"]), r["state"]) for r in table_qis_single_alice("i")}
    assert generated == set(golden_rows("table_iv"))


def test_table_v_matches_golden_in_order():
    generated = [(strip_prefix(r["measured"]), r["state"]) for r in table_qis_single_bob("i")]
    assert generated == golden_rows("table_v")


def test_table_v_row_two_needs_x():
    b = [b for b in qis_single_branches("i", GENERIC) if b.outcomes == (0, 1)][0]
    assert fidelity(b.pre_correction, StateVector(1, [0.8j, 0.6])) == pytest.approx(1.0)
    assert b.correction == PauliString(1, x_mask=1)


def test_table_vi_against_golden_with_erratum():
    generated = table_qis_alice(2)
    golden = golden_rows("table_vi")
    corrected = []
    for r, (measured, state) in enumerate(golden):
        if 4 <= r <= 7:
            # printed with a duplicate |110>; the mu term belongs on |111>
            assert state.count("|110>") == 2
            state = state.replace("mu|110>", "mu|111>")
        corrected.append((measured, state))
    by_outcome = {(g["measured"], g["state"]): g["outcome"] for g in generated}
    assert set(by_outcome) == set(corrected)
    assert [by_outcome[row] for row in corrected] == TABLE_VI_ROW_TO_J


def test_qis_two_charlie_examples():
    a, g, m, b = 0.1, 0.3 + 0.2j, -0.5, 0.7
    nrm = np.linalg.norm([a, g, m, b])
    psi = StateVector(2, np.array([a, g, m, b]) / nrm)
    branches = {br.outcomes: br for br in qis_two_branches(psi)}
    assert len(branches) == 32
    assert fidelity(branches[(0, 0)].pre_correction, psi) == pytest.approx(1.0)
    assert branches[(0, 0)].correction.is_identity
    flipped = StateVector(2, np.array([a, g, -m, -b]) / nrm)
    assert fidelity(branches[(0, 1)].pre_correction, flipped) == pytest.approx(1.0)
    assert branches[(0, 1)].correction == PauliString.from_positions(2, z=[1])


@pytest.mark.parametrize("N", [1, 2, 3])
def test_generalized_rule_matches_search(N):
    for t in range(5):
        psi = haar_random_state(N, trial_rng(21, t))
        branches = qis_n_branches(psi, N)
        assert len(branches) == 2 * 4**N
        for b in branches:
            assert b.fidelity >= 1 - 1e-10
            assert search_correction(psi, range(1, N + 1), b.pre_correction) == b.correction
            assert b.correction.num_qubits == N


@pytest.mark.parametrize("N", [1, 2, 3])
def test_outcomes_uniform(N):
    psi = haar_random_state(N, np.random.default_rng(N))
    branches = qis_n_branches(psi, N)
    alice = {}
    for b in branches:
        alice[b.outcomes[0]] = alice.get(b.outcomes[0], 0.0) + b.probability
        assert b.probabilities[1] == pytest.approx(0.5, abs=1e-10)
    assert len(alice) == 4**N
    assert max(abs(p - 4.0**-N) for p in alice.values()) < 1e-10


def test_qis_correction_rule():
    assert qis_correction(1, 0, 0).is_identity
    assert qis_correction(2, 12, 1) == PauliString.from_positions(2, x=[1, 2], z=[1])
    assert qis_correction(3, 5, 0) == correction_for(3, 5)


def test_qis_n_two_equals_qis_two():
    for t in range(50):
        psi = haar_random_state(2, trial_rng(100, t))
        a = qis_n(psi, 2, trial_rng(200, t))
        b = qis_two(psi, trial_rng(200, t))
        assert a.outcome_indices == b.outcome_indices
        assert a.corrections == b.corrections
        assert np.array_equal(a.final_state.amplitudes, b.final_state.amplitudes)
        assert b.cbits == 5


def test_qis_n_cbits():
    t = qis_n(haar_random_state(3, np.random.default_rng(0)), 3, 4)
    assert t.cbits == 7 and t.fidelity >= 1 - 1e-10


@pytest.mark.parametrize("protocol", SECRECY_PROTOCOLS)
def test_secrecy(protocol):
    report = secrecy_check(protocol, N=2, trials=10, rng=np.random.default_rng(9))
    assert report.passed, report.to_dict()
    assert len(report.checks) >= 2


def test_secrecy_spec_examples():
    two = secrecy_check("two", trials=10, rng=1)
    assert {c.name for c in two.checks} >= {"charlie_pre_measurement", "bob_pre_measurement"}
    first = secrecy_check("i", trials=10, rng=2)
    assert [c for c in first.checks if c.name == "bob_pre_measurement"][0].value < 1e-10
    tele = secrecy_check("teleport", N=2, trials=10, rng=3)
    assert tele.passed


def test_secrecy_needs_two_inputs():
    with pytest.raises(DomainError):
        secrecy_check("i", trials=1)


def test_secrecy_measure_detects_the_dealer():
    """The same distance on the input-holding register is far from zero."""
    from ghzbell.qis import _max_pairwise
    from ghzbell.statevec import partial_trace, tensor

    channel, _ = single_steps("i")
    rng = np.random.default_rng(0)
    mats = [partial_trace(tensor(haar_random_state(1, rng), channel), [1]) for _ in range(10)]
    assert _max_pairwise(mats) > 0.1
