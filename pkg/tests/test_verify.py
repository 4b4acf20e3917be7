import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ket
from ghzbell.bases import (
    channel_teleport,
    computational_basis,
    hadamard_basis,
    omega_basis_teleport,
    superdense_basis,
    table2_basis,
)
from ghzbell.errors import DomainError, ProtocolError
from ghzbell.statevec import (
    MeasurementBasis,
    PauliString,
    StateVector,
    basis_state,
    haar_random_state,
    project,
    tensor,
)
from ghzbell.verify import (
    VerificationReport,
    check_orthonormal,
    decompose,
    entanglement_report,
    reconstruct,
    search_correction,
)


def corrupted(basis):
    first = StateVector(basis.subset_size, basis[0].amplitudes * 1.01)
    return MeasurementBasis("corrupt", basis.subset_size, (first,) + basis.elements[1:])


def test_check_orthonormal():
    good = check_orthonormal(superdense_basis(2))
    assert good.passed and good.checks[0].value < 1e-12
    bad = check_orthonormal(corrupted(superdense_basis(2)))
    assert not bad.passed
    assert bad.checks[0].value == pytest.approx(1.01**2 - 1, abs=1e-12)
    assert check_orthonormal(hadamard_basis()).passed


def test_report_pass_is_conjunction():
    r = VerificationReport("x")
    r.below("a", 0.0, 1.0)
    assert r.passed
    r.at_least("b", 0.5, 1.0)
    assert not r.passed
    d = r.to_dict()
    assert d["pass"] is False and [c["name"] for c in d["checks"]] == ["a", "b"]


def test_decompose_table_ii():
    alpha, beta = 0.6, 0.8
    combined = tensor(StateVector(1, [alpha, beta]), channel_teleport(2)[0])
    d = decompose(combined, [1, 2, 3, 4, 5], table2_basis())
    assert len(d) == 4
    assert [w for _, _, w in d] == pytest.approx([0.25] * 4)
    expected = [[alpha, beta], [alpha, -beta], [beta, alpha], [-beta, alpha]]
    for (_, resid, _), e in zip(d, expected):
        assert resid.allclose(StateVector(1, e))
    assert abs(d.outside_weight) < 1e-12


def test_decompose_trivial_complete_basis():
    d = decompose(basis_state(3, 0), [1, 2, 3], computational_basis(3))
    assert [(j, w) for j, _, w in d] == [(0, pytest.approx(1.0))]


def test_decompose_sixteen_branches():
    psi = haar_random_state(2, np.random.default_rng(0))
    combined = tensor(psi, channel_teleport(2)[0])
    d = decompose(combined, [1, 2, 3, 4, 6], omega_basis_teleport(2))
    assert len(d) == 16 and d.total_weight == pytest.approx(1.0, abs=1e-10)


def test_decompose_reports_outside_weight():
    d = decompose(ket((1, "0"), (1, "1")), [1], MeasurementBasis("half", 1, (basis_state(1, 0),)))
    assert d.outside_weight == pytest.approx(0.5)


def test_decompose_validates_positions():
    with pytest.raises(DomainError):
        decompose(basis_state(2, 0), [1, 1], computational_basis(2))
    with pytest.raises(DomainError):
        decompose(basis_state(2, 0), [1], computational_basis(2))


@given(st.data())
def test_decompose_agrees_with_project_and_reconstructs(data):
    n = data.draw(st.integers(2, 5))
    psi = haar_random_state(n, np.random.default_rng(data.draw(st.integers(0, 2**32))))
    k = data.draw(st.integers(1, min(3, n)))
    subset = data.draw(st.permutations(range(1, n + 1)))[:k]
    basis = computational_basis(k)
    d = decompose(psi, subset, basis, cutoff=0.0)
    assert reconstruct(d, basis).allclose(psi, atol=1e-10)
    proj = project(psi, subset, basis)
    assert np.allclose(sorted(w for _, _, w in d), sorted(proj.probabilities), atol=1e-12)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_teleport_identity_holds_for_shipped_placement(N):
    psi = haar_random_state(N, np.random.default_rng(N))
    channel, parties = channel_teleport(N)
    alice = list(range(1, N + 1)) + [N + p for p in parties.positions("A")]
    basis = omega_basis_teleport(N)
    d = decompose(tensor(psi, channel), alice, basis)
    assert len(d) == 4**N
    assert abs(d.outside_weight) < 1e-10
    assert reconstruct(d, basis).allclose(tensor(psi, channel))


def test_search_correction_examples():
    alpha, beta = 0.6, 0.8j
    target = StateVector(1, [alpha, beta])
    assert search_correction(target, [1], StateVector(1, [beta, alpha])) == PauliString(1, x_mask=1)
    assert search_correction(target, [1], target).is_identity
    a, g, m, b = 0.1, 0.3 + 0.2j, -0.5, 0.7
    nrm = np.linalg.norm([a, g, m, b])
    actual = StateVector(2, np.array([a, -g, -m, b]) / nrm)
    goal = StateVector(2, np.array([a, g, m, b]) / nrm)
    assert search_correction(goal, [1, 2], actual) == PauliString.from_positions(2, z=[1, 2])


@pytest.mark.parametrize("theta", [0.0, np.pi / 2, np.pi])
def test_search_correction_identity_up_to_phase(theta):
    psi = haar_random_state(2, np.random.default_rng(3))
    rotated = StateVector(2, psi.amplitudes * np.exp(1j * theta))
    assert search_correction(psi, [1, 2], rotated).is_identity


def test_search_correction_ambiguity_and_miss():
    with pytest.raises(ProtocolError):
        search_correction(basis_state(1, 0), [1], basis_state(1, 0))
    psi = haar_random_state(1, np.random.default_rng(1))
    other = haar_random_state(1, np.random.default_rng(2))
    assert search_correction(psi, [1], other) is None


def test_entanglement_report_examples():
    zeta = channel_teleport(2)[0]
    r = entanglement_report(zeta, ((1, 2, 4), (3, 5)), expected_entropy=2.0)
    assert r.passed and r.values["distance"] < 1e-12
    r = entanglement_report(zeta, ((1, 2, 3, 4), (5,)), expected_entropy=1.0)
    assert r.passed and r.values["entropy"] == pytest.approx(1.0, abs=1e-10)
    r = entanglement_report(basis_state(2, 0), ((1,), (2,)), expected_entropy=0.0)
    assert r.passed and r.values["entropy"] == pytest.approx(0.0, abs=1e-12)


def test_entanglement_partition_validation():
    with pytest.raises(DomainError):
        entanglement_report(basis_state(3, 0), ((1,), (2,)))
