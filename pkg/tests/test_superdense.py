from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import golden_lines, ket
from ghzbell.bases import BitString, Party, channel_teleport, named_state
from ghzbell.errors import DomainError
from ghzbell.statevec import StateVector, canonical_phase, fidelity
from ghzbell.superdense import (
    capacity_check,
    decode,
    decode_lookup,
    encode,
    encode_pauli,
    factor_names,
    product_state,
    table_rows,
    table_text,
)


def test_encode_pauli_examples():
    assert encode_pauli(2, "00001").z_positions == (2,) and not encode_pauli(2, "00001").x_positions
    p = encode_pauli(2, "10000")
    assert p.x_positions == (4,) and not p.z_positions
    assert encode_pauli(2, "00000").is_identity


def test_encode_examples():
    assert fidelity(encode(2, "11111"), ket((1, "00101"), (-1, "00110"), (-1, "11001"), (1, "11010"))) == pytest.approx(1.0)
    assert encode(2, "01100").allclose(ket((1, "00100"), (1, "00111"), (1, "11000"), (1, "11011")))
    assert encode(1, "000").allclose(named_state("xi+"))


def test_encode_rejects_wrong_length():
    with pytest.raises(DomainError):
        encode(2, "0000")


@pytest.mark.parametrize("N", [1, 2, 3])
def test_roundtrip_exhaustive(N):
    rng = np.random.default_rng(N)
    for b in BitString.all(2 * N + 1):
        state = encode(N, b)
        assert decode(state, N, rng) == b
        assert decode_lookup(state, N) == b


def test_decode_example_n1():
    assert decode(encode(1, "101"), 1, np.random.default_rng(0)) == BitString.parse("101")


def test_decode_rejects_wrong_size():
    with pytest.raises(DomainError):
        decode(encode(1, "101"), 2, np.random.default_rng(0))


@pytest.mark.parametrize("N, count, alice", [(1, 8, 2), (2, 32, 3), (3, 128, 4)])
def test_capacity(N, count, alice):
    rep = capacity_check(N)
    assert (rep.num_states, rep.all_orthonormal, rep.alice_qubit_count) == (count, True, alice)
    assert rep.local_to_alice
    assert rep.ratio == Fraction(2 * N + 1, N + 1)


@given(N=st.integers(1, 4), data=st.data())
def test_encoding_never_touches_bob(N, data):
    bob = set(channel_teleport(N)[1].positions(Party.BOB))
    value = data.draw(st.integers(0, (1 << (2 * N + 1)) - 1))
    assert not set(encode_pauli(N, value).support) & bob


@given(N=st.integers(1, 3), data=st.data())
def test_distinct_strings_give_orthogonal_states(N, data):
    top = (1 << (2 * N + 1)) - 1
    a = data.draw(st.integers(0, top))
    b = data.draw(st.integers(0, top).filter(lambda v: v != a))
    assert abs(np.vdot(encode(N, a).amplitudes, encode(N, b).amplitudes)) < 1e-12


def test_table_i_matches_golden_token_for_token():
    generated = table_text(2).splitlines()
    golden = golden_lines("table_i")
    assert len(generated) == len(golden) == 32
    for g, e in zip(generated, golden):
        assert g.split() == e.split()


def test_table_states_match_golden_amplitudes():
    """The state column, parsed back to amplitudes, agrees with encode to 1e-12."""
    for row, line in zip(table_rows(2), golden_lines("table_i")):
        body = line.split()[2][len("1/2("):-1]
        terms = []
        for tok in body.replace("-", " -").replace("+", " +").split():
            sign = -0.5 if tok.startswith("-") else 0.5
            terms.append((sign, tok.strip("+-|>")))
        printed = StateVector.from_kets(terms)
        assert np.max(np.abs(printed.amplitudes - row["state"].amplitudes)) < 1e-12
        # equal to the raw encoding up to a global sign
        assert fidelity(printed, encode(2, row["bits"])) == pytest.approx(1.0, abs=1e-12)


def test_some_rows_differ_from_raw_encoding_by_sign_only():
    raw = encode(2, "00101")
    shown = canonical_phase(raw)
    assert np.allclose(raw.amplitudes, -shown.amplitudes)


def test_factor_names():
    assert factor_names(encode(2, "10101")) == ["chi-", "phi+"]
    assert product_state("theta+", "psi-").allclose(canonical_phase(encode(2, "01110")))
    with pytest.raises(DomainError):
        factor_names(ket((1, "00000"), (1, "10000")))
