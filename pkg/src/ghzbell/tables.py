"""Regenerate the protocol tables: measurement outcome -> state left behind.

States left behind are linear in the unknown input, so each row is computed
by pushing every computational basis input through the fixed outcomes and
printing the result with symbolic amplitudes (``alpha``, ``beta``, ...).
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .protocol import Step
from .qis import qis_n_steps, single_steps
from .render import format_ket_sum, format_linear, input_symbols
from .statevec import StateVector, basis_state, canonical_phase, project, tensor
from .teleport import fivequbit_steps, teleport_steps


def residual_map(n_in: int, channel: StateVector, fixed: Sequence[tuple[Step, int]]) -> tuple[np.ndarray, int]:
    """Columns are the unnormalized leftover states for each basis input."""
    cols = []
    n_out = None
    for i in range(1 << n_in):
        state = tensor(basis_state(n_in, i), channel)
        alive = list(range(1, state.num_qubits + 1))
        for step, k in fixed:
            proj = project(state, [alive.index(p) + 1 for p in step.positions], step.basis)
            alive = [alive[c - 1] for c in proj.complement]
            state = StateVector(len(alive), proj.residuals[k])
        cols.append(state.amplitudes)
        n_out = state.num_qubits
    return np.stack(cols, axis=1), n_out


def _rows(n_in, channel, step, prefix=()) -> list[dict]:
    rows = []
    for k, element in enumerate(step.basis):
        cols, n_out = residual_map(n_in, channel, list(prefix) + [(step, k)])
        if np.max(np.abs(cols)) < 1e-12:
            continue
        # express the leftover relative to the displayed (canonical-phase) element
        shown = canonical_phase(element)
        cols = cols * np.vdot(shown.amplitudes, element.amplitudes)
        rows.append(
            {
                "outcome": k,
                "measured": format_ket_sum(shown),
                "state": format_linear(cols, n_out, input_symbols(n_in)),
            }
        )
    return rows


def table_fivequbit() -> list[dict]:
    channel, steps = fivequbit_steps()
    return _rows(1, channel, steps[0])


def table_teleport(N: int) -> list[dict]:
    """Rows are ``Omega_j`` (j ascending) and Bob's uncorrected state."""
    channel, steps = teleport_steps(N)
    return _rows(N, channel, steps[0])


def table_qis_single_alice(protocol: str) -> list[dict]:
    """Alice's outcome and the joint Bob-Charlie state."""
    channel, steps = single_steps(protocol)
    return _rows(1, channel, steps[0])


def table_qis_single_bob(protocol: str, alice_outcome: int = 0) -> list[dict]:
    """Bob's outcome and Charlie's state, given Alice's outcome."""
    channel, steps = single_steps(protocol)
    return _rows(1, channel, steps[1], prefix=[(steps[0], alice_outcome)])


def table_qis_alice(N: int) -> list[dict]:
    channel, steps = qis_n_steps(N)
    return _rows(N, channel, steps[0])


def format_table(rows: list[dict], title: str) -> str:
    width = max(len(r["measured"]) for r in rows)
    lines = [title]
    for r in rows:
        lines.append(f"  [{r['outcome']:>3}] {r['measured']:<{width}}  ->  {r['state']}")
    return "\n".join(lines)
