"""Text forms of states: ``1/2(|00000>+|00011>)`` and ``alpha|0>-beta|1>``."""
from __future__ import annotations

from math import isqrt
from typing import Sequence

import numpy as np

from .errors import DomainError
from .statevec import StateVector

SYMBOLS = {1: ("alpha", "beta"), 2: ("alpha", "gamma", "mu", "beta")}


def input_symbols(num_qubits: int) -> tuple[str, ...]:
    """Amplitude names of an unknown input, in basis-index order."""
    return SYMBOLS.get(num_qubits) or tuple(f"a{i}" for i in range(1 << num_qubits))


def _prefix(mag: float) -> str:
    d = round(1 / mag**2)
    if abs(1 / mag**2 - d) > 1e-6:
        raise DomainError(f"amplitude {mag} is not 1/sqrt(integer)")
    if d == 1:
        return ""
    r = isqrt(d)
    return f"1/{r}" if r * r == d else f"1/sqrt{d}"


def format_ket_sum(state: StateVector) -> str:
    """Equal-weight real superposition as ``1/2(|00>+|01>-...)``."""
    kets = state.kets()
    mag = abs(kets[0][1])
    body = ""
    for bits, a in kets:
        if abs(abs(a) - mag) > 1e-9 or abs(a.imag) > 1e-9:
            raise DomainError("state is not an equal-weight real superposition")
        body += ("+" if a.real > 0 else "-") + f"|{bits}>"
    body = body.lstrip("+")
    prefix = _prefix(mag)
    return f"{prefix}({body})" if prefix else body


def format_linear(columns: np.ndarray, num_out: int, symbols: Sequence[str]) -> str:
    """Render ``sum_i symbols[i] * columns[:, i]`` with coefficients scaled to +-1.

    Kets sharing one symbol are grouped: ``alpha(|0000>+|0011>)``.
    """
    scale = np.max(np.abs(columns))
    if scale == 0:
        return "0"
    c = columns / scale
    parts = []
    for i, sym in enumerate(symbols):
        nz = np.flatnonzero(np.abs(c[:, i]) > 1e-9)
        if nz.size == 0:
            continue
        vals = c[nz, i]
        if np.any(np.abs(np.abs(vals) - 1) > 1e-9) or np.any(np.abs(vals.imag) > 1e-9):
            raise DomainError("coefficients are not all +-1")
        lead = 1 if vals[0].real > 0 else -1
        kets = [("+" if v.real * lead > 0 else "-") + f"|{k:0{num_out}b}>" for k, v in zip(nz, vals)]
        inner = "".join(kets).lstrip("+")
        body = f"{sym}{inner}" if len(kets) == 1 else f"{sym}({inner})"
        parts.append(("+" if lead > 0 else "-") + body)
    return "".join(parts).lstrip("+")
