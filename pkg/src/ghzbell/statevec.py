"""Dense state-vector engine.

Qubits are numbered from 1. Qubit 1 is the leftmost symbol of a ket and the
most significant bit of the amplitude index, so ``|00011>`` is index 3 on five
qubits. Every value here is immutable; all operations return new objects.

Measurements collapse *and remove* the measured qubits: the post-measurement
state lives on the remaining qubits, kept in ascending position order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ProtocolError

ATOL = 1e-10
SUPPORT_ATOL = 1e-8


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


def position_bit(num_qubits: int, position: int) -> int:
    """Index bit for a 1-based qubit position (qubit 1 is the MSB)."""
    if not 1 <= position <= num_qubits:
        raise DomainError(f"qubit position {position} outside 1..{num_qubits}")
    return 1 << (num_qubits - position)


def positions_mask(num_qubits: int, positions: Iterable[int]) -> int:
    mask = 0
    for p in positions:
        mask |= position_bit(num_qubits, p)
    return mask


def mask_positions(num_qubits: int, mask: int) -> tuple[int, ...]:
    return tuple(p for p in range(1, num_qubits + 1) if mask >> (num_qubits - p) & 1)


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise DomainError("a state needs at least one qubit")
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.shape[0] != 1 << self.num_qubits:
            raise DomainError(
                f"{amps.shape[0]} amplitudes cannot describe {self.num_qubits} qubits"
            )
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> StateVector:
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n = amps.shape[0].bit_length() - 1
        if n < 1 or 1 << n != amps.shape[0]:
            raise DomainError(f"length {amps.shape[0]} is not a power of two >= 2")
        return cls(n, amps)

    @classmethod
    def from_kets(cls, terms: Iterable[tuple[complex, str]], normalize: bool = False) -> StateVector:
        """Build ``sum(c |bits>)`` from ``(c, "0101")`` pairs."""
        terms = list(terms)
        if not terms:
            raise DomainError("no kets given")
        n = len(terms[0][1])
        amps = np.zeros(1 << n, dtype=np.complex128)
        for coef, bits in terms:
            if len(bits) != n or set(bits) - {"0", "1"}:
                raise DomainError(f"bad ket label {bits!r}")
            amps[int(bits, 2)] += coef
        if normalize:
            amps /= np.linalg.norm(amps)
        return cls(n, amps)

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        nrm = self.norm()
        if nrm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.num_qubits, self.amplitudes / nrm)

    def kets(self, atol: float = 1e-12) -> list[tuple[str, complex]]:
        """Nonzero amplitudes as ``(bits, amplitude)`` in index order."""
        idx = np.flatnonzero(np.abs(self.amplitudes) > atol)
        return [(format(i, f"0{self.num_qubits}b"), complex(self.amplitudes[i])) for i in idx]

    def allclose(self, other: StateVector, atol: float = ATOL) -> bool:
        return self.num_qubits == other.num_qubits and bool(
            np.allclose(self.amplitudes, other.amplitudes, rtol=0.0, atol=atol)
        )

    def __repr__(self):
        body = " ".join(f"{_fmt_complex(a)}|{b}>" for b, a in self.kets()[:8])
        more = " ..." if len(self.kets()) > 8 else ""
        return f"StateVector({self.num_qubits}q: {body}{more})"


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-12:
        return f"{z.real:+.4g}"
    return f"({z.real:+.4g}{z.imag:+.4g}j)"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    num_qubits: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = _frozen(self.entries)
        d = 1 << self.num_qubits
        if rho.shape != (d, d):
            raise DomainError(f"density matrix on {self.num_qubits} qubits must be {d}x{d}")
        if not np.allclose(rho, rho.conj().T, rtol=0.0, atol=ATOL):
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > ATOL:
            raise DomainError(f"density matrix has trace {np.trace(rho).real:.6g}, expected 1")
        if np.linalg.eigvalsh(rho).min() < -ATOL:
            raise DomainError("density matrix is not positive semidefinite")
        object.__setattr__(self, "entries", rho)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class PauliString:
    """Product of per-qubit ``X^x Z^z`` with Z applied first.

    Masks are index bitmasks in the same convention as amplitude indices, so the
    bit for qubit ``p`` is ``1 << (num_qubits - p)``.
    """

    num_qubits: int
    x_mask: int = 0
    z_mask: int = 0

    def __post_init__(self):
        if self.num_qubits < 1:
            raise DomainError("a Pauli string needs at least one qubit")
        full = (1 << self.num_qubits) - 1
        if self.x_mask & ~full or self.z_mask & ~full or self.x_mask < 0 or self.z_mask < 0:
            raise DomainError("Pauli mask references qubits outside 1..num_qubits")

    @classmethod
    def from_positions(cls, num_qubits: int, x: Iterable[int] = (), z: Iterable[int] = ()) -> PauliString:
        return cls(num_qubits, positions_mask(num_qubits, x), positions_mask(num_qubits, z))

    @property
    def x_positions(self) -> tuple[int, ...]:
        return mask_positions(self.num_qubits, self.x_mask)

    @property
    def z_positions(self) -> tuple[int, ...]:
        return mask_positions(self.num_qubits, self.z_mask)

    @property
    def support(self) -> tuple[int, ...]:
        return mask_positions(self.num_qubits, self.x_mask | self.z_mask)

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def label(self, relabel: Sequence[int] | None = None) -> str:
        """``Z2Z3X1`` style label; ``relabel[p-1]`` renames qubit ``p``."""
        name = (lambda p: relabel[p - 1]) if relabel else (lambda p: p)
        parts = [f"Z{name(p)}" for p in self.z_positions] + [f"X{name(p)}" for p in self.x_positions]
        return "".join(parts) or "I"

    def embed(self, num_qubits: int, positions: Sequence[int]) -> PauliString:
        """Place this string onto ``positions`` of a larger register."""
        if len(positions) != self.num_qubits:
            raise DomainError("need one target position per qubit")
        x = [positions[p - 1] for p in self.x_positions]
        z = [positions[p - 1] for p in self.z_positions]
        return PauliString.from_positions(num_qubits, x, z)

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class QubitPermutation:
    """``placement[s]`` is the output position of the (s+1)-th input qubit."""

    num_qubits: int
    placement: tuple[int, ...]

    def __post_init__(self):
        placement = tuple(int(p) for p in self.placement)
        if sorted(placement) != list(range(1, self.num_qubits + 1)):
            raise DomainError(f"placement {placement} is not a bijection on 1..{self.num_qubits}")
        object.__setattr__(self, "placement", placement)

    def inverse(self) -> QubitPermutation:
        inv = [0] * self.num_qubits
        for s, p in enumerate(self.placement, start=1):
            inv[p - 1] = s
        return QubitPermutation(self.num_qubits, tuple(inv))


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Ordered orthonormal states on ``subset_size`` qubits.

    The elements may span only a subspace (the protocol bases often do).
    """

    label: str
    subset_size: int
    elements: tuple[StateVector, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise DomainError("empty measurement basis")
        for e in elements:
            if e.num_qubits != self.subset_size:
                raise DomainError(
                    f"basis {self.label!r}: element on {e.num_qubits} qubits, expected {self.subset_size}"
                )
        object.__setattr__(self, "elements", elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, k: int) -> StateVector:
        return self.elements[k]

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Rows are the basis elements."""
        m = np.stack([e.amplitudes for e in self.elements])
        m.setflags(write=False)
        return m

    @cached_property
    def gram_deviation(self) -> float:
        m = self.matrix
        gram = m.conj() @ m.T
        return float(np.max(np.abs(gram - np.eye(len(self.elements)))))

    def is_orthonormal(self, atol: float = ATOL) -> bool:
        return self.gram_deviation < atol


# -- construction ------------------------------------------------------------


def basis_state(num_qubits: int, index: int) -> StateVector:
    if num_qubits < 1:
        raise DomainError("num_qubits must be positive")
    if not 0 <= index < 1 << num_qubits:
        raise DomainError(f"index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def tensor(a: StateVector, b: StateVector, *more: StateVector) -> StateVector:
    """Tensor product; ``a`` takes the leading (more significant) positions."""
    out = StateVector(a.num_qubits + b.num_qubits, np.kron(a.amplitudes, b.amplitudes))
    for c in more:
        out = tensor(out, c)
    return out


def haar_random_state(num_qubits: int, rng: np.random.Generator) -> StateVector:
    """Normalized vector of i.i.d. standard complex normals (Haar distributed)."""
    if num_qubits < 1:
        raise DomainError("num_qubits must be positive")
    d = 1 << num_qubits
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return StateVector(num_qubits, z / np.linalg.norm(z))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for trial ``trial`` of a run seeded with ``seed``.

    Uses SeedSequence spawn keys, so a trial's stream depends only on
    ``(seed, trial)`` and never on the order trials are executed in.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


# -- gates -------------------------------------------------------------------


def _parity_signs(dim: int, mask: int) -> np.ndarray:
    idx = np.arange(dim, dtype=np.int64) & mask
    parity = np.zeros(dim, dtype=np.int64)
    while mask:
        parity ^= idx & 1
        idx >>= 1
        mask >>= 1
    return 1 - 2 * parity


def apply_pauli(state: StateVector, op: PauliString) -> StateVector:
    if op.num_qubits != state.num_qubits:
        raise DomainError(
            f"Pauli string on {op.num_qubits} qubits applied to a {state.num_qubits}-qubit state"
        )
    amps = state.amplitudes
    if op.z_mask:
        amps = amps * _parity_signs(state.dim, op.z_mask)
    if op.x_mask:
        amps = amps[np.arange(state.dim) ^ op.x_mask]
    return StateVector(state.num_qubits, amps)


def permute(state: StateVector, perm: QubitPermutation) -> StateVector:
    """Move input qubit ``s`` to output position ``perm.placement[s-1]``."""
    n = state.num_qubits
    if perm.num_qubits != n:
        raise DomainError("permutation size does not match the state")
    psi = state.amplitudes.reshape((2,) * n)
    # output axis placement[s]-1 takes input axis s-1
    axes = [0] * n
    for s, p in enumerate(perm.placement):
        axes[p - 1] = s
    return StateVector(n, np.transpose(psi, axes).reshape(-1))


def canonical_phase(state: StateVector, atol: float = 1e-12) -> StateVector:
    """Rotate the global phase so the lowest-index nonzero amplitude is real positive."""
    nz = np.flatnonzero(np.abs(state.amplitudes) > atol)
    if nz.size == 0:
        return state
    a = state.amplitudes[nz[0]]
    return StateVector(state.num_qubits, state.amplitudes * (abs(a) / a))


# -- scalar functionals ------------------------------------------------------


def _same_size(a: StateVector, b: StateVector):
    if a.num_qubits != b.num_qubits:
        raise DomainError(f"size mismatch: {a.num_qubits} vs {b.num_qubits} qubits")


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    _same_size(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    return float(min(1.0, abs(inner_product(a, b)) ** 2))


def partial_trace(state: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on ``keep``, ordered by ascending position."""
    n = state.num_qubits
    keep = sorted(set(keep))
    if not keep:
        raise DomainError("keep must name at least one qubit")
    for p in keep:
        position_bit(n, p)
    rest = [p for p in range(1, n + 1) if p not in keep]
    psi = state.amplitudes.reshape((2,) * n)
    psi = np.transpose(psi, [p - 1 for p in keep + rest]).reshape(1 << len(keep), -1)
    return DensityMatrix(len(keep), psi @ psi.conj().T)


def entropy(rho: DensityMatrix) -> float:
    """Von Neumann entropy in bits."""
    lam = rho.eigenvalues()
    if lam.min() < -ATOL:
        raise DomainError("entropy of a non-PSD matrix")
    lam = lam[lam > 1e-15]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the trace norm of ``a - b``."""
    if a.num_qubits != b.num_qubits:
        raise DomainError("trace distance between different sizes")
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(a.entries - b.entries))))


# -- measurement -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Projection:
    """Unnormalized residuals of ``state`` onto each element of a basis.

    ``residuals[k]`` is the complement-register vector left behind by outcome
    ``k``; its squared norm is the Born probability of ``k``.
    """

    complement: tuple[int, ...]
    residuals: np.ndarray
    probabilities: np.ndarray
    outside_weight: float

    def post_state(self, k: int) -> StateVector:
        r = self.residuals[k]
        return StateVector(len(self.complement), r / np.sqrt(self.probabilities[k]))


def _check_subset(n: int, subset: Sequence[int]) -> list[int]:
    subset = [int(p) for p in subset]
    if len(set(subset)) != len(subset):
        raise DomainError(f"repeated qubit in measured subset {subset}")
    for p in subset:
        position_bit(n, p)
    if len(subset) >= n:
        raise DomainError("measuring every qubit leaves no register; use project_all")
    return subset


def project(state: StateVector, subset: Sequence[int], basis: MeasurementBasis) -> Projection:
    """Project ``state`` onto ``basis`` placed on the ordered ``subset``.

    The i-th qubit of each basis element sits on ``subset[i]``.
    """
    n = state.num_qubits
    if len(subset) != basis.subset_size:
        raise DomainError(
            f"basis {basis.label!r} acts on {basis.subset_size} qubits, subset has {len(subset)}"
        )
    if len(subset) == n:
        subset = [int(p) for p in subset]
        if sorted(subset) != list(range(1, n + 1)):
            raise DomainError(f"bad subset {subset}")
        complement: list[int] = []
    else:
        subset = _check_subset(n, subset)
        complement = [p for p in range(1, n + 1) if p not in subset]
    if not basis.is_orthonormal():
        raise DomainError(
            f"basis {basis.label!r} is not orthonormal (Gram deviation {basis.gram_deviation:.3g})"
        )
    psi = state.amplitudes.reshape((2,) * n)
    psi = np.transpose(psi, [p - 1 for p in subset + complement])
    psi = psi.reshape(1 << len(subset), 1 << len(complement))
    residuals = basis.matrix.conj() @ psi
    probs = np.sum(np.abs(residuals) ** 2, axis=1)
    outside = float(state.norm() ** 2 - probs.sum())
    return Projection(tuple(complement), residuals, probs, outside)


def sample_outcome(probabilities: np.ndarray, rng: np.random.Generator) -> int:
    cdf = np.cumsum(probabilities)
    k = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    k = min(k, len(probabilities) - 1)
    # never land on a zero-probability outcome through rounding at the cdf edges
    while probabilities[k] <= 0.0:
        k -= 1
    return k


def check_support(proj: Projection, label: str) -> None:
    if abs(proj.outside_weight) > SUPPORT_ATOL:
        raise ProtocolError(
            f"state has weight {proj.outside_weight:.3e} outside the span of basis {label!r}"
        )


def measure_in_basis(
    state: StateVector,
    subset: Sequence[int],
    basis: MeasurementBasis,
    rng: np.random.Generator,
) -> tuple[int, StateVector | None, float]:
    """Projective measurement of ``subset`` in ``basis``.

    Returns ``(k, post_state, p_k)``. The measured qubits are removed from
    ``post_state``; when every qubit is measured it is ``None``.
    Raises ProtocolError if the state has support outside the basis span.
    """
    proj = project(state, subset, basis)
    check_support(proj, basis.label)
    k = sample_outcome(proj.probabilities, rng)
    post = proj.post_state(k) if proj.complement else None
    return k, post, float(proj.probabilities[k])
