"""Dense linear algebra over qubit registers.

States, reductions, transpositions, spectra, norms and the canonical/random
state constructors everything else is built on.

Index convention: qubit 0 is the *most significant bit* of the computational
basis index, so ``|q0 q1 ... q_{n-1}>`` maps to the integer with q0 leftmost.
All partition utilities use this convention consistently.

Registers are capped at 12 qubits; everything is dense complex128.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

MAX_QUBITS = 12

NORM_ATOL = 1e-12
HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-12
PSD_ATOL = 1e-10
EIG_HERMITIAN_ATOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over an n-qubit register."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not (1 <= self.n_qubits <= MAX_QUBITS):
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise ValueError(
                f"amplitude vector has length {amps.size}, expected {2**self.n_qubits}"
            )
        nrm = np.linalg.norm(amps)
        if abs(nrm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {nrm!r} deviates from 1 beyond {NORM_ATOL}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Iterable[complex]) -> "PureState":
        amps = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes)
        n = int(round(np.log2(amps.size)))
        if 2**n != amps.size:
            raise ValueError(f"amplitude vector length {amps.size} is not a power of two")
        return cls(n, amps)

    def density(self) -> np.ndarray:
        """Rank-one projector |psi><psi| as a dense matrix."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, trace-one, numerically PSD complex matrix."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"entries have shape {m.shape}, expected ({self.dim}, {self.dim})")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_ATOL:
            raise ValueError(f"matrix deviates from Hermitian beyond {HERMITIAN_ATOL}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond {TRACE_ATOL}")
        wmin = np.linalg.eigvalsh(m)[0]
        if wmin < -PSD_ATOL:
            raise ValueError(f"minimum eigenvalue {wmin!r} below -{PSD_ATOL}")
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_pure(cls, psi: PureState) -> "DensityMatrix":
        return cls(2**psi.n_qubits, psi.density())

    @classmethod
    def from_matrix(cls, entries: np.ndarray) -> "DensityMatrix":
        m = np.asarray(entries)
        return cls(m.shape[0], m)


@dataclass(frozen=True)
class SchmidtParams:
    """Parameters (l0..l4, phi) of the canonical three-qubit pure family.

    The family is l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>
    with non-negative l and sum of squares one.
    """

    lam: tuple
    phi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lam)
        if len(lam) != 5:
            raise ValueError(f"expected 5 Schmidt coefficients, got {len(lam)}")
        if any(x < 0 for x in lam):
            raise ValueError("Schmidt coefficients must be non-negative")
        ssq = sum(x * x for x in lam)
        if abs(ssq - 1.0) > NORM_ATOL:
            raise ValueError(f"sum of squared coefficients {ssq!r} deviates from 1 beyond {NORM_ATOL}")
        if not (0.0 <= self.phi < 2 * np.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class Bipartition:
    """Ordered qubit indices forming side A; the complement forms side B."""

    keep: tuple

    def __post_init__(self):
        keep = tuple(int(q) for q in self.keep)
        if len(keep) == 0:
            raise ValueError("keep must be non-empty")
        if len(set(keep)) != len(keep):
            raise ValueError(f"keep indices must be distinct, got {keep}")
        object.__setattr__(self, "keep", keep)

    def validate_for(self, n_qubits: int) -> None:
        if any(not (0 <= q < n_qubits) for q in self.keep):
            raise ValueError(f"keep {self.keep} out of range for {n_qubits} qubits")
        if len(self.keep) >= n_qubits:
            raise ValueError("keep must be a proper subset of the register")

    def complement(self, n_qubits: int) -> tuple:
        return tuple(q for q in range(n_qubits) if q not in self.keep)


def _as_bipartition(b: Union[Bipartition, Sequence[int], int]) -> Bipartition:
    if isinstance(b, Bipartition):
        return b
    if isinstance(b, (int, np.integer)):
        return Bipartition((int(b),))
    return Bipartition(tuple(b))


def _as_matrix(rho: Union[DensityMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.entries
    return np.asarray(rho, dtype=np.complex128)


def partial_trace(
    rho: Union[DensityMatrix, np.ndarray],
    n_qubits: int,
    keep: Union[Bipartition, Sequence[int], int],
) -> DensityMatrix:
    """Reduced density matrix on the kept qubits (in the order listed).

    Traces out the complement of ``keep``. Trace and Hermiticity are
    preserved by construction; the result is re-validated on the way out.
    """
    b = _as_bipartition(keep)
    b.validate_for(n_qubits)
    m = _as_matrix(rho)
    dim = 2**n_qubits
    if m.shape != (dim, dim):
        raise ValueError(f"matrix shape {m.shape} does not match {n_qubits} qubits")
    traced = b.complement(n_qubits)
    t = m.reshape([2] * (2 * n_qubits))
    perm = (
        list(b.keep)
        + list(traced)
        + [n_qubits + q for q in b.keep]
        + [n_qubits + q for q in traced]
    )
    dk = 2 ** len(b.keep)
    dt = 2 ** len(traced)
    t = np.transpose(t, perm).reshape(dk, dt, dk, dt)
    red = np.einsum("atbt->ab", t)
    red = 0.5 * (red + red.conj().T)  # scrub rounding asymmetry
    return DensityMatrix(dk, red)


def partial_transpose(
    rho: Union[DensityMatrix, np.ndarray],
    n_qubits: int,
    transposed: Union[Bipartition, Sequence[int], int],
) -> np.ndarray:
    """Partial transpose over the given qubits. Hermitian, trace one, not PSD in general."""
    b = _as_bipartition(transposed)
    b.validate_for(n_qubits)
    m = _as_matrix(rho)
    dim = 2**n_qubits
    if m.shape != (dim, dim):
        raise ValueError(f"matrix shape {m.shape} does not match {n_qubits} qubits")
    t = m.reshape([2] * (2 * n_qubits))
    perm = list(range(2 * n_qubits))
    for q in b.keep:
        perm[q], perm[n_qubits + q] = perm[n_qubits + q], perm[q]
    return np.transpose(t, perm).reshape(dim, dim)


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"trace norm needs a square matrix, got shape {m.shape}")
    return float(np.linalg.svd(m, compute_uv=False).sum())


def eig_hermitian(m: Union[DensityMatrix, np.ndarray]) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, real, in descending order."""
    a = _as_matrix(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if np.max(np.abs(a - a.conj().T)) > EIG_HERMITIAN_ATOL:
        raise ValueError(f"matrix deviates from Hermitian beyond {EIG_HERMITIAN_ATOL}")
    return np.linalg.eigvalsh(a)[::-1]


def schmidt_state(p: SchmidtParams) -> PureState:
    """Three-qubit state with the five canonical amplitudes, others zero."""
    l0, l1, l2, l3, l4 = p.lam
    amps = np.zeros(8, dtype=np.complex128)
    amps[0b000] = l0
    amps[0b100] = l1 * np.exp(1j * p.phi)
    amps[0b101] = l2
    amps[0b110] = l3
    amps[0b111] = l4
    return PureState(3, amps)


def haar_random_pure(n_qubits: int, seed) -> PureState:
    """Haar-distributed pure state; deterministic for a fixed seed."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    rng = np.random.default_rng(seed)
    return haar_from_rng(n_qubits, rng)


def haar_from_rng(n_qubits: int, rng: np.random.Generator) -> PureState:
    """Haar sample drawn from a caller-owned generator."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    dim = 2**n_qubits
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(n_qubits, z / np.linalg.norm(z))
