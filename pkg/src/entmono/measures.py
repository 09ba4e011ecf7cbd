"""Closed-form entanglement measures and their auxiliary scalar functions.

Pure-bipartition measures are spectral functions of the reduced state;
two-qubit mixed states use the spin-flip closed forms. The scalar maps
``eof_f``, ``tsallis_g`` and ``renyi_f`` convert squared concurrence (or
concurrence, for the Renyi family) into the matching entropy-based measure
for qubit-sided bipartitions.

Conventions: all entropies are base 2, ``0 * log 0 == 0``, and reduction
eigenvalues in ``[-1e-10, 0)`` are clamped to zero before powers and roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .qstate import Bipartition, DensityMatrix, PureState, _as_bipartition, _as_matrix

SQRT2 = float(np.sqrt(2.0))

DOMAIN_ATOL = 1e-12
EIG_CLAMP = 1e-10


class UnsupportedMeasureError(ValueError):
    """Raised when a measure kind cannot be evaluated on the given input shape."""


@dataclass(frozen=True)
class MeasureKind:
    """Tagged measure selector; ``param`` is q for Tsallis, alpha for Renyi."""

    tag: str
    param: Optional[float] = None

    _TAGS = (
        "concurrence",
        "concurrence_assist",
        "eof",
        "eof_assist",
        "cren",
        "cren_assist",
        "tsallis",
        "renyi",
    )

    def __post_init__(self):
        if self.tag not in self._TAGS:
            raise ValueError(f"unknown measure tag {self.tag!r}")
        if self.tag == "tsallis":
            if self.param is None or self.param <= 0 or self.param == 1.0:
                raise ValueError("Tsallis requires q > 0, q != 1")
        elif self.tag == "renyi":
            # alpha == 1 is accepted and evaluated as the von Neumann limit.
            if self.param is None or self.param <= 0:
                raise ValueError("Renyi requires alpha > 0")
        elif self.param is not None:
            raise ValueError(f"{self.tag} takes no parameter")

    @classmethod
    def concurrence(cls):
        return cls("concurrence")

    @classmethod
    def concurrence_assist(cls):
        return cls("concurrence_assist")

    @classmethod
    def eof(cls):
        return cls("eof")

    @classmethod
    def eof_assist(cls):
        return cls("eof_assist")

    @classmethod
    def cren(cls):
        return cls("cren")

    @classmethod
    def cren_assist(cls):
        return cls("cren_assist")

    @classmethod
    def tsallis(cls, q: float):
        return cls("tsallis", float(q))

    @classmethod
    def renyi(cls, alpha: float):
        return cls("renyi", float(alpha))

    @property
    def is_assist(self) -> bool:
        return self.tag.endswith("_assist")


# ---------------------------------------------------------------------------
# scalar maps
# ---------------------------------------------------------------------------

def _binary_entropy(p):
    p = np.asarray(p, dtype=np.float64)
    out = np.zeros_like(p)
    m = (p > 0.0) & (p < 1.0)
    pm = p[m]
    out[m] = -pm * np.log2(pm) - (1 - pm) * np.log2(1 - pm)
    return out


def _clamp_unit(x, name: str):
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < -DOMAIN_ATOL) or np.any(x > 1.0 + DOMAIN_ATOL):
        raise ValueError(f"{name} must lie in [0, 1] (tolerance {DOMAIN_ATOL})")
    return np.clip(x, 0.0, 1.0)


def eof_f(x):
    """Entanglement of formation as a function of squared concurrence.

    f(x) = H((1 + sqrt(1-x))/2) with H the base-2 binary entropy.
    Monotone increasing on [0, 1], f(0) = 0, f(1) = 1. Accepts scalars or
    arrays; values within 1e-12 of the domain are clamped.
    """
    x = _clamp_unit(x, "eof_f argument")
    out = _binary_entropy((1.0 + np.sqrt(1.0 - x)) / 2.0)
    return float(out) if out.ndim == 0 else out


def tsallis_g(q: float, x):
    """Tsallis-q entanglement as a function of squared concurrence.

    g_q(x) = [1 - ((1+sqrt(1-x))/2)^q - ((1-sqrt(1-x))/2)^q] / (q - 1).
    """
    if q <= 0 or q == 1.0:
        raise ValueError("tsallis_g requires q > 0, q != 1")
    x = _clamp_unit(x, "tsallis_g argument")
    s = np.sqrt(1.0 - x)
    out = (1.0 - ((1.0 + s) / 2.0) ** q - ((1.0 - s) / 2.0) ** q) / (q - 1.0)
    return float(out) if out.ndim == 0 else out


def renyi_f(alpha: float, x):
    """Renyi-alpha entanglement as a function of concurrence (not squared).

    f_a(x) = log2[((1-sqrt(1-x^2))/2)^a + ((1+sqrt(1-x^2))/2)^a] / (1 - a);
    alpha == 1 evaluates the continuous (von Neumann) limit.
    """
    if alpha <= 0:
        raise ValueError("renyi_f requires alpha > 0")
    x = _clamp_unit(x, "renyi_f argument")
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    if alpha == 1.0:
        out = _binary_entropy((1.0 + s) / 2.0)
    else:
        out = np.log2(((1.0 - s) / 2.0) ** alpha + ((1.0 + s) / 2.0) ** alpha) / (1.0 - alpha)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# reduction spectra
# ---------------------------------------------------------------------------

def _reduction_spectrum(psi: PureState, b) -> np.ndarray:
    """Non-trivial eigenvalues of the reduction of |psi><psi| onto ``b.keep``.

    Works on the Gram matrix of the smaller side; both sides of a pure-state
    bipartition share the non-zero spectrum. Negative rounding noise is
    clamped to zero.
    """
    b = _as_bipartition(b)
    b.validate_for(psi.n_qubits)
    n = psi.n_qubits
    rest = b.complement(n)
    t = psi.amplitudes.reshape([2] * n)
    mat = np.transpose(t, list(b.keep) + list(rest)).reshape(2 ** len(b.keep), -1)
    if mat.shape[0] <= mat.shape[1]:
        gram = mat @ mat.conj().T
    else:
        gram = mat.conj().T @ mat
    w = np.linalg.eigvalsh(gram)
    if w[0] < -EIG_CLAMP:
        raise ValueError(f"reduction eigenvalue {w[0]!r} below -{EIG_CLAMP}")
    return np.clip(w, 0.0, None)


def _two_qubit_entries(rho: Union[DensityMatrix, np.ndarray]) -> np.ndarray:
    m = _as_matrix(rho)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit state, got shape {m.shape}")
    return m


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------

def concurrence_pure(psi: PureState, b) -> float:
    """sqrt(2 (1 - tr rho_A^2)) across the bipartition ``b``."""
    w = _reduction_spectrum(psi, b)
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - float(np.sum(w * w))))))


def concurrence_two_qubit(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """Spin-flip closed form max(0, l1 - l2 - l3 - l4) for two-qubit states."""
    lam = kernels.wootters_lambdas(_two_qubit_entries(rho))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def coa_two_qubit(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """Concurrence of assistance closed form l1 + l2 + l3 + l4.

    Equals the concurrence on rank-one inputs.
    """
    lam = kernels.wootters_lambdas(_two_qubit_entries(rho))
    return float(lam.sum())


def negativity_mixed(rho: Union[DensityMatrix, np.ndarray], n_qubits: int, b) -> float:
    """Trace norm of the partial transpose minus one, clamped at zero."""
    from .qstate import partial_transpose, trace_norm

    val = trace_norm(partial_transpose(rho, n_qubits, b)) - 1.0
    return float(max(0.0, val))


def negativity_pure(psi: PureState, b) -> float:
    """(sum_i sqrt(mu_i))^2 - 1 over the reduction eigenvalues."""
    w = _reduction_spectrum(psi, b)
    return float(max(0.0, float(np.sum(np.sqrt(w))) ** 2 - 1.0))


def entropy_pure(psi: PureState, b) -> float:
    """Base-2 von Neumann entropy of the reduction."""
    w = _reduction_spectrum(psi, b)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log2(w)))


def eof_two_qubit(rho: Union[DensityMatrix, np.ndarray]) -> float:
    """f(C^2) with C the two-qubit Wootters concurrence."""
    c = concurrence_two_qubit(rho)
    return eof_f(c * c)


def tsallis_pure(q: float, psi: PureState, b) -> float:
    """(1 - sum_i mu_i^q) / (q - 1) over the reduction eigenvalues."""
    if q <= 0 or q == 1.0:
        raise ValueError("tsallis_pure requires q > 0, q != 1")
    w = _reduction_spectrum(psi, b)
    w = w[w > 0.0]
    return float((1.0 - np.sum(w**q)) / (q - 1.0))


def renyi_pure(alpha: float, psi: PureState, b) -> float:
    """Base-2 Renyi-alpha entropy of the reduction; alpha == 1 is the von Neumann limit."""
    if alpha <= 0:
        raise ValueError("renyi_pure requires alpha > 0")
    if alpha == 1.0:
        return entropy_pure(psi, b)
    w = _reduction_spectrum(psi, b)
    w = w[w > 0.0]
    return float(np.log2(np.sum(w**alpha)) / (1.0 - alpha))


# ---------------------------------------------------------------------------
# uniform dispatch
# ---------------------------------------------------------------------------

def measure_value(kind: MeasureKind, psi: PureState, b) -> float:
    """Evaluate any measure kind on a pure bipartition.

    Assistance kinds coincide with their plain counterparts on pure inputs.
    """
    tag = kind.tag
    if tag in ("concurrence", "concurrence_assist"):
        return concurrence_pure(psi, b)
    if tag in ("eof", "eof_assist"):
        return entropy_pure(psi, b)
    if tag in ("cren", "cren_assist"):
        return negativity_pure(psi, b)
    if tag == "tsallis":
        return tsallis_pure(kind.param, psi, b)
    if tag == "renyi":
        return renyi_pure(kind.param, psi, b)
    raise UnsupportedMeasureError(f"measure {tag!r} unsupported on pure states")


def measure_value_2q(kind: MeasureKind, rho: Union[DensityMatrix, np.ndarray]) -> float:
    """Evaluate a measure kind on a two-qubit mixed state via its closed form."""
    tag = kind.tag
    if tag == "concurrence":
        return concurrence_two_qubit(rho)
    if tag == "concurrence_assist":
        return coa_two_qubit(rho)
    if tag == "eof":
        return eof_two_qubit(rho)
    if tag == "cren":
        return concurrence_two_qubit(rho)
    if tag == "tsallis":
        c = concurrence_two_qubit(rho)
        return tsallis_g(kind.param, c * c)
    if tag == "renyi":
        c = concurrence_two_qubit(rho)
        return renyi_f(kind.param, c)
    raise UnsupportedMeasureError(
        f"measure {tag!r} has no two-qubit mixed-state closed form"
    )
