"""Pure-numpy implementations of the hot kernels.

Same call surface as the compiled module ``entmono._kernels``; selected at
import time by :mod:`entmono.kernels` when the extension is unavailable (or
when ``ENTMONO_PURE_PYTHON`` is set).

Index convention: qubit 0 is the most significant bit of the basis index.
"""

import numpy as np

BACKEND = "python"

# (YxY) rho* (YxY) reduces to sign-flipped entries of the anti-transposed
# conjugate: rho_t[i, j] = y[i] * y[j] * conj(rho[3-i, 3-j]).
_Y_SIGNS = np.array([-1.0, 1.0, 1.0, -1.0])
_Y_OUTER = np.outer(_Y_SIGNS, _Y_SIGNS)
# Eigenvalues of the spin-flipped product below this (relative) cutoff are
# structural zeros; sqrt of eigensolver noise would otherwise leave a ~1e-8
# floor on the small Wootters lambdas.
_ZERO_CUT = 16.0 * np.finfo(np.float64).eps


def single_marginal(amps, n_qubits, q):
    """2x2 reduced density matrix of qubit ``q`` of a pure state."""
    t = np.asarray(amps, dtype=np.complex128).reshape([2] * n_qubits)
    rest = [i for i in range(n_qubits) if i != q]
    buf = np.transpose(t, [q] + rest).reshape(2, -1)
    return buf @ buf.conj().T


def pair_marginal(amps, n_qubits, qa, qb):
    """4x4 reduced density matrix of qubits ``(qa, qb)`` of a pure state.

    Output tensor order is (qa, qb): row index ``2*bit(qa) + bit(qb)``.
    """
    t = np.asarray(amps, dtype=np.complex128).reshape([2] * n_qubits)
    rest = [i for i in range(n_qubits) if i not in (qa, qb)]
    buf = np.transpose(t, [qa, qb] + rest).reshape(4, -1)
    return buf @ buf.conj().T


def wootters_lambdas(rho):
    """Descending square roots of the spectrum of rho * (Y x Y) rho* (Y x Y).

    These are the four scalars entering the two-qubit concurrence
    ``max(0, l1 - l2 - l3 - l4)`` and its assisted variant ``sum(l)``.
    Computed through the Hermitian square-root route, which keeps every
    eigenvalue real and non-negative by construction.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    rho_t = _Y_OUTER * rho[::-1, ::-1].conj()
    w, v = np.linalg.eigh(rho)
    sq = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    e = np.linalg.eigvalsh(sq @ rho_t @ sq)
    cut = _ZERO_CUT * max(e[-1], 0.0)
    e = np.where(e < cut, 0.0, e)
    return np.sort(np.sqrt(e))[::-1]
