"""Kernel backends: parity with each other and with brute-force oracles."""

import numpy as np
import pytest

from entmono import _kernels_py

try:
    from entmono import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

BACKENDS = [pytest.param(_kernels_py, id="python")]
if _kernels_c is not None:
    BACKENDS.append(pytest.param(_kernels_c, id="compiled"))


def _haar(rng, n):
    z = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return z / np.linalg.norm(z)


def _brute_marginal(psi, n, keep):
    """Oracle: full outer product, then index-summed trace."""
    rho = np.outer(psi, psi.conj())
    dim = 2**n
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)
    traced = [q for q in range(n) if q not in keep]

    def split(idx):
        bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
        kept = sum(bits[q] << (len(keep) - 1 - i) for i, q in enumerate(keep))
        rest = tuple(bits[q] for q in traced)
        return kept, rest

    for i in range(dim):
        ki, ri = split(i)
        for j in range(dim):
            kj, rj = split(j)
            if ri == rj:
                out[ki, kj] += rho[i, j]
    return out


def _brute_wootters(rho):
    """Oracle: eigenvalues of rho (YxY) rho* (YxY) via a general eigensolve."""
    y = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=float)
    ev = np.linalg.eigvals(rho @ (y @ rho.conj() @ y))
    lam = np.sqrt(np.clip(ev.real, 0.0, None))
    return np.sort(lam)[::-1]


@pytest.mark.parametrize("impl", BACKENDS)
def test_single_marginal_against_brute_force(impl, rng):
    for _ in range(40):
        n = int(rng.integers(2, 6))
        psi = _haar(rng, n)
        q = int(rng.integers(0, n))
        got = impl.single_marginal(psi, n, q)
        want = _brute_marginal(psi, n, [q])
        assert np.max(np.abs(got - want)) < 1e-12


@pytest.mark.parametrize("impl", BACKENDS)
def test_pair_marginal_against_brute_force(impl, rng):
    for _ in range(40):
        n = int(rng.integers(2, 6))
        psi = _haar(rng, n)
        qa, qb = (int(q) for q in rng.choice(n, size=2, replace=False))
        got = impl.pair_marginal(psi, n, qa, qb)
        want = _brute_marginal(psi, n, [qa, qb])
        assert np.max(np.abs(got - want)) < 1e-12


@pytest.mark.parametrize("impl", BACKENDS)
def test_wootters_against_general_eigensolve(impl, rng):
    for _ in range(200):
        rank = int(rng.integers(1, 5))
        z = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
        rho = z @ z.conj().T
        rho /= np.trace(rho).real
        got = impl.wootters_lambdas(rho)
        want = _brute_wootters(rho)
        assert np.max(np.abs(got - want)) < 1e-7  # the brute sqrt carries eigensolver noise
        assert got[0] >= got[1] >= got[2] >= got[3] >= 0.0


@pytest.mark.parametrize("impl", BACKENDS)
def test_wootters_rank_one_is_exact(impl, rng):
    # Structural zeros must not leave a sqrt(eps) floor on the small lambdas.
    for _ in range(100):
        psi = _haar(rng, 2)
        rho = np.outer(psi, psi.conj())
        lam = impl.wootters_lambdas(rho)
        assert lam[1] == lam[2] == lam[3] == 0.0


@pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")
def test_backend_parity(rng):
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        psi = _haar(rng, n)
        qa, qb = (int(q) for q in rng.choice(n, size=2, replace=False))
        m_c = _kernels_c.pair_marginal(psi, n, qa, qb)
        m_p = _kernels_py.pair_marginal(psi, n, qa, qb)
        worst = max(worst, float(np.max(np.abs(m_c - m_p))))
        worst = max(
            worst,
            float(np.max(np.abs(
                _kernels_c.wootters_lambdas(m_c) - _kernels_py.wootters_lambdas(m_p)
            ))),
        )
        s_c = _kernels_c.single_marginal(psi, n, qa)
        s_p = _kernels_py.single_marginal(psi, n, qa)
        worst = max(worst, float(np.max(np.abs(s_c - s_p))))
    assert worst < 1e-12


def test_backend_selector_exposes_someone():
    from entmono import kernels

    assert kernels.BACKEND in ("compiled", "python")
    assert callable(kernels.wootters_lambdas)
