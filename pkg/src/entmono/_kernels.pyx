# Compiled hot kernels: pure-state marginals and the Wootters spectrum.
#
# Same call surface as entmono._kernels_py. The campaigns evaluate these on
# 1e4-1e5 random states, where per-call numpy overhead dominates; everything
# here runs as straight C loops on 2x2/4x4 blocks.
#
# Index convention: qubit 0 is the most significant bit of the basis index.

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

BACKEND = "compiled"

DEF MAXN = 4
cdef double ZERO_CUT = 16.0 * 2.220446049250313e-16  # 16 * double eps


cdef inline double _cabs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef void _jacobi_eigh(double complex* a, int n, double* w,
                       double complex* v, bint want_v) noexcept nogil:
    """Cyclic complex Jacobi on a Hermitian n x n matrix (n <= MAXN).

    Diagonalizes in place; eigenvalues land in w (unsorted), eigenvectors in
    the columns of v when requested. Quadratic convergence; a handful of
    sweeps suffices at these sizes.
    """
    cdef int sweep, p, q, i
    cdef double off, ab, alpha, gamma, tau, t, c, s
    cdef double complex b, phase, xp, xq

    if want_v:
        for p in range(n):
            for q in range(n):
                v[p * n + q] = 1.0 if p == q else 0.0

    for sweep in range(60):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += _cabs2(a[p * n + q])
        if off < 1e-34:
            break
        for p in range(n):
            for q in range(p + 1, n):
                b = a[p * n + q]
                ab = sqrt(_cabs2(b))
                if ab < 1e-300:
                    continue
                phase = b / ab
                alpha = a[p * n + p].real
                gamma = a[q * n + q].real
                if alpha == gamma:
                    t = 1.0
                else:
                    tau = (alpha - gamma) / (2.0 * ab)
                    t = (1.0 if tau > 0 else -1.0) / (fabs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # U[p,p]=c, U[p,q]=-s*phase, U[q,p]=s*conj(phase), U[q,q]=c
                for i in range(n):
                    xp = a[i * n + p]
                    xq = a[i * n + q]
                    a[i * n + p] = c * xp + s * phase.conjugate() * xq
                    a[i * n + q] = -s * phase * xp + c * xq
                for i in range(n):
                    xp = a[p * n + i]
                    xq = a[q * n + i]
                    a[p * n + i] = c * xp + s * phase * xq
                    a[q * n + i] = -s * phase.conjugate() * xp + c * xq
                if want_v:
                    for i in range(n):
                        xp = v[i * n + p]
                        xq = v[i * n + q]
                        v[i * n + p] = c * xp + s * phase.conjugate() * xq
                        v[i * n + q] = -s * phase * xp + c * xq
    for p in range(n):
        w[p] = a[p * n + p].real


cdef inline int _strip_bits(int t, int hi, int lo) noexcept nogil:
    # Remove bit positions hi > lo from t, closing the gaps.
    cdef int low = t & ((1 << lo) - 1)
    cdef int mid = (t >> (lo + 1)) & ((1 << (hi - lo - 1)) - 1)
    cdef int high = t >> (hi + 1)
    return (high << (hi - 1)) | (mid << lo) | low


def single_marginal(amps, int n_qubits, int q):
    """2x2 reduced density matrix of qubit ``q`` of a pure state."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] psi = np.ascontiguousarray(
        amps, dtype=np.complex128)
    cdef int dim = 1 << n_qubits
    cdef int sh = n_qubits - 1 - q
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((2, 2), dtype=np.complex128)
    cdef int t, r, g
    cdef int mask = (1 << sh) - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] buf = np.empty((2, dim >> 1), dtype=np.complex128)
    for t in range(dim):
        g = (t >> sh) & 1
        r = ((t >> (sh + 1)) << sh) | (t & mask)
        buf[g, r] = psi[t]
    cdef int ga, gb
    cdef double complex acc
    for ga in range(2):
        for gb in range(2):
            acc = 0
            for r in range(dim >> 1):
                acc += buf[ga, r] * buf[gb, r].conjugate()
            out[ga, gb] = acc
    return out


def pair_marginal(amps, int n_qubits, int qa, int qb):
    """4x4 reduced density matrix of qubits ``(qa, qb)`` of a pure state.

    Output tensor order is (qa, qb): row index ``2*bit(qa) + bit(qb)``.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] psi = np.ascontiguousarray(
        amps, dtype=np.complex128)
    cdef int dim = 1 << n_qubits
    cdef int sa = n_qubits - 1 - qa
    cdef int sb = n_qubits - 1 - qb
    cdef int hi = sa if sa > sb else sb
    cdef int lo = sb if sa > sb else sa
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] buf = np.empty((4, dim >> 2), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((4, 4), dtype=np.complex128)
    cdef int t, r, g
    for t in range(dim):
        g = (((t >> sa) & 1) << 1) | ((t >> sb) & 1)
        r = _strip_bits(t, hi, lo)
        buf[g, r] = psi[t]
    cdef int ga, gb
    cdef double complex acc
    for ga in range(4):
        for gb in range(4):
            acc = 0
            for r in range(dim >> 2):
                acc += buf[ga, r] * buf[gb, r].conjugate()
            out[ga, gb] = acc
    return out


def wootters_lambdas(rho):
    """Descending square roots of the spectrum of rho * (Y x Y) rho* (Y x Y).

    These are the four scalars entering the two-qubit concurrence
    ``max(0, l1 - l2 - l3 - l4)`` and its assisted variant ``sum(l)``.
    Hermitian square-root route: eigenvalues stay real and non-negative,
    and structural zeros are clipped before the square root.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] r = np.ascontiguousarray(
        rho, dtype=np.complex128)
    if r.shape[0] != 4 or r.shape[1] != 4:
        raise ValueError("wootters_lambdas expects a 4x4 matrix")

    cdef double complex a[16]
    cdef double complex v[16]
    cdef double complex sq[16]
    cdef double complex tmp[16]
    cdef double complex h[16]
    cdef double complex rt[16]
    cdef double w[4]
    cdef double lam[4]
    cdef double ysign[4]
    cdef int i, j, k2
    cdef double cut, emax, sw
    cdef double complex acc

    ysign[0] = -1.0; ysign[1] = 1.0; ysign[2] = 1.0; ysign[3] = -1.0
    for i in range(4):
        for j in range(4):
            a[i * 4 + j] = r[i, j]
            rt[i * 4 + j] = ysign[i] * ysign[j] * r[3 - i, 3 - j].conjugate()

    with nogil:
        _jacobi_eigh(a, 4, w, v, True)
        # sq = V sqrt(clip(w)) V^dag
        for i in range(4):
            if w[i] < 0.0:
                w[i] = 0.0
            w[i] = sqrt(w[i])
        for i in range(4):
            for j in range(4):
                acc = 0
                for k2 in range(4):
                    acc += v[i * 4 + k2] * w[k2] * v[j * 4 + k2].conjugate()
                sq[i * 4 + j] = acc
        # h = sq @ rt @ sq
        for i in range(4):
            for j in range(4):
                acc = 0
                for k2 in range(4):
                    acc += sq[i * 4 + k2] * rt[k2 * 4 + j]
                tmp[i * 4 + j] = acc
        for i in range(4):
            for j in range(4):
                acc = 0
                for k2 in range(4):
                    acc += tmp[i * 4 + k2] * sq[k2 * 4 + j]
                h[i * 4 + j] = acc
        _jacobi_eigh(h, 4, w, v, False)
        emax = 0.0
        for i in range(4):
            if w[i] > emax:
                emax = w[i]
        cut = ZERO_CUT * emax
        for i in range(4):
            lam[i] = 0.0 if w[i] < cut else sqrt(w[i])
        # insertion sort, descending
        for i in range(1, 4):
            sw = lam[i]
            j = i
            while j > 0 and lam[j - 1] < sw:
                lam[j] = lam[j - 1]
                j -= 1
            lam[j] = sw

    out = np.empty(4, dtype=np.float64)
    for i in range(4):
        out[i] = lam[i]
    return out
