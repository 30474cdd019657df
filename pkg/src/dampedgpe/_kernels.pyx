# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 stepping kernel for the damped GPE.

Semantics match dampedgpe._kernels_py.rk4_span exactly: Dirichlet
central-difference Laplacian, classical RK4 stages, per-step finite check.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport isfinite, sin

cnp.import_array()

ctypedef double complex cplx


cdef inline void _rhs(const cplx* psi, cplx* out, const double* v_base, Py_ssize_t n,
                      double t, double invdx2, double c_n, double c_rate, double mu,
                      cplx lam_minus_i, bint modulated, double eta,
                      double drive_omega, double t_off) noexcept nogil:
    cdef Py_ssize_t j
    cdef cplx lap
    cdef double dens, fac, c_t
    if modulated and t < t_off:
        fac = 1.0 + eta * sin(drive_omega * t)
    else:
        fac = 1.0
    c_t = c_n + c_rate * t
    for j in range(n):
        lap = -2.0 * psi[j]
        if j > 0:
            lap = lap + psi[j - 1]
        if j < n - 1:
            lap = lap + psi[j + 1]
        dens = psi[j].real * psi[j].real + psi[j].imag * psi[j].imag
        out[j] = lam_minus_i * (-0.5 * invdx2 * lap + (fac * v_base[j] + c_t * dens - mu) * psi[j])


def rk4_span(values, Py_ssize_t n_steps, double t0, double dt, double dx, v_base,
             double c_n, double mu, double lam, bint modulated=False, double eta=0.0,
             double drive_omega=0.0, double t_off=0.0, double c_rate=0.0):
    """Advance `values` by n_steps classical RK4 steps.

    Returns (state, completed) where completed < n_steps means non-finite
    samples appeared; `state` is then the last finite state.
    """
    cdef cnp.ndarray[cplx, ndim=1] cur = np.array(values, dtype=np.complex128)
    cdef cnp.ndarray[double, ndim=1] vb = np.ascontiguousarray(v_base, dtype=np.float64)
    cdef Py_ssize_t n = cur.shape[0]
    if vb.shape[0] != n:
        raise ValueError("potential table length does not match the field")

    cdef cnp.ndarray[cplx, ndim=1] nxt = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=1] k1 = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=1] k2 = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=1] k3 = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=1] k4 = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cplx, ndim=1] stage = np.empty(n, dtype=np.complex128)

    cdef cplx* pc = &cur[0]
    cdef cplx* pn = &nxt[0]
    cdef cplx* p1 = &k1[0]
    cdef cplx* p2 = &k2[0]
    cdef cplx* p3 = &k3[0]
    cdef cplx* p4 = &k4[0]
    cdef cplx* ps = &stage[0]
    cdef double* pv = &vb[0]

    cdef cplx lam_minus_i = lam - 1j
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double t
    cdef Py_ssize_t k, j, done = n_steps
    cdef bint bad
    cdef cplx* tmp

    with nogil:
        for k in range(n_steps):
            t = t0 + k * dt
            _rhs(pc, p1, pv, n, t, 1.0 / (dx * dx), c_n, c_rate, mu, lam_minus_i,
                 modulated, eta, drive_omega, t_off)
            for j in range(n):
                ps[j] = pc[j] + half * p1[j]
            _rhs(ps, p2, pv, n, t + half, 1.0 / (dx * dx), c_n, c_rate, mu, lam_minus_i,
                 modulated, eta, drive_omega, t_off)
            for j in range(n):
                ps[j] = pc[j] + half * p2[j]
            _rhs(ps, p3, pv, n, t + half, 1.0 / (dx * dx), c_n, c_rate, mu, lam_minus_i,
                 modulated, eta, drive_omega, t_off)
            for j in range(n):
                ps[j] = pc[j] + dt * p3[j]
            _rhs(ps, p4, pv, n, t + dt, 1.0 / (dx * dx), c_n, c_rate, mu, lam_minus_i,
                 modulated, eta, drive_omega, t_off)
            bad = False
            for j in range(n):
                pn[j] = pc[j] + sixth * (p1[j] + 2.0 * (p2[j] + p3[j]) + p4[j])
                if not (isfinite(pn[j].real) and isfinite(pn[j].imag)):
                    bad = True
            if bad:
                done = k
                break
            tmp = pc
            pc = pn
            pn = tmp

    if pc == &cur[0]:
        return cur, done
    return nxt, done
