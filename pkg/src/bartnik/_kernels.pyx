# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled shape-ODE kernel.

Mirrors ``_kernels_py`` operation for operation; see that module for the
contract.  Keep the two implementations in lockstep.
"""

import numpy as np

COMPILED = True

cdef double _R_FLOOR = 1e-9


cdef inline double _theta_at(double[::1] theta, double inv_ds, int last, double u) noexcept:
    cdef double x = u * inv_ds
    cdef int i = <int>x
    cdef double frac
    if i >= last:
        return theta[last]
    frac = x - i
    return theta[i] * (1.0 - frac) + theta[i + 1] * frac


cdef inline double _accel(double[::1] theta, double inv_ds, int last,
                          double s, double r, double v) noexcept:
    cdef double th = _theta_at(theta, inv_ds, last, s)
    cdef double w = 1.0 - v * v
    if w < 0.0:
        th = 1.0
    return th * w / (2.0 * r)


def integrate_shape_ode(theta, double s_len, double r0, double v0, int n_steps):
    """See ``bartnik._kernels_py.integrate_shape_ode``."""
    cdef double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef int n_nodes = th.shape[0]
    if n_nodes < 2:
        raise ValueError("need at least two control nodes")
    if s_len <= 0.0 or n_steps < 1:
        raise ValueError("invalid collar length or step count")
    cdef double h = s_len / n_steps
    cdef double inv_ds = (n_nodes - 1) / s_len
    cdef int last = n_nodes - 1

    r_arr = np.empty(n_steps + 1, dtype=np.float64)
    v_arr = np.empty(n_steps + 1, dtype=np.float64)
    cdef double[::1] r_out = r_arr
    cdef double[::1] v_out = v_arr

    cdef double r = r0
    cdef double v = v0
    cdef double s, a1, a2, a3, a4, r2, v2, r3, v3, r4, v4, r_new, v_new
    cdef int k, j, status = 0
    r_out[0] = r
    v_out[0] = v
    for k in range(n_steps):
        s = k * h
        if r <= _R_FLOOR:
            status = 1
        else:
            a1 = _accel(th, inv_ds, last, s, r, v)
            r2 = r + 0.5 * h * v
            v2 = v + 0.5 * h * a1
            if r2 <= _R_FLOOR:
                status = 1
            else:
                a2 = _accel(th, inv_ds, last, s + 0.5 * h, r2, v2)
                r3 = r + 0.5 * h * v2
                v3 = v + 0.5 * h * a2
                if r3 <= _R_FLOOR:
                    status = 1
                else:
                    a3 = _accel(th, inv_ds, last, s + 0.5 * h, r3, v3)
                    r4 = r + h * v3
                    v4 = v + h * a3
                    if r4 <= _R_FLOOR:
                        status = 1
                    else:
                        a4 = _accel(th, inv_ds, last, s + h, r4, v4)
                        r_new = r + (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4)
                        v_new = v + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
                        if r_new <= _R_FLOOR:
                            status = 1
                        else:
                            r = r_new
                            v = v_new
        if status:
            for j in range(k + 1, n_steps + 1):
                r_out[j] = r_out[k]
                v_out[j] = v_out[k]
            break
        r_out[k + 1] = r
        v_out[k + 1] = v
    return status, r_arr, v_arr
