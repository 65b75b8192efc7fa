"""Pure-Python fallback for the compiled shape-ODE kernel.

Implements exactly the same RK4 scheme, in the same operation order, as
``_kernels.pyx``; both backends produce bit-identical trajectories on the
same inputs (the extension is compiled with FP contraction disabled).
"""

import numpy as np

COMPILED = False

_R_FLOOR = 1e-9


def _theta_at(theta, inv_ds, last, u):
    # piecewise-linear interpolation of the control nodes
    x = u * inv_ds
    i = int(x)
    if i >= last:
        return theta[last]
    frac = x - i
    return theta[i] * (1.0 - frac) + theta[i + 1] * frac


def integrate_shape_ode(theta, s_len, r0, v0, n_steps):
    """Integrate r'' = theta(s) (1 - r'^2) / (2 r) over [0, s_len].

    ``theta`` holds node values of a piecewise-linear control function on
    an equispaced node grid covering [0, s_len].  When r' exceeds 1 in
    magnitude the control is clamped to 1 (the zero-scalar-curvature
    envelope), which keeps the generated metric inside R >= 0.

    Returns ``(status, r, v)`` where status 0 means success and 1 means
    the areal radius hit the positive floor (candidate rejected).  Arrays
    have length ``n_steps + 1`` and are filled with the last valid value
    past a failure.
    """
    theta = [float(t) for t in theta]
    n_nodes = len(theta)
    if n_nodes < 2:
        raise ValueError("need at least two control nodes")
    if s_len <= 0.0 or n_steps < 1:
        raise ValueError("invalid collar length or step count")
    h = s_len / n_steps
    inv_ds = (n_nodes - 1) / s_len
    last = n_nodes - 1

    r_out = np.empty(n_steps + 1)
    v_out = np.empty(n_steps + 1)
    r = float(r0)
    v = float(v0)
    r_out[0] = r
    v_out[0] = v
    status = 0
    for k in range(n_steps):
        s = k * h
        ok, r, v = _rk4_step(theta, inv_ds, last, s, h, r, v)
        if not ok:
            status = 1
            for j in range(k + 1, n_steps + 1):
                r_out[j] = r_out[k]
                v_out[j] = v_out[k]
            break
        r_out[k + 1] = r
        v_out[k + 1] = v
    return status, r_out, v_out


def _accel(theta, inv_ds, last, s, r, v):
    th = _theta_at(theta, inv_ds, last, s)
    w = 1.0 - v * v
    if w < 0.0:
        th = 1.0
    return th * w / (2.0 * r)


def _rk4_step(theta, inv_ds, last, s, h, r, v):
    if r <= _R_FLOOR:
        return False, r, v
    a1 = _accel(theta, inv_ds, last, s, r, v)
    r2 = r + 0.5 * h * v
    v2 = v + 0.5 * h * a1
    if r2 <= _R_FLOOR:
        return False, r, v
    a2 = _accel(theta, inv_ds, last, s + 0.5 * h, r2, v2)
    r3 = r + 0.5 * h * v2
    v3 = v + 0.5 * h * a2
    if r3 <= _R_FLOOR:
        return False, r, v
    a3 = _accel(theta, inv_ds, last, s + 0.5 * h, r3, v3)
    r4 = r + h * v3
    v4 = v + h * a3
    if r4 <= _R_FLOOR:
        return False, r, v
    a4 = _accel(theta, inv_ds, last, s + h, r4, v4)
    r_new = r + (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4)
    v_new = v + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
    if r_new <= _R_FLOOR:
        return False, r, v
    return True, r_new, v_new
