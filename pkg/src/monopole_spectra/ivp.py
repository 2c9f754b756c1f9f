"""Adaptive classical RK4 for the small second-order problems in this package.

Step control by step doubling: one full step is compared against two half
steps; the halved solution is kept (local extrapolation). Amplitudes are
renormalized when they grow past 1e100 so inward integration through long
evanescent stretches cannot overflow; callers relying on renormalization must
only use scale-invariant quantities (log-derivatives, node positions).
"""

from __future__ import annotations

import numpy as np


class IntegrationError(RuntimeError):
    pass


_RESCALE_AT = 1e100


def _rk4_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(f, t0: float, t1: float, y0, rtol: float = 1e-11, max_step: float = 0.1,
              record_at=None):
    """Integrate y' = f(t, y) from t0 to t1 (either direction).

    Returns (y_final, scale_log) where scale_log accumulates the logs of the
    renormalization factors applied (0.0 when none). If `record_at` is given
    (sorted along the direction of travel), also returns the list of y values
    sampled at those abscissae as a third element.
    """
    y = np.asarray(y0, dtype=float).copy()
    t = float(t0)
    direction = 1.0 if t1 >= t0 else -1.0
    h = direction * min(max_step, max(abs(t1 - t0) * 1e-3, 1e-8))
    scale_log = 0.0
    rec_pts = list(record_at) if record_at is not None else []
    rec_vals: list[np.ndarray] = []
    ri = 0

    def advance_to(t_target):
        nonlocal t, y, h, scale_log
        while (t_target - t) * direction > 1e-14 * max(1.0, abs(t_target)):
            step = h
            if (t + step - t_target) * direction > 0:
                step = t_target - t
            y_full = _rk4_step(f, t, y, step)
            y_half = _rk4_step(f, t, y, 0.5 * step)
            y_half = _rk4_step(f, t + 0.5 * step, y_half, 0.5 * step)
            scale = float(np.max(np.abs(y_half))) + 1e-300
            err = float(np.max(np.abs(y_half - y_full))) / scale
            if err <= rtol:
                t += step
                y = y_half
                if scale > _RESCALE_AT:
                    y /= scale
                    scale_log += np.log(scale)
                if err < 0.1 * rtol:
                    h = direction * min(abs(h) * 1.6, max_step)
            else:
                h *= 0.5
                if abs(h) < 1e-14:
                    raise IntegrationError(f"step size underflow at t = {t}")

    for ri in range(len(rec_pts)):
        advance_to(rec_pts[ri])
        rec_vals.append(y.copy())
    advance_to(t1)
    if record_at is not None:
        return y, scale_log, rec_vals
    return y, scale_log
