"""Adaptive Dormand-Prince 5(4) integration for the three-species system.

Plain-float inner loop (the state is only 3-dimensional, so numpy overhead
would dominate), FSAL stage reuse, PI step-size control, and cubic Hermite
dense output between accepted steps.  Resolution genuinely matters for this
system - coarse tolerances visibly deform the attractor - so the defaults
are strict (rtol 1e-9, atol 1e-12) and can be tightened further via
arguments or the TOPOSURGE_RTOL / TOPOSURGE_ATOL environment variables.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .dynamics import SystemParams, Vec3, rhs


class IntegrationError(RuntimeError):
    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (at t = {t:.6g})")
        self.t = t


DEFAULT_RTOL = float(os.environ.get("TOPOSURGE_RTOL", "1e-9"))
DEFAULT_ATOL = float(os.environ.get("TOPOSURGE_ATOL", "1e-12"))

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


@dataclass(frozen=True)
class IntegratorStats:
    n_accepted: int
    n_rejected: int
    n_rhs: int
    rtol: float
    atol: float


@dataclass(frozen=True)
class Trajectory:
    params: SystemParams
    t: tuple[float, ...]
    states: tuple[Vec3, ...]
    derivs: tuple[Vec3, ...]
    stats: IntegratorStats

    def __len__(self) -> int:
        return len(self.t)

    @property
    def t_end(self) -> float:
        return self.t[-1]

    def state_at(self, tq: float) -> Vec3:
        """Cubic Hermite interpolation at time tq within the sampled range."""
        return hermite_state(self.t, self.states, self.derivs, tq)

    def diameter(self) -> float:
        lo = [min(s[i] for s in self.states) for i in range(3)]
        hi = [max(s[i] for s in self.states) for i in range(3)]
        return max(h - l for h, l in zip(hi, lo))


def _initial_step(f0: Vec3, y0: Vec3, p: SystemParams, t_end: float,
                  rtol: float, atol: float) -> float:
    sc = [atol + rtol * abs(y) for y in y0]
    d0 = math.sqrt(sum((y / s) ** 2 for y, s in zip(y0, sc)) / 3.0)
    d1 = math.sqrt(sum((f / s) ** 2 for f, s in zip(f0, sc)) / 3.0)
    h0 = 1e-6 if d1 < 1e-5 or d0 < 1e-5 else 0.01 * d0 / d1
    y1 = tuple(y + h0 * f for y, f in zip(y0, f0))
    f1 = rhs(y1, p)
    d2 = math.sqrt(sum(((a - b) / s) ** 2 for a, b, s in zip(f1, f0, sc)) / 3.0) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, t_end)


def integrate(
    p: SystemParams,
    ic: Vec3,
    t_end: float,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    max_steps: int = 5_000_000,
) -> Trajectory:
    """Integrate from t = 0 to t_end, recording every accepted step."""
    if t_end <= 0.0:
        raise ValueError("t_end must be positive")
    if not (1e-13 <= rtol <= 1e-3) or not (1e-13 <= atol <= 1e-3):
        raise ValueError("tolerances must lie in [1e-13, 1e-3]")

    y = tuple(float(v) for v in ic)
    t = 0.0
    f = rhs(y, p)
    n_rhs = 1
    h = _initial_step(f, y, p, t_end, rtol, atol)
    n_rhs += 1

    ts = [t]
    states = [y]
    derivs = [f]
    n_acc = 0
    n_rej = 0
    err_prev = 1e-4
    k = [f] + [None] * 6

    while t < t_end:
        if h < 1e-14 * max(1.0, abs(t)):
            raise IntegrationError("step size underflow", t)
        if n_acc + n_rej > max_steps:
            raise IntegrationError("step budget exhausted", t)
        if t + h > t_end:
            h = t_end - t

        for i in range(1, 7):
            ai = _A[i]
            yi = tuple(
                y[j] + h * sum(ai[m] * k[m][j] for m in range(i))
                for j in range(3)
            )
            k[i] = rhs(yi, p)
        n_rhs += 6

        y_new = tuple(
            y[j] + h * sum(_B5[m] * k[m][j] for m in range(7)) for j in range(3)
        )
        if not all(math.isfinite(v) for v in y_new):
            raise IntegrationError("non-finite state", t)

        err = 0.0
        for j in range(3):
            e = h * sum(_E[m] * k[m][j] for m in range(7))
            sc = atol + rtol * max(abs(y[j]), abs(y_new[j]))
            err += (e / sc) ** 2
        err = math.sqrt(err / 3.0)

        if err <= 1.0:
            t += h
            y = y_new
            f = k[6]  # FSAL: last stage is f(t + h, y_new)
            k[0] = f
            ts.append(t)
            states.append(y)
            derivs.append(f)
            n_acc += 1
            fac = 5.0 if err == 0.0 else min(
                5.0, max(0.2, 0.9 * err ** -0.17 * err_prev ** 0.04)
            )
            err_prev = max(err, 1e-10)
            h *= fac
        else:
            n_rej += 1
            h *= max(0.1, 0.9 * err ** -0.2)

    return Trajectory(
        params=p,
        t=tuple(ts),
        states=tuple(states),
        derivs=tuple(derivs),
        stats=IntegratorStats(n_acc, n_rej, n_rhs, rtol, atol),
    )


# ---------------------------------------------------------------------------
# dense output
# ---------------------------------------------------------------------------

def _hermite(t0, t1, y0, y1, f0, f1, tq):
    h = t1 - t0
    s = (tq - t0) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return tuple(
        h00 * a + h10 * h * fa + h01 * b + h11 * h * fb
        for a, b, fa, fb in zip(y0, y1, f0, f1)
    )


def _bracket(ts, tq: float) -> int:
    lo, hi = 0, len(ts) - 1
    if tq <= ts[0]:
        return 0
    if tq >= ts[-1]:
        return len(ts) - 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ts[mid] <= tq:
            lo = mid
        else:
            hi = mid
    return lo


def hermite_state(ts, states, derivs, tq: float) -> Vec3:
    i = _bracket(ts, tq)
    return _hermite(
        ts[i], ts[i + 1], states[i], states[i + 1], derivs[i], derivs[i + 1], tq
    )


def resample(traj: Trajectory, n: int) -> tuple[tuple[float, ...], tuple[Vec3, ...]]:
    """Uniform time grid with n points via dense output."""
    if n < 2:
        raise ValueError("need at least 2 resample points")
    t0, t1 = traj.t[0], traj.t[-1]
    ts = tuple(t0 + (t1 - t0) * i / (n - 1) for i in range(n))
    return ts, tuple(traj.state_at(tq) for tq in ts)
