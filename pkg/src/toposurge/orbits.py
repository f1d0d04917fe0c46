"""Orbit topology: Poincare sections, winding, shell type, limit cycle.

Every non-equilibrium orbit of interest winds monotonically around the
S2-S3 axis, in both parameter regimes, so the azimuthal winding count says
nothing about the shell type.  What separates the regimes is the meridional
behaviour of the once-per-revolution section sequence in the (height,
radius) half-plane:

* spherical regime: the section point traverses a pole-to-pole arc exactly
  once (the orbit sweeps a sphere touching the axis at both ends, then is
  absorbed by the attracting part of the axis);
* toroidal regime: the section point circulates around a closed tube loop
  over and over while the orbit scrolls down the torus.

``classify_shell`` therefore counts tube circulations and axis touching;
``detect_limit_cycle`` refines a fixed point of the half-plane return map
by a damped finite-difference Newton iteration, which is what makes the
weakly attracting cycle near the Hopf onset reachable at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dynamics import SlowManifold, SystemParams, Vec3, slow_manifold
from .integrate import Trajectory, integrate

EPS_STATIONARY = 1e-6
EPS_AXIS = 1e-12
EPS_CYCLE = 1e-9

TUBE_TURNS_TOROIDAL = 3.0     # meridional circulations to call a tube a tube
TUBE_TURNS_SPHERICAL = 1.5    # at most one arc traversal (plus slack)
AXIS_TOUCH_SPHERICAL = 0.1    # r_min/r_max for a shell that closes at poles
AXIS_CLEAR_DEGENERATE = 0.3   # r_min/r_max for a collapsed (0-diameter) tube
SECTION_SPREAD_DEGENERATE = 0.01
MIN_AZIMUTH_TURNS = 3.0
MIN_MONOTONE_FRACTION = 0.95


# ---------------------------------------------------------------------------
# Poincare sections on arbitrary planes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionCrossing:
    t: float
    state: Vec3
    direction: int  # +1: from negative to positive side, -1: reverse


def poincare(
    traj: Trajectory, plane_point: Vec3, plane_normal: Vec3
) -> list[SectionCrossing]:
    """Plane crossings located by sign change plus bisection on the cubic
    Hermite interpolant between accepted steps."""
    n = np.asarray(plane_normal, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0.0:
        raise ValueError("plane normal must be nonzero")
    n /= norm
    p0 = np.asarray(plane_point, dtype=float)
    if len(traj) < 2:
        return []

    ys = np.asarray(traj.states)
    g = (ys - p0) @ n
    out: list[SectionCrossing] = []
    sign_change = np.nonzero(g[:-1] * g[1:] < 0.0)[0]
    for i in sign_change:
        t_lo, t_hi = traj.t[i], traj.t[i + 1]
        g_lo = g[i]
        for _ in range(60):
            t_mid = 0.5 * (t_lo + t_hi)
            y_mid = traj.state_at(t_mid)
            g_mid = (np.asarray(y_mid) - p0) @ n
            if (g_mid > 0) == (g_lo > 0):
                t_lo = t_mid
                g_lo = g_mid
            else:
                t_hi = t_mid
            if t_hi - t_lo <= 1e-14 * max(1.0, abs(t_hi)):
                break
        t_c = 0.5 * (t_lo + t_hi)
        out.append(
            SectionCrossing(
                t=t_c,
                state=traj.state_at(t_c),
                direction=1 if g[i] < 0 else -1,
            )
        )
    return out


# ---------------------------------------------------------------------------
# winding around the slow-manifold axis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindingProfile:
    axis_start: Vec3
    axis_end: Vec3
    t: np.ndarray
    theta: np.ndarray      # unwrapped azimuth around the axis
    radius: np.ndarray     # distance from the axis line
    height: np.ndarray     # coordinate along the axis (0 at S2)
    skipped: int           # samples discarded for sitting on the axis

    @property
    def total_turns(self) -> float:
        if len(self.theta) < 2:
            return 0.0
        return float(self.theta[-1] - self.theta[0]) / (2.0 * math.pi)

    @property
    def monotone_fraction(self) -> float:
        if len(self.theta) < 2:
            return 0.0
        d = np.diff(self.theta)
        if len(d) == 0:
            return 0.0
        return float(max((d > 0).mean(), (d < 0).mean()))


def _axis_coordinates(states: np.ndarray, axis: SlowManifold):
    u, e1, e2 = (np.asarray(v) for v in axis.axis_frame())
    d = states - np.asarray(axis.s2)
    h = d @ u
    radial = d - np.outer(h, u)
    r = np.linalg.norm(radial, axis=1)
    x1 = radial @ e1
    x2 = radial @ e2
    return h, r, x1, x2


def winding_profile(traj: Trajectory, axis: SlowManifold) -> WindingProfile:
    """Cumulative azimuth of the orbit around the S2->S3 axis.

    Samples closer to the axis than EPS_AXIS are skipped (their azimuth is
    undefined) and counted.  Azimuth gaps of pi or more are closed by
    inserting dense-output midpoints, so the unwrap is trustworthy.
    """
    seg = np.asarray(axis.s3) - np.asarray(axis.s2)
    if np.linalg.norm(seg) <= 0.0:
        raise ValueError("axis segment has zero length")

    ts = list(traj.t)
    states = [tuple(s) for s in traj.states]
    for _ in range(24):
        h, r, x1, x2 = _axis_coordinates(np.asarray(states), axis)
        ok = r >= EPS_AXIS
        theta_raw = np.arctan2(x2[ok], x1[ok])
        gaps = np.abs(np.diff(theta_raw))
        gaps = np.minimum(gaps, 2.0 * math.pi - gaps)  # wrapped gap size
        bad = np.nonzero(gaps >= math.pi * 0.999)[0]
        if len(bad) == 0:
            break
        ok_idx = np.nonzero(ok)[0]
        inserts = []
        for b in bad:
            i0, i1 = ok_idx[b], ok_idx[b + 1]
            if ts[i1] - ts[i0] <= 1e-12:
                continue
            inserts.append((i0, 0.5 * (ts[i0] + ts[i1])))
        if not inserts:
            break
        for i0, t_mid in reversed(inserts):
            ts.insert(i0 + 1, t_mid)
            states.insert(i0 + 1, traj.state_at(t_mid))

    arr = np.asarray(states)
    h, r, x1, x2 = _axis_coordinates(arr, axis)
    ok = r >= EPS_AXIS
    theta = np.unwrap(np.arctan2(x2[ok], x1[ok]))
    return WindingProfile(
        axis_start=axis.s2,
        axis_end=axis.s3,
        t=np.asarray(ts)[ok],
        theta=theta,
        radius=r[ok],
        height=h[ok],
        skipped=int((~ok).sum()),
    )


def section_sequence(profile: WindingProfile) -> tuple[np.ndarray, np.ndarray]:
    """(height, radius) once per azimuthal revolution: the meridional trace.

    Linear interpolation at each crossing of theta through multiples of
    2*pi, robust to locally non-monotone azimuth.
    """
    th = profile.theta
    if len(th) < 2:
        return np.empty(0), np.empty(0)
    hs: list[float] = []
    rs: list[float] = []
    two_pi = 2.0 * math.pi
    for i in range(len(th) - 1):
        a, b = th[i], th[i + 1]
        if a == b:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        k = math.ceil(lo / two_pi)
        while k * two_pi <= hi:
            tgt = k * two_pi
            s = (tgt - a) / (b - a)
            if 0.0 <= s <= 1.0:
                hs.append(profile.height[i] + s * (profile.height[i + 1] - profile.height[i]))
                rs.append(profile.radius[i] + s * (profile.radius[i + 1] - profile.radius[i]))
            k += 1
    return np.asarray(hs), np.asarray(rs)


def tube_turns(hs: np.ndarray, rs: np.ndarray) -> float:
    """Circulations of the section sequence around its own centroid in the
    variance-normalized (height, radius) plane."""
    if len(hs) < 4:
        return 0.0
    sh = hs.std()
    sr = rs.std()
    if sh <= 0.0 or sr <= 0.0:
        return 0.0
    x = (hs - hs.mean()) / sh
    y = (rs - rs.mean()) / sr
    ang = np.unwrap(np.arctan2(y, x))
    return float(abs(ang[-1] - ang[0]) / (2.0 * math.pi))


# ---------------------------------------------------------------------------
# shell classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShellClassification:
    verdict: str  # 'spherical' | 'toroidal' | 'stationary' | 'indeterminate'
    evidence: dict[str, float] = field(default_factory=dict)


def classify_shell(
    traj: Trajectory,
    axis: Optional[SlowManifold] = None,
    eps_stationary: float = EPS_STATIONARY,
) -> ShellClassification:
    """Shell verdict for one integrated orbit.

    stationary: never leaves an eps ball around the initial state.
    toroidal:   the meridional section circulates a tube loop (or has
                collapsed onto the 0-diameter tube, the limit cycle).
    spherical:  the meridional section runs pole-to-pole at most once and
                the swept surface touches the axis.
    """
    if len(traj) < 8:
        return ShellClassification("indeterminate", {"samples": float(len(traj))})
    if axis is None:
        axis = slow_manifold(traj.params)

    ys = np.asarray(traj.states)
    y0 = ys[0]
    disp = np.linalg.norm(ys - y0, axis=1)
    max_disp = float(disp.max())
    if max_disp < eps_stationary:
        return ShellClassification("stationary", {"max_displacement": max_disp})

    prof = winding_profile(traj, axis)
    turns = abs(prof.total_turns)
    mono = prof.monotone_fraction
    diam = traj.diameter()

    hs, rs = section_sequence(prof)
    tt = tube_turns(hs, rs)
    r_min = float(prof.radius.min()) if prof.skipped == 0 else 0.0
    r_max = float(prof.radius.max())
    touch = r_min / r_max if r_max > 0 else 0.0
    spread = 0.0
    if len(hs) >= 2:
        spread = float(np.hypot(np.ptp(hs), np.ptp(rs)))

    quarter = len(ys) // 4
    min_return = float(np.linalg.norm(ys[quarter:] - y0, axis=1).min()) if quarter else math.inf

    evidence = {
        "max_displacement": max_disp,
        "diameter": diam,
        "azimuth_turns": turns,
        "monotone_fraction": mono,
        "tube_turns": tt,
        "axis_touch_ratio": touch,
        "section_spread": spread,
        "section_points": float(len(hs)),
        "min_return_distance": min_return / diam if diam > 0 else math.inf,
    }

    if turns < MIN_AZIMUTH_TURNS or mono < MIN_MONOTONE_FRACTION:
        return ShellClassification("indeterminate", evidence)
    if tt >= TUBE_TURNS_TOROIDAL:
        return ShellClassification("toroidal", evidence)
    if spread <= SECTION_SPREAD_DEGENERATE * diam and touch >= AXIS_CLEAR_DEGENERATE:
        # collapsed tube: the orbit rides the limit cycle itself
        return ShellClassification("toroidal", evidence)
    if tt <= TUBE_TURNS_SPHERICAL and touch <= AXIS_TOUCH_SPHERICAL:
        return ShellClassification("spherical", evidence)
    return ShellClassification("indeterminate", evidence)


# ---------------------------------------------------------------------------
# limit cycle via Newton on the half-plane return map
# ---------------------------------------------------------------------------

class LimitCycleNotFound(RuntimeError):
    def __init__(self, message: str, history: tuple[float, ...]):
        super().__init__(message)
        self.history = history


@dataclass(frozen=True)
class LimitCycle:
    params: SystemParams
    anchor: Vec3
    period: float
    loop_t: tuple[float, ...]
    loop_states: tuple[Vec3, ...]
    residual: float
    history: tuple[float, ...]


class _ReturnMap:
    """First-return map of the half plane {azimuth = theta0, radius > 0}
    around the slow-manifold axis, in (height, radius) coordinates."""

    def __init__(self, p: SystemParams, axis: SlowManifold, rtol, atol,
                 t_min: float = 0.1):
        self.p = p
        self.axis = axis
        u, e1, e2 = axis.axis_frame()
        self.u = np.asarray(u)
        self.w = np.asarray(e1)       # the half-plane direction (theta0 = 0)
        self.n = np.asarray(e2)       # its normal within the axis-orthogonal plane
        self.origin = np.asarray(axis.s2)
        self.rtol = rtol
        self.atol = atol
        # seeds start exactly on the section, so float noise in g at t = 0
        # would register a bogus zero-time return without this cutoff
        self.t_min = t_min

    def embed(self, q) -> Vec3:
        h, r = q
        pt = self.origin + h * self.u + r * self.w
        return (float(pt[0]), float(pt[1]), float(pt[2]))

    def project(self, y) -> np.ndarray:
        d = np.asarray(y) - self.origin
        return np.array([d @ self.u, d @ self.w])

    def first_return(self, q, t_max: float = 40.0):
        """Map (h, r) to its next same-side crossing; returns (q', T)."""
        y0 = self.embed(q)
        traj = integrate(self.p, y0, t_max, rtol=self.rtol, atol=self.atol)
        ys = np.asarray(traj.states)
        d = ys - self.origin
        g = d @ self.n
        side = d @ self.w
        idx = np.nonzero((g[:-1] < 0.0) & (g[1:] >= 0.0) & (side[1:] > 0.0))[0]
        for i in idx:
            if traj.t[i + 1] < self.t_min:
                continue  # the departure itself
            t_lo, t_hi = traj.t[i], traj.t[i + 1]
            for _ in range(60):
                t_mid = 0.5 * (t_lo + t_hi)
                y_mid = np.asarray(traj.state_at(t_mid))
                if (y_mid - self.origin) @ self.n < 0.0:
                    t_lo = t_mid
                else:
                    t_hi = t_mid
                if t_hi - t_lo <= 1e-13 * max(1.0, t_hi):
                    break
            t_c = 0.5 * (t_lo + t_hi)
            y_c = traj.state_at(t_c)
            return self.project(y_c), t_c
        raise LimitCycleNotFound(
            f"no return to the section within t = {t_max}", ()
        )


def detect_limit_cycle(
    p: SystemParams,
    ic: Vec3,
    explore_time: float = 300.0,
    max_iterations: int = 25,
    eps_cycle: float = EPS_CYCLE,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    min_cycle_size: float = 1e-4,
) -> LimitCycle:
    """Find the periodic orbit by Newton iteration on the return map.

    Directly iterating returns cannot work here: near the Hopf onset the
    toroidal scroll contracts by well under a percent per circuit, so the
    transient lasts tens of thousands of revolutions.  Instead the orbit is
    explored briefly to seed the tube centre, then the return-map fixed
    point is refined with finite-difference Newton steps.  In the B/A = 1
    regime the map has a unit eigenvalue (a continuum of invariant shells),
    Newton stalls, and a LimitCycleNotFound carrying the residual history
    is raised.
    """
    axis = slow_manifold(p)

    # seed: centroid of the meridional section trace of a short exploration
    traj = integrate(p, ic, explore_time, rtol=rtol, atol=atol)
    prof = winding_profile(traj, axis)
    hs, rs = section_sequence(prof)
    if len(hs) < 3 or abs(prof.total_turns) < 2.0:
        raise LimitCycleNotFound("orbit does not wind around the axis", ())
    half = len(hs) // 2
    q = np.array([hs[half:].mean(), rs[half:].mean()])

    revolution = explore_time / abs(prof.total_turns)
    rm = _ReturnMap(p, axis, rtol, atol, t_min=0.25 * revolution)

    history: list[float] = []
    period = 0.0
    for _ in range(max_iterations):
        try:
            pq, period = rm.first_return(q)
        except LimitCycleNotFound as exc:
            raise LimitCycleNotFound(str(exc), tuple(history)) from exc
        f = pq - q
        res = float(np.linalg.norm(f))
        history.append(res)
        if res < eps_cycle:
            cycle = _package_cycle(p, rm, q, period, res, history, rtol, atol)
            size = max(
                max(s[i] for s in cycle.loop_states)
                - min(s[i] for s in cycle.loop_states)
                for i in range(3)
            )
            if size < min_cycle_size:
                raise LimitCycleNotFound(
                    "return iteration collapsed onto a steady point on the "
                    "axis; no isolated cycle here",
                    tuple(history),
                )
            return cycle
        # finite-difference Jacobian of the return map
        delta = 1e-7 * max(1.0, float(np.linalg.norm(q)))
        jac = np.empty((2, 2))
        for col in range(2):
            dq = q.copy()
            dq[col] += delta
            pq_d, _ = rm.first_return(dq)
            jac[:, col] = (pq_d - pq) / delta
        a = jac - np.eye(2)
        try:
            step = np.linalg.solve(a, -f)
        except np.linalg.LinAlgError:
            raise LimitCycleNotFound(
                "return map is singular (no isolated cycle)", tuple(history)
            )
        if not np.all(np.isfinite(step)) or np.linalg.norm(step) > 10.0:
            raise LimitCycleNotFound(
                "Newton step diverged (no isolated cycle)", tuple(history)
            )
        # damped update: keep the radius positive
        scale = 1.0
        for _ in range(6):
            q_new = q + scale * step
            if q_new[1] > 1e-9:
                break
            scale *= 0.5
        q = q + scale * step

    raise LimitCycleNotFound(
        f"no convergence within {max_iterations} iterations", tuple(history)
    )


def _package_cycle(p, rm, q, period, res, history, rtol, atol) -> LimitCycle:
    anchor = rm.embed(q)
    loop = integrate(p, anchor, period, rtol=rtol, atol=atol)
    return LimitCycle(
        params=p,
        anchor=anchor,
        period=period,
        loop_t=loop.t,
        loop_states=loop.states,
        residual=res,
        history=tuple(history),
    )
