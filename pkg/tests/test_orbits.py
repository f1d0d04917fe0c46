import math

import numpy as np
import pytest

from toposurge.dynamics import slow_manifold
from toposurge.integrate import integrate
from toposurge.orbits import (
    LimitCycleNotFound,
    classify_shell,
    detect_limit_cycle,
    poincare,
    section_sequence,
    tube_turns,
    winding_profile,
)
from conftest import PARAMS_A, PARAMS_B


def test_constant_orbit_has_empty_section():
    traj = integrate(PARAMS_A, (1, 1, 1), 50.0)
    sm = slow_manifold(PARAMS_A)
    assert poincare(traj, sm.center, (0, 1, 0)) == []


def test_zero_normal_rejected():
    traj = integrate(PARAMS_A, (1, 1.3, 0.89), 5.0)
    with pytest.raises(ValueError):
        poincare(traj, (1, 1, 1), (0, 0, 0))


def test_two_crossings_per_revolution(reference_orbits):
    # a plane containing the winding axis is crossed once per side per turn
    traj = reference_orbits["a"][(1.0, 1.3, 0.89)]
    sm = slow_manifold(PARAMS_A)
    crossings = poincare(traj, sm.center, (1, 0, 0))
    n_up = sum(1 for c in crossings if c.direction > 0)
    n_down = sum(1 for c in crossings if c.direction < 0)
    turns = abs(winding_profile(traj, sm).total_turns)
    assert abs(n_up - n_down) <= 1
    assert abs((n_up + n_down) / turns - 2.0) < 0.05


def test_crossing_count_matches_brute_force(reference_orbits):
    traj = reference_orbits["a"][(1.0, 1.3, 0.89)]
    sm = slow_manifold(PARAMS_A)
    normal = np.array([0.0, 1.0, 0.0])
    crossings = poincare(traj, sm.center, tuple(normal))
    g = (np.asarray(traj.states) - np.asarray(sm.center)) @ normal
    brute = int((g[:-1] * g[1:] < 0).sum())
    assert len(crossings) == brute
    for c in crossings:
        gap = abs((np.asarray(c.state) - np.asarray(sm.center)) @ normal)
        assert gap < 1e-9


def test_crossings_are_refined_onto_the_plane(reference_orbits):
    traj = reference_orbits["a"][(1.0, 1.59, 0.81)]
    sm = slow_manifold(PARAMS_A)
    for c in poincare(traj, sm.center, (1, 0, 0))[:20]:
        assert abs(c.state[0] - 1.0) < 1e-9


def test_constant_orbit_winds_zero_turns():
    traj = integrate(PARAMS_A, (1, 1, 1), 50.0)
    prof = winding_profile(traj, slow_manifold(PARAMS_A))
    assert prof.total_turns == 0.0
    assert prof.skipped == len(traj)  # the centre sits on the axis


def test_region_a_turns_once_per_recurrence(reference_orbits):
    # each azimuthal revolution is the orbit's short period; the net
    # winding per revolution is one turn by construction
    traj = reference_orbits["a"][(1.0, 1.3, 0.89)]
    sm = slow_manifold(PARAMS_A)
    prof = winding_profile(traj, sm)
    crossings = [c for c in poincare(traj, sm.center, (1, 0, 0)) if c.direction > 0]
    periods = np.diff([c.t for c in crossings])
    turns_per_period = abs(prof.total_turns) * periods.mean() / (traj.t[-1] - traj.t[0])
    assert turns_per_period <= 1.0 + 1e-2


def test_region_b_drills_many_turns(reference_orbits):
    traj = reference_orbits["b"][(1.0, 1.0, 0.9)]
    prof = winding_profile(traj, slow_manifold(PARAMS_B))
    assert abs(prof.total_turns) >= 10.0
    assert prof.monotone_fraction >= 0.99


def test_winding_azimuth_gaps_are_small(reference_orbits):
    prof = winding_profile(reference_orbits["a"][(1.0, 1.59, 0.81)], slow_manifold(PARAMS_A))
    assert np.abs(np.diff(prof.theta)).max() < math.pi


def test_tube_turns_separates_the_regimes(reference_orbits):
    sm_a, sm_b = slow_manifold(PARAMS_A), slow_manifold(PARAMS_B)
    sphere_tt = [
        tube_turns(*section_sequence(winding_profile(tr, sm_a)))
        for tr in reference_orbits["a"].values()
    ]
    torus_tt = [
        tube_turns(*section_sequence(winding_profile(tr, sm_b)))
        for tr in reference_orbits["b"].values()
    ]
    assert max(sphere_tt) < 1.5
    assert min(torus_tt) > 3.0


def test_classify_published_sets(reference_orbits):
    for traj in reference_orbits["a"].values():
        assert classify_shell(traj).verdict == "spherical"
    for traj in reference_orbits["b"].values():
        assert classify_shell(traj).verdict == "toroidal"
    assert classify_shell(reference_orbits["stationary"]).verdict == "stationary"


def test_classification_evidence_is_populated(reference_orbits):
    c = classify_shell(reference_orbits["b"][(1.0, 1.0, 0.9)])
    for key in (
        "azimuth_turns",
        "monotone_fraction",
        "tube_turns",
        "axis_touch_ratio",
        "diameter",
    ):
        assert key in c.evidence


def test_short_orbit_is_indeterminate():
    traj = integrate(PARAMS_B, (1, 1, 0.9), 2.0)
    assert classify_shell(traj).verdict == "indeterminate"


def test_limit_cycle_converges(cycle_b):
    assert cycle_b.period > 0
    assert cycle_b.residual < 1e-9
    assert cycle_b.history[-1] < 1e-9


def test_limit_cycle_loop_maps_to_itself(cycle_b):
    traj = integrate(PARAMS_B, cycle_b.anchor, cycle_b.period, rtol=1e-10, atol=1e-12)
    gap = max(abs(a - b) for a, b in zip(traj.states[-1], cycle_b.anchor))
    assert gap < 10 * 1e-9


def test_limit_cycle_winds_once_per_period(cycle_b):
    traj = integrate(PARAMS_B, cycle_b.anchor, cycle_b.period, rtol=1e-10, atol=1e-12)
    prof = winding_profile(traj, slow_manifold(PARAMS_B))
    assert abs(abs(prof.total_turns) - 1.0) < 1e-6


def test_restart_on_cycle_is_immediate(cycle_b):
    again = detect_limit_cycle(PARAMS_B, cycle_b.anchor)
    assert len(again.history) <= 3
    assert abs(again.period - cycle_b.period) / cycle_b.period < 1e-4


def test_no_cycle_in_region_a():
    with pytest.raises(LimitCycleNotFound) as exc_info:
        detect_limit_cycle(PARAMS_A, (1.0, 1.3, 0.89))
    # the failure report carries the residual history
    assert isinstance(exc_info.value.history, tuple)


def test_stationary_start_has_no_cycle():
    with pytest.raises(LimitCycleNotFound):
        detect_limit_cycle(PARAMS_A, (1.0, 1.0, 1.0))
