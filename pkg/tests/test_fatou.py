import cmath
import math

import numpy as np
import pytest

from renormlab.errors import DegenerateParabolic, LandingFailure, NotInBasin, NotParabolic
from renormlab.fatou import (
    converge1_check, critical_phase, cylinder_project, detect_parabolic, douady_chart, fatou_coordinate,
    parabolic_pair, parabolic_renormalization, petal_grid,
)
from renormlab.solver import solve_sigma3_center
from oracles import gate_time


def test_detect_parabolic_at_quarter():
    ch = detect_parabolic(0.25, 1)
    assert abs(ch.xi - 0.5) < 1e-12
    assert abs(ch.a - 1) < 1e-12
    assert abs(ch.multiplier - 1) < 1e-9


def test_detect_parabolic_period_three():
    ch = detect_parabolic(-1.75, 3)
    assert abs(ch.multiplier - 1) <= 1e-8
    assert abs(ch.a) > 1e-6
    assert len(ch.cycle) == 3


def test_negative_fixtures():
    with pytest.raises(NotParabolic):
        detect_parabolic(-0.75, 1)
    with pytest.raises(DegenerateParabolic):
        detect_parabolic(-0.75, 2)


def test_petal_is_forward_invariant():
    ch = detect_parabolic(-1.75, 3)
    rng = np.random.default_rng(1)
    r = ch.petal_radius * np.sqrt(rng.random(1000))
    th = 2 * np.pi * rng.random(1000)
    for z in ch.petal_center + r * np.exp(1j * th):
        assert ch.in_petal(ch.step(z)) or ch.step(z) == ch.xi


@pytest.mark.parametrize("direction", ["incoming", "outgoing"])
@pytest.mark.parametrize("c,q", [(0.25, 1), (-1.75, 3)])
def test_abel_equation(c, q, direction):
    ch = detect_parabolic(c, q, direction)
    fc = fatou_coordinate(ch)
    assert abs(fc(fc.anchor)) < 1e-12
    assert max(fc.residual(z) for z in petal_grid(ch, 20)) <= 1e-8


def test_series_cutoff_independence():
    ch = detect_parabolic(-1.75, 3)
    a = fatou_coordinate(ch, w_min=60)
    b = fatou_coordinate(ch, w_min=120)
    for z in petal_grid(ch, 5):
        assert abs(a(z) - b(z)) < 1e-9


def test_incoming_range_contains_right_half_plane():
    ch = detect_parabolic(-1.75, 3)
    fc = fatou_coordinate(ch)
    reals = [fc(ch.z(w)).real for w in (1e2, 1e3, 1e4)]
    assert reals[0] < reals[1] < reals[2] and reals[2] > 5e3


def test_outgoing_inverse_round_trip():
    fc = fatou_coordinate(detect_parabolic(-1.75, 3, "outgoing"))
    for zeta in (0.3, 1.2 + 0.5j, -2 - 1j):
        assert abs(fc(fc.inverse(zeta)) - zeta) < 1e-9


def test_cylinder_projection():
    fc = fatou_coordinate(detect_parabolic(-1.75, 3))
    v = cylinder_project(fc, 0.0)
    assert 0 <= v.real < 1
    for z in (0.0, 0.05j, -0.02 + 0.03j):
        assert abs(cylinder_project(fc, fc.chart.step(z)) - cylinder_project(fc, z)) < 1e-9
    with pytest.raises(NotInBasin):
        cylinder_project(fc, 3.0)


@pytest.mark.parametrize("eps", [1e-3, 1e-4, 1e-5])
def test_gate_transit_time(eps):
    chart = douady_chart(0.25 + eps, 1)
    assert abs(chart.transit_time / gate_time(eps) - 1) < 0.05


def test_holomorphic_index_and_tangency():
    args = []
    for eps in (1e-3, 1e-4, 1e-5, 1e-6):
        ch = douady_chart(0.25 + eps, 1)
        assert abs(ch.holomorphic_index) < 1e-6
        args.append(abs(cmath.phase(1 - ch.lam)))
    assert all(abs(a - math.pi / 2) < 1e-9 for a in args)
    limit = 1 - detect_parabolic(-1.75, 3).B
    dev = []
    for eps in (1e-4, 1e-5, 1e-6):
        ch = douady_chart(-1.75 + eps, 3)
        assert abs(ch.holomorphic_index / limit - 1) < 0.1
        dev.append(abs(abs(cmath.phase(1 - ch.lam)) - math.pi / 2))
    assert dev[0] > dev[1] > dev[2]


def test_douady_residual_relative():
    ch = douady_chart(0.25 + 1e-4, 1)
    for u in np.linspace(-0.1, 0.1, 5):
        for v in np.linspace(-0.1, 0.1, 5):
            z = 0.5 + u + 1j * v
            assert ch.residual(z) <= 1e-3 * (1 + abs(ch.Phi(z)))


def test_converge1_tail_and_negative_control():
    good = converge1_check([20, 40, 80, 160, 320], 0.3)
    assert good.tail_decreasing(3)
    assert good.defect[-1] < 0.2
    bad = converge1_check([20, 40, 80, 160, 320], 0.3, compare_sigma=0.8)
    assert min(bad.defect) > 1.0


def test_parabolic_renormalization_defect_shrinks():
    R = parabolic_renormalization()
    assert R.t == 11
    defects = []
    for n in (8, 10, 12, 16):
        a, _ = critical_phase(float(solve_sigma3_center(n).c), R.pair)
        defects.append(abs(R(0, a)))
    assert all(x > y for x, y in zip(defects, defects[1:]))


def test_critical_value_section_is_continuous():
    R = parabolic_renormalization()
    phases = np.linspace(0.2, 0.3, 11)
    vals = [R.lift(0, ph) for ph in phases]
    steps = [abs(b - a) for a, b in zip(vals, vals[1:])]
    assert max(steps) < 10 * (phases[1] - phases[0]) * 1.01


def test_landing_failure_off_the_real_phase():
    R = parabolic_renormalization()
    with pytest.raises(LandingFailure):
        R(0, 0.5 + 3j)
