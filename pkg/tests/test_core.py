import cmath

import pytest
from hypothesis import given, settings, strategies as st

from renormlab.core import fixed_points, iterate, multiplier, periodic_orbit, real_intervals
from renormlab.errors import OutOfFamily


@settings(max_examples=40, deadline=None)
@given(st.complex_numbers(max_magnitude=2.0))
def test_fixed_points_satisfy_equation(c):
    fp = fixed_points(c)
    for z, lam in ((fp.alpha, fp.lambda_alpha), (fp.beta, fp.lambda_beta)):
        assert abs(z * z + c - z) < 1e-10
        assert abs(lam - 2 * z) < 1e-12


def test_escape_and_bounded_orbits():
    assert iterate(0.5, 0, 100).escaped
    orb = iterate(-1.0, 0, 10)
    assert not orb.escaped and abs(orb.points[2]) == 0


def test_period_two_cycle_multiplier():
    pts, lam = periodic_orbit(-1.0, 2, 0.1)
    assert abs(lam) < 1e-12  # superattracting
    assert abs(multiplier(pts) - lam) < 1e-12


def test_parabolic_period_three_cycle():
    pts, lam = periodic_orbit(-1.75, 3, 0.0)
    assert abs(lam - 1) < 1e-8


def test_real_intervals():
    r = real_intervals(-1.0)
    golden = (1 + 5 ** 0.5) / 2
    assert abs(r.B[1] - golden) < 1e-12 and abs(r.A[1] - (golden - 1)) < 1e-12
    with pytest.raises(OutOfFamily):
        real_intervals(0.3)
