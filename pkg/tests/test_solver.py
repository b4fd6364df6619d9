import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from renormlab.shuffle import shuffle_of_center, sigma3_n, validate_shuffle
from renormlab.solver import (
    center_of_shuffle, centers_csv, centers_sigma3, inner_class_real, kneading_at, root_of_copy,
    solve_sigma3_center,
)
from renormlab.renorm import RenormGerm


def test_period_three_center_is_the_cubic_root():
    sol = center_of_shuffle(validate_shuffle((3, 1, 2)))
    # c^3 + 2c^2 + c + 1 = 0
    with mpmath.workdps(40):
        c = sol.c_hp
        assert abs(c ** 3 + 2 * c ** 2 + c + 1) < mpmath.mpf(10) ** -30
    assert abs(float(c) + 1.754877666246693) < 1e-14


def test_sigma3_centers_decrease_toward_root():
    rows = centers_sigma3(15)
    cs = [float(s.c) for _, s in rows]
    assert all(b < a for a, b in zip(cs, cs[1:]))
    assert all(c > -1.75 for c in cs)
    assert all(s.residual <= 1e-12 for _, s in rows)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_center_reproduces_its_shuffle(n):
    sol = solve_sigma3_center(n)
    assert shuffle_of_center(sol.c_hp, 3 * n + 2) == sigma3_n(n)


def test_centers_csv_header():
    text = centers_csv([("sigma3", 1, solve_sigma3_center(1))])
    assert text.splitlines()[0] == "label,n,c,residual,period"


def test_roots():
    assert abs(root_of_copy(validate_shuffle((2, 1))).c + 0.75) < 1e-9
    assert abs(root_of_copy(validate_shuffle((3, 1, 2))).c + 1.75) < 1e-9


def test_root_multiplier_is_one():
    r = root_of_copy(validate_shuffle((3, 1, 2)))
    assert r.residual_mult < 1e-9 and r.residual_fix < 1e-9


@settings(max_examples=10, deadline=None)
@given(st.floats(-1.99, -0.76), st.floats(1e-6, 0.2))
def test_kneading_monotone_in_c(c, h):
    from renormlab.shuffle import compare_itineraries

    assert compare_itineraries(kneading_at(c, 14), kneading_at(c + h, 14)) in (-1, 0)


def test_inner_class_of_quadratic_is_itself():
    for c in (-1.0, -1.3107026413368328, -1.6254137251233038):
        ic = inner_class_real(RenormGerm.quadratic(c), depth=30)
        assert ic.lo - 1e-9 <= c <= ic.hi + 1e-9
