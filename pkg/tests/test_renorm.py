import math

import mpmath
import pytest

from renormlab.errors import NotRenormalizable, PrecisionExhausted
from renormlab.renorm import (
    RenormGerm, Stage, detect_renormalizable, diagnostics_jsonl, first_return_map, germ_diagnostics,
    is_unimodal_on, renorm_orbit, renormalize,
)
from renormlab.shuffle import star_product, validate_shuffle
from renormlab.solver import center_of_shuffle, solve_sigma3_center

GOLDEN = (math.sqrt(5) - 1) / 2


def test_basilica_renormalizes_with_period_two():
    n, b = detect_renormalizable(RenormGerm.quadratic(-1.0))
    assert n == 2
    assert abs(abs(b) - GOLDEN) < 1e-9  # the alpha fixed point bounds the periodic interval


def test_non_renormalizable_map():
    g = RenormGerm.quadratic(-0.5)
    assert detect_renormalizable(g) is None
    with pytest.raises(NotRenormalizable):
        renormalize(g)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_sigma3_centers_renormalize_with_their_period(n):
    g = renormalize(RenormGerm.quadratic(float(solve_sigma3_center(n).c)))
    assert g.total_period == 3 * n + 2
    # a center renormalizes to the map z^2 - 1 ... up to its own stage: the critical point is periodic
    assert abs(float(g.iterate(0, 1))) < 1e-6


def test_germ_normalization():
    g = renormalize(RenormGerm.quadratic(-1.0))
    assert abs(float(g.iterate(1, 1)) - 1.0) < 1e-12 or g.stages
    assert is_unimodal_on(RenormGerm.quadratic(-1.0), 2, GOLDEN)


def test_feigenbaum_tower_inner_class():
    s2 = validate_shuffle((2, 1))
    s = star_product(star_product(s2, s2), s2)
    sol = center_of_shuffle(s, dps=40)
    diags = renorm_orbit(sol.c_hp, 2, dps=40)
    assert [d.period for d in diags] == [2, 4]
    assert -1.0 in diags[1].inner
    assert diags[1].inner.hi - diags[1].inner.lo < 1e-6


def test_precision_exhaustion():
    g = RenormGerm.quadratic(-1.0).with_stage(Stage(2, 1e-14))
    with pytest.raises(PrecisionExhausted):
        renormalize(g)


def test_diagnostics_stream_is_json_lines():
    import json

    text = diagnostics_jsonl(renorm_orbit(-1.0, 1))
    rec = json.loads(text.splitlines()[0])
    assert rec["stage"] == 1 and rec["period"] == 2


def test_first_return_branches_land_in_domain():
    g = RenormGerm.quadratic(-1.9)
    U = (-0.2, 0.2)
    branches = first_return_map(g, U)
    step = (U[1] - U[0]) / 512
    wide = [br for br in branches if br.interval[1] - br.interval[0] > 3 * step]
    assert len(wide) >= 3
    for br in wide:
        x = 0.5 * (br.interval[0] + br.interval[1])
        for _ in range(br.time - 1):
            x = g(x)
            assert not (U[0] < x < U[1])
        assert U[0] <= g(x) <= U[1]
