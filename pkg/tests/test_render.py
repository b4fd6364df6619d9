import numpy as np
import pytest

from renormlab.render import RenderConfig, read_pgm, render, thread_count, write_pgm
from oracles import disk_fraction


def test_unit_disk_fraction():
    img = render(RenderConfig(0j, 4.0, (400, 400), 256, 2.0, "julia", 0j))
    frac = (img == 0).mean()
    assert abs(frac / disk_fraction(4.0) - 1) < 0.02


def test_rotation_symmetry_is_pixel_exact():
    img = render(RenderConfig(0j, 4.0, (301, 200), 200, 2.0, "julia", -1.75 + 0j))
    assert np.array_equal(img, img[::-1, ::-1])


def test_thread_independence(monkeypatch):
    cfg = RenderConfig(-0.5 + 0j, 3.0, (120, 90), 100, 2.0, "mandelbrot")
    ref = render(cfg, threads=1)
    for n in (4, 8):
        assert np.array_equal(render(cfg, threads=n), ref)
    monkeypatch.setenv("RENORMLAB_THREADS", "2")
    assert thread_count(8) == 2


def test_pgm_round_trip(tmp_path):
    img = render(RenderConfig(0j, 4.0, (33, 17), 50, 2.0, "julia", -1 + 0j))
    path = tmp_path / "a.pgm"
    write_pgm(path, img)
    assert np.array_equal(read_pgm(path), img)
    assert path.read_bytes().startswith(b"P5\n33 17\n255\n")


def test_interior_is_zero_and_exterior_positive():
    img = render(RenderConfig(0j, 4.0, (64, 64), 100, 2.0, "julia", 0j))
    assert img[32, 32] == 0 and img[0, 0] > 0


@pytest.mark.parametrize("bad", [dict(pixels=(8, 64)), dict(width=0.0), dict(mode="newton")])
def test_config_validation(bad):
    kw = dict(center=0j, width=4.0, pixels=(64, 64), max_iter=10, escape_radius=2.0, mode="julia")
    kw.update(bad)
    with pytest.raises(ValueError):
        RenderConfig(**kw)
