"""Julia set of z^2 - 1.75 and the real period-three region of the Mandelbrot set."""
from pathlib import Path

from renormlab import RenderConfig, render, write_pgm
from renormlab.solver import solve_sigma3_center

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

jul = RenderConfig(0j, 4.0, (801, 601), 300, 2.0, "julia", -1.75 + 0j)
write_pgm(out / "julia_-1.75.pgm", render(jul))

man = RenderConfig(-1.75 + 0j, 0.1, (1001, 501), 2000, 2.0, "mandelbrot")
img = render(man)
for n in range(2, 13):
    i, j = man.pixel_of(complex(float(solve_sigma3_center(n).c)))
    print(f"c_{n} at pixel ({i}, {j}), value {img[j, i]}")
write_pgm(out / "mandelbrot_period3.pgm", img)
print("wrote", *sorted(p.name for p in out.glob("*.pgm")))
