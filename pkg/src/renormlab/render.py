"""Escape-time images of Julia and Mandelbrot sets, written as binary PGM."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class RenderConfig:
    center: complex = 0j
    width: float = 4.0
    pixels: Tuple[int, int] = (256, 256)
    max_iter: int = 256
    escape_radius: float = 2.0
    mode: str = "julia"  # or "mandelbrot"
    c: complex = 0j  # parameter for julia mode

    def __post_init__(self):
        w, h = self.pixels
        if w < 16 or h < 16:
            raise ValueError("images need at least 16x16 pixels")
        if not self.width > 0:
            raise ValueError("width must be positive")
        if self.mode not in ("julia", "mandelbrot"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def height(self) -> float:
        w, h = self.pixels
        return self.width * h / w

    def axes(self):
        w, h = self.pixels
        dx = self.width / w
        # symmetric offsets so that frames centred at 0 are exactly symmetric
        xs = (np.arange(w) + 0.5 - w / 2) * dx + self.center.real
        ys = (h / 2 - np.arange(h) - 0.5) * dx + self.center.imag
        return xs, ys

    def pixel_of(self, z: complex) -> Tuple[int, int]:
        w, h = self.pixels
        dx = self.width / w
        i = int(np.floor((z.real - self.center.real) / dx + w / 2))
        j = int(np.floor(h / 2 - (z.imag - self.center.imag) / dx))
        return i, j


def thread_count(requested: Optional[int] = None) -> int:
    cap = os.environ.get("RENORMLAB_THREADS")
    n = requested if requested is not None else (os.cpu_count() or 1)
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def _rows(cfg: RenderConfig, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    grid = xs[None, :] + 1j * ys[:, None]
    if cfg.mode == "julia":
        z = grid.copy()
        c = np.full_like(grid, complex(cfg.c))
    else:
        z = np.zeros_like(grid)
        c = grid
    count = np.full(grid.shape, -1, dtype=np.int64)
    alive = np.ones(grid.shape, dtype=bool)
    r2 = cfg.escape_radius ** 2
    for n in range(cfg.max_iter):
        esc = alive & (z.real ** 2 + z.imag ** 2 > r2)
        count[esc] = n
        alive &= ~esc
        if not alive.any():
            break
        z[alive] = z[alive] ** 2 + c[alive]
    img = np.where(count < 0, 0, np.clip(count + 1, 1, 255))
    return img.astype(np.uint8)


def render(cfg: RenderConfig, threads: Optional[int] = None, rows_per_task: int = 16) -> np.ndarray:
    """Grayscale escape-time image; interior pixels are 0."""
    xs, ys = cfg.axes()
    n = thread_count(threads)
    chunks = [ys[k : k + rows_per_task] for k in range(0, len(ys), rows_per_task)]
    if n == 1:
        parts = [_rows(cfg, xs, ch) for ch in chunks]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            parts = list(pool.map(lambda ch: _rows(cfg, xs, ch), chunks))
    return np.vstack(parts)


def write_pgm(path, img: np.ndarray) -> None:
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img, dtype=np.uint8).tobytes())


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    fields = []
    pos = 0
    while len(fields) < 4:
        while data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        end = pos
        while not data[end : end + 1].isspace():
            end += 1
        fields.append(data[pos:end])
        pos = end
    if fields[0] != b"P5":
        raise ValueError("not a binary PGM file")
    w, h, maxval = (int(x) for x in fields[1:])
    if maxval > 255:
        raise ValueError("16-bit PGM is not supported")
    pos += 1
    return np.frombuffer(data[pos : pos + w * h], dtype=np.uint8).reshape(h, w).copy()
