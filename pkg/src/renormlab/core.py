"""Floating-point kernel for the quadratic family f_c(z) = z**2 + c."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

from .errors import NoConvergence, OutOfFamily

RESIDUAL_TOL = 1e-12
MAX_ITER = 200


@dataclass(frozen=True)
class FixedPointData:
    alpha: complex
    beta: complex
    lambda_alpha: complex
    lambda_beta: complex


@dataclass(frozen=True)
class Orbit:
    start: complex
    points: Tuple[complex, ...]
    escaped: bool
    escape_index: int | None = None


@dataclass(frozen=True)
class RealIntervals:
    """Real traces: ``B = [-beta, beta]`` and ``A = [-|alpha|, |alpha|]``."""

    B: Tuple[float, float]
    A: Tuple[float, float]


def _check_finite(c):
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"parameter must be finite, got {c!r}")
    return c


def iterate(c, z0, n: int, escape_radius: float = 4.0) -> Orbit:
    """Iterate ``f_c`` from ``z0`` at most ``n`` times.

    The orbit is cut at the first point with modulus above ``escape_radius``
    (that point is kept and its index reported).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if escape_radius < 2:
        raise ValueError("escape_radius must be at least 2")
    pts = [z0]
    z = z0
    if abs(z) > escape_radius:
        return Orbit(z0, tuple(pts), True, 0)
    for k in range(1, n + 1):
        z = z * z + c
        pts.append(z)
        if abs(z) > escape_radius:
            return Orbit(z0, tuple(pts), True, k)
    return Orbit(z0, tuple(pts), False, None)


def fixed_points(c) -> FixedPointData:
    """Both fixed points of ``f_c``; beta is the repelling-side root.

    beta has the larger multiplier modulus, ties broken by the larger real
    part.  This matches the usual real convention for c <= 1/4.
    """
    c = _check_finite(c)
    s = cmath.sqrt(1 - 4 * c)
    z1 = (1 + s) / 2
    z2 = c / z1
    if abs(z2) > abs(z1) or (abs(z2) == abs(z1) and z2.real > z1.real):
        z1, z2 = z2, z1
    return FixedPointData(alpha=z2, beta=z1, lambda_alpha=2 * z2, lambda_beta=2 * z1)


def _iterate_jet(c, z, p):
    """Return f^p(z), (f^p)'(z), (f^p)''(z)."""
    w, d1, d2 = z, 1.0, 0.0
    for _ in range(p):
        d2 = 2 * (d1 * d1 + w * d2)
        d1 = 2 * w * d1
        w = w * w + c
    return w, d1, d2


def periodic_orbit(c, period: int, seed, tol: float = RESIDUAL_TOL, max_iter: int = MAX_ITER):
    """Newton-refine a point of period dividing ``period`` starting at ``seed``.

    Returns ``(points, multiplier)`` where ``points`` is the cycle starting at
    the refined point.  Near a multiplier-one cycle the root of f^p(z) - z is
    double and Newton slows down, so a final pass solves (f^p)'(z) = 1 instead.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    z = complex(seed)
    ok = False
    for _ in range(max_iter):
        w, d1, d2 = _iterate_jet(c, z, period)
        F, dF = w - z, d1 - 1
        if abs(F) <= tol * 1e-3 * (1 + abs(z) ** 2):
            ok = True
            break
        if dF == 0:
            break
        step = F / dF
        z -= step
        if abs(step) <= 1e-16 * (1 + abs(z)):
            ok = True
            break
    w, d1, d2 = _iterate_jet(c, z, period)
    if abs(d1 - 1) < 1e-3 and d2 != 0:
        # (near-)double root: polish on the derivative equation
        for _ in range(50):
            w, d1, d2 = _iterate_jet(c, z, period)
            if d2 == 0:
                break
            step = (d1 - 1) / d2
            z -= step
            if abs(step) <= 1e-17 * (1 + abs(z)):
                break
        w, d1, d2 = _iterate_jet(c, z, period)
        ok = abs(w - z) <= tol * (1 + abs(z) ** 2)
    res = abs(w - z)
    if not ok or res > tol * (1 + abs(z) ** 2) or not math.isfinite(res):
        raise NoConvergence(f"periodic_orbit: residual {res:.3e} after Newton from {seed!r}")
    pts = [z]
    for _ in range(period - 1):
        pts.append(pts[-1] ** 2 + c)
    return tuple(pts), multiplier(pts)


def real_intervals(c) -> RealIntervals:
    """Real dynamical intervals B(f) and A(f) for real ``c`` in [-2, 1/4]."""
    c = complex(c)
    if c.imag != 0:
        raise OutOfFamily("real_intervals needs a real parameter")
    c = c.real
    if not (-2.0 <= c <= 0.25):
        raise OutOfFamily(f"c = {c} outside [-2, 1/4]")
    fp = fixed_points(c)
    b = abs(fp.beta.real)
    a = abs(fp.alpha.real)
    return RealIntervals(B=(-b, b), A=(-a, a))


def multiplier(points) -> complex:
    m = 1
    for p in points:
        m *= 2 * p
    return m
