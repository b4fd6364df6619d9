"""Parabolic cycles of z^2 + c: petals, Fatou coordinates and perturbations.

Near a parabolic point the chart coordinate w = -1/(a (z - xi)) turns f^q
into F(w) = w + 1 + B/w + ..., and the formal Fatou coordinate
Psi(w) = w - B log w + sum e_k w^-k solves Psi(F(w)) = Psi(w) + 1 to all
orders.  Iterating until |w| is large and evaluating Psi there gives the
Fatou coordinate to near machine precision.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .core import MAX_ITER, periodic_orbit
from .errors import (
    DegenerateParabolic,
    LandingFailure,
    NotInBasin,
    NotParabolic,
    OutsideDomain,
    SlowConvergence,
)

ORDER = 12  # terms of the formal Fatou series
W_MIN = 60.0  # |w| at which the series is evaluated
STEP_BUDGET = 100_000


# --------------------------------------------------------------------------
# truncated power series (coefficient arrays, index = power)

def _mul(x, y, n):
    return np.convolve(x[:n], y[:n])[:n]


def _inv(x, n):
    out = np.zeros(n, dtype=complex)
    out[0] = 1 / x[0]
    for k in range(1, n):
        out[k] = -np.dot(x[1 : k + 1], out[k - 1 :: -1][:k]) / x[0]
    return out


def _log1(x, n):
    """log of a series with constant term 1."""
    d = np.array([k * x[k] for k in range(1, n)] + [0], dtype=complex)
    q = _mul(d, _inv(x, n), n)
    out = np.zeros(n, dtype=complex)
    out[1:] = q[: n - 1] / np.arange(1, n)
    return out


def cycle_taylor(c: complex, cycle: Sequence[complex], order: int) -> np.ndarray:
    """Taylor coefficients of f^q at cycle[0], exact up to ``order``."""
    n = order + 1
    s = np.zeros(n, dtype=complex)
    s[1] = 1
    for z in cycle:
        s = 2 * z * s + _mul(s, s, n)
    return s


def _normal_form(coef: np.ndarray):
    """Coefficients of F(w) = H(s)/s, s = 1/w, and the formal Fatou series."""
    a = coef[2]
    n = len(coef) - 1
    d = np.zeros(n, dtype=complex)
    d[0] = 1
    for k in range(2, n + 1):
        d[k - 1] = coef[k] * (-1 / a) ** (k - 1)
    H = _inv(d, n)
    beta = H[1:]  # F = w + 1 + sum beta[j] w^-j  with beta[0] = 1
    B = H[2]
    logH = _log1(H, n)
    m_max = n - 1
    e = np.zeros(m_max, dtype=complex)  # e[k] multiplies w^-k
    pows = {}
    Hinv = _inv(H, n)
    acc = np.zeros(n, dtype=complex)
    acc[0] = 1
    for k in range(1, m_max):
        acc = _mul(acc, Hinv, n)
        pows[k] = acc.copy()
    for m in range(2, m_max):
        total = H[m + 1] - B * logH[m]
        for k in range(1, m - 1):
            total += e[k] * (pows[k][m - k] - (1 if m == k else 0))
        e[m - 1] = total / (m - 1)
    return B, e[: m_max - 1]


# --------------------------------------------------------------------------
# charts

@dataclass(frozen=True)
class ParabolicChart:
    c: complex
    q: int
    xi: complex
    cycle: Tuple[complex, ...]
    multiplier: complex
    a: complex
    b: complex
    B: complex
    series: Tuple[complex, ...]  # e_1, e_2, ... of the formal Fatou coordinate
    R: float  # the petal is |w| region Re(+-w) > R
    direction: str = "incoming"

    @property
    def petal_radius(self) -> float:
        return 1 / (2 * self.R * abs(self.a))

    @property
    def petal_center(self) -> complex:
        sgn = -1 if self.direction == "incoming" else 1
        return self.xi + sgn / (2 * self.R * self.a)

    def w(self, z: complex) -> complex:
        return -1 / (self.a * (z - self.xi))

    def z(self, w: complex) -> complex:
        return self.xi - 1 / (self.a * w)

    def in_petal(self, z: complex) -> bool:
        if z == self.xi:
            return True
        w = self.w(z)
        return w.real > self.R if self.direction == "incoming" else w.real < -self.R

    def step(self, z: complex) -> complex:
        """f^q, written along the cycle to keep precision near xi."""
        u = z - self.xi
        for p in self.cycle:
            u = (2 * p + u) * u
        return self.xi + u

    def step_back(self, z: complex) -> complex:
        """Local inverse of f^q fixing xi."""
        u = z - self.xi
        for p in reversed(self.cycle):
            r = cmath.sqrt(p * p + u)
            if abs(r - p) > abs(r + p):
                r = -r
            u = u / (p + r)
        return self.xi + u

    def with_direction(self, direction: str) -> "ParabolicChart":
        chart = ParabolicChart(self.c, self.q, self.xi, self.cycle, self.multiplier, self.a, self.b,
                               self.B, self.series, self.R, direction)
        return _fit_petal(chart)

    def to_json(self) -> dict:
        def cx(z):
            return [f"{z.real:.17g}", f"{z.imag:.17g}"]

        return {
            "schema": "renormlab.parabolic_chart/1",
            "c": cx(complex(self.c)),
            "q": self.q,
            "xi": cx(self.xi),
            "a": cx(self.a),
            "b": cx(self.b),
            "B": cx(self.B),
            "petal_radius": f"{self.petal_radius:.17g}",
            "direction": self.direction,
        }


def _petal_samples(chart: ParabolicChart, n: int = 1000):
    rng = np.random.default_rng(12345)
    r = chart.petal_radius * np.sqrt(rng.uniform(0, 1, n)) * 0.999
    t = rng.uniform(0, 2 * np.pi, n)
    return chart.petal_center + r * np.exp(1j * t)


def _petal_invariant(chart: ParabolicChart, samples: int = 1000) -> bool:
    mover = chart.step if chart.direction == "incoming" else chart.step_back
    for z in _petal_samples(chart, samples):
        zz = complex(z)
        if zz != chart.xi and not chart.in_petal(mover(zz)):
            return False
    return True


def _fit_petal(chart: ParabolicChart, samples: int = 1000) -> ParabolicChart:
    R = 0.5
    for _ in range(40):
        trial = ParabolicChart(chart.c, chart.q, chart.xi, chart.cycle, chart.multiplier, chart.a, chart.b,
                               chart.B, chart.series, R, chart.direction)
        if _petal_invariant(trial, samples):
            return trial
        R *= 2
    raise NotParabolic("no invariant petal found")


def _fq_poly(c: complex, q: int) -> np.ndarray:
    p = np.array([1.0, 0.0], dtype=complex)  # z
    for _ in range(q):
        p = np.polyadd(np.polymul(p, p), [c])
    return np.polysub(p, [1.0, 0.0])


def detect_parabolic(c: complex, q: int, direction: str = "incoming", mult_tol: float = 1e-6,
                     degenerate_tol: float = 1e-6) -> ParabolicChart:
    """Chart at a q-cycle of f_c with multiplier 1; xi is the cycle point nearest 0."""
    if q < 1:
        raise ValueError("q must be >= 1")
    c = complex(c)
    best = None
    for r in np.roots(_fq_poly(c, q)):
        z = complex(r)
        for _ in range(MAX_ITER):
            # Newton on (f^q)'(z) = 1, whose root is simple at a parabolic point
            w, d1, d2 = z, 1 + 0j, 0j
            for _ in range(q):
                d2 = 2 * (d1 * d1 + w * d2)
                d1 = 2 * w * d1
                w = w * w + c
            if d2 == 0:
                break
            step = (d1 - 1) / d2
            z -= step
            if abs(step) < 1e-15 * max(1.0, abs(z)):
                break
        w, lam = z, 1 + 0j
        for _ in range(q):
            lam *= 2 * w
            w = w * w + c
        score = abs(lam - 1) + abs(w - z)
        if best is None or score < best[0]:
            best = (score, z, lam)
    score, z0, lam = best
    if abs(lam - 1) > mult_tol or score > mult_tol:
        raise NotParabolic(f"no {q}-cycle with multiplier 1 (closest |lambda - 1| = {score:.3e})")
    cyc = [z0]
    for _ in range(q - 1):
        cyc.append(cyc[-1] ** 2 + c)
    k = min(range(q), key=lambda i: abs(cyc[i]))
    cyc = cyc[k:] + cyc[:k]
    coef = cycle_taylor(c, cyc, ORDER + 2)
    a, b = coef[2], coef[3]
    if abs(a) < degenerate_tol:
        raise DegenerateParabolic(f"(f^{q})''/2 = {abs(a):.3e} vanishes at the parabolic point")
    B, e = _normal_form(coef)
    chart = ParabolicChart(c if c.imag else c.real, q, cyc[0], tuple(cyc), lam, complex(a), complex(b),
                           complex(B), tuple(complex(x) for x in e), 1.0, direction)
    return _fit_petal(chart)


# --------------------------------------------------------------------------
# Fatou coordinates

def _psi(chart: ParabolicChart, w: complex) -> complex:
    lw = cmath.log(w) if chart.direction == "incoming" else cmath.log(-w)
    out = w - chart.B * lw
    wk = 1 / w
    inv = wk
    for e in chart.series[1:]:
        out += e * wk
        wk *= inv
    return out


def _psi_inverse(chart: ParabolicChart, zeta: complex) -> complex:
    sgn = 1 if chart.direction == "incoming" else -1
    w = zeta + chart.B * cmath.log(sgn * zeta)
    for _ in range(50):
        lw_d = chart.B / w
        dpsi = 1 - lw_d
        inv = 1 / w
        wk = inv * inv
        for k, e in enumerate(chart.series[1:], start=1):
            dpsi -= k * e * wk
            wk *= inv
        step = (_psi(chart, w) - zeta) / dpsi
        w -= step
        if abs(step) < 1e-15 * abs(w):
            break
    return w


@dataclass(frozen=True)
class FatouCoordinate:
    chart: ParabolicChart
    anchor: complex
    offset: complex  # raw value at the anchor
    w_min: float = W_MIN
    budget: int = STEP_BUDGET

    @property
    def direction(self) -> str:
        return self.chart.direction

    def raw(self, z: complex) -> complex:
        ch = self.chart
        z = complex(z)
        n = 0
        if self.direction == "incoming":
            while True:
                if z == ch.xi:
                    raise OutsideDomain("the parabolic point itself has no Fatou coordinate")
                w = ch.w(z)
                if abs(w) >= self.w_min and w.real > abs(w.imag):
                    return _psi(ch, w) - n
                if n >= self.budget:
                    raise SlowConvergence(f"orbit not near the attracting axis after {n} steps (|w| = {abs(w):.3g})")
                if abs(z) > 1e3:
                    raise NotInBasin("orbit escapes")
                z = ch.step(z)
                n += 1
        while True:
            w = ch.w(z)
            if abs(w) >= self.w_min and -w.real > abs(w.imag):
                return _psi(ch, w) + n
            if n >= self.budget:
                raise SlowConvergence(f"backward orbit not near the repelling axis after {n} steps")
            z = ch.step_back(z)
            n += 1

    def __call__(self, z: complex) -> complex:
        return self.raw(z) - self.offset

    def inverse(self, zeta: complex) -> complex:
        """phi = Phi^-1 (outgoing) by the series far out, then forward iteration."""
        ch = self.chart
        zeta = complex(zeta) + self.offset
        if self.direction == "incoming":
            raise ValueError("the inverse is provided for outgoing coordinates")
        n = max(0, math.ceil(zeta.real + 2 * self.w_min + abs(zeta.imag)))
        z = ch.z(_psi_inverse(ch, zeta - n))
        for _ in range(n):
            z = ch.step(z)
        return z

    def residual(self, z: complex) -> float:
        # the image is evaluated with a different series cutoff, so the two sides
        # do not share their final orbit point and the series error is exposed
        other = FatouCoordinate(self.chart, self.anchor, self.offset, 1.5 * self.w_min, self.budget)
        return abs(other.raw(self.chart.step(z)) - self.raw(z) - 1)


def default_anchor(chart: ParabolicChart) -> complex:
    sgn = 1 if chart.direction == "incoming" else -1
    return chart.z(sgn * 4 * chart.R)


def fatou_coordinate(chart: ParabolicChart, anchor: Optional[complex] = None, w_min: float = W_MIN,
                     budget: int = STEP_BUDGET) -> FatouCoordinate:
    anchor = default_anchor(chart) if anchor is None else complex(anchor)
    fc = FatouCoordinate(chart, anchor, 0j, w_min, budget)
    return FatouCoordinate(chart, anchor, fc.raw(anchor), w_min, budget)


def petal_grid(chart: ParabolicChart, n: int = 20, shrink: float = 0.9) -> List[complex]:
    """n x n grid of the square inscribed in the petal disk."""
    h = chart.petal_radius * shrink / math.sqrt(2)
    xs = np.linspace(-h, h, n)
    return [complex(chart.petal_center + x + 1j * y) for y in xs for x in xs]


def cylinder_project(fc: FatouCoordinate, z: complex, escape: float = 1e3) -> complex:
    """Point of C/Z represented with real part in [0, 1)."""
    ch = fc.chart
    z = complex(z)
    if fc.direction == "incoming":
        n = 0
        while not ch.in_petal(z):
            if abs(z) > escape or n >= fc.budget:
                raise NotInBasin(f"orbit did not enter the petal (n = {n})")
            z = ch.step(z)
            n += 1
        v = fc(z) - n
    else:
        if not ch.in_petal(z):
            raise NotInBasin("point is outside the outgoing petal")
        v = fc(z)
    return complex(v.real % 1.0, v.imag)


# --------------------------------------------------------------------------
# perturbed (Douady) coordinates

def taylor_at(c: complex, z0: complex, q: int, order: int) -> np.ndarray:
    """Taylor coefficients of f^q at an arbitrary point z0."""
    n = order + 1
    s = np.zeros(n, dtype=complex)
    s[0], s[1] = z0, 1
    for _ in range(q):
        s = _mul(s, s, n)
        s[0] += c
    return s


def parabolic_parameter(c: complex, q: int, z: Optional[complex] = None) -> Tuple[complex, complex]:
    """Nearby (c0, xi0) with f^q(xi0) = xi0 and (f^q)'(xi0) = 1 (Newton in two variables)."""
    c = complex(c)
    if z is None:
        z = _gate_pair(c, q)[0]
    for _ in range(MAX_ITER):
        w, d1, dc, d11, d1c = z, 1 + 0j, 0j, 0j, 0j
        for _ in range(q):
            d11 = 2 * (d1 * d1 + w * d11)
            d1c = 2 * (dc * d1 + w * d1c)
            d1, dc = 2 * w * d1, 2 * w * dc + 1
            w = w * w + c
        r1, r2 = w - z, d1 - 1
        det = (d1 - 1) * d1c - dc * d11
        dz = (r1 * d1c - dc * r2) / det
        dcc = ((d1 - 1) * r2 - d11 * r1) / det
        z, c = z - dz, c - dcc
        if abs(dz) + abs(dcc) < 1e-15:
            break
    return c, z


def _gate_pair(c: complex, q: int) -> Tuple[complex, complex]:
    """The two q-periodic points of the perturbed pair (closest multipliers to 1)."""
    pts = []
    for r in np.roots(_fq_poly(c, q)):
        z = complex(r)
        w, lam = z, 1 + 0j
        for _ in range(q):
            lam *= 2 * w
            w = w * w + c
        pts.append((abs(lam - 1), abs(z), z, lam))
    pts.sort(key=lambda t: t[0])
    # a pair for every point of the cycle; keep the pair nearest 0
    near = sorted(pts[: 2 * q], key=lambda t: t[1])[:2]
    return near[0][2], near[1][2]


def _cycle_multiplier(c: complex, z: complex, q: int) -> complex:
    lam = 1 + 0j
    for _ in range(q):
        lam *= 2 * z
        z = z * z + c
    return lam


def gate_open(lam: complex, lam2: complex) -> bool:
    def ok(l):
        t = abs(cmath.phase(1 - l))
        return math.pi / 4 <= t <= 3 * math.pi / 4

    return ok(lam) and ok(lam2)


@dataclass(frozen=True)
class DouadyChart:
    c: complex
    q: int
    xi: complex
    xi2: complex
    lam: complex
    lam2: complex
    c0: complex  # the parabolic parameter the chart perturbs
    roots: Tuple[complex, ...]  # zeros of the model vector field
    residues: Tuple[complex, ...]
    a_f: complex  # transit constant, anchors of the parabolic coordinates
    a_raw: complex  # same with unnormalized coordinates
    steps: int  # f^q steps from the incoming anchor to the outgoing fundamental domain
    z_in: complex
    z_out: complex

    @property
    def phase(self) -> float:
        return self.a_f.real % 1.0

    @property
    def transit_time(self) -> float:
        """Gate crossing time measured between the two chart coordinates."""
        return -self.a_raw.real

    @property
    def holomorphic_index(self) -> complex:
        return 1 / (1 - self.lam) + 1 / (1 - self.lam2)

    def time(self, z: complex) -> complex:
        z = complex(z)
        return sum(r * cmath.log(z - p) for p, r in zip(self.roots, self.residues))

    def Phi(self, z: complex) -> complex:
        return self.time(z) - self.time(self.z_in)

    def step(self, z: complex) -> complex:
        for _ in range(self.q):
            z = z * z + self.c
        return z

    def residual(self, z: complex) -> float:
        return abs(self.Phi(self.step(z)) - self.Phi(z) - 1)

    def to_json(self) -> dict:
        def cx(z):
            return [f"{z.real:.17g}", f"{z.imag:.17g}"]

        return {
            "schema": "renormlab.douady_chart/1",
            "c": cx(complex(self.c)),
            "q": self.q,
            "xi": cx(self.xi),
            "xi2": cx(self.xi2),
            "a_f": cx(self.a_f),
            "phase": f"{self.phase:.17g}",
            "transit_time": f"{self.transit_time:.17g}",
            "steps": self.steps,
        }


@dataclass(frozen=True)
class ParabolicPair:
    """Incoming and outgoing Fatou coordinates of one parabolic cycle."""
    incoming: FatouCoordinate
    outgoing: FatouCoordinate

    @classmethod
    def at(cls, c: complex, q: int) -> "ParabolicPair":
        ch = detect_parabolic(c, q)
        return cls(fatou_coordinate(ch), fatou_coordinate(ch.with_direction("outgoing")))

    def lavaurs(self, z: complex, sigma: complex) -> complex:
        return self.outgoing.inverse(self.incoming(z) + sigma)


_PAIRS = {}


def parabolic_pair(c0: complex, q: int) -> ParabolicPair:
    key = (complex(c0), q)
    if key not in _PAIRS:
        _PAIRS[key] = ParabolicPair.at(c0, q)
    return _PAIRS[key]


def douady_chart(c: complex, q: int, c0: Optional[complex] = None, budget: int = 10 ** 7,
                 check_gate: bool = True) -> DouadyChart:
    from .errors import GateClosed, TransitBudgetExceeded

    c = complex(c)
    xi, xi2 = _gate_pair(c, q)
    lam, lam2 = _cycle_multiplier(c, xi, q), _cycle_multiplier(c, xi2, q)
    if check_gate and not gate_open(lam, lam2):
        raise GateClosed(f"arg(1 - lambda) = {cmath.phase(1 - lam):.3f}, {cmath.phase(1 - lam2):.3f}")
    if c0 is None:
        c0 = parabolic_parameter(c, q, 0.5 * (xi + xi2))[0]
        if abs(c0.imag) < 1e-12:
            c0 = complex(c0.real, 0.0)
    pair = parabolic_pair(c0, q)
    # logarithm of z + g to third order: v = g - g g'/2 + g g'^2/3 + g^2 g''/12,
    # for g the quadratic model of f^q - id at the gate
    m = 0.5 * (xi + xi2)
    s = taylor_at(c, m, q, 2)
    g = np.array([s[2], s[1] - 1, s[0] - m])  # in powers of (z - m), highest first
    dg = np.polyder(g)
    d2g = np.polyder(dg)
    v = np.polysub(g, 0.5 * np.polymul(g, dg))
    v = np.polyadd(v, np.polymul(g, np.polymul(dg, dg)) / 3)
    v = np.polyadd(v, np.polymul(np.polymul(g, g), d2g) / 12)
    dv = np.polyder(v)
    roots = tuple(complex(r) + m for r in np.roots(v))
    residues = tuple(1 / complex(np.polyval(dv, r - m)) for r in roots)
    # transit: incoming anchor forward until it passes the outgoing anchor's fundamental domain
    fin, fout = pair.incoming, pair.outgoing
    z = fin.anchor
    n = 0
    while True:
        if fout.chart.in_petal(z) and fout.chart.w(z).real < -fout.w_min * 0 - fout.chart.R:
            val = fout(z)
            if val.real >= 0:
                break
        if n >= budget or abs(z) > 1e3:
            raise TransitBudgetExceeded(f"no gate transit after {n} steps")
        for _ in range(q):
            z = z * z + c
        n += 1
    a_f = fout(z) - fin(fin.anchor) - n
    a_raw = fout.raw(z) - fin.raw(fin.anchor) - n
    return DouadyChart(c, q, xi, xi2, lam, lam2, c0, roots, residues, a_f, a_raw, n, fin.anchor, z)


def critical_phase(c: float, pair: ParabolicPair, z0: complex = 0.0, budget: int = 10 ** 7) -> Tuple[complex, int]:
    """Transit constant read from the orbit of z0 itself, and its arrival step.

    Returns (a, k) with Phi_-(f^(qk)(z0)) = Phi_+(z0) + a + k, where k is the
    first arrival in the outgoing fundamental domain Re Phi_- in [0, 1).
    """
    from .errors import TransitBudgetExceeded

    q = pair.incoming.chart.q
    fout = pair.outgoing
    z, k = complex(z0), 0
    while not (fout.chart.in_petal(z) and fout(z).real >= 0):
        if k >= budget or abs(z) > 1e3:
            raise TransitBudgetExceeded(f"no gate transit after {k} steps")
        for _ in range(q):
            z = z * z + c
        k += 1
    return fout(z) - pair.incoming(z0) - k, k


# --------------------------------------------------------------------------
# Lavaurs maps and the check of f^n_k -> g

@dataclass(frozen=True)
class Converge1Report:
    sigma: float
    n: Tuple[int, ...]
    eps: Tuple[float, ...]
    defect: Tuple[float, ...]

    def tail_decreasing(self, last: int = 3) -> bool:
        d = self.defect[-last:]
        return all(x > y for x, y in zip(d, d[1:]))

    def to_csv(self) -> str:
        rows = ["n,eps,defect"] + [f"{n},{e:.17g},{d:.17g}" for n, e, d in zip(self.n, self.eps, self.defect)]
        return "\n".join(rows) + "\n"


def lift_grid(pair: ParabolicPair, n: int = 5, scale: float = 0.25) -> List[complex]:
    """Small grid around the incoming anchor, inside the petal."""
    ch = pair.incoming.chart
    h = ch.petal_radius * scale
    xs = np.linspace(-h, h, n)
    return [complex(pair.incoming.anchor + x + 1j * y) for y in xs for x in xs]


def _transit(c: float, pair: ParabolicPair) -> float:
    return critical_phase(c, pair, pair.incoming.anchor)[0].real


def converge1_check(n_list: Sequence[int], sigma: float, c0: float = 0.25, q: int = 1, side: float = 1.0,
                    grid: Optional[Sequence[complex]] = None, compare_sigma: Optional[float] = None) -> Converge1Report:
    """For each n pick c = c0 + side*eps with a(eps) + n = sigma and measure
    max |f_c^(q n)(z) - phi_-(Phi_+(z) + sigma)| over the grid.

    ``compare_sigma`` replaces sigma in the Lavaurs map only (negative control).
    """
    from scipy.optimize import brentq

    pair = parabolic_pair(c0, q)
    grid = lift_grid(pair) if grid is None else list(grid)
    target = sigma if compare_sigma is None else compare_sigma
    lav = [pair.lavaurs(z, target) for z in grid]
    a0 = pair.incoming.chart.a
    eps_out, defects = [], []
    for n in n_list:
        # a(eps) ~ -pi / sqrt(a0 * eps) (+ O(1)); bracket eps around that guess
        def h(e):
            return _transit(c0 + side * e, pair) + n - sigma

        lo = (math.pi / (n + 30)) ** 2 / abs(a0)
        hi = (math.pi / max(n - 30, 1)) ** 2 / abs(a0) if n > 31 else 1e-1
        e = brentq(h, lo, hi, xtol=1e-16, rtol=1e-14)
        c = c0 + side * e
        worst = 0.0
        for z, g in zip(grid, lav):
            w = z
            for _ in range(q * n):
                w = w * w + c
            worst = max(worst, abs(w - g))
        eps_out.append(e)
        defects.append(worst)
    return Converge1Report(sigma, tuple(n_list), tuple(eps_out), tuple(defects))


# --------------------------------------------------------------------------
# parabolic renormalization R_a = f^t o phi_- o T_a o Phi_+

@dataclass(frozen=True)
class ParabolicRenormalization:
    pair: ParabolicPair
    t: int  # landing time from the outgoing fundamental domain
    window: float = 0.0  # lifts are taken with real part in [window, window + 1)
    radius: float = 0.0  # landing disk |z| <= radius

    @property
    def c(self) -> complex:
        return self.pair.incoming.chart.c

    def lift(self, z: complex, phase: complex) -> complex:
        w = self.pair.incoming(z) + phase
        return w - math.floor(w.real - self.window)

    def __call__(self, z: complex, phase: complex) -> complex:
        zz = complex(z)
        try:
            p = self.pair.outgoing.inverse(self.lift(zz, phase))
        except (SlowConvergence, NotInBasin, ZeroDivisionError, OverflowError) as exc:
            raise OutsideDomain(f"no lift for z = {zz}") from exc
        c = self.c
        for _ in range(self.t):
            p = p * p + c
            if abs(p) > 1e3:
                break
        if not abs(p) <= self.radius:
            raise LandingFailure(f"image {p:.6g} misses the landing disk |z| <= {self.radius:.6g}")
        return p


def discover_landing_time(pair: ParabolicPair, t_max: int = 20, samples: int = 201, window: float = 0.0) -> int:
    """First t whose image of the real fundamental segment crosses 0."""
    c = pair.incoming.chart.c
    pts = [pair.outgoing.inverse(window + x) for x in np.linspace(0, 1, samples)]
    for t in range(1, t_max + 1):
        vals = []
        for p in pts:
            z = p
            for _ in range(t):
                z = z * z + c
            vals.append(z.real)
        if any((u > 0) != (v > 0) for u, v in zip(vals, vals[1:])):
            return t
    raise LandingFailure(f"no landing time up to {t_max}")


def parabolic_renormalization(c: float = -1.75, q: int = 3, t: Optional[int] = None) -> ParabolicRenormalization:
    pair = parabolic_pair(c, q)
    t = discover_landing_time(pair) if t is None else t
    from .core import fixed_points

    radius = abs(fixed_points(c).alpha)
    return ParabolicRenormalization(pair, t, 0.0, radius)


def parabolic_renormalize_eval(c: float, phase: complex, z: complex, t: Optional[int] = None, q: int = 3) -> complex:
    return parabolic_renormalization(c, q, t)(z, phase)
