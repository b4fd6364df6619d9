"""Real renormalization of unimodal germs.

A germ after k stages is g(y) = f_c^N(B y) / B with N the product of the
stage periods and B the product of the stage scales b_i = beta(f_i) in the
previous coordinates.  Evaluation is plain arithmetic, so passing mpmath
numbers carries the working precision through every stage.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import mpmath

from .errors import LandingBudgetExceeded, NotRenormalizable, PrecisionExhausted
from .solver import InnerClass, critical_itinerary, inner_class_real

MAX_PERIOD = 64
UNIMODAL_SAMPLES = 257


@dataclass(frozen=True)
class Stage:
    period: int
    b: object  # boundary fixed point of g^n in the previous coordinates

    @property
    def interval(self):
        return (-abs(self.b), abs(self.b))

    @property
    def scale(self):
        return 1 / self.b


@dataclass(frozen=True)
class RenormGerm:
    base_c: object
    stages: Tuple[Stage, ...] = ()
    dps: Optional[int] = None  # None: double precision

    @classmethod
    def quadratic(cls, c, dps: Optional[int] = None) -> "RenormGerm":
        if dps is not None:
            with mpmath.workdps(dps):
                c = mpmath.mpf(c)
        return cls(c, (), dps)

    @property
    def total_period(self) -> int:
        return math.prod(s.period for s in self.stages)

    @property
    def total_scale(self):
        B = 1
        for s in self.stages:
            B = B * s.b
        return B

    def _num(self, x):
        return mpmath.mpf(x) if self.dps is not None else float(x)

    def __call__(self, x):
        if self.dps is None:
            return self._eval(float(x))
        with mpmath.workdps(self.dps):
            return self._eval(mpmath.mpf(x))

    def _eval(self, x):
        B = self.total_scale
        z = B * x
        c = self.base_c
        for _ in range(self.total_period):
            z = z * z + c
        return z / B

    def eval_incremental(self, x):
        """Same map, evaluated stage by stage."""
        def at(k, y):
            if k == 0:
                return y * y + self.base_c
            st = self.stages[k - 1]
            u = st.b * y
            for _ in range(st.period):
                u = at(k - 1, u)
            return u / st.b

        if self.dps is None:
            return at(len(self.stages), float(x))
        with mpmath.workdps(self.dps):
            return at(len(self.stages), mpmath.mpf(x))

    def iterate(self, x, k: int):
        for _ in range(k):
            x = self(x)
        return x

    def with_stage(self, stage: Stage) -> "RenormGerm":
        return RenormGerm(self.base_c, self.stages + (stage,), self.dps)

    def epsilon(self):
        return 2.0 ** -52 if self.dps is None else mpmath.mpf(10) ** (-self.dps)


def _sgn(x) -> int:
    return int(x > 0) - int(x < 0)


def _base_orbit(g: RenormGerm, length: int):
    c = g.base_c
    z = 0 * c
    out = [z]
    for _ in range(length):
        z = z * z + c
        out.append(z)
    return out


def _positive_zero(orbit, T: int, c):
    """Smallest y > 0 with f^T(y) = 0 on the branch following the critical orbit."""
    y = 0 * c
    for s in range(T - 1, 0, -1):
        r = y - c
        if r < 0:
            return None
        y = _sgn(orbit[s]) * (mpmath.sqrt(r) if isinstance(r, mpmath.mpf) else math.sqrt(r))
    r = y - c
    if r < 0:
        return None
    return mpmath.sqrt(r) if isinstance(r, mpmath.mpf) else math.sqrt(r)


def _solve(h, a, b):
    """Root of h on [a, b] with a sign change."""
    if isinstance(a, mpmath.mpf):
        return mpmath.findroot(h, (a, b), solver="anderson")
    from scipy.optimize import brentq

    return brentq(h, a, b, xtol=1e-15, rtol=4 * 2.0 ** -52)


def _orbit_intervals(g, b, n):
    out = [(-abs(b), abs(b))]
    lo_pt, hi_pt = 0 * b, b
    for _ in range(1, n):
        lo_pt, hi_pt = g(lo_pt), g(hi_pt)
        out.append((min(lo_pt, hi_pt), max(lo_pt, hi_pt)))
    return out


def _disjoint(ivs, tol) -> bool:
    ivs = sorted(ivs)
    return all(a[1] <= b[0] + tol for a, b in zip(ivs, ivs[1:]))


def is_unimodal_on(g, n: int, b, samples: int = UNIMODAL_SAMPLES) -> bool:
    """g^n on [-|b|, |b|] has a single turning point (sampled, refined near 0)."""
    r = abs(b)
    half = samples // 2
    # quadratic spacing clusters samples near the critical point
    xs = [r * (k / half) ** 2 for k in range(half + 1)]
    for side in (1, -1):
        vals = [g.iterate(side * x, n) for x in xs]
        diffs = [_sgn(v - u) for u, v in zip(vals, vals[1:]) if v != u]
        if diffs and any(d != diffs[0] for d in diffs):
            return False
    return True


def detect_renormalizable(g: RenormGerm, max_period: int = MAX_PERIOD, samples: int = UNIMODAL_SAMPLES):
    """Minimal n > 1 and maximal J = [-b, b] with J periodic of period n.

    Candidates are closest returns of the critical orbit; J is bounded by the
    fixed point of g^n (or of -g^n when g^n has a maximum at 0) on the
    monotone branch through 0.
    """
    if max_period > MAX_PERIOD:
        raise ValueError(f"max_period is capped at {MAX_PERIOD}")
    N = g.total_period
    B = g.total_scale
    ctx = mpmath.workdps(g.dps) if g.dps is not None else _null()
    with ctx:
        c = g.base_c
        base = _base_orbit(g, N * max_period)
        absB = abs(B)
        radius = None  # germ-coordinate distance from 0 to the nearest zero of g^k, k < n
        best = None
        for n in range(1, max_period + 1):
            o_n = base[N * n] / B
            if n > 1 and best is not None and abs(o_n) < best and radius is not None:
                found = _try_period(g, n, o_n, min(radius, 1), base, samples)
                if found is not None:
                    return found
            best = abs(o_n) if best is None else min(best, abs(o_n))
            y = _positive_zero(base, N * n, c)
            if y is not None:
                radius = y / absB if radius is None else min(radius, y / absB)
        return None


class _null:
    def __enter__(self):
        return self

    def __exit__(self, *a):
        return False


def _try_period(g, n, o_n, radius, base, samples):
    N = g.total_period
    side = _sgn(g.total_scale)
    for s in range(1, N * n):
        side *= _sgn(base[s])
    sgn = 1 if side > 0 else -1  # +1: g^n has a minimum at 0

    def h(y):
        return g.iterate(y, n) - sgn * y

    lo = abs(o_n)
    grid = 32
    pts = [lo + (radius - lo) * k / grid for k in range(grid + 1)]
    vals = [h(y) for y in pts]
    tol = 1e-9 if g.dps is None else mpmath.mpf(10) ** (-g.dps // 2)
    for k in range(grid, 0, -1):
        a, b = pts[k - 1], pts[k]
        ha, hb = vals[k - 1], vals[k]
        if ha == 0:
            root = a
        elif hb == 0:
            root = b
        elif ha * hb < 0:
            root = _solve(h, a, b)
        else:
            continue
        bnd = sgn * root
        if abs(g.iterate(0 * root, n)) > root * (1 + tol):
            continue
        if abs(_derivative(g, root, n)) <= 1:
            continue  # an attracting or neutral boundary point bounds no renormalization
        if not _disjoint(_orbit_intervals(g, root, n), tol * root):
            continue
        if not is_unimodal_on(g, n, root, samples):
            continue
        return n, bnd
    return None


def _derivative(g, y, n: int):
    c = g.base_c
    z = g.total_scale * y
    d = 1
    for _ in range(g.total_period * n):
        d *= 2 * z
        z = z * z + c
    return d


def renormalize(g: RenormGerm, max_period: int = MAX_PERIOD, samples: int = UNIMODAL_SAMPLES) -> RenormGerm:
    B = g.total_scale
    if abs(B) < 1e3 * g.epsilon():
        raise PrecisionExhausted(f"renormalization scale {float(abs(B)):.3e} at working precision", stage=len(g.stages))
    found = detect_renormalizable(g, max_period, samples)
    if found is None:
        raise NotRenormalizable(f"no renormalization with period <= {max_period}", stage=len(g.stages) + 1)
    n, b = found
    return g.with_stage(Stage(n, b))


# --------------------------------------------------------------------------
# diagnostics

@dataclass(frozen=True)
class RenormDiagnostics:
    stage: int
    period: int
    kneading: Tuple[int, ...]
    critical_value: float
    alpha: float
    beta: float
    inner: InnerClass

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "period": self.period,
            "kneading": "".join("LCR"[s + 1] for s in self.kneading),
            "critical_value": f"{self.critical_value:.17g}",
            "alpha": f"{self.alpha:.17g}",
            "beta": f"{self.beta:.17g}",
            "inner_class": [f"{self.inner.lo:.17g}", f"{self.inner.hi:.17g}"],
            "inner_depth": self.inner.depth,
        }


def germ_diagnostics(g: RenormGerm, stage: int, depth: int = 40, prefix: int = 48) -> RenormDiagnostics:
    zero_tol = 1e-13 if g.dps is None else float(mpmath.mpf(10) ** (-(g.dps // 2)))
    kn = critical_itinerary(g, prefix, zero_tol)
    inner = inner_class_real(g, depth, zero_tol)
    b = 1.0 if not g.stages else float(g.iterate(1, 1))
    alpha = _solve(lambda x: g(x) - x, g._num(-1), g._num(0)) if g(g._num(0)) < 0 else g._num(0)
    return RenormDiagnostics(stage, g.total_period, kn, float(g(0)), float(alpha), b, inner)


def renorm_orbit(c, k: int, dps: Optional[int] = None, max_period: int = MAX_PERIOD,
                 samples: int = UNIMODAL_SAMPLES) -> List[RenormDiagnostics]:
    g = RenormGerm.quadratic(c, dps)
    out = []
    for j in range(1, k + 1):
        g = renormalize(g, max_period, samples)
        out.append(germ_diagnostics(g, j))
    return out


def diagnostics_jsonl(diags: Sequence[RenormDiagnostics]) -> str:
    return "".join(json.dumps(d.to_json()) + "\n" for d in diags)


# --------------------------------------------------------------------------
# first return and first through maps

@dataclass(frozen=True)
class Branch:
    interval: Tuple[float, float]
    time: int
    sign: int  # +1 increasing, -1 decreasing, 0 contains a turning point
    itinerary: Tuple[int, ...]


def _inside(x, U) -> bool:
    return any(a <= x <= b for a, b in U)


def _landing(g, x, U, budget: int, start: int):
    y = x
    sides = []
    t = 0
    if start == 0 and _inside(y, U):
        return 0, ()
    while t < budget:
        sides.append(_sgn(y))
        y = g(y)
        t += 1
        if _inside(y, U):
            return t, tuple(sides[1:])
    raise LandingBudgetExceeded(f"no landing within {budget} steps from x = {float(x):.6g}")


def _branches(g, domain, U, budget, start, extra, samples):
    a, b = domain
    xs = [a + (b - a) * k / (samples - 1) for k in range(samples)]
    keys = [_landing(g, x, U, budget, start) for x in xs]
    groups = []
    k0 = 0
    for k in range(1, samples + 1):
        if k == samples or keys[k] != keys[k0]:
            groups.append((k0, k - 1))
            k0 = k
    out = []
    for i, (p, q) in enumerate(groups):
        lo = xs[p] if p == 0 else _split(g, xs[p - 1], xs[p], keys[p], U, budget, start)
        hi = xs[q] if q == samples - 1 else _split(g, xs[q], xs[q + 1], keys[q], U, budget, start, left=True)
        t, itin = keys[p]
        T = t + extra
        ys = [g.iterate(x, T) for x in xs[p : q + 1]]
        d = [_sgn(v - u) for u, v in zip(ys, ys[1:]) if v != u]
        sign = 0 if d and any(s != d[0] for s in d) else (d[0] if d else 1)
        out.append(Branch((float(lo), float(hi)), T, sign, itin))
    return out


def _split(g, x0, x1, key, U, budget, start, left=False, steps=40):
    # bisect the boundary between x0 and x1 where the landing key changes
    for _ in range(steps):
        m = 0.5 * (x0 + x1)
        if (_landing(g, m, U, budget, start) == key) == left:
            x1 = m
        else:
            x0 = m
    return x0 if left else x1


def first_return_map(g, U: Tuple[float, float], budget: int = 1000, samples: int = 513) -> List[Branch]:
    """Branches of the first return to U, resolved down to the sampling step.

    Branches narrower than (b - a) / (samples - 1) can be missed or merged
    into a neighbour; only wider branches are reliable.
    """
    return _branches(g, U, [U], budget, 1, 0, samples)


def first_through_map(g, U_off: Sequence[Tuple[float, float]], domain: Tuple[float, float],
                      budget: int = 1000, samples: int = 513) -> List[Branch]:
    return _branches(g, domain, list(U_off), budget, 0, 1, samples)
