"""Distinguished real parameters: centers, period-tripling centers, roots."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import mpmath

from .errors import NewtonDivergence, NoBracket, SolverFailure
from .shuffle import Shuffle, compare_itineraries, shuffle_from_kneading, shuffle_of_center

C_MIN, C_MAX = -2.0, 0.25
RESIDUAL_TOL = 1e-12
DEFAULT_DPS = 40


@dataclass(frozen=True)
class CenterSolve:
    sigma: Shuffle
    c: float
    residual: float
    bracket: Tuple[float, float]
    c_hp: object = None  # the refined value as an mpmath number

    @property
    def period(self) -> int:
        return self.sigma.p


@dataclass(frozen=True)
class RootSolve:
    sigma: Shuffle
    c: float
    z: float
    q: int
    residual_fix: float
    residual_mult: float
    c_hp: object = None


@dataclass(frozen=True)
class InnerClass:
    lo: float
    hi: float
    depth: int
    hit_critical: bool  # the critical orbit returned to 0 before ``depth``

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, c: float) -> bool:
        return self.lo <= c <= self.hi


def _sign(x) -> int:
    return int(x > 0) - int(x < 0)


def kneading_at(c, n: int) -> Tuple[int, ...]:
    """Sides of f_c^t(0) for t = 1..n."""
    z = 0 * c
    out = []
    for _ in range(n):
        z = z * z + c
        out.append(_sign(z))
    return tuple(out)


def _orbit_value(c, p: int):
    z, dz = 0 * c, 0 * c
    for _ in range(p):
        z, dz = z * z + c, 2 * z * dz + 1
    return z, dz


def _key(c, target: Sequence[int], orient: int) -> int:
    return orient * compare_itineraries(kneading_at(c, len(target)), target)


def _orientation(n: int) -> int:
    # +1 when the kneading order agrees with the order of c
    return compare_itineraries(kneading_at(mpmath.mpf(C_MAX), n), kneading_at(mpmath.mpf(C_MIN), n))


def center_from_kneading(kneading: Sequence[int], dps: int = DEFAULT_DPS, tol: float = RESIDUAL_TOL,
                         sigma: Optional[Shuffle] = None, verify: bool = True) -> CenterSolve:
    """Superattracting center with the given kneading sequence.

    Kneading is monotone in c, so the sequence is located by bisection and
    then polished by Newton on f_c^p(0) = 0, all in ``dps`` digits.
    """
    target = tuple(kneading)
    p = len(target)
    if sigma is None:
        sigma = shuffle_from_kneading(target)
    with mpmath.workdps(dps):
        orient = _orientation(p)
        lo, hi = mpmath.mpf(C_MIN), mpmath.mpf(C_MAX)
        eps = mpmath.mpf(10) ** (-(dps - 5))
        c = None
        rounds = 0
        while hi - lo > eps:
            for _ in range(50 if rounds == 0 else 20):
                mid = (lo + hi) / 2
                k = _key(mid, target, orient)
                if k == 0:
                    lo = hi = mid
                    break
                if k < 0:
                    lo = mid
                else:
                    hi = mid
            rounds += 1
            c = _newton_center(lo, hi, p, eps)
            if c is not None:
                break
        if c is None:
            c = (lo + hi) / 2
        residual = abs(_orbit_value(c, p)[0])
        if residual > tol:
            raise SolverFailure(f"center residual {float(residual):.3e} above {tol}")
        if verify and p > 1:
            found = shuffle_of_center(c, p, sep_tol=mpmath.mpf(10) ** (8 - dps), allow_tuned=True)
            if found.perm != sigma.perm:
                raise SolverFailure("center does not realize the requested shuffle")
        return CenterSolve(sigma, float(c), float(residual), (float(lo), float(hi)), +c)


def _newton_center(lo, hi, p: int, eps, max_iter: int = 80):
    c = (lo + hi) / 2
    for _ in range(max_iter):
        z, dz = _orbit_value(c, p)
        if dz == 0:
            return None
        step = z / dz
        c -= step
        if not lo <= c <= hi:
            return None
        if abs(step) < eps:
            return c
    return None


def center_of_shuffle(sigma: Shuffle, dps: int = DEFAULT_DPS, tol: float = RESIDUAL_TOL) -> CenterSolve:
    if sigma.p == 1:
        return CenterSolve(sigma, 0.0, 0.0, (0.0, 0.0), mpmath.mpf(0))
    return center_from_kneading(sigma.kneading(), dps=dps, tol=tol, sigma=sigma)


def sigma3_kneading(n: int) -> Tuple[int, ...]:
    """(L R L)^n L C: n-1 trips through the period three channel, then the exit."""
    return (-1, 1, -1) * n + (-1, 0)


def solve_sigma3_center(n: int, dps: int = DEFAULT_DPS) -> CenterSolve:
    if n < 1:
        raise ValueError("n must be >= 1")
    return center_from_kneading(sigma3_kneading(n), dps=dps)


def centers_sigma3(n_max: int, dps: int = DEFAULT_DPS) -> List[Tuple[int, CenterSolve]]:
    return [(n, solve_sigma3_center(n, dps)) for n in range(1, n_max + 1)]


def centers_csv(rows: Sequence[Tuple[str, int, CenterSolve]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "n", "c", "residual", "period"])
    for label, n, s in rows:
        w.writerow([label, n, f"{s.c:.17g}", f"{s.residual:.17g}", s.period])
    return buf.getvalue()


# --------------------------------------------------------------------------
# roots of copies

def _cycle_jet(c, z, q: int):
    """f^q(z), (f^q)'(z) and their partials in z and c."""
    d1, dc, d11, d1c = 1, 0, 0, 0
    for _ in range(q):
        d11 = 2 * (d1 * d1 + z * d11)
        d1c = 2 * (dc * d1 + z * d1c)
        d1, dc = 2 * z * d1, 2 * z * dc + 1
        z = z * z + c
    return z, d1, dc, d11, d1c


def root_of_copy(sigma: Shuffle, dps: int = DEFAULT_DPS, steps: int = 32, max_iter: int = 400,
                 tol: float = 1e-10) -> RootSolve:
    """Parabolic parameter at the root of the copy centred at sigma's center.

    Follows the cycle through 0 from multiplier 0 up to multiplier 1 with a
    two-variable Newton on (c, z).
    """
    q = sigma.p
    center = center_of_shuffle(sigma, dps=dps)
    with mpmath.workdps(dps):
        c, z = mpmath.mpf(center.c_hp), mpmath.mpf(0)
        eps = mpmath.mpf(10) ** (-(dps - 8))
        for k in range(1, steps + 1):
            lam = mpmath.mpf(k) / steps
            for it in range(max_iter):
                fz, d1, dc, d11, d1c = _cycle_jet(c, z, q)
                r1, r2 = fz - z, d1 - lam
                a, b, e, g = d1 - 1, dc, d11, d1c
                det = a * g - b * e
                if det == 0:
                    raise NewtonDivergence("singular Jacobian on the root path")
                dz = (r1 * g - b * r2) / det
                dcc = (a * r2 - e * r1) / det
                z -= dz
                c -= dcc
                if abs(c) > 2 or abs(z) > 2:
                    raise NewtonDivergence("root path left the real filled set")
                if max(abs(dz), abs(dcc)) < eps:
                    break
            else:
                if k < steps:
                    raise NewtonDivergence(f"no convergence at multiplier {float(lam)}")
        fz, d1, *_ = _cycle_jet(c, z, q)
        r1, r2 = abs(fz - z), abs(d1 - 1)
        if max(r1, r2) > tol:
            raise SolverFailure(f"root residuals {float(r1):.2e}, {float(r2):.2e}")
        return RootSolve(sigma, float(c), float(z), q, float(r1), float(r2), +c)


# --------------------------------------------------------------------------
# inner class of a real unimodal germ

def critical_itinerary(germ: Callable, depth: int, zero_tol: float = 1e-13) -> Tuple[int, ...]:
    """Sides of g^t(0) up to ``depth``; stops with a 0 on a return to the critical point."""
    x = germ(0.0)
    out = []
    for _ in range(depth):
        if abs(x) <= zero_tol:
            out.append(0)
            break
        out.append(_sign(x))
        x = germ(x)
    return tuple(out)


def inner_class_real(germ: Callable, depth: int = 40, zero_tol: float = 1e-13,
                     iterations: int = 80) -> InnerClass:
    """Interval of c in [-2, 1/4] whose kneading agrees with the germ's to ``depth``.

    ``germ`` is a unimodal map normalized with a minimum at 0 (for instance a
    renormalized germ); only the sides of its critical orbit enter.
    """
    target = critical_itinerary(germ, depth, zero_tol)
    return _kneading_bracket(target, iterations)


def _kneading_bracket(target: Tuple[int, ...], iterations: int = 80) -> InnerClass:
    d = len(target)
    orient = compare_itineraries(kneading_at(C_MAX, d), kneading_at(C_MIN, d))

    def key(c):
        return orient * compare_itineraries(kneading_at(c, d), target)

    if key(C_MIN) > 0 or key(C_MAX) < 0:
        raise NoBracket("itinerary outside the real family")
    a, b = C_MIN, C_MAX  # sup{key < 0}
    for _ in range(iterations):
        m = 0.5 * (a + b)
        if key(m) < 0:
            a = m
        else:
            b = m
    lo = a
    a, b = C_MIN, C_MAX  # inf{key > 0}
    for _ in range(iterations):
        m = 0.5 * (a + b)
        if key(m) > 0:
            b = m
        else:
            a = m
    hi = b
    return InnerClass(lo, hi, d, bool(target) and target[-1] == 0)
