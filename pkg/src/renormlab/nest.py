"""Real principal nest at a superattracting center.

Everything is determined by the finite critical orbit: the pieces of level m
are pullbacks of I^(m-1) along orbit points that lie in it, and inverse
branches of z^2 + c are explicit square roots, so no root finding is needed.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .core import fixed_points
from .errors import (
    ImmediatelyRenormalizable,
    LevelBudgetExceeded,
    NotSuperattracting,
)
from .sequence import Cascade, ReturnTypeSequence, SADDLE_NODE, ULAM_NEUMANN
from .shuffle import GAMMA_0, ReturnHom, Shuffle, SignedSemigroup

MAX_LEVEL = 64
Interval = Tuple[float, float]


@dataclass(frozen=True)
class Piece:
    level: int
    position: int
    interval: Interval
    return_time: int
    word: Tuple[int, ...]
    sign: int
    times: Tuple[int, ...]  # orbit times t with f^t(0) in the piece

    def __contains__(self, x: float) -> bool:
        return self.interval[0] <= x <= self.interval[1]


@dataclass(frozen=True)
class NestLevel:
    m: int
    pieces: Tuple[Piece, ...]

    @property
    def central(self) -> Piece:
        return next(p for p in self.pieces if p.position == 0)

    def locate(self, x: float) -> Optional[Piece]:
        for p in self.pieces:
            if x in p:
                return p
        return None


def _sgn(x: float) -> int:
    return int(x > 0) - int(x < 0)


@dataclass(frozen=True)
class PrincipalNest:
    c: float
    orbit: Tuple[float, ...]  # f^t(0), t = 0..p-1
    alpha: float
    beta: float
    levels: Tuple[NestLevel, ...]

    @property
    def period(self) -> int:
        return len(self.orbit)

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def interval(self, m: int) -> Interval:
        """I^m, the central piece of level m."""
        return self.levels[m].central.interval

    def depth(self, x: float) -> int:
        """Deepest level m with x in I^m; -1 outside I^0."""
        d = -1
        for m in range(self.top + 1):
            lo, hi = self.interval(m)
            if not lo <= x <= hi:
                break
            d = m
        return d

    def orbit_depths(self) -> Tuple[int, ...]:
        return tuple(self.depth(z) for z in self.orbit)

    def central_return(self, m: int) -> int:
        return self.levels[m].central.return_time

    def noncentral_levels(self) -> Tuple[int, ...]:
        out = []
        for m in range(1, self.top):
            lo, hi = self.interval(m)
            z = self.orbit[self.central_return(m) % self.period]
            if not lo <= z <= hi:
                out.append(m)
        return tuple(out)

    def verify_endpoints(self, rel_tol: float = 1e-8) -> bool:
        """Every piece endpoint lands on an endpoint of I^0 within its return times."""
        lo0, hi0 = self.interval(0)
        tol = rel_tol * (hi0 - lo0)
        for lev in self.levels[1:]:
            for piece in lev.pieces:
                for e in piece.interval:
                    if not self._endpoint_lands(e, lev.m, piece.return_time, tol):
                        return False
        return True

    def _endpoint_lands(self, e: float, m: int, r: int, tol: float) -> bool:
        for _ in range(r):
            e = e * e + self.c
        lo, hi = self.interval(m - 1)
        if min(abs(e - lo), abs(e - hi)) > tol:
            return False
        if m == 1:
            return True
        # continue from the boundary of I^(m-1) down the nest
        return self._endpoint_lands(e, m - 1, self.central_return(m - 1), tol)

    def to_json(self) -> dict:
        def num(x):
            return f"{x:.17g}"

        return {
            "schema": "renormlab.nest/1",
            "c": num(self.c),
            "period": self.period,
            "alpha": num(self.alpha),
            "beta": num(self.beta),
            "levels": [
                {
                    "m": lev.m,
                    "pieces": [
                        {
                            "position": p.position,
                            "interval": [num(p.interval[0]), num(p.interval[1])],
                            "return_time": p.return_time,
                            "word": list(p.word),
                            "sign": p.sign,
                        }
                        for p in lev.pieces
                    ],
                }
                for lev in self.levels
            ],
            "noncentral_levels": list(self.noncentral_levels()),
        }


def _pullback(c: float, orbit: Sequence[float], t: int, r: int, target: Interval) -> Interval:
    """Component of f^-r(target) containing f^t(0), following the orbit's sides."""
    p = len(orbit)
    lo, hi = target
    for s in range(r - 1, -1, -1):
        side = _sgn(orbit[(t + s) % p])
        a = math.sqrt(max(lo - c, 0.0))
        b = math.sqrt(max(hi - c, 0.0))
        if side == 0:
            lo, hi = -b, b
        elif side > 0:
            lo, hi = a, b
        else:
            lo, hi = -b, -a
    return lo, hi


def build_nest(c: float, period: int, max_level: int = MAX_LEVEL, tol: float = 1e-9) -> PrincipalNest:
    c = float(c)
    z, orbit = 0.0, [0.0]
    for _ in range(period):
        z = z * z + c
        orbit.append(z)
    if abs(orbit[-1]) > tol:
        raise NotSuperattracting(f"|f^{period}(0)| = {abs(orbit[-1]):.3e}")
    orbit = orbit[:-1]
    p = period
    fp = fixed_points(c)
    alpha, beta = fp.alpha.real, fp.beta.real
    if not c < alpha:
        raise ImmediatelyRenormalizable("critical value lies in I^0; no nest below the main cardioid")
    g0 = GAMMA_0
    level0 = NestLevel(
        0,
        (
            Piece(0, -1, (-beta, alpha), 1, (), g0.sign(-1), tuple(t for t in range(p) if orbit[t] < alpha)),
            Piece(0, 0, (alpha, -alpha), 1, (), g0.sign(0), tuple(t for t in range(p) if alpha <= orbit[t] <= -alpha)),
            Piece(0, 1, (-alpha, beta), 1, (), g0.sign(1), tuple(t for t in range(p) if orbit[t] > -alpha)),
        ),
    )
    levels = [level0]
    while True:
        m = len(levels)
        if m > max_level:
            raise LevelBudgetExceeded(f"nest deeper than {max_level} levels")
        prev = levels[-1]
        lo, hi = prev.central.interval
        inside = [t for t in range(p) if lo <= orbit[t] <= hi]

        def ret(t):
            s = 1
            while not lo <= orbit[(t + s) % p] <= hi:
                s += 1
            return s

        groups: List[Tuple[Interval, int, List[int]]] = []
        for t in inside:
            for g in groups:
                if g[0][0] <= orbit[t] <= g[0][1]:
                    g[2].append(t)
                    break
            else:
                r = ret(t)
                groups.append((_pullback(c, orbit, t, r, (lo, hi)), r, [t]))
        central = next(g for g in groups if 0 in g[2])
        mid = lambda g: g[0][0] + g[0][1]  # noqa: E731
        left = sorted((g for g in groups if mid(g) < 0), key=mid)
        right = sorted((g for g in groups if mid(g) > 0), key=mid)
        numbered = [(j - len(left), g) for j, g in enumerate(left)] + [(0, central)]
        numbered += [(j + 1, g) for j, g in enumerate(right)]
        pieces = []
        for pos, (iv, r, ts) in numbered:
            t = ts[0]
            pieces.append(Piece(m, pos, iv, r, _word(orbit, levels, m, t), _piece_sign(orbit, t, r), tuple(sorted(ts))))
        level = NestLevel(m, tuple(pieces))
        if m == 1 and level.central.word == (-1, 0):
            raise ImmediatelyRenormalizable("first return to I^0 is the period-doubling return")
        levels.append(level)
        if len(pieces) == 1:
            break
    return PrincipalNest(c, tuple(orbit), alpha, beta, tuple(levels))


def _word(orbit, levels, m: int, t: int) -> Tuple[int, ...]:
    p = len(orbit)
    below = levels[m - 1]
    gate = levels[m - 2].central.interval if m >= 2 else None
    word = []
    s = 1
    while True:
        y = orbit[(t + s) % p]
        if gate is None or gate[0] <= y <= gate[1]:
            piece = below.locate(y)
            word.append(piece.position)
            if piece.position == 0:
                return tuple(word)
        s += 1


def _piece_sign(orbit, t: int, r: int) -> int:
    p = len(orbit)
    prod = 1
    for s in range(r):
        side = _sgn(orbit[(t + s) % p])
        prod *= side if side else 1
    return prod


def return_type_sequence(nest: PrincipalNest) -> ReturnTypeSequence:
    homs = []
    for m in range(1, nest.top + 1):
        lev = nest.levels[m]
        src = SignedSemigroup.of({p.position: p.sign for p in lev.pieces})
        tgt = GAMMA_0 if m == 1 else homs[-1].source
        homs.append(ReturnHom.of(src, tgt, {p.position: p.word for p in lev.pieces}))
    seq = ReturnTypeSequence(tuple(homs))
    if not seq.is_irreducible():
        seq = seq.reduced()
    return seq.check()


def detect_cascades(nest: PrincipalNest, postcritical: Optional[Sequence[float]] = None) -> Tuple[Cascade, ...]:
    orbit = nest.orbit if postcritical is None else tuple(postcritical)
    p = len(orbit)
    depth = [nest.depth(z) for z in orbit]
    if postcritical is None:
        depth[0] = nest.top
    marks = (0,) + nest.noncentral_levels()
    out = []
    for k, (a, b) in enumerate(zip(marks, marks[1:])):
        h0 = orbit[nest.central_return(a + 1) % nest.period]
        eps = nest.levels[a + 1].central.sign
        kind = SADDLE_NODE if eps * _sgn(h0) > 0 else ULAM_NEUMANN
        d_k = 0
        for t in range(1, p):
            if depth[t] != a:
                continue
            s = 1
            while depth[(t + s) % p] < a:
                s += 1
            j = min(depth[(t + s) % p], b)
            d_k = max(d_k, min(j - a, b - j))
        neg = tuple(range(a + d_k + 1, b - d_k)) if kind == SADDLE_NODE else ()
        out.append(Cascade(k, a, b, kind, d_k, neg))
    return tuple(out)


def essential_period(sigma: Shuffle) -> int:
    """Number of renormalization orbit intervals whose first landing in the
    nest is not at a neglectable level."""
    from .solver import center_of_shuffle

    if sigma.p <= 2:
        return sigma.p
    sol = center_of_shuffle(sigma)
    try:
        nest = build_nest(sol.c, sigma.p)
    except ImmediatelyRenormalizable:
        return sigma.p
    neg = {l for cas in detect_cascades(nest) for l in cas.neglectable}
    depth = list(nest.orbit_depths())
    depth[0] = nest.top
    p = nest.period
    count = 0
    for k in range(p):
        t = 0
        while depth[(k + t) % p] < 0:
            t += 1
        if depth[(k + t) % p] not in neg:
            count += 1
    return count


# --------------------------------------------------------------------------
# shuffle-level operations

def sequence_of_shuffle(sigma: Shuffle) -> ReturnTypeSequence:
    from .solver import center_of_shuffle

    return return_type_sequence(build_nest(center_of_shuffle(sigma).c, sigma.p))


def truncate(seq: ReturnTypeSequence, l: int) -> Shuffle:
    return seq.truncate(l)


def insert_neglectable(seq: ReturnTypeSequence, l: int) -> ReturnTypeSequence:
    return seq.insert_neglectable(l)


def _canonical_text(sigma: Shuffle) -> Optional[str]:
    try:
        return sequence_of_shuffle(sigma).canonical().to_text()
    except ImmediatelyRenormalizable:
        return None


def essentially_equivalent(a: Shuffle, b: Shuffle) -> bool:
    if a.perm == b.perm:
        return True
    ca, cb = _canonical_text(a), _canonical_text(b)
    return ca is not None and ca == cb


INF = math.inf


@dataclass(frozen=True)
class CompactShuffle:
    class_id: str
    coords: Tuple[float, ...]  # neglectable-run length per cascade that has one; INF marks an end
    representative: Optional[ReturnTypeSequence] = field(default=None, compare=False)

    @property
    def is_end(self) -> bool:
        return any(x == INF for x in self.coords)


def compact_coords_of_sequence(seq: ReturnTypeSequence) -> CompactShuffle:
    runs = tuple(len(c.neglectable) for c in seq.cascades() if c.neglectable)
    return CompactShuffle(seq.canonical().to_text(), runs, seq)


def compact_coords(sigma: Shuffle) -> CompactShuffle:
    return compact_coords_of_sequence(sequence_of_shuffle(sigma))


def end_of(point: CompactShuffle, k: int = 0) -> CompactShuffle:
    """The end reached by letting the k-th neglectable run grow without bound."""
    coords = list(point.coords)
    coords[k] = INF
    return CompactShuffle(point.class_id, tuple(coords), point.representative)


def embed_F(*coords: float) -> float:
    """sum_k 2^-(x_1 x_2 ... x_k) - k + 1; an infinite coordinate kills the tail."""
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    total, prod = 0.0, 1.0
    for k, x in enumerate(coords, start=1):
        prod *= x
        total += 2.0 ** (-prod - k + 1)
    return total


def c_of_end(end: CompactShuffle) -> float:
    """Root of the copy of the representative truncated inside the first infinite run."""
    from .solver import root_of_copy

    if not end.is_end or end.representative is None:
        raise ValueError("an end with a representative sequence is required")
    k = next(i for i, x in enumerate(end.coords) if x == INF)
    runs = [c for c in end.representative.cascades() if c.neglectable]
    neg = runs[k].neglectable
    l = neg[len(neg) // 2]
    return root_of_copy(end.representative.truncate(l)).c
