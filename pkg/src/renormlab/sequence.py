"""Return-type sequences as symbolic objects.

A sequence is the chain chi_1: Gamma_1 -> Gamma_0, ..., chi_m: Gamma_m ->
Gamma_{m-1}.  Expanding the top central return through the chain recovers
the sides of the whole critical orbit, which fixes the kneading sequence and
hence the shuffle; the same expansion yields the nest depth of every orbit
point, so cascades, neglectable levels and the essential period can all be
read off symbolically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from .errors import AdmissibilityViolation, NotInsertable, NotNeglectable
from .shuffle import (
    GAMMA_0,
    ReturnHom,
    Shuffle,
    SignedSemigroup,
    is_admissible,
    is_zero_admissible,
    shuffle_from_kneading,
)

SADDLE_NODE = "saddle-node"
ULAM_NEUMANN = "Ulam-Neumann"


@dataclass(frozen=True)
class Cascade:
    k: int
    start: int  # m(k)
    end: int  # m(k+1)
    kind: str
    d: int
    neglectable: Tuple[int, ...]

    @property
    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class _Expansion:
    sides: Tuple[int, ...]  # side of f^t(0), t = 0..p-1 (0 only at t = 0)
    depth: Tuple[int, ...]  # deepest nest level containing f^t(0); -1 outside I^0
    visited: frozenset  # (level, position) pairs used by the orbit
    central_time: Tuple[int, ...]  # central_time[m] = return time of 0 to I^(m-1), m >= 1


@dataclass(frozen=True)
class ReturnTypeSequence:
    homs: Tuple[ReturnHom, ...]  # homs[m-1] = chi_m

    def __post_init__(self):
        if not self.homs:
            raise ValueError("empty sequence")
        if self.homs[0].target != GAMMA_0:
            raise ValueError("chi_1 must map into Gamma_0")
        for lo, hi in zip(self.homs, self.homs[1:]):
            if hi.target != lo.source:
                raise ValueError("sequence is not composable")

    # -- structure ---------------------------------------------------------

    @property
    def top(self) -> int:
        return len(self.homs)

    def gamma(self, m: int) -> SignedSemigroup:
        return GAMMA_0 if m == 0 else self.homs[m - 1].source

    def chi(self, m: int) -> ReturnHom:
        return self.homs[m - 1]

    def violations(self) -> List[str]:
        out = []
        if not is_zero_admissible(self.homs[0]):
            out.append("chi_1 is not zero-admissible")
        for m, h in enumerate(self.homs[1:], start=2):
            if not is_admissible(h):
                out.append(f"chi_{m} is not admissible")
        if len(self.gamma(self.top)) != 1:
            out.append("top semigroup has more than one generator")
        for m in range(1, self.top):
            if len(self.gamma(m)) == 1:
                out.append(f"Gamma_{m} already has one generator")
        return out

    def is_valid(self) -> bool:
        return not self.violations() and self.is_irreducible()

    # -- expansion ---------------------------------------------------------

    @cached_property
    def expansion(self) -> _Expansion:
        sides: List[int] = []
        depth: List[int] = []
        visited = set()

        def run(m: int, j: int, side: int, first_depth: int):
            visited.add((m, j))
            if m == 0:
                sides.append(side)
                depth.append(first_depth)
                return
            word = self.chi(m).word(j)
            run(m - 1, 0, side, first_depth)
            for b in word[:-1]:
                run(m - 1, b, 1 if b > 0 else -1, m - 2)

        top = self.top
        run(top, 0, 0, top)
        ctime = [0]
        for m in range(1, top + 1):
            ctime.append(self._step_length(m, 0))
        return _Expansion(tuple(sides), tuple(depth), frozenset(visited), tuple(ctime))

    def _step_length(self, m: int, j: int) -> int:
        if m == 0:
            return 1
        word = self.chi(m).word(j)
        return self._step_length(m - 1, 0) + sum(self._step_length(m - 1, b) for b in word[:-1])

    @property
    def period(self) -> int:
        return len(self.expansion.sides)

    def kneading(self) -> Tuple[int, ...]:
        s = self.expansion.sides
        return s[1:] + (0,)

    def is_irreducible(self) -> bool:
        v = self.expansion.visited
        for m in range(1, self.top + 1):
            if any((m, j) not in v for j in self.gamma(m).positions):
                return False
        return True

    def shuffle(self) -> Shuffle:
        """The unique shuffle with this return-type sequence."""
        return shuffle_from_kneading(self.kneading())

    # -- cascades ----------------------------------------------------------

    def noncentral_levels(self) -> Tuple[int, ...]:
        return tuple(m for m in range(1, self.top) if self.chi(m + 1).word(0)[0] != 0)

    def cascades(self) -> Tuple[Cascade, ...]:
        ex = self.expansion
        p = len(ex.sides)
        marks = (0,) + self.noncentral_levels()
        out = []
        for k, (a, b) in enumerate(zip(marks, marks[1:])):
            h0 = ex.central_time[a + 1] % p
            eps = self.gamma(a + 1).sign(0)
            kind = SADDLE_NODE if eps * ex.sides[h0] > 0 else ULAM_NEUMANN
            d_k = 0
            for t in range(1, p):
                if ex.depth[t] != a:
                    continue
                s = 1
                while ex.depth[(t + s) % p] < a:
                    s += 1
                j = min(ex.depth[(t + s) % p], b)
                d_k = max(d_k, min(j - a, b - j))
            neg = tuple(range(a + d_k + 1, b - d_k)) if kind == SADDLE_NODE else ()
            out.append(Cascade(k, a, b, kind, d_k, neg))
        return tuple(out)

    def neglectable_levels(self) -> Tuple[int, ...]:
        return tuple(l for c in self.cascades() for l in c.neglectable)

    def essential_period(self) -> int:
        ex = self.expansion
        p = len(ex.sides)
        neg = set(self.neglectable_levels())
        count = 0
        for k in range(p):
            t = 0
            while ex.depth[(k + t) % p] < 0:
                t += 1
            if ex.depth[(k + t) % p] not in neg:
                count += 1
        return count

    # -- surgery -----------------------------------------------------------

    def reduced(self) -> "ReturnTypeSequence":
        """Drop generators off the critical orbit and shorten at the first
        one-generator level."""
        seq = self
        while True:
            v = seq.expansion.visited
            homs = []
            renum: Dict[int, Dict[int, int]] = {0: {j: j for j in GAMMA_0.positions}}
            for m in range(1, seq.top + 1):
                g = seq.gamma(m)
                keep = [j for j in g.positions if (m, j) in v]
                left = [j for j in keep if j < 0]
                right = [j for j in keep if j > 0]
                mp = {0: 0}
                mp.update({j: -(len(left) - i) for i, j in enumerate(left)})
                mp.update({j: i + 1 for i, j in enumerate(right)})
                renum[m] = mp
                src = SignedSemigroup.of({mp[j]: g.sign(j) for j in keep})
                tgt = GAMMA_0 if m == 1 else homs[-1].source
                below = renum[m - 1]
                images = {mp[j]: tuple(below[x] for x in seq.chi(m).word(j)) for j in keep}
                homs.append(ReturnHom.of(src, tgt, images))
                if len(src) == 1:
                    break
            new = ReturnTypeSequence(tuple(homs))
            if new == seq:
                return new
            seq = new

    def truncate(self, l: int) -> Shuffle:
        if l not in self.neglectable_levels():
            raise NotNeglectable(f"level {l} is not neglectable")
        return self.truncated_sequence(l).shuffle()

    def truncated_sequence(self, l: int) -> "ReturnTypeSequence":
        chi_l = self.chi(l)
        top = SignedSemigroup.of({0: chi_l.source.sign(0)})
        chi_t = ReturnHom.of(top, chi_l.target, {0: chi_l.word(0)})
        return ReturnTypeSequence(self.homs[: l - 1] + (chi_t,)).reduced()

    def insert_neglectable(self, l: int) -> "ReturnTypeSequence":
        if not (1 <= l <= self.top) or not self.chi(l).is_canonical():
            raise NotInsertable(f"chi_{l} is not of the canonical neglectable form")
        new = ReturnTypeSequence(self.homs[:l] + (self.homs[l - 1],) + self.homs[l:])
        if not new.is_irreducible():
            raise NotInsertable("insertion breaks irreducibility")
        return new

    def canonical(self) -> "ReturnTypeSequence":
        """Representative with every neglectable level deleted."""
        seq = self
        while True:
            drop = [l + 1 for l in seq.neglectable_levels() if seq.chi(l + 1).is_canonical()]
            if not drop:
                return seq
            l = drop[0]
            seq = ReturnTypeSequence(seq.homs[: l - 1] + seq.homs[l:])

    # -- text --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema": "renormlab.return_types/1",
            "levels": [
                {
                    "level": m,
                    "source": self.chi(m).source.to_text(),
                    "target": self.chi(m).target.to_text(),
                    "images": {str(k): list(w) for k, w in self.chi(m).images},
                }
                for m in range(1, self.top + 1)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ReturnTypeSequence":
        homs = []
        for rec in data["levels"]:
            homs.append(
                ReturnHom.of(
                    SignedSemigroup.from_text(rec["source"]),
                    SignedSemigroup.from_text(rec["target"]),
                    {int(k): tuple(v) for k, v in rec["images"].items()},
                )
            )
        return cls(tuple(homs))

    def to_text(self) -> str:
        return "\n\n".join(f"# chi_{m}\n{self.chi(m).to_text()}" for m in range(1, self.top + 1))

    @classmethod
    def from_text(cls, text: str) -> "ReturnTypeSequence":
        blocks = [b for b in text.split("# chi_") if b.strip()]
        return cls(tuple(ReturnHom.from_text(b.split("\n", 1)[1]) for b in blocks))

    def check(self) -> "ReturnTypeSequence":
        bad = self.violations()
        if not self.is_irreducible():
            bad.append("sequence is not irreducible")
        if bad:
            raise AdmissibilityViolation("; ".join(bad))
        return self


# --------------------------------------------------------------------------
# fixtures

def sigma3_sequence(n: int) -> ReturnTypeSequence:
    from .shuffle import CHI, CHI_0, CHI_PRIME

    return ReturnTypeSequence((CHI_0,) + (CHI,) * (n - 1) + (CHI_PRIME,))


def goes_through_twice(below: int, above: int) -> ReturnTypeSequence:
    """chi_0, chi^below, chi_2, chi^above, chi' (listed from level 1 up)."""
    from .shuffle import CHI, CHI_0, CHI_2, CHI_PRIME

    return ReturnTypeSequence((CHI_0,) + (CHI,) * below + (CHI_2,) + (CHI,) * above + (CHI_PRIME,))


def two_cascades(below: int, above: int) -> ReturnTypeSequence:
    from .shuffle import CHI, CHI_0, CHI_3, CHI_PRIME

    return ReturnTypeSequence((CHI_0,) + (CHI,) * below + (CHI_3,) + (CHI,) * above + (CHI_PRIME,))
