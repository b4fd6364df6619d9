"""Shuffles (unimodal non-renormalizable cyclic permutations) and the
signed-semigroup return types used to describe real principal nests.

Conventions
-----------
Orbit points are labelled 1..p from left to right.  ``perm[i-1]`` is the
label of the image of point ``i``.  For z**2 + c the critical value is the
leftmost orbit point, so a shuffle decreases up to the critical label
``k`` (where ``perm(k) == 1``) and increases after it.

Semigroup generators are integer positions, 0 being the central interval.
A word is a tuple of positions, read in time order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
import functools
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import (
    NotABijection,
    NotACycle,
    NotSuperattracting,
    NotUnimodal,
    OrbitCollision,
    Renormalizable,
)


# --------------------------------------------------------------------------
# permutations

@dataclass(frozen=True)
class Shuffle:
    perm: Tuple[int, ...]
    block_size: int | None = None  # set only for tuned (renormalizable) permutations

    @property
    def p(self) -> int:
        return len(self.perm)

    @property
    def critical_index(self) -> int:
        return self.perm.index(1) + 1

    @property
    def immediately_renormalizable(self) -> bool:
        return self.perm == (2, 1)

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def orbit_labels(self) -> Tuple[int, ...]:
        """Labels of f^t(0) for t = 0..p-1."""
        k = self.critical_index
        out = [k]
        for _ in range(self.p - 1):
            out.append(self.perm[out[-1] - 1])
        return tuple(out)

    def kneading(self) -> Tuple[int, ...]:
        """Sides (-1, 0, +1) of f^t(0) for t = 1..p; the last entry is 0."""
        k = self.critical_index
        labels = self.orbit_labels()
        return tuple((lab > k) - (lab < k) for lab in labels[1:]) + (0,)

    def to_text(self) -> str:
        return format_cycle(self)

    def __str__(self) -> str:
        return self.to_text()


IDENTITY = Shuffle((1,))


def _is_bijection(perm: Sequence[int]) -> bool:
    return sorted(perm) == list(range(1, len(perm) + 1))


def _is_single_cycle(perm: Sequence[int]) -> bool:
    seen, i = 0, 1
    while True:
        i = perm[i - 1]
        seen += 1
        if i == 1:
            return seen == len(perm)
        if seen > len(perm):
            return False


def _unimodal_turn(perm: Sequence[int]) -> int | None:
    """Critical label if ``perm`` is a valley with minimum value 1, else None."""
    k = list(perm).index(1) + 1
    left = perm[:k]
    right = perm[k - 1:]
    if all(a > b for a, b in zip(left, left[1:])) and all(a < b for a, b in zip(right, right[1:])):
        return k
    return None


def _renormalizing_block(perm: Sequence[int]) -> int | None:
    p = len(perm)
    for q in range(2, p):
        if p % q:
            continue
        ok = True
        for start in range(0, p, q):
            image = {perm[i] - 1 for i in range(start, start + q)}
            lo = min(image)
            if lo % q or max(image) != lo + q - 1:
                ok = False
                break
        if ok:
            return q
    return None


def validate_shuffle(perm: Iterable[int]) -> Shuffle:
    """Check that ``perm`` is a shuffle and return it.

    Raises NotABijection, Renormalizable(q), NotACycle or NotUnimodal, in that
    order of precedence.
    """
    perm = tuple(int(x) for x in perm)
    if len(perm) < 2 or not _is_bijection(perm):
        raise NotABijection(f"{perm} is not a bijection of 1..p with p >= 2", perm)
    q = _renormalizing_block(perm)
    if q is not None:
        raise Renormalizable(f"{perm} permutes blocks of {q} consecutive labels", q)
    if not _is_single_cycle(perm):
        raise NotACycle(f"{perm} is not a single {len(perm)}-cycle", perm)
    if _unimodal_turn(perm) is None:
        raise NotUnimodal(f"{perm} has no single valley at the critical label", perm)
    return Shuffle(perm)


def is_shuffle(perm: Iterable[int]) -> bool:
    try:
        validate_shuffle(perm)
    except (NotABijection, Renormalizable, NotACycle, NotUnimodal):
        return False
    return True


SIGMA2 = Shuffle((2, 1))
SIGMA3 = Shuffle((3, 1, 2))


# --------------------------------------------------------------------------
# itineraries

def compare_itineraries(a: Sequence[int], b: Sequence[int]) -> int:
    """Signed lexicographic order of two itineraries over {-1, 0, +1}.

    Returns -1 when the point with itinerary ``a`` lies left of the one with
    itinerary ``b``.  Symbols left of the critical point reverse orientation.
    """
    theta = 1
    for x, y in zip(a, b):
        if x != y:
            return -1 if theta * (x - y) < 0 else 1
        if x == 0:
            return 0
        theta *= x
    return 0


def shuffle_from_kneading(kneading: Sequence[int], check: bool = True) -> Shuffle:
    """Permutation of a superattracting orbit whose sides are ``kneading``.

    ``kneading[t-1]`` is the side of f^t(0) for t = 1..p with a final 0.
    """
    kn = tuple(kneading)
    p = len(kn)
    if p < 1 or kn[-1] != 0 or 0 in kn[:-1]:
        raise ValueError("kneading must end with its only 0 entry")
    sides = (0,) + kn[:-1]  # side of f^t(0), t = 0..p-1

    def itin(t):
        return [sides[(t + k) % p] for k in range(p)]

    its = [itin(t) for t in range(p)]
    order = sorted(range(p), key=functools.cmp_to_key(lambda i, j: compare_itineraries(its[i], its[j])))
    label = {t: r + 1 for r, t in enumerate(order)}
    perm = [0] * p
    for t in range(p):
        perm[label[t] - 1] = label[(t + 1) % p]
    if p == 1:
        return IDENTITY
    if check:
        return validate_shuffle(perm)
    return _tuned(tuple(perm))


def shuffle_of_center(c, p: int, sep_tol: float = 1e-6, tol: float = 1e-9, allow_tuned: bool = False) -> Shuffle:
    """Read the shuffle induced on the critical orbit of a real center.

    With ``allow_tuned`` a renormalizable permutation is returned with its
    block size recorded instead of being rejected.
    """
    if p < 2:
        raise NotSuperattracting("a shuffle needs period p >= 2")
    z = 0 * c
    pts = [z]
    for _ in range(p):
        z = z * z + c
        pts.append(z)
    if abs(pts[-1]) > tol:
        raise NotSuperattracting(f"|f^{p}(0)| = {float(abs(pts[-1])):.3e} exceeds {tol}")
    pts = pts[:-1]
    early = [t for t in range(1, p) if abs(pts[t]) <= tol]
    if early:
        raise NotSuperattracting(f"critical orbit returns at t = {early[0]} < {p}")
    order = sorted(range(p), key=lambda t: pts[t])
    diam = pts[order[-1]] - pts[order[0]]
    for a, b in zip(order, order[1:]):
        if pts[b] - pts[a] <= sep_tol * diam:
            raise OrbitCollision(f"orbit points {a} and {b} closer than {sep_tol}*diam")
    label = {t: r + 1 for r, t in enumerate(order)}
    perm = [0] * p
    for t in range(p):
        perm[label[t] - 1] = label[(t + 1) % p]
    if allow_tuned:
        return _tuned(tuple(perm))
    return validate_shuffle(perm)


# --------------------------------------------------------------------------
# tuning

def _tuned(perm: Tuple[int, ...]) -> Shuffle:
    if not _is_single_cycle(perm) or _unimodal_turn(perm) is None:
        raise NotUnimodal(f"{perm} is not a unimodal cycle", perm)
    return Shuffle(perm, block_size=_renormalizing_block(perm))


def star_product(outer: Shuffle, inner: Shuffle) -> Shuffle:
    """Permutation of the center of ``outer`` tuned by ``inner``.

    Each outer orbit point becomes a block of ``inner.p`` points; the central
    block carries the inner dynamics, read in reversed order when the return
    map to it has a maximum at 0.
    """
    if inner.p == 1:
        return outer
    if outer.p == 1:
        return inner
    p1, p2 = outer.p, inner.p
    k = outer.critical_index
    blocks = outer.orbit_labels()  # block of f^r(0), r = 0..p1-1

    def sgn(block):
        return -1 if block < k else 1

    # orientation of f^(p1 - r) from block r back to the central block
    tail = [1] * (p1 + 1)
    for r in range(p1 - 1, 0, -1):
        tail[r] = tail[r + 1] * sgn(blocks[r])
    flip = tail[1] == -1  # return map has a maximum at 0

    k2 = inner.critical_index

    def central_pos(s):
        lab = k2
        for _ in range(s % p2):
            lab = inner.perm[lab - 1]
        return p2 + 1 - lab if flip else lab

    P = p1 * p2
    glob = []
    for t in range(P):
        s, r = divmod(t, p1)
        if r == 0:
            pos = central_pos(s)
        else:
            inner_pos = central_pos(s + 1)
            pos = inner_pos if tail[r] == 1 else p2 + 1 - inner_pos
        glob.append((blocks[r] - 1) * p2 + pos)
    perm = [0] * P
    for t in range(P):
        perm[glob[t] - 1] = glob[(t + 1) % P]
    result = _tuned(tuple(perm))
    return Shuffle(result.perm, block_size=p2)


# --------------------------------------------------------------------------
# text forms

def format_cycle(sigma: Shuffle) -> str:
    """One-line cycle notation starting at label 1, e.g. ``(1 3 2)``."""
    out, i = [1], sigma.perm[0]
    while i != 1:
        out.append(i)
        i = sigma.perm[i - 1]
    return "(" + " ".join(map(str, out)) + ")"


def parse_cycle(text: str, validate: bool = True) -> Shuffle:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"not a cycle: {text!r}")
    labels = [int(x) for x in body[1:-1].replace(",", " ").split()]
    p = len(labels)
    perm = [0] * p
    for a, b in zip(labels, labels[1:] + labels[:1]):
        perm[a - 1] = b
    if p == 1:
        return IDENTITY
    if validate:
        return validate_shuffle(perm)
    return _tuned(tuple(perm))


# --------------------------------------------------------------------------
# signed semigroups and return types

@dataclass(frozen=True)
class SignedSemigroup:
    """Free ordered semigroup on interval symbols with signs."""

    eps: Tuple[Tuple[int, int], ...]  # sorted (position, sign) pairs

    def __post_init__(self):
        positions = [p for p, _ in self.eps]
        if positions.count(0) != 1:
            raise ValueError("a signed semigroup needs exactly one central generator")
        if positions != sorted(set(positions)):
            raise ValueError("generator positions must be distinct and sorted")
        if any(s not in (1, -1) for _, s in self.eps):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def of(cls, signs: Mapping[int, int]) -> "SignedSemigroup":
        return cls(tuple(sorted((int(p), int(s)) for p, s in signs.items())))

    @property
    def positions(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.eps)

    def sign(self, pos: int) -> int:
        return dict(self.eps)[pos]

    def word_sign(self, word: Sequence[int]) -> int:
        s = 1
        d = dict(self.eps)
        for x in word:
            s *= d[x]
        return s

    def __len__(self) -> int:
        return len(self.eps)

    def to_text(self) -> str:
        return " ".join(f"{'+' if s > 0 else '-'}I_{p}" for p, s in self.eps)

    @classmethod
    def from_text(cls, text: str) -> "SignedSemigroup":
        signs = {}
        for tok in text.split():
            m = re.fullmatch(r"([+-])I_(-?\d+)", tok)
            if not m:
                raise ValueError(f"bad generator {tok!r}")
            signs[int(m.group(2))] = 1 if m.group(1) == "+" else -1
        return cls.of(signs)


GAMMA_0 = SignedSemigroup.of({-1: -1, 0: 1, 1: 1})


@dataclass(frozen=True)
class ReturnHom:
    source: SignedSemigroup
    target: SignedSemigroup
    images: Tuple[Tuple[int, Tuple[int, ...]], ...]

    @classmethod
    def of(cls, source, target, images: Mapping[int, Sequence[int]]) -> "ReturnHom":
        return cls(source, target, tuple(sorted((int(k), tuple(v)) for k, v in images.items())))

    def __post_init__(self):
        keys = [k for k, _ in self.images]
        if keys != list(self.source.positions):
            raise ValueError("images must cover exactly the source generators")
        tgt = set(self.target.positions)
        for k, w in self.images:
            if not w or any(x not in tgt for x in w):
                raise ValueError(f"image of I_{k} is not a nonempty target word")

    def word(self, pos: int) -> Tuple[int, ...]:
        return dict(self.images)[pos]

    def is_canonical(self) -> bool:
        """The neglectable-level form I_i -> I_i I_0, I_0 -> I_0 on equal semigroups."""
        if self.source != self.target:
            return False
        return all(w == ((0,) if k == 0 else (k, 0)) for k, w in self.images)

    def to_text(self) -> str:
        lines = [f"source: {self.source.to_text()}", f"target: {self.target.to_text()}"]
        for k, w in self.images:
            lines.append(f"I_{k} -> {format_word(w)}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "ReturnHom":
        src = tgt = None
        images = {}
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("source:"):
                src = SignedSemigroup.from_text(line[7:])
            elif line.startswith("target:"):
                tgt = SignedSemigroup.from_text(line[7:])
            else:
                lhs, rhs = line.split("->")
                images[int(lhs.strip()[2:])] = parse_word(rhs)
        if src is None or tgt is None:
            raise ValueError("missing source/target header")
        return cls.of(src, tgt, images)


def format_word(word: Sequence[int]) -> str:
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = j - i
        out.append(f"I_{word[i]}" + (f"^{n}" if n > 1 else ""))
        i = j
    return " ".join(out)


def parse_word(text: str) -> Tuple[int, ...]:
    word = []
    for tok in text.split():
        m = re.fullmatch(r"I_(-?\d+)(?:\^(\d+))?", tok)
        if not m:
            raise ValueError(f"bad letter {tok!r}")
        word.extend([int(m.group(1))] * int(m.group(2) or 1))
    return tuple(word)


def _side_order(chi: ReturnHom, i: int, j: int) -> int:
    """Order of the images of source generators i and j (same side of 0)."""
    a, b = chi.word(i), chi.word(j)
    side = 1 if i > 0 else -1
    theta = side * chi.target.sign(0)
    for x, y in zip(a, b):
        if x != y:
            return -1 if theta * (x - y) < 0 else 1
        theta *= chi.target.sign(x)
    return 0


def is_unimodal(chi: ReturnHom) -> bool:
    """Words end centrally and points on each side of 0 are mapped monotonically."""
    for _, w in chi.images:
        if w[-1] != 0 or 0 in w[:-1]:
            return False
    pos = chi.source.positions
    for side in (-1, 1):
        gens = [p for p in pos if p * side > 0]
        orders = {_side_order(chi, a, b) for a, b in zip(gens, gens[1:])}
        if 0 in orders or len(orders) > 1:
            return False
    return True


def is_admissible(chi: ReturnHom) -> bool:
    if not is_unimodal(chi):
        return False
    for k, w in chi.images:
        want = chi.target.word_sign(w) * (1 if k >= 0 else -1)
        if chi.source.sign(k) != want:
            return False
    return True


def is_zero_admissible(chi: ReturnHom) -> bool:
    if chi.target != GAMMA_0 or not is_admissible(chi):
        return False
    for k, w in chi.images:
        if len(w) < 2 or w[0] != -1 or w[-1] != 0 or any(x != 1 for x in w[1:-1]):
            return False
        if k == 0 and len(w) - 2 < 1:
            return False
    return True


# fixtures for the essentially period tripling family

GAMMA = SignedSemigroup.of({-1: 1, 0: -1})
GAMMA_PRIME = SignedSemigroup.of({0: -1})
CHI_0 = ReturnHom.of(GAMMA, GAMMA_0, {-1: (-1, 0), 0: (-1, 1, 0)})
CHI = ReturnHom.of(GAMMA, GAMMA, {-1: (-1, 0), 0: (0,)})
CHI_PRIME = ReturnHom.of(GAMMA_PRIME, GAMMA, {0: (-1, 0)})
CHI_2 = ReturnHom.of(GAMMA, GAMMA, {-1: (-1, -1, 0), 0: (0,)})
CHI_3 = ReturnHom.of(GAMMA, GAMMA, {-1: (-1, -1, 0), 0: (-1, 0)})


@lru_cache(maxsize=None)
def sigma3_n(n: int) -> Shuffle:
    """The essentially period tripling shuffle of period 3n + 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    from .solver import solve_sigma3_center

    return solve_sigma3_center(n).sigma
