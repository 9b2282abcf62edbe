"""
Root systems and Weyl-group combinatorics for the classical simple Lie algebras.

Vectors come in two coordinate systems:
  - ambient: the orthonormal epsilon basis of each family (exact Fractions)
  - Dynkin:  coefficients in the fundamental-weight basis, i.e. pairings with
             the simple coroots

Weyl-group work (folding, orbits, alternating sums) happens in Dynkin
coordinates, where a simple reflection is a single Cartan-matrix row update.
The group itself is never listed as matrices.

Exceptional families (E, F, G) plug in through `_ambient_data`; nothing else
assumes a classical family.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Sequence, Tuple

from src.errors import InvalidInputError, NotRegularError

Vec = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def _unit(dim: int, i: int, scale: Fraction = Fraction(1)) -> List[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = scale
    return v


def _add(u: Sequence[Fraction], v: Sequence[Fraction], s: Fraction = Fraction(1)) -> Vec:
    return tuple(a + s * b for a, b in zip(u, v))


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _ambient_data(family: str, n: int) -> Tuple[int, List[Vec], List[Vec], List[Vec], int]:
    """(ambient dim, simple roots, positive roots, fundamental weights, dual Coxeter)."""
    if family == "A":
        dim = n + 1
        e = [tuple(_unit(dim, i)) for i in range(dim)]
        simple = [_add(e[i], e[i + 1], Fraction(-1)) for i in range(n)]
        positive = [_add(e[i], e[j], Fraction(-1)) for i in range(dim) for j in range(i + 1, dim)]
        total = tuple(Fraction(1) for _ in range(dim))
        fundamental = []
        for i in range(1, n + 1):
            head = tuple(Fraction(1) if j < i else Fraction(0) for j in range(dim))
            fundamental.append(_add(head, total, Fraction(-i, n + 1)))
        return dim, simple, positive, fundamental, n + 1

    dim = n
    e = [tuple(_unit(dim, i)) for i in range(dim)]
    chain = [_add(e[i], e[i + 1], Fraction(-1)) for i in range(n - 1)]
    pairs = []
    for i in range(dim):
        for j in range(i + 1, dim):
            pairs.append(_add(e[i], e[j], Fraction(-1)))
            pairs.append(_add(e[i], e[j]))
    partial = [tuple(Fraction(1) if j < i else Fraction(0) for j in range(dim)) for i in range(1, n + 1)]
    half = tuple(Fraction(1, 2) for _ in range(dim))

    if family == "B":
        simple = chain + [e[n - 1]]
        positive = pairs + list(e)
        fundamental = partial[: n - 1] + [half]
        return dim, simple, positive, fundamental, 2 * n - 1
    if family == "C":
        simple = chain + [tuple(_unit(dim, n - 1, Fraction(2)))]
        positive = pairs + [tuple(_unit(dim, i, Fraction(2))) for i in range(dim)]
        return dim, simple, positive, partial, n + 1
    if family == "D":
        simple = chain + [_add(e[n - 2], e[n - 1])]
        positive = pairs
        spinor_minus = tuple(Fraction(1, 2) if j < n - 1 else Fraction(-1, 2) for j in range(dim))
        fundamental = partial[: n - 2] + [spinor_minus, half]
        return dim, simple, positive, fundamental, 2 * n - 2
    raise InvalidInputError(f"unsupported family {family!r}; expected one of {', '.join(FAMILIES)}")


@dataclass(frozen=True, order=True)
class Weight:
    """An integral weight in Dynkin labels."""

    coords: Tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "Weight":
        cleaned = text.strip().strip("[]()")
        if not cleaned:
            raise InvalidInputError("empty weight")
        try:
            return cls(tuple(int(x) for x in cleaned.split(",")))
        except ValueError as e:
            raise InvalidInputError(f"weight {text!r} is not a comma separated list of integers") from e

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def shifted(self, other: Sequence[int]) -> Tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.coords, other))

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    simple_roots: Tuple[Vec, ...]
    positive_roots: Tuple[Vec, ...]
    fundamental_weights: Tuple[Vec, ...]
    rho: Vec
    dual_coxeter: int
    gram_basic: Matrix
    form_scale: Fraction
    cartan: Tuple[Tuple[int, ...], ...]
    weight_gram: Matrix
    highest_root: Vec
    comarks: Tuple[int, ...]

    # identity is (family, rank); every other field is derived from it
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootSystem):
            return NotImplemented
        return (self.family, self.rank) == (other.family, other.rank)

    def __hash__(self) -> int:
        return hash((self.family, self.rank))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def rho_labels(self) -> Tuple[int, ...]:
        return (1,) * self.rank

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        """Basic inner product of two ambient vectors (long roots have length 2)."""
        return self.form_scale * _dot(u, v)

    def coroot(self, alpha: Sequence[Fraction]) -> Vec:
        return tuple(2 * a / self.inner(alpha, alpha) for a in alpha)

    def to_ambient(self, labels: Sequence[Any]) -> Vec:
        dim = len(self.rho)
        out = [Fraction(0)] * dim
        for c, w in zip(labels, self.fundamental_weights):
            if c:
                for j in range(dim):
                    out[j] += Fraction(c) * w[j]
        return tuple(out)

    def dynkin_labels(self, v: Sequence[Fraction]) -> Vec:
        return tuple(self.inner(v, self.coroot(a)) for a in self.simple_roots)

    def pairing(self, lam: Sequence[Any], mu: Sequence[Any]) -> Fraction:
        """Basic inner product of two weights given in Dynkin labels."""
        total = Fraction(0)
        for i, a in enumerate(lam):
            if not a:
                continue
            row = self.weight_gram[i]
            for j, b in enumerate(mu):
                if b:
                    total += Fraction(a) * b * row[j]
        return total

    @property
    def positive_root_labels(self) -> Tuple[Vec, ...]:
        return _positive_root_labels(self)

    def reflect(self, labels: Sequence[Any], i: int) -> Tuple[Any, ...]:
        """Simple reflection s_i in Dynkin coordinates."""
        li = labels[i]
        if not li:
            return tuple(labels)
        return tuple(lj - li * self.cartan[j][i] for j, lj in enumerate(labels))

    def apply_word(self, labels: Sequence[Any], word: Sequence[int]) -> Tuple[Any, ...]:
        out = tuple(labels)
        for i in word:
            out = self.reflect(out, i)
        return out

    def weyl_order(self) -> int:
        n = self.rank
        if self.family == "A":
            return math.factorial(n + 1)
        if self.family in ("B", "C"):
            return 2 ** n * math.factorial(n)
        return 2 ** (n - 1) * math.factorial(n)

    def level(self, w: Weight) -> int:
        """Pairing with the highest coroot."""
        return sum(a * c for a, c in zip(self.comarks, w.coords))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "rank": self.rank,
            "dual_coxeter": self.dual_coxeter,
            "simple_roots": [_fmt_vec(v) for v in self.simple_roots],
            "positive_roots": [_fmt_vec(v) for v in self.positive_roots],
            "fundamental_weights": [_fmt_vec(v) for v in self.fundamental_weights],
            "rho": _fmt_vec(self.rho),
            "gram_basic": [_fmt_vec(row) for row in self.gram_basic],
            "cartan": [list(row) for row in self.cartan],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "RootSystem":
        try:
            rs = build(str(payload["family"]), int(payload["rank"]))
        except KeyError as e:
            raise InvalidInputError(f"root system document missing field {e}") from e
        if payload.get("gram_basic") is not None and payload["gram_basic"] != rs.to_dict()["gram_basic"]:
            raise InvalidInputError(f"root system document for {rs.name} has an inconsistent gram_basic")
        return rs


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _fmt_vec(v: Sequence[Fraction]) -> List[str]:
    return [_fmt(Fraction(x)) for x in v]


@lru_cache(maxsize=None)
def _positive_root_labels(rs: RootSystem) -> Tuple[Vec, ...]:
    return tuple(rs.dynkin_labels(a) for a in rs.positive_roots)


@lru_cache(maxsize=None)
def build(family: str, rank: int) -> RootSystem:
    family = (family or "").strip().upper()
    if family not in FAMILIES:
        raise InvalidInputError(f"unsupported family {family!r}; expected one of {', '.join(FAMILIES)}")
    if rank < MIN_RANK[family]:
        raise InvalidInputError(f"{family}{rank}: rank must be >= {MIN_RANK[family]} for family {family}")

    dim, simple, positive, fundamental, dual_coxeter = _ambient_data(family, rank)

    max_len = max(_dot(a, a) for a in positive)
    scale = Fraction(2) / max_len

    def inner(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return scale * _dot(u, v)

    coroots = [tuple(2 * x / inner(a, a) for x in a) for a in simple]

    cartan_q = [[inner(coroots[i], simple[j]) for j in range(rank)] for i in range(rank)]
    if any(q.denominator != 1 for row in cartan_q for q in row):
        raise InvalidInputError(f"{family}{rank}: non-integral Cartan matrix")
    cartan = tuple(tuple(int(q) for q in row) for row in cartan_q)

    gram = tuple(tuple(inner(coroots[i], coroots[j]) for j in range(rank)) for i in range(rank))
    weight_gram = tuple(tuple(inner(fundamental[i], fundamental[j]) for j in range(rank)) for i in range(rank))

    rho: Vec = tuple(Fraction(0) for _ in range(dim))
    for a in positive:
        rho = _add(rho, a, Fraction(1, 2))

    dominant = [a for a in positive if all(inner(a, c) >= 0 for c in coroots)]
    theta = max(dominant, key=lambda a: _dot(a, a))
    comarks_q = [inner(w, theta) for w in fundamental]
    comarks = tuple(int(q) for q in comarks_q)

    return RootSystem(
        family=family,
        rank=rank,
        simple_roots=tuple(simple),
        positive_roots=tuple(positive),
        fundamental_weights=tuple(fundamental),
        rho=rho,
        dual_coxeter=dual_coxeter,
        gram_basic=gram,
        form_scale=scale,
        cartan=cartan,
        weight_gram=weight_gram,
        highest_root=theta,
        comarks=comarks,
    )


def parse_group(text: str) -> RootSystem:
    """'A1', 'b2', 'D4' -> RootSystem."""
    t = (text or "").strip().upper()
    if len(t) < 2 or not t[1:].isdigit():
        raise InvalidInputError(f"group {text!r} is not of the form <family><rank>, e.g. A2")
    return build(t[0], int(t[1:]))


@dataclass(frozen=True)
class FoldResult:
    vector: Tuple[Any, ...]
    sign: int
    word: Tuple[int, ...]

    def unfold(self, rs: RootSystem) -> Tuple[Any, ...]:
        """Reapply the reflections in reverse, recovering the input."""
        return rs.apply_word(self.vector, tuple(reversed(self.word)))


def weyl_fold(rs: RootSystem, v: Sequence[Any]) -> FoldResult:
    """Fold a Dynkin-label vector into the dominant chamber, tracking the sign."""
    if len(v) != rs.rank:
        raise InvalidInputError(f"vector of length {len(v)} for a rank {rs.rank} root system")
    cur = tuple(v)
    word: List[int] = []
    sign = 1
    while True:
        neg = next((i for i, c in enumerate(cur) if c < 0), None)
        if neg is None:
            break
        cur = rs.reflect(cur, neg)
        word.append(neg)
        sign = -sign
    if any(c == 0 for c in cur):
        sign = 0
    return FoldResult(vector=cur, sign=sign, word=tuple(word))


def weyl_orbit(rs: RootSystem, w: Weight | Sequence[Any]) -> List[Tuple[Any, ...]]:
    start = tuple(w.coords) if isinstance(w, Weight) else tuple(w)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(rs.rank):
            nxt = rs.reflect(cur, i)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


@lru_cache(maxsize=4096)
def signed_orbit(rs: RootSystem, labels: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Orbit of a regular weight, each element paired with sgn(w) for the w reaching it.

    Used by the alternating sums of the Weyl character formula; the orbit is
    a W-torsor, so the sign is well defined.
    """
    folded = weyl_fold(rs, labels)
    if folded.sign == 0:
        raise NotRegularError(f"weight {list(labels)} lies on a reflection wall")
    start = tuple(labels)
    signs = {start: 1}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(rs.rank):
            nxt = rs.reflect(cur, i)
            if nxt not in signs:
                signs[nxt] = -signs[cur]
                queue.append(nxt)
    return tuple(sorted(signs.items()))


def _bounded(comarks: Sequence[int], budget: int) -> Iterator[Tuple[int, ...]]:
    if not comarks:
        yield ()
        return
    head, rest = comarks[0], comarks[1:]
    for c in range(budget // head + 1):
        for tail in _bounded(rest, budget - c * head):
            yield (c,) + tail


def level_weights(rs: RootSystem, h: int) -> List[Weight]:
    """Dominant weights of level <= h, lexicographic in Dynkin labels."""
    if h < 0:
        raise InvalidInputError(f"level must be >= 0, got {h}")
    return [Weight(c) for c in _bounded(rs.comarks, h)]


def dual_weight(rs: RootSystem, w: Weight) -> Weight:
    """-w0(lambda): the highest weight of the dual representation."""
    folded = weyl_fold(rs, tuple(-c for c in w.coords))
    return Weight(tuple(int(c) for c in folded.vector))
