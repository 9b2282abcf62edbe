"""
Twisted K-theory of SO(3) acting on itself by conjugation.

A twisting is a triple (eps1, eps2, k): eps1 the H^1 grading, eps2 the
torsion part of H^3, k > 0 the free part. Labels [n] denote the images of
the n-dimensional irreducible SU(2) representations; odd n span ^+R (the
SO(3) representations), even n span ^-R.

The quotient ^{eps1,eps2}R(k) kills [2k] and identifies [p] ~ eps1 [2k - p]
(and [k] = 0 when eps1 = -). The product is the SU(2) Clebsch-Gordan rule
followed by reduction to a normal form in {1, ..., k}.

For the starred type (-,-,odd) the Verlinde ring has the graded basis
[1], [3], ..., [k-2], [k]+, [k]- (odd labels only); its products are the
generator-and-relation data below, not a convolution computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import numpy as np

from src.arith.cyclotomic import CyclotomicNumber, root_of_unity
from src.errors import InvalidInputError

SIGNS = (1, -1)


def sign_char(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class TwistingType:
    eps1: int
    eps2: int
    k: int

    def __post_init__(self) -> None:
        if self.eps1 not in SIGNS or self.eps2 not in SIGNS:
            raise InvalidInputError(f"signs must be +1 or -1, got ({self.eps1}, {self.eps2})")
        if self.k < 1:
            raise InvalidInputError(f"k must be a positive integer, got {self.k}")

    @classmethod
    def parse(cls, text: str) -> "TwistingType":
        """'(-,-,3)' or '-,-,3'."""
        parts = [p.strip() for p in text.strip().strip("()").split(",")]
        if len(parts) != 3 or parts[0] not in ("+", "-") or parts[1] not in ("+", "-"):
            raise InvalidInputError(f"twisting {text!r} is not of the form (+|-,+|-,k)")
        try:
            k = int(parts[2])
        except ValueError:
            raise InvalidInputError(f"twisting {text!r}: k must be an integer") from None
        return cls(1 if parts[0] == "+" else -1, 1 if parts[1] == "+" else -1, k)

    @property
    def even(self) -> bool:
        return self.k % 2 == 0

    @property
    def label(self) -> str:
        return f"({sign_char(self.eps1)},{sign_char(self.eps2)},{self.k})"

    def is_transgressed(self) -> bool:
        """Transgressed K-theory twistings: (+,+,even) and (-,+,odd)."""
        return (self.eps1, self.eps2, self.even) in {(1, 1, True), (-1, 1, False)}

    def has_pontryagin_product(self) -> bool:
        """The starred types (+,-,even) and (-,-,odd)."""
        return (self.eps1, self.eps2, self.even) in {(1, -1, True), (-1, -1, False)}

    def __str__(self) -> str:
        return self.label


def twistings_for(k: int) -> List[TwistingType]:
    return [TwistingType(e1, e2, k) for e2 in SIGNS for e1 in SIGNS]


# ---- quotient rings R(k) ----------------------------------------------------


def normal_form(m: int, k: int, eps1: int) -> Tuple[int, int]:
    """[m] == sign * [label] in ^{eps1}R(k); label 0 means the class vanishes."""
    r = m % (4 * k)
    if r == 0 or r == 2 * k:
        return 0, 0
    sign = 1
    if r > 2 * k:
        # [m] = [m - 4k] = -[4k - m]
        r = 4 * k - r
        sign = -1
    if r > k:
        r = 2 * k - r
        sign *= eps1
    if r == k and eps1 < 0:
        return 0, 0
    return sign, r


def cg_labels(p: int, q: int) -> List[int]:
    """[p].[q] = [|p-q|+1] + [|p-q|+3] + ... + [p+q-1]."""
    return list(range(abs(p - q) + 1, p + q, 2))


def _collect(terms: Iterable[Tuple[int, int]]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for sign, label in terms:
        if sign:
            out[label] = out.get(label, 0) + sign
    return {lab: c for lab, c in sorted(out.items()) if c}


@dataclass(frozen=True)
class QuotientRingRk:
    eps1: int
    eps2: int
    k: int
    basis: Tuple[int, ...]
    acting: Tuple[int, ...]
    mult: Dict[Tuple[int, int], Dict[int, int]] = field(compare=False)

    @property
    def label(self) -> str:
        return f"^{{{sign_char(self.eps1)}{sign_char(self.eps2)}}}R({self.k})"

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_algebra(self) -> bool:
        """Odd labels (eps2 = +) form a ring; even labels (eps2 = -) only a module over it."""
        return self.eps2 > 0

    def reduce(self, m: int) -> Dict[int, int]:
        return _collect([normal_form(m, self.k, self.eps1)])

    def multiply(self, p: int, q: int) -> Dict[int, int]:
        """Product of the classes of [p] and [q], any p, q >= 1, in normal form."""
        if p < 1 or q < 1:
            raise InvalidInputError(f"labels must be >= 1, got [{p}], [{q}]")
        return _collect(normal_form(n, self.k, self.eps1) for n in cg_labels(p, q))

    def representative_independent(self) -> bool:
        """Products depend only on the class: [p].[q] == s [r].[q] whenever [p] == s [r]."""
        for p in range(1, 2 * self.k):
            sign, r = normal_form(p, self.k, self.eps1)
            for q in self.basis:
                lhs = self.multiply(p, q)
                rhs = {} if sign == 0 else {lab: sign * c for lab, c in self.multiply(r, q).items()}
                if lhs != rhs:
                    return False
        return True


def rk_ring(eps1: int, eps2: int, k: int) -> QuotientRingRk:
    TwistingType(eps1, eps2, k)  # validation
    parity = 1 if eps2 > 0 else 0
    basis = tuple(n for n in range(1, k + 1) if n % 2 == parity and not (n == k and eps1 < 0))
    acting = tuple(n for n in range(1, k + 1) if n % 2 == 1)
    ring = QuotientRingRk(eps1=eps1, eps2=eps2, k=k, basis=basis, acting=acting, mult={})
    for p in acting:
        for q in basis:
            ring.mult[(p, q)] = ring.multiply(p, q)
    return ring


# ---- K-group table -----------------------------------------------------------


@dataclass(frozen=True)
class KTableEntry:
    twisting: TwistingType
    k0: str
    k1: str
    k0_rank: int
    k1_rank: int
    starred: bool


# (eps1, eps2) -> (K0 is Z, K1 carries an extra Z summand), per parity of k
_K_TABLE = {
    True: {(1, 1): (True, False), (-1, 1): (False, True), (1, -1): (False, False), (-1, -1): (False, False)},
    False: {(1, 1): (False, False), (-1, 1): (False, False), (1, -1): (True, False), (-1, -1): (False, True)},
}


def k_table(t: TwistingType) -> KTableEntry:
    k0_is_z, extra_z = _K_TABLE[t.even][(t.eps1, t.eps2)]
    ring = rk_ring(-t.eps1, -t.eps2, t.k)
    k1 = ring.label + (" ⊕ Z" if extra_z else "")
    return KTableEntry(
        twisting=t,
        k0="Z" if k0_is_z else "0",
        k1=k1,
        k0_rank=1 if k0_is_z else 0,
        k1_rank=ring.rank + (1 if extra_z else 0),
        starred=t.has_pontryagin_product(),
    )


# ---- localisation --------------------------------------------------------------


@dataclass(frozen=True)
class SupportLine:
    position: Fraction  # mu = exp(2 pi i * position)
    degree: int
    source: str

    @property
    def mu(self) -> CyclotomicNumber:
        return root_of_unity(self.position.denominator, self.position.numerator)

    def __str__(self) -> str:
        return f"mu=exp(2πi·{self.position}) K^{self.degree} [{self.source}]"


def so3_localisation(t: TwistingType) -> List[SupportLine]:
    """Support of the K-sheaves on the torus parameter mu, with the K-degree of each stalk.

    Interior stalks sit at the k-th roots of eps1 in the upper half plane and
    contribute to K^1; mu = -1 contributes according to the twisting type;
    mu = 1 never contributes.
    """
    k = t.k
    lines: List[SupportLine] = []
    if t.eps1 > 0:
        positions = [Fraction(j, k) for j in range(1, k)]
    else:
        positions = [Fraction(2 * j + 1, 2 * k) for j in range(k)]
    for pos in positions:
        if 0 < pos < Fraction(1, 2):
            lines.append(SupportLine(position=pos, degree=1, source="interior"))

    kind = (t.eps1, t.eps2, t.even)
    half = Fraction(1, 2)
    if kind in {(1, -1, True), (-1, -1, False)}:
        lines.append(SupportLine(position=half, degree=1, source="torus"))
    if kind in {(1, 1, True), (1, -1, False)}:
        lines.append(SupportLine(position=half, degree=0, source="odd component"))
    if kind in {(-1, 1, True), (-1, -1, False)}:
        lines.append(SupportLine(position=half, degree=1, source="odd component"))
    return lines


@dataclass(frozen=True)
class RankCheck:
    twisting: TwistingType
    table_k0: int
    table_k1: int
    support_k0: int
    support_k1: int

    @property
    def ok(self) -> bool:
        return (self.table_k0, self.table_k1) == (self.support_k0, self.support_k1)


def rank_check(t: TwistingType) -> RankCheck:
    entry = k_table(t)
    lines = so3_localisation(t)
    return RankCheck(
        twisting=t,
        table_k0=entry.k0_rank,
        table_k1=entry.k1_rank,
        support_k0=sum(1 for ln in lines if ln.degree == 0),
        support_k1=sum(1 for ln in lines if ln.degree == 1),
    )


# ---- graded Verlinde ring for (-,-,odd) ---------------------------------------------


def _i_power_sign(e: int) -> int:
    """i^e for even e, as +-1."""
    if e % 2:
        raise InvalidInputError(f"i^{e} is not real")
    return 1 if e % 4 == 0 else -1


@dataclass(frozen=True, eq=False)
class GradedVerlindeRing:
    k: int
    basis: Tuple[str, ...]
    mult: np.ndarray

    @property
    def size(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise InvalidInputError(f"{name} is not a basis element of the k={self.k} graded ring") from None

    def product(self, x: str, y: str) -> Dict[str, int]:
        row = self.mult[self.index(x), self.index(y)]
        return {self.basis[c]: int(n) for c, n in enumerate(row) if n}

    def vector(self, terms: Dict[str, int]) -> np.ndarray:
        v = np.zeros(self.size, dtype=np.int64)
        for name, c in terms.items():
            v[self.index(name)] += c
        return v

    def multiply_vectors(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("a,b,abc->c", u, v, self.mult)

    def axiom_violations(self) -> List[str]:
        N = self.mult
        n = self.size
        problems = []
        if (N < 0).any():
            problems.append("negative structure constant")
        if not np.array_equal(N, N.transpose(1, 0, 2)):
            problems.append("not commutative")
        if not np.array_equal(N[self.index("[1]")], np.eye(n, dtype=N.dtype)):
            problems.append("[1] is not a unit")
        lhs = np.einsum("abe,ecd->abcd", N, N)
        rhs = np.einsum("bce,aed->abcd", N, N)
        if not np.array_equal(lhs, rhs):
            problems.append("associativity fails")
        return problems

    def include(self, terms: Dict[int, int]) -> np.ndarray:
        """Image of an element of the unsplit ^{++}R(k), with [k] -> [k]+ + [k]-.

        This is the ring map between the two; collapsing [k]+- back to [k] is
        additive only.
        """
        v = np.zeros(self.size, dtype=np.int64)
        for lab, c in terms.items():
            if lab == self.k:
                v[self.index(f"[{lab}]+")] += c
                v[self.index(f"[{lab}]-")] += c
            else:
                v[self.index(f"[{lab}]")] += c
        return v

    def square_sum_identity_holds(self) -> bool:
        """[k]+^2 + [k]+[k]- == [1] + [3] + ... + [k-2] + [k]_{i^(k-1)}."""
        plus, minus = self.vector({f"[{self.k}]+": 1}), self.vector({f"[{self.k}]-": 1})
        lhs = self.multiply_vectors(plus, plus) + self.multiply_vectors(plus, minus)
        rhs = {f"[{n}]": 1 for n in range(1, self.k - 1, 2)}
        rhs[_split_name(self.k, _i_power_sign(self.k - 1))] = 1
        return np.array_equal(lhs, self.vector(rhs))


def _split_name(k: int, sign: int) -> str:
    return f"[{k}]+" if sign > 0 else f"[{k}]-"


def graded_ring(k: int) -> GradedVerlindeRing:
    if k % 2 == 0:
        raise InvalidInputError(f"the graded basis exists for odd k only (type (-,-,odd)); got k={k}")
    if k < 3:
        raise InvalidInputError(f"graded ring needs k >= 3, got {k}")

    odd = list(range(1, k - 1, 2))
    names = tuple([f"[{n}]" for n in odd] + [f"[{k}]+", f"[{k}]-"])
    idx = {name: i for i, name in enumerate(names)}
    n = len(names)
    mult = np.zeros((n, n, n), dtype=np.int64)
    unsplit = rk_ring(1, 1, k)

    def add(a: str, b: str, terms: Dict[str, int]) -> None:
        for name, c in terms.items():
            mult[idx[a], idx[b], idx[name]] += c
            if a != b:
                mult[idx[b], idx[a], idx[name]] += c

    def split(terms: Dict[int, int]) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for lab, c in terms.items():
            if lab == k:
                for name in (f"[{k}]+", f"[{k}]-"):
                    out[name] = out.get(name, 0) + c
            else:
                out[f"[{lab}]"] = out.get(f"[{lab}]", 0) + c
        return out

    for i, p in enumerate(odd):
        for q in odd[i:]:
            add(f"[{p}]", f"[{q}]", split(unsplit.multiply(p, q)))
        for s in (1, -1):
            terms = {f"[{m}]": 1 for m in range(k - p + 1, k - 1, 2)}
            terms[_split_name(k, s * _i_power_sign(p - 1))] = 1
            add(f"[{p}]", _split_name(k, s), terms)

    lead = _i_power_sign(k - 1)
    same = {f"[{k - 4 * p}]": 1 for p in range(1, k) if 4 * p < k}
    plus_sq = dict(same)
    plus_sq[_split_name(k, lead)] = plus_sq.get(_split_name(k, lead), 0) + 1
    minus_sq = dict(same)
    minus_sq[_split_name(k, -lead)] = minus_sq.get(_split_name(k, -lead), 0) + 1
    mixed = {f"[{k - 4 * p - 2}]": 1 for p in range(0, k) if 4 * p + 2 < k}

    add(f"[{k}]+", f"[{k}]+", plus_sq)
    add(f"[{k}]-", f"[{k}]-", minus_sq)
    add(f"[{k}]+", f"[{k}]-", mixed)

    return GradedVerlindeRing(k=k, basis=names, mult=mult)


def graded_rank_report(k: int) -> Dict[str, int]:
    """Ranks of the same group read three ways, reported side by side.

    naive_label_count reads [1], ..., [k-2] as every label; graded_basis
    reads it over odd labels; k_group_rank is rank(^{++}R(k)) + 1.
    """
    ring = graded_ring(k)
    return {
        "k": k,
        "naive_label_count": (k - 2) + 2,
        "graded_basis": ring.size,
        "k_group_rank": k_table(TwistingType(-1, -1, k)).k1_rank,
    }


def why_absent(k: int, label: int) -> str:
    """Why [label] is (or is not) a basis element of the (-,-,odd) Verlinde ring.

    'parity' when it is even-dimensional (in ^-R), 'relation' when the R(k)
    relations send it to another label or to zero, 'present' otherwise.
    """
    if label % 2 == 0:
        return "parity"
    sign, r = normal_form(label, k, 1)
    if r != label or sign != 1:
        return "relation"
    return "present"
