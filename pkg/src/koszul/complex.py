"""
Twisted T-equivariant cohomology of a torus T acting on itself, as a
finite Koszul complex.

The complex is Lambda(theta_1..theta_n) (x) Sym(u_1..u_n), truncated at
Sym degree D, with differential multiplication by
tau = sum_ij beta_ij u_i theta_j. A monomial theta_S u^a has bidegree
(|S|, |a|); d maps (e, s) to (e + 1, s + 1), so it raises the total degree
2s + e by 3. The Laurent variable is collapsed: only e mod 2 is reported.

Cohomology is read off for s <= D - 1, where both the incoming and the
outgoing differential are fully retained.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.errors import ConsistencyError, InvalidInputError
from src.lie.root_system import build
from src.verlinde import core

Bidegree = Tuple[int, int]
Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (exterior subset, Sym exponents)


def _sym_exponents(n: int, s: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of length n summing to s, lexicographically descending."""
    if n == 1:
        return [(s,)]
    out = []
    for first in range(s, -1, -1):
        out.extend((first,) + rest for rest in _sym_exponents(n - 1, s - first))
    return out


def _rank(mat: np.ndarray) -> int:
    if mat.size == 0:
        return 0
    rows = [[QQ(int(x)) for x in row] for row in mat.tolist()]
    return DomainMatrix(rows, mat.shape, QQ).rank()


def parse_beta(text: str) -> Tuple[Tuple[int, ...], ...]:
    """'2,0;0,2' -> ((2, 0), (0, 2))."""
    try:
        rows = tuple(tuple(int(x) for x in row.split(",")) for row in text.strip().split(";"))
    except ValueError:
        raise InvalidInputError(f"beta {text!r} must be integer rows separated by ';'") from None
    return rows


@dataclass(frozen=True)
class KoszulComplex:
    n: int
    beta: Tuple[Tuple[int, ...], ...]
    D: int
    invariant: bool = False  # keep only monomials fixed by -1 on t (e + s even)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInputError(f"rank n must be >= 1, got {self.n}")
        if len(self.beta) != self.n or any(len(row) != self.n for row in self.beta):
            raise InvalidInputError(f"beta must be {self.n}x{self.n}")
        if self.D < 1:
            raise InvalidInputError(f"truncation D must be >= 1, got {self.D}")

    def retained(self, e: int, s: int) -> bool:
        if not (0 <= e <= self.n and 0 <= s <= self.D):
            return False
        return not self.invariant or (e + s) % 2 == 0

    def basis(self, e: int, s: int) -> List[Monomial]:
        if not self.retained(e, s):
            return []
        return [(S, a) for S in combinations(range(self.n), e) for a in _sym_exponents(self.n, s)]

    def tau_terms(self, m: Monomial) -> Dict[Monomial, int]:
        """tau * theta_S u^a, expanded in monomials."""
        S, a = m
        out: Dict[Monomial, int] = {}
        for i in range(self.n):
            a_new = tuple(x + (1 if t == i else 0) for t, x in enumerate(a))
            for j in range(self.n):
                b = self.beta[i][j]
                if not b or j in S:
                    continue
                sign = -1 if sum(1 for t in S if t < j) % 2 else 1
                target = (tuple(sorted(S + (j,))), a_new)
                out[target] = out.get(target, 0) + sign * b
        return {t: c for t, c in out.items() if c}

    def differential(self, e: int, s: int) -> np.ndarray:
        """Matrix of d: (e, s) -> (e + 1, s + 1), rows indexed by the target basis."""
        src = self.basis(e, s)
        dst = self.basis(e + 1, s + 1)
        index = {m: i for i, m in enumerate(dst)}
        out = np.zeros((len(dst), len(src)), dtype=np.int64)
        if not dst:
            return out
        for col, m in enumerate(src):
            for target, c in self.tau_terms(m).items():
                out[index[target], col] += c
        return out

    @cached_property
    def _ranks(self) -> Dict[Bidegree, int]:
        return {
            (e, s): _rank(self.differential(e, s))
            for e in range(self.n + 1)
            for s in range(self.D)
        }

    def d_squared_zero(self) -> bool:
        for e in range(self.n - 1):
            for s in range(self.D - 1):
                if (self.differential(e + 1, s + 1) @ self.differential(e, s)).any():
                    return False
        return True

    def cohomology(self, e: int, s: int) -> int:
        if not (0 <= s <= self.D - 1):
            raise InvalidInputError(f"Sym degree {s} is outside the reported range 0..{self.D - 1}")
        dim = len(self.basis(e, s))
        out_rank = self._ranks.get((e, s), 0)
        in_rank = self._ranks.get((e - 1, s - 1), 0) if e >= 1 and s >= 1 else 0
        return dim - out_rank - in_rank

    def cohomology_table(self) -> Dict[Bidegree, int]:
        return {(e, s): self.cohomology(e, s) for e in range(self.n + 1) for s in range(self.D)}


@dataclass(frozen=True)
class TwistedDims:
    even: int
    odd: int
    by_bidegree: Dict[Bidegree, int]
    stable: bool
    d_squared_zero: bool

    @property
    def total(self) -> int:
        return self.even + self.odd


def _by_parity(table: Dict[Bidegree, int]) -> Tuple[int, int]:
    even = sum(v for (e, _), v in table.items() if e % 2 == 0)
    odd = sum(v for (e, _), v in table.items() if e % 2 == 1)
    return even, odd


def _normalise_beta(n: int, beta: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in beta)


def twisted_cohomology_dims(n: int, beta: Sequence[Sequence[int]], D: int) -> TwistedDims:
    """Cohomology by degree mod 2; stable when truncating at D and D + 1 agree."""
    if D < n + 2:
        raise InvalidInputError(f"truncation D must be >= n + 2 = {n + 2}, got {D}")
    b = _normalise_beta(n, beta)
    cx = KoszulComplex(n, b, D)
    wider = KoszulComplex(n, b, D + 1)
    table = cx.cohomology_table()
    even, odd = _by_parity(table)
    stable = _by_parity(wider.cohomology_table()) == (even, odd)
    return TwistedDims(
        even=even,
        odd=odd,
        by_bidegree=table,
        stable=stable,
        d_squared_zero=cx.d_squared_zero() and wider.d_squared_zero(),
    )


def su2_invariant_stalk(k: int, D: int = 6) -> int:
    """Cohomology of C[[u^2, u theta]] with differential 2k u theta, truncated at D."""
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    cx = KoszulComplex(1, ((2 * k,),), D, invariant=True)
    return sum(cx.cohomology_table().values())


# A-degree of the generators: theta has degree 1, u has degree 2, and the
# periodicity element beta (collapsed to the mod-2 grading) has degree -2.
THETA_DEGREE = 1
U_DEGREE = 2
BETA_DEGREE = -2

Block = Tuple[Bidegree, Bidegree]


def a_degree(e: int, s: int) -> int:
    return THETA_DEGREE * e + U_DEGREE * s


def filtration_components(cx: KoszulComplex) -> Dict[int, Dict[Block, np.ndarray]]:
    """The twisted differential split by how far it raises the A-degree.

    Returns jump -> {(source bidegree, target bidegree): matrix}, for sources
    with s <= D - 1 and nonzero blocks only.
    """
    out: Dict[int, Dict[Block, np.ndarray]] = {}
    for e in range(cx.n + 1):
        for s in range(cx.D):
            src = cx.basis(e, s)
            for col, m in enumerate(src):
                for (S, a), c in cx.tau_terms(m).items():
                    tgt = (len(S), sum(a))
                    if not cx.retained(*tgt):
                        continue
                    jump = a_degree(*tgt) - a_degree(e, s)
                    blocks = out.setdefault(jump, {})
                    key = ((e, s), tgt)
                    if key not in blocks:
                        blocks[key] = np.zeros((len(cx.basis(*tgt)), len(src)), dtype=np.int64)
                    row = cx.basis(*tgt).index((S, a))
                    blocks[key][row, col] += c
    return {
        r: {k: v for k, v in blocks.items() if v.any()}
        for r, blocks in sorted(out.items())
        if any(v.any() for v in blocks.values())
    }


def _page_homology(space: Dict[Bidegree, int], blocks: Dict[Block, np.ndarray]) -> Dict[Bidegree, int]:
    """Homology of one differential component on a page whose lower differentials vanish."""
    out = {}
    for b, dim in space.items():
        outgoing = [m for (src, _), m in sorted(blocks.items()) if src == b]
        incoming = [m for (_, tgt), m in sorted(blocks.items()) if tgt == b]
        out_rank = _rank(np.vstack(outgoing)) if outgoing else 0
        in_rank = _rank(np.hstack(incoming)) if incoming else 0
        out[b] = dim - out_rank - in_rank
    return out


def _odd_rows(cx: KoszulComplex) -> Dict[int, int]:
    """E2 generators theta_S u^a beta^j (one beta period) with odd complementary degree q."""
    rows: Dict[int, int] = {}
    for e in range(cx.n + 1):
        for s in range(cx.D):
            p = a_degree(e, s)
            for j in (0, 1):
                q = j * BETA_DEGREE
                if q % 2:
                    rows[p] = rows.get(p, 0) + len(cx.basis(e, s))
                else:
                    rows.setdefault(p, 0)
    return dict(sorted(rows.items()))


@dataclass(frozen=True)
class PageReport:
    e2: Dict[int, int]
    e3: Dict[int, int]
    e4: Dict[int, int]
    e_inf: Dict[str, int]
    odd_rows: Dict[int, int]
    jumps: Tuple[int, ...]
    delta2_zero: bool
    degenerates_at_e4: Optional[bool]  # None when the truncation has not stabilised

    def to_json(self) -> Dict[str, object]:
        return {
            "E2": {str(p): v for p, v in self.e2.items()},
            "E3": {str(p): v for p, v in self.e3.items()},
            "E4": {str(p): v for p, v in self.e4.items()},
            "E_inf": dict(self.e_inf),
            "odd_rows": {str(p): v for p, v in self.odd_rows.items()},
            "differential_jumps": list(self.jumps),
            "delta2_zero": self.delta2_zero,
            "degenerates_at_E4": self.degenerates_at_e4,
        }


def _by_total_degree(table: Dict[Bidegree, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for (e, s), v in table.items():
        p = a_degree(e, s)
        out[p] = out.get(p, 0) + v
    return {p: v for p, v in sorted(out.items()) if v}


def _parity(pages: Dict[int, int]) -> Tuple[int, int]:
    return (
        sum(v for p, v in pages.items() if p % 2 == 0),
        sum(v for p, v in pages.items() if p % 2 == 1),
    )


def spectral_sequence_trace(n: int, beta: Sequence[Sequence[int]], D: int) -> PageReport:
    """Page-by-page dimensions of the A-degree filtration, indexed by p = e + 2s.

    E2 is H*(T) (x) H*(BT), the model having no internal differential.
    E_{r+1} is the homology of the jump-r component of the twisted
    differential; this needs delta_1 = delta_2 = 0, which is checked.
    Degeneration at E4 compares E4 with the D + 1 truncation and is left
    undecided while the truncation is unstable.
    """
    if D < n + 2:
        raise InvalidInputError(f"truncation D must be >= n + 2 = {n + 2}, got {D}")
    b = _normalise_beta(n, beta)
    cx = KoszulComplex(n, b, D)
    comps = filtration_components(cx)
    if comps.get(1):
        raise ConsistencyError("a nonzero delta_1 component: E2 is not H*(T) (x) H*(BT)")

    e1 = {(e, s): len(cx.basis(e, s)) for e in range(n + 1) for s in range(D)}
    e2 = e1
    e3 = _page_homology(e2, comps.get(2, {}))
    delta2_zero = not comps.get(2)
    if not delta2_zero:
        raise ConsistencyError("a nonzero delta_2 component: E4 would need the E3 subquotient")
    e4 = _page_homology(e3, comps.get(3, {}))

    dims = twisted_cohomology_dims(n, b, D)
    wider = KoszulComplex(n, b, D + 1).cohomology_table()
    e4_totals = _by_total_degree(e4)
    degenerates = _parity(e4_totals) == _by_parity(wider) if dims.stable else None
    return PageReport(
        e2=_by_total_degree(e2),
        e3=_by_total_degree(e3),
        e4=e4_totals,
        e_inf={"even": dims.even, "odd": dims.odd},
        odd_rows=_odd_rows(cx),
        jumps=tuple(comps),
        delta2_zero=delta2_zero,
        degenerates_at_e4=degenerates,
    )


@dataclass(frozen=True)
class Su2Report:
    h: int
    tau: int
    support_count: int
    stalk_odd_dims: List[int]
    stalk_even_dims: List[int]
    invariant_stalk_dims: Tuple[int, int]  # at mu = +1 and mu = -1

    @property
    def k0_rank(self) -> int:
        return sum(self.stalk_even_dims) + sum(self.invariant_stalk_dims)

    @property
    def k1_rank(self) -> int:
        return sum(self.stalk_odd_dims)


def su2_support_report(h: int, D: int = 4) -> Su2Report:
    """SU(2) at level h: regular points with their stalks, and the two central stalks."""
    ld = core.level_data(build("A", 1), h)
    tau = ld.shift
    points = core.regular_points(ld)
    stalk = twisted_cohomology_dims(1, ((2 * tau,),), max(D, 3))
    central = su2_invariant_stalk(tau, D=max(D, 3))
    return Su2Report(
        h=h,
        tau=tau,
        support_count=len(points),
        stalk_odd_dims=[stalk.odd for _ in points],
        stalk_even_dims=[stalk.even for _ in points],
        invariant_stalk_dims=(central, central),
    )
