"""
Verlinde rings from the regular points of the finite group F.

For a simply connected simple group at level h the twisting is the shifted
level h + c. Its support F^reg/W is parametrised by the level-h dominant
weights through xi = (lambda + rho)/(h + c), taken in Dynkin coordinates
(the coweight space is identified with the weight space by the basic form).

All values live in one field Q(zeta_M), M = 2 * L * (h + c), with L the
least common denominator of the basic inner products of fundamental
weights, so every exponent M * <mu, xi> is an integer.

Only Delta(f)^2 = prod_{alpha > 0} (2 - zeta^e - zeta^-e) is ever used; the
phase of the spinorial denominator never enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational as SymRational

from src.arith.cyclotomic import CyclotomicNumber, csum
from src.errors import ConsistencyError, InvalidInputError, NotRegularError
from src.lie.root_system import RootSystem, Vec, Weight, level_weights, signed_orbit
from src.verlinde.fusion import FusionRing

PointMap = Mapping["RegularPoint", CyclotomicNumber]


@dataclass(frozen=True)
class LevelData:
    rs: RootSystem
    h: int
    shift: int
    conductor: int

    @property
    def group(self) -> str:
        return self.rs.name


def level_data(rs: RootSystem, h: int) -> LevelData:
    if h < 0:
        raise InvalidInputError(f"level must be >= 0, got {h}")
    shift = h + rs.dual_coxeter
    lcd = reduce(lambda a, b: a * b // math.gcd(a, b), (q.denominator for row in rs.weight_gram for q in row), 1)
    return LevelData(rs=rs, h=h, shift=shift, conductor=2 * lcd * shift)


@dataclass(frozen=True)
class RegularPoint:
    """f = exp(2 pi i xi) in F^reg/W; xi in Dynkin coordinates."""

    label: Weight
    xi: Vec

    def __str__(self) -> str:
        return str(self.label)


def _root_pairings(ld: LevelData, xi: Sequence[Fraction]) -> List[Fraction]:
    return [ld.rs.pairing(a, xi) for a in ld.rs.positive_root_labels]


def _exponent(ld: LevelData, mu: Sequence[int], xi: Sequence[Fraction]) -> int:
    q = ld.conductor * ld.rs.pairing(mu, xi)
    if q.denominator != 1:
        raise InvalidInputError(f"coweight {[str(x) for x in xi]} is not a point of F at level {ld.h}")
    return int(q)


def regular_points(ld: LevelData) -> List[RegularPoint]:
    rho = ld.rs.rho_labels
    points = []
    for w in level_weights(ld.rs, ld.h):
        xi = tuple(Fraction(c, ld.shift) for c in w.shifted(rho))
        points.append(RegularPoint(label=w, xi=xi))
    return points


def point_for(ld: LevelData, w: Weight) -> RegularPoint:
    if not w.is_dominant() or ld.rs.level(w) > ld.h:
        raise InvalidInputError(f"{w} is not a dominant weight of level <= {ld.h}")
    xi = tuple(Fraction(c, ld.shift) for c in w.shifted(ld.rs.rho_labels))
    return RegularPoint(label=w, xi=xi)


def f_order(ld: LevelData) -> int:
    """|F| = det((h + c) * gram_basic) on the coroot lattice."""
    scaled = Matrix(
        [[SymRational(ld.shift * q.numerator, q.denominator) for q in row] for row in ld.rs.gram_basic]
    )
    det = scaled.det()
    return int(det)


def _alternating_sum(ld: LevelData, labels: Tuple[int, ...], xi: Vec) -> CyclotomicNumber:
    counts: Dict[int, int] = {}
    for mu, sign in signed_orbit(ld.rs, labels):
        e = _exponent(ld, mu, xi) % ld.conductor
        counts[e] = counts.get(e, 0) + sign
    return CyclotomicNumber.from_exponents(ld.conductor, counts)


def numerator_at(ld: LevelData, v: Weight, xi: Sequence[Fraction]) -> CyclotomicNumber:
    """q = 1 Kac numerator sum_w sgn(w) zeta^(M <w(v + rho), xi>) at any point of F."""
    return _alternating_sum(ld, v.shifted(ld.rs.rho_labels), tuple(Fraction(x) for x in xi))


def _check_regular(ld: LevelData, p: RegularPoint) -> None:
    for q in _root_pairings(ld, p.xi):
        if q.denominator == 1:
            raise NotRegularError(f"Delta vanishes at {p}: point not regular")


@lru_cache(maxsize=1024)
def weyl_denominator_sq(ld: LevelData, p: RegularPoint) -> CyclotomicNumber:
    _check_regular(ld, p)
    one = CyclotomicNumber.one(ld.conductor)
    factors = []
    for q in _root_pairings(ld, p.xi):
        e = ld.conductor * q
        if e.denominator != 1:
            raise InvalidInputError(f"{p} is not a point of F at level {ld.h}")
        e = int(e)
        factors.append(CyclotomicNumber.from_exponents(ld.conductor, {0: 2, e: -1, -e: -1}))
    return reduce(lambda a, b: a * b, factors, one)


@lru_cache(maxsize=1024)
def _inverse_delta_sq(ld: LevelData, p: RegularPoint) -> CyclotomicNumber:
    return weyl_denominator_sq(ld, p).inverse()


@lru_cache(maxsize=1024)
def _inverse_weyl_denominator(ld: LevelData, p: RegularPoint) -> CyclotomicNumber:
    _check_regular(ld, p)
    den = _alternating_sum(ld, ld.rs.rho_labels, p.xi)
    if den.is_zero():
        raise NotRegularError(f"Weyl denominator vanishes at {p}: point not regular")
    return den.inverse()


def _require_dominant(ld: LevelData, v: Weight) -> None:
    if len(v.coords) != ld.rs.rank:
        raise InvalidInputError(f"weight {v} has {len(v.coords)} labels, {ld.group} needs {ld.rs.rank}")
    if not v.is_dominant():
        raise InvalidInputError(f"weight {v} is not dominant")


def _require_level(ld: LevelData, v: Weight) -> None:
    _require_dominant(ld, v)
    if ld.rs.level(v) > ld.h:
        raise InvalidInputError(f"weight {v} has level {ld.rs.level(v)} > {ld.h}")


@lru_cache(maxsize=4096)
def character_at(ld: LevelData, v: Weight, p: RegularPoint) -> CyclotomicNumber:
    """Weyl character quotient chi_v(f); exact division in Q(zeta_M)."""
    _require_dominant(ld, v)
    return numerator_at(ld, v, p.xi) * _inverse_weyl_denominator(ld, p)


def kac_numerator_support(ld: LevelData, v: Weight) -> Dict[RegularPoint, CyclotomicNumber]:
    """Coefficients of the delta-functions on F^reg/W carried by the q = 1 numerator of v."""
    _require_level(ld, v)
    return {p: numerator_at(ld, v, p.xi) for p in regular_points(ld)}


def _to_integer(x: CyclotomicNumber, what: str) -> int:
    if not x.is_rational():
        raise ConsistencyError(f"{what} is not rational: {x}")
    q = x.as_rational()
    if q.denominator != 1:
        raise ConsistencyError(f"{what} is not integral: {q}")
    return int(q)


def _delta_power(ld: LevelData, p: RegularPoint, e: int) -> CyclotomicNumber:
    """(Delta^2)^e."""
    if e >= 0:
        return weyl_denominator_sq(ld, p) ** e
    return _inverse_delta_sq(ld, p) ** (-e)


def _scale(ld: LevelData, exp: int) -> Fraction:
    return Fraction(f_order(ld)) ** exp


def verlinde_dimension(ld: LevelData, genus: int) -> int:
    if genus < 1:
        raise InvalidInputError(f"genus must be >= 1, got {genus}")
    terms = [_delta_power(ld, p, 1 - genus) for p in regular_points(ld)]
    total = csum(terms, ld.conductor) * _scale(ld, genus - 1)
    return _to_integer(total, f"Verlinde dimension {ld.group} h={ld.h} g={genus}")


def multiplicity(ld: LevelData, v: Weight, genus: int) -> int:
    if genus < 1:
        raise InvalidInputError(f"genus must be >= 1, got {genus}")
    _require_level(ld, v)
    terms = [_delta_power(ld, p, 1 - genus) * character_at(ld, v, p) for p in regular_points(ld)]
    total = csum(terms, ld.conductor) * _scale(ld, genus - 1)
    return _to_integer(total, f"multiplicity of {v} {ld.group} h={ld.h} g={genus}")


def inner_product(ld: LevelData, phi: PointMap, psi: PointMap) -> CyclotomicNumber:
    """|F|^-1 sum_f Delta(f)^2 conj(phi(f)) psi(f)."""
    terms = []
    for p in regular_points(ld):
        if p not in phi or p not in psi:
            raise InvalidInputError(f"function is not defined at the regular point {p}")
        terms.append(weyl_denominator_sq(ld, p) * phi[p].conjugate() * psi[p])
    return csum(terms, ld.conductor) * _scale(ld, -1)


def handle_element(ld: LevelData, genus: int) -> Dict[RegularPoint, CyclotomicNumber]:
    """f -> |F|^g * Delta(f)^(-2g)."""
    if genus < 0:
        raise InvalidInputError(f"genus must be >= 0, got {genus}")
    return {p: _delta_power(ld, p, -genus) * _scale(ld, genus) for p in regular_points(ld)}


def character_map(ld: LevelData, v: Weight) -> Dict[RegularPoint, CyclotomicNumber]:
    return {p: character_at(ld, v, p) for p in regular_points(ld)}


def character_table(ld: LevelData) -> Dict[Weight, List[CyclotomicNumber]]:
    """chi_a(f) for a in the level-h basis, f in regular_points order."""
    points = regular_points(ld)
    return {w: [character_at(ld, w, p) for p in points] for w in level_weights(ld.rs, ld.h)}


def quantum_dimension(ld: LevelData, v: Weight) -> CyclotomicNumber:
    """chi_v at the point rho/(h + c)."""
    return character_at(ld, v, point_for(ld, Weight.zero(ld.rs.rank)))


def fusion_ring(ld: LevelData) -> FusionRing:
    """N_ab^c = <chi_c, chi_a chi_b>, via the inner product on F^reg/W."""
    basis = level_weights(ld.rs, ld.h)
    points = regular_points(ld)
    n = len(basis)
    weight = [weyl_denominator_sq(ld, p) * _scale(ld, -1) for p in points]
    chars = [[character_at(ld, w, p) for p in points] for w in basis]
    dual_weighted = [[weight[f] * chars[c][f].conjugate() for f in range(len(points))] for c in range(n)]

    constants = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            prod = [chars[a][f] * chars[b][f] for f in range(len(points))]
            for c in range(n):
                total = csum((dual_weighted[c][f] * prod[f] for f in range(len(points))), ld.conductor)
                value = _to_integer(total, f"N[{basis[a]}][{basis[b]}][{basis[c]}]")
                if value < 0:
                    raise ConsistencyError(f"negative structure constant N[{basis[a]}][{basis[b]}][{basis[c]}] = {value}")
                constants[a, b, c] = value
                constants[b, a, c] = value

    return FusionRing(
        family=ld.rs.family,
        rank=ld.rs.rank,
        level=ld.h,
        basis=tuple(basis),
        constants=constants,
        unit=basis.index(Weight.zero(ld.rs.rank)),
    )


def diagonalisation_defects(ld: LevelData, ring: FusionRing) -> List[Tuple[Weight, Weight, Weight]]:
    """(a, b, f) where sum_c N_ab^c chi_c(f) != chi_a(f) chi_b(f); empty when (chi_b(f))_b diagonalises every N_a."""
    points = regular_points(ld)
    chars = [[character_at(ld, w, p) for p in points] for w in ring.basis]
    bad = []
    for f, p in enumerate(points):
        for a in range(ring.size):
            for b in range(ring.size):
                lhs = csum(
                    (chars[c][f] * int(ring.constants[a, b, c]) for c in range(ring.size) if ring.constants[a, b, c]),
                    ld.conductor,
                )
                if lhs != chars[a][f] * chars[b][f]:
                    bad.append((ring.basis[a], ring.basis[b], p.label))
    return bad


def orthonormality_defects(ld: LevelData) -> List[Tuple[Weight, Weight]]:
    basis = level_weights(ld.rs, ld.h)
    maps = {w: character_map(ld, w) for w in basis}
    bad = []
    for a in basis:
        for b in basis:
            expected = 1 if a == b else 0
            if inner_product(ld, maps[a], maps[b]) != expected:
                bad.append((a, b))
    return bad
