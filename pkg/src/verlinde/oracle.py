"""
Independent, slower routes to the numbers verlinde.core produces.

Nothing here is used by the core; tests and `verify` compare the two.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational as SymRational

from src.errors import ComputationRefused, ConsistencyError, InvalidInputError, VerlindeError
from src.lie.root_system import Vec, Weight
from src.verlinde import core
from src.verlinde.fusion import FusionRing

MAX_SCAN_RANK = 3


@dataclass(frozen=True)
class LatticeScanResult:
    points: List[Vec]  # coroot coordinates in [0, 1)^rank
    regular_count: int
    orbit_count: int
    orbit_labels: List[Weight] = field(default_factory=list)


def _frac_part(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def _to_fraction(x: object) -> Fraction:
    r = SymRational(x)
    return Fraction(int(r.p), int(r.q))


def _fold_to_alcove(ld: core.LevelData, d: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
    """Fold a coweight (Dynkin coordinates) into the fundamental alcove of the affine Weyl group."""
    rs = ld.rs
    theta = rs.dynkin_labels(rs.highest_root)
    cur = d
    while True:
        neg = next((i for i, c in enumerate(cur) if c < 0), None)
        if neg is not None:
            cur = rs.reflect(cur, neg)
            continue
        height = rs.pairing(theta, cur)
        if height > 1:
            cur = tuple(c - (height - 1) * t for c, t in zip(cur, theta))
            continue
        return cur


def scan_F(ld: core.LevelData, max_rank: int = MAX_SCAN_RANK) -> LatticeScanResult:
    """Enumerate ker(T -> T^dual) for the form (h + c) * basic, as a finite abelian group."""
    rs = ld.rs
    if rs.rank > max_rank:
        raise ComputationRefused(f"scan_F is limited to rank <= {max_rank}; {rs.name} has rank {rs.rank}")

    gram = [list(row) for row in rs.gram_basic]
    scaled = Matrix([[SymRational(ld.shift * q.numerator, q.denominator) for q in row] for row in gram])
    inv = scaled.inv()
    generators = [tuple(_to_fraction(inv[i, j]) for i in range(rs.rank)) for j in range(rs.rank)]

    zero = tuple(Fraction(0) for _ in range(rs.rank))
    seen = {zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = tuple(_frac_part(a + b) for a, b in zip(x, g))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    points = sorted(seen)

    regular = 0
    labels = set()
    for x in points:
        d = tuple(sum((gram[i][j] * x[j] for j in range(rs.rank)), Fraction(0)) for i in range(rs.rank))
        if any(rs.pairing(a, d).denominator == 1 for a in rs.positive_root_labels):
            continue
        regular += 1
        alcove = _fold_to_alcove(ld, d)
        labels.add(Weight(tuple(int(ld.shift * c) - 1 for c in alcove)))

    return LatticeScanResult(
        points=points,
        regular_count=regular,
        orbit_count=len(labels),
        orbit_labels=sorted(labels),
    )


def cg_fusion_a1(h: int) -> np.ndarray:
    """Level-h A1 fusion: N_ab^c = 1 iff |a-b| <= c <= min(a+b, 2h-a-b) and a+b+c even."""
    if h < 0:
        raise InvalidInputError(f"level must be >= 0, got {h}")
    n = h + 1
    out = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if abs(a - b) <= c <= min(a + b, 2 * h - a - b) and (a + b + c) % 2 == 0:
                    out[a, b, c] = 1
    return out


def genus_dim_from_fusion(ring: FusionRing, genus: int) -> int:
    """Vacuum entry of the g-th power of the handle operator sum_a N_a N_a^T."""
    if genus < 1:
        raise InvalidInputError(f"genus must be >= 1, got {genus}")
    mats = [ring.fusion_matrix(a).astype(object) for a in range(ring.size)]
    handle = sum((m @ m.T for m in mats), np.zeros((ring.size, ring.size), dtype=object))
    power = np.identity(ring.size, dtype=object)
    for _ in range(genus):
        power = power @ handle
    return int(power[ring.unit, ring.unit])


@dataclass(frozen=True)
class FloatCheck:
    exact: int
    approx: float
    rel_error: float
    ok: bool


def float_crosscheck(ld: core.LevelData, genus: int, tol: float = 1e-6) -> FloatCheck:
    exact = core.verlinde_dimension(ld, genus)
    order = float(core.f_order(ld))
    total = 0.0
    for p in core.regular_points(ld):
        angles = np.array([float(ld.rs.pairing(a, p.xi)) for a in ld.rs.positive_root_labels])
        delta_sq = float(np.prod(4.0 * np.sin(np.pi * angles) ** 2))
        total += delta_sq ** (1 - genus)
    approx = order ** (genus - 1) * total
    rel = abs(approx - exact) / max(1.0, abs(exact))
    return FloatCheck(exact=exact, approx=approx, rel_error=rel, ok=rel < tol)


@dataclass(frozen=True)
class OracleCheck:
    name: str
    passed: bool
    detail: str


def _run(name: str, fn: Callable[[], Tuple[bool, str]]) -> OracleCheck:
    try:
        ok, detail = fn()
    except VerlindeError as e:
        return OracleCheck(name=name, passed=False, detail=str(e))
    return OracleCheck(name=name, passed=ok, detail=detail)


def verify_all(ld: core.LevelData, genus: int, ring: FusionRing | None = None, max_rank: int = MAX_SCAN_RANK) -> List[OracleCheck]:
    """Every oracle applicable to (group, level, genus)."""
    checks: List[OracleCheck] = []
    ring = ring if ring is not None else core.fusion_ring(ld)
    labels = [p.label for p in core.regular_points(ld)]

    if ld.rs.rank <= max_rank:
        scan = scan_F(ld, max_rank=max_rank)

        def order_check() -> Tuple[bool, str]:
            expected = core.f_order(ld)
            return len(scan.points) == expected, f"scan {len(scan.points)} vs det {expected}"

        def orbit_check() -> Tuple[bool, str]:
            return scan.orbit_labels == labels, f"{scan.orbit_count} orbits vs {len(labels)} regular points"

        checks.append(_run("|F| lattice scan", order_check))
        checks.append(_run("regular orbits", orbit_check))

    def genus_check() -> Tuple[bool, str]:
        a, b = core.verlinde_dimension(ld, genus), genus_dim_from_fusion(ring, genus)
        return a == b, f"Verlinde sum {a} vs handle operator {b}"

    def genus_one() -> Tuple[bool, str]:
        d = core.verlinde_dimension(ld, 1)
        return d == len(labels), f"{d} vs {len(labels)} weights"

    def axioms() -> Tuple[bool, str]:
        problems = ring.axiom_violations()
        return not problems, "; ".join(problems) or "symmetric, unital, nonnegative, associative"

    def orthonormal() -> Tuple[bool, str]:
        bad = core.orthonormality_defects(ld)
        return not bad, f"{len(bad)} defective pairs"

    def diagonal() -> Tuple[bool, str]:
        bad = core.diagonalisation_defects(ld, ring)
        return not bad, f"{len(bad)} defective (a, b, f) triples"

    def vacuum() -> Tuple[bool, str]:
        m = core.multiplicity(ld, Weight.zero(ld.rs.rank), genus)
        d = core.verlinde_dimension(ld, genus)
        return m == d, f"multiplicity {m} vs dimension {d}"

    def handle() -> Tuple[bool, str]:
        h_el = core.handle_element(ld, genus)
        mismatched = [
            w for w in ring.basis
            if core.inner_product(ld, core.character_map(ld, w), h_el) != core.multiplicity(ld, w, genus)
        ]
        return not mismatched, f"{len(mismatched)} weights disagree"

    def floats() -> Tuple[bool, str]:
        fc = float_crosscheck(ld, genus)
        return fc.ok, f"exact {fc.exact}, float {fc.approx:.9g}, rel err {fc.rel_error:.2e}"

    checks.append(_run("Verlinde sum vs fusion handle", genus_check))
    checks.append(_run("genus-1 count", genus_one))
    checks.append(_run("fusion axioms", axioms))
    checks.append(_run("orthonormality", orthonormal))
    checks.append(_run("diagonalisation", diagonal))
    checks.append(_run("vacuum multiplicity", vacuum))
    checks.append(_run("handle element pairing", handle))
    checks.append(_run("float cross-check", floats))

    if ld.rs.family == "A" and ld.rs.rank == 1:
        def cg() -> Tuple[bool, str]:
            return np.array_equal(cg_fusion_a1(ld.h), ring.constants), "Clebsch-Gordan truncation"

        checks.append(_run("A1 Clebsch-Gordan", cg))
    return checks


def assert_all(checks: Sequence[OracleCheck]) -> None:
    failed = [c for c in checks if not c.passed]
    if failed:
        raise ConsistencyError("oracle mismatch: " + ", ".join(f"{c.name} ({c.detail})" for c in failed))
