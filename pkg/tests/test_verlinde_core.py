import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from src.arith.cyclotomic import CyclotomicNumber
from src.errors import InvalidInputError, NotRegularError
from src.lie.root_system import Weight, build, level_weights
from src.verlinde import core
from src.verlinde.fusion import FusionRing

GOLDEN = Path(__file__).resolve().parents[1] / "golden"

# (family, rank, max level, max genus) from the exactness targets
CASES = [("A", 1, 8, 4), ("A", 2, 3, 3), ("B", 2, 2, 2)]


def ld(family, rank, h):
    return core.level_data(build(family, rank), h)


def all_levels():
    for family, rank, hmax, gmax in CASES:
        for h in range(hmax + 1):
            yield family, rank, h, gmax


def test_level_data():
    d = ld("A", 1, 1)
    assert (d.shift, d.conductor) == (3, 12)
    assert ld("A", 2, 0).conductor % (2 * 3) == 0
    assert ld("B", 2, 1).conductor == 2 * 2 * 4
    with pytest.raises(InvalidInputError):
        ld("A", 1, -1)


@pytest.mark.parametrize("family,rank,hmax", [("A", 1, 10), ("A", 2, 4), ("B", 2, 3)])
def test_point_count_and_alcove(family, rank, hmax):
    for h in range(hmax + 1):
        d = ld(family, rank, h)
        points = core.regular_points(d)
        assert len(points) == len(level_weights(d.rs, h))
        for p in points:
            for a in d.rs.positive_root_labels:
                assert 0 < d.rs.pairing(a, p.xi) < 1


def test_regular_point_examples():
    pairings = sorted(ld("A", 1, 1).rs.pairing((2,), p.xi) for p in core.regular_points(ld("A", 1, 1)))
    assert pairings == [Fraction(1, 3), Fraction(2, 3)]
    for family, rank in [("A", 2), ("B", 2), ("C", 3)]:
        d = ld(family, rank, 0)
        (p,) = core.regular_points(d)
        assert p.xi == tuple(Fraction(1, d.rs.dual_coxeter) for _ in range(rank))
    assert len(core.regular_points(ld("A", 2, 1))) == 3


@pytest.mark.parametrize("family,rank,h,order", [("A", 1, 1, 6), ("A", 1, 0, 4), ("A", 2, 0, 27), ("A", 1, 5, 14)])
def test_f_order(family, rank, h, order):
    assert core.f_order(ld(family, rank, h)) == order


def test_weyl_denominator_sq():
    d = ld("A", 1, 1)
    assert all(core.weyl_denominator_sq(d, p) == 3 for p in core.regular_points(d))
    d2 = ld("A", 1, 2)
    assert core.weyl_denominator_sq(d2, core.point_for(d2, Weight((1,)))) == 4
    d3 = ld("A", 2, 0)
    assert core.weyl_denominator_sq(d3, core.regular_points(d3)[0]) == 27


def test_weyl_denominator_float_image():
    d = ld("B", 2, 2)
    for p in core.regular_points(d):
        value = core.weyl_denominator_sq(d, p).to_complex()
        expected = np.prod([4 * math.sin(math.pi * float(d.rs.pairing(a, p.xi))) ** 2 for a in d.rs.positive_root_labels])
        assert abs(value.imag) < 1e-9
        assert value.real > 0
        assert math.isclose(value.real, expected, rel_tol=1e-9)


def test_wall_point_is_rejected():
    d = ld("A", 1, 1)
    wall = core.RegularPoint(label=Weight((0,)), xi=(Fraction(0),))
    with pytest.raises(NotRegularError):
        core.weyl_denominator_sq(d, wall)


def test_characters():
    for h in range(5):
        d = ld("A", 1, h)
        for p in core.regular_points(d):
            assert core.character_at(d, Weight((0,)), p) == 1
            n = p.label.coords[0] + 1
            expected = 2 * math.cos(math.pi * n / d.shift)
            assert math.isclose(core.character_at(d, Weight((1,)), p).to_complex().real, expected, abs_tol=1e-9)
    with pytest.raises(InvalidInputError):
        core.character_at(ld("A", 1, 2), Weight((-1,)), core.regular_points(ld("A", 1, 2))[0])


def test_level_zero_characters_are_one():
    d = ld("B", 2, 0)
    (p,) = core.regular_points(d)
    assert core.character_at(d, Weight((0, 0)), p) == 1


def test_quantum_dimension():
    d = ld("A", 1, 2)
    assert core.quantum_dimension(d, Weight((1,))) ** 2 == 2
    assert core.quantum_dimension(d, Weight((2,))) == 1


def test_kac_numerator_support():
    d = ld("A", 1, 1)
    vac = core.kac_numerator_support(d, Weight((0,)))
    one = core.kac_numerator_support(d, Weight((1,)))
    assert len(vac) == 2 and all(not x.is_zero() for x in vac.values())
    for p in vac:
        assert one[p] == vac[p] * core.character_at(d, Weight((1,)), p)
    # anti-invariance of the numerator under xi -> -xi, the Weyl flip on F
    for p in vac:
        flipped = tuple(-x for x in p.xi)
        assert core.numerator_at(d, Weight((0,)), flipped) == -vac[p]


@pytest.mark.parametrize("h", range(1, 9))
def test_a1_genus_closed_forms(h):
    d = ld("A", 1, h)
    assert core.verlinde_dimension(d, 1) == h + 1


def test_a1_level_one_powers_of_two():
    d = ld("A", 1, 1)
    assert [core.verlinde_dimension(d, g) for g in range(1, 6)] == [2, 4, 8, 16, 32]
    assert core.verlinde_dimension(ld("A", 1, 2), 2) == 10


@pytest.mark.parametrize("family,rank,h,gmax", list(all_levels()))
def test_genus_one_and_vacuum(family, rank, h, gmax):
    d = ld(family, rank, h)
    assert core.verlinde_dimension(d, 1) == len(level_weights(d.rs, h))
    for g in range(1, gmax + 1):
        assert core.multiplicity(d, Weight.zero(rank), g) == core.verlinde_dimension(d, g)


def fusion_trace_multiplicity(ring, a, genus):
    """Tr(N_a H^(g-1)) with the handle operator H = sum_b N_b N_b*."""
    handle = sum(ring.fusion_matrix(b) @ ring.fusion_matrix(ring.dual(b)) for b in range(ring.size))
    return int(np.trace(ring.fusion_matrix(a) @ np.linalg.matrix_power(handle, genus - 1)))


def test_multiplicity_examples():
    d = ld("A", 1, 1)
    ring = core.fusion_ring(d)
    # sum_f chi_[1](f) = 2cos(pi/3) + 2cos(2pi/3)
    assert core.multiplicity(d, Weight((1,)), 1) == 0
    assert int(ring.fusion_matrix(ring.index(Weight((1,)))).trace()) == 0

    d2 = ld("A", 1, 2)
    ring2 = core.fusion_ring(d2)
    assert core.multiplicity(d2, Weight((2,)), 2) == 6
    assert fusion_trace_multiplicity(ring2, ring2.index(Weight((2,))), 2) == 6
    with pytest.raises(InvalidInputError):
        core.multiplicity(d2, Weight((3,)), 2)
    with pytest.raises(InvalidInputError):
        core.verlinde_dimension(d2, 0)


@pytest.mark.parametrize("family,rank,h,gmax", list(all_levels()))
def test_multiplicity_matches_fusion_trace(family, rank, h, gmax):
    d = ld(family, rank, h)
    ring = core.fusion_ring(d)
    for g in range(1, gmax + 1):
        for a, w in enumerate(ring.basis):
            assert core.multiplicity(d, w, g) == fusion_trace_multiplicity(ring, a, g)


@pytest.mark.parametrize("family,rank,h,gmax", list(all_levels()))
def test_handle_pairing_gives_multiplicity(family, rank, h, gmax):
    d = ld(family, rank, h)
    for g in range(1, gmax + 1):
        handle = core.handle_element(d, g)
        for w in level_weights(d.rs, h):
            assert core.inner_product(d, core.character_map(d, w), handle) == core.multiplicity(d, w, g)


def test_point_caches_are_bounded():
    for fn in (core.weyl_denominator_sq, core.character_at):
        assert fn.cache_info().maxsize is not None


def test_inner_product():
    d = ld("A", 1, 1)
    ones = {p: CyclotomicNumber.one(d.conductor) for p in core.regular_points(d)}
    assert core.inner_product(d, ones, ones) == 1
    with pytest.raises(InvalidInputError):
        core.inner_product(d, {}, ones)


@pytest.mark.parametrize("family,rank,h", [(f, r, h) for f, r, h, _ in all_levels()])
def test_orthonormality(family, rank, h):
    assert core.orthonormality_defects(ld(family, rank, h)) == []


def test_handle_element():
    d = ld("A", 1, 1)
    assert all(v == 1 for v in core.handle_element(d, 0).values())
    assert all(v == 2 for v in core.handle_element(d, 1).values())
    for g in range(1, 4):
        assert core.inner_product(d, core.character_map(d, Weight((0,))), core.handle_element(d, g)) == core.verlinde_dimension(d, g)


@pytest.mark.parametrize("family,rank,h,gmax", list(all_levels()))
def test_fusion_ring_axioms(family, rank, h, gmax):
    d = ld(family, rank, h)
    ring = core.fusion_ring(d)
    assert ring.axiom_violations() == []
    assert ring.matrices_commute()
    assert ring.basis[ring.unit] == Weight.zero(rank)


@pytest.mark.parametrize("family,rank,h", [("A", 1, h) for h in range(6)] + [("A", 2, 0), ("A", 2, 1), ("A", 2, 2)])
def test_diagonalisation(family, rank, h):
    d = ld(family, rank, h)
    assert core.diagonalisation_defects(d, core.fusion_ring(d)) == []


def test_fusion_examples():
    ring = core.fusion_ring(ld("A", 1, 1))
    assert ring.product(Weight((1,)), Weight((1,))) == {Weight((0,)): 1}
    ring2 = core.fusion_ring(ld("A", 1, 2))
    assert ring2.product(Weight((1,)), Weight((1,))) == {Weight((0,)): 1, Weight((2,)): 1}
    n = ring2.size
    assert np.array_equal(ring2.constants[ring2.unit], np.eye(n, dtype=np.int64))


def test_duals():
    ring = core.fusion_ring(ld("A", 2, 1))
    a = ring.index(Weight((1, 0)))
    assert ring.basis[ring.dual(a)] == Weight((0, 1))


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.json")), ids=lambda p: p.stem)
def test_golden(path):
    with path.open("r", encoding="utf-8") as f:
        expected = FusionRing.from_json(json.load(f))
    d = ld(expected.family, expected.rank, expected.level)
    assert core.fusion_ring(d) == expected


def test_json_and_frame_round_trip():
    ring = core.fusion_ring(ld("A", 2, 1))
    assert FusionRing.from_json(json.loads(json.dumps(ring.to_json()))) == ring
    frame = ring.to_frame()
    assert list(frame.columns) == ["a", "b", "c", "N"]
    assert len(frame) == len(ring.triples())
    with pytest.raises(InvalidInputError):
        FusionRing.from_json({"family": "A"})


@pytest.mark.parametrize(
    "triple,unit",
    [([-1, -1, -1, 7], 0), ([0, 3, 0, 1], 0), ([0, 0, 0, 1], 3), ([0, 0, 0, 1], -1)],
)
def test_from_json_rejects_indices_outside_basis(triple, unit):
    doc = core.fusion_ring(ld("A", 1, 2)).to_json()
    doc["constants"] = doc["constants"] + [triple]
    doc["unit"] = unit
    with pytest.raises(InvalidInputError):
        FusionRing.from_json(doc)
