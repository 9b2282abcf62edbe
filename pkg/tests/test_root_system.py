from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.errors import InvalidInputError, NotRegularError
from src.lie.root_system import (
    RootSystem,
    Weight,
    build,
    dual_weight,
    level_weights,
    parse_group,
    signed_orbit,
    weyl_fold,
    weyl_orbit,
)

GROUPS = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4)]


def _positive_count(family: str, n: int) -> int:
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}[family]


@pytest.mark.parametrize("family,rank", GROUPS)
def test_invariants(family, rank):
    rs = build(family, rank)
    assert len(rs.positive_roots) == _positive_count(family, rank)

    dim = len(rs.rho)
    half_sum = tuple(sum((a[j] for a in rs.positive_roots), Fraction(0)) / 2 for j in range(dim))
    assert half_sum == rs.rho
    weight_sum = tuple(sum((w[j] for w in rs.fundamental_weights), Fraction(0)) for j in range(dim))
    assert weight_sum == rs.rho

    g = rs.gram_basic
    assert all(g[i][j] == g[j][i] for i in range(rank) for j in range(rank))
    assert max(rs.inner(a, a) for a in rs.positive_roots) == 2

    for i, a in enumerate(rs.simple_roots):
        for j, w in enumerate(rs.fundamental_weights):
            assert rs.inner(rs.coroot(a), w) == (1 if i == j else 0)
        # <alpha_i, alpha_j^vee> = A_ji
        assert rs.dynkin_labels(a) == tuple(Fraction(rs.cartan[j][i]) for j in range(rank))


@pytest.mark.parametrize("family,rank", GROUPS)
def test_gram_basic_is_positive_definite(family, rank):
    rs = build(family, rank)
    g = rs.gram_basic
    # leading principal minors
    for m in range(1, rank + 1):
        sub = [[g[i][j] for j in range(m)] for i in range(m)]
        assert _det(sub) > 0


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(len(m)))


@pytest.mark.parametrize(
    "family,rank,positive,coxeter,order",
    [("A", 1, 1, 2, 2), ("A", 2, 3, 3, 6), ("B", 2, 4, 3, 8), ("C", 3, 9, 4, 48), ("D", 4, 12, 6, 192)],
)
def test_standard_tables(family, rank, positive, coxeter, order):
    rs = build(family, rank)
    assert len(rs.positive_roots) == positive
    assert rs.dual_coxeter == coxeter
    assert rs.weyl_order() == order


def test_d3_matches_a3():
    assert len(build("D", 3).positive_roots) == len(build("A", 3).positive_roots) == 6


@pytest.mark.parametrize("family,rank", [("E", 6), ("B", 1), ("D", 2), ("A", 0)])
def test_unsupported(family, rank):
    with pytest.raises(InvalidInputError):
        build(family, rank)


def test_parse_group():
    assert parse_group("a2") == build("A", 2)
    with pytest.raises(InvalidInputError):
        parse_group("SU3")


def test_fold_examples():
    rs = build("A", 1)
    folded = weyl_fold(rs, (-3,))
    assert (folded.vector, folded.sign) == ((3,), -1)
    wall = weyl_fold(rs, (0,))
    assert (wall.vector, wall.sign) == ((0,), 0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=2))
def test_fold_a2(v):
    rs = build("A", 2)
    folded = weyl_fold(rs, tuple(v))
    assert all(c >= 0 for c in folded.vector)
    assert folded.unfold(rs) == tuple(v)
    if folded.sign:
        assert folded.sign == (-1) ** len(folded.word)
    assert tuple(folded.vector) in weyl_orbit(rs, tuple(v))
    again = weyl_fold(rs, folded.vector)
    assert again.vector == folded.vector and again.word == ()


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("C", 3)])
def test_orbit_stabiliser(family, rank):
    rs = build(family, rank)
    for w in level_weights(rs, 2):
        orbit = weyl_orbit(rs, w)
        assert rs.weyl_order() % len(orbit) == 0
        assert sum(1 for v in orbit if all(c >= 0 for c in v)) == 1
        assert all(rs.reflect(v, i) in orbit for v in orbit for i in range(rank))


def test_orbit_examples():
    assert weyl_orbit(build("A", 1), Weight((2,))) == [(-2,), (2,)]
    assert weyl_orbit(build("A", 2), Weight((0, 0))) == [(0, 0)]
    assert len(weyl_orbit(build("A", 2), Weight((1, 1)))) == 6


def test_signed_orbit_is_a_torsor():
    rs = build("B", 2)
    orbit = signed_orbit(rs, (1, 1))
    assert len(orbit) == rs.weyl_order()
    assert sum(s for _, s in orbit) == 0
    with pytest.raises(NotRegularError):
        signed_orbit(rs, (0, 1))


def test_level_weights():
    assert level_weights(build("A", 1), 2) == [Weight((0,)), Weight((1,)), Weight((2,))]
    assert level_weights(build("A", 2), 1) == [Weight((0, 0)), Weight((0, 1)), Weight((1, 0))]
    for family, rank in GROUPS:
        assert level_weights(build(family, rank), 0) == [Weight.zero(rank)]
    for h in range(11):
        assert len(level_weights(build("A", 1), h)) == h + 1


def test_level_weights_respect_comarks():
    rs = build("B", 2)
    assert all(rs.level(w) <= 3 for w in level_weights(rs, 3))
    assert rs.comarks == (1, 1)


def test_dual_weight():
    rs = build("A", 2)
    assert dual_weight(rs, Weight((1, 0))) == Weight((0, 1))
    assert dual_weight(build("B", 2), Weight((1, 0))) == Weight((1, 0))


def test_weight_parse():
    assert Weight.parse("[1, 0]") == Weight((1, 0))
    assert str(Weight((2, 1))) == "[2,1]"
    with pytest.raises(InvalidInputError):
        Weight.parse("[a]")


def test_dict_round_trip():
    rs = build("C", 2)
    doc = rs.to_dict()
    assert all("/" in x for row in doc["gram_basic"] for x in row)
    assert RootSystem.from_dict(doc) == rs
