import itertools
import random
from fractions import Fraction

import pytest

from lexorder.orderdsl import parse_term
from lexorder.oracle import random_discrete_term
from lexorder.space import (
    AllMax,
    AllOnes,
    Cylinder,
    Lex,
    NoPartnerError,
    Periodic,
    Point,
    SpaceError,
    closed_orbit_contains,
    closed_orbit_measure,
    coords_for,
    cylinder_measure,
    d_value,
    format_point,
    gap_partner,
    lex_compare,
    parse_point,
    random_point,
)

ZETA2 = parse_term("zeta([](2)^w;[](2)^w)")
OMEGA2 = parse_term("omega([](2)^w)")
MIXED = parse_term("zeta([](3)^w;[2](2,3)^w)")


def test_all_ones_is_minimal():
    ones = Point.all_ones(ZETA2)
    rng = random.Random(0)
    for _ in range(50):
        y = random_point(ZETA2, rng)
        assert lex_compare(ones, y) in (Lex.LESS, Lex.EQUAL)


def test_compare_reflexive():
    rng = random.Random(1)
    for _ in range(50):
        x = random_point(MIXED, rng)
        assert lex_compare(x, x) is Lex.EQUAL


def test_first_index_decides():
    x = Point(OMEGA2, (), (2,), AllOnes())
    y = Point(OMEGA2, (), (1,), Periodic((2,)))
    assert lex_compare(x, y) is Lex.GREATER
    assert lex_compare(y, x) is Lex.LESS


def test_compare_requires_same_term():
    with pytest.raises(SpaceError):
        lex_compare(Point.all_ones(ZETA2), Point.all_ones(OMEGA2))


def test_descriptions_of_same_point_are_equal():
    a = Point(OMEGA2, (), (2, 1), AllOnes())
    b = Point(OMEGA2, (), (2,), AllOnes())
    assert a == b
    c = Point(OMEGA2, (), (2,), Periodic((1, 1)))
    assert c == b


def test_cylinder_measures():
    assert cylinder_measure(ZETA2, Cylinder()) == 1
    assert cylinder_measure(ZETA2, Cylinder({1: 2})) == Fraction(1, 2)
    assert cylinder_measure(MIXED, Cylinder({-1: 2, 1: 1})) == Fraction(1, 6)
    with pytest.raises(SpaceError):
        cylinder_measure(ZETA2, Cylinder({1: 3}))


def test_cylinder_split_is_additive():
    rng = random.Random(2)
    for _ in range(50):
        term = random_discrete_term(rng, kinds=("zeta", "omega"))
        c = coords_for(term)
        base = {1: 1}
        parent = cylinder_measure(term, Cylinder(base))
        total = sum(cylinder_measure(term, Cylinder({**base, 3: v}))
                    for v in range(1, c.right_weight(3) + 1))
        assert total == parent


def test_d_values():
    assert d_value(Point.all_ones(ZETA2)) == 0
    assert d_value(Point.x_star(ZETA2)) == 1
    assert d_value(Point(OMEGA2, (), (2,), AllOnes())) == Fraction(1, 2)
    assert d_value(Point(OMEGA2, (), (), Periodic((2, 1)))) == Fraction(2, 3)


def test_d_left_contributions_are_integer_steps():
    x = Point(ZETA2, {-1: 2}, (), AllOnes())
    assert d_value(x) == 1
    y = Point(ZETA2, {-3: 2, -1: 2}, (), AllOnes())
    assert d_value(y) == 4 + 1


def test_d_on_mixed_weights():
    x = Point(MIXED, (), (2, 2), AllOnes())
    assert d_value(x) == Fraction(1, 2) + Fraction(1, 4)
    assert d_value(Point.x_star(MIXED)) == 1


def test_closed_orbit_contains():
    xstar = Point.x_star(ZETA2)
    assert closed_orbit_contains(xstar, xstar)
    rng = random.Random(3)
    for _ in range(30):
        y = random_point(ZETA2, rng)
        if y.left_exceptions:
            assert not closed_orbit_contains(y, xstar)
        else:
            assert closed_orbit_contains(y, xstar)


def test_closed_orbit_measure_examples():
    assert closed_orbit_measure(Point.x_star(ZETA2)) == 1
    assert closed_orbit_measure(Point.all_ones(ZETA2)) == 0
    assert closed_orbit_measure(Point(OMEGA2, (), (2,), AllOnes())) == Fraction(1, 2)


def test_orbit_measure_matches_truncation_counting():
    x = Point(OMEGA2, (), (2,), AllOnes())
    for depth in (1, 3, 5):
        word = tuple(x.coord(k) for k in range(1, depth + 1))
        below = sum(1 for w in itertools.product((1, 2), repeat=depth) if w < word)
        assert closed_orbit_measure(x) == Fraction(below, 2 ** depth)


def test_gap_partner_pairs():
    x = Point(OMEGA2, (), (2,), AllOnes())
    y = gap_partner(x)
    assert y == Point(OMEGA2, (), (1,), AllMax())
    assert d_value(y) == d_value(x) == Fraction(1, 2)
    assert gap_partner(y) == x


def test_gap_partner_errors():
    with pytest.raises(NoPartnerError):
        gap_partner(Point.all_ones(OMEGA2))
    with pytest.raises(NoPartnerError):
        gap_partner(Point(OMEGA2, (), (), Periodic((2, 1))))
    with pytest.raises(NoPartnerError):
        gap_partner(Point.x_star(OMEGA2))  # no left half to borrow from


def test_gap_partner_crosses_origin_on_two_sided_terms():
    xstar = Point.x_star(ZETA2)
    y = gap_partner(xstar)
    assert y == Point(ZETA2, {-1: 2}, (), AllOnes())
    assert d_value(y) == 1
    assert gap_partner(y) == xstar


def test_monotone_rank_with_gap_ties():
    rng = random.Random(4)
    terms = [random_discrete_term(rng) for _ in range(8)]
    for _ in range(1000):
        term = rng.choice(terms)
        x, y = random_point(term, rng), random_point(term, rng)
        order = lex_compare(x, y)
        if order is Lex.LESS:
            dx, dy = d_value(x), d_value(y)
            assert dx <= dy
            if dx == dy:
                assert gap_partner(x) == y


def test_periodic_tail_must_align_to_cycle():
    with pytest.raises(SpaceError):
        Point(MIXED, (), (), Periodic((2, 2)))  # starts inside the explicit prefix
    with pytest.raises(SpaceError):
        Point(MIXED, (), (2,), Periodic((2,)))  # length not a multiple of the cycle
    Point(MIXED, (), (2,), Periodic((2, 2)))  # aligned: starts right after the prefix


def test_finite_terms_are_fully_explicit():
    t = parse_term("fin[2,3]")
    x = Point(t, (), (2,), AllMax())
    assert x.right_prefix == (2, 3)
    assert d_value(x) == Fraction(3, 6) + Fraction(2, 6)
    with pytest.raises(NoPartnerError):
        gap_partner(x)


def test_point_text_round_trip():
    rng = random.Random(5)
    for _ in range(100):
        term = random_discrete_term(rng)
        x = random_point(term, rng)
        assert parse_point(format_point(x), term) == x


def test_periodic_phase_absorption():
    t = parse_term("omega([](2,3)^w)")
    a = Point(t, (), (), Periodic((2, 1)))
    b = Point(t, (), (2, 1), Periodic((2, 1)))
    assert a == b
    assert b.right_prefix == ()  # whole-cycle chunks fold into the tail


def test_periodic_period_reduction():
    t = parse_term("omega([](2,3)^w)")
    a = Point(t, (), (), Periodic((2, 1, 2, 1)))
    b = Point(t, (), (), Periodic((2, 1)))
    assert a == b and a.right_tail == b.right_tail


def test_point_validation_errors():
    with pytest.raises(SpaceError):
        Point(OMEGA2, {-1: 2}, (), AllOnes())  # no left half
    with pytest.raises(SpaceError):
        Point(OMEGA2, (), (3,), AllOnes())  # value above the weight
    with pytest.raises(SpaceError):
        Point(parse_term("fin[2,3]"), (), (9,), AllOnes())
    with pytest.raises(SpaceError):
        parse_point("point{right:[9], tail:ones}", OMEGA2)
