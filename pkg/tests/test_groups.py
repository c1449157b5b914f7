"""Group parsing, element arithmetic, characters, orbits, Sylow parts."""

import math
import random

import pytest

from mixkit.errors import ElementParseError, GroupParseError
from mixkit.groups import (
    GroupSpec,
    format_element,
    orbits_under_units,
    parse_element,
    parse_group,
    sylow_decomposition,
)


def test_parse_group_forms():
    assert parse_group("Z4").factors == (4,)
    assert parse_group("Z2^3").factors == (2, 2, 2)
    assert parse_group("Z2xZ4").factors == (2, 4)
    assert parse_group("z2 ^ 2 X z3").factors == (2, 2, 3)
    assert parse_group("  Z2 x Z2 x Z5 ").factors == (2, 2, 5)


def test_parse_group_errors_carry_offset():
    with pytest.raises(GroupParseError) as info:
        parse_group("Q8")
    assert info.value.offset == 0
    with pytest.raises(GroupParseError):
        parse_group("Z1xZ2")
    with pytest.raises(GroupParseError):
        parse_group("Z4^0")
    with pytest.raises(GroupParseError):
        parse_group("Z4yZ2")
    with pytest.raises(GroupParseError):
        parse_group("Z")
    with pytest.raises(GroupParseError):
        parse_group("")


def test_spec_order_exponent():
    g = parse_group("Z2^2xZ4")
    assert g.order == 16
    assert g.exponent == 4
    assert parse_group("Z15").exponent == 15
    assert parse_group("Z2xZ3").exponent == 6
    assert GroupSpec(()).order == 1
    assert GroupSpec(()).exponent == 1


def test_group_text_roundtrip():
    for text in ("Z4", "Z2^3", "Z2xZ4", "Z2^2xZ3", "Z6xZ6"):
        g = parse_group(text)
        assert parse_group(g.text) == g


def test_elements_enumeration_lexicographic():
    g = parse_group("Z2xZ3")
    els = g.elements()
    assert els == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    for i, x in enumerate(els):
        assert g.index(x) == i
        assert g.element(i) == x


def test_element_arithmetic():
    g = parse_group("Z2xZ4")
    assert g.add((1, 3), (1, 2)) == (0, 1)
    assert g.negate((1, 3)) == (1, 1)
    assert g.sub((0, 1), (1, 3)) == (1, 2)
    assert g.scale(3, (1, 2)) == (1, 2)
    assert g.zero == (0, 0)
    assert g.element_order((1, 2)) == 2
    assert g.element_order((0, 1)) == 4
    assert g.element_order((0, 0)) == 1


def test_character_exponent_worked_value():
    # Z2xZ4, e = 4: pairing of (1,1) with (1,2) is (4/2)*1*1 + (4/4)*1*2 = 4 = 0 mod 4
    g = parse_group("Z2xZ4")
    assert g.character_exponent((1, 1), (1, 2)) == 0
    assert g.character_exponent((1, 1), (0, 1)) == 1
    assert g.character_exponent((1, 0), (1, 0)) == 2


def test_character_exponent_symmetric_and_bilinear():
    rng = random.Random(5)
    for text in ("Z2xZ4", "Z3^2", "Z12", "Z2^3", "Z6xZ4"):
        g = parse_group(text)
        els = g.elements()
        for _ in range(200):
            a, b, c = (rng.choice(els) for _ in range(3))
            assert g.character_exponent(a, b) == g.character_exponent(b, a)
            lhs = g.character_exponent(g.add(a, b), c)
            rhs = (g.character_exponent(a, c) + g.character_exponent(b, c)) % g.exponent
            assert lhs == rhs


def test_subgroup_generated():
    g = parse_group("Z2xZ4")
    assert g.subgroup_generated([(0, 2)]) == {(0, 0), (0, 2)}
    assert len(g.subgroup_generated([(1, 0), (0, 1)])) == 8
    assert g.subgroup_generated([]) == {(0, 0)}


def test_parse_element():
    g = parse_group("Z2xZ4")
    assert parse_element("(1,3)", g) == (1, 3)
    assert parse_element(" ( 1 , 3 ) ", g) == (1, 3)
    assert parse_element("(1,-1)", g) == (1, 3)
    z9 = parse_group("Z9")
    assert parse_element("7", z9) == (7,)
    assert parse_element("(7)", z9) == (7,)
    with pytest.raises(ElementParseError):
        parse_element("(1,2,3)", g)
    with pytest.raises(ElementParseError):
        parse_element("x", z9)
    assert format_element((1, 3)) == "(1,3)"
    assert format_element((7,)) == "7"


def test_orbits_z12():
    g = parse_group("Z12")
    orbits = orbits_under_units(g)
    reps = [o.representative for o in orbits]
    assert reps == [(0,), (1,), (2,), (3,), (4,), (6,)]
    by_rep = {o.representative: set(o.members) for o in orbits}
    assert by_rep[(1,)] == {(1,), (5,), (7,), (11,)}
    assert by_rep[(2,)] == {(2,), (10,)}
    assert by_rep[(3,)] == {(3,), (9,)}
    assert by_rep[(4,)] == {(4,), (8,)}
    assert by_rep[(6,)] == {(6,)}


def test_orbits_z3xz5():
    g = parse_group("Z3xZ5")
    orbits = orbits_under_units(g)
    reps = [o.representative for o in orbits]
    assert reps == [(0, 0), (0, 1), (1, 0), (1, 1)]
    sizes = {o.representative: len(o) for o in orbits}
    assert sizes == {(0, 0): 1, (0, 1): 4, (1, 0): 2, (1, 1): 8}


def test_orbits_elementary_2_group_are_singletons():
    g = parse_group("Z2^4")
    orbits = orbits_under_units(g)
    assert len(orbits) == 16
    assert all(len(o) == 1 for o in orbits)


def test_orbits_partition_and_symmetry():
    for text in ("Z8", "Z9", "Z2xZ4", "Z12", "Z3xZ5", "Z6xZ2"):
        g = parse_group(text)
        orbits = orbits_under_units(g)
        seen = [x for o in orbits for x in o.members]
        assert sorted(seen) == g.elements()
        for o in orbits:
            members = set(o.members)
            assert {g.negate(x) for x in members} == members
            assert o.representative == min(members)
            # closed under every unit multiplier
            for l in range(1, g.order):
                if math.gcd(l, g.order) == 1:
                    assert {g.scale(l, x) for x in members} == members


def test_sylow_decomposition():
    assert {p: s.factors for p, s in sylow_decomposition(parse_group("Z12")).items()} == {
        2: (4,),
        3: (3,),
    }
    assert {p: s.factors for p, s in sylow_decomposition(parse_group("Z2xZ4")).items()} == {
        2: (2, 4),
    }
    assert {p: s.factors for p, s in sylow_decomposition(parse_group("Z15")).items()} == {
        3: (3,),
        5: (5,),
    }
    assert {p: s.factors for p, s in sylow_decomposition(parse_group("Z6xZ4")).items()} == {
        2: (2, 4),
        3: (3,),
    }


def test_sylow_orders_multiply_to_group_order():
    for text in ("Z12", "Z30", "Z6xZ10", "Z8xZ9"):
        g = parse_group(text)
        parts = sylow_decomposition(g)
        prod = 1
        for s in parts.values():
            prod *= s.order
        assert prod == g.order
