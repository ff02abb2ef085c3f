import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from cayrep import perm as P
from cayrep.errors import CapExceeded, NotIsomorphism, OrbitMismatch
from cayrep.perm import BlockPartition, PermGroup


def perms(n):
    return st.permutations(list(range(n))).map(tuple)


@given(perms(7), perms(7), perms(7))
def test_mul_is_associative(p, q, r):
    assert P.mul(P.mul(p, q), r) == P.mul(p, P.mul(q, r))


@given(perms(9))
def test_inverse_and_order(p):
    assert P.is_identity(P.mul(p, P.inv(p)))
    assert P.is_identity(P.power(p, P.perm_order(p)))
    assert P.power(p, -1) == P.inv(p)


@given(perms(8))
def test_cycle_text_round_trip(p):
    assert P.parse_perm(P.format_perm(p), 8) == p


def test_composition_is_left_to_right():
    a = P.parse_perm("(1 2)", 3)
    b = P.parse_perm("(2 3)", 3)
    # first (1 2) then (2 3): 1 -> 2 -> 3
    assert P.mul(a, b)[0] == 2
    assert P.format_perm(P.mul(a, b)) == "(1 3 2)"


def test_parse_rejects_bad_text():
    with pytest.raises(ValueError):
        P.parse_perm("(1 1)", 3)
    with pytest.raises(ValueError):
        P.parse_perm("(0 1)", 3)
    assert P.parse_perm("()", 4) == (0, 1, 2, 3)


def test_parity_and_cycle_type():
    p = P.parse_perm("(1 2 3)(4 5)", 6)
    assert P.cycle_type(p) == (3, 2)
    assert P.parity(p) == 1
    assert P.perm_order(p) == 6
    assert P.fixed_points(p) == [5]


def sym_gens(n):
    return [P.from_cycles(n, [(0, 1)]), P.from_cycles(n, [tuple(range(n))])]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_symmetric_orders(n):
    assert PermGroup(n, sym_gens(n)).order() == math.factorial(n)


def test_alternating_membership():
    a5 = PermGroup(5, [P.parse_perm("(1 2 3)", 5), P.parse_perm("(1 2 3 4 5)", 5)])
    assert a5.order() == 60
    assert a5.contains(P.parse_perm("(1 2)(3 4)", 5))
    assert not a5.contains(P.parse_perm("(1 2)", 5))
    elems = list(a5.enumerate_elements())
    assert len(set(elems)) == 60
    with pytest.raises(CapExceeded):
        list(a5.enumerate_elements(cap=10))


def test_trivial_group():
    g = PermGroup(4, [])
    assert g.order() == 1
    assert g.contains((0, 1, 2, 3))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 7))
def test_chain_order_matches_closure(seed, n):
    rng = random.Random(seed)
    gens = []
    for _ in range(rng.randint(1, 3)):
        p = list(range(n))
        rng.shuffle(p)
        gens.append(tuple(p))
    closure = P.subgroup_closure(gens, degree=n)
    grp = PermGroup(n, gens)
    assert grp.order() == len(closure)
    assert all(grp.contains(x) for x in list(closure)[:20])


def test_prescribed_base_is_respected():
    grp = PermGroup(6, sym_gens(6), base=[3, 1])
    assert grp.base[:2] == [3, 1]
    for s in grp.strong_generators(1):
        assert s[3] == 3


def test_large_degree_regular_group():
    # right regular sym 7 on 5040 points goes through the randomized chain
    elems = sorted(P.subgroup_closure(sym_gens(7), degree=7))
    index = {e: i for i, e in enumerate(elems)}
    gens = [tuple(index[P.mul(e, s)] for e in elems) for s in sym_gens(7)]
    grp = PermGroup(len(elems), gens)
    assert grp.order() == 5040
    assert grp.is_regular()


def test_orbits_and_blocks():
    g = [P.parse_perm("(1 2)(3 4)", 6), P.parse_perm("(1 3)(2 4)", 6)]
    part = P.orbits(g, 6)
    assert sorted(map(sorted, part.cells)) == [[0, 1, 2, 3], [4], [5]]
    pairs = BlockPartition.from_cells([[0, 1], [2, 3], [4], [5]], 6)
    assert P.is_block_partition(g, pairs)
    bad = BlockPartition.from_cells([[0, 2], [1, 4], [3], [5]], 6)
    assert not P.is_block_partition(g, bad)


def test_conjugator_from_isomorphism():
    c4 = PermGroup(8, [P.parse_perm("(1 2 3 4)(5 6 7 8)", 8)])
    other = PermGroup(8, [P.parse_perm("(1 5 2 6)(3 7 4 8)", 8)])
    x = P.conjugator_from_isomorphism(c4, other, other.generators)
    assert P.conj(c4.generators[0], x) == other.generators[0]


def test_conjugator_errors():
    c4 = PermGroup(8, [P.parse_perm("(1 2 3 4)(5 6 7 8)", 8)])
    c2 = PermGroup(8, [P.parse_perm("(1 2)(3 4)(5 6)(7 8)", 8)])
    with pytest.raises(OrbitMismatch):
        P.conjugator_from_isomorphism(c4, c2, c2.generators)
    c4b = PermGroup(8, [P.parse_perm("(1 2 3 4)(5 6 7 8)", 8)])
    with pytest.raises(NotIsomorphism):
        # a generator of order 4 cannot go to one of order 2
        P.conjugator_from_isomorphism(c4, c4b, [P.parse_perm("(1 3)(2 4)(5 7)(6 8)", 8)])
