import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cayrep.atlas import build_group, inversion_perm, left_perm, regular_actions, right_perm
from cayrep.cayley import (CayleyGraph, associated_representation, cayley_isomorphic,
                           find_isomorphism, is_automorphism, is_central,
                           named_connection, parse_connection)
from cayrep.errors import IdentityInConnection, InvalidSpec, NotIsomorphism

A5 = build_group("alt:5")
S5 = build_group("sym:5")


def classes_of(g, order):
    return [c for c in g.classes if c.element_order == order]


def test_arcs_follow_left_multiplication():
    g = S5
    x = named_connection(g, "transpositions")
    gam = CayleyGraph(g, x)
    u = g.parse("(1 2 3)")
    for v in gam.out_neighbors(u).tolist():
        assert g.mult(v, g.inv(u)) in x
        assert gam.is_arc(u, v)
    assert sorted(gam.in_neighbors(u).tolist()) == sorted(
        g.mult(g.inv(t), u) for t in x)
    assert gam.arc_count() == 120 * 10


def test_identity_rejected():
    with pytest.raises(IdentityInConnection):
        CayleyGraph(A5, [0, 1])


def test_named_and_parsed_connections():
    assert len(named_connection(S5, "odd")) == 60
    assert len(named_connection(A5, "involutions")) == 15
    x = parse_connection(S5, '{"classes": ["(1 2)"]}')
    assert x == named_connection(S5, "transpositions")
    y = parse_connection(S5, {"elements": ["(1 2)", "(2 3)"]})
    assert len(y) == 2 and not is_central(S5, y)
    for bad in ('[1]', '{"weird": 1}', "not json", '{"named": "nope"}'):
        with pytest.raises(InvalidSpec):
            parse_connection(S5, bad)


central_sets = st.lists(st.booleans(), min_size=6, max_size=6).filter(any)


@settings(max_examples=25, deadline=None)
@given(central_sets)
def test_left_translations_preserve_central_graphs(bits):
    g = S5
    x = frozenset(m for b, c in zip(bits, g.classes[1:]) if b for m in c.members)
    gam = CayleyGraph(g, x)
    for s in g.gen_indices:
        assert is_automorphism(gam, left_perm(g, s))
        assert is_automorphism(gam, right_perm(g, s))


def test_inversion_preserves_arcs_iff_inverse_closed():
    g = build_group("psl2:7")
    seven = classes_of(g, 7)[0]
    directed = CayleyGraph(g, seven.members)
    assert not directed.is_undirected
    assert not is_automorphism(directed, inversion_perm(g))
    both = CayleyGraph(g, set(seven.members) | {g.inv(x) for x in seven.members})
    assert both.is_undirected
    assert is_automorphism(both, inversion_perm(g))


def test_representation_of_right_and_left_translations():
    g = A5
    gam = CayleyGraph(g, classes_of(g, 5)[0].members)
    gl, gr = regular_actions(g)
    r = associated_representation(gam, gr, g.gen_indices)
    assert r.connection == gam.connection
    left = associated_representation(gam, gl, g.gen_indices)
    assert set(left.connection) == {g.inv(x) for x in gam.connection}


def test_searched_isomorphism_gives_equivalent_connection():
    g = A5
    gam = CayleyGraph(g, classes_of(g, 5)[0].members)
    gl, _ = regular_actions(g)
    images = find_isomorphism(gl, g)
    rep = associated_representation(gam, gl, images)
    assert cayley_isomorphic(g, gam.connection, rep.connection) is not None


def test_wrong_images_rejected():
    g = A5
    gam = CayleyGraph(g, classes_of(g, 3)[0].members)
    _, gr = regular_actions(g)
    with pytest.raises(NotIsomorphism):
        associated_representation(gam, gr, [g.gen_indices[0], g.gen_indices[0]])


def test_outer_automorphism_swaps_five_cycle_classes():
    g = A5
    c1, c2 = classes_of(g, 5)
    assert cayley_isomorphic(g, c1.members, c2.members) is not None
    assert cayley_isomorphic(g, c1.members, classes_of(g, 3)[0].members) is None


def test_automorphism_check_rejects_a_transposition_of_vertices():
    g = S5
    gam = CayleyGraph(g, named_connection(g, "transpositions"))
    p = list(range(g.n))
    p[1], p[2] = p[2], p[1]
    assert not is_automorphism(gam, p)
    assert is_automorphism(gam, np.arange(g.n))
