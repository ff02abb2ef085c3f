import random

import pytest

from cayrep import perm as P
from cayrep.atlas import aut_of, build_group, holomorph, right_perm
from cayrep.autgroup import aut_group
from cayrep.cayley import CayleyGraph, named_connection
from cayrep.errors import DegreeMismatch, NotEvenInvolution, NotOdd
from cayrep.gbase import (D2Membership, are_conjugate_regular, certificate_membership,
                          g_base, ht_subgroup, left_regular, normalizer_semiregular,
                          reg_enumerate_small, reg_via_socle, right_regular)
from cayrep.perm import PermGroup

A5 = build_group("alt:5")
S5 = build_group("sym:5")


def element_set(h):
    return frozenset(P.subgroup_closure(h.generators, degree=h.degree))


def test_right_regular_alone():
    k = PermGroup(A5.n, [right_perm(A5, s) for s in A5.gen_indices])
    subs = reg_enumerate_small(k, A5)
    assert len(subs) == 1
    assert element_set(subs[0]) == element_set(right_regular(A5))


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        reg_enumerate_small(PermGroup(5, []), A5)


def test_involution_graph_has_only_translations():
    gam = CayleyGraph(A5, named_connection(A5, "involutions"))
    k = aut_group(gam).group
    found = {element_set(h) for h in reg_enumerate_small(k, A5)}
    assert found == {element_set(left_regular(A5)), element_set(right_regular(A5))}


def test_normalizer_orders():
    # G simple: the normalizer of G_r is the holomorph
    n_simple = normalizer_semiregular(A5, A5.socle)
    assert n_simple.order() == holomorph(A5).order() == 60 * 120
    assert normalizer_semiregular(S5, S5.socle).order() == 60 ** 2 * 2 * 120


def test_socle_route_contains_right_regular():
    gam = CayleyGraph(S5, named_connection(S5, "odd"))
    k = aut_group(gam)
    member = certificate_membership(k)
    m = normalizer_semiregular(S5, S5.socle, member)
    subs = reg_via_socle(m, S5, member)
    gr = element_set(right_regular(S5))
    assert any(element_set(h) == gr for h in subs)
    for h in subs[:5]:
        assert h.group.is_regular()


def test_conjugacy_of_translations():
    g = A5
    member = D2Membership(g)
    same = are_conjugate_regular(member, g, right_regular(g), right_regular(g))
    assert same and P.is_identity(tuple(same.conjugator.tolist()))
    lr = are_conjugate_regular(member, g, left_regular(g), right_regular(g))
    assert lr
    assert lr.conjugator.tolist() == g.inv_arr.tolist()


def test_directed_graph_fuses_through_outer_automorphism():
    g = build_group("psl2:7")
    seven = [c for c in g.classes if c.element_order == 7][0]
    gb = g_base(CayleyGraph(g, seven.members))
    assert gb.b == 1
    assert gb.classes[0].contains_right_regular


def test_transposition_graph_has_two_classes():
    gb = g_base(CayleyGraph(S5, named_connection(S5, "transpositions")))
    assert gb.b == 2
    labels = sorted(c.rep.label for c in gb.classes)
    assert labels == ["G_r", "H_t[(1 2)(3 4)]"]
    assert all(all(c.in_k) for c in gb.classes)


def test_candidate_order_does_not_matter():
    gam = CayleyGraph(S5, named_connection(S5, "transpositions"))
    base = g_base(gam)
    rng = random.Random(3)

    def shuffled(xs):
        rng.shuffle(xs)
        return xs

    again = g_base(gam, order=shuffled)
    assert [c.connection for c in again.classes] == [c.connection for c in base.classes]


def test_ht_subgroup_checks_arguments():
    t = S5.parse("(1 2)(3 4)")
    x = S5.parse("(1 2)")
    with pytest.raises(NotEvenInvolution):
        ht_subgroup(S5, 0, x)
    with pytest.raises(NotEvenInvolution):
        ht_subgroup(S5, x, x)
    with pytest.raises(NotOdd):
        ht_subgroup(S5, t, S5.parse("(1 2 3)"))
    h = ht_subgroup(S5, t, x)
    assert h.group.is_regular()
    assert not h.contains(right_perm(S5, x), S5)


def test_ht_differs_from_right_regular_in_d2():
    t = S5.parse("(1 2)(3 4)")
    h = ht_subgroup(S5, t, S5.parse("(1 2)"))
    res = are_conjugate_regular(D2Membership(S5), S5, h, right_regular(S5), aut=aut_of(S5))
    assert not res
    assert res.automorphisms_considered == 120
