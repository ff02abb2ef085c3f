import itertools
import math

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import DiGraphMatcher

from cayrep.atlas import build_group, d2_group, left_perm, right_perm
from cayrep.autgroup import (NORMAL_TYPE, SYMMETRIC_TYPE, aut_group, classify_type, ir_aut,
                             minimal_block, seed_group, twin_subgroup)
from cayrep.cayley import CayleyGraph, is_automorphism, named_connection
from cayrep.errors import BudgetExceeded
from cayrep.perm import PermGroup

S5 = build_group("sym:5")


def unions(g):
    cls = g.classes[1:]
    for r in range(1, len(cls) + 1):
        for combo in itertools.combinations(cls, r):
            yield frozenset(m for c in combo for m in c.members)


def brute_force_count(gam):
    return sum(1 for p in itertools.permutations(range(gam.n)) if is_automorphism(gam, p))


def networkx_count(gam, limit=5000):
    d = nx.DiGraph()
    d.add_nodes_from(range(gam.n))
    for u in range(gam.n):
        for v in gam.out_neighbors(u).tolist():
            d.add_edge(u, v)
    count = 0
    for _ in DiGraphMatcher(d, d).isomorphisms_iter():
        count += 1
        if count > limit:
            return None
    return count


def test_brute_force_agrees_on_sym3():
    g = build_group("sym:3")
    for x in unions(g):
        gam = CayleyGraph(g, x)
        assert aut_group(gam).order() == brute_force_count(gam)


def test_refinement_search_matches_networkx_on_sym4():
    g = build_group("sym:4")
    checked = 0
    for x in unions(g):
        gam = CayleyGraph(g, x)
        # VF2 enumerates automorphisms one by one, so keep to the small cases
        if len(x) > 9:
            continue
        grp, _ = ir_aut(gam)
        if grp.order() > 5000:
            continue
        assert grp.order() == networkx_count(gam)
        checked += 1
    assert checked == 4


@pytest.mark.parametrize("spec", ["alt:5", "psl2:7"])
def test_filter_and_refinement_agree_on_simple_groups(spec):
    g = build_group(spec)
    gl, gr = seed_group(g)
    for cls in g.classes[1:4]:
        gam = CayleyGraph(g, cls.members)
        res = aut_group(gam)
        assert res.strategy == "simple-d2-filter"
        grp, _ = ir_aut(gam, PermGroup(g.n, gl + gr))
        assert grp.order() == res.order()
        assert all(res.contains(s) for s in grp.generators)


def test_transposition_graph_is_d2():
    gam = CayleyGraph(S5, named_connection(S5, "transpositions"))
    res = aut_group(gam)
    assert res.strategy == "refinement-backtrack"
    assert res.order() == 28800 == d2_group(S5).order()
    for s in res.generators:
        assert is_automorphism(gam, s)


def test_unseeded_search_finds_same_group():
    gam = CayleyGraph(S5, named_connection(S5, "transpositions"))
    grp, stats = ir_aut(gam)
    assert grp.order() == 28800
    assert stats["found_generators"] > 0


def test_wreath_certificate_for_complete_bipartite():
    gam = CayleyGraph(S5, named_connection(S5, "odd"))
    res = aut_group(gam)
    assert res.strategy == "symmetric-wreath"
    assert res.group is None
    assert res.order() == math.factorial(60) ** 2 * 2
    assert res.order_json() == {"wreath": {"cell": "60!", "cells": 2, "quotient_order": 2}}
    assert len(twin_subgroup(gam)) == 60
    swap = list(range(S5.n))
    a5 = sorted(twin_subgroup(gam))
    swap[a5[1]], swap[a5[2]] = a5[2], a5[1]
    assert res.contains(swap)
    assert is_automorphism(gam, swap)
    mixed = list(range(S5.n))
    odd = S5.parse("(1 2)")
    mixed[a5[1]], mixed[odd] = odd, a5[1]
    assert not res.contains(mixed)
    assert not is_automorphism(gam, mixed)


def test_complete_and_empty():
    g = build_group("alt:5")
    full = CayleyGraph(g, range(1, g.n))
    res = aut_group(full)
    assert res.strategy == "complete-empty"
    assert res.order() == math.factorial(60)
    assert aut_group(CayleyGraph(g, [])).strategy == "complete-empty"


def test_types_and_minimal_blocks():
    odd = aut_group(CayleyGraph(S5, named_connection(S5, "odd")))
    tag = classify_type(odd, S5)
    assert tag.kind == SYMMETRIC_TYPE
    assert tag.block == S5.socle
    tr = aut_group(CayleyGraph(S5, named_connection(S5, "transpositions")))
    tag = classify_type(tr, S5)
    assert tag.kind == NORMAL_TYPE
    assert minimal_block(tr, S5) == S5.socle


def test_node_budget():
    gam = CayleyGraph(S5, named_connection(S5, "transpositions"))
    with pytest.raises(BudgetExceeded):
        ir_aut(gam, node_budget=3)


def test_right_translations_always_inside():
    gam = CayleyGraph(S5, named_connection(S5, "transpositions"))
    res = aut_group(gam)
    for s in S5.gen_indices:
        assert res.contains(right_perm(S5, s))
        assert res.contains(left_perm(S5, s))
