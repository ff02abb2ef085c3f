from cayrep.verify import (conjugator_suite, d2_sizes, involution_suite, round_trip,
                           simple_sweep, translation_suite)
from cayrep.atlas import build_group
from cayrep.autgroup import aut_group
from cayrep.cayley import CayleyGraph, named_connection
from cayrep.gbase import certificate_membership, ht_subgroup, left_regular, right_regular


def test_suites_small():
    assert conjugator_suite(trials=10)["passed"] == 10
    assert translation_suite(per_group=5)["passed"] == 10
    assert involution_suite(per_group=3)["pass"]


def test_d2_sizes_small():
    rep = d2_sizes(("alt:5", "sym:5"))
    assert [r["d2"] for r in rep["rows"]] == [14400, 28800]


def test_sweep_rows_cover_every_proper_union():
    rep = simple_sweep("alt:5")
    assert len(rep["rows"]) == 14
    assert rep["max_b"] == 1


def test_round_trip_on_transposition_graph():
    g = build_group("sym:5")
    gam = CayleyGraph(g, named_connection(g, "transpositions"))
    member = certificate_membership(aut_group(gam))
    ht = ht_subgroup(g, g.parse("(1 2)(3 4)"), g.parse("(1 2)"))
    pairs = [(left_regular(g), right_regular(g)), (ht, right_regular(g))]
    got = [round_trip(gam, member, a, b) for a, b in pairs]
    assert [r["conjugate"] for r in got] == [True, False]
    assert all(r["agree"] for r in got)
