import math

import numpy as np
import pytest

from cayrep import perm as P
from cayrep.atlas import (aut_of, build_group, d2_group, diagonal_subgroup, fgs_involution,
                          holomorph, inversion_perm, left_perm, normal_subgroups_over,
                          normal_subset_closure, parse_group_spec, regular_actions, right_perm)
from cayrep.errors import ElementCapExceeded, InvalidSpec, UnsupportedGroup


def psl2_order(q):
    return q * (q * q - 1) // math.gcd(2, q - 1)


@pytest.mark.parametrize("spec,order", [
    ("sym:3", 6), ("sym:5", 120), ("alt:5", 60), ("alt:6", 360), ("sym:6", 720),
    ("psl2:4", psl2_order(4)), ("psl2:7", psl2_order(7)), ("psl2:8", psl2_order(8)),
    ("psl2:9", psl2_order(9)), ("psl2:11", psl2_order(11)),
])
def test_group_orders(spec, order):
    assert build_group(spec).n == order


def test_spec_errors():
    for bad in ("sym5", "foo:3", "sym:x", "psl2:6"):
        with pytest.raises(InvalidSpec):
            build_group(bad)
    with pytest.raises(ElementCapExceeded):
        build_group("sym:6", element_cap=100)
    assert parse_group_spec("alt:5").name == "alt:5"


@pytest.mark.parametrize("spec,sizes", [
    ("alt:5", [1, 12, 12, 15, 20]),
    ("sym:5", [1, 10, 15, 20, 20, 24, 30]),
    ("psl2:7", [1, 21, 24, 24, 42, 56]),
])
def test_class_sizes(spec, sizes):
    g = build_group(spec)
    assert sorted(c.size for c in g.classes) == sizes
    assert g.classes[0].members == (0,) or list(g.classes[0].members) == [0]


def test_identity_and_inverses():
    g = build_group("alt:5")
    assert P.is_identity(g.elements[0])
    idx = np.arange(g.n)
    assert (g.mul_arr(idx, g.inv_arr) == 0).all()
    a, b = 5, 17
    assert g.mult(a, b) == g.index[P.mul(g.elements[a], g.elements[b])]
    assert g.conj(a, b) == g.index[P.conj(g.elements[a], g.elements[b])]


def test_vectorized_lookup_without_table():
    g = build_group("sym:7")          # above the table limit
    rng = np.random.default_rng(1)
    a = rng.integers(0, g.n, 50)
    b = rng.integers(0, g.n, 50)
    got = g.mul_arr(a, b)
    want = [g.index[P.mul(g.elements[x], g.elements[y])] for x, y in zip(a, b)]
    assert got.tolist() == want


@pytest.mark.parametrize("spec,aut_order,out", [
    ("alt:5", 120, 2), ("sym:5", 120, 1), ("psl2:7", 336, 2), ("alt:6", 1440, 4),
    ("sym:6", 1440, 2), ("psl2:8", 1512, 3), ("psl2:11", 1320, 2), ("sym:3", 6, 1),
])
def test_automorphism_counts(spec, aut_order, out):
    aut = aut_of(build_group(spec))
    assert len(aut) == aut_order
    assert aut.out_order == out


def test_automorphisms_are_homomorphisms():
    g = build_group("alt:6")
    aut = aut_of(g)
    idx = np.arange(g.n)
    for w in range(0, len(aut), 97):
        phi = aut.array(w)
        assert len(set(phi.tolist())) == g.n
        for s in g.gen_indices:
            assert (phi[g.mul_arr(idx, s)] == g.mul_arr(phi, phi[s])).all()


def test_socle_and_simplicity():
    assert build_group("alt:5").is_simple
    s5 = build_group("sym:5")
    assert not s5.is_simple
    assert len(s5.socle) == 60
    assert len(normal_subgroups_over(s5, s5.socle)) == 2


def test_normal_closure_of_a_transposition_is_its_class():
    g = build_group("sym:5")
    t = g.parse("(1 2)")
    assert len(normal_subset_closure(g, [t])) == 10


def test_translations_are_homomorphisms():
    g = build_group("sym:4")
    a, b = g.parse("(1 2)"), g.parse("(2 3 4)")
    ab = g.mult(a, b)
    assert P.mul(left_perm(g, a), left_perm(g, b)) == left_perm(g, ab)
    assert P.mul(right_perm(g, a), right_perm(g, b)) == right_perm(g, ab)
    gl, gr = regular_actions(g)
    assert gl.is_regular() and gr.is_regular()
    # left and right translations commute
    assert P.mul(left_perm(g, a), right_perm(g, b)) == P.mul(right_perm(g, b), left_perm(g, a))


def test_d2_and_holomorph_orders():
    g = build_group("alt:5")
    assert holomorph(g).order() == 60 * 120
    assert d2_group(g).order() == 2 * 60 * 120
    sigma = inversion_perm(g)
    assert P.is_identity(P.mul(sigma, sigma))


@pytest.mark.parametrize("spec", ["alt:5", "alt:6", "psl2:7", "psl2:11"])
def test_fgs_involution(spec):
    g = build_group(spec)
    aut = aut_of(g)
    t = fgs_involution(g, aut)
    assert g.element_orders[t] == 2
    # |aut| = |C_aut(t)| |Inn| / |C_Inn(t)|
    cls = g.classes[int(g.class_of[t])]
    assert aut.centralizer_count(t) * cls.size == len(aut)


def test_fgs_needs_simple():
    with pytest.raises(UnsupportedGroup):
        fgs_involution(build_group("sym:5"))


def test_diagonal_subgroup_of_identity_is_not_semiregular():
    g = build_group("alt:5")
    diag = diagonal_subgroup(g, np.arange(g.n))
    # x_l x_r fixes the identity vertex for every x
    assert not diag.is_semiregular()
    assert diag.order() == 60
