import pytest

from cayrep.atlas import build_group
from cayrep.twisted import formula_check, parity_check, verify_twisted_family


@pytest.mark.parametrize("m,count", [(5, 1), (6, 1), (7, 1)])
def test_small_families(m, count):
    rep = verify_twisted_family(m)
    assert rep["pass"], [c for c in rep["checks"] if not c["pass"]]
    assert rep["count"] == count >= m // 4


def test_parity_invariant_exhaustive_on_sym5():
    g = build_group("sym:5")
    checked, bad = parity_check(g, g.parse("(1 2)(3 4)"), exhaustive=True)
    assert checked == 60 * 120 and bad == 0


def test_parity_invariant_fails_for_an_odd_twist():
    # with an odd t the twisted coset is even and does fix points
    g = build_group("sym:5")
    _, bad = parity_check(g, g.parse("(1 2)"), exhaustive=True)
    assert bad > 0


def test_conjugation_formula():
    g = build_group("sym:6")
    assert formula_check(g, g.parse("(1 2)(3 4)"), g.parse("(1 2)")) == 100


def test_m_out_of_range():
    with pytest.raises(ValueError):
        verify_twisted_family(4)


def test_graph_group_recorded_next_to_d2():
    five = verify_twisted_family(5)
    assert five["graph_aut_order"] == five["d2_order"] == 28800
    six = verify_twisted_family(6)
    # translations, inner automorphisms and inversion always preserve the class
    assert six["graph_aut_order"] % (2 * 720 * 720) == 0
    assert six["graph_aut_order"] <= six["d2_order"]
