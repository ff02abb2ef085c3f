"""Bundled verification suites: property checks and the simple-group sweep.

Every suite is seeded and returns a plain dict report so the CLI can dump it
as JSON and the tests can assert on it.
"""

from __future__ import annotations

import itertools
import math
import random
import time

import numpy as np

from . import perm as P
from .atlas import (IndexedGroup, aut_of, build_group, d2_group, diagonal_subgroup,
                    fgs_involution)
from .cayley import CayleyGraph, is_automorphism, is_central
from .gbase import (Membership, RegSubgroup, _inverse, are_conjugate_regular,
                    certificate_membership, g_base, left_regular, right_regular)
from .perm import PermGroup, conjugator_from_isomorphism

DEFAULT_SEED = 20240611
SEMIREGULAR_GROUPS = ("sym:3", "alt:4", "sym:4", "alt:5", "psl2:5")


# -- semiregular conjugators -------------------------------------------------------

def random_semiregular_pair(rng: random.Random):
    """Two semiregular copies of one group on the same points, plus the
    generator correspondence between them.

    Each orbit carries the right regular action twisted by a random inner
    automorphism, and the whole point set is shuffled.
    """
    g = build_group(rng.choice(SEMIREGULAR_GROUPS))
    copies = rng.randint(1, 120 // g.n)
    deg = copies * g.n

    def build():
        twists = [rng.randrange(g.n) for _ in range(copies)]
        shuffle = list(range(deg))
        rng.shuffle(shuffle)
        gens = []
        for s in g.gen_indices:
            img = [0] * deg
            for j, c in enumerate(twists):
                sc = g.conj(s, c)
                for y in range(g.n):
                    img[shuffle[j * g.n + y]] = shuffle[j * g.n + g.mult(y, sc)]
            gens.append(tuple(img))
        return PermGroup(deg, gens)

    k, m = build(), build()
    return k, m, list(m.generators)


def conjugator_suite(trials: int = 100, seed: int = DEFAULT_SEED) -> dict:
    rng = random.Random(seed)
    passed = 0
    for _ in range(trials):
        k, m, f = random_semiregular_pair(rng)
        x = conjugator_from_isomorphism(k, m, f)
        passed += all(P.conj(s, x) == fs for s, fs in zip(k.generators, f))
    return {"suite": "semiregular-conjugator", "passed": passed, "trials": trials,
            "pass": passed == trials}


# -- translations and inversion ------------------------------------------------------

def random_central_set(g: IndexedGroup, rng: random.Random) -> frozenset[int]:
    """A nonempty union of nontrivial conjugacy classes, chosen by coin flips."""
    classes = g.classes[1:]
    while True:
        pick = [c for c in classes if rng.random() < 0.5]
        if pick:
            return frozenset(itertools.chain.from_iterable(c.members for c in pick))


def translation_suite(per_group: int = 20, seed: int = DEFAULT_SEED,
                      groups=("sym:5", "alt:5")) -> dict:
    """Left translations always preserve central graphs; inversion does iff
    the connection set is inverse-closed."""
    rng = random.Random(seed)
    passed = total = 0
    for spec in groups:
        g = build_group(spec)
        sigma = g.inv_arr
        for _ in range(per_group):
            x = random_central_set(g, rng)
            gam = CayleyGraph(g, x)
            lefts = all(is_automorphism(gam, g.mul_arr(g.inv(s), np.arange(g.n)))
                        for s in g.gen_indices)
            inv_ok = is_automorphism(gam, sigma) == gam.is_undirected
            total += 1
            passed += bool(lefts and inv_ok and is_central(g, x))
    return {"suite": "translations", "passed": passed, "trials": total,
            "pass": passed == total}


# -- FGS involutions and diagonal subgroups ------------------------------------------------

def involution_suite(per_group: int = 20, seed: int = DEFAULT_SEED) -> dict:
    rng = random.Random(seed)
    found = {}
    for spec in ("alt:5", "alt:6", "psl2:7", "psl2:11"):
        g = build_group(spec)
        t = fgs_involution(g)
        found[spec] = g.fmt(t)
    passed = total = 0
    for spec in ("alt:5", "psl2:7"):
        g = build_group(spec)
        aut = aut_of(g)
        for _ in range(per_group):
            tau = aut.array(rng.randrange(len(aut)))
            total += 1
            passed += not diagonal_subgroup(g, tau).is_semiregular()
    return {"suite": "fgs-diagonal", "involutions": found, "passed": passed,
            "trials": total, "pass": passed == total and len(found) == 4}


def d2_sizes(specs=("alt:5", "sym:5", "psl2:7", "alt:6", "sym:6")) -> dict:
    """|D(2,G)| from the chain against 2 n |aut G| and the 2 n^2 log2 n bound."""
    rows = []
    for spec in specs:
        g = build_group(spec)
        aut = aut_of(g)
        order = d2_group(g, aut).order()
        bound = 2 * g.n ** 2 * math.log2(g.n)
        rows.append({"group": spec, "n": g.n, "aut": len(aut), "d2": order,
                     "formula": 2 * g.n * len(aut),
                     "bound": bound, "pass": order == 2 * g.n * len(aut) <= bound})
    return {"suite": "d2-sizes", "rows": rows, "pass": all(r["pass"] for r in rows)}


def property_suites(seed: int = DEFAULT_SEED) -> dict:
    reports = [conjugator_suite(seed=seed), translation_suite(seed=seed),
               involution_suite(seed=seed)]
    return {"suites": reports, "pass": all(r["pass"] for r in reports)}


# -- simple groups: every union of classes ------------------------------------------------

def class_unions(g: IndexedGroup, proper: bool = True):
    classes = g.classes[1:]
    for r in range(1, len(classes) + 1):
        for combo in itertools.combinations(range(len(classes)), r):
            if proper and r == len(classes):
                continue
            yield combo, frozenset(itertools.chain.from_iterable(
                classes[i].members for i in combo))


def simple_sweep(spec: str) -> dict:
    """G-bases for every central connection set of a simple group.

    Reports b for each union, asserts b <= 2, and b = 1 when X = X^-1; also
    checks that a G_l -> G_r conjugator exists exactly when b = 1.
    """
    g = build_group(spec)
    if not g.is_simple:
        raise ValueError(f"{spec} is not simple")
    rows = []
    start = time.perf_counter()
    for combo, x in class_unions(g):
        t0 = time.perf_counter()
        gam = CayleyGraph(g, x)
        gb = g_base(gam)
        member = certificate_membership(gb.k)
        res = are_conjugate_regular(member, g, left_regular(g), right_regular(g), gam)
        ok = gb.b <= 2 and (gb.b == 1) == bool(res)
        if gam.is_undirected:
            ok = ok and gb.b == 1
        rows.append({"classes": list(combo), "size": len(x), "b": gb.b,
                     "undirected": gam.is_undirected, "k_order": gb.k.order(),
                     "left_right_conjugator": bool(res),
                     "seconds": round(time.perf_counter() - t0, 3), "pass": ok})
    return {"suite": "simple-sweep", "group": spec, "rows": rows,
            "max_b": max(r["b"] for r in rows),
            "seconds": round(time.perf_counter() - start, 2),
            "pass": all(r["pass"] for r in rows)}


# -- conjugacy against the representation correspondence ------------------------------------

def _carrying(g, aut, x1: np.ndarray, x2: np.ndarray):
    """Indices w with phi_w[x1] = x2 as sets."""
    target = np.zeros(g.n, dtype=bool)
    target[x2] = True
    for k, rep in enumerate(aut.outer):
        ok = np.ones(g.n, dtype=bool)
        for y in rep[x1].tolist():
            ok &= target[g.conjugates(int(y))]
        for c in np.nonzero(ok)[0].tolist():
            yield k * g.n + c


def _induced_automorphism(gamma, aut, w, f01, f02inv, probes) -> bool:
    for v in probes:
        pts = np.concatenate(([v], gamma.out_neighbors(v)))
        img = f02inv[aut.image(w, f01[pts])]
        if set(gamma.out_neighbors(int(img[0])).tolist()) != set(img[1:].tolist()):
            return False
    return is_automorphism(gamma, f02inv[aut.image(w, f01)])


def round_trip(gamma: CayleyGraph, member: Membership, h1: RegSubgroup,
               h2: RegSubgroup, probes: int = 4, seed: int = DEFAULT_SEED) -> dict:
    """Conjugacy in K versus: some automorphism phi carries X1 onto X2 and the
    induced vertex map f2^-1 . phi . f1 preserves every arc."""
    g = gamma.group
    res = are_conjugate_regular(member, g, h1, h2, gamma)
    xs = np.asarray(gamma.connection, dtype=np.int64)
    f01, f02 = h1.point_map(g), h2.point_map(g)
    f02inv = _inverse(f02)
    aut = aut_of(g)
    rng = np.random.default_rng(seed)
    pts = rng.choice(g.n, size=min(probes, g.n), replace=False).tolist()
    via_rep = any(_induced_automorphism(gamma, aut, w, f01, f02inv, pts)
                  for w in _carrying(g, aut, f01[xs], f02[xs]))
    return {"conjugate": bool(res), "representations": via_rep,
            "agree": bool(res) == via_rep}
