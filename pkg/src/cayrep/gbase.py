"""Regular subgroups of K = aut(cay(G, X)) up to K-conjugacy.

Two regular subgroups isomorphic to G are conjugate in K exactly when their
associated Cayley representations are equivalent under aut(G), and then a
conjugator fixing the identity vertex has the form f1 . phi . f2^-1.  All
conjugacy tests here go through that correspondence, so the cost is driven by
|aut(G)| rather than by |K|.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import perm as P
from .atlas import (AutSet, IndexedGroup, _gens_of, aut_of, generating_pair,
                    extend_generator_map, left_perm, right_perm)
from .autgroup import (NORMAL_TYPE, AutResult, TypeTag, aut_group, classify_type,
                       coset_partition)
from .cayley import (CayleyGraph, _PointGroup, associated_representation,
                     find_isomorphism, point_bijection)
from .errors import (BudgetExceeded, CapExceeded, DegreeMismatch, NotEvenInvolution,
                     NotIsomorphism, NotOdd, UnsupportedGroup)
from .perm import PermGroup

log = logging.getLogger(__name__)

ELEMENT_CAP = 10**6
PAIR_CAP = 10**7
SCREEN_SEED = 7


def _inverse(arr: np.ndarray) -> np.ndarray:
    out = np.empty_like(arr)
    out[arr] = np.arange(len(arr), dtype=arr.dtype)
    return out


@dataclass
class RegSubgroup:
    """A regular subgroup with generator images witnessing H = G.

    ``images[i]`` is f(generators[i]) in G; ``f0`` sends a point to the group
    element of the unique member of H mapping point 0 there.
    """
    generators: list[P.Perm]
    images: list[int]
    label: str
    f0: np.ndarray | None = None
    orbit: int = -1
    _group: PermGroup | None = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return len(self.generators[0])

    @property
    def group(self) -> PermGroup:
        if self._group is None:
            self._group = PermGroup(self.degree, self.generators)
        return self._group

    def point_map(self, g: IndexedGroup) -> np.ndarray:
        if self.f0 is None:
            self.f0 = point_bijection(self.group, g, self.images)
        return self.f0

    def contains(self, p, g: IndexedGroup) -> bool:
        """Membership using regularity: compare with the member moving 0 to p(0)."""
        f0 = self.point_map(g)
        f0inv = _inverse(f0)
        p = np.asarray(p, dtype=np.int64)
        member = f0inv[g.mul_arr(f0, int(f0[p[0]]))]
        return bool((member == p).all())

    def fingerprint(self) -> tuple:
        return tuple(self.f0.tolist()) if self.f0 is not None else tuple(self.generators)


def right_regular(g: IndexedGroup) -> RegSubgroup:
    return RegSubgroup([right_perm(g, s) for s in g.gen_indices], list(g.gen_indices),
                       "G_r", f0=np.arange(g.n, dtype=np.int64))


def left_regular(g: IndexedGroup) -> RegSubgroup:
    return RegSubgroup([left_perm(g, s) for s in g.gen_indices], list(g.gen_indices),
                       "G_l", f0=g.inv_arr.copy())


# -- membership oracles ------------------------------------------------------------------

class Membership:
    """Decides p in K.  ``screen`` may cheaply rule out conjugators early."""

    def __init__(self, fn: Callable[[Sequence[int]], bool], name: str = "oracle"):
        self._fn = fn
        self.name = name

    def __call__(self, p) -> bool:
        return bool(self._fn(p))

    def screen(self, g, f01, f02inv, rep) -> np.ndarray | None:
        return None


def chain_membership(k: PermGroup) -> Membership:
    return Membership(lambda p: k.contains(tuple(int(v) for v in p)), "chain")


def certificate_membership(res: AutResult) -> Membership:
    if res.group is not None:
        return chain_membership(res.group)
    return Membership(res.contains, "certificate")


class D2Membership(Membership):
    """Membership in D(2,G) = <sigma> . aut(G) . G_r, decided structurally.

    p is in D(2,G) iff q(x) = p(x) p(e)^-1 is an automorphism of G or becomes
    one after precomposing with inversion.
    """

    def __init__(self, g: IndexedGroup, samples: int = 3):
        self.g = g
        self.name = "d2-structural"
        rng = random.Random(SCREEN_SEED)
        self._samples = [(rng.randrange(g.n), s) for s in g.gen_indices
                         for _ in range(samples)]

    def _is_hom(self, q: np.ndarray) -> bool:
        g = self.g
        idx = np.arange(g.n)
        if q[0] != 0:
            return False
        for s in g.gen_indices:
            if not (q[g.mul_arr(idx, s)] == g.mul_arr(q, int(q[s]))).all():
                return False
        return True

    def __call__(self, p) -> bool:
        g = self.g
        p = np.asarray(p, dtype=np.int64)
        q = g.mul_arr(p, g.inv(int(p[0])))
        return self._is_hom(q) or self._is_hom(q[g.inv_arr])

    def screen(self, g, f01, f02inv, rep):
        """Test a few homomorphism relations for every inner twist at once."""
        def values(a):
            return f02inv[g.conjugates(int(rep[f01[a]]))]

        ok_plain = np.ones(g.n, dtype=bool)
        ok_inv = np.ones(g.n, dtype=bool)
        inv = g.inv
        for x, s in self._samples:
            xs = g.mult(x, s)
            ok_plain &= values(xs) == g.mul_arr(values(x), values(s))
            ok_inv &= values(inv(xs)) == g.mul_arr(values(inv(x)), values(inv(s)))
        return ok_plain | ok_inv


# -- conjugacy through automorphisms ----------------------------------------------------

@dataclass
class ConjugacyResult:
    conjugator: np.ndarray | None
    automorphisms_considered: int
    full_checks: int

    def __bool__(self):
        return self.conjugator is not None


def are_conjugate_regular(member: Membership, g: IndexedGroup, h1: RegSubgroup,
                          h2: RegSubgroup, gamma: CayleyGraph | None = None,
                          aut: AutSet | None = None) -> ConjugacyResult:
    """First conjugator f1 . phi . f2^-1 lying in K, scanning aut(G) in order.

    With a graph, phi must also carry the connection set associated with h1 to
    the one associated with h2.
    """
    aut = aut or aut_of(g)
    n = g.n
    f01 = h1.point_map(g)
    f02 = h2.point_map(g)
    f02inv = _inverse(f02)
    if gamma is not None:
        xs = np.asarray(gamma.connection, dtype=np.int64)
        x1 = f01[xs]
        target = np.zeros(n, dtype=bool)
        target[f02[xs]] = True
    checks = 0
    for k, rep in enumerate(aut.outer):
        ok = np.ones(n, dtype=bool)
        if gamma is not None:
            for y in rep[x1].tolist():
                ok &= target[g.conjugates(int(y))]
                if not ok.any():
                    break
        if ok.any():
            sm = member.screen(g, f01, f02inv, rep)
            if sm is not None:
                ok &= sm
        base = rep[f01]
        for c in np.nonzero(ok)[0].tolist():
            checks += 1
            img = base if c == 0 else g.conj_arr(base, c)
            cand = f02inv[img]
            if member(cand):
                _check_conjugates(g, h1, h2, cand)
                return ConjugacyResult(cand, k * n + c + 1, checks)
    return ConjugacyResult(None, len(aut), checks)


def _check_conjugates(g, h1, h2, cand):
    cinv = _inverse(cand)
    for s in h1.generators:
        s = np.asarray(s, dtype=np.int64)
        if not h2.contains(cand[s[cinv]], g):
            raise AssertionError("conjugator does not carry h1 onto h2")


# -- exhaustive search in a small K ---------------------------------------------------

def _perm_orders(rows: np.ndarray) -> np.ndarray:
    n = rows.shape[1]
    ident = np.arange(n)
    orders = np.zeros(len(rows), dtype=np.int64)
    cur = rows.copy()
    e = 1
    while True:
        done = (orders == 0) & (cur == ident).all(axis=1)
        orders[done] = e
        if (orders > 0).all():
            return orders
        cur = np.take_along_axis(rows, cur, axis=1)
        e += 1


def _closure_fpf(gens: list[P.Perm], n: int) -> list[P.Perm] | None:
    """Elements of <gens>, or None on a fixed point or more than n elements."""
    e = P.identity(n)
    seen = {e}
    elems = [e]
    for x in elems:
        for s in gens:
            y = P.mul(x, s)
            if y in seen:
                continue
            if any(y[i] == i for i in range(n)):
                return None
            seen.add(y)
            elems.append(y)
            if len(elems) > n:
                return None
    return elems


def _class_reps(rows: np.ndarray, members: np.ndarray, gens: list[P.Perm]) -> list[int]:
    """One row index per orbit of conjugation by ``gens`` on ``members``."""
    key = {rows[i].tobytes(): i for i in members.tolist()}
    parent = {i: i for i in members.tolist()}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s in gens:
        s = np.asarray(s, dtype=rows.dtype)
        sinv = _inverse(s)
        conj = s[rows[members][:, sinv]]
        for i, row in zip(members.tolist(), conj):
            j = key[row.tobytes()]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return sorted({find(i) for i in members.tolist()})


def reg_enumerate_small(k: PermGroup, g: IndexedGroup, cap: int | None = None,
                        pair_cap: int = PAIR_CAP) -> list[RegSubgroup]:
    """Every regular subgroup of k isomorphic to g.

    Seeds are pairs of fixed-point-free elements matching the profile of g's
    generating pair; the first runs over k-class representatives only and the
    orbits of the hits under conjugation by k fill in the rest.  ``orbit``
    on each result records which k-class it came from.
    """
    n = g.n
    cap = cap or ELEMENT_CAP
    if k.degree != n:
        raise DegreeMismatch(f"k has degree {k.degree}, |G| = {n}")
    if k.order() > cap:
        raise CapExceeded("elements of K", cap, k.order())
    dt = np.int16 if n < 2**15 else np.int32
    rows = np.asarray(list(k.enumerate_elements(cap)), dtype=dt)
    ident = np.arange(n)
    fpf = (rows != ident).all(axis=1)
    orders = _perm_orders(rows)
    a, b = generating_pair(g)
    oa, ob, oab = (g.element_orders[a], g.element_orders[b],
                   g.element_orders[g.mult(a, b)])
    cand_a = np.nonzero(fpf & (orders == oa))[0]
    cand_b = np.nonzero(fpf & (orders == ob))[0] if b else np.asarray([0])
    reps = _class_reps(rows, cand_a, k.generators)
    if len(reps) * len(cand_b) > pair_cap:
        raise CapExceeded("seed pairs", pair_cap, len(reps) * len(cand_b))
    log.info("closure route: %d of %d elements of K, %d of %d seed pairs",
             len(rows), cap, len(reps) * len(cand_b), pair_cap)
    found: list[RegSubgroup] = []
    seen: dict[frozenset, int] = {}
    for ra in reps:
        pa = rows[ra].astype(np.int64)
        if b:
            prods = rows[cand_b][:, pa]      # first a', then b'
            keep = cand_b[_perm_orders(prods) == oab]
        else:
            keep = cand_b
        xa = tuple(int(v) for v in rows[ra])
        for rb in keep.tolist():
            xb = tuple(int(v) for v in rows[rb])
            gens = [xa, xb] if b else [xa]
            elems = _closure_fpf(gens, n)
            if elems is None or len(elems) != n:
                continue
            fp = frozenset(elems)
            if fp in seen:
                continue
            h = PermGroup(n, gens)
            pg = _PointGroup(h)
            phi = extend_generator_map(g, pg, a, b, xa[0], xb[0] if b else 0)
            if phi is None:
                continue
            orbit_id = len({r.orbit for r in found})
            for sub in _conjugation_orbit(gens, [a, b] if b else [a], k.generators):
                fps = frozenset(_closure_fpf(sub.generators, n))
                if fps in seen:
                    continue
                seen[fps] = orbit_id
                sub.orbit = orbit_id
                sub.label = "closure-route"
                found.append(sub)
    log.info("closure route: %d regular subgroups in %d classes",
             len(found), len({r.orbit for r in found}))
    return found


def _conjugation_orbit(gens: list[P.Perm], images: list[int],
                       kgens: list[P.Perm]) -> list[RegSubgroup]:
    """Conjugates of <gens> under <kgens>, keyed by the conjugated generators.

    Distinct generator tuples can span the same subgroup; callers dedupe by
    element set.
    """
    start = tuple(gens)
    out = {start: None}
    queue = [start]
    n = len(gens[0])
    sets = {frozenset(_closure_fpf(list(start), n))}
    for cur in queue:
        for s in kgens:
            nxt = tuple(P.conj(x, s) for x in cur)
            if nxt in out:
                continue
            fs = frozenset(_closure_fpf(list(nxt), n))
            if fs in sets:
                continue
            sets.add(fs)
            out[nxt] = None
            queue.append(nxt)
    return [RegSubgroup(list(t), list(images), "closure-route") for t in queue]


# -- the socle route -----------------------------------------------------------------

@dataclass
class SocleFrame:
    """Coordinates y = g_j s for the orbits of S_r (the cosets of S)."""
    g: IndexedGroup
    socle: frozenset[int]
    cells: list[list[int]]
    coords: np.ndarray          # point -> index of s inside the socle group
    sgroup: IndexedGroup
    s_to_g: np.ndarray

    @property
    def transversal(self) -> list[int]:
        return [c[0] for c in self.cells]


def socle_frame(g: IndexedGroup, s: frozenset[int]) -> SocleFrame:
    part = coset_partition(g, s)
    sgens = [g.elements[i] for i in _gens_of(g, s)]
    sg = IndexedGroup(f"soc({g.name})", g.degree, sgens)
    s_to_g = np.asarray([g.index[p] for p in sg.elements], dtype=np.int64)
    g_to_s = {int(x): i for i, x in enumerate(s_to_g)}
    coords = np.empty(g.n, dtype=np.int64)
    for c in part.cells:
        gj_inv = g.inv(c[0])
        for y in c:
            coords[y] = g_to_s[g.mult(gj_inv, y)]
    return SocleFrame(g, s, [list(c) for c in part.cells], coords, sg, s_to_g)


def _from_coords(fr: SocleFrame, cell_img: Sequence[int], svals: np.ndarray) -> P.Perm:
    """Permutation sending point y (cell j, coordinate s) to g_{cell_img[j]} svals[y]."""
    g = fr.g
    look = np.empty(g.n, dtype=np.int64)
    for j, c in enumerate(fr.cells):
        look[c] = j
    tj = np.asarray(fr.transversal, dtype=np.int64)[np.asarray(cell_img)[look]]
    return tuple(g.mul_arr(tj, fr.s_to_g[svals]).tolist())


def normalizer_semiregular(g: IndexedGroup, s: frozenset[int],
                           member: Membership | None = None) -> PermGroup:
    """Generators for N(S_r) in sym(G), optionally cut down to K.

    Per-orbit left translations and diagonal automorphisms of S act inside
    the orbits; orbit permutations move g_j s to g_k s.  With ``member`` only
    the orbit permutations whose lift lies in K are kept, and the inner part
    must lie in K (it does for wreath certificates whose cells are unions of
    orbits).
    """
    fr = socle_frame(g, s)
    c = len(fr.cells)
    sg = fr.sgroup
    ident_cells = list(range(c))
    gens = []
    # left translation by a generator of S on one orbit
    for j in range(c):
        for u in sg.gen_indices:
            vals = fr.coords.copy()
            pts = fr.cells[j]
            vals[pts] = sg.mul_arr(u, fr.coords[pts])
            gens.append(_from_coords(fr, ident_cells, vals))
    saut = aut_of(sg)
    for alpha in saut.generators():
        gens.append(_from_coords(fr, ident_cells, alpha[fr.coords]))
    if member is not None:
        for x in gens:
            if not member(x):
                raise UnsupportedGroup("K does not contain the inner part of N(S_r)")
        perms = [pi for pi in itertools.permutations(range(c))
                 if pi != tuple(ident_cells) and member(_from_coords(fr, pi, fr.coords))]
    else:
        perms = [tuple(P.from_cycles(c, [(j, j + 1)])) for j in range(c - 1)]
    for pi in perms:
        gens.append(_from_coords(fr, pi, fr.coords))
    grp = PermGroup(g.n, gens)
    if member is None:
        expect = sg.n ** c * math.factorial(c) * len(saut)
        if grp.order() != expect:
            raise AssertionError(f"normalizer order {grp.order()} != {expect}")
    for x in gens:
        for t in sg.gen_indices:
            st = right_perm(g, int(fr.s_to_g[t]))
            y = P.conj(st, x)
            if y != right_perm(g, y[0]) or y[0] not in s:
                raise AssertionError("generator does not normalize S_r")
    return grp


def _coset_generator(g: IndexedGroup, s: frozenset[int]) -> tuple[int, int]:
    """An element whose coset generates G/S, with the index |G:S|."""
    m = g.n // len(s)
    for x in range(g.n):
        y, k = x, 1
        while y not in s:
            y = g.mult(y, x)
            k += 1
        if k == m:
            return x, m
    raise UnsupportedGroup(f"G/soc({g.name}) is not cyclic")


def reg_via_socle(m_group: PermGroup, g: IndexedGroup, member: Membership | None = None,
                  s: frozenset[int] | None = None, cap: int | None = None) -> list[RegSubgroup]:
    """All regular H = G with S_r <= H <= m_group, for G/S cyclic.

    H is S_r <h> for h moving e to a fixed coset generator x, so h runs over
    (m_group)_e followed by x_r.
    """
    s = s if s is not None else g.socle
    cap = cap or ELEMENT_CAP
    n = g.n
    x, m = _coset_generator(g, s)
    sr_gens = [right_perm(g, t) for t in _gens_of(g, s)]
    if m == 1:
        return [right_regular(g)]
    stab = PermGroup(n, m_group.generators, base=[0])
    me = PermGroup(n, stab.strong_generators(1))
    if me.order() > cap:
        raise CapExceeded("point stabilizer of the normalizer", cap, me.order())
    log.info("socle route: %d of %d stabilizer elements", me.order(), cap)
    xr = np.asarray(right_perm(g, x), dtype=np.int64)
    s_arr = np.asarray(sorted(s), dtype=np.int64)
    ident = np.arange(n)
    ys = g.mul_arr(ident[:, None], s_arr[None, :])
    out = []
    for el in me.enumerate_elements(cap):
        h = xr[np.asarray(el, dtype=np.int64)]      # el first, then x_r
        q = h
        ok = True
        for _ in range(1, m):
            if (q[ys] == ident[:, None]).any():
                ok = False
                break
            q = h[q]
        if not ok:
            continue
        top = int(q[0])
        if top not in s or not (q == g.mul_arr(ident, top)).all():
            continue
        gens = sr_gens + [tuple(h.tolist())]
        if member is not None and not member(gens[-1]):
            continue
        hg = PermGroup(n, gens)
        try:
            images = find_isomorphism(hg, g)
        except NotIsomorphism:
            continue
        out.append(RegSubgroup(gens, images, "socle-route", _group=hg))
    return out


# -- the family H_t --------------------------------------------------------------------

def standard_even_involutions(g: IndexedGroup) -> list[int]:
    """(1 2)(3 4), (1 2)(3 4)(5 6)(7 8), ...: one per class of even involutions."""
    out = []
    k = 2
    while 2 * k <= g.param:
        text = "".join(f"({2 * i + 1} {2 * i + 2})" for i in range(k))
        out.append(g.parse(text))
        k += 2
    return out


def ht_subgroup(g: IndexedGroup, t: int, x: int) -> RegSubgroup:
    """<t_l x_r> (alt m)_r in sym(G) for G = sym m, t an even involution, x odd.

    The witness sends g to g_r for even g and to t_l g_r for odd g, so a
    point p corresponds to p (p even) or t p (p odd).
    """
    if g.family != "sym":
        raise UnsupportedGroup("the H_t family is defined for sym m")
    par = np.asarray([P.parity(p) for p in g.elements], dtype=np.int64)
    if t == 0 or g.element_orders[t] != 2 or par[t]:
        raise NotEvenInvolution(f"{g.fmt(t)} is not an even involution")
    if not par[x]:
        raise NotOdd(f"{g.fmt(x)} is not odd")
    idx = np.arange(g.n)
    tau = g.mul_arr(g.mul_arr(g.inv(t), idx), x)
    even = frozenset(np.nonzero(par == 0)[0].tolist())
    a_gens = _gens_of(g, even)
    gens = [tuple(tau.tolist())] + [right_perm(g, s) for s in a_gens]
    images = [x] + list(a_gens)
    f0 = np.where(par == 1, g.mul_arr(t, idx), idx)
    h = RegSubgroup(gens, images, f"H_t[{g.fmt(t)}]", f0=f0)
    verify_witness_map(g, h)
    return h


def verify_witness_map(g: IndexedGroup, h: RegSubgroup) -> None:
    """f0(p^s) = f0(p) f(s) for every generator s, with f0 a bijection.

    Together these say f0 conjugates each generator of h onto the right
    translation by its image, so h is regular and isomorphic to G.
    """
    f0 = h.point_map(g)
    if len(np.unique(f0)) != g.n:
        raise NotIsomorphism("point map is not a bijection")
    for s, img in zip(h.generators, h.images):
        s = np.asarray(s, dtype=np.int64)
        if not (f0[s] == g.mul_arr(f0, int(img))).all():
            raise NotIsomorphism(f"witness fails for a generator of {h.label}")


# -- the pipeline ---------------------------------------------------------------------

@dataclass
class ClassEntry:
    rep: RegSubgroup
    connection: tuple[int, ...]
    members: int
    in_k: list[bool]
    contains_right_regular: bool


@dataclass
class GBase:
    graph: CayleyGraph
    k: AutResult
    classes: list[ClassEntry]
    evidence: list[dict]
    route: str
    type_tag: TypeTag | None = None
    candidates: int = 0
    exact: bool = True

    @property
    def b(self) -> int:
        return len(self.classes)


def _candidates(gamma: CayleyGraph, k: AutResult, member: Membership):
    g = gamma.group
    if k.strategy == "complete-empty":
        return "complete", [right_regular(g)], None
    if g.is_simple:
        return "simple", [right_regular(g), left_regular(g)], None
    tag = classify_type(k, g)
    if tag.kind == NORMAL_TYPE:
        if k.group is None:
            raise BudgetExceeded("normal type without a stabilizer chain")
        subs = reg_enumerate_small(k.group, g)
        return "closure", subs, tag
    mgroup = normalizer_semiregular(g, g.socle, member)
    return "socle", reg_via_socle(mgroup, g, member), tag


def g_base(gamma: CayleyGraph, k: AutResult | None = None,
           order: Callable[[list], list] | None = None) -> GBase:
    """Pairwise non-conjugate regular subgroups of K isomorphic to G.

    ``order`` may permute the candidate list before classification (used to
    check that the result does not depend on it).
    """
    g = gamma.group
    k = k or aut_group(gamma)
    member = certificate_membership(k)
    route, cands, tag = _candidates(gamma, k, member)
    _label_twisted(g, cands, member)
    if order is not None:
        cands = order(list(cands))
    aut = aut_of(g)
    for h in cands:
        h.point_map(g)
    conn = {id(h): associated_representation(gamma, h, h.images).connection
            for h in cands}
    reps: list[list[RegSubgroup]] = []
    evidence = []
    checks = 0
    for h in cands:
        for cls in reps:
            res = are_conjugate_regular(member, g, cls[0], h, gamma, aut)
            checks += res.full_checks
            if res:
                cls.append(h)
                break
        else:
            reps.append([h])
    for i, j in itertools.combinations(range(len(reps)), 2):
        res = are_conjugate_regular(member, g, reps[i][0], reps[j][0], gamma, aut)
        if res:
            raise AssertionError("class representatives are conjugate")
        evidence.append({"classes": [i, j],
                         "automorphisms_exhausted": res.automorphisms_considered})
    classes = []
    for cls in reps:
        best = min(cls, key=lambda h: (_label_rank(h.label), conn[id(h)]))
        best_conn = min(conn[id(h)] for h in cls)
        rep = min((h for h in cls if conn[id(h)] == best_conn),
                  key=lambda h: _label_rank(h.label))
        if _label_rank(best.label) < _label_rank(rep.label):
            rep = RegSubgroup(rep.generators, rep.images, best.label, rep.f0)
        classes.append(ClassEntry(rep, best_conn, len(cls),
                                  [member(x) for x in rep.generators],
                                  any(h.label == "G_r" or _is_right_regular(g, h)
                                      for h in cls)))
    classes.sort(key=lambda c: c.connection)
    out = GBase(gamma, k, classes, evidence, route, tag, len(cands))
    log.info("%s: %d candidates, %d membership checks, b = %d",
             route, len(cands), checks, out.b)
    if g.is_simple:
        if out.b > 2:
            raise AssertionError("more than two classes over a simple group")
        if gamma.is_undirected and out.b != 1:
            raise AssertionError("undirected graph over a simple group with b != 1")
    return out


_LABEL_ORDER = ("G_r", "G_l", "H_t", "socle-route", "closure-route")


def _label_rank(label: str) -> int:
    for i, p in enumerate(_LABEL_ORDER):
        if label.startswith(p):
            return i
    return len(_LABEL_ORDER)


def _is_right_regular(g: IndexedGroup, h: RegSubgroup) -> bool:
    return all(tuple(s) == right_perm(g, s[0]) for s in h.generators)


def _label_twisted(g: IndexedGroup, cands: list[RegSubgroup], member: Membership):
    """Name candidates that coincide with G_r, G_l or some H_t."""
    known = [right_regular(g), left_regular(g)]
    if g.family == "sym" and g.param >= 4:
        x = g.parse("(1 2)")
        for t in standard_even_involutions(g):
            h = ht_subgroup(g, t, x)
            if all(member(s) for s in h.generators):
                known.append(h)
    for h in cands:
        for kn in known:
            if all(kn.contains(s, g) for s in h.generators) and h.label != kn.label:
                if _label_rank(kn.label) < _label_rank(h.label):
                    h.label = kn.label
                break
