"""Cayley graphs over indexed groups.

``cay(G, X)`` has an arc ``(u, v)`` iff ``v u^-1`` lies in X, i.e. the arcs
are ``(g, xg)``.  Adjacency is answered from the multiplication and a
membership mask; no arc list is ever stored.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import perm as P
from .atlas import AutSet, IndexedGroup, aut_of, extend_generator_map, normal_subset_closure
from .errors import (DegreeMismatch, IdentityInConnection, InvalidSpec,
                     NotIsomorphism, NotRegular)
from .perm import PermGroup

FULL_CHECK_LIMIT = 1000
ARC_SAMPLE_SEED = 20240611


class CayleyGraph:
    def __init__(self, group: IndexedGroup, connection: Iterable[int]):
        conn = sorted({int(x) for x in connection})
        if 0 in conn:
            raise IdentityInConnection("identity in connection set")
        self.group = group
        self.connection = tuple(conn)
        self.mask = np.zeros(group.n, dtype=bool)
        self.mask[conn] = True
        self._targets = None

    def __repr__(self):
        return f"CayleyGraph({self.group.name}, |X|={len(self.connection)})"

    @property
    def n(self) -> int:
        return self.group.n

    def is_arc(self, u: int, v: int) -> bool:
        g = self.group
        return bool(self.mask[g.mult(v, g.inv(u))])

    def out_neighbors(self, u: int) -> np.ndarray:
        return self.group.mul_arr(np.asarray(self.connection, dtype=np.int64), u)

    def in_neighbors(self, v: int) -> np.ndarray:
        g = self.group
        return g.mul_arr(g.inv_arr[list(self.connection)], v)

    def targets(self) -> np.ndarray:
        """Array ``T[i, u] = x_i u`` of arc heads, shape (|X|, n)."""
        if self._targets is None:
            g = self.group
            xs = np.asarray(self.connection, dtype=np.int64)
            self._targets = g.mul_arr(xs[:, None], np.arange(g.n)[None, :]) \
                if len(xs) else np.empty((0, g.n), dtype=np.int64)
        return self._targets

    @property
    def is_undirected(self) -> bool:
        g = self.group
        return set(self.connection) == {g.inv(x) for x in self.connection}

    def arc_count(self) -> int:
        return self.n * len(self.connection)


def build_cayley(g: IndexedGroup, x: Iterable[int]) -> CayleyGraph:
    return CayleyGraph(g, x)


def is_central(g: IndexedGroup, x: Iterable[int]) -> bool:
    x = frozenset(int(i) for i in x)
    return normal_subset_closure(g, x) == x


def is_automorphism(gamma: CayleyGraph, p: Sequence[int]) -> bool:
    """Does the vertex permutation p map arcs to arcs?

    Out-degrees are constant, so arc preservation by a bijection is the same
    as being an automorphism.
    """
    g = gamma.group
    if len(p) != g.n:
        raise DegreeMismatch(f"degree {len(p)} vs {g.n}")
    if not gamma.connection:
        return True
    p = np.asarray(p, dtype=np.int64)
    T = gamma.targets()
    heads = p[T]
    tails_inv = g.inv_arr[p][None, :]
    return bool(gamma.mask[g.mul_arr(heads, tails_inv)].all())


# -- associated representations --------------------------------------------------

@dataclass
class Representation:
    """A Cayley representation cay(G, X') with its witness bijection.

    ``f0[point]`` is the group element attached to a vertex; ``images`` are
    the group elements that the subgroup's generators map to under f.
    """
    connection: tuple[int, ...]
    f0: np.ndarray
    images: list[int]


def point_bijection(h: PermGroup, g: IndexedGroup, images: Sequence[int],
                    anchor: int = 0) -> np.ndarray:
    """f0 with f0(anchor) = e and f0(a^s) = f0(a) f(s) for generators s."""
    n = h.degree
    if n != g.n:
        raise DegreeMismatch("a regular subgroup must act on |G| points")
    f0 = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    f0[anchor] = 0
    used[0] = True
    queue = [anchor]
    gens = [(s, int(t)) for s, t in zip(h.generators, images)]
    for a in queue:
        fa = int(f0[a])
        for s, t in gens:
            b = s[a]
            fb = g.mult(fa, t)
            if f0[b] == -1:
                if used[fb]:
                    raise NotIsomorphism("generator images collapse two points")
                f0[b] = fb
                used[fb] = True
                queue.append(b)
            elif f0[b] != fb:
                raise NotIsomorphism("generator images do not define an isomorphism")
    if len(queue) != n:
        raise NotRegular("subgroup is not transitive")
    return f0


def _point_table(h: PermGroup) -> tuple[list[P.Perm], list[list[int]]]:
    """Elements h_y (mapping 0 to y) and the table y*z = y^(h_z)."""
    n = h.degree
    elems: list = [None] * n
    elems[0] = P.identity(n)
    queue = [0]
    for y in queue:
        for s in h.generators:
            z = s[y]
            if elems[z] is None:
                elems[z] = P.mul(elems[y], s)
                queue.append(z)
    if len(queue) != n:
        raise NotRegular("subgroup is not transitive")
    table = [[elems[z][y] for z in range(n)] for y in range(n)]
    return elems, table


class _PointGroup:
    """A regular group realized on its points, enough for isomorphism search."""

    def __init__(self, h: PermGroup):
        self.elems, self.table = _point_table(h)
        self.n = h.degree

    def mult(self, y: int, z: int) -> int:
        return self.table[y][z]

    def order(self, y: int) -> int:
        k, x = 1, y
        while x != 0:
            x = self.table[x][y]
            k += 1
            if k > self.n:
                raise NotRegular("element of unbounded order")
        return k


def find_isomorphism(h: PermGroup, g: IndexedGroup) -> list[int]:
    """Generator images f(s) in G for the first isomorphism found.

    Searches images of G's generating pair among the points of the regular
    group ``h`` in index order; returns images of ``h.generators``.
    """
    from .atlas import generating_pair, _test_words

    if h.degree != g.n:
        raise NotRegular("degree differs from |G|")
    pg = _PointGroup(h)
    for y in range(g.n):
        if not P.is_identity(pg.elems[y]) and any(
                pg.elems[y][i] == i for i in range(g.n)):
            raise NotRegular("a nontrivial element fixes a point")
    a, b = generating_pair(g)
    oa, ob = g.element_orders[a], g.element_orders[b]
    word_orders = [g.element_orders[w] for w in _test_words(g, a, b)]
    orders = [pg.order(y) for y in range(g.n)]
    ca = [y for y in range(g.n) if orders[y] == oa]
    cb = [y for y in range(g.n) if orders[y] == ob]
    for ya in ca:
        for yb in cb:
            if orders[pg.mult(ya, yb)] != word_orders[0]:
                continue
            phi = extend_generator_map(g, pg, a, b, ya, yb)
            if phi is None:
                continue
            f0 = np.empty(g.n, dtype=np.int64)
            f0[phi] = np.arange(g.n)
            return [int(f0[s[0]]) for s in h.generators]
    raise NotIsomorphism("regular subgroup is not isomorphic to G")


def associated_representation(gamma: CayleyGraph, h: PermGroup,
                              images: Sequence[int] | None = None,
                              check: bool = True) -> Representation:
    """The Cayley representation of gamma associated with h and f.

    ``images[i]`` is the element g with f(h.generators[i]) = g_r; when omitted
    an isomorphism is searched for.  The connection set is f0 applied to the
    out-neighbours of the vertex f0^-1(e) = 0.
    """
    g = gamma.group
    if images is None:
        images = find_isomorphism(h, g)
    images = [int(t) for t in images]
    f0 = point_bijection(h, g, images)
    xs = np.asarray(gamma.connection, dtype=np.int64)
    conn = tuple(sorted(f0[xs].tolist())) if len(xs) else ()
    rep = Representation(conn, f0, images)
    if check:
        verify_witness(gamma, rep)
    return rep


def verify_witness(gamma: CayleyGraph, rep: Representation) -> None:
    """f0 must map gamma's arcs onto the arcs of cay(G, X')."""
    g = gamma.group
    n = g.n
    if not gamma.connection:
        return
    mask = np.zeros(n, dtype=bool)
    mask[list(rep.connection)] = True
    T = gamma.targets()
    if n <= FULL_CHECK_LIMIT:
        tails = np.arange(n)
        heads = T
    else:
        rng = random.Random(ARC_SAMPLE_SEED)
        k = max(1, n // 100)
        tails = np.asarray(sorted(rng.sample(range(n), k)), dtype=np.int64)
        heads = T[:, tails]
    f0 = rep.f0
    ok = mask[g.mul_arr(f0[heads], g.inv_arr[f0[tails]][None, :])].all()
    if not ok:
        raise NotIsomorphism("f0 does not map arcs to arcs")


# -- Cayley isomorphism -------------------------------------------------------------

def cayley_isomorphic(g: IndexedGroup, x1: Iterable[int], x2: Iterable[int],
                      aut: AutSet | None = None) -> int | None:
    """Index (in the AutSet) of the first automorphism mapping x1 onto x2."""
    x1 = np.asarray(sorted(set(int(i) for i in x1)), dtype=np.int64)
    x2s = sorted(set(int(i) for i in x2))
    if len(x1) != len(x2s):
        return None
    if not len(x1):
        return 0
    aut = aut or aut_of(g)
    mask = np.zeros(g.n, dtype=bool)
    mask[x2s] = True
    if aut.materialize():
        hits = np.nonzero(mask[aut._cache[:, x1]].all(axis=1))[0]
        return int(hits[0]) if len(hits) else None
    for w in range(len(aut)):
        if mask[aut.image_one(w, int(x1[0]))] and mask[aut.image(w, x1)].all():
            return w
    return None


# -- connection set specs -------------------------------------------------------------

def named_connection(g: IndexedGroup, name: str) -> frozenset[int]:
    if g.family not in ("sym", "alt"):
        raise InvalidSpec("named connection sets need a sym or alt group")
    if name == "transpositions":
        out = [i for i, p in enumerate(g.elements) if P.cycle_type(p) == (2,)]
    elif name == "odd":
        out = [i for i, p in enumerate(g.elements) if P.parity(p) == 1]
    elif name == "involutions":
        out = [i for i in range(g.n) if g.element_orders[i] == 2]
    else:
        raise InvalidSpec(f"unknown named connection set {name!r}")
    if not out:
        raise InvalidSpec(f"{name} is empty in {g.name}")
    return frozenset(out)


def parse_connection(g: IndexedGroup, spec: str | dict) -> frozenset[int]:
    """Parse the JSON connection-set forms: elements, classes or named."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"connection is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict) or len(spec) != 1:
        raise InvalidSpec("connection must be an object with one key")
    (key, val), = spec.items()
    if key == "elements":
        return frozenset(g.parse(s) for s in val)
    if key == "classes":
        return normal_subset_closure(g, [g.parse(s) for s in val])
    if key == "named":
        return named_connection(g, val)
    raise InvalidSpec(f"unknown connection key {key!r}")
