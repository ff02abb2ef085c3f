"""Named almost simple groups realized on their own elements.

An :class:`IndexedGroup` numbers the elements of a permutation group
0..n-1 by breadth-first closure over its sorted defining generators, so the
identity is index 0 and every derived artifact is reproducible.  The group
law is composition in the defining representation (left to right).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import perm as P
from .errors import (ElementCapExceeded, InvalidSpec, NoSuchInvolution,
                     NotAlmostSimple, UnsupportedGroup)
from .perm import PermGroup

DEFAULT_ELEMENT_CAP = int(os.environ.get("CAYREP_ELEMENT_CAP", 10**6))
TABLE_LIMIT = 2000
PSL2_FIELDS = (4, 5, 7, 8, 9, 11, 13)


# -- group specifications -------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    family: str                      # "sym", "alt", "psl2" or "raw"
    param: int = 0
    generators: tuple = ()           # raw only
    degree: int = 0                  # raw only
    source: str = ""

    @property
    def name(self) -> str:
        if self.family == "raw":
            return f"raw:{self.source}" if self.source else "raw"
        return f"{self.family}:{self.param}"


def parse_group_spec(text: str) -> GroupSpec:
    """Parse "sym:5", "alt:6", "psl2:7" or "raw:<file>"."""
    fam, sep, arg = text.partition(":")
    fam = fam.strip().lower()
    if not sep:
        raise InvalidSpec(f"group spec {text!r} lacks ':'")
    if fam == "raw":
        try:
            with open(arg) as fh:
                lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        except OSError as exc:
            raise InvalidSpec(f"cannot read {arg}: {exc}") from exc
        perms = [P.parse_perm(ln) for ln in lines]
        degree = max((len(p) for p in perms), default=1)
        perms = tuple(tuple(list(p) + list(range(len(p), degree))) for p in perms)
        return GroupSpec("raw", 0, perms, degree, arg)
    try:
        k = int(arg)
    except ValueError as exc:
        raise InvalidSpec(f"bad parameter in {text!r}") from exc
    spec = GroupSpec(fam, k)
    validate_spec(spec)
    return spec


def validate_spec(spec: GroupSpec) -> None:
    if spec.family in ("sym", "alt"):
        if spec.param < 3:
            raise InvalidSpec(f"{spec.family} requires m >= 3")
    elif spec.family == "psl2":
        if spec.param not in PSL2_FIELDS:
            raise InvalidSpec(f"psl2 requires q in {PSL2_FIELDS}")
    elif spec.family != "raw":
        raise InvalidSpec(f"unknown group family {spec.family!r}")


# -- finite fields and psl2 --------------------------------------------------------

_IRREDUCIBLE = {4: (2, [1, 1, 1]), 8: (2, [1, 1, 0, 1]), 9: (3, [1, 0, 1])}


def _field_tables(q: int):
    """Addition and multiplication tables of GF(q) on 0..q-1."""
    if q in _IRREDUCIBLE:
        p, poly = _IRREDUCIBLE[q]      # coefficients, constant term first
        k = len(poly) - 1

        def digits(x):
            return [(x // p**i) % p for i in range(k)]

        def number(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        def fmul(x, y):
            a, b = digits(x), digits(y)
            prod = [0] * (2 * k - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
            for deg in range(2 * k - 2, k - 1, -1):
                c = prod[deg]
                if c:
                    for i in range(k + 1):
                        prod[deg - k + i] = (prod[deg - k + i] - c * poly[i]) % p
            return number(prod[:k])

        add = [[number([(a + b) % p for a, b in zip(digits(x), digits(y))])
                for y in range(q)] for x in range(q)]
        mult = [[fmul(x, y) for y in range(q)] for x in range(q)]
        return add, mult
    add = [[(x + y) % q for y in range(q)] for x in range(q)]
    mult = [[(x * y) % q for y in range(q)] for x in range(q)]
    return add, mult


def psl2_generators(q: int) -> list[P.Perm]:
    """Generators of PSL(2,q) on the projective line, point q standing for infinity.

    z -> z+1 and z -> -1/z; for non-prime q also z -> w^2 z with w primitive,
    since the first two only generate PSL(2,p) over the prime field.
    """
    add, mult = _field_tables(q)
    inf = q
    neg = [next(y for y in range(q) if add[x][y] == 0) for x in range(q)]
    inverse = {x: next(y for y in range(q) if mult[x][y] == 1) for x in range(1, q)}
    unip = tuple([add[z][1] for z in range(q)] + [inf])
    weyl = [0] * (q + 1)
    for z in range(q + 1):
        if z == inf:
            weyl[z] = 0
        elif z == 0:
            weyl[z] = inf
        else:
            weyl[z] = neg[inverse[z]]
    gens = [unip, tuple(weyl)]
    if q not in (2, 3, 5, 7, 11, 13):
        prim = next(w for w in range(2, q)
                    if len({_fpow(mult, w, k) for k in range(1, q)}) == q - 1)
        w2 = mult[prim][prim]
        gens.append(tuple([mult[w2][z] for z in range(q)] + [inf]))
    return gens


def _fpow(mult, x, k):
    out = 1
    for _ in range(k):
        out = mult[out][x]
    return out


def defining_generators(spec: GroupSpec) -> tuple[int, list[P.Perm]]:
    validate_spec(spec)
    m = spec.param
    if spec.family == "sym":
        return m, [P.from_cycles(m, [(0, 1)]), P.from_cycles(m, [tuple(range(m))])]
    if spec.family == "alt":
        if m == 3:
            return m, [P.from_cycles(3, [(0, 1, 2)])]
        long = tuple(range(m)) if m % 2 else tuple(range(1, m))
        return m, [P.from_cycles(m, [(0, 1, 2)]), P.from_cycles(m, [long])]
    if spec.family == "psl2":
        return m + 1, psl2_generators(m)
    return spec.degree, [tuple(g) for g in spec.generators]


# -- conjugacy classes --------------------------------------------------------------

@dataclass(frozen=True)
class ConjClass:
    members: tuple[int, ...]
    element_order: int
    cycle_type: tuple[int, ...] | None

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def rep(self) -> int:
        return self.members[0]


# -- indexed groups -------------------------------------------------------------------

class IndexedGroup:
    """A finite group whose elements are the indices 0..n-1.

    Multiplication uses a numpy Cayley table when ``n <= TABLE_LIMIT`` and the
    defining permutations otherwise.
    """

    def __init__(self, name: str, degree: int, generators: Sequence[P.Perm],
                 element_cap: int = DEFAULT_ELEMENT_CAP, family: str = "raw",
                 param: int = 0):
        self.name = name
        self.family = family
        self.param = param
        self.degree = degree
        gens = sorted({tuple(g) for g in generators if not P.is_identity(g)})
        self.defining_generators = gens
        e = P.identity(degree)
        elements = [e]
        index = {e: 0}
        for x in elements:
            for g in gens:
                y = P.mul(x, g)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    if len(elements) > element_cap:
                        raise ElementCapExceeded("group elements", element_cap,
                                                 len(elements))
        self.elements = elements
        self.index = index
        self.n = len(elements)
        dt = np.uint8 if degree < 256 else np.int32
        self.E = np.asarray(elements, dtype=dt).reshape(self.n, degree)
        self._setup_keys()
        self.gen_indices = [index[g] for g in gens]
        inv_idx = [index[P.inv(x)] for x in elements]
        self.inv_arr = np.asarray(inv_idx, dtype=np.int64)
        self._inv = inv_idx
        self._table = None
        self._rows = None
        if self.n <= TABLE_LIMIT:
            self._build_table()

    def __repr__(self):
        return f"IndexedGroup({self.name}, n={self.n})"

    def __len__(self):
        return self.n

    # lookup ----------------------------------------------------------------------

    def _setup_keys(self):
        d = self.degree
        if d ** d < 2**62:
            self._radix = np.asarray([d**k for k in range(d)], dtype=np.int64)
            keys = self.E.astype(np.int64) @ self._radix
            order = np.argsort(keys)
            self._sorted_keys = keys[order]
            self._key_order = order
        else:
            self._radix = None

    def lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the elements given as rows of images."""
        if self._radix is not None:
            keys = rows.astype(np.int64) @ self._radix
            pos = np.searchsorted(self._sorted_keys, keys)
            pos = np.minimum(pos, len(self._sorted_keys) - 1)
            if not np.array_equal(self._sorted_keys[pos], keys):
                raise KeyError("product outside the group")
            return self._key_order[pos]
        return np.asarray([self.index[tuple(int(v) for v in r)] for r in rows],
                          dtype=np.int64)

    def _build_table(self):
        n = self.n
        table = np.empty((n, n), dtype=np.int32)
        E = self.E.astype(np.int64)
        for i in range(n):
            # row i: e_i * e_j, i.e. e_j[e_i[k]]
            table[i] = self.lookup_rows(E[:, E[i]])
        self._table = table
        self._rows = table.tolist()

    # arithmetic ---------------------------------------------------------------

    def mult(self, i: int, j: int) -> int:
        if self._rows is not None:
            return self._rows[i][j]
        return self.index[P.mul(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def conj(self, x: int, c: int) -> int:
        """x^c = c^-1 x c."""
        return self.mult(self.mult(self._inv[c], x), c)

    def mul_arr(self, a, b) -> np.ndarray:
        """Elementwise products of two broadcastable index arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._table is not None:
            return self._table[a, b].astype(np.int64)
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        Ea = self.E[a.ravel()].astype(np.int64)
        Eb = self.E[b.ravel()].astype(np.int64)
        prod = np.take_along_axis(Eb, Ea, axis=1)
        return self.lookup_rows(prod).reshape(shape)

    def conj_arr(self, xs, c: int) -> np.ndarray:
        return self.mul_arr(self.mul_arr(self._inv[c], xs), c)

    def conjugates(self, x: int, cs=None) -> np.ndarray:
        """x^c for every c in ``cs`` (default: all elements)."""
        cs = np.arange(self.n) if cs is None else np.asarray(cs, dtype=np.int64)
        return self.mul_arr(self.mul_arr(self.inv_arr[cs], x), cs)

    def power(self, i: int, k: int) -> int:
        return self.index[P.power(self.elements[i], k)]

    @cached_property
    def element_orders(self) -> list[int]:
        return [P.perm_order(x) for x in self.elements]

    def word(self, letters: Iterable[int]) -> int:
        out = 0
        for x in letters:
            out = self.mult(out, x)
        return out

    # text ------------------------------------------------------------------------

    def fmt(self, i: int) -> str:
        return P.format_perm(self.elements[i])

    def parse(self, text: str) -> int:
        p = P.parse_perm(text, self.degree)
        try:
            return self.index[p]
        except KeyError:
            raise ValueError(f"{text} is not an element of {self.name}") from None

    def perm_group(self) -> PermGroup:
        """The defining permutation representation as a PermGroup."""
        return PermGroup(self.degree, self.defining_generators)

    # classes -------------------------------------------------------------------

    @cached_property
    def classes(self) -> list[ConjClass]:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.n, dtype=np.int64)
        for k, c in enumerate(self.classes):
            out[list(c.members)] = k
        return out

    @cached_property
    def center(self) -> list[int]:
        return [c.rep for c in self.classes if c.size == 1]

    @cached_property
    def socle(self) -> frozenset[int]:
        return socle(self)

    @property
    def is_simple(self) -> bool:
        return len(self.socle) == self.n and self.n > 1 and not self.is_abelian

    @property
    def is_abelian(self) -> bool:
        return len(self.center) == self.n

    def closure_indices(self, seed: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given elements, as an index set."""
        gens = []
        grp = None
        for x in seed:
            p = self.elements[x]
            if grp is None or not grp.contains(p):
                gens.append(p)
                grp = PermGroup(self.degree, gens)
        if grp is None:
            return frozenset([0])
        return frozenset(self._members_of(grp))

    def _members_of(self, grp: PermGroup) -> list[int]:
        return sorted(self.index[p] for p in grp.enumerate_elements())


def build_group(spec: GroupSpec | str, element_cap: int = DEFAULT_ELEMENT_CAP) -> IndexedGroup:
    """Enumerate the group described by ``spec`` with deterministic indexing."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    degree, gens = defining_generators(spec)
    if spec.family == "raw" and not gens:
        gens = []
    return IndexedGroup(spec.name, degree, gens, element_cap,
                        family=spec.family, param=spec.param)


def conjugacy_classes(g: IndexedGroup) -> list[ConjClass]:
    """Orbits of the conjugation action, ordered by size then smallest member."""
    n = g.n
    src, dst = [], []
    idx = np.arange(n)
    for s in g.gen_indices:
        src.append(idx)
        dst.append(g.conj_arr(idx, s))
    if src:
        rows = np.concatenate(src)
        cols = np.concatenate(dst)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.zeros(n, dtype=np.int64)
    buckets: dict[int, list[int]] = {}
    for i, lab in enumerate(labels.tolist()):
        buckets.setdefault(lab, []).append(i)
    orders = g.element_orders
    tagged = g.family in ("sym", "alt")
    out = []
    for members in buckets.values():
        rep = members[0]
        ct = P.cycle_type(g.elements[rep]) if tagged else None
        out.append(ConjClass(tuple(members), orders[rep], ct))
    out.sort(key=lambda c: (c.size, c.members[0]))
    return out


def normal_subset_closure(g: IndexedGroup, seed: Iterable[int]) -> frozenset[int]:
    """Union of the conjugacy classes meeting ``seed``."""
    cls = g.class_of
    hit = {int(cls[i]) for i in seed}
    out = set()
    for k in hit:
        out.update(g.classes[k].members)
    return frozenset(out)


def normal_closure_of_class(g: IndexedGroup, k: int) -> frozenset[int]:
    return g.closure_indices(g.classes[k].members)


def socle(g: IndexedGroup) -> frozenset[int]:
    """The unique minimal normal subgroup of an almost simple group."""
    if g.n == 1:
        return frozenset([0])
    closures = []
    for k, c in enumerate(g.classes):
        if c.members == (0,):
            continue
        closures.append(normal_closure_of_class(g, k))
    distinct = sorted(set(closures), key=len)
    minimal = [N for N in distinct if not any(M < N for M in distinct)]
    if len(minimal) != 1:
        raise NotAlmostSimple(f"{g.name} has {len(minimal)} minimal normal subgroups")
    return minimal[0]


def normal_subgroups_over(g: IndexedGroup, base: frozenset[int]) -> list[frozenset[int]]:
    """Normal subgroups of g containing the normal subgroup ``base``.

    Built as joins of ``base`` with normal closures of single classes and
    their pairwise joins, which is exhaustive when |g:base| <= 4.
    """
    found = {base, frozenset(range(g.n))}
    singles = []
    for c in g.classes:
        if c.rep in base:
            continue
        N = g.closure_indices(_gens_of(g, base) + list(c.members))
        singles.append(N)
        found.add(N)
    for A in singles:
        for B in singles:
            if A < B or B < A or A == B:
                continue
            found.add(g.closure_indices(_gens_of(g, A) + _gens_of(g, B)))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def _gens_of(g: IndexedGroup, sub: frozenset[int]) -> list[int]:
    """A small generating set for a subgroup given as an index set."""
    gens = []
    grp = None
    for x in sorted(sub):
        if x == 0:
            continue
        p = g.elements[x]
        if grp is None or not grp.contains(p):
            gens.append(x)
            grp = PermGroup(g.degree, [g.elements[i] for i in gens])
            if grp.order() == len(sub):
                break
    return gens


# -- regular actions ------------------------------------------------------------------

def right_perm(g: IndexedGroup, x: int) -> P.Perm:
    """x_r : y -> y x."""
    return tuple(g.mul_arr(np.arange(g.n), x).tolist())


def left_perm(g: IndexedGroup, x: int) -> P.Perm:
    """x_l : y -> x^-1 y, so that x -> x_l is a homomorphism."""
    return tuple(g.mul_arr(g.inv(x), np.arange(g.n)).tolist())


def regular_actions(g: IndexedGroup) -> tuple[PermGroup, PermGroup]:
    """(G_l, G_r) generated by the images of the defining generators."""
    gl = PermGroup(g.n, [left_perm(g, s) for s in g.gen_indices])
    gr = PermGroup(g.n, [right_perm(g, s) for s in g.gen_indices])
    return gl, gr


def inversion_perm(g: IndexedGroup) -> P.Perm:
    return tuple(g.inv_arr.tolist())


# -- automorphisms -----------------------------------------------------------------------

class AutSet:
    """aut(G) stored as outer coset representatives times Inn(G).

    Member ``k * n + c`` is "apply ``outer[k]``, then conjugate by c".  Index
    0 is the identity.  Arrays are materialized only on request, so the set
    stays usable at n = 40320.
    """

    def __init__(self, group: IndexedGroup, outer: list[np.ndarray],
                 notes: dict | None = None):
        self.group = group
        self.outer = outer
        self.notes = notes or {}
        self._cache: np.ndarray | None = None

    def __len__(self):
        return self.group.n * len(self.outer)

    @property
    def inner_count(self) -> int:
        return self.group.n

    @property
    def out_order(self) -> int:
        return len(self.outer)

    def is_inner(self, which: int) -> bool:
        return which < self.group.n

    def image(self, which: int, xs) -> np.ndarray:
        k, c = divmod(which, self.group.n)
        ys = self.outer[k][np.asarray(xs, dtype=np.int64)]
        if c == 0:
            return ys
        return self.group.conj_arr(ys, c)

    def image_one(self, which: int, x: int) -> int:
        k, c = divmod(which, self.group.n)
        y = int(self.outer[k][x])
        return y if c == 0 else self.group.conj(y, c)

    def array(self, which: int) -> np.ndarray:
        if self._cache is not None:
            return self._cache[which]
        return self.image(which, np.arange(self.group.n))

    def materialize(self, limit: int = 6_000_000) -> bool:
        """Cache every member as a row of one array when it fits."""
        if self._cache is None and len(self) * self.group.n <= limit:
            g = self.group
            rows = np.empty((len(self), g.n), dtype=np.int32)
            for k, rep in enumerate(self.outer):
                for c in range(g.n):
                    rows[k * g.n + c] = rep if c == 0 else g.conj_arr(rep, c)
            self._cache = rows
        return self._cache is not None

    def __iter__(self):
        for w in range(len(self)):
            yield self.array(w)

    def generators(self) -> list[np.ndarray]:
        """Outer representatives plus conjugation by each group generator."""
        g = self.group
        out = [rep for rep in self.outer[1:]]
        idx = np.arange(g.n)
        for s in g.gen_indices:
            out.append(g.conj_arr(idx, s))
        return out

    def centralizer_count(self, x: int) -> int:
        return sum(1 for w in range(len(self)) if self.image_one(w, x) == x)


def generating_pair(g: IndexedGroup) -> tuple[int, int]:
    """A fixed 2-element generating set (b may be the identity for cyclic g)."""
    gi = g.gen_indices
    if len(gi) == 2:
        return gi[0], gi[1]
    if len(gi) == 1:
        return gi[0], 0
    if not gi:
        return 0, 0
    for c in g.classes[1:]:
        a = c.rep
        for b in range(1, g.n):
            grp = PermGroup(g.degree, [g.elements[a], g.elements[b]])
            if grp.order() == g.n:
                return a, b
    raise UnsupportedGroup(f"{g.name} is not 2-generated")


def _profile(g: IndexedGroup, x: int) -> tuple[int, int]:
    return g.element_orders[x], g.classes[int(g.class_of[x])].size


def _test_words(g: IndexedGroup, a: int, b: int) -> list[int]:
    ai, bi = g.inv(a), g.inv(b)
    return [
        g.word([a, b]), g.word([a, bi]), g.word([a, b, b]), g.word([a, b, a, bi]),
        g.word([a, b, ai, bi]), g.word([a, a, b]), g.word([a, b, a, b, b]),
        g.word([a, b, b, a, bi]),
    ]


def extend_generator_map(g: IndexedGroup, h: IndexedGroup, a: int, b: int,
                         a_img: int, b_img: int) -> np.ndarray | None:
    """Extend a -> a_img, b -> b_img to a homomorphism g -> h over the word tree.

    Returns the image array if the map is a well-defined bijection, else None.
    """
    phi = np.full(g.n, -1, dtype=np.int64)
    phi[0] = 0
    used = np.zeros(h.n, dtype=bool)
    used[0] = True
    gens = [(s, t) for s, t in ((a, a_img), (b, b_img)) if s != 0 or t != 0]
    queue = [0]
    gm, hm = g.mult, h.mult
    for x in queue:
        fx = int(phi[x])
        for s, t in gens:
            y = gm(x, s)
            fy = hm(fx, t)
            if phi[y] == -1:
                if used[fy]:
                    return None
                phi[y] = fy
                used[fy] = True
                queue.append(y)
            elif phi[y] != fy:
                return None
    if len(queue) != g.n:
        return None
    return phi


def automorphism_group(g: IndexedGroup) -> AutSet:
    """Search all automorphisms by backtracking over images of a generating pair.

    The image of the first generator runs over one representative per
    conjugacy class of matching (order, class size) profile; the image of the
    second runs over all elements with the second generator's profile, pruned
    by the orders of a few short words.  Pairs conjugate to the identity pair
    are inner and skipped; every other survivor is extended over the word tree
    and checked to be a bijective homomorphism.
    """
    if len(g.center) != 1:
        raise UnsupportedGroup(f"{g.name} has a nontrivial center")
    a, b = generating_pair(g)
    n = g.n
    orders = g.element_orders
    words = _test_words(g, a, b)
    word_prof = [_profile(g, w) for w in words]
    prof_b = _profile(g, b)
    cand_b = [y for y in range(n) if _profile(g, y) == prof_b]
    idx = np.arange(n)
    found = []
    checked = 0
    for cls in g.classes:
        if (cls.element_order, cls.size) != _profile(g, a):
            continue
        r = cls.rep
        cs = np.nonzero(g.conjugates(a) == r)[0]
        inner_b = set(g.conjugates(b, cs).tolist()) if len(cs) else set()
        for y in cand_b:
            if y in inner_b:
                continue
            if orders[g.mult(r, y)] != orders[words[0]]:
                continue
            if [_profile(g, w) for w in _test_words(g, r, y)] != word_prof:
                continue
            checked += 1
            phi = extend_generator_map(g, g, a, b, r, y)
            if phi is not None:
                found.append(phi)
    outer = [idx.copy()]
    for phi in found:
        if not any(_is_inner_quotient(g, phi, rep, a, b) for rep in outer):
            outer.append(phi)
    aut = AutSet(g, outer, {"outer_candidates_extended": checked,
                            "generating_pair": [a, b]})
    # consistency: automorphisms sending a into class(a)'s representative set
    total = 0
    for cls in g.classes:
        if (cls.element_order, cls.size) != _profile(g, a):
            continue
        same = int(g.class_of[a]) == g.classes.index(cls)
        inner_here = n // g.classes[int(g.class_of[a])].size if same else 0
        outer_here = sum(1 for phi in found if int(phi[a]) == cls.rep)
        total += cls.size * (inner_here + outer_here)
    if total != len(aut):
        raise AssertionError(f"automorphism count mismatch: {total} vs {len(aut)}")
    if n > 2 and aut.out_order > math.log2(n):
        raise AssertionError(f"|out({g.name})| = {aut.out_order} exceeds log2 n")
    return aut


def _is_inner_quotient(g: IndexedGroup, phi: np.ndarray, rep: np.ndarray,
                       a: int, b: int) -> bool:
    """Is phi followed by rep^-1 an inner automorphism?"""
    rep_inv = np.empty_like(rep)
    rep_inv[rep] = np.arange(len(rep))
    ta, tb = int(rep_inv[phi[a]]), int(rep_inv[phi[b]])
    cs = np.nonzero(g.conjugates(a) == ta)[0]
    if not len(cs):
        return False
    return bool((g.conjugates(b, cs) == tb).any())


_AUT_CACHE: dict[int, AutSet] = {}


def aut_of(g: IndexedGroup) -> AutSet:
    """Cached :func:`automorphism_group`."""
    key = id(g)
    if key not in _AUT_CACHE or _AUT_CACHE[key].group is not g:
        _AUT_CACHE[key] = automorphism_group(g)
    return _AUT_CACHE[key]


def d2_group(g: IndexedGroup, aut: AutSet | None = None) -> PermGroup:
    """D(2,G) = <sigma> x| (aut(G) x| G_r) on the element indices."""
    aut = aut or aut_of(g)
    gens = [inversion_perm(g)]
    gens += [tuple(int(v) for v in phi) for phi in aut.generators()]
    gens += [right_perm(g, s) for s in g.gen_indices]
    return PermGroup(g.n, gens)


def holomorph(g: IndexedGroup, aut: AutSet | None = None) -> PermGroup:
    aut = aut or aut_of(g)
    gens = [tuple(int(v) for v in phi) for phi in aut.generators()]
    gens += [right_perm(g, s) for s in g.gen_indices]
    return PermGroup(g.n, gens)


def fgs_involution(g: IndexedGroup, aut: AutSet | None = None) -> int:
    """An involution t with aut(G) = C_aut(t) Inn(G), checked by counting."""
    if not g.is_simple:
        raise UnsupportedGroup(f"{g.name} is not nonabelian simple")
    aut = aut or aut_of(g)
    for cls in g.classes:
        if cls.element_order != 2:
            continue
        t = cls.rep
        c_aut = aut.centralizer_count(t)
        c_inn = g.n // cls.size
        if c_aut * g.n == len(aut) * c_inn:
            return t
    raise NoSuchInvolution(f"no involution of {g.name} passes the product test")


def diagonal_subgroup(g: IndexedGroup, tau: np.ndarray) -> PermGroup:
    """{x_l (x^tau)_r : x in G} as a group of vertex permutations."""
    gens = [P.mul(left_perm(g, s), right_perm(g, int(tau[s]))) for s in g.gen_indices]
    return PermGroup(g.n, gens)
