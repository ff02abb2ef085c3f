"""Permutations and permutation groups on {0, ..., n-1}.

A permutation is a plain tuple of images.  Products act left to right:
``point ^ (p*q) == (point ^ p) ^ q``, so ``mul(p, q)[i] == q[p[i]]``.

Stabilizer chains store Schreier vectors (one generator label per point and
level) rather than explicit transversals, so memory per base point stays
linear in the degree.  Groups of degree above ``RANDOM_SS_DEGREE`` are built
with random Schreier-Sims followed by a deterministic verification pass.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, DegreeMismatch, NotIsomorphism, OrbitMismatch

Perm = tuple

RANDOM_SS_DEGREE = 5000
_NOT_IN_ORBIT = -2
_ROOT = -1


# -- elementary operations ---------------------------------------------------

def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == v for i, v in enumerate(p))


def mul(p: Perm, q: Perm) -> Perm:
    """Product ``p*q``: first p, then q."""
    return tuple(map(q.__getitem__, p))


def mul_many(*perms: Perm) -> Perm:
    out = perms[0]
    for q in perms[1:]:
        out = tuple(map(q.__getitem__, out))
    return out


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def conj(g: Perm, x: Perm) -> Perm:
    """``g^x = x^-1 g x``."""
    return mul_many(inv(x), g, x)


def power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = inv(p), -k
    out = identity(len(p))
    base = p
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Lengths of nontrivial cycles, descending."""
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def perm_order(p: Sequence[int]) -> int:
    return math.lcm(1, *(len(c) for c in cycles(p)))


def parity(p: Sequence[int]) -> int:
    return sum(len(c) - 1 for c in cycles(p)) % 2


def fixed_points(p: Sequence[int]) -> list[int]:
    return [i for i, v in enumerate(p) if i == v]


def first_moved(p: Sequence[int]) -> int | None:
    for i, v in enumerate(p):
        if i != v:
            return i
    return None


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    out = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + type(c)(c[:1])):
            out[a] = b
    return tuple(out)


# -- text form: 1-based disjoint cycles ---------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_perm(p: Sequence[int]) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cs)


def parse_perm(text: str, degree: int | None = None) -> Perm:
    """Parse "(1 2)(3 4)" style cycle notation with 1-based points.

    Points may be separated by spaces or commas.  A point repeated anywhere
    in the string is rejected.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty permutation string")
    rest = _CYCLE_RE.sub("", s)
    if rest.strip():
        raise ValueError(f"could not parse permutation {text!r}")
    cycs = []
    seen = set()
    for body in _CYCLE_RE.findall(s):
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", body.strip()) if t]
        for q in pts:
            if q < 0:
                raise ValueError(f"points are 1-based: {text!r}")
            if q in seen:
                raise ValueError(f"repeated point {q + 1} in {text!r}")
            seen.add(q)
        if len(pts) > 1:
            cycs.append(tuple(pts))
    n = max(seen, default=-1) + 1
    if degree is not None:
        if n > degree:
            raise ValueError(f"{text!r} moves points beyond degree {degree}")
        n = degree
    return from_cycles(n, cycs)


# -- orbits and block partitions ----------------------------------------------

@dataclass(frozen=True)
class BlockPartition:
    cells: tuple[tuple[int, ...], ...]
    cell_of: tuple[int, ...] = field(repr=False, default=())

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]], n: int | None = None):
        cl = sorted(tuple(sorted(c)) for c in cells)
        if n is None:
            n = sum(len(c) for c in cl)
        lookup = [-1] * n
        for k, c in enumerate(cl):
            if not c:
                raise ValueError("empty cell")
            for pt in c:
                if pt >= n or lookup[pt] != -1:
                    raise ValueError("cells must partition the point set")
                lookup[pt] = k
        if -1 in lookup:
            raise ValueError("partition does not cover the point set")
        return cls(tuple(cl), tuple(lookup))

    @property
    def degree(self) -> int:
        return len(self.cell_of)

    def __len__(self):
        return len(self.cells)


def orbits(generators: Sequence[Perm], n: int) -> BlockPartition:
    cell = [-1] * n
    cells = []
    for start in range(n):
        if cell[start] != -1:
            continue
        k = len(cells)
        cell[start] = k
        orb = [start]
        for pt in orb:
            for g in generators:
                q = g[pt]
                if cell[q] == -1:
                    cell[q] = k
                    orb.append(q)
        cells.append(orb)
    return BlockPartition.from_cells(cells, n)


def orbit(generators: Sequence[Perm], point: int) -> list[int]:
    seen = {point}
    orb = [point]
    for pt in orb:
        for g in generators:
            q = g[pt]
            if q not in seen:
                seen.add(q)
                orb.append(q)
    return orb


def subgroup_closure(seed: Sequence[Perm], cap: float = math.inf,
                     degree: int | None = None) -> set[Perm]:
    """All products of seed elements; raises CapExceeded past ``cap``."""
    if degree is None:
        if not seed:
            raise ValueError("degree required for an empty seed")
        degree = len(seed[0])
    gens = [tuple(g) for g in seed]
    if any(len(g) != degree for g in gens):
        raise DegreeMismatch("seed permutations of different degrees")
    e = identity(degree)
    elems = {e}
    queue = [e]
    for x in queue:
        for g in gens:
            y = mul(x, g)
            if y not in elems:
                elems.add(y)
                if len(elems) > cap:
                    raise CapExceeded("subgroup closure", cap, len(elems))
                queue.append(y)
    return elems


# -- stabilizer chains ----------------------------------------------------------

class _Level:
    """One level of a stabilizer chain with a Schreier vector.

    ``sv[pt]`` is the index of the generator that first reached ``pt`` in the
    breadth-first orbit construction (``-1`` for the base point, ``-2`` for
    points outside the orbit).  Extending the level never changes entries that
    are already set, so coset representatives stay stable while the chain is
    being completed.
    """

    __slots__ = ("base", "gens", "invs", "sv", "orbit")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.gens: list[Perm] = []
        self.invs: list[Perm] = []
        self.sv = [_NOT_IN_ORBIT] * degree
        self.sv[base] = _ROOT
        self.orbit = [base]

    def add_gen(self, g: Perm) -> None:
        k = len(self.gens)
        self.gens.append(g)
        self.invs.append(inv(g))
        sv, orb = self.sv, self.orbit
        start = len(orb)
        for pt in list(orb):
            q = g[pt]
            if sv[q] == _NOT_IN_ORBIT:
                sv[q] = k
                orb.append(q)
        i = start
        while i < len(orb):
            pt = orb[i]
            for j, h in enumerate(self.gens):
                q = h[pt]
                if sv[q] == _NOT_IN_ORBIT:
                    sv[q] = j
                    orb.append(q)
            i += 1

    def word(self, pt: int) -> list[int]:
        """Generator labels from ``pt`` back to the base point."""
        sv, invs = self.sv, self.invs
        out = []
        while sv[pt] != _ROOT:
            k = sv[pt]
            out.append(k)
            pt = invs[k][pt]
        return out

    def coset_rep(self, pt: int) -> Perm:
        """The element u with base^u == pt."""
        w = self.word(pt)
        u = identity(len(self.sv))
        for k in reversed(w):
            u = mul(u, self.gens[k])
        return u

    def strip(self, g: Perm, pt: int) -> Perm:
        """``g * u_pt^-1`` without building ``u_pt``."""
        sv, invs = self.sv, self.invs
        while sv[pt] != _ROOT:
            k = sv[pt]
            g = mul(g, invs[k])
            pt = invs[k][pt]
        return g

    def all_coset_reps(self) -> list[Perm]:
        """Coset representatives for the whole orbit, in orbit order."""
        reps = {self.base: identity(len(self.sv))}
        for pt in self.orbit[1:]:
            k = self.sv[pt]
            parent = self.invs[k][pt]
            reps[pt] = mul(reps[parent], self.gens[k])
        return [reps[pt] for pt in self.orbit]


class PermGroup:
    """A permutation group given by generators, with a lazily built chain.

    ``base`` optionally prescribes the first base points (used to make the
    strong generators at each level fix a chosen prefix).
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (),
                 base: Sequence[int] = (), seed: int = 0):
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(
                    f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self._base_hint = list(base)
        self._levels: list[_Level] | None = None
        self._seed = seed

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # chain construction ------------------------------------------------------

    @property
    def levels(self) -> list[_Level]:
        if self._levels is None:
            if self.degree > RANDOM_SS_DEGREE:
                self._levels = _random_schreier_sims(
                    self.degree, self.generators, self._base_hint, self._seed)
            else:
                self._levels = _schreier_sims(
                    self.degree, self.generators, self._base_hint)
        return self._levels

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lv.orbit) for lv in self.levels]

    def strong_generators(self, level: int = 0) -> list[Perm]:
        """Strong generators fixing the first ``level`` base points."""
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)

    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths())

    def sift(self, p: Sequence[int], start: int = 0) -> tuple[Perm, int]:
        g = tuple(p)
        levels = self.levels
        for i in range(start, len(levels)):
            lv = levels[i]
            pt = g[lv.base]
            if lv.sv[pt] == _NOT_IN_ORBIT:
                return g, i
            g = lv.strip(g, pt)
        return g, len(levels)

    def contains(self, p: Sequence[int]) -> bool:
        if len(p) != self.degree:
            raise DegreeMismatch(f"degree {len(p)} vs {self.degree}")
        h, _ = self.sift(p)
        return is_identity(h)

    __contains__ = contains

    def enumerate_elements(self, cap: float = math.inf) -> Iterator[Perm]:
        """Every element once, in lexicographic order of transversal indices."""
        if self.order() > cap:
            raise CapExceeded("element enumeration", cap, self.order())
        return self._iter_elements()

    def _iter_elements(self) -> Iterator[Perm]:
        levels = self.levels
        if not levels:
            yield identity(self.degree)
            return
        reps = [lv.all_coset_reps() for lv in levels]
        k = len(reps)

        # g = u_{k-1} ... u_1 u_0 with the level-0 index varying slowest
        def descend(i, suffix):
            if i == k:
                yield suffix
                return
            for u in reps[i]:
                yield from descend(i + 1, mul(u, suffix))

        for u0 in reps[0]:
            yield from descend(1, u0)

    def orbits(self) -> BlockPartition:
        return orbits(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_semiregular(self) -> bool:
        o = self.order()
        return all(len(c) == o for c in self.orbits().cells)

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def random_element(self, rng: random.Random) -> Perm:
        """Uniform random element, drawn from the chain."""
        g = identity(self.degree)
        for lv in reversed(self.levels):
            g = mul(g, lv.coset_rep(rng.choice(lv.orbit)))
        return g

    def stabilizer_orbits(self, level: int) -> BlockPartition:
        """Orbits of the stabilizer of the first ``level`` base points."""
        return orbits(self.strong_generators(level), self.degree)


def schreier_sims(generators: Sequence[Sequence[int]],
                  degree: int | None = None) -> PermGroup:
    """Build a group with a populated stabilizer chain."""
    gens = [tuple(g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise DegreeMismatch("generators of different degrees")
    grp = PermGroup(degree, gens)
    grp.levels
    return grp


def _new_base_point(g: Perm, base: list[int]) -> int:
    for i, v in enumerate(g):
        if i != v and i not in base:
            return i
    raise AssertionError("identity has no new base point")


def _initial_levels(degree, gens, base_hint):
    base = list(base_hint)
    gens = [g for g in gens if not is_identity(g)]
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_new_base_point(g, base))
    levels = [_Level(b, degree) for b in base]
    for g in gens:
        for i, lv in enumerate(levels):
            lv.add_gen(g)
            if g[lv.base] != lv.base:
                break
    return levels


def _sift_levels(levels, g, start):
    for i in range(start, len(levels)):
        lv = levels[i]
        pt = g[lv.base]
        if lv.sv[pt] == _NOT_IN_ORBIT:
            return g, i
        g = lv.strip(g, pt)
    return g, len(levels)


def _add_strong_gen(levels, h, first, last, degree):
    """Add h to levels first..last, appending a base point if last is new."""
    if last == len(levels):
        levels.append(_Level(_new_base_point(h, [lv.base for lv in levels]),
                             degree))
    for lv in levels[first:last + 1]:
        lv.add_gen(h)


def _schreier_sims(degree, gens, base_hint) -> list[_Level]:
    levels = _initial_levels(degree, gens, base_hint)
    checked: list[set] = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = False
        pos = 0
        while pos < len(lv.orbit) and not restart:
            beta = lv.orbit[pos]
            done = checked[i]
            for k in range(len(lv.gens)):
                if (beta, k) in done:
                    continue
                s = lv.gens[k]
                g = lv.strip(mul(lv.coset_rep(beta), s), s[beta])
                h, j = _sift_levels(levels, g, i + 1)
                if j < len(levels) or not is_identity(h):
                    _add_strong_gen(levels, h, i + 1, j, degree)
                    while len(checked) < len(levels):
                        checked.append(set())
                    i = j
                    restart = True
                    break
                done.add((beta, k))
            else:
                pos += 1
        if not restart:
            i -= 1
    return [lv for lv in levels if len(lv.orbit) > 1] or []


def _random_schreier_sims(degree, gens, base_hint, seed,
                          stop_after: int = 40) -> list[_Level]:
    """Random Schreier-Sims, then a deterministic check of every level."""
    levels = _initial_levels(degree, gens, base_hint)
    gens = [g for g in gens if not is_identity(g)]
    if not gens:
        return []
    rng = random.Random(seed)
    pool = list(gens)
    while len(pool) < 10:
        pool.append(pool[len(pool) % len(gens)])
    acc = identity(degree)

    def rand_elem():
        nonlocal acc
        a, b = rng.sample(range(len(pool)), 2)
        if rng.random() < 0.5:
            pool[a] = mul(pool[a], pool[b] if rng.random() < .5 else inv(pool[b]))
        else:
            pool[a] = mul(pool[b] if rng.random() < .5 else inv(pool[b]), pool[a])
        acc = mul(acc, pool[a])
        return acc

    for _ in range(50):
        rand_elem()
    streak = 0
    while streak < stop_after:
        h, j = _sift_levels(levels, rand_elem(), 0)
        if j < len(levels) or not is_identity(h):
            # h fixes the base points before level j, so it belongs to levels 1..j
            _add_strong_gen(levels, h, 1, j, degree)
            streak = 0
        else:
            streak += 1
    _verify_chain(levels, degree)
    return [lv for lv in levels if len(lv.orbit) > 1]


def _verify_chain(levels, degree):
    """Check that every level's Schreier generators lie in the next level.

    Levels whose stabilizer is trivial are checked pointwise with numpy (all
    Schreier generators must be the identity); other levels sift each
    Schreier generator explicitly.  Failures feed back into the chain.
    """
    i = len(levels) - 1
    checked = [set() for _ in levels]
    while i >= 0:
        lv = levels[i]
        if i == len(levels) - 1:
            bad = _trivial_stabilizer_witness(lv, degree)
            if bad is None:
                i -= 1
                continue
            h, j = _sift_levels(levels, bad, i + 1)
            _add_strong_gen(levels, h, i + 1, j, degree)
            checked.extend(set() for _ in range(len(levels) - len(checked)))
            i = len(levels) - 1
            continue
        restart = False
        for beta in list(lv.orbit):
            for k, s in enumerate(lv.gens):
                if (beta, k) in checked[i]:
                    continue
                g = lv.strip(mul(lv.coset_rep(beta), s), s[beta])
                h, j = _sift_levels(levels, g, i + 1)
                if j < len(levels) or not is_identity(h):
                    _add_strong_gen(levels, h, i + 1, j, degree)
                    checked.extend(set() for _ in range(len(levels) - len(checked)))
                    i = j
                    restart = True
                    break
                checked[i].add((beta, k))
            if restart:
                break
        if not restart:
            i -= 1


def _trivial_stabilizer_witness(lv: _Level, degree: int,
                                chunk_bytes: int = 1 << 26):
    """Return a nontrivial Schreier generator of ``lv``, or None.

    Evaluates every Schreier generator ``u_b s u_{b^s}^-1`` at every point,
    column block by column block: row ``b`` of ``C`` holds ``j^(u_b)``.
    """
    orb = np.asarray(lv.orbit, dtype=np.int64)
    m = len(orb)
    row_of = np.full(degree, -1, dtype=np.int64)
    row_of[orb] = np.arange(m)
    gens = np.asarray(lv.gens, dtype=np.int64).reshape(len(lv.gens), degree)
    labels = np.asarray([lv.sv[p] for p in lv.orbit], dtype=np.int64)
    parents = np.empty(m, dtype=np.int64)
    depth = np.zeros(m, dtype=np.int64)
    for r, p in enumerate(lv.orbit):
        if r == 0:
            parents[r] = -1
            continue
        par = lv.invs[labels[r]][p]
        parents[r] = row_of[par]
        depth[r] = depth[parents[r]] + 1
    by_depth = [np.nonzero(depth == d)[0] for d in range(1, int(depth.max()) + 1)] \
        if m > 1 else []
    # rows of beta^s for each generator s
    targets = [row_of[g[orb]] for g in gens]
    width = max(1, chunk_bytes // (8 * m))
    for c0 in range(0, degree, width):
        cols = np.arange(c0, min(degree, c0 + width), dtype=np.int64)
        C = np.empty((m, len(cols)), dtype=np.int64)
        C[0] = cols
        for rows in by_depth:
            lab = labels[rows]
            C[rows] = gens[lab[:, None], C[parents[rows]]]
        for k, g in enumerate(gens):
            lhs = g[C]
            rhs = C[targets[k]]
            diff = np.nonzero((lhs != rhs).any(axis=1))[0]
            if len(diff):
                beta = lv.orbit[int(diff[0])]
                s = lv.gens[k]
                return lv.strip(mul(lv.coset_rep(beta), s), s[beta])
    return None


# -- block systems and conjugators ----------------------------------------------

def is_block_partition(g: PermGroup | Sequence[Perm], part: BlockPartition) -> bool:
    """True iff every generator maps each cell onto a cell."""
    gens = g.generators if isinstance(g, PermGroup) else list(g)
    degree = g.degree if isinstance(g, PermGroup) else (len(gens[0]) if gens else part.degree)
    if part.degree != degree:
        raise ValueError("partition does not cover the point set")
    look = part.cell_of
    for s in gens:
        for cell in part.cells:
            target = look[s[cell[0]]]
            for pt in cell[1:]:
                if look[s[pt]] != target:
                    return False
            if len(part.cells[target]) != len(cell):
                return False
    return True


def conjugator_from_isomorphism(k: PermGroup, m: PermGroup,
                                f: Sequence[Perm]) -> Perm:
    """A permutation x with ``g^x == f(g)`` for every g in k.

    ``f`` lists the images of ``k.generators``.  Both groups must be
    semiregular on the same points; orbit representatives are paired in order
    of their smallest points.
    """
    if k.degree != m.degree:
        raise DegreeMismatch("groups on different point sets")
    f = [tuple(y) for y in f]
    if len(f) != len(k.generators):
        raise NotIsomorphism("generator image list has the wrong length")
    n = k.degree
    ko = orbits(k.generators, n)
    mo_full = orbits(m.generators, n)
    if len(ko) != len(mo_full):
        raise OrbitMismatch(f"{len(ko)} orbits vs {len(mo_full)}")
    x = [-1] * n
    used = [False] * n
    for dk, dm in zip(ko.cells, mo_full.cells):
        alpha, beta = dk[0], dm[0]
        x[alpha] = beta
        used[beta] = True
        queue = [alpha]
        for pt in queue:
            for s, fs in zip(k.generators, f):
                q = s[pt]
                img = fs[x[pt]]
                if x[q] == -1:
                    if used[img]:
                        raise NotIsomorphism("map is not injective")
                    x[q] = img
                    used[img] = True
                    queue.append(q)
                elif x[q] != img:
                    raise NotIsomorphism("generator images violate a relation")
    if -1 in x:
        raise OrbitMismatch("orbit sizes differ")
    xt = tuple(x)
    xi = inv(xt)
    for s, fs in zip(k.generators, f):
        if mul_many(xi, s, xt) != fs:
            raise NotIsomorphism("conjugation check failed")
    return xt
