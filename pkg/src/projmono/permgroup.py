"""Permutation groups on ``{0, ..., k-1}``.

Conventions: a :class:`Permutation` acts on the right, ``i -> p(i)``, and
``p * q`` applies ``p`` first, then ``q``.  Groups carry a stabilizer chain
(Schreier-Sims), which gives exact orders, membership tests and pointwise
stabilizers.  The brute-force routines at the end are oracles for small
groups.
"""

from __future__ import annotations

import math
import re
from collections import deque
from functools import cached_property, reduce

import numpy as np

from .exceptions import InputError, ParseError, PreconditionError

__all__ = [
    "Permutation",
    "PermGroup",
    "generate",
    "parse_permutation",
    "orbits",
    "is_transitive",
    "k_transitivity",
    "stabilizer",
    "restrict",
    "block_systems",
    "is_primitive",
    "lemma1_check",
    "lemma2_check",
    "classify",
    "landau",
    "exhaustive_closure",
    "k_transitivity_bruteforce",
    "is_block_system",
]


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError(f"not a bijection on 0..{len(imgs) - 1}: {imgs}")
        self.images = imgs
        self._hash = hash(imgs)

    @classmethod
    def _trusted(cls, imgs: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p.images = imgs
        p._hash = hash(imgs)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        imgs = list(range(degree))
        seen = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 0 <= c < degree:
                    raise InputError(f"point {c} outside 0..{degree - 1}")
                if c in seen:
                    raise InputError(f"point {c} appears twice")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a] = b
        return cls._trusted(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise InputError("permutations of different degrees")
        o = other.images
        return Permutation._trusted(tuple(o[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, descending."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def is_even(self) -> bool:
        return self.sign() == 1

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def conjugate(self, relabel: "Permutation") -> "Permutation":
        """``relabel^-1 * self * relabel``: the same action written in new labels."""
        return relabel.inverse() * self * relabel

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(c) for c in cy) + ")" for cy in cyc)

    def __repr__(self):
        return f"Permutation({str(self)!r}, degree={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse zero-based cycle notation such as ``(0 1)(2 3)``; ``()`` is the identity."""
    s = text.strip()
    pos = 0
    cycles = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if not m:
            raise ParseError(f"expected '(' in cycle notation {text!r}", 1, pos + 1)
        body = m.group(1).split()
        for tok in body:
            if not tok.isdigit():
                raise ParseError(f"bad point {tok!r} in cycle notation", 1, m.start(1) + 1)
        if body:
            cycles.append([int(t) for t in body])
        pos = m.end()
    try:
        return Permutation.from_cycles(cycles, degree)
    except InputError as e:
        raise ParseError(str(e), 1, 1) from None


# ---------------------------------------------------------------------------
# stabilizer chain
# ---------------------------------------------------------------------------


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point, gens):
        self.point = point
        self.gens = list(gens)
        self.transversal = {}
        self.rebuild()

    def rebuild(self):
        b = self.point
        trans = {b: None}
        queue = deque([b])
        while queue:
            x = queue.popleft()
            for g in self.gens:
                y = g.images[x]
                if y not in trans:
                    trans[y] = (x, g)
                    queue.append(y)
        self.transversal = trans

    def coset_rep(self, beta, degree):
        """``u`` with ``u(point) = beta`` (product of generators along the BFS tree)."""
        chain = []
        while True:
            entry = self.transversal[beta]
            if entry is None:
                break
            beta, g = entry
            chain.append(g)
        u = Permutation.identity(degree)
        for g in reversed(chain):
            u = u * g
        return u


def _sift(g: Permutation, levels, start: int):
    """Strip ``g`` through ``levels[start:]``; returns (residue, level where it stopped)."""
    n = g.degree
    for j in range(start, len(levels)):
        lev = levels[j]
        beta = g.images[lev.point]
        if beta not in lev.transversal:
            return g, j
        g = g * lev.coset_rep(beta, n).inverse()
    return g, len(levels)


def _schreier_sims(degree, gens, base_prefix=(), seed=0x5C4E1E):
    gens = [g for g in gens if not g.is_identity()]
    base = list(dict.fromkeys(int(b) for b in base_prefix))
    for g in gens:
        if all(g.images[b] == b for b in base):
            base.append(next(i for i in range(degree) if g.images[i] != i))
    levels = []
    for i, b in enumerate(base):
        fixed = base[:i]
        levels.append(_Level(b, [g for g in gens if all(g.images[x] == x for x in fixed)]))

    # random strengthening: sift a few seeded random products first
    if gens and levels:
        rng = np.random.default_rng(seed)
        pool = list(gens) + [gens[0]] * max(0, 10 - len(gens))
        for _ in range(20):
            a, b = rng.choice(len(pool), size=2, replace=False) if len(pool) > 1 else (0, 0)
            pool[a] = pool[a] * pool[b]
            _insert(pool[a], levels, 0, degree)

    # deterministic completion
    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        restart = False
        for beta in list(lev.transversal):
            u = lev.coset_rep(beta, degree)
            for s in list(lev.gens):
                gamma = s.images[beta]
                h = u * s * lev.coset_rep(gamma, degree).inverse()
                if h.is_identity():
                    continue
                res, j = _sift(h, levels, i + 1)
                if res.is_identity():
                    continue
                if j == len(levels):
                    levels.append(
                        _Level(next(x for x in range(degree) if res.images[x] != x), [])
                    )
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(res)
                    levels[l].rebuild()
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return levels


def _insert(g, levels, start, degree):
    """Sift ``g`` and add its residue as a strong generator where it stopped."""
    res, j = _sift(g, levels, start)
    if res.is_identity():
        return
    if j == len(levels):
        levels.append(_Level(next(x for x in range(degree) if res.images[x] != x), []))
    for l in range(start, j + 1):
        levels[l].gens.append(res)
        levels[l].rebuild()


class PermGroup:
    """Subgroup of ``S_degree`` generated by ``generators``.

    ``base_prefix`` fixes the first base points of the stabilizer chain;
    pointwise stabilizers of a prefix are then read off directly.
    """

    def __init__(self, degree: int, generators=(), base_prefix=()):
        if degree < 1:
            raise InputError("degree must be >= 1")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise InputError(f"generator {g} has degree {g.degree}, expected {degree}")
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._levels = _schreier_sims(degree, gens, base_prefix)

    # chain data -----------------------------------------------------------
    @property
    def base(self) -> tuple[int, ...]:
        return tuple(l.point for l in self._levels)

    @property
    def basic_orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(l.transversal) for l in self._levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        seen = {}
        for l in self._levels:
            for g in l.gens:
                seen.setdefault(g, None)
        return tuple(seen)

    @cached_property
    def order(self) -> int:
        return math.prod(self.basic_orbit_sizes)

    def __contains__(self, g) -> bool:
        if not isinstance(g, Permutation):
            g = Permutation(g)
        if g.degree != self.degree:
            return False
        res, j = _sift(g, self._levels, 0)
        return j == len(self._levels) and res.is_identity()

    def contains(self, g) -> bool:
        return g in self

    def elements(self):
        """Every element, as products of coset representatives (small groups only)."""
        n = self.degree
        reps = [[l.coset_rep(b, n) for b in l.transversal] for l in self._levels]
        out = [Permutation.identity(n)]
        for level_reps in reversed(reps):
            out = [g * u for u in level_reps for g in out]
        return out

    def with_base(self, base_prefix) -> "PermGroup":
        return PermGroup(self.degree, self.generators, base_prefix)

    def chain_subgroup(self, level: int) -> "PermGroup":
        """The stabilizer of the first ``level`` base points, as a group."""
        gens = []
        for l in self._levels[level:]:
            gens.extend(l.gens)
        gens = list(dict.fromkeys(gens))
        return PermGroup(self.degree, gens, self.base[level:])

    # structure ------------------------------------------------------------
    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        return orbits(self)

    def is_transitive(self) -> bool:
        return is_transitive(self)

    @cached_property
    def transitivity(self) -> int:
        return k_transitivity(self)

    def block_systems(self):
        return block_systems(self)

    def is_primitive(self) -> bool:
        return is_primitive(self)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return classify(self)

    def is_symmetric(self) -> bool:
        return self.order == math.factorial(self.degree)

    def __repr__(self):
        gens = " ".join(str(g) for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, order={self.order}, gens={gens})"


def generate(degree: int, gens) -> PermGroup:
    return PermGroup(degree, gens)


# ---------------------------------------------------------------------------
# orbits and transitivity
# ---------------------------------------------------------------------------


def orbits(G: PermGroup) -> tuple[tuple[int, ...], ...]:
    """Orbit partition (union-find over the generator action), sorted."""
    parent = list(range(G.degree))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in G.generators:
        for i, j in enumerate(g.images):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(G.degree):
        groups.setdefault(find(i), []).append(i)
    return tuple(tuple(v) for v in sorted(groups.values()))


def is_transitive(G: PermGroup) -> bool:
    return len(orbits(G)) == 1


def stabilizer(G: PermGroup, A) -> PermGroup:
    """Pointwise stabilizer of ``A``, as a group on all of ``Omega``."""
    A = sorted(set(int(a) for a in A))
    if any(not 0 <= a < G.degree for a in A):
        raise InputError("stabilized points outside Omega")
    if len(A) >= G.degree:
        raise InputError("stabilized set must be a proper subset of Omega")
    H = G.with_base(A)
    return H.chain_subgroup(len(A))


def restrict(G: PermGroup, points) -> tuple[PermGroup, tuple[int, ...]]:
    """Action on an invariant set ``points``, relabeled ``points[i] -> i``."""
    pts = tuple(sorted(set(int(p) for p in points)))
    index = {p: i for i, p in enumerate(pts)}
    gens = []
    for g in G.generators:
        imgs = []
        for p in pts:
            q = g.images[p]
            if q not in index:
                raise InputError("point set is not invariant under the group")
            imgs.append(index[q])
        gens.append(Permutation(imgs))
    return PermGroup(len(pts), gens), pts


def k_transitivity(G: PermGroup) -> int:
    """Largest ``k`` with ``G`` ``k``-transitive (0 if intransitive).

    Recursive use of point stabilizers: ``G`` is ``k``-transitive iff it is
    transitive and the stabilizer of a point is ``(k - 1)``-transitive on the
    remaining points.  With base ``0, 1, 2, ...`` this reads off the chain:
    level ``l`` must have basic orbit ``{l, ..., degree - 1}``.
    """
    n = G.degree
    H = G.with_base(range(n))
    sizes = H.basic_orbit_sizes
    k = 0
    for l in range(n):
        size = sizes[l] if l < len(sizes) else 1
        if size != n - l:
            break
        k += 1
    if k == n - 1:
        k = n  # (n-1)-transitive forces the full symmetric group
    return k


def _is_k_transitive(G: PermGroup, k: int) -> bool:
    if k <= 0:
        return True
    return k_transitivity(G) >= k


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------


def _minimal_block_system(G: PermGroup, beta: int):
    """Finest block system with ``0`` and ``beta`` in one block (union-find closure)."""
    n = G.degree
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    parent[beta] = 0
    queue = deque([(0, beta)])
    while queue:
        a, b = queue.popleft()
        for g in G.generators:
            x, y = find(g.images[a]), find(g.images[b])
            if x != y:
                parent[max(x, y)] = min(x, y)
                queue.append((x, y))
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return tuple(sorted(tuple(b) for b in blocks.values()))


def block_systems(G: PermGroup, minimal_only: bool = False) -> list[tuple[tuple[int, ...], ...]]:
    """Nontrivial block systems of a transitive group.

    For each ``beta != 0`` the finest system joining ``0`` and ``beta`` is
    computed; distinct nontrivial ones are returned sorted by block size.
    Every minimal block system occurs among them.  ``minimal_only`` keeps
    only systems that refine no other returned system.
    """
    if not is_transitive(G):
        raise PreconditionError("block systems are defined here for transitive groups only")
    n = G.degree
    found = {}
    for beta in range(1, n):
        sysm = _minimal_block_system(G, beta)
        if len(sysm) > 1:
            found.setdefault(sysm, None)
    systems = sorted(found, key=lambda s: (len(s[0]), s))
    if minimal_only:
        def refines(a, b):
            return a != b and all(any(set(x) <= set(y) for y in b) for x in a)

        systems = [s for s in systems if not any(refines(t, s) for t in systems)]
    return systems


def is_primitive(G: PermGroup) -> bool:
    if not is_transitive(G):
        return False
    if G.degree <= 2:
        return True
    return not block_systems(G)


def is_block_system(G: PermGroup, partition) -> bool:
    """Direct check of the block axiom under every generator, plus tiling of Omega."""
    blocks = [frozenset(b) for b in partition]
    if sorted(x for b in blocks for x in b) != list(range(G.degree)):
        return False
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        return False
    for g in G.generators:
        for b in blocks:
            img = frozenset(g.images[x] for x in b)
            if not any(img == c for c in blocks):
                return False
    return True


# ---------------------------------------------------------------------------
# lemma predicates
# ---------------------------------------------------------------------------


def lemma1_check(G: PermGroup, i: int, k: int) -> tuple[bool, bool]:
    """``(G is k-transitive, Stab(i) is (k-1)-transitive on Omega \\ {i})``."""
    if not is_transitive(G):
        raise PreconditionError("lemma1_check needs a transitive group")
    if not 1 <= k <= G.degree - 1:
        raise PreconditionError("lemma1_check needs 1 <= k <= degree - 1")
    if not 0 <= i < G.degree:
        raise InputError("point outside Omega")
    rest = [x for x in range(G.degree) if x != i]
    H, _ = restrict(stabilizer(G, [i]), rest)
    return _is_k_transitive(G, k), _is_k_transitive(H, k - 1)


def lemma2_check(G: PermGroup, A) -> bool:
    """For primitive ``G`` whose stabilizer of ``A`` is transitive on the rest, ``G`` is 2-transitive.

    Raises :class:`PreconditionError` when the hypotheses do not hold; the
    return value is the conclusion (``False`` would refute the statement).
    """
    A = sorted(set(int(a) for a in A))
    n = G.degree
    if not 0 < len(A) <= n - 2:
        raise PreconditionError("need 0 < |A| <= degree - 2")
    if not is_primitive(G):
        raise PreconditionError("group is not primitive")
    rest = [x for x in range(n) if x not in A]
    H, _ = restrict(stabilizer(G, A), rest)
    if not is_transitive(H):
        raise PreconditionError("stabilizer of A is not transitive on the complement")
    return k_transitivity(G) >= 2


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def landau(n: int) -> int:
    """Largest element order in ``S_n`` (maximal lcm over partitions of ``n``)."""
    best = [1] * (n + 1)  # best[m]: max lcm of a partition of at most m
    # dynamic programming over prime powers
    primes = [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p ** 0.5) + 1))]
    table = {0: 1}
    for p in primes:
        new = dict(table)
        for used, val in table.items():
            q = p
            while used + q <= n:
                key = used + q
                if new.get(key, 0) < val * q:
                    new[key] = val * q
                q *= p
        table = new
    return max(table.values()) if n >= 1 else 1


def classify(G: PermGroup) -> tuple[str, ...]:
    """Every applicable label among symmetric / alternating / cyclic / imprimitive(...) / other."""
    n = G.degree
    labels = []
    order = G.order
    if order == math.factorial(n):
        labels.append("symmetric")
    if n >= 2 and order * 2 == math.factorial(n) and all(g.is_even() for g in G.generators):
        labels.append("alternating")
    if order <= landau(n) and any(g.order() == order for g in G.elements()):
        labels.append("cyclic")
    if is_transitive(G) and n > 2:
        systems = block_systems(G)
        if systems:
            sizes = sorted({len(s[0]) for s in systems})
            labels.append("imprimitive(" + ",".join(str(x) for x in sizes) + ")")
    if not labels:
        labels.append("other")
    return tuple(labels)


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------


def exhaustive_closure(degree: int, gens, limit: int = 10**6) -> set[tuple[int, ...]]:
    """All elements of ``<gens>`` by breadth-first closure under right multiplication."""
    gens = [g.images if isinstance(g, Permutation) else tuple(g) for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise InputError(f"closure exceeds {limit} elements")
                queue.append(y)
    return seen


def k_transitivity_bruteforce(G: PermGroup, elements=None) -> int:
    """Largest ``k`` such that ordered ``k``-tuples of distinct points form one orbit."""
    n = G.degree
    elems = elements if elements is not None else exhaustive_closure(n, G.generators)
    k = 0
    for kk in range(1, n + 1):
        start = tuple(range(kk))
        images = {tuple(e[i] for i in start) for e in elems}
        if len(images) != math.perm(n, kk):
            break
        k = kk
    return k
