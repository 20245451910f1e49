# src/permutations.py

# Exact permutation arithmetic, cycle structure, orbits and group orders.
#
# Points are 0-based and contiguous internally (images[i] is the image of i);
# the JSON/CLI surface is 1-based cycle notation. Composition is right-then-left:
# compose(p, q)(x) == p(q(x)).

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.exceptions import DegreeMismatch, InvalidPermutation, OrderExceedsCap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Permutation:
    """
    A bijection of {0, ..., degree - 1}.

    Args:
        images (tuple): images[i] is the image of point i.
    """
    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if not images:
            raise InvalidPermutation("A permutation needs degree >= 1.")
        if sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"Images {list(images)} are not a bijection of 0..{len(images) - 1}.")
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, degree):
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """
        Builds a permutation from 1-based cycles; omitted points are fixed.
        """
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = [int(x) - 1 for x in cycle]
            for point in cycle:
                if point < 0 or point >= degree:
                    raise InvalidPermutation(f"Point {point + 1} is outside 1..{degree}.")
                if point in seen:
                    raise InvalidPermutation(f"Point {point + 1} appears in more than one cycle.")
                seen.add(point)
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def as_array(self):
        return np.asarray(self.images, dtype=np.int64)

    def inverse(self):
        inv = [0] * self.degree
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation(tuple(inv))

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(base, result)
            base = compose(base, base)
            k >>= 1
        return result

    @property
    def is_identity(self):
        return all(i == image for i, image in enumerate(self.images))

    def cycles(self):
        """0-based cycles including fixed points, each starting at its minimum, ordered by minimum."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                seen[point] = True
                cycle.append(point)
                point = self.images[point]
            out.append(cycle)
        return out

    def to_cycles(self, include_fixed=False):
        """1-based cycle lists, the serialized form."""
        return [[p + 1 for p in cycle] for cycle in self.cycles() if include_fixed or len(cycle) > 1]

    @property
    def order(self):
        return cycle_type(self).lcm

    def __str__(self):
        cycles = self.to_cycles()
        if not cycles:
            return '()'
        return ''.join('(' + ' '.join(map(str, c)) + ')' for c in cycles)


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, stored in non-increasing order."""
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"Cycle lengths must be positive, got {list(parts)}.")
        object.__setattr__(self, 'parts', parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    @property
    def degree(self):
        return sum(self.parts)

    @property
    def lcm(self):
        return reduce(math.lcm, self.parts, 1)

    @property
    def branching(self):
        # sum of (length - 1): the Riemann-Hurwitz contribution over one point
        return sum(p - 1 for p in self.parts)

    @property
    def is_trivial(self):
        return all(p == 1 for p in self.parts)

    def to_list(self):
        return list(self.parts)

    def __str__(self):
        return '{' + ','.join(map(str, self.parts)) + '}'


def _check_common_degree(gens):
    degrees = {g.degree for g in gens}
    if len(degrees) > 1:
        raise DegreeMismatch(f"Generators have different degrees {sorted(degrees)}.")
    return degrees.pop() if degrees else None


def compose(p, q):
    """
    Returns the permutation x -> p(q(x)) (q acts first).
    """
    if p.degree != q.degree:
        raise DegreeMismatch(f"Cannot compose permutations of degree {p.degree} and {q.degree}.")
    pi = p.images
    return Permutation(tuple(pi[x] for x in q.images))


def compose_all(perms, degree):
    """Left-to-right product perms[0] * perms[1] * ... (the last factor acts first)."""
    result = Permutation.identity(degree)
    for perm in perms:
        result = compose(result, perm)
    return result


def commutator(a, b):
    """[a, b] = a * b * a^-1 * b^-1."""
    return compose_all([a, b, a.inverse(), b.inverse()], a.degree)


def cycle_type(p):
    return CycleType(tuple(len(c) for c in p.cycles()))


def orbits(gens, points=None, action=None):
    """
    Partitions points into orbits of the group generated by gens.

    Without an action, gens act on {0..degree-1} through their images and the
    orbits are the weak components of the generator graph. With an action,
    points is any finite iterable of hashable elements and action(gen, point)
    gives the image; only the supplied points are explored.

    Returns:
        list: orbits as sorted lists, ordered by their minimal element.
    """
    if action is not None:
        remaining = set(points)
        blocks = []
        for seed in sorted(remaining):
            if seed not in remaining:
                continue
            block = orbit_of(seed, gens, action)
            remaining.difference_update(block)
            blocks.append(sorted(block))
        return sorted(blocks, key=lambda b: b[0])

    degree = _check_common_degree(gens)
    if degree is None:
        blocks = [[p] for p in sorted(points)] if points is not None else []
        return blocks
    labels = _orbit_labels(gens, degree)
    grouped = {}
    for point, label in enumerate(labels):
        grouped.setdefault(int(label), []).append(point)
    blocks = sorted(grouped.values(), key=lambda b: b[0])
    if points is not None:
        wanted = set(points)
        blocks = [[p for p in b if p in wanted] for b in blocks]
        blocks = [b for b in blocks if b]
    return blocks


def _orbit_labels(gens, degree):
    arrays = [g.as_array() for g in gens]
    rows = np.tile(np.arange(degree), len(arrays))
    cols = np.concatenate(arrays)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(degree, degree))
    _, labels = connected_components(graph, directed=True, connection='weak')
    return labels


def orbit_of(seed, gens, action):
    """Breadth-first orbit of seed under gens acting through action(gen, point)."""
    seen = {seed}
    queue = deque([seed])
    while queue:
        point = queue.popleft()
        for gen in gens:
            image = action(gen, point)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return seen


def is_transitive(gens, n):
    if not gens:
        return n == 1
    if _check_common_degree(gens) != n:
        raise DegreeMismatch(f"Generators do not have degree {n}.")
    return len(orbits(gens)) == 1


def enumerate_group(gens, limit=None):
    """
    Breadth-first Cayley enumeration of the generated group. Serves as the
    reference oracle for StabilizerChain on small groups.
    """
    degree = _check_common_degree(gens)
    if degree is None:
        return set()
    identity = Permutation.identity(degree)
    elements = {identity}
    queue = deque([identity])
    while queue:
        element = queue.popleft()
        for gen in gens:
            product = compose(gen, element)
            if product not in elements:
                elements.add(product)
                if limit is not None and len(elements) > limit:
                    raise OrderExceedsCap(f"Group has more than {limit} elements.", lower_bound=len(elements), cap=limit)
                queue.append(product)
    return elements


def _first_moved_point(perm):
    for i, image in enumerate(perm.images):
        if i != image:
            return i
    return None


class StabilizerChain:
    """
    Base and strong generating set built by the deterministic Schreier-Sims
    algorithm. transversals[i] maps every point of the i-th basic orbit to a
    group element sending base[i] there.
    """

    def __init__(self, degree):
        self.degree = degree
        self.base = []
        self.strong_generators = []
        self.transversals = []

    @classmethod
    def from_generators(cls, gens, cap=None):
        degree = _check_common_degree(gens)
        chain = cls(degree if degree is not None else 1)
        for gen in gens:
            if not gen.is_identity and gen not in chain.strong_generators:
                chain.strong_generators.append(gen)
        chain._build(cap)
        return chain

    def level_generators(self, level):
        fixed = self.base[:level]
        return [s for s in self.strong_generators if all(s(b) == b for b in fixed)]

    def _rebuild_level(self, level):
        root = self.base[level]
        gens = self.level_generators(level)
        transversal = {root: Permutation.identity(self.degree)}
        queue = deque([root])
        while queue:
            beta = queue.popleft()
            u = transversal[beta]
            for s in gens:
                gamma = s(beta)
                if gamma not in transversal:
                    transversal[gamma] = compose(s, u)
                    queue.append(gamma)
        self.transversals[level] = transversal

    def _check_cap(self, cap):
        if cap is None:
            return
        # product of basic orbit sizes of a partial chain never exceeds |G|
        bound = self.order()
        if bound > cap:
            raise OrderExceedsCap(f"Group order is at least {bound}, above the cap {cap}.", lower_bound=bound, cap=cap)

    def strip(self, g):
        """Sifts g through the chain; returns (residue, level where sifting stopped)."""
        for level, root in enumerate(self.base):
            beta = g(root)
            transversal = self.transversals[level]
            if beta not in transversal:
                return g, level
            g = compose(transversal[beta].inverse(), g)
        return g, len(self.base)

    def contains(self, g):
        residue, level = self.strip(g)
        return level == len(self.base) and residue.is_identity

    def _build(self, cap):
        for s in self.strong_generators:
            if all(s(b) == b for b in self.base):
                self.base.append(_first_moved_point(s))
        self.transversals = [None] * len(self.base)
        for level in range(len(self.base)):
            self._rebuild_level(level)
        self._check_cap(cap)

        level = len(self.base) - 1
        while level >= 0:
            extended = False
            transversal = self.transversals[level]
            for beta, u in list(transversal.items()):
                for s in self.level_generators(level):
                    schreier = compose(transversal[s(beta)].inverse(), compose(s, u))
                    residue, stop = self.strip(schreier)
                    if stop == len(self.base) and residue.is_identity:
                        continue
                    if stop == len(self.base):
                        self.base.append(_first_moved_point(residue))
                        self.transversals.append(None)
                    self.strong_generators.append(residue)
                    for deeper in range(level + 1, stop + 1):
                        self._rebuild_level(deeper)
                    self._check_cap(cap)
                    level = stop
                    extended = True
                    break
                if extended:
                    break
            if not extended:
                level -= 1
        logger.debug("Stabilizer chain: base %s, %d strong generators, order %d",
                     [b + 1 for b in self.base], len(self.strong_generators), self.order())

    def order(self):
        return math.prod(len(t) for t in self.transversals if t is not None)


def group_order(gens, cap=None):
    """
    Exact order of the group generated by gens (stabilizer-chain method).

    Raises:
        OrderExceedsCap: if the order provably exceeds cap.
    """
    if not gens:
        return 1
    return StabilizerChain.from_generators(list(gens), cap=cap).order()
