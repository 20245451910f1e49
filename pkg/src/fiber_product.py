# src/fiber_product.py

# Components of fibre products of two aligned coverings, the Abhyankar GCD
# formula as an independent oracle, and k-fold off-diagonal self-products.
#
# Grid points (i, j), 1 <= i <= deg P, 1 <= j <= deg W, are encoded as
# (i - 1) * deg W + (j - 1) + 1 externally and without the trailing +1 inside.
# Injective k-tuples are encoded by their rank in lexicographic order, which
# is the mixed-radix falling-factorial index computed by encode_injective_tuple.

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.special import perm as _scipy_perm

from src.covering import (
    BranchPoint,
    Handle,
    HurwitzSystem,
    euler_characteristic,
    genus_from_chi,
    surface_euler_characteristic,
    validate,
    with_labels,
)
from src.exceptions import BaseMismatch, BudgetExceeded, KOutOfRange, LabelConflict, NotAligned
from src.permutations import Permutation, cycle_type, orbit_of, orbits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Component:
    """
    One component E_j of a fibre product, carried as the covering E_j -> C.

    deg_V is the degree of E_j -> R (source of P), deg_U of E_j -> T (source
    of W). For k-fold self-products both are the degree of the projection to
    the first coordinate.
    """
    covering: HurwitzSystem
    deg_V: int
    deg_U: int
    genus: int
    orbit_key: int
    off_diagonal: bool
    points: tuple

    @property
    def size(self):
        return self.covering.degree

    @property
    def chi(self):
        return euler_characteristic(self.covering)


@dataclass(frozen=True)
class FiberProductDecomposition:
    components: tuple
    inputs: tuple
    k: int = 2
    complete: bool = True

    @property
    def n_components(self):
        return len(self.components)

    def total_chi(self):
        return sum(c.chi for c in self.components)

    def off_diagonal_components(self):
        return [c for c in self.components if c.off_diagonal]


def falling_factorial(n, k):
    """n (n-1) ... (n-k+1), exact."""
    if k < 0 or k > n:
        return 0
    return int(_scipy_perm(n, k, exact=True))


def encode_grid_point(i, j, deg_w):
    """1-based (i, j) -> 1-based grid code."""
    return (i - 1) * deg_w + (j - 1) + 1


def decode_grid_point(code, deg_w):
    """1-based grid code -> 1-based (i, j)."""
    i, j = divmod(code - 1, deg_w)
    return i + 1, j + 1


def encode_injective_tuple(points, n):
    """
    Mixed-radix falling-factorial index of an injective tuple of 0-based points;
    equals the tuple's rank among itertools.permutations(range(n), k).
    """
    k = len(points)
    unused = list(range(n))
    index = 0
    for position, point in enumerate(points):
        digit = unused.index(point)
        unused.pop(digit)
        index += digit * falling_factorial(n - position - 1, k - position - 1)
    return index


def decode_injective_tuple(index, n, k):
    unused = list(range(n))
    out = []
    for position in range(k):
        weight = falling_factorial(n - position - 1, k - position - 1)
        digit, index = divmod(index, weight)
        out.append(unused.pop(digit))
    return tuple(out)


def align(P, W):
    """
    Puts P and W over the merged branch list c(P) U c(W), inserting identity
    permutations where a map is unbranched. Labels shared by both systems must
    occur in the same relative order; handle generators are identified by
    position.

    Returns:
        tuple: (P, W) in aligned form.
    """
    if P.base_genus != W.base_genus:
        raise BaseMismatch(f"Base genera differ: {P.base_genus} vs {W.base_genus}.")

    p_labels, w_labels = P.labels, W.labels
    shared = set(p_labels) & set(w_labels)
    p_shared = [label for label in p_labels if label in shared]
    w_shared = [label for label in w_labels if label in shared]
    if p_shared != w_shared:
        raise LabelConflict(f"Shared labels occur in different orders: {p_shared} vs {w_shared}.")

    merged = []
    i = j = 0
    while i < len(p_labels) or j < len(w_labels):
        if i < len(p_labels) and p_labels[i] not in shared:
            merged.append(p_labels[i])
            i += 1
        elif j < len(w_labels) and w_labels[j] not in shared:
            merged.append(w_labels[j])
            j += 1
        else:
            merged.append(p_labels[i])
            i += 1
            j += 1
    return with_labels(P, merged), with_labels(W, merged)


def is_aligned(P, W):
    return P.base_genus == W.base_genus and P.labels == W.labels


def _restrict(template, actions, orbit):
    """The covering given by the restriction of the generator actions to one orbit."""
    position = {point: i for i, point in enumerate(orbit)}
    perms = [Permutation(tuple(position[g.images[p]] for p in orbit)) for g in actions]
    g = template.base_genus
    handles = tuple(Handle(perms[2 * h], perms[2 * h + 1]) for h in range(g))
    branch_points = tuple(BranchPoint(label, perms[2 * g + r]) for r, label in enumerate(template.labels))
    return HurwitzSystem(len(orbit), g, branch_points, handles)


def _components_from_orbits(template, actions, blocks, deg_v_divisor, deg_u_divisor, off_diagonal, debug):
    components = []
    for block in blocks:
        covering = _restrict(template, actions, block)
        validate(covering, check_transitive=debug)
        size = len(block)
        components.append(Component(
            covering=covering,
            deg_V=size // deg_v_divisor,
            deg_U=size // deg_u_divisor,
            genus=genus_from_chi(euler_characteristic(covering)),
            orbit_key=block[0] + 1,
            off_diagonal=off_diagonal(block),
            points=tuple(block),
        ))
    components.sort(key=lambda c: (c.size, c.orbit_key))
    return tuple(components)


def grid_actions(P, W):
    """Diagonal action of each base generator on the encoded grid."""
    m = W.degree
    actions = []
    for gp, gw in zip(P.generators(), W.generators()):
        images = np.add.outer(gp.as_array() * m, gw.as_array()).ravel()
        actions.append(Permutation(tuple(images.tolist())))
    return actions


def fiber_product(P, W, debug=False):
    """
    Decomposes the fibre product of an aligned pair into components: the
    orbits of the diagonal action on {1..deg P} x {1..deg W}.

    Returns:
        FiberProductDecomposition: components sorted by (orbit size, orbit_key).
    """
    if not is_aligned(P, W):
        raise NotAligned(f"Systems are not aligned: labels {list(P.labels)} vs {list(W.labels)}.")

    n, m = P.degree, W.degree
    actions = grid_actions(P, W)
    blocks = orbits(actions) if actions else [[x] for x in range(n * m)]
    same_map = P == W

    def off_diagonal(block):
        # meaningful only for P == W: a component off the diagonal x = y
        return same_map and all(code // m != code % m for code in block)

    components = _components_from_orbits(P, actions, blocks, n, m, off_diagonal, debug)
    logger.debug("Fibre product of degrees %d x %d: %d components", n, m, len(components))
    return FiberProductDecomposition(components=components, inputs=(P, W))


def abhyankar_chi_total(P, W):
    """
    (chi(C) - r) deg P deg W + sum over the r critical values z_i of
    sum_{j1, j2} GCD(p_{i,j1}, w_{i,j2}), read off the two passports.
    """
    if not is_aligned(P, W):
        P, W = align(P, W)
    total = 0
    r = 0
    for bp, bw in zip(P.branch_points, W.branch_points):
        if bp.perm.is_identity and bw.perm.is_identity:
            continue
        r += 1
        p_parts, w_parts = cycle_type(bp.perm).parts, cycle_type(bw.perm).parts
        total += sum(math.gcd(p, w) for p in p_parts for w in w_parts)
    return (surface_euler_characteristic(P.base_genus) - r) * P.degree * W.degree + total


def abhyankar_local_multiplicities(P, W):
    """
    Per label, the multiset of local multiplicities of E -> C over that label
    predicted by the Abhyankar lemma: lcm(p, w) repeated GCD(p, w) times for
    every pair of cycle lengths.
    """
    if not is_aligned(P, W):
        P, W = align(P, W)
    out = {}
    for bp, bw in zip(P.branch_points, W.branch_points):
        counts = Counter()
        for p in cycle_type(bp.perm).parts:
            for w in cycle_type(bw.perm).parts:
                counts[math.lcm(p, w)] += math.gcd(p, w)
        out[bp.label] = counts
    return out


def component_local_multiplicities(decomposition):
    """Per label, the multiset of cycle lengths summed over all components."""
    out = {}
    for component in decomposition.components:
        for bp in component.covering.branch_points:
            out.setdefault(bp.label, Counter()).update(cycle_type(bp.perm).parts)
    return out


def verify_degree_identities(decomposition):
    """
    sum deg V_j = deg W, sum deg U_j = deg P, and every orbit size divisible by
    both degrees.
    """
    P, W = decomposition.inputs
    divisible = all(c.size % P.degree == 0 and c.size % W.degree == 0 for c in decomposition.components)
    return (
        divisible
        and sum(c.deg_V for c in decomposition.components) == W.degree
        and sum(c.deg_U for c in decomposition.components) == P.degree
    )


def _tuple_action(gen, point):
    return tuple(gen.images[x] for x in point)


def self_product_offdiagonal(V, k, budget=None, seeds=None, debug=False):
    """
    Components of the diagonal action on injective k-tuples of {1..deg V}.

    All n (n-1) ... (n-k+1) tuples are enumerated when that count is within
    budget. Otherwise only the orbits of the seed tuples (default: the
    lexicographically least tuple) are explored and the result is marked
    incomplete.

    Raises:
        KOutOfRange: unless 2 <= k <= deg V.
        BudgetExceeded: an explored orbit alone is larger than the budget.
    """
    n = V.degree
    if k < 2 or k > n:
        raise KOutOfRange(f"k = {k} is outside 2..{n}.")
    total = falling_factorial(n, k)
    gens = V.generators()

    if budget is None or total <= budget:
        tuples = list(itertools.permutations(range(n), k))
        index = {t: i for i, t in enumerate(tuples)}
        actions = [Permutation(tuple(index[_tuple_action(g, t)] for t in tuples)) for g in gens]
        blocks = orbits(actions) if actions else [[i] for i in range(total)]
        complete = True
    else:
        logger.info("Injective %d-tuple space of size %d exceeds budget %d; exploring seeds only.", k, total, budget)
        seeds = seeds or [tuple(range(k))]
        explored = {}
        for seed in seeds:
            if encode_injective_tuple(seed, n) in explored:
                continue
            orbit = orbit_of(tuple(seed), gens, _tuple_action)
            if len(orbit) > budget:
                raise BudgetExceeded(f"Orbit of {seed} has {len(orbit)} tuples, budget is {budget}.",
                                     required=len(orbit), budget=budget)
            for t in orbit:
                explored[encode_injective_tuple(t, n)] = t
        codes = sorted(explored)
        position = {code: i for i, code in enumerate(codes)}
        actions = [Permutation(tuple(position[encode_injective_tuple(_tuple_action(g, explored[c]), n)] for c in codes))
                   for g in gens]
        local_blocks = orbits(actions) if actions else [[i] for i in range(len(codes))]
        # translate back to global tuple codes after restricting
        components = _components_from_orbits(V, actions, local_blocks, n, n, lambda block: True, debug)
        components = tuple(
            Component(c.covering, c.deg_V, c.deg_U, c.genus, codes[c.points[0]] + 1, True,
                      tuple(codes[p] for p in c.points))
            for c in components
        )
        components = tuple(sorted(components, key=lambda c: (c.size, c.orbit_key)))
        return FiberProductDecomposition(components=components, inputs=(V, V), k=k, complete=False)

    components = _components_from_orbits(V, actions, blocks, n, n, lambda block: True, debug)
    logger.debug("Off-diagonal %d-fold self-product of degree %d: %d components", k, n, len(components))
    return FiberProductDecomposition(components=components, inputs=(V, V), k=k, complete=complete)


def project_to_pairs(component, pair_decomposition, n, k):
    """
    The component of the 2-fold off-diagonal self-product that contains the
    projection of a k-fold component onto its first two coordinates.
    """
    first = decode_injective_tuple(component.points[0], n, k)
    pair_code = encode_injective_tuple(first[:2], n)
    for candidate in pair_decomposition.components:
        if pair_code in candidate.points:
            return candidate
    raise ValueError(f"Pair {first[:2]} is not covered by the supplied 2-fold decomposition.")
