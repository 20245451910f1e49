# src/covering.py

# A holomorphic map between compact Riemann surfaces, encoded as a Hurwitz
# system: handle pairs (a_i, b_i) and branch permutations sigma_j of the fibre
# over a base of genus g with
#   [a_1, b_1] ... [a_g, b_g] * sigma_1 ... sigma_r = identity.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from src.exceptions import (
    DegreeMismatch,
    DuplicateLabel,
    InternalParity,
    NotTransitive,
    RelationViolated,
)
from src.permutations import (
    Permutation,
    commutator,
    compose_all,
    cycle_type,
    is_transitive,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BranchPoint:
    label: str
    perm: Permutation


@dataclass(frozen=True)
class Handle:
    a: Permutation
    b: Permutation


@dataclass(frozen=True)
class HurwitzSystem:
    """
    Monodromy data of a degree-n covering of a genus-g base.

    Branch points may carry identity permutations ("aligned" form); the
    "canonical" form drops them.
    """
    degree: int
    base_genus: int = 0
    branch_points: tuple = ()
    handles: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'branch_points', tuple(self.branch_points))
        object.__setattr__(self, 'handles', tuple(self.handles))
        if self.degree < 1:
            raise ValueError(f"Degree must be >= 1, got {self.degree}.")
        if self.base_genus < 0:
            raise ValueError(f"Base genus must be >= 0, got {self.base_genus}.")
        if len(self.handles) != self.base_genus:
            raise ValueError(f"Expected {self.base_genus} handle pairs, got {len(self.handles)}.")
        for perm in self.generators():
            if perm.degree != self.degree:
                raise DegreeMismatch(f"Permutation {perm} has degree {perm.degree}, covering has degree {self.degree}.")

    @property
    def labels(self):
        return tuple(bp.label for bp in self.branch_points)

    def generators(self):
        """All handle and branch permutations, handles first."""
        gens = []
        for handle in self.handles:
            gens.extend([handle.a, handle.b])
        gens.extend(bp.perm for bp in self.branch_points)
        return gens

    def perm_at(self, label):
        for bp in self.branch_points:
            if bp.label == label:
                return bp.perm
        return Permutation.identity(self.degree)


@dataclass(frozen=True)
class Orbifold:
    """A base surface with ramification indices nu >= 2 at finitely many labeled points."""
    base_genus: int
    indices: tuple = field(default=())

    def __post_init__(self):
        indices = tuple((str(label), int(nu)) for label, nu in self.indices if int(nu) != 1)
        if any(nu < 1 for _, nu in indices):
            raise ValueError("Ramification indices must be >= 1.")
        object.__setattr__(self, 'indices', indices)

    def index_of(self, label):
        for name, nu in self.indices:
            if name == label:
                return nu
        return 1


def surface_euler_characteristic(genus):
    return 2 - 2 * genus


def relation_product(H):
    """[a_1,b_1]...[a_g,b_g] * sigma_1...sigma_r under the right-then-left order."""
    factors = [commutator(h.a, h.b) for h in H.handles]
    factors.extend(bp.perm for bp in H.branch_points)
    return compose_all(factors, H.degree)


def validate(H, check_transitive=True):
    """
    Verifies the invariants of a Hurwitz system and returns it unchanged.

    Raises:
        DuplicateLabel: two branch points share a label.
        RelationViolated: the surface-group relation does not give the identity.
        NotTransitive: the generators do not act transitively (disconnected cover).
    """
    seen = set()
    for label in H.labels:
        if label in seen:
            raise DuplicateLabel(f"Branch label {label!r} appears more than once.")
        seen.add(label)

    product = relation_product(H)
    if not product.is_identity:
        raise RelationViolated(f"Product relation evaluates to {product}, not the identity.")

    if check_transitive and H.degree > 1 and not is_transitive(H.generators(), H.degree):
        raise NotTransitive(f"Generators of the degree-{H.degree} system do not act transitively.")
    return H


def canonical_form(H):
    """Drops identity branch permutations."""
    kept = tuple(bp for bp in H.branch_points if not bp.perm.is_identity)
    if len(kept) == len(H.branch_points):
        return H
    return HurwitzSystem(H.degree, H.base_genus, kept, H.handles)


def with_labels(H, labels):
    """
    Aligned form over the given label order: existing branch permutations keep
    their relative order, identities are inserted at missing labels.
    """
    missing = [label for label in H.labels if label not in labels]
    if missing:
        raise ValueError(f"Labels {missing} are not part of the target label list.")
    branch_points = tuple(BranchPoint(label, H.perm_at(label)) for label in labels)
    return HurwitzSystem(H.degree, H.base_genus, branch_points, H.handles)


def euler_characteristic(H):
    """Riemann-Hurwitz: chi(E) = (2 - 2 g_C) n - sum over branch cycles of (length - 1)."""
    branching = sum(cycle_type(bp.perm).branching for bp in H.branch_points)
    return surface_euler_characteristic(H.base_genus) * H.degree - branching


def genus_from_chi(chi):
    if chi % 2 != 0 or chi > 2:
        raise InternalParity(f"Euler characteristic {chi} does not belong to a connected closed surface.")
    return 1 - chi // 2


def genus(H):
    return genus_from_chi(euler_characteristic(H))


def passport(H):
    """Cycle type per branch label, identity labels omitted."""
    return [(bp.label, cycle_type(bp.perm)) for bp in H.branch_points if not bp.perm.is_identity]


def critical_values(H):
    """Labels with a non-identity permutation, in branch order."""
    return tuple(bp.label for bp in H.branch_points if not bp.perm.is_identity)


def ramification_orbifold(H):
    """nu(z) = lcm of the local multiplicities over z."""
    indices = []
    for bp in H.branch_points:
        nu = cycle_type(bp.perm).lcm
        if nu > 1:
            indices.append((bp.label, nu))
    return Orbifold(H.base_genus, tuple(indices))


def orbifold_chi(orbifold):
    chi = Fraction(surface_euler_characteristic(orbifold.base_genus))
    for _, nu in orbifold.indices:
        chi += Fraction(1, nu) - 1
    return chi
