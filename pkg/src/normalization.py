# src/normalization.py

# Normalization (Galois closure) of a covering, by the orbifold formula
# chi(N_V) = chi(O^V) |Mon(V)| and by the explicit off-diagonal deg V-fold
# self-product, plus the Galois and tameness predicates.

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from src.covering import (
    HurwitzSystem,
    Orbifold,
    euler_characteristic,
    genus_from_chi,
    orbifold_chi,
    ramification_orbifold,
)
from src.exceptions import BudgetExceeded, InternalConsistency
from src.fiber_product import Component, self_product_offdiagonal
from src.permutations import cycle_type, group_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalizationData:
    mon_order: int
    orbifold: Orbifold
    orbifold_chi: Fraction
    chi_N: int
    genus_N: int
    is_galois: bool
    explicit_cover: Optional[HurwitzSystem] = None


@dataclass(frozen=True)
class TamenessVerdict:
    tame: bool
    witness: Optional[Component] = None
    witness_genus: Optional[int] = None
    components_checked: int = 0


def monodromy_order(H, cap=None):
    """|Mon(H)|: order of the group generated by all handle and branch permutations."""
    if H.degree == 1:
        return 1
    return group_order(H.generators(), cap=cap)


def is_galois(H, cap=None):
    return monodromy_order(H, cap=cap) == H.degree


def normalization_genus(H, cap=None):
    """
    Normalization data from chi(N) = chi(O^H) * |Mon(H)|.

    Raises:
        OrderExceedsCap: |Mon(H)| exceeds cap.
        InternalConsistency: chi(N) is not an even integer.
    """
    mon = monodromy_order(H, cap=cap)
    orbifold = ramification_orbifold(H)
    chi_o = orbifold_chi(orbifold)
    chi_n = chi_o * mon
    if chi_n.denominator != 1 or chi_n.numerator % 2 != 0:
        raise InternalConsistency(f"chi(O) * |Mon| = {chi_o} * {mon} = {chi_n} is not an even integer.")
    chi_n = int(chi_n)
    return NormalizationData(
        mon_order=mon,
        orbifold=orbifold,
        orbifold_chi=chi_o,
        chi_N=chi_n,
        genus_N=genus_from_chi(chi_n),
        is_galois=mon == H.degree,
    )


def normalization_explicit(H, budget=None):
    """
    The component of the off-diagonal deg H-fold self-product through the
    lexicographically least injective tuple, as a covering of the base.
    A degree-one map is its own normalization.

    Raises:
        BudgetExceeded: the orbit of the least tuple exceeds budget.
    """
    if H.degree == 1:
        return H
    n = H.degree
    decomposition = self_product_offdiagonal(H, n, budget=budget, seeds=[tuple(range(n))])
    for component in decomposition.components:
        if component.orbit_key == 1:
            return component.covering
    raise InternalConsistency("The least injective tuple is missing from the explored orbits.")


def galois_cycle_property(H):
    """Every branch permutation has all cycles of one length."""
    return all(len(set(cycle_type(bp.perm).parts)) == 1 for bp in H.branch_points)


def normalize(H, cap=None, budget=None):
    """
    Both routes: the orbifold formula always (within cap), the explicit
    construction when within budget. The explicit cover is cross-checked
    against the formula.
    """
    data = normalization_genus(H, cap=cap)
    try:
        explicit = normalization_explicit(H, budget=budget)
    except BudgetExceeded as e:
        logger.info("Explicit normalization skipped: %s", e)
        return data

    if explicit.degree != data.mon_order:
        raise InternalConsistency(f"Explicit normalization has degree {explicit.degree}, |Mon| = {data.mon_order}.")
    chi = euler_characteristic(explicit)
    if chi != data.chi_N:
        raise InternalConsistency(f"Explicit normalization has chi {chi}, formula gives {data.chi_N}.")
    if ramification_orbifold(explicit) != data.orbifold:
        raise InternalConsistency("Explicit normalization and the covering have different ramification orbifolds.")
    if not galois_cycle_property(explicit):
        raise InternalConsistency("Explicit normalization has a branch permutation with unequal cycle lengths.")
    return NormalizationData(
        mon_order=data.mon_order,
        orbifold=data.orbifold,
        orbifold_chi=data.orbifold_chi,
        chi_N=data.chi_N,
        genus_N=data.genus_N,
        is_galois=data.is_galois,
        explicit_cover=explicit,
    )


def is_tame(H, budget=None):
    """
    Tame iff every off-diagonal component of the 2-fold self-product has
    genus >= 2. A wild verdict carries the lowest-genus component as witness.
    """
    decomposition = self_product_offdiagonal(H, 2, budget=budget)
    if not decomposition.complete:
        raise BudgetExceeded("2-fold self-product was not fully enumerated.")
    low = [c for c in decomposition.components if c.genus < 2]
    checked = decomposition.n_components
    if not low:
        return TamenessVerdict(tame=True, components_checked=checked)
    witness = min(low, key=lambda c: (c.genus, c.size, c.orbit_key))
    return TamenessVerdict(tame=False, witness=witness, witness_genus=witness.genus, components_checked=checked)
