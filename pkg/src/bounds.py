# src/bounds.py

# Every inequality about genera of fibre products evaluated in exact rational
# arithmetic on computed decompositions and normalizations.
#
# Each check is stored as "lhs REL rhs" with REL one of '>=', '>', '=='; upper
# bounds are stored with the bound on the left. Inapplicable checks record the
# failed hypotheses, skipped checks the exhausted cap or budget.

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from src.config import get_budgets
from src.covering import (
    euler_characteristic,
    genus,
    orbifold_chi,
    ramification_orbifold,
    surface_euler_characteristic,
    validate,
)
from src.exceptions import BudgetExceeded, OrderExceedsCap
from src.fiber_product import (
    abhyankar_chi_total,
    align,
    falling_factorial,
    fiber_product,
    is_aligned,
    self_product_offdiagonal,
)
from src.normalization import galois_cycle_property, is_tame, normalization_explicit, normalization_genus

logger = logging.getLogger(__name__)

SKIPPED_CAP = 'skipped: group order cap'
SKIPPED_BUDGET = 'skipped: tuple budget'

_COMPUTE = object()


@dataclass(frozen=True)
class BoundCheck:
    name: str
    applicable: bool
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    relation: str = '>='
    holds: Optional[bool] = None
    context: str = ''
    reason: Optional[str] = None
    skipped: bool = False

    @property
    def strict(self):
        return self.relation == '>'

    @property
    def failed(self):
        return self.applicable and not self.holds


@dataclass(frozen=True)
class BoundReport:
    checks: tuple
    summary: dict = field(default_factory=dict)

    def failures(self):
        return [c for c in self.checks if c.failed]

    @property
    def all_hold(self):
        return not self.failures()

    def by_name(self, name):
        return [c for c in self.checks if c.name == name]


@dataclass(frozen=True)
class VerifyConfig:
    group_order_cap: int
    tuple_budget: int

    @classmethod
    def from_env(cls, group_order_cap=None, tuple_budget=None):
        cap, budget = get_budgets(group_order_cap, tuple_budget)
        return cls(group_order_cap=cap, tuple_budget=budget)


def evaluate(name, lhs, rhs, relation='>=', context=''):
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    if relation == '>':
        holds = lhs > rhs
    elif relation == '>=':
        holds = lhs >= rhs
    elif relation == '==':
        holds = lhs == rhs
    else:
        raise ValueError(f"Unknown relation {relation!r}.")
    if not holds:
        logger.warning("Check %s failed on %s: %s %s %s does not hold", name, context, lhs, relation, rhs)
    return BoundCheck(name, True, lhs, rhs, relation, holds, context)


def inapplicable(name, reasons, relation='>=', context=''):
    return BoundCheck(name, False, relation=relation, context=context, reason='; '.join(reasons))


def skipped(name, reason, relation='>=', context=''):
    return BoundCheck(name, False, relation=relation, context=context, reason=reason, skipped=True)


def _component_context(index, component):
    return f"E[{index}] key={component.orbit_key}"


def _is_sphere_base(H):
    return H.base_genus == 0


def theorem1_rhs(P, W):
    """Right-hand sides (general, weak) of the unique-component bound, without its hypotheses."""
    rhs = (genus(P) - 1) * (W.degree - 1) + 1 + Fraction(P.degree, 84)
    rhs_weak = Fraction(P.degree - 84 * W.degree + 168, 84)
    return rhs, rhs_weak


def theorem1_check(P, W, decomposition, normW):
    """
    Unique component, deg W >= 2, g(N_W) > 1:
      g(E) >= (g(R) - 1)(deg W - 1) + 1 + deg P / 84          (and the weaker
      g(E) >= (deg P - 84 deg W + 168) / 84),
    strict over a sphere base. Returns four checks: the two general forms and
    their strict sphere-base variants.
    """
    names = ('theorem1', 'theorem1_weak', 'theorem4', 'theorem4_weak')
    if normW is None:
        return [skipped(name, SKIPPED_CAP, context='E') for name in names]

    reasons = []
    if W.degree < 2:
        reasons.append('deg W < 2')
    if decomposition.n_components != 1:
        reasons.append('n(P,W) > 1')
    if normW.genus_N <= 1:
        reasons.append('g(N_W) <= 1')
    if reasons:
        checks = [inapplicable(name, reasons, context='E') for name in names[:2]]
        sphere_reasons = reasons + ([] if _is_sphere_base(P) else ['base is not the sphere'])
        checks += [inapplicable(name, sphere_reasons, '>', context='E') for name in names[2:]]
        return checks

    g_e = decomposition.components[0].genus
    rhs, rhs_weak = theorem1_rhs(P, W)
    checks = [
        evaluate('theorem1', g_e, rhs, '>=', 'E'),
        evaluate('theorem1_weak', g_e, rhs_weak, '>=', 'E'),
    ]
    if _is_sphere_base(P):
        checks += [
            evaluate('theorem4', g_e, rhs, '>', 'E'),
            evaluate('theorem4_weak', g_e, rhs_weak, '>', 'E'),
        ]
    else:
        checks += [inapplicable(name, ['base is not the sphere'], '>', 'E') for name in names[2:]]
    return checks


def theorem2_rhs(P, W, deg_v):
    return (genus(P) - 1) * (deg_v - 1) + 1 + Fraction(P.degree, falling_factorial(W.degree, deg_v))


def theorem2_check(P, W, component, min_genus_kfold, context=''):
    """
    deg V > 1 and no off-diagonal component of genus <= 1 in the deg V-fold
    self-product of W:
      g(E_j) >= (g(R) - 1)(deg V - 1) + 1 + deg P / (deg W)_(deg V).
    min_genus_kfold is None when that self-product could not be enumerated.
    """
    if component.deg_V <= 1:
        return inapplicable('theorem2', ['deg V = 1'], context=context)
    if min_genus_kfold is None:
        return skipped('theorem2', SKIPPED_BUDGET, context=context)
    if min_genus_kfold <= 1:
        return inapplicable('theorem2', [f'{component.deg_V}-fold self-product of W has a component of genus <= 1'],
                            context=context)
    return evaluate('theorem2', component.genus, theorem2_rhs(P, W, component.deg_V), '>=', context)


def _rational_reasons(A, B):
    reasons = []
    if A.base_genus != 0:
        reasons.append('base is not the sphere')
    if genus(A) != 0 or genus(B) != 0:
        reasons.append('source surfaces are not spheres')
    return reasons


def theorem3_check(A, B, component, min_genus_kfold=_COMPUTE, context='', budget=None):
    """
    Rational case, W = A of degree n, P = B of degree m, k = deg V > 1:
      g(C) > 2 - k + m / (n (n-1) ... (n-k+1)),
    unless A(x_1) = ... = A(x_k) has an off-diagonal component of genus <= 1.
    """
    reasons = _rational_reasons(A, B)
    k = component.deg_V
    if k <= 1:
        reasons.append('k = 1')
    if reasons:
        return inapplicable('theorem3', reasons, '>', context)
    if min_genus_kfold is _COMPUTE:
        min_genus_kfold = min_offdiagonal_genus(A, k, budget)
    if min_genus_kfold is None:
        return skipped('theorem3', SKIPPED_BUDGET, '>', context)
    if min_genus_kfold <= 1:
        return inapplicable('theorem3', [f'{k}-fold self-product of A has a component of genus <= 1'], '>', context)
    rhs = 2 - k + Fraction(B.degree, falling_factorial(A.degree, k))
    return evaluate('theorem3', component.genus, rhs, '>', context)


def theorem_ratt_check(A, B, decomposition, tame_verdict=_COMPUTE, budget=None):
    """
    A tame, rational case: g(C) > 2 - n + m / n! on every component except
    graphs x = S(y) (deg V = 1), which are reported as exceptions.
    """
    checks = []
    reasons = _rational_reasons(A, B)
    if tame_verdict is _COMPUTE and A.degree >= 2:
        tame_verdict = _safe_tameness(A, budget)
    for index, component in enumerate(decomposition.components, start=1):
        context = _component_context(index, component)
        if reasons:
            checks.append(inapplicable('theorem_ratt', reasons, '>', context))
        elif A.degree < 2:
            # every component of a degree-1 A is a graph
            checks.append(inapplicable('theorem_ratt', ['graph exception: deg V = 1'], '>', context))
        elif tame_verdict is None:
            checks.append(skipped('theorem_ratt', SKIPPED_BUDGET, '>', context))
        elif not tame_verdict.tame:
            checks.append(inapplicable('theorem_ratt', ['A is wild'], '>', context))
        elif component.deg_V == 1:
            checks.append(inapplicable('theorem_ratt', ['graph exception: deg V = 1'], '>', context))
        else:
            n, m = A.degree, B.degree
            rhs = 2 - n + Fraction(m, falling_factorial(n, n))
            checks.append(evaluate('theorem_ratt', component.genus, rhs, '>', context))
    return checks


def castelnuovo_severi_check(component, P, W, context=''):
    """g(E_j) <= g(R) deg V + g(T) deg U + (deg V - 1)(deg U - 1)."""
    bound = genus(P) * component.deg_V + genus(W) * component.deg_U + (component.deg_V - 1) * (component.deg_U - 1)
    return evaluate('castelnuovo_severi', bound, component.genus, '>=', context)


def castelnuovo_severi_global_check(component, P, W, context=''):
    """g(E_j) <= g(R) deg W + g(T) deg P + (deg W - 1)(deg P - 1)."""
    bound = genus(P) * W.degree + genus(W) * P.degree + (W.degree - 1) * (P.degree - 1)
    return evaluate('castelnuovo_severi_global', bound, component.genus, '>=', context)


def reduced_degree_checks(component, P, W, context=''):
    """A component of a fibre product gives a reduced square: deg V <= deg W, deg U <= deg P."""
    return [
        evaluate('reduced_degree_V', W.degree, component.deg_V, '>=', context),
        evaluate('reduced_degree_U', P.degree, component.deg_U, '>=', context),
    ]


def hurwitz_check(norm, context='N_W'):
    """|Mon| = |Aut(N, N -> C)| <= 84 (g(N) - 1) when g(N) > 1."""
    if norm is None:
        return skipped('hurwitz', SKIPPED_CAP, context=context)
    if norm.genus_N <= 1:
        return inapplicable('hurwitz', [f'g({context}) <= 1'], context=context)
    return evaluate('hurwitz', 84 * (norm.genus_N - 1), norm.mon_order, '>=', context)


def lemma2_check(H, context=''):
    """chi(O^H) >= chi(E) + chi(C)(1 - deg H), strict over the sphere when deg H >= 2."""
    lhs = orbifold_chi(ramification_orbifold(H))
    rhs = euler_characteristic(H) + surface_euler_characteristic(H.base_genus) * (1 - H.degree)
    relation = '>' if _is_sphere_base(H) and H.degree >= 2 else '>='
    return evaluate('lemma2', lhs, rhs, relation, context)


def normalization_ratio_check(P, W, decomposition, normW):
    """
    Unique component with deg V = deg W >= 2:
      chi(E) + chi(R)(1 - deg V) <= chi(N_W) deg P / |Mon(W)|,
    strict when base and R are spheres.
    """
    if normW is None:
        return skipped('normalization_ratio', SKIPPED_CAP, context='E')
    reasons = []
    if W.degree < 2:
        reasons.append('deg W < 2')
    if decomposition.n_components != 1:
        reasons.append('n(P,W) > 1')
    if reasons:
        return inapplicable('normalization_ratio', reasons, context='E')
    component = decomposition.components[0]
    chi_r = surface_euler_characteristic(genus(P))
    rhs = component.chi + chi_r * (1 - component.deg_V)
    lhs = Fraction(normW.chi_N * P.degree, normW.mon_order)
    relation = '>' if _is_sphere_base(P) and genus(P) == 0 else '>='
    return evaluate('normalization_ratio', lhs, rhs, relation, 'E')


def theorem1_dominance_check(theorem1, theorem2, W, P):
    """
    In the unique-component case with (deg W)! >= 84 the Theorem 1 bound is
    at least the Theorem 2 bound evaluated at deg V = deg W.
    """
    reasons = []
    if not theorem1.applicable:
        reasons.append('theorem1 not applicable')
    if theorem2 is None or not theorem2.applicable:
        reasons.append('theorem2 not applicable')
    if falling_factorial(W.degree, W.degree) < 84:
        reasons.append('(deg W)! < 84')
    if reasons:
        return inapplicable('theorem1_dominance', reasons, context='E')
    return evaluate('theorem1_dominance', theorem1.rhs, theorem2_rhs(P, W, W.degree), '>=', 'E')


def tame_normalization_check(H, verdict, norm, context):
    """A tame map has g(N) > 1. Tameness needs deg H >= 2."""
    if H.degree < 2:
        return inapplicable('tame_normalization', ['deg < 2'], '>', context)
    if verdict is None:
        return skipped('tame_normalization', SKIPPED_BUDGET, '>', context)
    if norm is None:
        return skipped('tame_normalization', SKIPPED_CAP, '>', context)
    if not verdict.tame:
        return inapplicable('tame_normalization', [f'{context} is wild'], '>', context)
    return evaluate('tame_normalization', norm.genus_N, 1, '>', context)


def normalization_route_checks(H, norm, budget, context):
    """
    The orbifold formula against the explicit normalization: equal genus and
    degree |Mon|, equal ramification orbifolds, equal cycle lengths in every
    branch permutation of the Galois closure.
    """
    names = ('normalization_routes', 'normalization_degree', 'normalization_orbifold', 'galois_cycle_property')
    if norm is None:
        return [skipped(name, SKIPPED_CAP, '==', context) for name in names]
    try:
        explicit = normalization_explicit(H, budget=budget)
    except BudgetExceeded:
        return [skipped(name, SKIPPED_BUDGET, '==', context) for name in names]
    return [
        evaluate('normalization_routes', genus(explicit), norm.genus_N, '==', context),
        evaluate('normalization_degree', explicit.degree, norm.mon_order, '==', context),
        evaluate('normalization_orbifold', int(ramification_orbifold(explicit) == norm.orbifold), 1, '==', context),
        evaluate('galois_cycle_property', int(galois_cycle_property(explicit)), 1, '==', context),
    ]


def _safe_normalization(H, cap):
    try:
        return normalization_genus(H, cap=cap)
    except OrderExceedsCap as e:
        logger.info("Normalization skipped: %s", e)
        return None


def _safe_tameness(H, budget):
    if H.degree < 2:
        return None
    try:
        return is_tame(H, budget=budget)
    except BudgetExceeded as e:
        logger.info("Tameness skipped: %s", e)
        return None


def min_offdiagonal_genus(H, k, budget):
    """Smallest genus among off-diagonal components of the k-fold self-product, or None if not enumerable."""
    try:
        decomposition = self_product_offdiagonal(H, k, budget=budget)
    except BudgetExceeded:
        return None
    if not decomposition.complete:
        return None
    return min(c.genus for c in decomposition.components)


def verify_all(P, W, config=None):
    """
    Runs the decomposition, both normalizations and every check on a pair of
    coverings of a common base. The report order is fixed, so identical inputs
    and config give identical reports.
    """
    config = config or VerifyConfig.from_env()
    if not is_aligned(P, W):
        P, W = align(P, W)
    validate(P)
    validate(W)

    decomposition = fiber_product(P, W)
    normP = _safe_normalization(P, config.group_order_cap)
    normW = _safe_normalization(W, config.group_order_cap)
    tameP = _safe_tameness(P, config.tuple_budget)
    tameW = _safe_tameness(W, config.tuple_budget)
    kfold = {k: min_offdiagonal_genus(W, k, config.tuple_budget)
             for k in sorted({c.deg_V for c in decomposition.components if c.deg_V > 1})}

    orbit_chi = decomposition.total_chi()
    checks = [
        evaluate('gcd_oracle', abhyankar_chi_total(P, W), orbit_chi, '==', 'E'),
        evaluate('degree_identity_V', sum(c.deg_V for c in decomposition.components), W.degree, '==', 'E'),
        evaluate('degree_identity_U', sum(c.deg_U for c in decomposition.components), P.degree, '==', 'E'),
        lemma2_check(P, 'P'),
        lemma2_check(W, 'W'),
    ]
    for index, component in enumerate(decomposition.components, start=1):
        checks.append(lemma2_check(component.covering, _component_context(index, component)))
    checks += normalization_route_checks(P, normP, config.tuple_budget, 'N_P')
    checks += normalization_route_checks(W, normW, config.tuple_budget, 'N_W')
    checks += [
        hurwitz_check(normP, 'N_P'),
        hurwitz_check(normW, 'N_W'),
        tame_normalization_check(P, tameP, normP, 'P'),
        tame_normalization_check(W, tameW, normW, 'W'),
    ]

    theorem1 = theorem1_check(P, W, decomposition, normW)
    checks += theorem1
    checks.append(normalization_ratio_check(P, W, decomposition, normW))

    theorem2_by_component = []
    for index, component in enumerate(decomposition.components, start=1):
        context = _component_context(index, component)
        min_genus = kfold.get(component.deg_V)
        theorem2 = theorem2_check(P, W, component, min_genus, context)
        theorem2_by_component.append(theorem2)
        checks.append(castelnuovo_severi_check(component, P, W, context))
        checks.append(castelnuovo_severi_global_check(component, P, W, context))
        checks += reduced_degree_checks(component, P, W, context)
        checks.append(theorem2)
        checks.append(theorem3_check(W, P, component, min_genus, context))
    checks += theorem_ratt_check(W, P, decomposition, tameW)

    single_theorem2 = theorem2_by_component[0] if decomposition.n_components == 1 else None
    checks.append(theorem1_dominance_check(theorem1[0], single_theorem2, W, P))

    summary = {
        'deg_P': P.degree,
        'deg_W': W.degree,
        'base_genus': P.base_genus,
        'genus_P': genus(P),
        'genus_W': genus(W),
        'n_components': decomposition.n_components,
        'chi_total': orbit_chi,
        'mon_P': normP.mon_order if normP else None,
        'mon_W': normW.mon_order if normW else None,
        'genus_N_P': normP.genus_N if normP else None,
        'genus_N_W': normW.genus_N if normW else None,
        'tame_P': tameP.tame if tameP else None,
        'tame_W': tameW.tame if tameW else None,
    }
    return BoundReport(checks=tuple(checks), summary=summary)
