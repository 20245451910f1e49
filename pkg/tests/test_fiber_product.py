import itertools
import pytest
from collections import Counter

from conftest import perm
from src.covering import BranchPoint, Handle, HurwitzSystem, validate
from src.exceptions import BaseMismatch, BudgetExceeded, KOutOfRange, LabelConflict, NotAligned
from src.fiber_product import (
    abhyankar_chi_total,
    abhyankar_local_multiplicities,
    align,
    component_local_multiplicities,
    decode_grid_point,
    decode_injective_tuple,
    encode_grid_point,
    encode_injective_tuple,
    falling_factorial,
    fiber_product,
    is_aligned,
    project_to_pairs,
    self_product_offdiagonal,
    verify_degree_identities,
)
from src.fixtures import power
from src.fuzz import FuzzConfig, random_pair
from src.permutations import Permutation


def test_falling_factorial():
    assert falling_factorial(4, 2) == 12
    assert falling_factorial(6, 6) == 720
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(3, 4) == 0


def test_grid_codes():
    assert encode_grid_point(1, 1, 3) == 1
    assert encode_grid_point(2, 3, 3) == 6
    assert decode_grid_point(6, 3) == (2, 3)


def test_injective_tuple_code_is_lexicographic_rank():
    for rank, t in enumerate(itertools.permutations(range(4), 2)):
        assert encode_injective_tuple(t, 4) == rank
        assert decode_injective_tuple(rank, 4, 2) == t


def test_square_of_z2_has_two_components(z2):
    decomposition = fiber_product(z2, z2)
    assert decomposition.n_components == 2
    assert [c.size for c in decomposition.components] == [2, 2]
    assert [c.genus for c in decomposition.components] == [0, 0]
    assert [(c.deg_V, c.deg_U) for c in decomposition.components] == [(1, 1), (1, 1)]
    assert decomposition.total_chi() == 4
    assert [c.orbit_key for c in decomposition.components] == [1, 2]
    assert [c.off_diagonal for c in decomposition.components] == [False, True]


def test_z3_against_z2_is_one_rational_curve(z3, z2):
    decomposition = fiber_product(z3, z2)
    assert decomposition.n_components == 1
    component = decomposition.components[0]
    assert component.size == 6
    assert component.genus == 0
    assert decomposition.total_chi() == 2
    assert abhyankar_chi_total(z3, z2) == 2


def test_fiber_product_requires_aligned_inputs(z3, t3):
    with pytest.raises(NotAligned):
        fiber_product(z3, t3)


def test_align_inserts_identities(z3, t3):
    P, W = align(z3, t3)
    assert is_aligned(P, W)
    assert P.labels == ('0', '1', '-1', 'inf')
    assert P.perm_at('1').is_identity
    assert W.perm_at('0').is_identity
    decomposition = fiber_product(P, W)
    assert decomposition.total_chi() == abhyankar_chi_total(P, W)
    assert verify_degree_identities(decomposition)


def test_align_rejects_different_bases(z2, torus_double_cover):
    with pytest.raises(BaseMismatch):
        align(z2, torus_double_cover)


def test_align_rejects_conflicting_label_orders(make_system):
    P = make_system(2, [('a', [[1, 2]]), ('b', [[1, 2]])])
    W = make_system(2, [('b', [[1, 2]]), ('a', [[1, 2]])])
    with pytest.raises(LabelConflict):
        align(P, W)


def test_pinned_pairs_decompose_as_computed_by_hand(cubic_over_hyperelliptic, quadratic_over_tame_quartic,
                                                    tame_quartic_self, dur_pair):
    (component,) = fiber_product(*cubic_over_hyperelliptic).components
    assert (component.size, component.genus, component.deg_V, component.deg_U) == (6, 6, 2, 3)

    (component,) = fiber_product(*quadratic_over_tame_quartic).components
    assert (component.size, component.genus, component.deg_V, component.deg_U) == (8, 1, 4, 2)

    diagonal, off = fiber_product(*tame_quartic_self).components
    assert (diagonal.size, diagonal.genus, diagonal.deg_V, diagonal.off_diagonal) == (4, 0, 1, False)
    assert (off.size, off.genus, off.deg_V, off.off_diagonal) == (12, 4, 3, True)

    (component,) = fiber_product(*dur_pair).components
    assert (component.size, component.genus, component.deg_V) == (6, 0, 2)


def test_abhyankar_totals_of_pinned_pairs(cubic_over_hyperelliptic, quadratic_over_tame_quartic, tame_quartic_self):
    assert abhyankar_chi_total(*cubic_over_hyperelliptic) == -10
    assert abhyankar_chi_total(*quadratic_over_tame_quartic) == 0
    assert abhyankar_chi_total(*tame_quartic_self) == -4


def test_local_multiplicities_match_orbit_cycles(quadratic_over_tame_quartic):
    P, W = quadratic_over_tame_quartic
    predicted = abhyankar_local_multiplicities(P, W)
    observed = component_local_multiplicities(fiber_product(P, W))
    assert predicted['a1'] == Counter({2: 4})
    assert predicted['a3'] == Counter({2: 2, 1: 4})
    for label in P.labels:
        assert predicted[label] == observed[label]


def test_fiber_product_over_a_torus(torus_double_cover):
    decomposition = fiber_product(torus_double_cover, torus_double_cover)
    assert decomposition.n_components == 2
    assert all(c.genus == 1 for c in decomposition.components)
    assert abhyankar_chi_total(torus_double_cover, torus_double_cover) == 0


def test_fiber_product_with_a_degree_one_map(z3):
    identity_map = HurwitzSystem(1, 0, (BranchPoint('0', Permutation.identity(1)),
                                        BranchPoint('inf', Permutation.identity(1))))
    P, W = align(z3, identity_map)
    (component,) = fiber_product(P, W).components
    assert component.size == 3
    assert component.genus == 0


def test_self_product_of_z2_is_wild(z2):
    decomposition = self_product_offdiagonal(z2, 2)
    assert decomposition.complete
    assert [c.genus for c in decomposition.components] == [0]


def test_self_product_of_tame_quartic(quartic):
    for k, genus in [(2, 4), (3, 13), (4, 13)]:
        decomposition = self_product_offdiagonal(quartic, k)
        assert decomposition.n_components == 1
        assert decomposition.components[0].genus == genus
        assert decomposition.components[0].size == falling_factorial(4, k)


def test_self_product_of_z3_has_two_orbits(z3):
    decomposition = self_product_offdiagonal(z3, 2)
    assert [c.size for c in decomposition.components] == [3, 3]
    assert [c.orbit_key for c in decomposition.components] == [1, 2]


def test_self_product_k_range(z3):
    with pytest.raises(KOutOfRange):
        self_product_offdiagonal(z3, 1)
    with pytest.raises(KOutOfRange):
        self_product_offdiagonal(z3, 4)


def test_self_product_beyond_budget_explores_seed_orbit(z3, quartic):
    partial = self_product_offdiagonal(z3, 2, budget=4)
    assert not partial.complete
    assert [c.size for c in partial.components] == [3]
    with pytest.raises(BudgetExceeded):
        self_product_offdiagonal(quartic, 4, budget=10)


def test_k_fold_components_project_onto_pairs(quartic):
    pairs = self_product_offdiagonal(quartic, 2)
    triples = self_product_offdiagonal(quartic, 3)
    for component in triples.components:
        projected = project_to_pairs(component, pairs, 4, 3)
        assert component.genus >= projected.genus


def test_degree_identities_on_random_style_system(make_system):
    P = make_system(4, [('a', [[1, 2], [3, 4]]), ('b', [[1, 3], [2, 4]]), ('c', [[1, 4], [2, 3]])])
    W = validate(power(2))
    P, W = align(P, W)
    decomposition = fiber_product(P, W)
    assert verify_degree_identities(decomposition)
    assert decomposition.total_chi() == abhyankar_chi_total(P, W)


def test_fiber_product_with_handles():
    a = perm([[1, 2, 3]], 3)
    H = HurwitzSystem(3, 1, (), (Handle(a, Permutation.identity(3)),))
    decomposition = fiber_product(H, H)
    assert sum(c.deg_V for c in decomposition.components) == 3
    assert decomposition.total_chi() == 0


@pytest.mark.parametrize("disjoint", [False, True])
def test_random_pairs_match_local_multiplicities_and_fibres(disjoint):
    config = FuzzConfig(seed=17, max_degree=6, disjoint=disjoint)
    for trial in range(150):
        P, W = align(*random_pair(config, trial))
        decomposition = fiber_product(P, W)
        assert verify_degree_identities(decomposition)
        assert abhyankar_chi_total(P, W) == decomposition.total_chi()

        predicted = abhyankar_local_multiplicities(P, W)
        observed = component_local_multiplicities(decomposition)
        for label in P.labels:
            assert predicted[label] == observed[label]

        n, m = P.degree, W.degree
        for component in decomposition.components:
            # each fibre over a point of R holds deg V distinct grid pairs
            fibres = Counter(code // m for code in component.points)
            assert sorted(fibres) == list(range(n))
            assert set(fibres.values()) == {component.deg_V}
            columns = Counter(code % m for code in component.points)
            assert sorted(columns) == list(range(m))
            assert set(columns.values()) == {component.deg_U}
            assert len(set(component.points)) == component.size
