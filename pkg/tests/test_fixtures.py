import pytest

from src.covering import genus, passport, validate
from src.exceptions import UnknownFixture
from src.fiber_product import fiber_product
from src.fixtures import PINNED_PAIRS, dur, fixture, pinned, pinned_pairs
from src.normalization import normalization_genus


def test_power_fixture_realization():
    H = fixture('power', n=3)
    assert H.labels == ('0', 'inf')
    assert H.perm_at('0').to_cycles() == [[1, 2, 3]]
    assert H.perm_at('inf').to_cycles() == [[1, 3, 2]]


def test_chebyshev_t3_realization(t3):
    assert t3.perm_at('1').to_cycles() == [[1, 2]]
    assert t3.perm_at('-1').to_cycles() == [[2, 3]]
    assert t3.perm_at('inf').to_cycles() == [[1, 3, 2]]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_chebyshev_has_an_n_cycle_at_infinity(n):
    H = fixture('chebyshev', n=n)
    assert genus(H) == 0
    assert [ct.to_list() for label, ct in passport(H) if label == 'inf'] == [[n]]


def test_hyperelliptic_fixture(hyperelliptic2):
    assert hyperelliptic2.degree == 2
    assert len(hyperelliptic2.branch_points) == 6
    assert genus(hyperelliptic2) == 2


def test_zn_plus_inverse_passport():
    H = fixture('zn_plus_inverse', n=3)
    assert H.degree == 6
    assert [ct.to_list() for _, ct in passport(H)] == [[2, 2, 2], [2, 2, 2], [3, 3]]


@pytest.mark.parametrize("r, n, d", [(1, 2, 1), (3, 2, 2), (1, 3, 2), (2, 3, 1)])
def test_dur_family_gives_one_rational_component(r, n, d):
    P, W = dur(r, n, d)
    validate(P)
    assert genus(P) == 0
    assert P.perm_at('inf').order == r + d * n
    (component,) = fiber_product(P, W).components
    assert component.genus == 0
    assert normalization_genus(W).genus_N == 0


def test_dur_needs_coprime_exponents():
    with pytest.raises(ValueError):
        dur(2, 4, 1)


def test_unknown_fixture_and_parameter():
    with pytest.raises(UnknownFixture):
        fixture('legendre')
    with pytest.raises(UnknownFixture):
        fixture('power', m=3)
    with pytest.raises(UnknownFixture):
        pinned('nothing')


def test_fixture_parameters_accept_strings():
    assert fixture('hyperelliptic', g='3').degree == 2
    assert genus(fixture('hyperelliptic', g='3')) == 3


def test_every_pinned_pair_is_aligned_and_valid():
    names = [name for name, _ in pinned_pairs()]
    assert names == list(PINNED_PAIRS)
    for _, (P, W) in pinned_pairs():
        validate(P)
        validate(W)
        assert P.labels == W.labels
