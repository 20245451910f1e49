# src/fixtures.py

# Concrete monodromy realizations of the standard families of rational maps
# and hand-verified pairs on which each bound applies.

import logging
import math

from src.config import FIXTURE_PARAMETERS, INFINITY_LABEL
from src.covering import BranchPoint, HurwitzSystem, canonical_form, validate, with_labels
from src.exceptions import UnknownFixture
from src.permutations import Permutation, compose_all

logger = logging.getLogger(__name__)


def _system(degree, branch, base_genus=0):
    """Builds and validates a genus-0-base system from (label, 1-based cycles) pairs."""
    branch_points = tuple(BranchPoint(label, Permutation.from_cycles(cycles, degree)) for label, cycles in branch)
    return validate(HurwitzSystem(degree, base_genus, branch_points))


def _closing_permutation(perms, degree):
    """The inverse of the product, so that perms + [result] multiplies to the identity."""
    return compose_all(perms, degree).inverse()


def power(n=3):
    """z^n: an n-cycle over 0 and its inverse over infinity."""
    if n < 1:
        raise ValueError(f"power(n) needs n >= 1, got {n}.")
    sigma_0 = Permutation.from_cycles([list(range(1, n + 1))], n)
    H = HurwitzSystem(n, 0, (BranchPoint('0', sigma_0), BranchPoint(INFINITY_LABEL, sigma_0.inverse())))
    return canonical_form(validate(H))


def _pairs(start, n):
    return [[i, i + 1] for i in range(start, n, 2)]


def chebyshev(n=3):
    """
    T_n over its critical values 1, -1 and infinity. Over 1 and -1 the
    fibre splits into alternating transpositions; infinity carries an n-cycle.
    """
    if n < 2:
        raise ValueError(f"chebyshev(n) needs n >= 2, got {n}.")
    odd, even = _pairs(1, n), _pairs(2, n)
    at_one, at_minus_one = (odd, even) if n % 2 else (even, odd)
    sigma_1 = Permutation.from_cycles(at_one, n)
    sigma_m1 = Permutation.from_cycles(at_minus_one, n)
    sigma_inf = _closing_permutation([sigma_1, sigma_m1], n)
    H = HurwitzSystem(n, 0, (
        BranchPoint('1', sigma_1),
        BranchPoint('-1', sigma_m1),
        BranchPoint(INFINITY_LABEL, sigma_inf),
    ))
    return canonical_form(validate(H))


def zn_plus_inverse(n=2):
    """z^n + z^-n, degree 2n, dihedral monodromy of order 2n."""
    if n < 1:
        raise ValueError(f"zn_plus_inverse(n) needs n >= 1, got {n}.")
    degree = 2 * n
    sigma_2 = Permutation.from_cycles(_pairs(1, degree), degree)
    shifted = [[i, i + 1] for i in range(2, degree, 2)] + [[degree, 1]]
    sigma_m2 = Permutation.from_cycles(shifted, degree)
    sigma_inf = _closing_permutation([sigma_2, sigma_m2], degree)
    H = HurwitzSystem(degree, 0, (
        BranchPoint('2', sigma_2),
        BranchPoint('-2', sigma_m2),
        BranchPoint(INFINITY_LABEL, sigma_inf),
    ))
    return canonical_form(validate(H))


def hyperelliptic(g=2):
    """Degree-2 map of a genus-g curve, branched over b1..b(2g+2)."""
    if g < 0:
        raise ValueError(f"hyperelliptic(g) needs g >= 0, got {g}.")
    return _system(2, [(f'b{i}', [[1, 2]]) for i in range(1, 2 * g + 3)])


def tame_quartic():
    """
    Degree-4 map with six simple critical values and monodromy S_4:
    genus 0, every off-diagonal self-product component of genus >= 2.
    """
    transpositions = [[1, 2], [1, 2], [2, 3], [2, 3], [3, 4], [3, 4]]
    return _system(4, [(f'a{i}', [t]) for i, t in enumerate(transpositions, start=1)])


def dur(r=1, n=2, d=1):
    """
    P = z^r R(z)^n with deg R = d and W = z^n, gcd(r, n) = 1, over the
    labels 0, c1..cd (critical values of P away from 0 and infinity) and
    infinity. The fibre product is one genus-0 curve although g(N_W) = 0.

    Returns:
        tuple: aligned (P, W).
    """
    if r < 1 or n < 2 or d < 1:
        raise ValueError(f"dur(r, n, d) needs r >= 1, n >= 2, d >= 1, got ({r}, {n}, {d}).")
    if math.gcd(r, n) != 1:
        raise ValueError(f"dur(r, n, d) needs gcd(r, n) = 1, got gcd({r}, {n}) = {math.gcd(r, n)}.")
    degree = r + d * n
    blocks = [list(range(1, r + 1))] + [list(range(r + i * n + 1, r + (i + 1) * n + 1)) for i in range(d)]
    sigma_0 = Permutation.from_cycles(blocks, degree)
    # simple critical points of R^n z^r joining the zero block to each root block
    taus = [Permutation.from_cycles([[1, block[0]]], degree) for block in blocks[1:]]
    sigma_inf = _closing_permutation([sigma_0] + taus, degree)

    labels = ['0'] + [f'c{i}' for i in range(1, d + 1)] + [INFINITY_LABEL]
    P = validate(HurwitzSystem(degree, 0, tuple(BranchPoint(label, perm) for label, perm in
                                                zip(labels, [sigma_0] + taus + [sigma_inf]))))
    W = with_labels(power(n), labels)
    return P, W


def cubic_over_hyperelliptic():
    """P = z^3 branched over b1, b2 against W = hyperelliptic(2): one genus-6 component."""
    W = hyperelliptic(2)
    P = _system(3, [('b1', [[1, 2, 3]]), ('b2', [[1, 3, 2]])])
    return with_labels(P, W.labels), W


def quadratic_over_tame_quartic():
    """P of degree 2 branched over a1, a2 against the tame quartic: one genus-1 component."""
    W = tame_quartic()
    P = _system(2, [('a1', [[1, 2]]), ('a2', [[1, 2]])])
    return with_labels(P, W.labels), W


def tame_quartic_self():
    """The tame quartic against itself: the diagonal graph and one genus-4 component."""
    A = tame_quartic()
    return A, A


FIXTURES = {
    'power': power,
    'chebyshev': chebyshev,
    'zn_plus_inverse': zn_plus_inverse,
    'hyperelliptic': hyperelliptic,
    'dur': dur,
    'tame_quartic': tame_quartic,
}

PINNED_PAIRS = {
    'cubic_over_hyperelliptic': cubic_over_hyperelliptic,
    'quadratic_over_tame_quartic': quadratic_over_tame_quartic,
    'tame_quartic_self': tame_quartic_self,
    'dur': dur,
}


def fixture(name, **params):
    """
    A fixture system (or an aligned pair for dur and the pinned pairs).

    Raises:
        UnknownFixture: name or parameter not in the catalogue.
    """
    if name in FIXTURES:
        allowed = FIXTURE_PARAMETERS[name]
        factory = FIXTURES[name]
    elif name in PINNED_PAIRS:
        allowed = FIXTURE_PARAMETERS.get(name, {})
        factory = PINNED_PAIRS[name]
    else:
        raise UnknownFixture(f"Unknown fixture {name!r}; known: {sorted(set(FIXTURES) | set(PINNED_PAIRS))}.")

    unknown = sorted(set(params) - set(allowed))
    if unknown:
        raise UnknownFixture(f"Fixture {name!r} takes no parameter(s) {unknown}; allowed: {sorted(allowed)}.")
    arguments = {**allowed, **{key: int(value) for key, value in params.items()}}
    logger.debug("Building fixture %s(%s)", name, arguments)
    return factory(**arguments)


def pinned(name):
    if name not in PINNED_PAIRS:
        raise UnknownFixture(f"Unknown pinned pair {name!r}; known: {sorted(PINNED_PAIRS)}.")
    return PINNED_PAIRS[name]()


def pinned_pairs():
    """All pinned pairs with default parameters, in catalogue order."""
    return [(name, factory()) for name, factory in PINNED_PAIRS.items()]
