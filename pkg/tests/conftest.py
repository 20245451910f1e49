import pytest
import sys
import os

# Add the project root to the Python path to allow imports from 'src'
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import fixtures  # noqa: E402
from src.covering import BranchPoint, Handle, HurwitzSystem  # noqa: E402
from src.fuzz import random_hurwitz_system, trial_rng  # noqa: E402
from src.permutations import Permutation  # noqa: E402


def perm(cycles, degree):
    """1-based cycle shorthand used throughout the tests."""
    return Permutation.from_cycles(cycles, degree)


@pytest.fixture(scope="session")
def z2():
    return fixtures.power(2)


@pytest.fixture(scope="session")
def z3():
    return fixtures.power(3)


@pytest.fixture(scope="session")
def t3():
    """Chebyshev T_3: transpositions over 1 and -1, a 3-cycle over infinity."""
    return fixtures.chebyshev(3)


@pytest.fixture(scope="session")
def hyperelliptic2():
    return fixtures.hyperelliptic(2)


@pytest.fixture(scope="session")
def quartic():
    """Degree-4 tame map with monodromy S_4 and six simple branch points."""
    return fixtures.tame_quartic()


@pytest.fixture(scope="session")
def torus_double_cover():
    """Unbranched degree-2 cover of a torus: a = (1 2), b = id."""
    handle = Handle(perm([[1, 2]], 2), Permutation.identity(2))
    return HurwitzSystem(2, 1, (), (handle,))


@pytest.fixture(scope="session")
def cubic_over_hyperelliptic():
    return fixtures.cubic_over_hyperelliptic()


@pytest.fixture(scope="session")
def quadratic_over_tame_quartic():
    return fixtures.quadratic_over_tame_quartic()


@pytest.fixture(scope="session")
def tame_quartic_self():
    return fixtures.tame_quartic_self()


@pytest.fixture(scope="session")
def dur_pair():
    return fixtures.dur(1, 2, 1)


@pytest.fixture(scope="session")
def make_system():
    """Builds a genus-0-base system from (label, cycles) pairs."""
    def _make(degree, branch):
        return HurwitzSystem(degree, 0, tuple(BranchPoint(label, perm(cycles, degree)) for label, cycles in branch))
    return _make


@pytest.fixture(scope="session")
def random_systems():
    """Seeded random systems of degree 1..6 over bases of genus 0..2."""
    rng = trial_rng(2024, 0)
    systems = []
    for i in range(300):
        base_genus = i % 3
        branch_count = (2 if base_genus == 0 else 1) + i % 4
        systems.append(random_hurwitz_system(rng, 1 + i % 6, base_genus, branch_count))
    return systems
