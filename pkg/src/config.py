# src/config.py

# This file contains static configuration data and environment-driven defaults.

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Version stamped into every JSON document the CLI writes
FORMAT_VERSION = 1

# Built-in budgets, overridable by environment and then by CLI flags
DEFAULT_GROUP_ORDER_CAP = 10**7
DEFAULT_TUPLE_BUDGET = 10**7

# Defaults for seeded random instance generation
FUZZ_DEFAULTS = {
    'seed': 0,
    'trials': 100,
    'max_degree': 6,
    'max_branch': 5,
    'base_genus_range': [0, 2],
    'disjoint': False,
    'workers': 1,
    'include_pinned': True,
}

# Bounded resampling for random systems that come out intransitive
MAX_GENERATION_RETRIES = 1000

# Fixture catalogue: name -> ordered parameter names with defaults
FIXTURE_PARAMETERS = {
    'power': {'n': 3},
    'chebyshev': {'n': 3},
    'zn_plus_inverse': {'n': 2},
    'hyperelliptic': {'g': 2},
    'dur': {'r': 1, 'n': 2, 'd': 1},
    'tame_quartic': {},
}

# Labels used by the fixtures; branch labels are opaque strings
INFINITY_LABEL = 'inf'

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def _env_int(name):
    value = os.getenv(name)
    if value is None or value.strip() == '':
        return None
    return int(float(value))


def get_budgets(group_order_cap=None, tuple_budget=None):
    """
    Resolves the group-order cap and the injective-tuple budget.

    Explicit arguments win, then COVER_GENUS_GROUP_ORDER_CAP /
    COVER_GENUS_TUPLE_BUDGET, then COVER_GENUS_BUDGET for both, then the
    built-in defaults.

    Returns:
        tuple: (group_order_cap, tuple_budget) as positive integers.
    """
    shared = _env_int('COVER_GENUS_BUDGET')

    if group_order_cap is None:
        group_order_cap = _env_int('COVER_GENUS_GROUP_ORDER_CAP')
    if group_order_cap is None:
        group_order_cap = shared if shared is not None else DEFAULT_GROUP_ORDER_CAP

    if tuple_budget is None:
        tuple_budget = _env_int('COVER_GENUS_TUPLE_BUDGET')
    if tuple_budget is None:
        tuple_budget = shared if shared is not None else DEFAULT_TUPLE_BUDGET

    if group_order_cap < 1 or tuple_budget < 1:
        raise ValueError("Budgets must be positive integers.")
    return int(group_order_cap), int(tuple_budget)


def get_log_level():
    return os.getenv('COVER_GENUS_LOG_LEVEL', 'WARNING').upper()
