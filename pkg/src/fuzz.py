# src/fuzz.py

# Seeded random Hurwitz systems and the fuzz driver that runs every bound
# check on random aligned pairs.
#
# Each trial draws from its own PCG64 stream, seeded by
# SeedSequence(entropy=seed, spawn_key=(trial,)), so serial and parallel runs
# produce the same instances and the same summary.

import logging
import multiprocessing
import sys
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import partial

import numpy as np

from src.bounds import VerifyConfig, verify_all
from src.config import FORMAT_VERSION, FUZZ_DEFAULTS, MAX_GENERATION_RETRIES, get_budgets
from src.covering import BranchPoint, Handle, HurwitzSystem
from src.data_loader import load_yaml, save_yaml, to_dict
from src.exceptions import CoverGenusError, RetriesExhausted, SchemaError
from src.fixtures import pinned_pairs
from src.permutations import Permutation, commutator, compose_all, is_transitive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = FUZZ_DEFAULTS['seed']
    trials: int = FUZZ_DEFAULTS['trials']
    max_degree: int = FUZZ_DEFAULTS['max_degree']
    max_branch: int = FUZZ_DEFAULTS['max_branch']
    base_genus_range: tuple = tuple(FUZZ_DEFAULTS['base_genus_range'])
    group_order_cap: int = None
    tuple_budget: int = None
    disjoint: bool = FUZZ_DEFAULTS['disjoint']
    workers: int = FUZZ_DEFAULTS['workers']
    include_pinned: bool = FUZZ_DEFAULTS['include_pinned']

    def __post_init__(self):
        cap, budget = get_budgets(self.group_order_cap, self.tuple_budget)
        object.__setattr__(self, 'group_order_cap', cap)
        object.__setattr__(self, 'tuple_budget', budget)
        object.__setattr__(self, 'base_genus_range', tuple(int(g) for g in self.base_genus_range))
        low, high = self.base_genus_range
        if self.trials < 0 or self.max_degree < 1 or self.max_branch < 1 or self.workers < 1:
            raise ValueError("trials must be >= 0; max_degree, max_branch and workers >= 1.")
        if not 0 <= low <= high:
            raise ValueError(f"Invalid base genus range {list(self.base_genus_range)}.")

    @classmethod
    def from_mapping(cls, data):
        unknown = sorted(set(data) - set(cls.__dataclass_fields__))
        if unknown:
            raise SchemaError(f"Unknown fuzz config keys {unknown}.")
        return cls(**data)

    @classmethod
    def from_yaml(cls, path, **overrides):
        """Reads a YAML config; keyword overrides (CLI flags) that are not None win."""
        data = load_yaml(path)
        data.update({key: value for key, value in overrides.items() if value is not None})
        return cls.from_mapping(data)

    def to_mapping(self):
        data = asdict(self)
        data['base_genus_range'] = list(self.base_genus_range)
        return data

    def to_yaml(self, path):
        save_yaml(self.to_mapping(), path)

    def verify_config(self):
        return VerifyConfig(group_order_cap=self.group_order_cap, tuple_budget=self.tuple_budget)


def trial_rng(seed, trial):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(trial,))))


def random_permutation(rng, degree):
    return Permutation(tuple(int(x) for x in rng.permutation(degree)))


def random_hurwitz_system(rng, degree, base_genus, branch_count, labels=None):
    """
    Handles and the first branch_count - 1 branch permutations are uniform;
    the last one closes the relation. Draws are repeated until the system is
    transitive and, over a sphere, the last permutation is nontrivial.

    Raises:
        RetriesExhausted: no valid system within MAX_GENERATION_RETRIES draws.
    """
    if degree < 1 or base_genus < 0 or branch_count < 0:
        raise ValueError(f"Invalid generation parameters ({degree}, {base_genus}, {branch_count}).")
    labels = list(labels) if labels is not None else [f'z{i}' for i in range(1, branch_count + 1)]
    if len(labels) != branch_count:
        raise ValueError(f"Expected {branch_count} labels, got {len(labels)}.")
    if base_genus == 0 and degree >= 2 and branch_count < 1:
        raise ValueError("A covering of the sphere of degree >= 2 needs at least one branch point.")

    identity = Permutation.identity(degree)
    if degree == 1:
        return HurwitzSystem(
            1, base_genus,
            tuple(BranchPoint(label, identity) for label in labels),
            tuple(Handle(identity, identity) for _ in range(base_genus)),
        )

    for attempt in range(MAX_GENERATION_RETRIES):
        handles = [Handle(random_permutation(rng, degree), random_permutation(rng, degree)) for _ in range(base_genus)]
        branch = [random_permutation(rng, degree) for _ in range(max(branch_count - 1, 0))]
        if branch_count == 0:
            # unbranched: the commutators alone must multiply to the identity
            if not compose_all([commutator(h.a, h.b) for h in handles], degree).is_identity:
                continue
        else:
            prefix = compose_all([commutator(h.a, h.b) for h in handles] + branch, degree)
            last = prefix.inverse()
            if base_genus == 0 and last.is_identity:
                continue
            branch.append(last)
        gens = [g for h in handles for g in (h.a, h.b)] + branch
        if not is_transitive(gens, degree):
            continue
        logger.debug("Generated degree-%d system after %d attempt(s)", degree, attempt + 1)
        return HurwitzSystem(
            degree, base_genus,
            tuple(BranchPoint(label, perm) for label, perm in zip(labels, branch)),
            tuple(handles),
        )
    raise RetriesExhausted(f"No valid degree-{degree} system over genus {base_genus} with "
                           f"{branch_count} branch points in {MAX_GENERATION_RETRIES} attempts.")


def random_pair(config, trial):
    """Draws the (P, W) pair of one trial."""
    rng = trial_rng(config.seed, trial)
    low, high = config.base_genus_range
    base_genus = int(rng.integers(low, high + 1))
    min_branch = 2 if base_genus == 0 else 1
    deg_p = int(rng.integers(1, config.max_degree + 1))
    deg_w = int(rng.integers(1, config.max_degree + 1))

    if config.disjoint:
        count_p = int(rng.integers(min_branch, max(config.max_branch, min_branch) + 1))
        count_w = int(rng.integers(min_branch, max(config.max_branch, min_branch) + 1))
        P = random_hurwitz_system(rng, deg_p, base_genus, count_p, [f'p{i}' for i in range(1, count_p + 1)])
        W = random_hurwitz_system(rng, deg_w, base_genus, count_w, [f'w{i}' for i in range(1, count_w + 1)])
    else:
        count = int(rng.integers(min_branch, max(config.max_branch, min_branch) + 1))
        P = random_hurwitz_system(rng, deg_p, base_genus, count)
        W = random_hurwitz_system(rng, deg_w, base_genus, count)
    return P, W


@dataclass
class TrialResult:
    trial: str
    checks: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    error: str = None


def _status(check):
    if check.skipped:
        return 'skipped'
    if not check.applicable:
        return 'inapplicable'
    return 'holds' if check.holds else 'failed'


def _evaluate_pair(name, P, W, verify_config):
    result = TrialResult(trial=name)
    try:
        report = verify_all(P, W, verify_config)
    except CoverGenusError as e:
        logger.error("Trial %s raised %s: %s", name, type(e).__name__, e)
        result.error = f"{type(e).__name__}: {e}"
        return result

    for check in report.checks:
        result.checks.append((check.name, _status(check), check.reason))
        if check.failed:
            result.failures.append({
                'trial': name,
                'check': check.name,
                'context': check.context,
                'lhs': str(check.lhs),
                'relation': check.relation,
                'rhs': str(check.rhs),
                'P': to_dict(P),
                'W': to_dict(W),
            })
    return result


def run_trial(config, trial):
    """Worker: one seeded random pair through verify_all."""
    try:
        P, W = random_pair(config, trial)
    except RetriesExhausted as e:
        return TrialResult(trial=str(trial), error=f"RetriesExhausted: {e}")
    return _evaluate_pair(str(trial), P, W, config.verify_config())


def print_progress_bar(iteration, total, length=50, fill='#', stream=None):
    """
    Call in a loop to draw a terminal progress bar on stderr.
    """
    stream = stream or sys.stderr
    percent = ("{0:.1f}").format(100 * (iteration / float(total)))
    filled_length = int(length * iteration // total)
    bar = fill * filled_length + '-' * (length - filled_length)
    stream.write(f'\rProgress: |{bar}| {percent}% Complete')
    if iteration == total:
        stream.write('\n')
    stream.flush()


def _iter_results(config, progress):
    worker_func = partial(run_trial, config)
    total = config.trials

    def tick(i):
        if progress and total:
            print_progress_bar(i, total)

    tick(0)
    if config.workers > 1 and total > 1:
        with multiprocessing.Pool(config.workers) as pool:
            logger.info("Using %d worker processes.", config.workers)
            # imap keeps trial order, so the summary does not depend on scheduling
            for i, result in enumerate(pool.imap(worker_func, range(total), chunksize=16)):
                tick(i + 1)
                yield result
    else:
        for trial in range(total):
            result = worker_func(trial)
            tick(trial + 1)
            yield result


def fuzz(config, progress=False):
    """
    Runs the pinned pairs (if enabled) and config.trials random pairs.

    Returns:
        dict: the summary, with per-check counts of holds / failed / skipped /
        inapplicable, a histogram of inapplicability and skip reasons, and
        the full data of every failure.
    """
    verify_config = config.verify_config()
    results = []
    if config.include_pinned:
        for name, (P, W) in pinned_pairs():
            results.append(_evaluate_pair(f'pinned:{name}', P, W, verify_config))
    results.extend(_iter_results(config, progress))

    counts = {}
    reasons = {}
    failures = []
    errors = []
    for result in results:
        if result.error:
            errors.append({'trial': result.trial, 'message': result.error})
        failures.extend(result.failures)
        for name, status, reason in result.checks:
            counts.setdefault(name, Counter())[status] += 1
            if reason:
                reasons.setdefault(name, Counter())[reason] += 1

    checks = {}
    for name in sorted(counts):
        c = counts[name]
        checks[name] = {
            'applicable': c['holds'] + c['failed'],
            'holds': c['holds'],
            'failed': c['failed'],
            'skipped': c['skipped'],
            'inapplicable': c['inapplicable'],
            'reasons': dict(sorted(reasons.get(name, Counter()).items())),
        }

    summary = {
        'format_version': FORMAT_VERSION,
        # worker count does not change results
        'config': {key: value for key, value in config.to_mapping().items() if key != 'workers'},
        'trials': config.trials,
        'pinned': [r.trial for r in results if r.trial.startswith('pinned:')],
        'checks': checks,
        'failures': failures,
        'errors': errors,
        'ok': not failures and not errors,
    }
    logger.info("Fuzz finished: %d trials, %d failures, %d errors", config.trials, len(failures), len(errors))
    return summary
