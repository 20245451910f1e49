"""
cover-genus: genera of fibre products of branched coverings from monodromy.

Subcommands read coverings as JSON documents (see src/technical_documentation.md)
and write JSON or text tables to stdout or --out. Exit codes: 0 success,
1 an applicable check failed, 2 invalid input or configuration.
"""

import argparse
import logging
import sys

from src import reporting
from src.bounds import VerifyConfig, verify_all
from src.config import FIXTURE_PARAMETERS, LOG_FORMAT, get_budgets, get_log_level
from src.covering import euler_characteristic, genus, passport, validate
from src.data_loader import dumps, load_system, to_dict, write_json, write_text
from src.exceptions import CoverGenusError
from src.fiber_product import align, fiber_product, is_aligned, self_product_offdiagonal
from src.fixtures import FIXTURES, PINNED_PAIRS, fixture
from src.fuzz import FuzzConfig, fuzz
from src.normalization import is_tame, normalize

logger = logging.getLogger('cover_genus')


def _emit(args, document, text):
    output = dumps(document) if args.format == 'json' else text
    if args.out:
        write_text(output, args.out)
    else:
        sys.stdout.write(output)


def _load_pair(args):
    P = validate(load_system(args.p))
    W = validate(load_system(args.w))
    if not is_aligned(P, W):
        P, W = align(P, W)
    return P, W


def cmd_decompose(args):
    P, W = _load_pair(args)
    decomposition = fiber_product(P, W, debug=args.debug)
    _emit(args, reporting.decomposition_to_dict(decomposition), reporting.decomposition_table(decomposition))
    return 0


def cmd_self_product(args):
    V = validate(load_system(args.v))
    _, budget = get_budgets(None, args.tuple_budget)
    decomposition = self_product_offdiagonal(V, args.k, budget=budget, debug=args.debug)
    _emit(args, reporting.decomposition_to_dict(decomposition), reporting.decomposition_table(decomposition))
    return 0


def cmd_normalize(args):
    V = validate(load_system(args.v))
    cap, budget = get_budgets(args.group_order_cap, args.tuple_budget)
    norm = normalize(V, cap=cap, budget=budget)
    _emit(args, reporting.normalization_to_dict(V, norm), reporting.normalization_table(V, norm))
    return 0


def cmd_tame(args):
    A = validate(load_system(args.a))
    _, budget = get_budgets(None, args.tuple_budget)
    verdict = is_tame(A, budget=budget)
    _emit(args, reporting.tameness_to_dict(verdict), reporting.tameness_text(verdict))
    return 0


def cmd_verify(args):
    P, W = _load_pair(args)
    report = verify_all(P, W, VerifyConfig.from_env(args.group_order_cap, args.tuple_budget))
    _emit(args, reporting.report_to_dict(report), reporting.report_table(report))
    return 0 if report.all_hold else 1


def cmd_fuzz(args):
    overrides = {
        'seed': args.seed,
        'trials': args.trials,
        'max_degree': args.max_degree,
        'max_branch': args.max_branch,
        'group_order_cap': args.group_order_cap,
        'tuple_budget': args.tuple_budget,
        'workers': args.workers,
        'disjoint': True if args.disjoint else None,
        'include_pinned': False if args.no_pinned else None,
    }
    if args.config:
        config = FuzzConfig.from_yaml(args.config, **overrides)
    else:
        config = FuzzConfig.from_mapping({key: value for key, value in overrides.items() if value is not None})
    summary = fuzz(config, progress=not args.quiet)
    _emit(args, summary, reporting.fuzz_table(summary))
    return 0 if summary['ok'] else 1


def _parse_params(pairs):
    params = {}
    for pair in pairs or []:
        key, sep, value = pair.partition('=')
        if not sep:
            raise CoverGenusError(f"Fixture parameter {pair!r} is not of the form key=value.")
        params[key] = value
    return params


def cmd_fixture(args):
    result = fixture(args.name, **_parse_params(args.param))
    if isinstance(result, tuple):
        P, W = result
        if args.out_w:
            write_json(to_dict(P), args.out or 'P.json')
            write_json(to_dict(W), args.out_w)
            return 0
        document = {'P': to_dict(P), 'W': to_dict(W)}
    else:
        document = to_dict(result)
    if args.out:
        write_json(document, args.out)
    else:
        sys.stdout.write(dumps(document))
    return 0


def cmd_validate(args):
    H = validate(load_system(args.v))
    document = {
        'degree': H.degree,
        'base_genus': H.base_genus,
        'chi': euler_characteristic(H),
        'genus': genus(H),
        'passport': [[label, ct.to_list()] for label, ct in passport(H)],
        'valid': True,
    }
    text = (f"valid: degree {H.degree} over genus {H.base_genus}, genus {genus(H)}, passport "
            + (' '.join(f'{label}:{ct}' for label, ct in passport(H)) or '-') + '\n')
    _emit(args, document, text)
    return 0


def build_parser():
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument('--out', help='write the result to PATH instead of stdout')
    output.add_argument('--verbose', action='store_true', help='log at DEBUG level')
    output.add_argument('--quiet', '-q', action='store_true', help='no progress bar, errors only')

    common = argparse.ArgumentParser(add_help=False, parents=[output])
    common.add_argument('--format', choices=['json', 'text'], default='text')

    budgets = argparse.ArgumentParser(add_help=False)
    budgets.add_argument('--group-order-cap', type=int)
    budgets.add_argument('--tuple-budget', type=int)

    parser = argparse.ArgumentParser(prog='cover-genus', description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('decompose', parents=[common], help='components of the fibre product of P and W')
    p.add_argument('--p', required=True)
    p.add_argument('--w', required=True)
    p.add_argument('--debug', action='store_true', help='validate every component covering')
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser('self-product', parents=[common, budgets], help='off-diagonal k-fold self-product')
    p.add_argument('--v', required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--debug', action='store_true')
    p.set_defaults(func=cmd_self_product)

    p = sub.add_parser('normalize', parents=[common, budgets], help='normalization (Galois closure) data')
    p.add_argument('--v', required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser('tame', parents=[common, budgets], help='tameness verdict and witness')
    p.add_argument('--a', required=True)
    p.set_defaults(func=cmd_tame)

    p = sub.add_parser('verify', parents=[common, budgets], help='every bound check on P and W')
    p.add_argument('--p', required=True)
    p.add_argument('--w', required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('fuzz', parents=[common, budgets], help='bound checks on seeded random pairs')
    p.add_argument('--config', help='YAML file with fuzz settings; flags override it')
    p.add_argument('--seed', type=int)
    p.add_argument('--trials', type=int)
    p.add_argument('--max-degree', type=int)
    p.add_argument('--max-branch', type=int)
    p.add_argument('--workers', type=int)
    p.add_argument('--disjoint', action='store_true', help='draw P and W over disjoint branch sets')
    p.add_argument('--no-pinned', action='store_true', help='skip the hand-verified pairs')
    p.set_defaults(func=cmd_fuzz)

    names = sorted(set(FIXTURES) | set(PINNED_PAIRS))
    p = sub.add_parser('fixture', parents=[output], help='write a fixture system or pair as JSON',
                       epilog='parameters: ' + ', '.join(f'{k}({", ".join(v)})' for k, v in FIXTURE_PARAMETERS.items()))
    p.add_argument('name', choices=names)
    p.add_argument('--param', action='append', metavar='KEY=VALUE')
    p.add_argument('--out-w', help='for pairs: write W here and P to --out')
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser('validate', parents=[common], help='check a covering document')
    p.add_argument('--v', required=True)
    p.set_defaults(func=cmd_validate)
    return parser


def configure_logging(args):
    if args.verbose:
        level = 'DEBUG'
    elif args.quiet:
        level = 'ERROR'
    else:
        level = get_log_level()
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args)
    try:
        return args.func(args)
    except CoverGenusError as e:
        logger.debug("%s failed", args.command, exc_info=True)
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    except (OSError, ValueError) as e:
        logger.debug("%s failed", args.command, exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == '__main__':
    sys.exit(main())
