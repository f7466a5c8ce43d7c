"""
Command-line front end.

    sksym run <config> [--out PATH]
    sksym demo <name> [--seed S] [--out PATH]
    sksym list-demos

Global options: --jobs N, --verbose, --log-file PATH. `run` and `demo` exit with 0 when every check passes, 1
when some check fails and 2 on a malformed configuration; the report is written in the first two cases.
"""
import argparse
from concurrent.futures import ThreadPoolExecutor
import logging
import sys
import time
from . import __version__
from .core.actions import gset_from_dict, restrict
from .core.kernels import Kernel, kernel_from_table
from .core.report import AuditReport, merge
from .io import file
from .io.config import AuditConfig, EQUIVARIANCE, SYMMETRIZE, KERNEL, DEMO
from .measures.equivariance import (check_equivariance, check_kernel_equivariance_exact,
                                    check_density_equivariance, check_kernel_equivariance_support,
                                    check_kernel_equivariance_statistical, check_sampler_agreement)
from .models.demos import demos
from .models.library import maps, gammas, quotient
from .symmetrisation.deterministic import EquivariantMap, GammaMap
from .symmetrisation.pipeline import symmetrize_along
from .utils import constants, utils
from .utils.exceptions import (ConfigError, IllTypedInputError, StructuralError, UnsupportedGroupError,
                               UnsupportedModeError)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


MAP_MODES = (None, constants.EXHAUSTIVE, constants.SAMPLED)


def audit_map(f, check, seed):
    return check_equivariance(f, mode=check.mode, n_samples=check.n, random_state=seed, tolerance=check.tolerance,
                              name=check.name)


def audit_kernel(k, check, seed):
    """The audit a kernel check asks for, defaulting to the cheapest conclusive one."""
    if check.mode == constants.STATISTICAL or not k.has_atoms:
        return check_kernel_equivariance_statistical(k, n_samples=check.n, n_pairs=check.n_pairs, alpha=check.alpha,
                                                     random_state=seed, name=check.name)
    if check.mode == constants.EXACT or (k.has_table and k.domain.is_finite and k.codomain.is_finite):
        return check_kernel_equivariance_exact(k, name=check.name)
    return check_kernel_equivariance_support(k, mode=check.mode, n_samples=check.n, random_state=seed,
                                             name=check.name)


def _check_mode(check, built):
    """Reject an audit mode the built objects cannot support."""
    if check.type not in (EQUIVARIANCE, SYMMETRIZE) or check.mode is None:
        return
    X = built['X']
    deterministic = isinstance(built['f'], EquivariantMap) and isinstance(built.get('gamma'), GammaMap)
    if check.type == EQUIVARIANCE or deterministic:
        if check.mode not in MAP_MODES:
            raise ConfigError('check {n}: mode {m!r} does not apply to deterministic maps.'
                              .format(n=check.name, m=check.mode))
    if check.mode in (constants.EXHAUSTIVE, constants.EXACT) and not X.is_finite:
        raise ConfigError('check {n}: mode {m!r} needs a finite group acting on a finite carrier, got {x}.'
                          .format(n=check.name, m=check.mode, x=X))
    if check.mode == constants.EXACT and not isinstance(built['gamma'], GammaMap) and not built['gamma'].has_atoms:
        raise ConfigError('check {n}: exact mode needs a finitely supported gamma.'.format(n=check.name))


def _build(check):
    """Build the objects of a check; construction failures are configuration errors."""
    try:
        if check.type == DEMO:
            if check.demo not in dict(demos.describe()):
                raise ValueError('unknown demo {d!r}'.format(d=check.demo))
            return {}
        X = gset_from_dict(check.gset)
        if check.type == EQUIVARIANCE:
            built = {'X': X, 'f': maps.create(check.map['name'], domain=X, **check.map['params'])}
            _check_mode(check, built)
            return built
        if check.type == KERNEL:
            table = file.read_table(check.table, X.carrier.size, X.carrier.size)
            return {'X': X, 'k': kernel_from_table(X, X, table.matrix, name=check.name)}
        cs = quotient(X.group, check.subgroup)
        R = restrict(cs.inclusion, X)
        if check.map is not None:
            f = maps.create(check.map['name'], domain=R, **check.map['params'])
        else:
            f = kernel_from_table(R, R, file.read_table(check.table, X.carrier.size, X.carrier.size).matrix, name=check.name)
        gamma = gammas.create(check.gamma['name'], X=X, cs=cs, **check.gamma['params'])
        built = {'X': X, 'cs': cs, 'f': f, 'gamma': gamma}
        _check_mode(check, built)
        return built
    except ConfigError:
        raise
    except (ValueError, TypeError, KeyError, NotImplementedError) as e:
        raise ConfigError('check {n}: {e}'.format(n=check.name, e=e))


def run_check(check, seed, n_jobs=1):
    """
    Run one configured check.

    Returns
    -------
    AuditReport

    Raises
    ------
    ConfigError
        if the objects of the check cannot be built.
    """
    built = _build(check)
    logger.info('check %s (%s), seed %d', check.name, check.type, seed)
    if check.type == EQUIVARIANCE:
        return audit_map(built['f'], check, seed)
    if check.type == KERNEL:
        k = built['k']
        seeds = utils.spawn_seeds(seed, 1)
        reports = [check_kernel_equivariance_exact(k, name='exact'),
                   check_density_equivariance(k, name='density'),
                   check_sampler_agreement(k, n_samples=check.n, alpha=check.alpha, random_state=seeds[0],
                                           name='sampler')]
        return merge(check.name, reports, seed=seed)
    if check.type == DEMO:
        return demos.create(check.demo, seed=seed, n_jobs=n_jobs, **check.params)

    cs = built['cs']
    try:
        sym = symmetrize_along(cs.inclusion, built['f'], built['gamma'], cs, built['X'], built['X'],
                               random_state=seed)
    except IllTypedInputError as e:
        logger.warning('check %s: %s', check.name, e)
        return AuditReport(check.name, constants.SPOT_CHECK, False, seed=seed, details={'error': str(e)})
    if isinstance(sym, Kernel):
        return audit_kernel(sym, check, seed)
    return audit_map(sym, check, seed)


def run_config(config, n_jobs=1):
    """
    Run every check of an `AuditConfig`, concurrently when `n_jobs` > 1.

    Every check gets a sub-seed of the master seed, by position in the configuration, so the report does not
    depend on `n_jobs` or on completion order.
    """
    checks = config.checks
    seeds = utils.spawn_seeds(config.seed, len(checks))
    # checks are built first so that a malformed entry fails before any audit runs
    for check in checks:
        _build(check)
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            reports = list(pool.map(lambda cs: run_check(cs[0], cs[1]), zip(checks, seeds)))
    else:
        reports = [run_check(check, seed, n_jobs) for check, seed in zip(checks, seeds)]
    return merge(config.name, reports, seed=config.seed)


def _finish(report, out, extra):
    file.write_report(report, out, extra=extra)
    status = 'PASS' if report.passed else 'FAIL'
    print('{s} {i}: {n} checks, max violation {v:.3g} -> {o}'.format(s=status, i=report.instance,
                                                                      n=report.n_checks, v=report.max_violation,
                                                                      o=out))
    for witness in report.witnesses[:3]:
        print('  witness: {w}'.format(w=utils.to_jsonable(witness)))
    return EXIT_PASS if report.passed else EXIT_FAIL


def command_run(args):
    start = time.time()
    try:
        config = AuditConfig.from_file(args.config)
        report = run_config(config, n_jobs=args.jobs)
    except (ConfigError, UnsupportedModeError, UnsupportedGroupError, StructuralError) as e:
        print('error: {e}'.format(e=e), file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or config.output or file.default_output(config.name)
    extra = {constants.CONFIG: config.to_dict(), constants.VERSION: __version__,
             constants.WALL_TIME: time.time() - start}
    return _finish(report, out, extra)


def command_demo(args):
    start = time.time()
    if args.name not in dict(demos.describe()):
        print('error: unknown demo {n!r}; see `sksym list-demos`.'.format(n=args.name), file=sys.stderr)
        return EXIT_CONFIG
    report = demos.create(args.name, seed=args.seed, n_jobs=args.jobs, show_progress=args.verbose)
    out = args.out or file.default_output(args.name)
    extra = {constants.CONFIG: {'demo': args.name, 'seed': args.seed}, constants.VERSION: __version__,
             constants.WALL_TIME: time.time() - start}
    return _finish(report, out, extra)


def command_list_demos(args):
    for name, description in demos.describe():
        print('{n:<18}{d}'.format(n=name, d=description))
    return EXIT_PASS


def build_parser():
    parser = argparse.ArgumentParser(prog='sksym', description='Audit and demonstrate group symmetrisation.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--jobs', type=int, default=1, help='worker threads (default 1)')
    parser.add_argument('--verbose', action='store_true', help='log progress')
    parser.add_argument('--log-file', default=None, help='write the log to this file')
    sub = parser.add_subparsers(dest='command')

    run = sub.add_parser('run', help='run the checks of a configuration file')
    run.add_argument('config')
    run.add_argument('--out', default=None, help='report path')
    run.set_defaults(func=command_run)

    demo = sub.add_parser('demo', help='run a demo by name')
    demo.add_argument('name')
    demo.add_argument('--seed', type=int, default=0)
    demo.add_argument('--out', default=None, help='report path')
    demo.set_defaults(func=command_demo)

    list_demos = sub.add_parser('list-demos', help='list the available demos')
    list_demos.set_defaults(func=command_list_demos)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG
    if args.jobs < 1:
        parser.error('--jobs must be at least 1')
    logging.basicConfig(format='%(message)s', filename=args.log_file,
                        level=logging.INFO if args.verbose else logging.WARNING)
    return args.func(args)
