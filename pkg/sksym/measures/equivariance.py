from concurrent.futures import ThreadPoolExecutor
import itertools
import logging
import numpy as np
from tqdm import tqdm
from ..core.kernels import pushforward
from ..core.report import AuditReport, collect_witnesses
from ..utils import constants, utils
from ..utils.exceptions import StructuralError, UnsupportedModeError, InvariantViolationError
from . import statistics

logger = logging.getLogger(__name__)


def _same_group(X, Y):
    if X.group != Y.group:
        raise StructuralError('domain and codomain are acted on by different groups ({a}, {b}).'
                              .format(a=X.group, b=Y.group))


def _resolve_mode(X, mode):
    if mode is None:
        return constants.EXHAUSTIVE if X.is_finite else constants.SAMPLED
    if mode == constants.EXHAUSTIVE and not X.is_finite:
        raise UnsupportedModeError('exhaustive audits need a finite group acting on a finite carrier, got {x}.'
                                   .format(x=X))
    if mode not in (constants.EXHAUSTIVE, constants.SAMPLED):
        raise ValueError('unknown audit mode: {m}'.format(m=mode))
    return mode


def _sampled_pairs(X, n_samples, rng, exclusion, element_sampler=None):
    """Draw (g, x) pairs with x and g.x outside the exclusion set; return the pairs and the number skipped."""
    draw = element_sampler or X.group.random_element
    pairs, skipped = [], 0
    for _ in range(10 * n_samples):
        if len(pairs) == n_samples:
            break
        g, x = draw(rng), X.carrier.sample(rng)
        if exclusion is not None and (exclusion(x) or exclusion(X._act(g, x))):
            skipped += 1
            continue
        pairs.append((g, x))
    if len(pairs) < n_samples:
        logger.warning('only %d of %d pairs could be drawn outside the exclusion set.', len(pairs), n_samples)
    return pairs, skipped


def check_equivariance(f, mode=None, n_samples=constants.DEFAULT_N_SAMPLES, random_state=None,
                       tolerance=constants.EPS_NUM, exclusion=None, element_sampler=None, show_progress=False,
                       name=None):
    """Equivariance audit of a deterministic map.

    Measure ||f(g.x) - g.f(x)|| over (g, x) pairs, exhaustively on finite G-sets or on random pairs.

    Parameters
    ----------
    f : EquivariantMap
        the map, with its domain and codomain G-sets.

    mode : str, optional
        "exhaustive" or "sampled". The default is exhaustive for finite domains, sampled otherwise.

    n_samples : int, optional
        the number of random pairs in sampled mode. The default is `constants.DEFAULT_N_SAMPLES`.

    random_state : int, None or numpy.random.Generator, optional
        the source of randomness in sampled mode. The seed is echoed in the report.

    tolerance : float, optional
        the largest violation still counted as equality. The default is `constants.EPS_NUM`; finite carriers
        compare exactly.

    exclusion : callable, optional
        a predicate x -> bool marking a measure-zero set of inputs (e.g. the discontinuities of a gamma map)
        where the audit is not performed. The default is the `exclusion` attribute of `f`, if any.

    element_sampler : callable, optional
        rng -> g, to audit a subset of the group in sampled mode. The default is `group.random_element`.

    show_progress : boolean, optional
        if True, show a progress bar. The default is `False`.

    name : str, optional
        the report instance label. The default is the name of `f`.

    Returns
    -------
    AuditReport
        pass iff the maximum violation is within `tolerance`; failing pairs are listed as witnesses.

    Raises
    ------
    UnsupportedModeError
        if exhaustive mode is requested on an infinite group or carrier.

    Examples
    --------
    >>> from sksym.core.actions import sign_gset
    >>> from sksym.symmetrisation.deterministic import EquivariantMap
    >>> X = sign_gset()
    >>> report = check_equivariance(EquivariantMap(X, X, lambda x: x + 1), random_state=0)
    >>> report.passed
    False
    """
    X, Y = f.domain, f.codomain
    _same_group(X, Y)
    mode = _resolve_mode(X, mode)
    if exclusion is None:
        exclusion = getattr(f, 'exclusion', None)
    seed = None
    skipped = 0

    if mode == constants.EXHAUSTIVE:
        points = X.carrier.points()
        values = [f(x) for x in points]
        if exclusion is not None:
            keep = [not exclusion(x) for x in points]
            skipped = len(points) - sum(keep)
        else:
            keep = [True] * len(points)
        pairs = [(g, i) for g, i in itertools.product(X.group.elements(), range(len(points))) if keep[i]]

        def violation(pair):
            g, i = pair
            j = X.carrier.index(X._act(g, points[i]))
            if not keep[j]:
                return None
            return Y.carrier.distance(values[j], Y._act(g, values[i])), points[i]
    else:
        if n_samples < 1:
            raise ValueError('n_samples must be a positive integer.')
        seed = utils.seed_of(random_state)
        pairs, skipped = _sampled_pairs(X, n_samples, utils.check_random_state(seed), exclusion, element_sampler)

        def violation(pair):
            g, x = pair
            return Y.carrier.distance(f(X._act(g, x)), Y._act(g, f(x))), x

    results = []
    for pair in tqdm(pairs, disable=not show_progress):
        out = violation(pair)
        if out is None:
            skipped += 1
            continue
        v, x = out
        results.append({'g': pair[0], 'x': x, constants.MAX_VIOLATION: float(v)})

    max_violation = max([r[constants.MAX_VIOLATION] for r in results], default=0.0)
    passed = max_violation <= tolerance
    label = name or getattr(f, 'name', 'map')
    logger.info('%s: %s audit over %d pairs, max violation %.3g (%s)', label, mode, len(results), max_violation,
                'pass' if passed else 'fail')
    return AuditReport(label, mode, passed, max_violation=max_violation,
                       witnesses=collect_witnesses(results, tolerance), seed=seed, n_checks=len(results),
                       details={'n_excluded': skipped, 'tolerance': tolerance})


def _point_permutation(X, g):
    points = X.carrier.points()
    return np.array([X.carrier.index(X._act(g, x)) for x in points], dtype=int)


def _require_table(k, what):
    if not k.has_table:
        raise UnsupportedModeError('{w} needs an exact table; {k} only has a sampler.'.format(w=what, k=k))
    if not (k.domain.is_finite and k.codomain.is_finite):
        raise UnsupportedModeError('{w} needs a finite group acting on finite carriers.'.format(w=what))


def check_kernel_equivariance_exact(k, tolerance=constants.EPS_PROB, show_progress=False, name=None):
    """
    Exact kernel equivariance k(.|g.x) = g.k(.|x), for all g and x, on an exact table.

    The row of g.x is compared entrywise with the row of x transported along the action of g on the codomain.

    Raises
    ------
    UnsupportedModeError
        if the kernel has no exact table or the G-sets are not finite.
    """
    X, Y = k.domain, k.codomain
    _same_group(X, Y)
    _require_table(k, 'exact kernel audit')
    P = k.table.matrix
    xs = X.carrier.points()
    results = []
    for g in tqdm(X.group.elements(), disable=not show_progress):
        gx = _point_permutation(X, g)
        gy = _point_permutation(Y, g)
        pushed = np.zeros_like(P)
        pushed[:, gy] = P
        deviation = np.abs(P[gx] - pushed).max(axis=1) if P.size else np.zeros(len(xs))
        for i, x in enumerate(xs):
            results.append({'g': g, 'x': x, constants.MAX_VIOLATION: float(deviation[i])})

    max_violation = max([r[constants.MAX_VIOLATION] for r in results], default=0.0)
    passed = max_violation <= tolerance
    label = name or k.name
    logger.info('%s: exact kernel audit, max deviation %.3g (%s)', label, max_violation, 'pass' if passed else 'fail')
    return AuditReport(label, constants.EXACT, passed, max_violation=max_violation,
                       witnesses=collect_witnesses(results, tolerance), n_checks=len(results),
                       details={'tolerance': tolerance})


def check_density_equivariance(k, tolerance=constants.EPS_PROB, name=None):
    """
    Check the density condition p(g.y | g.x) = p(y | x) for all g, x, y on an exact table.

    When the condition holds, the kernel equivariance audit is run as well and must pass: a table satisfying
    the density condition whose exact audit fails raises `InvariantViolationError`. The converse is not
    assumed.
    """
    X, Y = k.domain, k.codomain
    _same_group(X, Y)
    _require_table(k, 'density audit')
    P = k.table.matrix
    results = []
    for g in X.group.elements():
        gx = _point_permutation(X, g)
        gy = _point_permutation(Y, g)
        deviation = np.abs(P[np.ix_(gx, gy)] - P)
        if deviation.size == 0:
            continue
        i, j = np.unravel_index(np.argmax(deviation), deviation.shape)
        results.append({'g': g, 'x': X.carrier.points()[i], 'y': Y.carrier.points()[j],
                        constants.MAX_VIOLATION: float(deviation[i, j])})

    max_violation = max([r[constants.MAX_VIOLATION] for r in results], default=0.0)
    passed = max_violation <= tolerance
    details = {'tolerance': tolerance}
    if passed:
        kernel_report = check_kernel_equivariance_exact(k, tolerance=tolerance)
        details['kernel_check_pass'] = kernel_report.passed
        if not kernel_report.passed:
            raise InvariantViolationError('{k} satisfies the density condition but fails the kernel audit.'
                                          .format(k=k))
    return AuditReport(name or k.name, constants.EXACT, passed, max_violation=max_violation,
                       witnesses=collect_witnesses(results, tolerance), n_checks=len(results), details=details)


def _measure_distance(carrier, points_a, weights_a, points_b, weights_b, tolerance):
    """
    The largest difference of mass that two finitely supported measures put on a tolerance-cluster of points.
    """
    support = list(points_a) + list(points_b)
    gap = 0.0
    for p in support:
        mass_a = sum(w for q, w in zip(points_a, weights_a) if carrier.distance(p, q) <= tolerance)
        mass_b = sum(w for q, w in zip(points_b, weights_b) if carrier.distance(p, q) <= tolerance)
        gap = max(gap, abs(mass_a - mass_b))
    return gap


def check_kernel_equivariance_support(k, mode=None, n_samples=constants.DEFAULT_N_SAMPLES, random_state=None,
                                      tolerance=constants.EPS_NUM, exclusion=None, element_sampler=None,
                                      name=None):
    """
    Kernel equivariance for kernels with finite support on any carrier: the atoms of k(.|g.x) and of the
    pushforward g.k(.|x) must put the same mass (within `constants.EPS_PROB`) on the same points (within
    `tolerance`).
    """
    X, Y = k.domain, k.codomain
    _same_group(X, Y)
    if not k.has_atoms:
        raise UnsupportedModeError('{k} has no finite support.'.format(k=k))
    mode = _resolve_mode(X, mode)
    seed = None
    skipped = 0
    if mode == constants.EXHAUSTIVE:
        pairs = list(itertools.product(X.group.elements(), X.carrier.points()))
    else:
        seed = utils.seed_of(random_state)
        pairs, skipped = _sampled_pairs(X, n_samples, utils.check_random_state(seed), exclusion, element_sampler)

    results = []
    for g, x in pairs:
        points, weights = k.atoms(X._act(g, x))
        pushed = pushforward(g, k, x)
        gap = _measure_distance(Y.carrier, points, weights, pushed.atoms, pushed.weights, tolerance)
        results.append({'g': g, 'x': x, constants.MAX_VIOLATION: float(gap)})

    max_violation = max([r[constants.MAX_VIOLATION] for r in results], default=0.0)
    passed = max_violation <= constants.EPS_PROB
    return AuditReport(name or k.name, mode, passed, max_violation=max_violation,
                       witnesses=collect_witnesses(results, constants.EPS_PROB), seed=seed, n_checks=len(results),
                       details={'n_excluded': skipped, 'tolerance': tolerance})


def check_kernel_equivariance_coupled(k, n_samples=constants.DEFAULT_N_SAMPLES, random_state=None,
                                      tolerance=constants.EPS_NUM, exclusion=None, element_sampler=None,
                                      name=None):
    """
    Common-random-numbers audit: sample k at g.x and at x from identically seeded generators and require
    k(g.x; w) = g.k(x; w) within `tolerance`.

    This is sufficient, not necessary, for kernel equivariance: it certifies kernels whose randomness does not
    depend on the input frame (e.g. canonicalised translation and permutation parts) exactly, and may fail on
    kernels that are only equivariant in distribution.
    """
    X, Y = k.domain, k.codomain
    _same_group(X, Y)
    seed = utils.seed_of(random_state)
    rng = utils.check_random_state(seed)
    pairs, skipped = _sampled_pairs(X, n_samples, rng, exclusion, element_sampler)
    sub_seeds = utils.spawn_seeds(seed, len(pairs))
    results = []
    for (g, x), s in zip(pairs, sub_seeds):
        lhs = k.sample(X._act(g, x), np.random.default_rng(s))
        rhs = Y._act(g, k.sample(x, np.random.default_rng(s)))
        results.append({'g': g, 'x': x, constants.MAX_VIOLATION: float(Y.carrier.distance(lhs, rhs))})

    max_violation = max([r[constants.MAX_VIOLATION] for r in results], default=0.0)
    passed = max_violation <= tolerance
    label = name or k.name
    logger.info('%s: coupled audit over %d pairs, max violation %.3g (%s)', label, len(results), max_violation,
                'pass' if passed else 'fail')
    return AuditReport(label, constants.COUPLED, passed, max_violation=max_violation,
                       witnesses=collect_witnesses(results, tolerance), seed=seed, n_checks=len(results),
                       details={'n_excluded': skipped, 'tolerance': tolerance})


def check_kernel_equivariance_statistical(k, n_samples=5000, n_pairs=constants.DEFAULT_N_PAIRS,
                                          alpha=constants.DEFAULT_ALPHA, random_state=None, n_permutations=None,
                                          max_points=constants.MAX_ENERGY_POINTS, exclusion=None,
                                          element_sampler=None, n_jobs=1, show_progress=False, name=None):
    """Statistical kernel equivariance audit.

    For `n_pairs` random (g, x) pairs, draw `n_samples` outcomes of k(.|g.x) and `n_samples` outcomes of
    g.k(.|x), and compare the two samples with an energy-distance permutation test. The audit passes iff no test
    rejects at level `alpha` after Bonferroni correction across pairs.

    Parameters
    ----------
    k : Kernel
        a kernel with a sampler.

    n_samples : int, optional
        draws per side and pair. The default is 5000.

    n_pairs : int, optional
        the number of (g, x) pairs. The default is `constants.DEFAULT_N_PAIRS`.

    alpha : float, optional
        the family-wise significance level. The default is `constants.DEFAULT_ALPHA`.

    random_state : int, None or numpy.random.Generator, optional
        the master seed; every pair gets an independent sub-seed derived from it, so the result does not
        depend on `n_jobs`.

    n_permutations : int, optional
        relabellings per test. The default is the smallest number, at least `constants.N_PERMUTATIONS`, whose
        p-values can reach the corrected level alpha / n_pairs.

    max_points : int, optional
        the energy test subsamples each side to at most this many draws.

    n_jobs : int, optional
        the number of worker threads. The default is 1.

    Returns
    -------
    AuditReport
        with the raw p-values; witnesses are the rejected pairs.
    """
    if not 0 < alpha < 1:
        raise ValueError('alpha must lie in (0, 1).')
    if n_samples < 2 or n_pairs < 1:
        raise ValueError('n_samples must be at least 2 and n_pairs at least 1.')
    X, Y = k.domain, k.codomain
    _same_group(X, Y)
    if n_permutations is None:
        n_permutations = statistics.n_permutations_for(n_pairs, alpha)
    seed = utils.seed_of(random_state)
    sub_seeds = utils.spawn_seeds(seed, n_pairs)

    def run_pair(s):
        rng = np.random.default_rng(s)
        pairs, _ = _sampled_pairs(X, 1, rng, exclusion, element_sampler)
        g, x = pairs[0]
        gx = X._act(g, x)
        A = np.array([Y.carrier.embed(k.sample(gx, rng)) for _ in range(n_samples)])
        B = np.array([Y.carrier.embed(Y._act(g, k.sample(x, rng))) for _ in range(n_samples)])
        stat, p = statistics.energy_test(A, B, n_permutations=n_permutations, random_state=rng,
                                         max_points=max_points)
        return {'g': g, 'x': x, 'energy': stat, 'p_value': p}

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(tqdm(pool.map(run_pair, sub_seeds), total=n_pairs, disable=not show_progress))
    else:
        results = [run_pair(s) for s in tqdm(sub_seeds, disable=not show_progress)]

    p_values = [r['p_value'] for r in results]
    reject, adjusted = statistics.bonferroni(p_values, alpha)
    witnesses = []
    for r, rej, adj in zip(results, reject, adjusted):
        if rej:
            witnesses.append({'g': r['g'], 'x': r['x'], 'p_value': r['p_value'], 'adjusted_p_value': float(adj),
                              constants.MAX_VIOLATION: r['energy']})
    witnesses.sort(key=lambda w: w['p_value'])
    passed = not np.any(reject)
    label = name or k.name
    logger.info('%s: statistical audit over %d pairs, min p-value %.3g (%s)', label, n_pairs, min(p_values),
                'pass' if passed else 'fail')
    return AuditReport(label, constants.STATISTICAL, passed,
                       max_violation=max(r['energy'] for r in results),
                       witnesses=witnesses[:constants.MAX_WITNESSES], seed=seed, n_checks=n_pairs,
                       p_values=p_values,
                       details={'alpha': alpha, 'n_samples': n_samples, 'n_permutations': n_permutations,
                                'correction': 'bonferroni'})


def check_kernel_equivariance(k, random_state=None, n_samples=constants.SPOT_CHECK_SAMPLES,
                              n_draws=constants.SPOT_CHECK_DRAWS, n_pairs=constants.SPOT_CHECK_PAIRS,
                              alpha=constants.SPOT_CHECK_ALPHA, exclusion=None, name=None):
    """
    The cheapest conclusive audit available for `k`: exact on finite tables, support-wise on finitely supported
    kernels, statistical otherwise.
    """
    if k.has_table and k.domain.is_finite and k.codomain.is_finite:
        return check_kernel_equivariance_exact(k, name=name)
    if k.has_atoms:
        return check_kernel_equivariance_support(k, n_samples=n_samples, random_state=random_state,
                                                 exclusion=exclusion, name=name)
    return check_kernel_equivariance_statistical(k, n_samples=n_draws, n_pairs=n_pairs, alpha=alpha,
                                                 random_state=random_state, exclusion=exclusion, name=name)


def check_sampler_agreement(k, n_samples=100000, alpha=constants.DEFAULT_ALPHA, random_state=None, name=None):
    """
    Chi-squared test of the sampler of `k` against its exact table, one test per row with a Bonferroni
    correction across rows.
    """
    if not k.has_table:
        raise UnsupportedModeError('sampler agreement needs an exact table.')
    seed = utils.seed_of(random_state)
    rng = utils.check_random_state(seed)
    xs = k.domain.carrier.points()
    p_values = []
    for i, x in enumerate(xs):
        counts = np.zeros(k.codomain.carrier.size)
        for _ in range(n_samples):
            counts[k.codomain.carrier.index(k.sample(x, rng))] += 1
        p_values.append(statistics.chisquare_test(counts, k.table.row(i)))
    reject, adjusted = statistics.bonferroni(p_values, alpha)
    witnesses = [{'x': x, 'p_value': p, constants.MAX_VIOLATION: float(1.0 - p)}
                 for x, p, rej in zip(xs, p_values, reject) if rej]
    return AuditReport(name or k.name, constants.STATISTICAL, not np.any(reject),
                       max_violation=float(1.0 - min(p_values, default=1.0)), witnesses=witnesses, seed=seed,
                       n_checks=len(xs), p_values=p_values,
                       details={'alpha': alpha, 'n_samples': n_samples, 'test': 'chi-squared'})
