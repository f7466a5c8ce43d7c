"""
The point-cloud pipeline S_n -> O(d) x S_n -> E(d) x S_n.

A permutation-equivariant base map is made rotation-equivariant by a first stage (stochastic, with a Haar gamma
on O(d), or deterministic, with a principal-axes frame), then translation-equivariant by a second, deterministic
stage that canonicalises the centroid to the origin.
"""
import logging
import time
import numpy as np
from ..core import groups as grp
from ..core.actions import point_cloud_gset
from ..core.kernels import Kernel
from ..core.report import merge
from ..measures.equivariance import (check_equivariance, check_kernel_equivariance_coupled,
                                     check_kernel_equivariance_statistical)
from ..symmetrisation.deterministic import EquivariantMap
from ..symmetrisation.gammas import centroid_gamma, pca_gamma
from ..symmetrisation.pipeline import SymStage, SymPipeline, run_pipeline
from ..symmetrisation.stochastic import haar_gamma
from ..utils import constants, utils

logger = logging.getLogger(__name__)

HAAR = 'haar'
PCA = 'pca'


def base_point_cloud_map(n, d=3, seed=0):
    """
    The S_n-equivariant map f(x) = x A + b + mean(x) B on clouds of `n` points in R^`d`, with A, B and b drawn
    from `seed`.

    Every row is transformed by the same affine map and receives the same pooled term, so permuting the rows of
    x permutes the rows of f(x). Neither rotations nor translations commute with f.

    Returns
    -------
    EquivariantMap
        typed over the point-cloud S_n-set.
    """
    if n < 1:
        raise ValueError('a point cloud needs at least one point.')
    rng = utils.check_random_state(seed)
    A = rng.standard_normal((d, d))
    B = rng.standard_normal((d, d))
    b = rng.standard_normal(d)

    def fn(x):
        return x @ A + b + x.mean(axis=0) @ B

    X = point_cloud_gset(grp.SymmetricGroup(n), n, d)
    return EquivariantMap(X, X, fn, name='base')


def point_cloud_pipeline(n, seed=0, rotation=HAAR, d=3):
    """Point-cloud symmetrisation pipeline.

    Parameters
    ----------
    n : int
        the number of points.

    seed : int, optional
        the seed of the base map weights. The default is 0.

    rotation : str, optional
        "haar" for the stochastic rotation stage, "pca" for the deterministic principal-axes stage. The default
        is "haar".

    d : int, optional
        the dimension of the points. The default is 3.

    Returns
    -------
    SymPipeline
        base S_n, stage "rotation" along S_n -> O(d) x S_n, stage "translation" along
        O(d) x S_n -> E(d) x S_n.
    """
    if rotation not in (HAAR, PCA):
        raise ValueError('rotation must be "haar" or "pca", got {r}.'.format(r=rotation))
    base = base_point_cloud_map(n, d, seed)
    S = grp.SymmetricGroup(n)
    G1 = grp.ProductGroup(grp.OrthogonalGroup(d), S)
    G2 = grp.ProductGroup(grp.EuclideanGroup(d), S)
    X1 = point_cloud_gset(G1, n, d)
    X2 = point_cloud_gset(G2, n, d)

    cs1 = grp.left_factor_quotient(G1)
    gamma1 = haar_gamma(G1, X1, cs1) if rotation == HAAR else pca_gamma(X1, cs1)
    stage1 = SymStage(grp.hom_inject_left(grp.OrthogonalGroup(d), S), gamma1, cs1, name='rotation')

    cs2 = grp.translation_quotient(G2)
    phi2 = grp.product_homomorphism(grp.orthogonal_in_euclidean(d), grp.identity_homomorphism(S))
    stage2 = SymStage(phi2, centroid_gamma(X2, cs2), cs2, name='translation')
    return SymPipeline(base, [stage1, stage2], name='point-cloud(%s)' % rotation)


def demo_point_cloud(n=5, seed=0, n_samples=5000, n_pairs=constants.DEFAULT_N_PAIRS, alpha=constants.DEFAULT_ALPHA,
                     rotation=HAAR, d=3, n_jobs=1, show_progress=False):
    """Point-cloud demonstration.

    Build `point_cloud_pipeline(n, seed, rotation)`, run it and audit the result for S_n x E(d) equivariance.

    Parameters
    ----------
    n : int, optional
        the number of points. The default is 5.

    seed : int, optional
        the master seed: base weights, stage spot-checks and audits all derive from it. The default is 0.

    n_samples : int, optional
        draws per side in the statistical rotation audit. The default is 5000.

    n_pairs : int, optional
        (g, x) pairs in the statistical rotation audit. The default is `constants.DEFAULT_N_PAIRS`.

    alpha : float, optional
        the family-wise level of the statistical audit. The default is `constants.DEFAULT_ALPHA`.

    rotation : str, optional
        "haar" or "pca". The default is "haar".

    n_jobs : int, optional
        worker threads for the statistical audit. The default is 1.

    Returns
    -------
    AuditReport
        a composite report whose sub-checks are

        * "base-permutation": the base map is S_n-equivariant (sampled, 1e-9);
        * "translation-coupled" and "permutation-coupled": the symmetrised kernel commutes exactly with
          translations and permutations when both sides share their random numbers (1e-9);
        * "rotation-statistical": energy-distance tests under random (Q, t, sigma), Bonferroni-corrected;

        or, with the PCA stage, "base-permutation" and "equivariance-sampled" (1e-6, degenerate frames excluded).

    Examples
    --------
    >>> report = demo_point_cloud(n=5, seed=0)
    >>> report.passed
    True
    """
    start = time.time()
    seeds = utils.spawn_seeds(seed, 5)
    pipeline = point_cloud_pipeline(n, seed=seed, rotation=rotation, d=d)
    sym = run_pipeline(pipeline, random_state=seeds[0])
    logger.info('%s: pipeline built in %.2fs', pipeline.name, time.time() - start)

    G = pipeline.group
    S = G.right
    I = np.eye(d)

    def translations(rng):
        return ((I, rng.standard_normal(d)), S.identity())

    def permutations(rng):
        return ((I, np.zeros(d)), S.random_element(rng))

    reports = [check_equivariance(pipeline.base, mode=constants.SAMPLED, random_state=seeds[1],
                                  name='base-permutation')]
    if isinstance(sym, Kernel):
        reports.append(check_kernel_equivariance_coupled(sym, random_state=seeds[2], element_sampler=translations,
                                                         name='translation-coupled'))
        reports.append(check_kernel_equivariance_coupled(sym, random_state=seeds[3], element_sampler=permutations,
                                                         name='permutation-coupled'))
        reports.append(check_kernel_equivariance_statistical(sym, n_samples=n_samples, n_pairs=n_pairs, alpha=alpha,
                                                             random_state=seeds[4], n_jobs=n_jobs,
                                                             show_progress=show_progress,
                                                             name='rotation-statistical'))
    else:
        reports.append(check_equivariance(sym, mode=constants.SAMPLED, random_state=seeds[4], tolerance=1e-6,
                                          name='equivariance-sampled'))

    report = merge('point-cloud', reports, seed=seed,
                   details={'n': n, 'd': d, 'rotation': rotation, 'group': G.to_dict()})
    logger.info('point-cloud demo (n=%d, rotation=%s): %s in %.2fs', n, rotation,
                'pass' if report.passed else 'fail', time.time() - start)
    return report
