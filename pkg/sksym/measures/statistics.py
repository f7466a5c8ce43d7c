import logging
import math
import numpy as np
from scipy import stats
from scipy.spatial.distance import pdist, squareform
from statsmodels.stats.multitest import multipletests
from ..utils import constants, utils

logger = logging.getLogger(__name__)


def _energy_from_labels(D, L, n_a, n_b):
    # L holds one 0/1 column per labelling, 1 marking the first sample
    DL = D @ L
    total = D.sum()
    aa = np.einsum('ij,ij->j', L, DL)
    ab = DL.sum(axis=0) - aa
    bb = total - 2.0 * ab - aa
    mean_aa = aa / (n_a * (n_a - 1)) if n_a > 1 else 0.0
    mean_bb = bb / (n_b * (n_b - 1)) if n_b > 1 else 0.0
    return 2.0 * ab / (n_a * n_b) - mean_aa - mean_bb


def energy_distance(A, B):
    """
    The two-sample energy statistic 2 E|A - B| - E|A - A'| - E|B - B'| (within-sample means exclude the
    diagonal).
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    D = squareform(pdist(np.vstack([A, B])))
    labels = np.r_[np.ones(len(A)), np.zeros(len(B))][:, None]
    return float(_energy_from_labels(D, labels, len(A), len(B))[0])


def energy_test(A, B, n_permutations=constants.N_PERMUTATIONS, random_state=None,
                max_points=constants.MAX_ENERGY_POINTS, batch_size=500):
    """Energy-distance two-sample permutation test.

    Tests the hypothesis that the rows of `A` and the rows of `B` are drawn from the same distribution.

    Parameters
    ----------
    A, B : array-like
        the two samples, one observation per row.

    n_permutations : int, optional
        the number of random relabellings. The default is `constants.N_PERMUTATIONS`.

    random_state : int, None or numpy.random.Generator, optional
        the source of randomness for subsampling and relabelling.

    max_points : int, optional
        each sample is randomly subsampled to at most this many rows before building the distance matrix.
        The default is `constants.MAX_ENERGY_POINTS`.

    batch_size : int, optional
        the number of relabellings evaluated together as one matrix product.

    Returns
    -------
    tuple
        the observed statistic and the permutation p-value (1 + #{T_perm >= T_obs}) / (1 + n_permutations).

    References
    ----------
    .. [szekely2013] Szekely, G. J. & Rizzo, M. L. (2013) Energy statistics: A class of statistics based on
       distances. Journal of Statistical Planning and Inference 143, 1249-1272.
    """
    rng = utils.check_random_state(random_state)
    A = np.asarray(A, dtype=float).reshape(len(A), -1)
    B = np.asarray(B, dtype=float).reshape(len(B), -1)
    if A.shape[1] != B.shape[1]:
        raise ValueError('samples live in different dimensions.')
    if len(A) < 2 or len(B) < 2:
        raise ValueError('each sample needs at least two observations.')
    if len(A) > max_points:
        A = A[rng.choice(len(A), max_points, replace=False)]
    if len(B) > max_points:
        B = B[rng.choice(len(B), max_points, replace=False)]

    n_a, n_b = len(A), len(B)
    D = squareform(pdist(np.vstack([A, B])))
    observed = _energy_from_labels(D, np.r_[np.ones(n_a), np.zeros(n_b)][:, None], n_a, n_b)[0]

    # ties (e.g. two identical point masses) count as exceedances
    threshold = observed - constants.EPS_NUM * max(1.0, abs(observed))
    exceed = 0
    done = 0
    while done < n_permutations:
        size = min(batch_size, n_permutations - done)
        L = np.zeros((n_a + n_b, size))
        for j in range(size):
            L[rng.permutation(n_a + n_b)[:n_a], j] = 1.0
        exceed += int(np.sum(_energy_from_labels(D, L, n_a, n_b) >= threshold))
        done += size
    p_value = (exceed + 1.0) / (n_permutations + 1.0)
    return float(observed), float(p_value)


def bonferroni(p_values, alpha=constants.DEFAULT_ALPHA):
    """
    Bonferroni-corrected rejections and adjusted p-values (`statsmodels.stats.multitest.multipletests`).
    """
    if len(p_values) == 0:
        return np.zeros(0, dtype=bool), np.zeros(0)
    reject, adjusted, _, _ = multipletests(np.asarray(p_values, dtype=float), alpha=alpha, method='bonferroni')
    return reject, adjusted


def n_permutations_for(n_tests, alpha=constants.DEFAULT_ALPHA, minimum=constants.N_PERMUTATIONS):
    """
    The number of permutations needed for a permutation p-value to be able to reach alpha / n_tests.
    """
    return max(minimum, int(math.ceil(n_tests / alpha)))


def chisquare_test(counts, probabilities):
    """
    Chi-squared goodness of fit of observed `counts` to `probabilities`.

    Categories of zero probability are dropped; any count falling in one of them gives p-value 0.

    Returns
    -------
    float
        the p-value.
    """
    counts = np.asarray(counts, dtype=float)
    probabilities = np.asarray(probabilities, dtype=float)
    support = probabilities > constants.EPS_PROB
    if np.any(counts[~support] > 0):
        return 0.0
    if support.sum() < 2:
        return 1.0
    expected = probabilities[support] / probabilities[support].sum() * counts.sum()
    return float(stats.chisquare(counts[support], expected).pvalue)
