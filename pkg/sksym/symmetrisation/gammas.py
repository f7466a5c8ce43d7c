"""
Hand-constructed gamma maps X -> G/H.

Each constructor documents its tie-breaking rule and, when the rule is not equivariant on a measure-zero set of
inputs, declares that set as the `exclusion` of the returned map.
"""
import logging
import numpy as np
from sklearn.decomposition import PCA
from ..core import groups as grp
from ..core.actions import sign_gset
from ..utils import constants
from ..utils.exceptions import StructuralError, InvariantViolationError
from .deterministic import GammaMap

logger = logging.getLogger(__name__)


def constant_gamma(X, cs, coset=None):
    """
    The constant map x -> c. It is equivariant iff c is fixed by the whole group, e.g. for G/G.

    Raises
    ------
    InvariantViolationError
        if `coset` is moved by some group element (checked exhaustively on finite coset spaces).
    """
    if coset is None:
        coset = cs.identity_coset()
    cs.validate(coset)
    if cs.is_finite and cs.group.is_finite:
        for g in cs.group.elements():
            if not cs.equal(cs.act(g, coset), coset):
                raise InvariantViolationError('coset {c} is not fixed by {g}: the constant map is not equivariant.'
                                              .format(c=coset, g=g))
    return GammaMap(X, cs, lambda x: coset, name='constant')


def sign_gamma(X=None, cs=None):
    """
    gamma(x) = [e] when the first nonzero coordinate of x is positive, [g] when it is negative, for the group
    C_2 acting on R^d by negation.

    Ties: x = 0 is sent to [e]; the origin is the exclusion set.

    Examples
    --------
    >>> gamma = sign_gamma()
    >>> gamma(np.array([-2.0]))
    1
    """
    if X is None:
        X = sign_gset(1)
    if not isinstance(X.group, grp.CyclicGroup) or X.group.n != 2:
        raise StructuralError('sign_gamma needs the group C_2, got {g}.'.format(g=X.group))
    if cs is None:
        cs = grp.trivial_quotient(X.group)

    def fn(x):
        nonzero = np.flatnonzero(x)
        if len(nonzero) == 0 or x[nonzero[0]] > 0:
            return cs.coset_of(0)
        return cs.coset_of(1)

    return GammaMap(X, cs, fn, name='sign', exclusion=lambda x: not np.any(x))


def translation_gamma(X, cs=None):
    """
    gamma(x) = [translation by x] for T(d) or E(d) acting on R^d; canonicalises every point to the origin.
    """
    G = X.group
    if cs is None:
        if isinstance(G, grp.TranslationGroup):
            cs = grp.trivial_quotient(G)
        elif isinstance(G, grp.EuclideanGroup):
            cs = grp.translation_quotient(G)
        else:
            raise StructuralError('translation_gamma needs T(d) or E(d), got {g}.'.format(g=G))
    return GammaMap(X, cs, lambda x: np.array(x, dtype=float), name='translation')


def centroid(x):
    if len(x) == 0:
        return np.zeros(x.shape[1])
    return x.mean(axis=0)


def centroid_gamma(X, cs=None):
    """
    gamma(x) = [translation by the centroid of x], for point clouds acted on by T(d), E(d), or E(d) x K with K
    permuting the points.

    The centroid of g.x is g applied to the centroid of x, so the map is equivariant everywhere. The empty
    cloud has centroid 0.
    """
    G = X.group
    if cs is None:
        if isinstance(G, grp.TranslationGroup):
            cs = grp.trivial_quotient(G)
        else:
            cs = grp.translation_quotient(G)
    return GammaMap(X, cs, centroid, name='centroid')


def _table_map(X, cs, values, name):
    points = X.carrier.points()
    if len(values) != len(points):
        raise StructuralError('a gamma table needs one coset per point.')
    table = list(values)
    for c in table:
        cs.validate(c)
    gamma = GammaMap(X, cs, lambda x: table[X.carrier.index(x)], name=name)
    for g in X.group.elements():
        for i, x in enumerate(points):
            if not cs.equal(table[X.carrier.index(X._act(g, x))], cs.act(g, table[i])):
                raise InvariantViolationError('gamma table is not equivariant at g={g}, x={x}.'.format(g=g, x=x))
    return gamma


def table_gamma(X, cs, values):
    """
    An explicit gamma on a finite G-set: `values[i]` is the coset of the i-th point. Equivariance is verified
    exhaustively at construction.

    Raises
    ------
    InvariantViolationError
        if the table is not equivariant.
    """
    return _table_map(X, cs, values, 'table')


def orbit_gamma(X, cs):
    """
    The generic canonicalisation of a finite G-set.

    Every orbit is represented by its smallest point x0, which is sent to the smallest-index coset fixed by the
    stabiliser of x0; the rest of the orbit follows by equivariance, gamma(g.x0) = g.gamma(x0).

    Raises
    ------
    InvariantViolationError
        if the stabiliser of some x0 fixes no coset, in which case no equivariant gamma exists.
    """
    if not (X.is_finite and cs.is_finite):
        raise StructuralError('orbit_gamma needs a finite G-set and a finite coset space.')
    G = X.group
    points = X.carrier.points()
    elements = G.elements()
    values = [None] * len(points)
    for i, x0 in enumerate(points):
        if values[i] is not None:
            continue
        stabiliser = [g for g in elements if X.carrier.equal(X._act(g, x0), x0)]
        fixed = [c for c in cs.cosets if all(cs.equal(cs.act(g, c), c) for g in stabiliser)]
        if not fixed:
            raise InvariantViolationError('the stabiliser of {x} fixes no coset: no equivariant gamma exists.'
                                          .format(x=x0))
        c0 = fixed[0]
        for g in elements:
            j = X.carrier.index(X._act(g, x0))
            if values[j] is None:
                values[j] = cs.act(g, c0)
    logger.debug('orbit gamma on %s: %s', X, values)
    return _table_map(X, cs, values, 'orbit')


def pca_frame(x, tolerance=1e-6):
    """Principal-axes frame of a point cloud.

    Parameters
    ----------
    x : numpy.ndarray
        an (n, d) point cloud with n >= d.

    tolerance : float, optional
        relative threshold under which eigenvalue gaps and third moments count as ties.

    Returns
    -------
    tuple
        the orthogonal matrix R whose columns are the principal axes in descending order of variance, and a
        flag telling whether a tie-break was needed (degenerate spectrum or vanishing third moment).

    Notes
    -----
    The sign of each axis makes the sum of the cubed projections of the centred cloud positive, which commutes
    with rotations and permutations. When that sum vanishes the first nonzero coordinate of the axis is made
    positive instead, a rule that is not rotation-equivariant.
    """
    n, d = x.shape
    if n < d:
        raise ValueError('pca_frame needs at least as many points as dimensions.')
    pca = PCA(n_components=d, svd_solver='full').fit(x)
    axes = pca.components_
    projections = (x - pca.mean_) @ axes.T
    skew = np.sum(projections ** 3, axis=0)
    scale = np.sum(np.abs(projections) ** 3, axis=0)
    degenerate = False
    signs = np.ones(d)
    for j in range(d):
        if abs(skew[j]) > tolerance * max(scale[j], np.finfo(float).tiny):
            signs[j] = np.sign(skew[j])
        else:
            degenerate = True
            nonzero = np.flatnonzero(np.abs(axes[j]) > constants.EPS_NUM)
            signs[j] = np.sign(axes[j][nonzero[0]]) if len(nonzero) else 1.0
    variances = pca.explained_variance_
    top = max(variances[0], np.finfo(float).tiny)
    if d > 1 and np.any(np.abs(np.diff(variances)) < tolerance * top):
        degenerate = True
    return (axes * signs[:, None]).T, degenerate


def pca_gamma(X, cs=None, tolerance=1e-6):
    """
    gamma(x) = [principal-axes frame of x], for point clouds acted on by O(d) or O(d) x K with K permuting the
    points.

    Inputs whose frame needed a tie-break (see `pca_frame`) form the exclusion set.
    """
    G = X.group
    if cs is None:
        if isinstance(G, grp.OrthogonalGroup):
            cs = grp.trivial_quotient(G)
        elif isinstance(G, grp.ProductGroup) and isinstance(G.left, grp.OrthogonalGroup):
            cs = grp.left_factor_quotient(G)
        else:
            raise StructuralError('pca_gamma needs O(d) or O(d) x K, got {g}.'.format(g=G))
    return GammaMap(X, cs, lambda x: pca_frame(x, tolerance)[0], name='pca',
                    exclusion=lambda x: pca_frame(x, tolerance)[1])
