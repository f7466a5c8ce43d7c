import logging
import numpy as np
from ..core import groups as grp
from ..core.actions import coset_gset, GSet, RealVector, PointCloud
from ..core.kernels import Kernel, FiniteTable, from_function
from ..measures.equivariance import check_kernel_equivariance
from ..utils import constants, utils
from ..utils.exceptions import (StructuralError, IllTypedInputError, UnsupportedGroupError, UnsupportedModeError,
                                NonlinearActionError)
from .deterministic import EquivariantMap, GammaMap, _resolve_gsets

logger = logging.getLogger(__name__)


class GammaKernel(Kernel):
    """GammaKernel.

    A G-equivariant Markov kernel gamma : X -> G/H, gamma(dc | g.x) = g.gamma(dc | x).

    Parameters
    ----------
    domain : GSet
        the G-set X.

    cs : CosetSpace
        the coset space G/H.

    sampler, table, atoms, name
        as for `Kernel`.
    """

    def __init__(self, domain, cs, sampler=None, table=None, atoms=None, name=None):
        super().__init__(domain, coset_gset(cs), sampler=sampler, table=table, atoms=atoms, name=name or 'gamma')
        self._cs = cs

    @property
    def coset_space(self):
        return self._cs


def lift_gamma(gamma):
    """A deterministic `GammaMap` as a point-mass `GammaKernel`."""
    k = from_function(gamma)
    return GammaKernel(gamma.domain, gamma.coset_space, sampler=lambda x, rng: gamma(x), table=k.table,
                       atoms=lambda x: ([gamma(x)], [1.0]), name=gamma.name)


def haar_gamma(G, X, cs=None):
    """
    The Haar gamma kernel: ignore x and draw the coset of a Haar-distributed element of G.

    With the trivial quotient (the default) this draws G itself; with a coset space G/H it is the pushforward of
    Haar measure through [.]. Left invariance of Haar measure makes the kernel equivariant.

    Parameters
    ----------
    G : Group
        a finite or compact group.

    X : GSet
        a G-set.

    cs : CosetSpace, optional
        the coset space G/H. The default is G/{e}.

    Returns
    -------
    GammaKernel
        with an exact uniform table when X and G/H are finite.

    Raises
    ------
    UnsupportedGroupError
        if G is not compact.
    """
    if X.group != G:
        raise StructuralError('{x} is not acted on by {g}.'.format(x=X, g=G))
    if not G.is_compact:
        raise UnsupportedGroupError('{g} is not compact: there is no Haar gamma.'.format(g=G))
    if cs is None:
        cs = grp.trivial_quotient(G)

    if isinstance(cs, grp.LeftFactorQuotient):
        sampler = lambda x, rng: G.left.haar_sample(rng)
    elif isinstance(cs, grp.TrivialQuotient):
        sampler = lambda x, rng: G.haar_sample(rng)
    else:
        sampler = lambda x, rng: cs.coset_of(G.haar_sample(rng))

    table, atoms = None, None
    if cs.is_finite:
        cosets = cs.cosets
        weights = np.full(len(cosets), 1.0 / len(cosets))
        atoms = lambda x: (cosets, weights)
        if X.carrier.is_finite:
            table = np.full((X.carrier.size, len(cosets)), 1.0 / len(cosets))
    return GammaKernel(X, cs, sampler=sampler, table=table, atoms=atoms, name='haar')


def _as_gamma_kernel(gamma):
    if isinstance(gamma, GammaKernel):
        return gamma
    if isinstance(gamma, GammaMap):
        return lift_gamma(gamma)
    raise StructuralError('expected a GammaMap or a GammaKernel, got {g}.'.format(g=gamma))


def _as_kernel(k):
    if isinstance(k, Kernel):
        return k
    if isinstance(k, EquivariantMap):
        return from_function(k)
    raise StructuralError('expected a Kernel or an EquivariantMap, got {k}.'.format(k=k))


def spot_check_kernel(k, check=True, random_state=None):
    """
    Fail fast when the kernel `k` is not equivariant for the group it is typed over.

    Raises
    ------
    IllTypedInputError
        if the audit fails.
    """
    if not check:
        logger.warning('equivariance spot-check of %s disabled.', k.name)
        return None
    H = k.domain.group
    if H.is_finite and H.order == 1:
        return None
    report = check_kernel_equivariance(k, random_state=random_state, name='spot-check(%s)' % k.name)
    if not report.passed:
        raise IllTypedInputError('{k} is not equivariant for {h} ({m} audit, max violation {v:.3g}).'
                                 .format(k=k.name, h=H, m=report.mode, v=report.max_violation))
    return report


def stochastic_symmetrize(k, gamma, cs=None, domain=None, codomain=None, check=True, random_state=None):
    """Stochastic symmetrisation.

    Turn an H-equivariant kernel k : R X -> R Y into a G-equivariant kernel by the sampling procedure

        C ~ gamma(dc | x),  G = s(C),  Y ~ k(dy | G^-1 . x),  return G . Y.

    When gamma and k have exact tables over finite G-sets, the table of the result is computed by summing over
    cosets, sym(k)(y | x) = sum_c gamma(c | x) k(s(c)^-1 . y | s(c)^-1 . x). When both have finite supports
    the support of the result is enumerated the same way.

    Parameters
    ----------
    k : Kernel or EquivariantMap
        an H-equivariant kernel; a deterministic map is regarded as a point-mass kernel.

    gamma : GammaKernel or GammaMap
        a G-equivariant kernel into G/H; a deterministic gamma is lifted to a point-mass kernel.

    cs : CosetSpace, optional
        the coset space; the default is the coset space of `gamma`.

    domain, codomain : GSet, optional
        the G-sets X and Y, recovered from the restricted G-sets of `k` by default.

    check : bool, optional
        spot-check the H-equivariance of `k`. The default is `True`.

    Returns
    -------
    Kernel
        the G-equivariant kernel sym(k).

    Examples
    --------
    >>> G = CyclicGroup(2)
    >>> X = natural_gset(G)
    >>> cs = trivial_quotient(G)
    >>> k = kernel_from_table(restrict(cs.inclusion, X), restrict(cs.inclusion, X), [[1.0, 0.0], [1.0, 0.0]])
    >>> stochastic_symmetrize(k, haar_gamma(G, X, cs)).table.matrix
    array([[0.5, 0.5],
           [0.5, 0.5]])
    """
    k = _as_kernel(k)
    gamma = _as_gamma_kernel(gamma)
    if cs is None:
        cs = gamma.coset_space
    elif gamma.coset_space.group != cs.group:
        raise StructuralError('gamma lands in a coset space of another group.')
    X, Y = _resolve_gsets(k, cs, domain, codomain)
    if gamma.domain.carrier != X.carrier:
        raise StructuralError('{g} is not defined on the carrier of {x}.'.format(g=gamma, x=X))
    spot_check_kernel(k, check, random_state)
    G = cs.group

    def sampler(x, rng):
        s = cs.section(gamma.sample(x, rng))
        return Y._act(s, k.sample(X._act(G._inverse(s), x), rng))

    table = None
    if gamma.has_atoms and k.has_table and X.is_finite and Y.is_finite:
        xs = X.carrier.points()
        ys = Y.carrier.points()
        matrix = np.zeros((len(xs), len(ys)))
        for i, x in enumerate(xs):
            for c, w in zip(*gamma.atoms(x)):
                s = cs.section(c)
                row = k.table.row(X.carrier.index(X._act(G._inverse(s), x)))
                moved = [Y.carrier.index(Y._act(s, y)) for y in ys]
                matrix[i, moved] += w * row
        table = FiniteTable(matrix)

    atoms = None
    if gamma.has_atoms and k.has_atoms:
        def atoms(x):
            points, weights = [], []
            for c, w in zip(*gamma.atoms(x)):
                s = cs.section(c)
                for y, v in zip(*k.atoms(X._act(G._inverse(s), x))):
                    points.append(Y._act(s, y))
                    weights.append(w * v)
            return points, weights

    return Kernel(X, Y, sampler=sampler, table=table, atoms=atoms, name='sym(%s)' % k.name)


def permutation_gset(Y):
    """
    The linear G-set R^|Y| on which G permutes the one-hot embeddings of the points of a finite G-set `Y`.
    """
    points = Y.carrier.points()

    def action(g, v):
        out = np.zeros_like(v)
        out[[Y.carrier.index(Y._act(g, y)) for y in points]] = v
        return out

    return GSet(Y.group, RealVector(len(points)), action, linear=True, name='perm(%s)' % Y.name)


def embedded_gset(Y, embedding):
    """
    The G-set of the convex hull of embedded points of a finite G-set `Y`, with `embedding` an (|Y|, k) array
    (or |Y| values) whose rows are affinely independent.

    The action moves a convex combination sum_y p_y e(y) to sum_y p_y e(g.y); it is affine, which is all the
    averaging operator needs.

    Raises
    ------
    UnsupportedModeError
        if the embedded points are not affinely independent.
    """
    E = np.asarray(embedding, dtype=float).reshape(Y.carrier.size, -1)
    if not _affinely_independent(E):
        raise UnsupportedModeError('the embedded points are not affinely independent.')
    affine = np.hstack([E, np.ones((len(E), 1))])
    perm = permutation_gset(Y)

    def action(g, v):
        weights = np.linalg.lstsq(affine.T, np.r_[v, 1.0], rcond=None)[0]
        return perm._act(g, weights) @ E

    return GSet(Y.group, RealVector(E.shape[1]), action, linear=True, name='embedded(%s)' % Y.name)


def _affinely_independent(E):
    return np.linalg.matrix_rank(np.hstack([E, np.ones((len(E), 1))])) == len(E)


def _value_gset(Y, E):
    """Real values of an embedding with no induced action: the G-set exists only to type the averaged map."""

    def action(g, v):
        raise NonlinearActionError('the embedding of {y} is not affinely independent; the group does not act on '
                                   'its averages.'.format(y=Y.name))

    return GSet(Y.group, RealVector(E.shape[1]), action, name='values(%s)' % Y.name)


def _averaging_codomain(Y, embedding):
    if isinstance(Y.carrier, (RealVector, PointCloud)):
        if embedding is not None:
            raise ValueError('real codomains are averaged as they are; no embedding is needed.')
        return Y, lambda y: np.asarray(y, dtype=float)
    if Y.carrier.is_finite:
        if embedding is None:
            return permutation_gset(Y), Y.carrier.embed
        E = np.asarray(embedding, dtype=float).reshape(Y.carrier.size, -1)
        codomain = embedded_gset(Y, E) if _affinely_independent(E) else _value_gset(Y, E)
        return codomain, lambda y: E[Y.carrier.index(y)]
    raise UnsupportedModeError('cannot average over {c}: it has no numeric embedding.'.format(c=Y.carrier))


def average(m, mode=constants.EXACT, n_samples=None, random_state=None, embedding=None):
    """Averaging operator.

    Collapse a kernel to the deterministic map ave(m)(x) = E[Y], Y ~ m(dy | x).

    Parameters
    ----------
    m : Kernel
        a kernel into a real carrier, or into a finite carrier (points embedded one-hot, or by `embedding`).

    mode : str, optional
        "exact" (weighted sum over a table row or a finite support) or "monte-carlo" (mean of `n_samples`
        draws). The default is "exact".

    n_samples : int, optional
        the number of draws in Monte Carlo mode.

    random_state : int or None, optional
        in Monte Carlo mode, every evaluation draws from a generator seeded with `random_state`, so that the
        returned map is a deterministic function of x.

    embedding : array-like, optional
        for finite codomains, one row of coordinates per point. The default is the one-hot embedding. When the
        rows are not affinely independent the averaged values carry no group action.

    Returns
    -------
    EquivariantMap
        the averaged map, from the domain of `m` to the embedded codomain.

    Raises
    ------
    UnsupportedModeError
        if exact mode is requested on a sampler-only kernel, or the codomain cannot be embedded.

    Examples
    --------
    >>> X = sign_gset()
    >>> m = Kernel(X, X, atoms=lambda x: ([x - 1, x + 1], [0.5, 0.5]))
    >>> average(m)(np.array([0.3]))
    array([0.3])
    """
    codomain, embed = _averaging_codomain(m.codomain, embedding)
    if mode == constants.EXACT:
        if not m.has_atoms:
            raise UnsupportedModeError('exact averaging needs a table or a finite support; use monte-carlo.')

        def fn(x):
            points, weights = m.atoms(x)
            return sum(w * embed(y) for y, w in zip(points, weights))
    elif mode == constants.MONTE_CARLO:
        if n_samples is None or n_samples < 1:
            raise ValueError('monte-carlo averaging needs n_samples >= 1.')

        def fn(x):
            rng = utils.check_random_state(random_state)
            return np.mean([embed(m.sample(x, rng)) for _ in range(n_samples)], axis=0)
    else:
        raise ValueError('unknown averaging mode: {m}'.format(m=mode))
    return EquivariantMap(m.domain, codomain, fn, name='ave(%s)' % m.name)


def average_symmetrized(k, gamma, cs=None, mode=constants.EXACT, n_samples=None, random_state=None,
                        embedding=None, check=True):
    """
    ave(sym(k)): the average of the stochastic symmetrisation of `k`, G-equivariant when G acts linearly (or
    affinely, for embedded finite codomains) on the codomain.

    Raises
    ------
    NonlinearActionError
        if the codomain G-set is real and not declared linear.
    UnsupportedModeError
        if a finite codomain is embedded by points that are not affinely independent.
    """
    sym = stochastic_symmetrize(k, gamma, cs=cs, check=check, random_state=random_state)
    Y = sym.codomain
    if not Y.carrier.is_finite and not Y.linear:
        raise NonlinearActionError('{y} is not declared linear: the average of sym(k) need not be equivariant.'
                                   .format(y=Y))
    if Y.carrier.is_finite and embedding is not None:
        embedded_gset(Y, embedding)
    return average(sym, mode=mode, n_samples=n_samples, random_state=random_state, embedding=embedding)
