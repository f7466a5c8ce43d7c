import logging
import numpy as np
import pandas as pd
from ..utils import constants, utils
from ..utils.exceptions import StructuralError, InvariantViolationError, UnsupportedModeError

logger = logging.getLogger(__name__)


class FiniteTable:
    """FiniteTable.

    A row-stochastic |X| x |Y| matrix: row `i` is the distribution k(.|x_i) over the points of Y, in the order of
    `Carrier.points()`.

    Parameters
    ----------
    matrix : array-like
        the transition probabilities.

    check : bool, optional
        if True, raise `InvariantViolationError` unless every entry is non-negative and every row sums to one
        within `constants.EPS_PROB`. The default is `True`.
    """

    def __init__(self, matrix, check=True):
        matrix = np.array(matrix, dtype=float)
        if matrix.ndim != 2:
            raise StructuralError('a finite table must be a 2-d matrix.')
        matrix.setflags(write=False)
        self._matrix = matrix
        if check:
            self.validate()

    @property
    def matrix(self):
        return self._matrix

    @property
    def shape(self):
        return self._matrix.shape

    def row(self, i):
        return self._matrix[i]

    def validate(self):
        if not utils.all_finite(self._matrix):
            raise InvariantViolationError('table contains NaN or Inf.')
        if np.any(self._matrix < 0):
            raise InvariantViolationError('table has negative entries.')
        if self._matrix.shape[1] > 0:
            err = np.max(np.abs(self._matrix.sum(axis=1) - 1.0)) if self._matrix.shape[0] else 0.0
            if err > constants.EPS_PROB:
                raise InvariantViolationError('table is not row-stochastic (max |row sum - 1| = {e:.3g}).'
                                              .format(e=err))

    def compose(self, other):
        """The Chapman-Kolmogorov product: `self` first, then `other`."""
        return FiniteTable(self._matrix @ other.matrix, check=False)

    def to_frame(self):
        """The table as a pandas DataFrame indexed by input point, one column per output point."""
        n_x, n_y = self._matrix.shape
        return pd.DataFrame(self._matrix, index=pd.RangeIndex(n_x, name='x'), columns=[str(j) for j in range(n_y)])

    @classmethod
    def from_frame(cls, frame, check=True):
        return cls(frame.values, check=check)

    def __eq__(self, other):
        if not isinstance(other, FiniteTable):
            return NotImplemented
        return self.shape == other.shape and np.max(np.abs(self._matrix - other.matrix), initial=0.0) <= constants.EPS_PROB

    def __repr__(self):
        return 'FiniteTable({r}x{c})'.format(r=self.shape[0], c=self.shape[1])


class Distribution:
    """
    A probability distribution on a carrier, given by finitely many weighted atoms, by a sampler, or both.
    """

    def __init__(self, carrier, atoms=None, weights=None, sampler=None):
        if atoms is None and sampler is None:
            raise ValueError('a distribution needs atoms or a sampler.')
        self._carrier = carrier
        self._atoms = list(atoms) if atoms is not None else None
        self._weights = np.asarray(weights, dtype=float) if weights is not None else None
        self._sampler = sampler

    @property
    def carrier(self):
        return self._carrier

    @property
    def has_atoms(self):
        return self._atoms is not None

    @property
    def atoms(self):
        if not self.has_atoms:
            raise UnsupportedModeError('the distribution is only available through its sampler.')
        return self._atoms

    @property
    def weights(self):
        if not self.has_atoms:
            raise UnsupportedModeError('the distribution is only available through its sampler.')
        return self._weights

    def sample(self, random_state=None):
        rng = utils.check_random_state(random_state)
        if self._sampler is not None:
            return self._sampler(rng)
        return self._atoms[int(rng.choice(len(self._atoms), p=self._weights))]

    def sample_n(self, n, random_state=None):
        rng = utils.check_random_state(random_state)
        return [self.sample(rng) for _ in range(n)]

    def probabilities(self):
        """
        The probability vector over `carrier.points()` (finite carriers only).
        """
        p = np.zeros(self._carrier.size)
        for y, w in zip(self.atoms, self.weights):
            p[self._carrier.index(y)] += w
        return p

    def mean(self, embedding=None):
        """
        The expectation of the embedded outcomes (exact, from the atoms).
        """
        embed = embedding if embedding is not None else self._carrier.embed
        values = np.array([embed(y) for y in self.atoms], dtype=float)
        return self.weights @ values


class Kernel:
    """Markov kernel.

    A stochastic function k : X -> Y between G-sets, represented by any of

    * a sampler `(x, rng) -> y` drawing from k(dy|x);
    * an exact `FiniteTable` (finite carriers);
    * finitely many atoms `x -> (points, weights)` (finite support on any carrier).

    Missing representations are derived when possible: a table gives atoms, atoms give a sampler.

    Parameters
    ----------
    domain : GSet
        the input G-set X.

    codomain : GSet
        the output G-set Y.

    sampler : callable, optional
        the function (x, rng) -> y.

    table : FiniteTable or array-like, optional
        the exact |X| x |Y| table.

    atoms : callable, optional
        the function x -> (list of points, weights).

    name : str, optional
        a label used in reports.
    """

    def __init__(self, domain, codomain, sampler=None, table=None, atoms=None, name=None):
        if sampler is None and table is None and atoms is None:
            raise ValueError('a kernel needs a sampler, a table or atoms.')
        if table is not None:
            if not isinstance(table, FiniteTable):
                table = FiniteTable(table)
            if not (domain.carrier.is_finite and codomain.carrier.is_finite):
                raise StructuralError('exact tables need finite carriers.')
            if table.shape != (domain.carrier.size, codomain.carrier.size):
                raise StructuralError('table shape {s} does not match carriers of sizes ({x}, {y}).'
                                      .format(s=table.shape, x=domain.carrier.size, y=codomain.carrier.size))
        self._domain = domain
        self._codomain = codomain
        self._sampler = sampler
        self._table = table
        self._atoms = atoms
        self._name = name or 'kernel'

    @property
    def domain(self):
        return self._domain

    @property
    def codomain(self):
        return self._codomain

    @property
    def table(self):
        return self._table

    @property
    def name(self):
        return self._name

    @property
    def has_table(self):
        return self._table is not None

    @property
    def has_atoms(self):
        return self._table is not None or self._atoms is not None

    def atoms(self, x):
        """
        The finite support of k(.|x) as (points, weights).

        Raises
        ------
        UnsupportedModeError
            if the kernel is only available through its sampler.
        """
        if self._table is not None:
            row = self._table.row(self._domain.carrier.index(x))
            points = self._codomain.carrier.points()
            support = np.flatnonzero(row)
            return [points[j] for j in support], row[support]
        if self._atoms is not None:
            points, weights = self._atoms(x)
            return list(points), np.asarray(weights, dtype=float)
        raise UnsupportedModeError('kernel {n} has no exact representation.'.format(n=self._name))

    def sample(self, x, random_state=None):
        """Draw y ~ k(dy|x)."""
        rng = utils.check_random_state(random_state)
        if self._sampler is not None:
            return self._sampler(x, rng)
        points, weights = self.atoms(x)
        return points[int(rng.choice(len(points), p=weights))]

    def sample_n(self, x, n, random_state=None):
        rng = utils.check_random_state(random_state)
        return [self.sample(x, rng) for _ in range(n)]

    def distribution(self, x):
        """The distribution k(.|x)."""
        sampler = lambda rng: self.sample(x, rng)
        if self.has_atoms:
            points, weights = self.atoms(x)
            return Distribution(self._codomain.carrier, points, weights, sampler=sampler)
        return Distribution(self._codomain.carrier, sampler=sampler)

    def __call__(self, x):
        return self.distribution(x)

    def __repr__(self):
        return 'Kernel({n}: {x} -> {y})'.format(n=self._name, x=self._domain.carrier.to_dict(),
                                                 y=self._codomain.carrier.to_dict())


def kernel_from_table(X, Y, matrix, name=None):
    return Kernel(X, Y, table=FiniteTable(matrix), name=name)


def dirac(X):
    """
    The identity kernel id_X(dy|x) = delta_x(dy).

    Examples
    --------
    >>> k = dirac(natural_gset(SymmetricGroup(3)))
    >>> k.table.matrix
    array([[1., 0., 0.],
           [0., 1., 0.],
           [0., 0., 1.]])
    """
    table = np.eye(X.carrier.size) if X.carrier.is_finite else None
    return Kernel(X, X, sampler=lambda x, rng: x, table=table, atoms=lambda x: ([x], [1.0]), name='dirac')


def from_function(f, domain=None, codomain=None, name=None):
    """
    Regard a deterministic function as a Markov kernel.

    Parameters
    ----------
    f : EquivariantMap or callable
        the function. An `EquivariantMap` carries its own domain and codomain.

    domain, codomain : GSet, optional
        required when `f` is a plain callable.

    Returns
    -------
    Kernel
        the deterministic kernel x -> delta_f(x), with a 0/1 table when both carriers are finite.
    """
    if hasattr(f, 'domain') and hasattr(f, 'codomain'):
        domain = domain or f.domain
        codomain = codomain or f.codomain
        name = name or f.name
    if domain is None or codomain is None:
        raise StructuralError('from_function needs the domain and codomain of a plain function.')
    table = None
    if domain.carrier.is_finite and codomain.carrier.is_finite:
        table = np.zeros((domain.carrier.size, codomain.carrier.size))
        for i, x in enumerate(domain.carrier.points()):
            table[i, codomain.carrier.index(f(x))] = 1.0
    return Kernel(domain, codomain, sampler=lambda x, rng: f(x), table=table, atoms=lambda x: ([f(x)], [1.0]),
                  name=name or 'function')


def kernel_compose(m, k):
    """
    The Chapman-Kolmogorov composite m o k : X -> Z of k : X -> Y and m : Y -> Z.

    Sampling draws Y ~ k(dy|x), then Z ~ m(dz|Y). Exact tables multiply as row-stochastic matrices and finite
    supports combine atom by atom.

    Raises
    ------
    StructuralError
        if the carrier of `m.domain` differs from the carrier of `k.codomain`.
    """
    if m.domain.carrier != k.codomain.carrier:
        raise StructuralError('cannot compose {m} after {k}: carriers do not match.'.format(m=m, k=k))
    table = k.table.compose(m.table) if (k.has_table and m.has_table) else None
    atoms = None
    if k.has_atoms and m.has_atoms:
        def atoms(x):
            points, weights = [], []
            for y, wy in zip(*k.atoms(x)):
                for z, wz in zip(*m.atoms(y)):
                    points.append(z)
                    weights.append(wy * wz)
            return points, weights
    sampler = lambda x, rng: m.sample(k.sample(x, rng), rng)
    return Kernel(k.domain, m.codomain, sampler=sampler, table=table, atoms=atoms,
                  name='%s.%s' % (m.name, k.name))


def pushforward(g, k, x):
    """
    The distribution of g . Y when Y ~ k(dy|x).

    Atoms (and therefore exact table rows) are transported along the action; samplers are wrapped with
    `act(g, .)`. No density transport is attempted.
    """
    Y = k.codomain
    Y.group.validate(g)
    base = k.distribution(x)
    sampler = lambda rng: Y._act(g, base.sample(rng))
    if base.has_atoms:
        return Distribution(Y.carrier, [Y._act(g, y) for y in base.atoms], base.weights, sampler=sampler)
    return Distribution(Y.carrier, sampler=sampler)


def uniform_kernel(X, Y):
    """The constant kernel k(.|x) = uniform on the finite carrier of `Y`."""
    n_x, n_y = X.carrier.size if X.carrier.is_finite else None, Y.carrier.size
    points = Y.carrier.points()
    table = np.full((n_x, n_y), 1.0 / n_y) if n_x is not None else None
    return Kernel(X, Y, table=table, atoms=lambda x: (points, np.full(n_y, 1.0 / n_y)), name='uniform')


def random_kernel(X, Y, random_state=None, concentration=1.0):
    """A random exact kernel between finite G-sets, with Dirichlet(`concentration`) rows."""
    rng = utils.check_random_state(random_state)
    matrix = rng.dirichlet(np.full(Y.carrier.size, concentration), size=X.carrier.size)
    matrix = matrix / matrix.sum(axis=1, keepdims=True)
    return kernel_from_table(X, Y, matrix, name='random')


def gaussian_kernel(X, covariance=None, scale=1.0):
    """
    The additive noise kernel k(.|x) = x + N(0, covariance) on a real carrier (vectors or point clouds, the noise
    being drawn independently for every row of a point cloud).

    Parameters
    ----------
    X : GSet
        a G-set on a `RealVector` or `PointCloud` carrier.

    covariance : array-like, optional
        a d x d covariance matrix. The default is the isotropic `scale**2 * I`.

    scale : float, optional
        the isotropic standard deviation when `covariance` is None. The default is 1.0.
    """
    shape = X.carrier.sample(0).shape
    d = shape[-1] if len(shape) else 0
    if covariance is None:
        factor = scale * np.eye(d)
    else:
        factor = np.linalg.cholesky(np.asarray(covariance, dtype=float))

    def sampler(x, rng):
        z = rng.standard_normal(shape)
        return x + z @ factor.T

    return Kernel(X, X, sampler=sampler, name='gaussian')


def group_average(k):
    """
    The group average of an exact kernel, p(y|x) = 1/|G| sum_g p(g.y | g.x).

    The result always satisfies the density condition p(g.y|g.x) = p(y|x).
    """
    X, Y = k.domain, k.codomain
    if X.group != Y.group:
        raise StructuralError('domain and codomain are acted on by different groups.')
    if not (k.has_table and X.is_finite and Y.is_finite):
        raise UnsupportedModeError('group_average needs an exact table over a finite group.')
    xs, ys = X.carrier.points(), Y.carrier.points()
    elements = X.group.elements()
    matrix = np.zeros(k.table.shape)
    for g in elements:
        gx = [X.carrier.index(X._act(g, x)) for x in xs]
        gy = [Y.carrier.index(Y._act(g, y)) for y in ys]
        matrix += k.table.matrix[np.ix_(gx, gy)]
    matrix /= len(elements)
    return kernel_from_table(X, Y, matrix, name='avg(%s)' % k.name)
