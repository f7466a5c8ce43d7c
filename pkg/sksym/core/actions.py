from abc import ABC, abstractmethod
import itertools
import logging
import numpy as np
from ..utils import constants, utils
from ..utils.exceptions import StructuralError, InvariantViolationError, UnsupportedModeError
from . import groups as grp

logger = logging.getLogger(__name__)


class Carrier(ABC):
    """Carrier.

    The underlying set of a G-set. Finite sets have the integers 0..n-1 as points; real carriers have numpy
    arrays as points, which must be finite (no NaN or Inf).
    """

    kind = None

    @property
    @abstractmethod
    def is_finite(self):
        pass

    @abstractmethod
    def validate(self, x):
        pass

    @abstractmethod
    def sample(self, random_state=None):
        """Draw a test point (uniform on finite carriers, standard Gaussian on real ones)."""
        pass

    @abstractmethod
    def embed(self, x):
        """Flatten the point `x` into a 1-d float vector."""
        pass

    @abstractmethod
    def to_dict(self):
        pass

    def contains(self, x):
        try:
            self.validate(x)
        except (StructuralError, InvariantViolationError):
            return False
        return True

    def points(self):
        raise UnsupportedModeError('{c} is not finite.'.format(c=self))

    def index(self, x):
        raise UnsupportedModeError('{c} is not finite.'.format(c=self))

    @property
    def size(self):
        return len(self.points())

    def equal(self, a, b):
        return self.distance(a, b) <= constants.EPS_NUM

    def distance(self, a, b):
        return utils.max_abs_diff(self.embed(a), self.embed(b))

    def __eq__(self, other):
        if not isinstance(other, Carrier):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    def __repr__(self):
        return 'Carrier({d})'.format(d=self.to_dict())


class FiniteSet(Carrier):
    kind = constants.FINITE_SET

    def __init__(self, n):
        if n < 0:
            raise ValueError('n must be non-negative.')
        self._n = int(n)

    @property
    def n(self):
        return self._n

    @property
    def is_finite(self):
        return True

    def validate(self, x):
        grp._check_integer(x, self._n, self)

    def points(self):
        return list(range(self._n))

    def index(self, x):
        self.validate(x)
        return int(x)

    def equal(self, a, b):
        return int(a) == int(b)

    def distance(self, a, b):
        return 0.0 if int(a) == int(b) else 1.0

    def sample(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return int(rng.integers(self._n))

    def embed(self, x):
        v = np.zeros(self._n)
        v[int(x)] = 1.0
        return v

    def to_dict(self):
        return {'kind': self.kind, 'n': self._n}


class RealVector(Carrier):
    kind = constants.REAL_VECTOR

    def __init__(self, d):
        if d < 0:
            raise ValueError('d must be non-negative.')
        self._d = int(d)

    @property
    def d(self):
        return self._d

    @property
    def is_finite(self):
        return False

    def validate(self, x):
        if not isinstance(x, np.ndarray) or x.shape != (self._d,):
            raise StructuralError('expected a vector of shape ({d},), got {x!r}.'.format(d=self._d, x=x))
        if not utils.all_finite(x):
            raise InvariantViolationError('point contains NaN or Inf.')

    def sample(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return rng.standard_normal(self._d)

    def embed(self, x):
        return np.asarray(x, dtype=float).ravel()

    def to_dict(self):
        return {'kind': self.kind, 'd': self._d}


class PointCloud(Carrier):
    """n points in R^d, stored as an (n, d) array with one row per point."""

    kind = constants.POINT_CLOUD

    def __init__(self, n, d):
        if n < 0 or d < 0:
            raise ValueError('n and d must be non-negative.')
        self._n = int(n)
        self._d = int(d)

    @property
    def n(self):
        return self._n

    @property
    def d(self):
        return self._d

    @property
    def is_finite(self):
        return False

    def validate(self, x):
        if not isinstance(x, np.ndarray) or x.shape != (self._n, self._d):
            raise StructuralError('expected a point cloud of shape ({n}, {d}).'.format(n=self._n, d=self._d))
        if not utils.all_finite(x):
            raise InvariantViolationError('point cloud contains NaN or Inf.')

    def sample(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return rng.standard_normal((self._n, self._d))

    def embed(self, x):
        return np.asarray(x, dtype=float).ravel()

    def to_dict(self):
        return {'kind': self.kind, 'n': self._n, 'd': self._d}


class PairCarrier(Carrier):
    kind = constants.PAIR

    def __init__(self, left, right):
        self._left = left
        self._right = right

    @property
    def left(self):
        return self._left

    @property
    def right(self):
        return self._right

    @property
    def is_finite(self):
        return self._left.is_finite and self._right.is_finite

    def validate(self, x):
        if not isinstance(x, tuple) or len(x) != 2:
            raise StructuralError('expected a pair point, got {x!r}.'.format(x=x))
        self._left.validate(x[0])
        self._right.validate(x[1])

    def points(self):
        if not self.is_finite:
            return super().points()
        return list(itertools.product(self._left.points(), self._right.points()))

    def index(self, x):
        self.validate(x)
        return self._left.index(x[0]) * self._right.size + self._right.index(x[1])

    def equal(self, a, b):
        return self._left.equal(a[0], b[0]) and self._right.equal(a[1], b[1])

    def distance(self, a, b):
        return max(self._left.distance(a[0], b[0]), self._right.distance(a[1], b[1]))

    def sample(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return (self._left.sample(rng), self._right.sample(rng))

    def embed(self, x):
        return np.concatenate([self._left.embed(x[0]), self._right.embed(x[1])])

    def to_dict(self):
        return {'kind': self.kind, 'left': self._left.to_dict(), 'right': self._right.to_dict()}


class CosetCarrier(Carrier):
    """The points of a continuous (symbolic) coset space."""

    kind = 'cosets'

    def __init__(self, cs):
        self._cs = cs

    @property
    def coset_space(self):
        return self._cs

    @property
    def is_finite(self):
        return False

    def validate(self, x):
        self._cs.validate(x)

    def equal(self, a, b):
        return self._cs.equal(a, b)

    def distance(self, a, b):
        return self._cs.distance(a, b)

    def sample(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return self._cs.coset_of(self._cs.group.random_element(rng))

    def embed(self, x):
        return _flatten(x)

    def to_dict(self):
        return {'kind': self.kind, 'space': self._cs.to_dict()}


def _flatten(payload):
    if isinstance(payload, tuple):
        return np.concatenate([_flatten(p) for p in payload])
    return np.asarray(payload, dtype=float).ravel()


def carrier_from_dict(description):
    kind = description.get('kind')
    try:
        if kind == constants.FINITE_SET:
            return FiniteSet(description['n'])
        if kind == constants.REAL_VECTOR:
            return RealVector(description['d'])
        if kind == constants.POINT_CLOUD:
            return PointCloud(description['n'], description['d'])
        if kind == constants.PAIR:
            return PairCarrier(carrier_from_dict(description['left']), carrier_from_dict(description['right']))
    except KeyError as e:
        raise ValueError('missing parameter {p} for carrier kind {k}.'.format(p=e, k=kind))
    raise ValueError('unknown carrier kind: {k}'.format(k=kind))


class GSet:
    """G-set.

    A carrier equipped with an action of a group. Points are passed and returned by value and the action is a
    pure function `action(g, x)`.

    Parameters
    ----------
    group : Group
        the acting group.

    carrier : Carrier
        the underlying set.

    action : callable
        the function (g, x) -> g . x.

    linear : bool, optional
        whether the group acts linearly on a real carrier (permutations, orthogonal matrices, sign flips). The
        averaging operator only guarantees equivariance on linear codomains. The default is `False`.

    name : str, optional
        a label used in reports.

    Attributes
    ----------
    parent : GSet or None
        for a restricted G-set R_phi X, the G-set X.

    phi : Homomorphism or None
        for a restricted G-set R_phi X, the homomorphism phi.

    factors : tuple or None
        for a product X (x) Y, the pair (X, Y).

    coset_space : CosetSpace or None
        for the G-set G/H, its coset space.
    """

    def __init__(self, group, carrier, action, linear=False, name=None, parent=None, phi=None, factors=None,
                 coset_space=None):
        self._group = group
        self._carrier = carrier
        self._action = action
        self._linear = linear
        self._name = name or 'gset'
        self._parent = parent
        self._phi = phi
        self._factors = factors
        self._coset_space = coset_space

    @property
    def group(self):
        return self._group

    @property
    def carrier(self):
        return self._carrier

    @property
    def linear(self):
        return self._linear

    @property
    def name(self):
        return self._name

    @property
    def parent(self):
        return self._parent

    @property
    def phi(self):
        return self._phi

    @property
    def factors(self):
        return self._factors

    @property
    def coset_space(self):
        return self._coset_space

    @property
    def is_finite(self):
        return self._group.is_finite and self._carrier.is_finite

    def act(self, g, x):
        self._group.validate(g)
        self._carrier.validate(x)
        return self._action(g, x)

    def _act(self, g, x):
        return self._action(g, x)

    def __repr__(self):
        return 'GSet({name}: {g} on {c})'.format(name=self._name, g=self._group, c=self._carrier.to_dict())


def act(X, g, x):
    """Return g . x in the G-set `X`."""
    return X.act(g, x)


def product(X, Y):
    """
    The product X (x) Y with the diagonal action g . (x, y) = (g . x, g . y).

    Raises
    ------
    StructuralError
        if `X` and `Y` are acted on by different groups.
    """
    if X.group != Y.group:
        raise StructuralError('cannot take the product of G-sets over {a} and {b}.'.format(a=X.group, b=Y.group))
    return GSet(X.group, PairCarrier(X.carrier, Y.carrier), lambda g, xy: (X._act(g, xy[0]), Y._act(g, xy[1])),
                linear=X.linear and Y.linear, name='%s*%s' % (X.name, Y.name), factors=(X, Y))


def external_product(X, Y):
    """
    The (X.group x Y.group)-set on the pair carrier with (k, h) . (x, y) = (k . x, h . y).
    """
    G = grp.ProductGroup(X.group, Y.group)
    return GSet(G, PairCarrier(X.carrier, Y.carrier), lambda g, xy: (X._act(g[0], xy[0]), Y._act(g[1], xy[1])),
                linear=X.linear and Y.linear, name='%sx%s' % (X.name, Y.name))


def restrict(phi, X):
    """
    The H-set R_phi X on the carrier of `X`, with action h . x = phi(h) . x.

    Raises
    ------
    StructuralError
        if `phi` does not land in the group of `X`.
    """
    if phi.target != X.group:
        raise StructuralError('{phi} does not land in {g}.'.format(phi=phi, g=X.group))
    return GSet(phi.source, X.carrier, lambda h, x: X._act(phi(h), x), linear=X.linear,
                name='R(%s)' % X.name, parent=X, phi=phi)


def trivial_gset(G, carrier):
    """The G-set where every element acts as the identity."""
    return GSet(G, carrier, lambda g, x: x, linear=True, name='trivial')


def coset_gset(cs):
    """
    The G-set G/H with g . [g'] = [g g']. Enumerated coset spaces give a `FiniteSet` carrier.
    """
    if cs.is_finite:
        carrier = FiniteSet(len(cs.cosets))
    else:
        carrier = CosetCarrier(cs)
    return GSet(cs.group, carrier, cs.act, linear=False, name='G/H', coset_space=cs)


def natural_gset(G):
    """
    The natural action on the vertices {0..n-1}: permutations for S_n, rotations and reflections of the n-gon
    for D_n, shifts for C_n.
    """
    if isinstance(G, grp.SymmetricGroup):
        action = lambda g, i: int(g[i])
    elif isinstance(G, grp.DihedralGroup):
        def action(g, i):
            r, f = G.split(g)
            return (r + (-i if f else i)) % G.n
    elif isinstance(G, grp.CyclicGroup):
        action = lambda g, i: (int(g) + int(i)) % G.n
    else:
        raise StructuralError('no natural finite action for {g}.'.format(g=G))
    return GSet(G, FiniteSet(G.n), action, name='natural')


def regular_gset(G):
    """Left multiplication of a finite group on the indices of its elements."""
    elements = G.elements()
    return GSet(G, FiniteSet(len(elements)), lambda g, i: G.index(G._compose(g, elements[i])), name='regular')


def sign_gset(d=1):
    """C_2 acting on R^d, the generator by negation."""
    return GSet(grp.CyclicGroup(2), RealVector(d), lambda g, x: -x if g == 1 else x, linear=True, name='sign')


def matrix_gset(G):
    """O(d) or SO(d) acting on R^d by matrix multiplication."""
    return GSet(G, RealVector(G.d), lambda q, x: q @ x, linear=True, name='matrix')


def translation_gset(d):
    return GSet(grp.TranslationGroup(d), RealVector(d), lambda t, x: x + t, name='translation')


def euclidean_gset(d):
    """E(d) acting on R^d by (Q, t) . x = Qx + t."""
    return GSet(grp.EuclideanGroup(d), RealVector(d), lambda g, x: g[0] @ x + g[1], name='euclidean')


def _cloud_action(G):
    if isinstance(G, grp.SymmetricGroup):
        def permute(p, x):
            out = np.empty_like(x)
            out[list(p)] = x
            return out
        return permute, True
    if isinstance(G, (grp.OrthogonalGroup, grp.SpecialOrthogonalGroup)):
        return (lambda q, x: x @ q.T), True
    if isinstance(G, grp.TranslationGroup):
        return (lambda t, x: x + t), False
    if isinstance(G, grp.EuclideanGroup):
        return (lambda g, x: x @ g[0].T + g[1]), False
    if isinstance(G, grp.ProductGroup):
        left, left_linear = _cloud_action(G.left)
        right, right_linear = _cloud_action(G.right)
        return (lambda g, x: left(g[0], right(g[1], x))), left_linear and right_linear
    if isinstance(G, grp.FiniteSubgroup):
        return _cloud_action(G.parent)
    raise StructuralError('no point-cloud action for {g}.'.format(g=G))


def point_cloud_gset(G, n, d):
    """
    A group acting on clouds of `n` points in R^`d`.

    Permutations act on rows (row i moves to row p[i]), orthogonal and Euclidean elements act on the coordinates
    of every row, and product groups act diagonally. The action is linear unless translations are involved.

    Examples
    --------
    >>> X = point_cloud_gset(SymmetricGroup(3), 3, 2)
    >>> X.act((1, 2, 0), np.arange(6.0).reshape(3, 2))
    array([[4., 5.],
           [0., 1.],
           [2., 3.]])
    """
    action, linear = _cloud_action(G)
    return GSet(G, PointCloud(n, d), action, linear=linear, name='point-cloud')


def check_action_axioms(X, random_state=None, n_samples=constants.DEFAULT_N_SAMPLES, tolerance=constants.EPS_NUM):
    """
    Check e . x = x and (g1 g2) . x = g1 . (g2 . x): exhaustively on finite G-sets, on `n_samples` random
    triples otherwise.
    """
    G, C = X.group, X.carrier
    e = G.identity()
    if X.is_finite:
        triples = itertools.product(G.elements(), G.elements(), C.points())
    else:
        rng = utils.check_random_state(random_state)
        triples = [(G.random_element(rng), G.random_element(rng), C.sample(rng)) for _ in range(n_samples)]
    checked = set()
    for g1, g2, x in triples:
        if X.is_finite and C.index(x) not in checked:
            checked.add(C.index(x))
            if not C.equal(X.act(e, x), x):
                return False
        elif not X.is_finite and C.distance(X.act(e, x), x) > tolerance:
            return False
        lhs = X.act(G.compose(g1, g2), x)
        rhs = X.act(g1, X.act(g2, x))
        if C.distance(lhs, rhs) > (0.0 if X.is_finite else tolerance):
            return False
    return True


def gset_from_dict(description, group=None):
    """
    Build a G-set from a description such as `{"kind": "sign", "d": 1}` or
    `{"kind": "point-cloud", "group": {...}, "n": 5, "d": 3}`.
    """
    kind = description.get('kind')
    if group is None and 'group' in description:
        group = grp.group_from_dict(description['group'])
    if kind == 'sign':
        return sign_gset(description.get('d', 1))
    if kind == 'translation':
        return translation_gset(description['d'])
    if kind == 'euclidean':
        return euclidean_gset(description['d'])
    if group is None:
        raise ValueError('G-set kind {k} needs a group.'.format(k=kind))
    if kind == 'natural':
        return natural_gset(group)
    if kind == 'regular':
        return regular_gset(group)
    if kind == 'matrix':
        return matrix_gset(group)
    if kind == constants.POINT_CLOUD:
        return point_cloud_gset(group, description['n'], description['d'])
    if kind == constants.TRIVIAL:
        return trivial_gset(group, carrier_from_dict(description['carrier']))
    raise ValueError('unknown G-set kind: {k}'.format(k=kind))
