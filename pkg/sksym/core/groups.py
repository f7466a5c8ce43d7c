from abc import ABC, abstractmethod
import itertools
import json
import logging
import numbers
import numpy as np
from scipy import stats
from scipy.spatial.transform import Rotation
from ..utils import constants, utils
from ..utils.exceptions import (StructuralError, InvariantViolationError, UnsupportedGroupError,
                                InvalidInclusionError)

logger = logging.getLogger(__name__)


class Group(ABC):
    """Group.

    Abstract descriptor of a group. Elements are plain payloads (integers, tuples, numpy arrays or pairs of
    payloads) and all the arithmetic goes through the descriptor, so that the same payload can be read in
    different groups (e.g. an integer in `CyclicGroup(4)` or in `DihedralGroup(4)`).

    Descriptors are immutable; two descriptors are equal when their `to_dict` descriptions are equal.
    """

    kind = None

    @property
    @abstractmethod
    def is_finite(self):
        pass

    @property
    def is_compact(self):
        return self.is_finite

    @property
    def order(self):
        """
        The number of elements of the group, or the string "infinite".
        """
        if self.is_finite:
            return len(self.elements())
        return 'infinite'

    @abstractmethod
    def identity(self):
        pass

    @abstractmethod
    def _compose(self, a, b):
        pass

    @abstractmethod
    def _inverse(self, a):
        pass

    @abstractmethod
    def validate(self, a):
        """
        Raise `StructuralError` if `a` is not a payload of this group, `InvariantViolationError` if it is
        of the right kind but breaks an invariant (e.g. a non-orthogonal matrix).
        """
        pass

    @abstractmethod
    def to_dict(self):
        pass

    def compose(self, a, b):
        self.validate(a)
        self.validate(b)
        return self._compose(a, b)

    def inverse(self, a):
        self.validate(a)
        return self._inverse(a)

    def contains(self, a):
        try:
            self.validate(a)
        except (StructuralError, InvariantViolationError):
            return False
        return True

    def equal(self, a, b):
        return self.key(a) == self.key(b)

    def distance(self, a, b):
        """
        Sup-norm distance between two payloads (0 or 1 for discrete payloads).
        """
        return 0.0 if self.equal(a, b) else 1.0

    def key(self, a):
        """
        A hashable canonical form of the payload `a`.
        """
        return a

    def elements(self):
        raise UnsupportedGroupError('{g} is not finite and cannot be enumerated.'.format(g=self))

    def index(self, a):
        raise UnsupportedGroupError('{g} is not finite and has no element table.'.format(g=self))

    def haar_sample(self, random_state=None):
        raise UnsupportedGroupError('{g} is not compact: there is no Haar probability measure.'.format(g=self))

    def random_element(self, random_state=None):
        """
        Draw an element from the test distribution of the group: the Haar measure for compact groups, a
        standard Gaussian law on the translation part for noncompact ones. Only meant for sampled audits.
        """
        return self.haar_sample(random_state)

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return _canonical(self.to_dict()) == _canonical(other.to_dict())

    def __hash__(self):
        return hash(_canonical(self.to_dict()))

    def __repr__(self):
        params = {k: v for k, v in self.to_dict().items() if k != 'kind'}
        return '{kind}({params})'.format(kind=self.kind, params=', '.join('%s=%s' % kv for kv in params.items()))


def _canonical(description):
    return json.dumps(utils.to_jsonable(description), sort_keys=True)


class FiniteGroup(Group):
    """
    A group with an enumerated element table. The identity is always the element of index 0.
    """

    _elements = None
    _index = None

    @property
    def is_finite(self):
        return True

    @abstractmethod
    def _enumerate(self):
        pass

    def elements(self):
        if self._elements is None:
            self._elements = list(self._enumerate())
            self._index = {self.key(a): i for i, a in enumerate(self._elements)}
        return self._elements

    def index(self, a):
        self.validate(a)
        self.elements()
        try:
            return self._index[self.key(a)]
        except KeyError:
            raise StructuralError('{a} is not an element of {g}.'.format(a=a, g=self))

    def haar_sample(self, random_state=None):
        rng = utils.check_random_state(random_state)
        elements = self.elements()
        return elements[int(rng.integers(len(elements)))]


def _check_integer(a, n, group):
    if isinstance(a, (bool, np.bool_)) or not isinstance(a, numbers.Integral):
        raise StructuralError('{g} expects an integer payload, got {t}.'.format(g=group, t=type(a)))
    if not 0 <= a < n:
        raise StructuralError('{a} is out of range for {g}.'.format(a=a, g=group))


class CyclicGroup(FiniteGroup):
    """Cyclic group Z/nZ, elements are the integers 0, ..., n-1 under addition mod n."""

    kind = constants.CYCLIC

    def __init__(self, n):
        if n < 1:
            raise ValueError('n must be a positive integer.')
        self._n = int(n)

    @property
    def n(self):
        return self._n

    def identity(self):
        return 0

    def _compose(self, a, b):
        return (int(a) + int(b)) % self._n

    def _inverse(self, a):
        return (-int(a)) % self._n

    def validate(self, a):
        _check_integer(a, self._n, self)

    def key(self, a):
        return int(a)

    def _enumerate(self):
        return range(self._n)

    def to_dict(self):
        return {'kind': self.kind, 'n': self._n}


class SymmetricGroup(FiniteGroup):
    """Symmetric group S_n.

    Elements are permutations of {0, ..., n-1} stored as tuples `p` with `p[i]` the image of `i`.
    Composition is composition of functions: `compose(a, b)[i] == a[b[i]]`.
    """

    kind = constants.SYMMETRIC

    def __init__(self, n):
        if n < 1:
            raise ValueError('n must be a positive integer.')
        self._n = int(n)

    @property
    def n(self):
        return self._n

    def identity(self):
        return tuple(range(self._n))

    def _compose(self, a, b):
        return tuple(int(a[b[i]]) for i in range(self._n))

    def _inverse(self, a):
        inv = [0] * self._n
        for i, ai in enumerate(a):
            inv[ai] = i
        return tuple(inv)

    def validate(self, a):
        if isinstance(a, (str, bytes)) or not hasattr(a, '__len__'):
            raise StructuralError('{g} expects a permutation payload, got {t}.'.format(g=self, t=type(a)))
        if len(a) != self._n:
            raise StructuralError('{a} has length {l}, expected {n}.'.format(a=a, l=len(a), n=self._n))
        if sorted(int(i) for i in a) != list(range(self._n)):
            raise InvariantViolationError('{a} is not a bijection on {{0..{m}}}.'.format(a=a, m=self._n - 1))

    def key(self, a):
        return tuple(int(i) for i in a)

    def _enumerate(self):
        return itertools.permutations(range(self._n))

    def to_dict(self):
        return {'kind': self.kind, 'n': self._n}


class DihedralGroup(FiniteGroup):
    """Dihedral group D_n of order 2n.

    The element of index `f * n + r` is the map `x -> r + (-1)^f x (mod n)` of the n-gon vertices: a rotation
    by `r` when `f == 0`, a reflection otherwise.
    """

    kind = constants.DIHEDRAL

    def __init__(self, n):
        if n < 1:
            raise ValueError('n must be a positive integer.')
        self._n = int(n)

    @property
    def n(self):
        return self._n

    def split(self, a):
        """Return the pair (rotation, flip) of the element `a`."""
        return int(a) % self._n, int(a) // self._n

    def identity(self):
        return 0

    def _compose(self, a, b):
        r1, f1 = self.split(a)
        r2, f2 = self.split(b)
        r = (r1 + (r2 if f1 == 0 else -r2)) % self._n
        return ((f1 ^ f2) * self._n) + r

    def _inverse(self, a):
        r, f = self.split(a)
        if f == 1:
            return int(a)
        return (-r) % self._n

    def validate(self, a):
        _check_integer(a, 2 * self._n, self)

    def key(self, a):
        return int(a)

    def _enumerate(self):
        return range(2 * self._n)

    def to_dict(self):
        return {'kind': self.kind, 'n': self._n}


class _MatrixGroup(Group):

    def __init__(self, d):
        if d < 1:
            raise ValueError('d must be a positive integer.')
        self._d = int(d)

    @property
    def d(self):
        return self._d

    @property
    def is_finite(self):
        return False

    @property
    def is_compact(self):
        return True

    def identity(self):
        return np.eye(self._d)

    def _compose(self, a, b):
        return np.asarray(a) @ np.asarray(b)

    def _inverse(self, a):
        return np.asarray(a).T.copy()

    def validate(self, a):
        if not isinstance(a, np.ndarray) or a.shape != (self._d, self._d):
            raise StructuralError('{g} expects a {d}x{d} matrix payload.'.format(g=self, d=self._d))
        if not utils.all_finite(a):
            raise InvariantViolationError('matrix payload contains NaN or Inf.')
        err = np.max(np.abs(a.T @ a - np.eye(self._d)))
        if err > constants.EPS_ORTH:
            raise InvariantViolationError('matrix payload is not orthogonal (|Q^T Q - I| = {e:.3g}).'.format(e=err))

    def equal(self, a, b):
        return utils.max_abs_diff(a, b) <= constants.EPS_NUM

    def distance(self, a, b):
        return utils.max_abs_diff(a, b)

    def key(self, a):
        return tuple(np.round(np.asarray(a, dtype=float), 9).ravel().tolist())

    def to_dict(self):
        return {'kind': self.kind, 'd': self._d}


class OrthogonalGroup(_MatrixGroup):
    """Orthogonal group O(d) of d x d real matrices with Q^T Q = I."""

    kind = constants.ORTHOGONAL

    def haar_sample(self, random_state=None):
        """
        Haar-distributed orthogonal matrix, via the QR decomposition of a Gaussian matrix with the signs of
        R's diagonal corrected (`scipy.stats.ortho_group`).
        """
        rng = utils.check_random_state(random_state)
        if self._d == 1:
            return np.array([[1.0 if rng.random() < 0.5 else -1.0]])
        return np.asarray(stats.ortho_group.rvs(dim=self._d, random_state=rng), dtype=float)


class SpecialOrthogonalGroup(_MatrixGroup):
    """Special orthogonal group SO(d), the rotations of R^d."""

    kind = constants.SPECIAL_ORTHOGONAL

    def validate(self, a):
        super().validate(a)
        if np.linalg.det(a) < 0:
            raise InvariantViolationError('matrix payload has determinant -1, not a rotation.')

    def haar_sample(self, random_state=None):
        """
        Haar-distributed rotation. SO(3) is sampled through a uniform unit quaternion
        (`scipy.spatial.transform.Rotation.random`), SO(2) through a uniform angle.
        """
        rng = utils.check_random_state(random_state)
        if self._d == 1:
            return np.eye(1)
        if self._d == 2:
            theta = rng.uniform(0.0, 2.0 * np.pi)
            return rotation_2d(theta)
        if self._d == 3:
            return Rotation.random(random_state=rng).as_matrix()
        return np.asarray(stats.special_ortho_group.rvs(dim=self._d, random_state=rng), dtype=float)


def rotation_2d(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


class TranslationGroup(Group):
    """Translation group T(d) of R^d, elements are real d-vectors under addition."""

    kind = constants.TRANSLATION

    def __init__(self, d):
        if d < 1:
            raise ValueError('d must be a positive integer.')
        self._d = int(d)

    @property
    def d(self):
        return self._d

    @property
    def is_finite(self):
        return False

    @property
    def is_compact(self):
        return False

    def identity(self):
        return np.zeros(self._d)

    def _compose(self, a, b):
        return np.asarray(a, dtype=float) + np.asarray(b, dtype=float)

    def _inverse(self, a):
        return -np.asarray(a, dtype=float)

    def validate(self, a):
        if not isinstance(a, np.ndarray) or a.shape != (self._d,):
            raise StructuralError('{g} expects a vector payload of shape ({d},).'.format(g=self, d=self._d))
        if not utils.all_finite(a):
            raise InvariantViolationError('translation payload contains NaN or Inf.')

    def equal(self, a, b):
        return utils.max_abs_diff(a, b) <= constants.EPS_NUM

    def distance(self, a, b):
        return utils.max_abs_diff(a, b)

    def key(self, a):
        return tuple(np.round(np.asarray(a, dtype=float), 9).tolist())

    def random_element(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return rng.standard_normal(self._d)

    def to_dict(self):
        return {'kind': self.kind, 'd': self._d}


class EuclideanGroup(Group):
    """Euclidean group E(d) = O(d) x| T(d).

    Elements are pairs (Q, t) acting on R^d by x -> Qx + t, multiplied as
    (Q1, t1)(Q2, t2) = (Q1 Q2, Q1 t2 + t1).
    """

    kind = constants.EUCLIDEAN

    def __init__(self, d):
        if d < 1:
            raise ValueError('d must be a positive integer.')
        self._d = int(d)
        self._rotations = OrthogonalGroup(d)
        self._translations = TranslationGroup(d)

    @property
    def d(self):
        return self._d

    @property
    def rotations(self):
        return self._rotations

    @property
    def translations(self):
        return self._translations

    @property
    def is_finite(self):
        return False

    @property
    def is_compact(self):
        return False

    def identity(self):
        return (np.eye(self._d), np.zeros(self._d))

    def _compose(self, a, b):
        q1, t1 = a
        q2, t2 = b
        return (q1 @ q2, q1 @ t2 + t1)

    def _inverse(self, a):
        q, t = a
        return (q.T.copy(), -q.T @ t)

    def validate(self, a):
        if not isinstance(a, tuple) or len(a) != 2:
            raise StructuralError('{g} expects a (Q, t) pair payload.'.format(g=self))
        self._rotations.validate(a[0])
        self._translations.validate(a[1])

    def equal(self, a, b):
        return self.distance(a, b) <= constants.EPS_NUM

    def distance(self, a, b):
        return max(utils.max_abs_diff(a[0], b[0]), utils.max_abs_diff(a[1], b[1]))

    def key(self, a):
        return (self._rotations.key(a[0]), self._translations.key(a[1]))

    def random_element(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return (self._rotations.haar_sample(rng), self._translations.random_element(rng))

    def to_dict(self):
        return {'kind': self.kind, 'd': self._d}


class ProductGroup(Group):
    """Direct product K x H, elements are pairs (k, h) multiplied componentwise."""

    kind = constants.PRODUCT

    def __init__(self, left, right):
        self._left = left
        self._right = right
        self._elements = None
        self._index = None

    @property
    def left(self):
        return self._left

    @property
    def right(self):
        return self._right

    @property
    def is_finite(self):
        return self._left.is_finite and self._right.is_finite

    @property
    def is_compact(self):
        return self._left.is_compact and self._right.is_compact

    def identity(self):
        return (self._left.identity(), self._right.identity())

    def _compose(self, a, b):
        return (self._left._compose(a[0], b[0]), self._right._compose(a[1], b[1]))

    def _inverse(self, a):
        return (self._left._inverse(a[0]), self._right._inverse(a[1]))

    def validate(self, a):
        if not isinstance(a, tuple) or len(a) != 2:
            raise StructuralError('{g} expects a pair payload.'.format(g=self))
        self._left.validate(a[0])
        self._right.validate(a[1])

    def equal(self, a, b):
        return self._left.equal(a[0], b[0]) and self._right.equal(a[1], b[1])

    def distance(self, a, b):
        return max(self._left.distance(a[0], b[0]), self._right.distance(a[1], b[1]))

    def key(self, a):
        return (self._left.key(a[0]), self._right.key(a[1]))

    def elements(self):
        if not self.is_finite:
            return super().elements()
        if self._elements is None:
            self._elements = list(itertools.product(self._left.elements(), self._right.elements()))
            self._index = {self.key(a): i for i, a in enumerate(self._elements)}
        return self._elements

    def index(self, a):
        if not self.is_finite:
            return super().index(a)
        self.validate(a)
        self.elements()
        try:
            return self._index[self.key(a)]
        except KeyError:
            raise StructuralError('{a} is not an element of {g}.'.format(a=a, g=self))

    def haar_sample(self, random_state=None):
        if not self.is_compact:
            return super().haar_sample(random_state)
        rng = utils.check_random_state(random_state)
        return (self._left.haar_sample(rng), self._right.haar_sample(rng))

    def random_element(self, random_state=None):
        rng = utils.check_random_state(random_state)
        return (self._left.random_element(rng), self._right.random_element(rng))

    def to_dict(self):
        return {'kind': self.kind, 'left': self._left.to_dict(), 'right': self._right.to_dict()}


class FiniteSubgroup(FiniteGroup):
    """Finite subgroup of a parent group, given by generators.

    Elements are payloads of the parent group, enumerated by closure (breadth first from the identity, so the
    identity has index 0). Use `subgroup` to build one.
    """

    kind = constants.SUBGROUP

    def __init__(self, parent, generators=(), max_order=100000):
        self._parent = parent
        self._generators = [g for g in generators]
        for g in self._generators:
            parent.validate(g)
        self._max_order = max_order

    @property
    def parent(self):
        return self._parent

    @property
    def generators(self):
        return list(self._generators)

    @property
    def inclusion(self):
        return Homomorphism(self, self._parent, lambda h: h, kind=constants.SUBGROUP_INCLUSION,
                            name='inclusion')

    def identity(self):
        return self._parent.identity()

    def _compose(self, a, b):
        return self._parent._compose(a, b)

    def _inverse(self, a):
        return self._parent._inverse(a)

    def key(self, a):
        return self._parent.key(a)

    def equal(self, a, b):
        return self._parent.equal(a, b)

    def distance(self, a, b):
        return self._parent.distance(a, b)

    def _enumerate(self):
        elements = [self._parent.identity()]
        seen = {self._parent.key(elements[0])}
        frontier = list(elements)
        while frontier:
            new = []
            for a in frontier:
                for g in self._generators:
                    b = self._parent._compose(a, g)
                    k = self._parent.key(b)
                    if k not in seen:
                        seen.add(k)
                        elements.append(b)
                        new.append(b)
                        if len(elements) > self._max_order:
                            raise UnsupportedGroupError('the generated subgroup has more than %s elements.'
                                                        % self._max_order)
            frontier = new
        return elements

    def validate(self, a):
        self._parent.validate(a)
        self.elements()
        if self._parent.is_finite:
            if self._parent.key(a) not in self._index:
                raise StructuralError('{a} is not an element of the subgroup.'.format(a=a))
        elif not any(self._parent.equal(a, b) for b in self._elements):
            raise StructuralError('{a} is not an element of the subgroup.'.format(a=a))

    def index(self, a):
        self.validate(a)
        if self._parent.is_finite:
            return self._index[self._parent.key(a)]
        for i, b in enumerate(self._elements):
            if self._parent.equal(a, b):
                return i

    def to_dict(self):
        return {'kind': self.kind, 'parent': self._parent.to_dict(), 'generators': self._generators}


def subgroup(G, generators=()):
    """
    Finite subgroup of `G` generated by `generators` (the trivial subgroup when `generators` is empty).

    Parameters
    ----------
    G : Group
        the parent group.

    generators : list, optional
        payloads of `G`. The default is `()`.

    Returns
    -------
    FiniteSubgroup
        the subgroup; its `inclusion` property is the inclusion homomorphism into `G`.

    Examples
    --------
    >>> from sksym.core.groups import CyclicGroup, subgroup
    >>> H = subgroup(CyclicGroup(4), [2])
    >>> H.elements()
    [0, 2]
    """
    return FiniteSubgroup(G, generators)


# Module-level arithmetic

def compose(G, a, b):
    """Return the product `a . b` in `G`."""
    return G.compose(a, b)


def inverse(G, a):
    """Return the inverse of `a` in `G`."""
    return G.inverse(a)


def identity(G):
    return G.identity()


def haar_sample(G, random_state=None):
    """
    Draw an element of the finite or compact group `G` from its Haar probability measure.

    Parameters
    ----------
    G : Group
        a finite group, O(d), SO(d), or a product of those.

    random_state : int, None or numpy.random.Generator, optional
        the source of randomness. The default is None.

    Returns
    -------
    payload
        a random element of `G`.

    Raises
    ------
    UnsupportedGroupError
        if `G` is noncompact (translations, Euclidean groups).
    """
    return G.haar_sample(random_state)


def check_group_axioms(G, random_state=None, n_samples=constants.DEFAULT_N_SAMPLES, tolerance=constants.EPS_NUM):
    """
    Check associativity, identity and inverse laws: exhaustively for finite groups, on `n_samples` random
    triples otherwise.

    Returns
    -------
    bool
        True if all the laws hold.
    """
    e = G.identity()
    if G.is_finite:
        elements = G.elements()
        triples = itertools.product(elements, repeat=3)
        singles = elements
    else:
        rng = utils.check_random_state(random_state)
        triples = [(G.random_element(rng), G.random_element(rng), G.random_element(rng)) for _ in range(n_samples)]
        singles = [t[0] for t in triples]

    def close(a, b):
        return G.equal(a, b) if G.is_finite else G.distance(a, b) <= tolerance

    for a in singles:
        if not (close(G.compose(e, a), a) and close(G.compose(a, e), a)):
            return False
        if not (close(G.compose(a, G.inverse(a)), e) and close(G.compose(G.inverse(a), a), e)):
            return False
    for a, b, c in triples:
        if not close(G.compose(G.compose(a, b), c), G.compose(a, G.compose(b, c))):
            return False
    return True


class Homomorphism:
    """Group homomorphism.

    Parameters
    ----------
    source : Group
        the group H.

    target : Group
        the group G.

    apply : callable
        the map from payloads of H to payloads of G.

    kind : str, optional
        one of "subgroup-inclusion", "left-factor-injection", "composite", "custom". The first three are known
        to be injective. The default is "custom".

    name : str, optional
        a label used in reports.
    """

    def __init__(self, source, target, apply, kind=constants.CUSTOM, name=None):
        self._source = source
        self._target = target
        self._apply = apply
        self._kind = kind
        self._name = name or kind

    @property
    def source(self):
        return self._source

    @property
    def target(self):
        return self._target

    @property
    def kind(self):
        return self._kind

    @property
    def name(self):
        return self._name

    def __call__(self, h):
        return self._apply(h)

    def is_injective(self):
        """
        Exhaustive for finite sources; otherwise decided by the kind tag.
        """
        if self._source.is_finite:
            images = [self._target.key(self(h)) for h in self._source.elements()]
            return len(set(images)) == len(images)
        return self._kind in constants.INJECTIVE_KINDS

    def image(self):
        """The image of a finite source as a finite subgroup of the target."""
        if not self._source.is_finite:
            raise UnsupportedGroupError('the image of an infinite source cannot be enumerated.')
        return subgroup(self._target, [self(h) for h in self._source.elements()])

    def check_law(self, random_state=None, n_samples=constants.DEFAULT_N_SAMPLES, tolerance=constants.EPS_NUM):
        """
        Check phi(e_H) = e_G and phi(h1 h2) = phi(h1) phi(h2), exhaustively when the source is finite.
        """
        H, G = self._source, self._target
        if not G.distance(self(H.identity()), G.identity()) <= tolerance:
            return False
        if H.is_finite:
            pairs = itertools.product(H.elements(), repeat=2)
        else:
            rng = utils.check_random_state(random_state)
            pairs = [(H.random_element(rng), H.random_element(rng)) for _ in range(n_samples)]
        for a, b in pairs:
            if G.distance(self(H.compose(a, b)), G.compose(self(a), self(b))) > tolerance:
                return False
        return True

    def __repr__(self):
        return 'Homomorphism({name}: {s} -> {t})'.format(name=self._name, s=self._source, t=self._target)


def identity_homomorphism(G):
    return Homomorphism(G, G, lambda g: g, kind=constants.SUBGROUP_INCLUSION, name='identity')


def trivial_inclusion(G):
    """The inclusion of the trivial subgroup {e} into `G`."""
    return subgroup(G).inclusion


def trivial_homomorphism(H, G):
    """The homomorphism sending every element of `H` to the identity of `G` (not injective unless H = {e})."""
    return Homomorphism(H, G, lambda h: G.identity(), kind=constants.CUSTOM, name='trivial')


def symmetric_inclusion(m, n):
    """
    The inclusion S_m -> S_n of the permutations of {0..m-1}, fixing m, ..., n-1.
    """
    if m > n:
        raise ValueError('m must not exceed n.')
    source, target = SymmetricGroup(m), SymmetricGroup(n)
    return Homomorphism(source, target, lambda p: tuple(p) + tuple(range(m, n)),
                        kind=constants.SUBGROUP_INCLUSION, name='S%d<S%d' % (m, n))


def hom_inject_left(K, H):
    """
    The homomorphism H -> K x H sending h to (e_K, h).

    Examples
    --------
    >>> phi = hom_inject_left(CyclicGroup(3), CyclicGroup(2))
    >>> phi(1)
    (0, 1)
    """
    target = ProductGroup(K, H)
    return Homomorphism(H, target, lambda h: (K.identity(), h), kind=constants.LEFT_FACTOR_INJECTION,
                        name='inject_left')


def compose_homomorphisms(psi, phi):
    """The composite psi o phi."""
    if phi.target != psi.source:
        raise StructuralError('cannot compose {psi} after {phi}: groups do not match.'.format(psi=psi, phi=phi))
    injective = phi.kind in constants.INJECTIVE_KINDS and psi.kind in constants.INJECTIVE_KINDS
    return Homomorphism(phi.source, psi.target, lambda h: psi(phi(h)),
                        kind=constants.COMPOSITE if injective else constants.CUSTOM,
                        name='%s.%s' % (psi.name, phi.name))


def product_homomorphism(phi, psi):
    """The componentwise homomorphism phi x psi : A x B -> C x D."""
    injective = phi.kind in constants.INJECTIVE_KINDS and psi.kind in constants.INJECTIVE_KINDS
    return Homomorphism(ProductGroup(phi.source, psi.source), ProductGroup(phi.target, psi.target),
                        lambda ab: (phi(ab[0]), psi(ab[1])),
                        kind=constants.SUBGROUP_INCLUSION if injective else constants.CUSTOM,
                        name='%sx%s' % (phi.name, psi.name))


def orthogonal_in_euclidean(d):
    """The inclusion O(d) -> E(d), Q -> (Q, 0)."""
    return Homomorphism(OrthogonalGroup(d), EuclideanGroup(d), lambda q: (q, np.zeros(d)),
                        kind=constants.SUBGROUP_INCLUSION, name='O%d<E%d' % (d, d))


# Coset spaces

class CosetSpace(ABC):
    """Coset space G/H.

    Common interface of enumerated coset spaces (`coset_space`) and of the symbolic quotients of continuous
    groups (`trivial_quotient`, `full_quotient`, `left_factor_quotient`, `translation_quotient`).
    """

    def __init__(self, group, inclusion):
        if inclusion.target != group:
            raise StructuralError('the inclusion {i} does not land in {g}.'.format(i=inclusion, g=group))
        self._group = group
        self._inclusion = inclusion

    @property
    def group(self):
        return self._group

    @property
    def inclusion(self):
        return self._inclusion

    @property
    def subgroup(self):
        return self._inclusion.source

    @property
    @abstractmethod
    def is_finite(self):
        pass

    @abstractmethod
    def coset_of(self, g):
        pass

    @abstractmethod
    def section(self, c):
        """A representative s(c) of the coset c."""
        pass

    @abstractmethod
    def validate(self, c):
        pass

    def act(self, g, c):
        """The action g . [g'] = [g g']."""
        return self.coset_of(self._group.compose(g, self.section(c)))

    def identity_coset(self):
        return self.coset_of(self._group.identity())

    def equal(self, c1, c2):
        return c1 == c2

    def distance(self, c1, c2):
        return 0.0 if self.equal(c1, c2) else 1.0

    @property
    def cosets(self):
        raise UnsupportedGroupError('the coset space of {g} is not finite.'.format(g=self._group))

    def __len__(self):
        return len(self.cosets)

    def to_dict(self):
        return {'group': self._group.to_dict(), 'subgroup': self.subgroup.to_dict(), 'inclusion': self._inclusion.name}


class FiniteCosetSpace(CosetSpace):
    """
    Enumerated coset space of a finite group. Cosets are the integers 0..m-1, ordered by their smallest element
    index, and the section picks that smallest-index element.
    """

    def __init__(self, group, inclusion):
        super().__init__(group, inclusion)
        elements = group.elements()
        images = [group.index(inclusion(h)) for h in inclusion.source.elements()]
        if len(set(images)) != len(images):
            raise InvalidInclusionError('{i} is not injective.'.format(i=inclusion))

        self._element2coset = [None] * len(elements)
        self._cosets = []
        for i, g in enumerate(elements):
            if self._element2coset[i] is not None:
                continue
            members = sorted(group.index(group._compose(g, elements[j])) for j in images)
            for j in members:
                self._element2coset[j] = len(self._cosets)
            self._cosets.append(members)

        logger.debug('coset space %s/%s: %d cosets', group, inclusion.source, len(self._cosets))

    @property
    def is_finite(self):
        return True

    @property
    def cosets(self):
        return list(range(len(self._cosets)))

    def members(self, c):
        """The elements of the coset `c`."""
        self.validate(c)
        elements = self._group.elements()
        return [elements[i] for i in self._cosets[c]]

    def coset_of(self, g):
        return self._element2coset[self._group.index(g)]

    def section(self, c):
        self.validate(c)
        return self._group.elements()[self._cosets[c][0]]

    def validate(self, c):
        _check_integer(c, len(self._cosets), 'G/H')


def coset_space(G, incl):
    """
    Enumerate the left cosets gH of a finite group.

    Parameters
    ----------
    G : Group
        a finite group.

    incl : Homomorphism
        an injective homomorphism H -> G, usually a subgroup inclusion.

    Returns
    -------
    FiniteCosetSpace
        the partition of `G` into cosets, with the section choosing the minimal-index representative.

    Raises
    ------
    InvalidInclusionError
        if `incl` is not injective.

    Examples
    --------
    >>> cs = coset_space(SymmetricGroup(3), symmetric_inclusion(2, 3))
    >>> len(cs.cosets)
    3
    """
    if not G.is_finite:
        raise UnsupportedGroupError('coset_space enumerates finite groups only; use the symbolic quotients.')
    return FiniteCosetSpace(G, incl)


def coset_of(cs, g):
    return cs.coset_of(g)


def coset_act(cs, g, c):
    return cs.act(g, c)


class TrivialQuotient(CosetSpace):
    """G/{e}: cosets are the elements of G themselves."""

    def __init__(self, group):
        super().__init__(group, trivial_inclusion(group))

    @property
    def is_finite(self):
        return self._group.is_finite

    def coset_of(self, g):
        self._group.validate(g)
        return g

    def section(self, c):
        return c

    def act(self, g, c):
        return self._group.compose(g, c)

    def validate(self, c):
        self._group.validate(c)

    def equal(self, c1, c2):
        return self._group.equal(c1, c2)

    def distance(self, c1, c2):
        return self._group.distance(c1, c2)


class FullQuotient(CosetSpace):
    """G/G: a single coset, written 0."""

    def __init__(self, group):
        super().__init__(group, identity_homomorphism(group))

    @property
    def is_finite(self):
        return True

    @property
    def cosets(self):
        return [0]

    def coset_of(self, g):
        self._group.validate(g)
        return 0

    def section(self, c):
        self.validate(c)
        return self._group.identity()

    def act(self, g, c):
        self._group.validate(g)
        self.validate(c)
        return 0

    def validate(self, c):
        _check_integer(c, 1, 'G/G')


class LeftFactorQuotient(CosetSpace):
    """
    (K x H)/H for the left-factor injection h -> (e_K, h): cosets are elements of K, with section k -> (k, e_H).
    """

    def __init__(self, group):
        if not isinstance(group, ProductGroup):
            raise StructuralError('left_factor_quotient needs a product group.')
        super().__init__(group, hom_inject_left(group.left, group.right))
        self._factor = group.left

    @property
    def is_finite(self):
        return self._factor.is_finite

    @property
    def cosets(self):
        return self._factor.elements()

    def coset_of(self, g):
        self._group.validate(g)
        return g[0]

    def section(self, c):
        self._factor.validate(c)
        return (c, self._group.right.identity())

    def act(self, g, c):
        self._group.validate(g)
        return self._factor.compose(g[0], c)

    def validate(self, c):
        self._factor.validate(c)

    def equal(self, c1, c2):
        return self._factor.equal(c1, c2)

    def distance(self, c1, c2):
        return self._factor.distance(c1, c2)


class TranslationQuotient(CosetSpace):
    """E(d)/O(d), or (E(d) x K)/(O(d) x K).

    Cosets are the translation vectors t, [(Q, t)] = t, with section t -> (I, t). The group acts by
    (Q, t') . t = Q t + t'.
    """

    def __init__(self, group):
        if isinstance(group, EuclideanGroup):
            euclidean, inclusion = group, orthogonal_in_euclidean(group.d)
        elif isinstance(group, ProductGroup) and isinstance(group.left, EuclideanGroup):
            euclidean = group.left
            inclusion = product_homomorphism(orthogonal_in_euclidean(euclidean.d), identity_homomorphism(group.right))
        else:
            raise StructuralError('translation_quotient needs E(d) or E(d) x K, got {g}.'.format(g=group))
        super().__init__(group, inclusion)
        self._euclidean = euclidean

    def _split(self, g):
        return g if isinstance(self._group, EuclideanGroup) else g[0]

    @property
    def is_finite(self):
        return False

    def coset_of(self, g):
        self._group.validate(g)
        return np.array(self._split(g)[1], dtype=float)

    def section(self, c):
        self.validate(c)
        e = (np.eye(self._euclidean.d), np.array(c, dtype=float))
        if isinstance(self._group, EuclideanGroup):
            return e
        return (e, self._group.right.identity())

    def act(self, g, c):
        self._group.validate(g)
        self.validate(c)
        q, t = self._split(g)
        return q @ c + t

    def validate(self, c):
        self._euclidean.translations.validate(c)

    def equal(self, c1, c2):
        return utils.max_abs_diff(c1, c2) <= constants.EPS_NUM

    def distance(self, c1, c2):
        return utils.max_abs_diff(c1, c2)


def trivial_quotient(G):
    """G/{e}, enumerated when G is finite."""
    if G.is_finite:
        return coset_space(G, trivial_inclusion(G))
    return TrivialQuotient(G)


def full_quotient(G):
    """G/G, a single coset."""
    if G.is_finite:
        return coset_space(G, identity_homomorphism(G))
    return FullQuotient(G)


def left_factor_quotient(G):
    """(K x H)/H along `hom_inject_left`, enumerated when G is finite."""
    if G.is_finite:
        return coset_space(G, hom_inject_left(G.left, G.right))
    return LeftFactorQuotient(G)


def translation_quotient(G):
    return TranslationQuotient(G)


# Descriptors

def group_from_dict(description):
    """
    Build a group from its structured description, e.g. `{"kind": "symmetric", "n": 3}`.

    Raises
    ------
    ValueError
        if the kind is unknown or a parameter is missing.
    """
    kind = description.get('kind')
    try:
        if kind == constants.CYCLIC:
            return CyclicGroup(description['n'])
        if kind == constants.SYMMETRIC:
            return SymmetricGroup(description['n'])
        if kind == constants.DIHEDRAL:
            return DihedralGroup(description['n'])
        if kind == constants.ORTHOGONAL:
            return OrthogonalGroup(description['d'])
        if kind == constants.SPECIAL_ORTHOGONAL:
            return SpecialOrthogonalGroup(description['d'])
        if kind == constants.TRANSLATION:
            return TranslationGroup(description['d'])
        if kind == constants.EUCLIDEAN:
            return EuclideanGroup(description['d'])
        if kind == constants.PRODUCT:
            return ProductGroup(group_from_dict(description['left']), group_from_dict(description['right']))
        if kind == constants.SUBGROUP:
            parent = group_from_dict(description['parent'])
            return subgroup(parent, [payload_from_json(parent, g) for g in description.get('generators', [])])
    except KeyError as e:
        raise ValueError('missing parameter {p} for group kind {k}.'.format(p=e, k=kind))
    raise ValueError('unknown group kind: {k}'.format(k=kind))


def payload_from_json(G, value):
    """
    Convert a JSON value (lists and numbers) into a payload of `G`.
    """
    if isinstance(G, (CyclicGroup, DihedralGroup)):
        return int(value)
    if isinstance(G, SymmetricGroup):
        return tuple(int(i) for i in value)
    if isinstance(G, _MatrixGroup):
        return np.array(value, dtype=float)
    if isinstance(G, TranslationGroup):
        return np.array(value, dtype=float)
    if isinstance(G, EuclideanGroup):
        return (np.array(value[0], dtype=float), np.array(value[1], dtype=float))
    if isinstance(G, ProductGroup):
        return (payload_from_json(G.left, value[0]), payload_from_json(G.right, value[1]))
    if isinstance(G, FiniteSubgroup):
        return payload_from_json(G.parent, value)
    raise StructuralError('cannot read payloads of {g}.'.format(g=G))
