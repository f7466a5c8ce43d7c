import logging
from ..core.actions import product, restrict, coset_gset
from ..measures.equivariance import check_equivariance
from ..utils import constants
from ..utils.exceptions import StructuralError, IllTypedInputError

logger = logging.getLogger(__name__)


class EquivariantMap:
    """EquivariantMap.

    A deterministic function between two G-sets of the same group, claimed to satisfy f(g.x) = g.f(x).
    The claim is not enforced at construction; use `check_equivariance` to audit it.

    Parameters
    ----------
    domain : GSet
        the G-set X.

    codomain : GSet
        the G-set Y.

    fn : callable
        the function on points.

    name : str, optional
        a label used in reports.

    exclusion : callable, optional
        a predicate x -> bool marking a measure-zero set of inputs where equivariance is not claimed (e.g. the
        ties of a canonicalisation). Audits skip these inputs.

    Examples
    --------
    >>> from sksym.core.actions import sign_gset
    >>> X = sign_gset()
    >>> double = EquivariantMap(X, X, lambda x: 2 * x, name='double')
    >>> double(np.array([1.5]))
    array([3.])
    """

    def __init__(self, domain, codomain, fn, name=None, exclusion=None):
        if domain.group != codomain.group:
            raise StructuralError('domain and codomain are acted on by different groups ({a}, {b}).'
                                  .format(a=domain.group, b=codomain.group))
        self._domain = domain
        self._codomain = codomain
        self._fn = fn
        self._name = name or getattr(fn, '__name__', 'map')
        self._exclusion = exclusion

    @property
    def domain(self):
        return self._domain

    @property
    def codomain(self):
        return self._codomain

    @property
    def group(self):
        """The group the map claims equivariance for."""
        return self._domain.group

    @property
    def fn(self):
        return self._fn

    @property
    def name(self):
        return self._name

    @property
    def exclusion(self):
        return self._exclusion

    def __call__(self, x):
        return self._fn(x)

    def check(self, **kwargs):
        """Shorthand for `check_equivariance(self, **kwargs)`."""
        return check_equivariance(self, **kwargs)

    def __repr__(self):
        return 'EquivariantMap({n}: {x} -> {y})'.format(n=self._name, x=self._domain, y=self._codomain)


class GammaMap(EquivariantMap):
    """GammaMap.

    A G-equivariant map gamma : X -> G/H, gamma(g.x) = g.gamma(x). Together with the section of its coset
    space it picks, for every input, the group element h(x) = s(gamma(x)) used to canonicalise x.

    Parameters
    ----------
    domain : GSet
        the G-set X.

    cs : CosetSpace
        the coset space G/H.

    fn : callable
        the function x -> coset.
    """

    def __init__(self, domain, cs, fn, name=None, exclusion=None):
        super().__init__(domain, coset_gset(cs), fn, name=name or 'gamma', exclusion=exclusion)
        self._cs = cs

    @property
    def coset_space(self):
        return self._cs

    def frame(self, x):
        """The representative h(x) = s(gamma(x))."""
        return self._cs.section(self(x))


def restricted_map(fn, phi, X, Y, name=None, exclusion=None):
    """
    The H-equivariant map fn : R_phi X -> R_phi Y, for a homomorphism phi : H -> G and G-sets X, Y.

    Examples
    --------
    >>> from sksym.core.groups import SymmetricGroup, symmetric_inclusion
    >>> from sksym.core.actions import natural_gset
    >>> X = natural_gset(SymmetricGroup(3))
    >>> f = restricted_map(lambda i: i, symmetric_inclusion(2, 3), X, X)
    >>> f.group
    symmetric(n=2)
    """
    return EquivariantMap(restrict(phi, X), restrict(phi, Y), fn, name=name, exclusion=exclusion)


def _parent(Z, cs, role):
    if Z.group == cs.group:
        return Z
    if Z.parent is not None and Z.parent.group == cs.group:
        return Z.parent
    raise StructuralError('cannot recover the {r} G-set of {g} from {z}; pass it explicitly.'
                          .format(r=role, g=cs.group, z=Z))


def _resolve_gsets(f, cs, domain, codomain):
    if f.domain.group not in (cs.subgroup, cs.group):
        raise StructuralError('{f} is typed over {h}, expected the subgroup {s}.'
                              .format(f=f, h=f.domain.group, s=cs.subgroup))
    X = domain if domain is not None else _parent(f.domain, cs, 'domain')
    Y = codomain if codomain is not None else _parent(f.codomain, cs, 'codomain')
    if X.group != cs.group or Y.group != cs.group:
        raise StructuralError('the G-sets must be acted on by {g}.'.format(g=cs.group))
    if X.carrier != f.domain.carrier or Y.carrier != f.codomain.carrier:
        raise StructuralError('the carriers of {f} do not match the G-sets.'.format(f=f))
    return X, Y


def spot_check(f, check=True, random_state=None):
    """
    Fail fast when `f` is not equivariant for the group it is typed over.

    Raises
    ------
    IllTypedInputError
        with the audit witnesses, if the spot-check fails.
    """
    if not check:
        logger.warning('equivariance spot-check of %s disabled.', f.name)
        return None
    H = f.domain.group
    if H.is_finite and H.order == 1:
        return None
    report = check_equivariance(f, n_samples=constants.SPOT_CHECK_SAMPLES, random_state=random_state,
                                name='spot-check(%s)' % f.name)
    if not report.passed:
        raise IllTypedInputError('{f} is not equivariant for {h} (max violation {v:.3g}, witness {w}).'
                                 .format(f=f.name, h=H, v=report.max_violation, w=report.witnesses[:1]))
    return report


def sharp(f, cs, domain=None, codomain=None, check=True, random_state=None):
    """
    The bijection f -> f#, from H-equivariant maps R X -> R Y to G-equivariant maps G/H (x) X -> Y, with

        f#([g], x) = g . f(g^-1 . x),

    evaluated through the section s of `cs`.

    Parameters
    ----------
    f : EquivariantMap
        an H-equivariant map, usually typed over the restricted G-sets (see `restricted_map`).

    cs : CosetSpace
        the coset space G/H.

    domain, codomain : GSet, optional
        the G-sets X and Y. By default they are recovered from the restricted G-sets of `f`.

    check : bool, optional
        if True, spot-check the H-equivariance of `f` first. The default is `True`.

    random_state : int, None or numpy.random.Generator, optional
        randomness for the spot-check.

    Returns
    -------
    EquivariantMap
        the map f# on the product G-set G/H (x) X.

    Raises
    ------
    IllTypedInputError
        if the spot-check fails.

    Examples
    --------
    >>> X = sign_gset()
    >>> cs = trivial_quotient(X.group)
    >>> fs = sharp(restricted_map(lambda x: x + 1, cs.inclusion, X, X), cs)
    >>> fs((1, np.array([2.0])))
    array([1.])
    """
    X, Y = _resolve_gsets(f, cs, domain, codomain)
    spot_check(f, check, random_state)
    G = cs.group

    def fn(cx):
        c, x = cx
        s = cs.section(c)
        return Y._act(s, f(X._act(G._inverse(s), x)))

    return EquivariantMap(product(coset_gset(cs), X), Y, fn, name='sharp(%s)' % f.name)


def sharp_at(f, g, x, domain, codomain):
    """Evaluate g . f(g^-1 . x) through the arbitrary representative `g`."""
    return codomain.act(g, f(domain.act(domain.group.inverse(g), x)))


def flat(h):
    """
    The inverse bijection h -> h(e H, .), from G-equivariant maps G/H (x) X -> Y to H-equivariant maps
    R X -> R Y.

    Raises
    ------
    StructuralError
        if the domain of `h` is not a product G/H (x) X.
    """
    factors = h.domain.factors
    if factors is None or factors[0].coset_space is None:
        raise StructuralError('{h} is not defined on a product G/H (x) X.'.format(h=h))
    C, X = factors
    cs = C.coset_space
    e = cs.identity_coset()
    return restricted_map(lambda x: h((e, x)), cs.inclusion, X, h.codomain, name='flat(%s)' % h.name)


def precompose(fsharp, gamma):
    """
    The G-equivariant map x -> f#(gamma(x), x).

    Raises
    ------
    StructuralError
        if `gamma` is not a map from the X factor of `fsharp` into its coset factor.
    """
    factors = fsharp.domain.factors
    if factors is None:
        raise StructuralError('{f} is not defined on a product G/H (x) X.'.format(f=fsharp))
    C, X = factors
    if gamma.domain.carrier != X.carrier or gamma.domain.group != X.group:
        raise StructuralError('{g} is not defined on the G-set of {f}.'.format(g=gamma, f=fsharp))
    if gamma.codomain.carrier != C.carrier:
        raise StructuralError('{g} does not land in the coset space of {f}.'.format(g=gamma, f=fsharp))
    return EquivariantMap(X, fsharp.codomain, lambda x: fsharp((gamma(x), x)),
                          name='%s.gamma' % fsharp.name, exclusion=gamma.exclusion)


def symmetrize(f, gamma, cs=None, domain=None, codomain=None, check=True, random_state=None):
    """Deterministic symmetrisation.

    Turn an H-equivariant map into a G-equivariant one by canonicalisation,

        sym(f)(x) = h(x) . f(h(x)^-1 . x),    h = s o gamma,

    which agrees with `precompose(sharp(f, cs), gamma)`. Maps that are already G-equivariant are returned
    unchanged (pointwise).

    Parameters
    ----------
    f : EquivariantMap
        an H-equivariant map.

    gamma : GammaMap
        a G-equivariant map into G/H.

    cs : CosetSpace, optional
        the coset space; the default is the coset space of `gamma`.

    check : bool, optional
        spot-check the H-equivariance of `f`. The default is `True`.

    Returns
    -------
    EquivariantMap
        the G-equivariant map sym(f), equivariant outside the exclusion set of `gamma`.

    Examples
    --------
    >>> X = sign_gset()
    >>> gamma = sign_gamma(X)
    >>> f = restricted_map(lambda x: x + 1, gamma.coset_space.inclusion, X, X)
    >>> sym = symmetrize(f, gamma)
    >>> sym(np.array([2.0])), sym(np.array([-2.0]))
    (array([3.]), array([-3.]))
    """
    if cs is None:
        cs = gamma.coset_space
    elif gamma.coset_space.group != cs.group:
        raise StructuralError('gamma lands in a coset space of another group.')
    X, Y = _resolve_gsets(f, cs, domain, codomain)
    spot_check(f, check, random_state)
    G = cs.group

    def fn(x):
        h = cs.section(gamma(x))
        return Y._act(h, f(X._act(G._inverse(h), x)))

    return EquivariantMap(X, Y, fn, name='sym(%s)' % f.name, exclusion=gamma.exclusion)
