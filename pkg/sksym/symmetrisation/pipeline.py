import logging
from ..core import groups as grp
from ..core.actions import restrict
from ..core.kernels import Kernel
from ..utils import constants, utils
from ..utils.exceptions import StructuralError, UnsupportedHomomorphismError
from .deterministic import EquivariantMap, GammaMap, symmetrize
from .stochastic import GammaKernel, stochastic_symmetrize

logger = logging.getLogger(__name__)


def _same_image(phi, inclusion, random_state=None, n_samples=constants.SPOT_CHECK_SAMPLES):
    """Whether two injective homomorphisms into the same group have the same image."""
    G = phi.target
    if inclusion.target != G:
        return False
    if G.is_finite:
        image = {G.key(phi(h)) for h in phi.source.elements()}
        return image == {G.key(inclusion(h)) for h in inclusion.source.elements()}
    if phi.source != inclusion.source:
        return False
    rng = utils.check_random_state(random_state)
    for _ in range(n_samples):
        h = phi.source.random_element(rng)
        if G.distance(phi(h), inclusion(h)) > constants.EPS_NUM:
            return False
    return True


def default_coset_space(phi):
    """
    The quotient of phi.target by the image of phi: enumerated for finite targets, symbolic for the
    left-factor injection and for the inclusion of rotations into Euclidean groups.
    """
    G = phi.target
    if G.is_finite:
        return grp.coset_space(G, phi.image().inclusion)
    if phi.kind == constants.LEFT_FACTOR_INJECTION:
        return grp.left_factor_quotient(G)
    if isinstance(G, grp.EuclideanGroup) or (isinstance(G, grp.ProductGroup) and isinstance(G.left,
                                                                                         grp.EuclideanGroup)):
        return grp.translation_quotient(G)
    if phi.source == G:
        return grp.full_quotient(G)
    raise UnsupportedHomomorphismError('no quotient of {g} by the image of {phi} is available; pass one.'
                                       .format(g=G, phi=phi))


def _retype(obj, cs, X, Y):
    if isinstance(obj, Kernel):
        return Kernel(restrict(cs.inclusion, X), restrict(cs.inclusion, Y), sampler=obj.sample,
                      table=obj.table, atoms=obj.atoms if obj.has_atoms else None, name=obj.name)
    return EquivariantMap(restrict(cs.inclusion, X), restrict(cs.inclusion, Y), obj.fn, name=obj.name,
                          exclusion=obj.exclusion)


def symmetrize_along(phi, obj, gamma, cs=None, domain=None, codomain=None, check=True, random_state=None):
    """Symmetrisation along a homomorphism.

    Upgrade a map or kernel that is equivariant for the restricted actions R_phi X -> R_phi Y to a
    phi.target-equivariant one, by quotienting phi.target by the image of phi.

    Parameters
    ----------
    phi : Homomorphism
        an injective homomorphism H -> G.

    obj : EquivariantMap or Kernel
        the H-equivariant input, typed over H.

    gamma : GammaMap or GammaKernel
        a G-equivariant map or kernel into G/phi(H).

    cs : CosetSpace, optional
        the coset space G/phi(H). The default is the coset space of `gamma`.

    domain, codomain : GSet, optional
        the G-sets X and Y. The default is the domain of `gamma` for both.

    Returns
    -------
    EquivariantMap or Kernel
        deterministic when both `obj` and `gamma` are, a kernel otherwise.

    Raises
    ------
    UnsupportedHomomorphismError
        if `phi` is not injective.
    StructuralError
        if `obj` is not typed over phi.source, or `cs` does not quotient by the image of `phi`.
    """
    if not phi.is_injective():
        raise UnsupportedHomomorphismError('{phi} is not injective; only injective homomorphisms are supported.'
                                           .format(phi=phi))
    if obj.domain.group != phi.source:
        raise StructuralError('{o} is typed over {h}, expected {s}.'.format(o=obj.name, h=obj.domain.group,
                                                                             s=phi.source))
    if cs is None:
        cs = gamma.coset_space
    if cs.group != phi.target:
        raise StructuralError('{cs} is not a quotient of {g}.'.format(cs=cs, g=phi.target))
    if not _same_image(phi, cs.inclusion, random_state):
        raise StructuralError('the coset space does not quotient by the image of {phi}.'.format(phi=phi))
    X = domain if domain is not None else gamma.domain
    Y = codomain if codomain is not None else X
    typed = _retype(obj, cs, X, Y)
    logger.info('symmetrising %s along %s', obj.name, phi.name)
    if isinstance(typed, EquivariantMap) and isinstance(gamma, GammaMap):
        return symmetrize(typed, gamma, cs, check=check, random_state=random_state)
    return stochastic_symmetrize(typed, gamma, cs, check=check, random_state=random_state)


class SymStage:
    """SymStage.

    One step of a symmetrisation pipeline: symmetrise along `phi` with `gamma`.

    Parameters
    ----------
    phi : Homomorphism
        the injective homomorphism H -> G.

    gamma : GammaMap or GammaKernel
        a G-equivariant gamma into G/phi(H).

    cs : CosetSpace, optional
        the coset space; the default is the coset space of `gamma`.

    domain, codomain : GSet, optional
        the G-sets the stage output is typed over. The default is the domain of `gamma` for both.

    check : bool, optional
        spot-check the stage input. The default is `True`.
    """

    def __init__(self, phi, gamma, cs=None, domain=None, codomain=None, check=True, name=None):
        if cs is None:
            cs = gamma.coset_space
        if gamma.domain.group != phi.target:
            raise StructuralError('gamma is equivariant for {a}, the stage targets {b}.'
                                  .format(a=gamma.domain.group, b=phi.target))
        if cs.group != phi.target:
            raise StructuralError('{cs} is not a quotient of {g}.'.format(cs=cs, g=phi.target))
        self._phi = phi
        self._gamma = gamma
        self._cs = cs
        self._domain = domain if domain is not None else gamma.domain
        self._codomain = codomain if codomain is not None else self._domain
        self._check = check
        self._name = name or phi.name

    @property
    def phi(self):
        return self._phi

    @property
    def gamma(self):
        return self._gamma

    @property
    def coset_space(self):
        return self._cs

    @property
    def domain(self):
        return self._domain

    @property
    def codomain(self):
        return self._codomain

    @property
    def check(self):
        return self._check

    @property
    def name(self):
        return self._name

    @property
    def kind(self):
        return constants.STOCHASTIC if isinstance(self._gamma, GammaKernel) else constants.DETERMINISTIC

    def apply(self, obj, random_state=None):
        return symmetrize_along(self._phi, obj, self._gamma, self._cs, self._domain, self._codomain,
                                check=self._check, random_state=random_state)

    def __repr__(self):
        return 'SymStage({n}: {s} -> {t}, {k})'.format(n=self._name, s=self._phi.source, t=self._phi.target,
                                                      k=self.kind)


class SymPipeline:
    """SymPipeline.

    A base map or kernel followed by symmetrisation stages along a chain of homomorphisms
    H_0 -> H_1 -> ... -> H_k. The chain is validated at construction.

    Raises
    ------
    StructuralError
        if the base is not typed over the source of the first stage, adjacent stages do not compose, or a stage
        changes the carriers.
    """

    def __init__(self, base, stages=(), name=None):
        stages = list(stages)
        group, X, Y = base.domain.group, base.domain.carrier, base.codomain.carrier
        for i, stage in enumerate(stages):
            if stage.phi.source != group:
                raise StructuralError('stage {i} ({s}) expects {a}, the chain provides {b}.'
                                      .format(i=i, s=stage.name, a=stage.phi.source, b=group))
            if stage.domain.carrier != X or stage.codomain.carrier != Y:
                raise StructuralError('stage {i} ({s}) changes the carriers.'.format(i=i, s=stage.name))
            group = stage.phi.target
        self._base = base
        self._stages = stages
        self._name = name or 'pipeline'

    @property
    def base(self):
        return self._base

    @property
    def stages(self):
        return list(self._stages)

    @property
    def name(self):
        return self._name

    @property
    def group(self):
        """The group the pipeline output is equivariant for."""
        return self._stages[-1].phi.target if self._stages else self._base.domain.group


def run_pipeline(p, random_state=None):
    """
    Fold `symmetrize_along` over the stages of `p`, starting from its base.

    Returns
    -------
    EquivariantMap or Kernel
        equivariant for `p.group`; the base itself for an empty pipeline.
    """
    seeds = utils.spawn_seeds(utils.seed_of(random_state), max(len(p.stages), 1))
    obj = p.base
    for stage, seed in zip(p.stages, seeds):
        logger.info('stage %s (%s)', stage.name, stage.kind)
        obj = stage.apply(obj, random_state=seed)
    return obj
