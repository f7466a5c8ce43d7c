"""
Named base maps and gamma maps, looked up by the command-line configs.
"""
import numpy as np
from ..core import groups as grp
from ..symmetrisation import gammas as gm
from ..symmetrisation.deterministic import EquivariantMap
from ..symmetrisation.stochastic import haar_gamma


class MapLibrary:

    def __init__(self):

        self._builders = {}

    def register_map(self, key, builder):

        self._builders[key] = builder

    def create(self, key, **kwargs):

        builder = self._builders.get(key)

        if not builder:
            raise ValueError(key)

        return builder(**kwargs)

    def get(self, key, **kwargs):

        return self.create(key, **kwargs)

    @property
    def keys(self):
        return sorted(self._builders)

    def __contains__(self, key):
        return key in self._builders


maps = MapLibrary()
gammas = MapLibrary()


def _real(x):
    return np.asarray(x, dtype=float)


def identity_map(domain, codomain=None):
    return EquivariantMap(domain, codomain or domain, lambda x: x, name='identity')


def shift_map(domain, codomain=None, offset=1.0):
    """x -> x + offset, coordinatewise."""
    return EquivariantMap(domain, codomain or domain, lambda x: _real(x) + offset, name='shift')


def scale_map(domain, codomain=None, factor=2.0):
    """x -> factor * x; equivariant for every linear action."""
    return EquivariantMap(domain, codomain or domain, lambda x: factor * _real(x), name='scale')


def square_map(domain, codomain=None):
    return EquivariantMap(domain, codomain or domain, lambda x: _real(x) ** 2, name='square')


def affine_map(domain, codomain=None, matrix=None, offset=None):
    """
    x -> x A^T + b, applied to a vector or to every row of a point cloud.

    Parameters
    ----------
    matrix : array-like, optional
        the d x d matrix A. The default is the identity.

    offset : array-like, optional
        the vector b. The default is 0.
    """
    A = None if matrix is None else _real(matrix)
    b = 0.0 if offset is None else _real(offset)

    def fn(x):
        x = _real(x)
        return (x if A is None else x @ A.T) + b

    return EquivariantMap(domain, codomain or domain, fn, name='affine')


def lookup_map(domain, codomain=None, values=()):
    """
    A function on a finite carrier given by its table of values, `values[i]` being the image of the i-th point.
    """
    codomain = codomain or domain
    points = domain.carrier.points()
    if len(values) != len(points):
        raise ValueError('a lookup map needs one value per point, got {v} for {n} points.'
                         .format(v=len(values), n=len(points)))
    image = [codomain.carrier.points()[int(v)] for v in values]
    return EquivariantMap(domain, codomain, lambda x: image[domain.carrier.index(x)], name='lookup')


def constant_map(domain, codomain=None, value=0.0):
    codomain = codomain or domain
    if codomain.carrier.is_finite:
        value = codomain.carrier.points()[int(value)]
    else:
        value = _real(value)
    return EquivariantMap(domain, codomain, lambda x: value, name='constant')


maps.register_map('identity', identity_map)
maps.register_map('shift', shift_map)
maps.register_map('scale', scale_map)
maps.register_map('double', lambda domain, codomain=None: scale_map(domain, codomain, factor=2.0))
maps.register_map('square', square_map)
maps.register_map('affine', affine_map)
maps.register_map('lookup', lookup_map)
maps.register_map('constant', constant_map)


def _table_gamma(X, cs, values=()):
    return gm.table_gamma(X, cs, [int(v) for v in values])


def _constant_gamma(X, cs, coset=None):
    return gm.constant_gamma(X, cs, coset)


gammas.register_map('sign', lambda X, cs: gm.sign_gamma(X, cs))
gammas.register_map('translation', lambda X, cs: gm.translation_gamma(X, cs))
gammas.register_map('centroid', lambda X, cs: gm.centroid_gamma(X, cs))
gammas.register_map('orbit', lambda X, cs: gm.orbit_gamma(X, cs))
gammas.register_map('pca', lambda X, cs, tolerance=1e-6: gm.pca_gamma(X, cs, tolerance))
gammas.register_map('table', _table_gamma)
gammas.register_map('constant', _constant_gamma)
gammas.register_map('haar', lambda X, cs: haar_gamma(X.group, X, cs))


def quotient(G, subgroup='trivial'):
    """
    The coset space of `G` by a named subgroup.

    Parameters
    ----------
    G : Group
        the group.

    subgroup : str or list, optional
        "trivial" ({e}), "full" (G itself), "rotations" (O(d) in E(d), or O(d) x K in E(d) x K), "right-factor"
        (H in K x H), or a list of generators of a subgroup of a finite group. The default is "trivial".

    Returns
    -------
    CosetSpace
    """
    if isinstance(subgroup, (list, tuple)):
        if not G.is_finite:
            raise ValueError('subgroups given by generators need a finite group.')
        H = grp.subgroup(G, [grp.payload_from_json(G, g) for g in subgroup])
        return grp.coset_space(G, H.inclusion)
    if subgroup == 'trivial':
        return grp.trivial_quotient(G)
    if subgroup == 'full':
        return grp.full_quotient(G)
    if subgroup == 'rotations':
        return grp.translation_quotient(G)
    if subgroup == 'right-factor':
        return grp.left_factor_quotient(G)
    raise ValueError('unknown subgroup: {s}'.format(s=subgroup))
