import numpy as np
import pytest
from sksym.core import groups as grp
from sksym.core import actions
from sksym.measures.equivariance import check_equivariance
from sksym.models import library
from sksym.symmetrisation import deterministic as det
from sksym.symmetrisation.gammas import sign_gamma, translation_gamma, constant_gamma, orbit_gamma
from sksym.utils import constants
from sksym.utils.exceptions import IllTypedInputError, StructuralError


class TestSharpOnNegation:

    def setup_method(self):
        self.X = actions.sign_gset()
        self.cs = grp.trivial_quotient(self.X.group)
        self.f = det.restricted_map(lambda x: x + 1, self.cs.inclusion, self.X, self.X, name='shift')
        self.fs = det.sharp(self.f, self.cs)

    def test_values(self):
        assert np.allclose(self.fs((0, np.array([2.0]))), [3.0])
        assert np.allclose(self.fs((1, np.array([2.0]))), [1.0])

    def test_sharp_is_equivariant(self):
        assert check_equivariance(self.fs, random_state=0).passed

    def test_flat_inverts_sharp(self):
        back = det.flat(self.fs)
        for x in np.linspace(-3.0, 3.0, 7):
            assert np.allclose(back(np.array([x])), [x + 1.0])

    def test_precompose_with_the_sign_gamma(self):
        m = det.precompose(self.fs, sign_gamma(self.X, self.cs))
        assert np.allclose(m(np.array([-2.0])), [-3.0])
        assert np.allclose(m(np.array([2.0])), [3.0])

    def test_precompose_rejects_a_foreign_gamma(self):
        with pytest.raises(StructuralError):
            det.precompose(self.fs, translation_gamma(actions.translation_gset(1)))

    def test_flat_needs_a_product(self):
        with pytest.raises(StructuralError):
            det.flat(det.EquivariantMap(self.X, self.X, lambda x: x))


FINITE_INSTANCES = [
    # (G-set, inclusion H -> G, H-equivariant function)
    (actions.natural_gset(grp.SymmetricGroup(3)), grp.symmetric_inclusion(2, 3), lambda i: [1, 0, 2][i]),
    (actions.natural_gset(grp.CyclicGroup(4)), grp.subgroup(grp.CyclicGroup(4), [2]).inclusion,
     lambda i: (i + 1) % 4),
    (actions.natural_gset(grp.DihedralGroup(3)), grp.trivial_inclusion(grp.DihedralGroup(3)),
     lambda i: [2, 2, 0][i]),
]


@pytest.mark.parametrize('X, phi, fn', FINITE_INSTANCES)
def test_sharp_and_flat_are_inverse(X, phi, fn):
    cs = grp.coset_space(X.group, phi)
    f = det.restricted_map(fn, phi, X, X)
    fs = det.sharp(f, cs)
    assert check_equivariance(fs).passed
    back = det.flat(fs)
    assert all(back(x) == f(x) for x in X.carrier.points())
    again = det.sharp(back, cs)
    assert all(again(cx) == fs(cx) for cx in fs.domain.carrier.points())


@pytest.mark.parametrize('X, phi, fn', FINITE_INSTANCES)
def test_sharp_does_not_depend_on_the_representative(X, phi, fn):
    cs = grp.coset_space(X.group, phi)
    f = det.restricted_map(fn, phi, X, X)
    fs = det.sharp(f, cs)
    for c in cs.cosets:
        for g in cs.members(c):
            for x in X.carrier.points():
                assert det.sharp_at(f, g, x, X, X) == fs((c, x))


LINEAR_MAPS = [('identity', {}), ('double', {}), ('scale', {'factor': -0.5}),
               ('affine', {'matrix': [[1.0, 2.0], [3.0, 4.0]]})]
TRANSLATION_MAPS = [('identity', {}), ('shift', {'offset': 1.5}), ('affine', {'offset': [1.0, -2.0]})]

STABLE_CASES = [
    ('sign', lambda: actions.sign_gset(2), 'trivial', LINEAR_MAPS),
    ('constant', lambda: actions.sign_gset(2), 'full', LINEAR_MAPS),
    ('translation', lambda: actions.translation_gset(2), 'trivial', TRANSLATION_MAPS),
    ('centroid', lambda: actions.point_cloud_gset(grp.TranslationGroup(2), 4, 2), 'trivial', TRANSLATION_MAPS),
    ('orbit', lambda: actions.natural_gset(grp.CyclicGroup(4)), [2],
     [('identity', {}), ('lookup', {'values': [1, 2, 3, 0]}), ('lookup', {'values': [2, 3, 0, 1]})]),
]


class TestSymmetrize:

    def test_negation(self):
        X = actions.sign_gset()
        gamma = sign_gamma(X)
        f = det.restricted_map(lambda x: x + 1, gamma.coset_space.inclusion, X, X)
        sym = det.symmetrize(f, gamma)
        assert np.allclose(sym(np.array([2.0])), [3.0])
        assert np.allclose(sym(np.array([-2.0])), [-3.0])
        assert check_equivariance(sym, random_state=0).passed

    def test_agrees_with_precompose_of_sharp(self):
        X = actions.sign_gset(2)
        gamma = sign_gamma(X)
        f = det.restricted_map(lambda x: x ** 2 + x, gamma.coset_space.inclusion, X, X)
        sym = det.symmetrize(f, gamma)
        other = det.precompose(det.sharp(f, gamma.coset_space), gamma)
        rng = np.random.default_rng(0)
        for _ in range(20):
            x = rng.standard_normal(2)
            assert np.allclose(sym(x), other(x))

    def test_translation_canonicalises_to_the_origin(self):
        X = actions.translation_gset(1)
        gamma = translation_gamma(X)
        f = det.restricted_map(lambda x: x ** 2, gamma.coset_space.inclusion, X, X)
        sym = det.symmetrize(f, gamma)
        for x in (-1.0, 0.0, 2.5):
            assert np.allclose(sym(np.array([x])), [x])
        assert check_equivariance(sym, random_state=0).passed

    def test_equivariant_maps_are_stable(self):
        X = actions.sign_gset()
        double = det.EquivariantMap(X, X, lambda x: 2 * x, name='double')
        full = grp.full_quotient(X.group)
        for sym in (det.symmetrize(double, constant_gamma(X, full)), det.symmetrize(double, sign_gamma(X))):
            for x in (-1.5, 0.0, 4.0):
                assert np.allclose(sym(np.array([x])), [2 * x])

    @pytest.mark.parametrize('gamma, make_gset, subgroup, maps_and_params', STABLE_CASES)
    def test_every_gamma_leaves_equivariant_maps_unchanged(self, gamma, make_gset, subgroup, maps_and_params):
        X = make_gset()
        cs = library.quotient(X.group, subgroup)
        canonicalise = library.gammas.create(gamma, X=X, cs=cs)
        rng = np.random.default_rng(0)
        points = X.carrier.points() if X.carrier.is_finite else [X.carrier.sample(rng) for _ in range(10)]
        for name, params in maps_and_params:
            f = library.maps.create(name, domain=X, **params)
            sym = det.symmetrize(f, canonicalise, random_state=0)
            for x in points:
                assert X.carrier.distance(sym(x), f(x)) <= 1e-9

    def test_finite_symmetrisation_is_equivariant(self):
        X = actions.natural_gset(grp.SymmetricGroup(3))
        phi = grp.symmetric_inclusion(2, 3)
        cs = grp.coset_space(X.group, phi)
        f = det.restricted_map(lambda i: [1, 0, 2][i], phi, X, X)
        sym = det.symmetrize(f, orbit_gamma(X, cs))
        report = check_equivariance(sym)
        assert report.passed
        assert report.mode == constants.EXHAUSTIVE

    def test_ill_typed_input_is_rejected(self):
        X = actions.sign_gset()
        f = det.EquivariantMap(X, X, lambda x: x + 1, name='shift')
        gamma = constant_gamma(X, grp.full_quotient(X.group))
        with pytest.raises(IllTypedInputError):
            det.symmetrize(f, gamma, random_state=0)
        # without the spot-check the result is simply not equivariant
        sym = det.symmetrize(f, gamma, check=False)
        assert not check_equivariance(sym, random_state=0).passed

    def test_wrong_subgroup(self):
        X = actions.natural_gset(grp.SymmetricGroup(3))
        cs = grp.coset_space(X.group, grp.symmetric_inclusion(2, 3))
        other = grp.subgroup(X.group, [(1, 2, 0)])
        f = det.restricted_map(lambda i: i, other.inclusion, X, X)
        with pytest.raises(StructuralError):
            det.symmetrize(f, orbit_gamma(X, cs))


def test_gamma_frame():
    X = actions.sign_gset()
    gamma = sign_gamma(X)
    assert gamma.frame(np.array([-1.0])) == 1
    assert gamma.frame(np.array([1.0])) == 0
