import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sksym.core import groups as grp
from sksym.measures import statistics
from sksym.utils.exceptions import (StructuralError, InvariantViolationError, UnsupportedGroupError,
                                    InvalidInclusionError)


FINITE_GROUPS = [grp.CyclicGroup(1), grp.CyclicGroup(5), grp.SymmetricGroup(3), grp.DihedralGroup(4),
                 grp.ProductGroup(grp.CyclicGroup(2), grp.SymmetricGroup(3)),
                 grp.subgroup(grp.SymmetricGroup(4), [(1, 2, 3, 0)])]

CONTINUOUS_GROUPS = [grp.OrthogonalGroup(2), grp.OrthogonalGroup(3), grp.SpecialOrthogonalGroup(2),
                     grp.SpecialOrthogonalGroup(3), grp.TranslationGroup(2), grp.EuclideanGroup(3),
                     grp.ProductGroup(grp.EuclideanGroup(2), grp.SymmetricGroup(3))]


@pytest.mark.parametrize('G', FINITE_GROUPS)
def test_finite_group_axioms(G):
    assert grp.check_group_axioms(G)
    assert G.index(G.identity()) == 0


@pytest.mark.parametrize('G', CONTINUOUS_GROUPS)
def test_continuous_group_axioms(G):
    assert grp.check_group_axioms(G, random_state=0, n_samples=30)


@pytest.mark.parametrize('G, order', [(grp.CyclicGroup(5), 5), (grp.SymmetricGroup(3), 6),
                                      (grp.DihedralGroup(4), 8), (grp.SymmetricGroup(1), 1),
                                      (grp.ProductGroup(grp.CyclicGroup(2), grp.SymmetricGroup(3)), 12)])
def test_order(G, order):
    assert G.order == order
    assert len(G.elements()) == order


def test_symmetric_composition_is_function_composition():
    S = grp.SymmetricGroup(3)
    a, b = (1, 2, 0), (1, 0, 2)
    ab = grp.compose(S, a, b)
    assert ab == tuple(a[b[i]] for i in range(3))
    assert grp.compose(S, a, grp.inverse(S, a)) == S.identity()


def test_dihedral_reflections_are_involutions():
    D = grp.DihedralGroup(5)
    for a in D.elements():
        r, f = D.split(a)
        if f == 1:
            assert D.compose(a, a) == D.identity()
            assert D.inverse(a) == a
        else:
            assert D.inverse(a) == (-r) % 5


@given(st.integers(min_value=1, max_value=12), st.integers(), st.integers())
@settings(max_examples=50, deadline=None)
def test_cyclic_arithmetic(n, a, b):
    G = grp.CyclicGroup(n)
    a, b = a % n, b % n
    assert G.compose(a, b) == (a + b) % n
    assert G.compose(a, G.inverse(a)) == 0


@pytest.mark.parametrize('G, payload, error', [
    (grp.CyclicGroup(3), 3, StructuralError),
    (grp.CyclicGroup(3), 1.0, StructuralError),
    (grp.CyclicGroup(3), True, StructuralError),
    (grp.SymmetricGroup(3), (0, 0, 1), InvariantViolationError),
    (grp.SymmetricGroup(3), (0, 1), StructuralError),
    (grp.OrthogonalGroup(2), np.array([[1.0, 1.0], [0.0, 1.0]]), InvariantViolationError),
    (grp.OrthogonalGroup(2), np.eye(3), StructuralError),
    (grp.OrthogonalGroup(2), np.array([[np.nan, 0.0], [0.0, 1.0]]), InvariantViolationError),
    (grp.SpecialOrthogonalGroup(2), np.diag([1.0, -1.0]), InvariantViolationError),
    (grp.TranslationGroup(2), np.zeros(3), StructuralError),
])
def test_invalid_payloads(G, payload, error):
    with pytest.raises(error):
        G.validate(payload)
    with pytest.raises(error):
        G.compose(payload, G.identity())


def test_cross_group_payloads_are_rejected():
    # an element of S_3 is not an element of C_3
    with pytest.raises(StructuralError):
        grp.compose(grp.CyclicGroup(3), (1, 2, 0), 0)


@pytest.mark.parametrize('G', [grp.OrthogonalGroup(3), grp.SpecialOrthogonalGroup(3),
                               grp.SpecialOrthogonalGroup(4), grp.OrthogonalGroup(1)])
def test_haar_samples_are_valid(G):
    rng = np.random.default_rng(0)
    for _ in range(10):
        G.validate(grp.haar_sample(G, rng))


def test_haar_on_so3_is_reproducible():
    G = grp.SpecialOrthogonalGroup(3)
    a = grp.haar_sample(G, random_state=42)
    b = grp.haar_sample(G, random_state=42)
    assert np.array_equal(a, b)
    assert np.linalg.det(a) == pytest.approx(1.0)


def test_haar_mean_of_orthogonal_is_small():
    # E[Q] = 0 under the Haar measure of O(3)
    rng = np.random.default_rng(1)
    mean = np.mean([grp.haar_sample(grp.OrthogonalGroup(3), rng) for _ in range(4000)], axis=0)
    assert np.max(np.abs(mean)) < 0.05


@pytest.mark.parametrize('G', [grp.CyclicGroup(4), grp.SymmetricGroup(3), grp.DihedralGroup(3)])
def test_haar_on_finite_groups_is_uniform(G):
    n = 10000 * G.order
    rng = np.random.default_rng(0)
    counts = np.zeros(G.order)
    for _ in range(n):
        counts[G.index(grp.haar_sample(G, rng))] += 1
    assert statistics.chisquare_test(counts, np.full(G.order, 1.0 / G.order)) > 0.01
    assert np.all(np.abs(counts / n - 1.0 / G.order) < 0.01)


def test_haar_on_so3_has_no_preferred_direction():
    # the mean of R v vanishes under the Haar measure of SO(3)
    G = grp.SpecialOrthogonalGroup(3)
    rng = np.random.default_rng(2)
    v = np.array([0.0, 0.6, 0.8])
    mean = np.mean([grp.haar_sample(G, rng) @ v for _ in range(100000)], axis=0)
    assert np.linalg.norm(mean) <= 0.02


@pytest.mark.parametrize('G', [grp.TranslationGroup(2), grp.EuclideanGroup(3)])
def test_haar_on_noncompact_raises(G):
    with pytest.raises(UnsupportedGroupError):
        grp.haar_sample(G, 0)


def test_enumerating_continuous_group_raises():
    with pytest.raises(UnsupportedGroupError):
        grp.OrthogonalGroup(2).elements()


def test_euclidean_composition():
    E = grp.EuclideanGroup(2)
    q = grp.rotation_2d(np.pi / 2)
    a = (q, np.array([1.0, 0.0]))
    b = (np.eye(2), np.array([0.0, 2.0]))
    q_ab, t_ab = E.compose(a, b)
    assert np.allclose(q_ab, q)
    assert np.allclose(t_ab, q @ np.array([0.0, 2.0]) + np.array([1.0, 0.0]))
    assert E.equal(E.compose(a, E.inverse(a)), E.identity())


def test_subgroup_closure():
    H = grp.subgroup(grp.SymmetricGroup(4), [(1, 2, 3, 0)])
    assert H.order == 4
    assert H.elements()[0] == (0, 1, 2, 3)
    assert grp.subgroup(grp.CyclicGroup(4), [2]).elements() == [0, 2]
    with pytest.raises(StructuralError):
        H.validate((1, 0, 2, 3))


def test_product_index_rejects_non_members():
    G = grp.ProductGroup(grp.CyclicGroup(2), grp.SymmetricGroup(3))
    assert G.index((1, (0, 1, 2))) == 6
    for a in [(2, (0, 1, 2)), (0, (0, 1)), (0, 1, 2)]:
        with pytest.raises(StructuralError):
            G.index(a)


class TestHomomorphisms:

    def setup_method(self):
        self.phi = grp.symmetric_inclusion(2, 3)
        self.inject = grp.hom_inject_left(grp.CyclicGroup(3), grp.CyclicGroup(2))

    def test_symmetric_inclusion(self):
        assert self.phi((1, 0)) == (1, 0, 2)
        assert self.phi.is_injective()
        assert self.phi.check_law()

    def test_inject_left(self):
        assert self.inject(1) == (0, 1)
        assert self.inject.is_injective()
        assert self.inject.check_law()

    def test_image(self):
        image = self.phi.image()
        assert image.order == 2
        assert {image.key(h) for h in image.elements()} == {(0, 1, 2), (1, 0, 2)}

    def test_trivial_homomorphism_is_not_injective(self):
        phi = grp.trivial_homomorphism(grp.CyclicGroup(2), grp.CyclicGroup(3))
        assert phi.check_law()
        assert not phi.is_injective()

    def test_composition(self):
        psi = grp.symmetric_inclusion(3, 4)
        composite = grp.compose_homomorphisms(psi, self.phi)
        assert composite((1, 0)) == (1, 0, 2, 3)
        assert composite.is_injective()
        with pytest.raises(StructuralError):
            grp.compose_homomorphisms(self.phi, psi)

    def test_product_and_orthogonal_in_euclidean(self):
        phi = grp.product_homomorphism(grp.orthogonal_in_euclidean(2), grp.identity_homomorphism(grp.CyclicGroup(2)))
        assert phi.check_law(random_state=0, n_samples=10)
        (q, t), c = phi((grp.rotation_2d(0.3), 1))
        assert np.allclose(q, grp.rotation_2d(0.3)) and np.allclose(t, 0.0) and c == 1

    def test_non_homomorphism_fails_the_law(self):
        G = grp.CyclicGroup(4)
        phi = grp.Homomorphism(G, G, lambda g: (g + 1) % 4)
        assert not phi.check_law()


class TestCosetSpaces:

    def setup_method(self):
        self.G = grp.SymmetricGroup(3)
        self.cs = grp.coset_space(self.G, grp.symmetric_inclusion(2, 3))

    def test_partition(self):
        assert len(self.cs.cosets) == 3
        members = [self.cs.members(c) for c in self.cs.cosets]
        assert sorted(self.G.index(g) for m in members for g in m) == list(range(6))
        assert all(len(m) == 2 for m in members)

    def test_section_lies_in_its_coset(self):
        for c in self.cs.cosets:
            assert self.cs.coset_of(self.cs.section(c)) == c

    def test_coset_of_is_constant_on_cosets(self):
        H = grp.symmetric_inclusion(2, 3)
        for g in self.G.elements():
            for h in H.source.elements():
                assert self.cs.coset_of(self.G.compose(g, H(h))) == self.cs.coset_of(g)

    def test_action(self):
        # g . [g'] = [g g']
        for g in self.G.elements():
            for g2 in self.G.elements():
                assert grp.coset_act(self.cs, g, grp.coset_of(self.cs, g2)) == \
                    grp.coset_of(self.cs, self.G.compose(g, g2))

    def test_identity_coset(self):
        assert self.cs.identity_coset() == 0

    def test_trivial_and_full_quotients(self):
        assert len(grp.trivial_quotient(self.G).cosets) == 6
        assert len(grp.full_quotient(self.G).cosets) == 1

    def test_non_injective_inclusion_raises(self):
        phi = grp.trivial_homomorphism(grp.CyclicGroup(2), self.G)
        with pytest.raises(InvalidInclusionError):
            grp.coset_space(self.G, phi)

    def test_infinite_group_raises(self):
        with pytest.raises(UnsupportedGroupError):
            grp.coset_space(grp.OrthogonalGroup(2), grp.trivial_inclusion(grp.OrthogonalGroup(2)))

    def test_invalid_coset(self):
        with pytest.raises(StructuralError):
            self.cs.section(3)


class TestSymbolicQuotients:

    def test_translation_quotient(self):
        E = grp.EuclideanGroup(2)
        cs = grp.translation_quotient(E)
        g = (grp.rotation_2d(0.7), np.array([1.0, -2.0]))
        c = np.array([0.5, 0.5])
        assert np.allclose(cs.coset_of(g), [1.0, -2.0])
        assert np.allclose(cs.act(g, c), grp.rotation_2d(0.7) @ c + [1.0, -2.0])
        # the action agrees with [g s(c)]
        assert np.allclose(cs.act(g, c), cs.coset_of(E.compose(g, cs.section(c))))

    def test_left_factor_quotient(self):
        G = grp.ProductGroup(grp.OrthogonalGroup(2), grp.SymmetricGroup(3))
        cs = grp.left_factor_quotient(G)
        q = grp.rotation_2d(1.0)
        assert isinstance(cs, grp.LeftFactorQuotient)
        assert np.allclose(cs.coset_of((q, (1, 0, 2))), q)
        assert cs.section(q)[1] == (0, 1, 2)
        assert cs.inclusion.kind == 'left-factor-injection'

    def test_finite_left_factor_quotient(self):
        G = grp.ProductGroup(grp.CyclicGroup(3), grp.CyclicGroup(2))
        cs = grp.left_factor_quotient(G)
        assert len(cs.cosets) == 3
        assert cs.section(2) == (2, 0)
        with pytest.raises(StructuralError):
            cs.section(3)

    def test_translation_quotient_needs_euclidean(self):
        with pytest.raises(StructuralError):
            grp.translation_quotient(grp.OrthogonalGroup(2))


@pytest.mark.parametrize('G', FINITE_GROUPS + CONTINUOUS_GROUPS)
def test_descriptor_round_trip(G):
    assert grp.group_from_dict(G.to_dict()) == G


def test_unknown_descriptor():
    with pytest.raises(ValueError):
        grp.group_from_dict({'kind': 'lie'})
    with pytest.raises(ValueError):
        grp.group_from_dict({'kind': 'cyclic'})
