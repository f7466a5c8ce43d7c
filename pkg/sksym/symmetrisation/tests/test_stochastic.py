import numpy as np
import pytest
from sksym.core import groups as grp
from sksym.core import actions
from sksym.core.kernels import Kernel, from_function, gaussian_kernel, group_average, random_kernel
from sksym.measures.equivariance import (check_equivariance, check_kernel_equivariance_exact,
                                         check_kernel_equivariance_statistical, check_kernel_equivariance_support,
                                         check_sampler_agreement)
from sksym.symmetrisation import stochastic as st
from sksym.symmetrisation.deterministic import restricted_map, symmetrize
from sksym.symmetrisation.gammas import orbit_gamma, translation_gamma
from sksym.utils import constants
from sksym.utils.exceptions import (IllTypedInputError, NonlinearActionError, UnsupportedGroupError,
                                    UnsupportedModeError)


class TestSwap:

    def setup_method(self):
        self.G = grp.SymmetricGroup(3)
        self.X = actions.natural_gset(self.G)
        self.phi = grp.symmetric_inclusion(2, 3)
        self.cs = grp.coset_space(self.G, self.phi)
        self.R = actions.restrict(self.phi, self.X)
        self.k = Kernel(self.R, self.R, table=[[0.6, 0.2, 0.2], [0.2, 0.6, 0.2], [0.25, 0.25, 0.5]], name='swap')

    def test_haar_gamma_table(self):
        gamma = st.haar_gamma(self.G, self.X, self.cs)
        assert np.allclose(gamma.table.matrix, np.full((3, 3), 1.0 / 3))
        assert check_kernel_equivariance_exact(gamma).passed

    def test_symmetrised_table_is_equivariant(self):
        sym = st.stochastic_symmetrize(self.k, st.haar_gamma(self.G, self.X, self.cs))
        assert sym.has_table
        assert np.allclose(sym.table.matrix.sum(axis=1), 1.0)
        assert check_kernel_equivariance_exact(sym).passed

    def test_symmetrised_atoms_match_the_table(self):
        sym = st.stochastic_symmetrize(self.k, st.haar_gamma(self.G, self.X, self.cs))
        for x in range(3):
            points, weights = sym.atoms(x)
            p = np.zeros(3)
            for y, w in zip(points, weights):
                p[y] += w
            assert np.allclose(p, sym.table.row(x))

    def test_deterministic_gamma_collapses_to_symmetrize(self):
        f = restricted_map(lambda i: [1, 0, 2][i], self.phi, self.X, self.X)
        gamma = orbit_gamma(self.X, self.cs)
        sym = st.stochastic_symmetrize(f, gamma)
        expected = from_function(symmetrize(f, gamma))
        assert sym.table == expected.table

    def test_equivariant_kernel_is_stable(self):
        lazy = Kernel(self.R, self.R, table=[[0.6, 0.2, 0.2], [0.2, 0.6, 0.2], [0.2, 0.2, 0.6]], name='lazy')
        sym = st.stochastic_symmetrize(lazy, st.haar_gamma(self.G, self.X, self.cs))
        assert sym.table == lazy.table

    def test_ill_typed_kernel(self):
        k = random_kernel(self.R, self.R, random_state=0)
        with pytest.raises(IllTypedInputError):
            st.stochastic_symmetrize(k, st.haar_gamma(self.G, self.X, self.cs))

    def test_average_on_a_finite_codomain(self):
        sym = st.stochastic_symmetrize(self.k, st.haar_gamma(self.G, self.X, self.cs))
        ave = st.average(sym)
        assert np.allclose(ave(0), sym.table.row(0))
        assert check_equivariance(ave).passed


class TestWalk:

    def setup_method(self):
        self.X = actions.sign_gset()
        self.G = self.X.group
        self.cs = grp.trivial_quotient(self.G)
        R = actions.restrict(self.cs.inclusion, self.X)
        self.k = Kernel(R, R, atoms=lambda x: ([x - 1.0, x + 1.0], [0.5, 0.5]), name='walk')
        self.sym = st.stochastic_symmetrize(self.k, st.haar_gamma(self.G, self.X, self.cs))

    def test_support_equivariance(self):
        assert check_kernel_equivariance_support(self.sym, random_state=0).passed

    def test_exact_average_is_the_identity(self):
        ave = st.average(self.sym)
        for x in (-1.5, 0.0, 0.3):
            assert np.allclose(ave(np.array([x])), [x])

    def test_monte_carlo_average(self):
        n = 400
        within = 0
        for seed in range(100):
            ave = st.average(self.sym, mode=constants.MONTE_CARLO, n_samples=n, random_state=seed)
            # the walk has unit variance
            within += all(abs(ave(np.array([x]))[0] - x) <= constants.MC_TOLERANCE / np.sqrt(n)
                          for x in (-1.5, 0.0, 0.3))
        assert within >= 99

    def test_average_symmetrized(self):
        ave = st.average_symmetrized(self.k, st.haar_gamma(self.G, self.X, self.cs))
        assert check_equivariance(ave, random_state=0).passed

    def test_exact_average_needs_atoms(self):
        with pytest.raises(UnsupportedModeError):
            st.average(gaussian_kernel(self.X))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            st.average(self.sym, mode='median')


def test_nonlinear_codomain_is_rejected():
    X = actions.translation_gset(1)
    gamma = translation_gamma(X)
    R = actions.restrict(gamma.coset_space.inclusion, X)
    k = Kernel(R, R, atoms=lambda x: ([x - 1.0, x + 1.0], [0.5, 0.5]))
    with pytest.raises(NonlinearActionError):
        st.average_symmetrized(k, gamma)


def test_haar_gamma_on_a_noncompact_group():
    X = actions.translation_gset(2)
    with pytest.raises(UnsupportedGroupError):
        st.haar_gamma(X.group, X)


def test_haar_gamma_on_rotations():
    X = actions.matrix_gset(grp.OrthogonalGroup(3))
    gamma = st.haar_gamma(X.group, X)
    q = gamma.sample(np.ones(3), random_state=0)
    X.group.validate(q)
    assert not gamma.has_atoms


def test_embedded_average():
    X = actions.natural_gset(grp.CyclicGroup(3))
    k = Kernel(X, X, table=np.full((3, 3), 1.0 / 3))
    embedding = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
    ave = st.average(k, embedding=embedding)
    assert np.allclose(ave(0), [1.0 / 3, 1.0 / 3])
    assert check_equivariance(ave).passed


def test_average_along_a_dependent_embedding():
    X = actions.natural_gset(grp.CyclicGroup(3))
    k = Kernel(X, X, table=np.full((3, 3), 1.0 / 3))
    ave = st.average(k, embedding=[0.0, 1.0, 2.0])
    assert np.allclose(ave(0), [1.0])
    assert np.allclose(ave(2), [1.0])


def test_symmetrized_average_needs_an_independent_embedding():
    X = actions.natural_gset(grp.CyclicGroup(3))
    cs = grp.trivial_quotient(X.group)
    R = actions.restrict(cs.inclusion, X)
    k = Kernel(R, R, table=np.full((3, 3), 1.0 / 3))
    with pytest.raises(UnsupportedModeError):
        st.average_symmetrized(k, st.haar_gamma(X.group, X, cs), embedding=[0.0, 1.0, 2.0])
    ave = st.average_symmetrized(k, st.haar_gamma(X.group, X, cs), embedding=[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert check_equivariance(ave).passed


def _averaged_kernel(G, inclusion, seed):
    X = actions.natural_gset(G)
    R = actions.restrict(inclusion, X)
    return X, group_average(random_kernel(R, R, random_state=seed))


def _swap():
    G = grp.SymmetricGroup(3)
    X = actions.natural_gset(G)
    cs = grp.coset_space(G, grp.symmetric_inclusion(2, 3))
    R = actions.restrict(cs.inclusion, X)
    k = Kernel(R, R, table=[[0.6, 0.2, 0.2], [0.2, 0.6, 0.2], [0.25, 0.25, 0.5]])
    return k, st.haar_gamma(G, X, cs)


def _point_mass():
    # C_2 swapping two points, k = delta_0 whatever the input
    G = grp.CyclicGroup(2)
    X = actions.natural_gset(G)
    cs = grp.trivial_quotient(G)
    R = actions.restrict(cs.inclusion, X)
    return Kernel(R, R, table=[[1.0, 0.0], [1.0, 0.0]]), st.haar_gamma(G, X, cs)


def _reflection_in_d4():
    G = grp.DihedralGroup(4)
    cs = grp.coset_space(G, grp.subgroup(G, [4]).inclusion)
    X, k = _averaged_kernel(G, cs.inclusion, 3)
    return k, st.haar_gamma(G, X, cs)


def _orbit_in_s4():
    G = grp.SymmetricGroup(4)
    cs = grp.coset_space(G, grp.symmetric_inclusion(3, 4))
    X, k = _averaged_kernel(G, cs.inclusion, 4)
    return k, orbit_gamma(X, cs)


@pytest.mark.parametrize('configuration', [_swap, _point_mass, _reflection_in_d4, _orbit_in_s4])
def test_exact_symmetrisation_is_equivariant(configuration):
    k, gamma = configuration()
    sym = st.stochastic_symmetrize(k, gamma)
    assert sym.has_table
    assert np.allclose(sym.table.matrix.sum(axis=1), 1.0)
    report = check_kernel_equivariance_exact(sym)
    assert report.passed
    assert report.max_violation <= 1e-12


def test_point_mass_is_spread_over_the_orbit():
    k, gamma = _point_mass()
    assert np.allclose(st.stochastic_symmetrize(k, gamma).table.matrix, 0.5)


def test_sampler_agrees_with_the_table():
    k, gamma = _swap()
    sym = st.stochastic_symmetrize(k, gamma)
    assert check_sampler_agreement(sym, n_samples=100000, alpha=0.01, random_state=0).passed


def test_input_independent_kernel_gives_haar_randomised_output():
    G = grp.SymmetricGroup(3)
    X = actions.natural_gset(G)
    cs = grp.trivial_quotient(G)
    R = actions.restrict(cs.inclusion, X)
    p = np.array([0.7, 0.2, 0.1])
    k = Kernel(R, R, table=np.tile(p, (3, 1)))
    row = st.stochastic_symmetrize(k, st.haar_gamma(G, X, cs)).table.row(0)
    # the law of g.Y with g uniform on S_3 is invariant under every permutation
    for g in G.elements():
        moved = np.zeros(3)
        moved[[X.act(g, y) for y in range(3)]] = row
        assert np.allclose(moved, row)
    assert np.allclose(row, 1.0 / 3)


def test_haar_rotation_symmetrisation_passes_the_statistical_audit():
    X = actions.matrix_gset(grp.SpecialOrthogonalGroup(3))
    G = X.group
    cs = grp.trivial_quotient(G)
    R = actions.restrict(cs.inclusion, X)
    k = gaussian_kernel(R, covariance=np.diag([9.0, 0.01, 0.01]))
    sym = st.stochastic_symmetrize(k, st.haar_gamma(G, X, cs))
    report = check_kernel_equivariance_statistical(sym, n_samples=5000, n_pairs=3, alpha=0.01, random_state=0)
    assert report.passed
