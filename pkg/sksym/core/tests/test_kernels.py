import numpy as np
import pytest
from sksym.core import groups as grp
from sksym.core import actions
from sksym.core import kernels
from sksym.utils.exceptions import StructuralError, InvariantViolationError, UnsupportedModeError


class TestCategoryLaws:

    def setup_method(self):
        self.X = actions.natural_gset(grp.SymmetricGroup(3))
        self.Y = actions.natural_gset(grp.SymmetricGroup(3))
        self.rng = np.random.default_rng(7)

    def _random(self):
        return kernels.random_kernel(self.X, self.Y, random_state=self.rng)

    def test_identity_laws(self):
        identity = kernels.dirac(self.X)
        for _ in range(20):
            k = self._random()
            assert kernels.kernel_compose(k, identity).table == k.table
            assert kernels.kernel_compose(identity, k).table == k.table

    def test_associativity(self):
        for _ in range(20):
            k, m, n = self._random(), self._random(), self._random()
            left = kernels.kernel_compose(n, kernels.kernel_compose(m, k))
            right = kernels.kernel_compose(kernels.kernel_compose(n, m), k)
            assert np.max(np.abs(left.table.matrix - right.table.matrix)) <= 1e-12

    def test_composite_atoms_match_the_table(self):
        k, m = self._random(), self._random()
        km = kernels.kernel_compose(m, k)
        for x in self.X.carrier.points():
            points, weights = km.atoms(x)
            p = np.zeros(3)
            for z, w in zip(points, weights):
                p[z] += w
            assert np.allclose(p, km.table.row(x))

    def test_mismatched_carriers(self):
        k = self._random()
        other = kernels.dirac(actions.natural_gset(grp.SymmetricGroup(4)))
        with pytest.raises(StructuralError):
            kernels.kernel_compose(other, k)


def test_dirac_on_continuous_carrier():
    X = actions.sign_gset(2)
    k = kernels.dirac(X)
    x = np.array([0.5, -1.0])
    assert not k.has_table
    assert np.array_equal(k.sample(x, 0), x)
    points, weights = k.atoms(x)
    assert len(points) == 1 and weights[0] == 1.0


def test_from_function():
    X = actions.natural_gset(grp.CyclicGroup(4))
    k = kernels.from_function(lambda i: (i + 1) % 4, X, X)
    assert np.array_equal(k.table.matrix, np.roll(np.eye(4), 1, axis=1))
    assert k.sample(3, 0) == 0
    with pytest.raises(StructuralError):
        kernels.from_function(lambda i: i)


def test_pushforward_transports_atoms():
    X = actions.natural_gset(grp.SymmetricGroup(3))
    k = kernels.kernel_from_table(X, X, [[0.5, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    dist = kernels.pushforward((1, 2, 0), k, 0)
    # 0 -> 1 and 1 -> 2 under the 3-cycle
    assert np.allclose(dist.probabilities(), [0.0, 0.5, 0.5])


def test_pushforward_of_a_sampler_kernel():
    X = actions.sign_gset()
    k = kernels.gaussian_kernel(X, scale=0.0)
    dist = kernels.pushforward(1, k, np.array([2.0]))
    assert not dist.has_atoms
    assert np.allclose(dist.sample(0), [-2.0])


def test_group_average_satisfies_the_density_condition():
    X = actions.natural_gset(grp.DihedralGroup(4))
    rng = np.random.default_rng(3)
    for _ in range(5):
        avg = kernels.group_average(kernels.random_kernel(X, X, random_state=rng))
        p = avg.table.matrix
        for g in X.group.elements():
            for x in range(4):
                for y in range(4):
                    assert abs(p[X.act(g, x), X.act(g, y)] - p[x, y]) <= 1e-12


def test_group_average_needs_a_table():
    with pytest.raises(UnsupportedModeError):
        kernels.group_average(kernels.gaussian_kernel(actions.sign_gset()))


@pytest.mark.parametrize('matrix, error', [
    ([[0.5, 0.6], [0.5, 0.5]], InvariantViolationError),
    ([[1.5, -0.5], [0.5, 0.5]], InvariantViolationError),
    ([[np.nan, 1.0], [0.5, 0.5]], InvariantViolationError),
    ([0.5, 0.5], StructuralError),
])
def test_invalid_tables(matrix, error):
    with pytest.raises(error):
        kernels.FiniteTable(matrix)


def test_table_shape_must_match_the_carriers():
    X = actions.natural_gset(grp.SymmetricGroup(3))
    with pytest.raises(StructuralError):
        kernels.kernel_from_table(X, X, np.full((2, 3), 1.0 / 3))
    with pytest.raises(StructuralError):
        kernels.Kernel(actions.sign_gset(), actions.sign_gset(), table=[[1.0]])


def test_kernel_needs_a_representation():
    with pytest.raises(ValueError):
        kernels.Kernel(actions.sign_gset(), actions.sign_gset())


def test_sampler_only_kernel_has_no_atoms():
    k = kernels.gaussian_kernel(actions.sign_gset())
    with pytest.raises(UnsupportedModeError):
        k.atoms(np.array([0.0]))


def test_gaussian_kernel_moments():
    X = actions.point_cloud_gset(grp.SymmetricGroup(2), 2, 2)
    k = kernels.gaussian_kernel(X, covariance=[[4.0, 0.0], [0.0, 0.25]])
    x = np.array([[1.0, 2.0], [3.0, 4.0]])
    samples = np.array(k.sample_n(x, 4000, random_state=0))
    assert samples.shape == (4000, 2, 2)
    assert np.allclose(samples.mean(axis=0), x, atol=0.15)
    assert np.allclose(samples[:, 0, :].std(axis=0), [2.0, 0.5], atol=0.1)


def test_distribution_mean():
    X = actions.natural_gset(grp.CyclicGroup(3))
    k = kernels.uniform_kernel(X, X)
    assert np.allclose(k(0).mean(), np.full(3, 1.0 / 3))
    assert np.allclose(k(1).probabilities(), np.full(3, 1.0 / 3))
