import numpy as np
import pytest
from sksym.core import groups as grp
from sksym.core import actions
from sksym.core.kernels import Kernel
from sksym.measures.equivariance import check_equivariance, check_kernel_equivariance_coupled
from sksym.models import point_cloud as pc
from sksym.symmetrisation.deterministic import EquivariantMap
from sksym.symmetrisation.pipeline import symmetrize_along
from sksym.utils import constants


class TestBaseMap:

    def setup_method(self):
        self.f = pc.base_point_cloud_map(5, seed=0)

    def test_permutation_equivariant(self):
        assert check_equivariance(self.f, random_state=0).passed

    def test_not_rotation_equivariant(self):
        X = actions.point_cloud_gset(grp.OrthogonalGroup(3), 5, 3)
        assert not check_equivariance(EquivariantMap(X, X, self.f.fn), random_state=0).passed

    def test_not_translation_equivariant(self):
        X = actions.point_cloud_gset(grp.TranslationGroup(3), 5, 3)
        assert not check_equivariance(EquivariantMap(X, X, self.f.fn), random_state=0).passed

    def test_seeded(self):
        x = np.random.default_rng(1).standard_normal((5, 3))
        assert np.array_equal(self.f(x), pc.base_point_cloud_map(5, seed=0)(x))
        assert not np.allclose(self.f(x), pc.base_point_cloud_map(5, seed=1)(x))

    def test_empty_cloud(self):
        with pytest.raises(ValueError):
            pc.base_point_cloud_map(0)


class TestPipeline:

    def test_stages(self):
        p = pc.point_cloud_pipeline(4)
        assert [s.name for s in p.stages] == ['rotation', 'translation']
        assert [s.kind for s in p.stages] == [constants.STOCHASTIC, constants.DETERMINISTIC]
        assert p.group == grp.ProductGroup(grp.EuclideanGroup(3), grp.SymmetricGroup(4))
        assert pc.point_cloud_pipeline(4, rotation=pc.PCA).stages[0].kind == constants.DETERMINISTIC

    def test_unknown_rotation_stage(self):
        with pytest.raises(ValueError):
            pc.point_cloud_pipeline(4, rotation='random')

    def test_translation_stage_alone(self):
        # a permutation- and rotation-equivariant map, made translation-equivariant by centring
        p = pc.point_cloud_pipeline(4)
        stage = p.stages[1]
        G1 = stage.phi.source
        X1 = actions.point_cloud_gset(G1, 4, 3)
        f = EquivariantMap(X1, X1, lambda x: x * np.linalg.norm(x, axis=1, keepdims=True), name='radial')
        assert check_equivariance(f, random_state=0).passed
        sym = symmetrize_along(stage.phi, f, stage.gamma, stage.coset_space, random_state=0)
        assert check_equivariance(sym, random_state=1).passed
        x = np.random.default_rng(2).standard_normal((4, 3))
        c = x.mean(axis=0)
        assert np.allclose(sym(x), f(x - c) + c)


def test_pca_demo_passes():
    report = pc.demo_point_cloud(n=5, seed=0, rotation=pc.PCA)
    assert report.passed
    assert {c.instance for c in report.checks} == {'base-permutation', 'equivariance-sampled'}


def test_haar_demo_passes():
    report = pc.demo_point_cloud(n=4, seed=0, n_samples=400, n_pairs=4, alpha=0.001)
    assert report.passed
    assert {c.instance for c in report.checks} == {'base-permutation', 'translation-coupled',
                                                   'permutation-coupled', 'rotation-statistical'}
    assert report.details['rotation'] == pc.HAAR


def test_haar_pipeline_output_is_a_kernel():
    p = pc.point_cloud_pipeline(4, seed=3)
    sym = pc.run_pipeline(p, random_state=0)
    assert isinstance(sym, Kernel)
    G = p.group
    S = G.right

    def permutations(rng):
        return ((np.eye(3), np.zeros(3)), S.random_element(rng))

    assert check_kernel_equivariance_coupled(sym, n_samples=20, random_state=0, element_sampler=permutations).passed
