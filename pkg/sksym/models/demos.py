"""
Demonstrations runnable by name from the command line (`sksym demo <name>`).

Each demo takes a seed and returns an `AuditReport`.
"""
from abc import ABC, abstractmethod
import numpy as np
from ..core import groups as grp
from ..core.actions import sign_gset, translation_gset, natural_gset, restrict
from ..core.kernels import Kernel
from ..core.report import AuditReport, merge
from ..measures.equivariance import check_equivariance, check_kernel_equivariance_exact
from ..symmetrisation.deterministic import restricted_map, symmetrize
from ..symmetrisation.gammas import orbit_gamma, sign_gamma, translation_gamma
from ..symmetrisation.stochastic import average, haar_gamma, stochastic_symmetrize
from ..utils import constants, utils
from .library import maps
from .point_cloud import demo_point_cloud


class Demos:

    def __init__(self):

        self._demos = {}

    def register_demo(self, key, demo):

        self._demos[key] = demo

    def create(self, key, **kwargs):

        demo = self._demos.get(key)

        if not demo:
            raise ValueError(key)

        return demo(**kwargs)

    def get(self, key, **kwargs):

        return self.create(key, **kwargs)

    def describe(self):
        """(name, one-line description) of every registered demo, sorted by name."""
        return [(key, self._demos[key].description) for key in sorted(self._demos)]


demos = Demos()


class Demo(ABC):

    description = ''

    @abstractmethod
    def __call__(self, seed=0, **kwargs):
        pass


class NegationDemo(Demo):

    description = 'C_2 negating R: canonicalise x -> x + 1 by the sign of x'

    def __call__(self, seed=0, **kwargs):
        X = sign_gset()
        gamma = sign_gamma(X)
        f = maps.create('shift', domain=restrict(gamma.coset_space.inclusion, X), offset=1.0)
        sym = symmetrize(f, gamma, random_state=seed)
        seeds = utils.spawn_seeds(seed, 2)
        reports = [check_equivariance(sym, mode=constants.SAMPLED, random_state=seeds[0], name='symmetrized'),
                   _values('values', sym, [2.0, -2.0], [3.0, -3.0])]
        return merge('negation', reports, seed=seed)


class TranslationDemo(Demo):

    description = 'T(1) acting on R: canonicalise x -> x^2 to the origin'

    def __call__(self, seed=0, **kwargs):
        X = translation_gset(1)
        gamma = translation_gamma(X)
        f = maps.create('square', domain=restrict(gamma.coset_space.inclusion, X))
        sym = symmetrize(f, gamma, random_state=seed)
        reports = [check_equivariance(sym, mode=constants.SAMPLED, random_state=seed, name='symmetrized'),
                   _values('values', sym, [-1.0, 0.0, 2.5], [-1.0, 0.0, 2.5])]
        return merge('translation', reports, seed=seed)


class AveragingDemo(Demo):

    description = 'C_2 negating R: exact average of (delta_{x-1} + delta_{x+1}) / 2 after Haar symmetrisation'

    def __call__(self, seed=0, **kwargs):
        X = sign_gset()
        G = X.group
        cs = grp.trivial_quotient(G)
        R = restrict(cs.inclusion, X)
        k = Kernel(R, R, atoms=lambda x: ([x - 1.0, x + 1.0], [0.5, 0.5]), name='walk')
        sym = stochastic_symmetrize(k, haar_gamma(G, X, cs), cs, random_state=seed)
        ave = average(sym)
        reports = [check_equivariance(ave, mode=constants.SAMPLED, random_state=seed, name='averaged'),
                   _values('values', ave, [-1.5, 0.0, 0.3], [-1.5, 0.0, 0.3])]
        return merge('averaging', reports, seed=seed)


class SwapDemo(Demo):

    description = 'S_3 on 3 points: Haar symmetrisation of an S_2-equivariant exact kernel'

    def __call__(self, seed=0, **kwargs):
        G = grp.SymmetricGroup(3)
        X = natural_gset(G)
        inclusion = grp.symmetric_inclusion(2, 3)
        cs = grp.coset_space(G, inclusion)
        R = restrict(inclusion, X)
        # S_2 swaps 0 and 1 and fixes 2
        k = Kernel(R, R, table=[[0.6, 0.2, 0.2], [0.2, 0.6, 0.2], [0.25, 0.25, 0.5]], name='swap')
        sym = stochastic_symmetrize(k, haar_gamma(G, X, cs), cs, random_state=seed)
        f = restricted_map(lambda i: i, inclusion, X, X, name='identity')
        reports = [check_kernel_equivariance_exact(sym, name='symmetrized-kernel'),
                   check_equivariance(symmetrize(f, orbit_gamma(X, cs)), name='symmetrized-identity')]
        return merge('swap', reports, seed=seed)


class PointCloudDemo(Demo):

    def __init__(self, rotation='haar'):
        self._rotation = rotation
        self.description = 'S_n -> O(3) x S_n -> E(3) x S_n on point clouds (%s rotation stage)' % rotation

    def __call__(self, seed=0, n=5, n_jobs=1, show_progress=False, **kwargs):
        return demo_point_cloud(n=n, seed=seed, rotation=self._rotation, n_jobs=n_jobs,
                                show_progress=show_progress, **kwargs)


def _values(name, f, inputs, expected):
    rows = []
    for x, y in zip(inputs, expected):
        got = f(np.array([x]))
        rows.append({'x': x, 'expected': y, 'value': got, constants.MAX_VIOLATION: utils.max_abs_diff(got, [y])})
    max_violation = max(r[constants.MAX_VIOLATION] for r in rows)
    passed = max_violation <= constants.EPS_NUM
    return AuditReport(name, constants.EXACT, passed, max_violation=max_violation,
                       witnesses=[r for r in rows if r[constants.MAX_VIOLATION] > constants.EPS_NUM],
                       n_checks=len(rows))


# Register the demos
demos.register_demo('negation', NegationDemo())
demos.register_demo('translation', TranslationDemo())
demos.register_demo('averaging', AveragingDemo())
demos.register_demo('swap', SwapDemo())
demos.register_demo('point-cloud', PointCloudDemo('haar'))
demos.register_demo('point-cloud-pca', PointCloudDemo('pca'))
