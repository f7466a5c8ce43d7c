__version__ = '0.1.0'

from .core.groups import (CyclicGroup, SymmetricGroup, DihedralGroup, OrthogonalGroup, SpecialOrthogonalGroup,
                          TranslationGroup, EuclideanGroup, ProductGroup, Homomorphism, coset_space)
from .core.actions import GSet, restrict, point_cloud_gset
from .core.kernels import Kernel, FiniteTable
from .core.report import AuditReport
from .symmetrisation.deterministic import EquivariantMap, GammaMap, symmetrize
from .symmetrisation.stochastic import GammaKernel, stochastic_symmetrize, average
from .symmetrisation.pipeline import SymStage, SymPipeline, symmetrize_along, run_pipeline
