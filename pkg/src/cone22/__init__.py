"""Pseudoconformal CO(2,2) structures: Weyl tensors, principal isotropic
directions and lightlike hypersurface invariants."""
from .core import (
    DEFAULT_TOL, INF, Bivector, Metric22, alpha_generator, beta_generator,
    bivector_from_vectors, intersection_point_B, is_isotropic, quadratic_form,
    scalar_product, tangent_3space_normal,
)
from .principal import BinaryQuartic, RootSet, discriminant, mobius_transform, projective_roots
from .weyl import (
    FullWeyl, WeylTensor, alpha_quartic, beta_quartic, classify_structure,
    extract, reconstruct_full, relative_curvature, validate_full,
)
from .hypersurface import (
    HypersurfaceJet, classify_second_form, cone_detection, integrability,
    invariant_second_form, singular_points, umbilical_consequences,
)
from .canonical import build_system, determinant_D, reduce_to_canonical, reduced_relations

__version__ = "0.1.0"
