"""Exact tangent-space computations for nested punctual Quot schemes.

Everything is computed over the rationals with exact arithmetic: jet
truncations of the local ring, kernels of framed surjections, Hom spaces,
the flag differential whose kernel is the tangent space, the smoothness
classification, explicit singular witnesses, and torus-fixed-point sweeps.
"""

from .errors import (InvalidPoint, IrrationalSupport, NestquotError,
                     NotCommuting, NotStable, OverlappingSupports, ParseError,
                     ResourceBoundExceeded, SmoothCase, TruncationTooSmall,
                     Unsupported)
from .linalg import (QMatrix, Rational, Subspace, Vector, as_vector,
                     kernel_basis, rank, restrict_map, solve,
                     subspace_intersection, subspace_sum)
from .jets import (DEFAULT_MAX_JET_DIM, JetAlgebra, free_module, jet_algebra,
                   maximal_ideal_power)
from .modules import (FiniteModule, ModuleMap, check_commuting, direct_sum,
                      ext1_dim, hom_dim, hom_space, localize_at, support,
                      translate)
from .points import (KernelModule, NestedQuotPoint, QuotPoint, TangentReport,
                     delta_matrix, direct_sum_points, expdim, hom_from_kernel,
                     is_stable, kernel_hom_dim, kernel_module,
                     nested_from_quot, nested_tangent_dim, tangent_details,
                     tangent_dim, translate_nested, translate_point)
from .classify import (ClassificationVerdict, FixedPointRecord,
                       MonomialIdealChainPoint, ResourceBounds, SweepReport,
                       canonicalize_lengths, classify, constant_chain,
                       enumerate_fixed_points, enumerate_staircases,
                       fat_chain, fat_point, simple_point, square_point,
                       verify_smoothness, witness_singular)
from .ncquot import (NCQuotPoint, commutator_defect, framed_isomorphic,
                     nc_is_stable, ncquot_dim, to_quot_point)
from .pointfile import (dumps_point, load_nc_point_file, load_point_file,
                        loads_nc_point, loads_point, save_point_file)

__version__ = "0.1.0"
