from .definability import (DEFINABILITY_CLASSES, DefinabilityReport, classify_definability, map_exponent,
                           map_exponent_t_domain)
from .kernels import (KernelProfile, MappingKernel, check_condition_c, conjugate, custom_kernel, kernel_integrals,
                      kernel_profile, lambda_kernel, phi_bar, psi_kernel)
from .linfty import (LInftyLaw, LInftyRepr, RInfinityVerdict, linfty_repr_from_dict, linfty_synthesize,
                     r_infinity_membership)
from .ranges import TIERS, RangeVerdict, range_membership, structural_check
from .shapes import (KFunction, ShapeVerdict, completely_monotone_check, exp_mixture, exp_power, k_sum,
                     monotone_order_check, power, truncated_power)
