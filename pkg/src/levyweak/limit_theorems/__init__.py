from .conditions import (ConditionCurve, compensation_trace, default_z_grid, delta_convergence_diagnostic,
                         shtatland_small_condition, wlln_tail_condition)
from .montecarlo import MonteCarloSample, corroborate, empirical_delta_distance, sample_increments
from .verdicts import LawRoute, LimitDualityReport, LimitVerdict, duality_check, shtatland_verdict, wlln_verdict
