"""Numerical laboratory for contracting curvature flows of axisymmetric
hypersurfaces with positive sectional curvature in hyperbolic space."""

__version__ = "0.1.0"

from .errors import (BlowUpError, ConfigError, ContractError, DomainError,
                     HypothesisError)
from .speeds import (AssumptionReport, CurvatureSpeed, DerivativeBundle,
                     ElementarySymRoot, GeometricBlend, PowerMean,
                     PrincipalCurvatures, builtin_speeds, check_assumption,
                     dual_value, geometric_mean_gap, inverse_concavity_margin,
                     log_hessian, log_hessian_min_eigenvalue,
                     matrix_second_derivative, ordering_margin, parse_speed,
                     quadratic_form_margin)
from .geometry import (AxisymmetricProfile, GeometryCache, derivatives_on_grid,
                       graph_speed_v, min_pair_product, principal_curvatures,
                       sectional_margin, speed_diffusion_term, support_function)
from .hyperboloid import (FundamentalForms, MinkowskiPoint, embed,
                          fd_fundamental_forms, geodesic_distance,
                          minkowski_inner)
from .scenarios import ORACLE_PROFILES, Scenario, oracle_profile
from .flow import (FlowConfig, FlowResult, rescale, run,
                   spherical_extinction_time, spherical_theta, tso_bound,
                   tso_quantity)
from .monitors import (CSV_COLUMNS, MonitorRecord, TrajectoryVerdict,
                       VerdictTolerances, epsilon0, pinching_bound,
                       records_to_csv, verdict)
from .config import OutputConfig, RunConfig, load_config, parse_config
from .acceptance import (CriterionResult, FdSecondDerivative,
                         fd_matrix_second_derivative, oracle_discrepancy,
                         run_battery)
