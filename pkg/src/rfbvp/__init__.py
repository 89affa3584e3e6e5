"""Steady-state anomalous diffusion with a Riesz-Feller operator on a bounded interval.

Solves ``d^alpha/d|x|^alpha_theta T(x) = 0`` on ``[L, R]`` with Dirichlet
data by a fractional finite difference scheme whose exterior (virtual-node)
contributions are folded into closed-form tail sums.

>>> import rfbvp
>>> sol = rfbvp.solve_bvp(1.5, 0.25, N=64, gL=2.0, gR=1.0)
>>> float(sol.values[0]), float(sol.values[-1])
(2.0, 1.0)
"""

__version__ = "0.1.0"

from .discretize import (
    AssembledSystem,
    DirichletBC,
    Domain1D,
    GridFunction,
    apply_rf_operator,
    assemble,
    build_grid,
)
from .errors import (
    ConditioningWarning,
    DimensionMismatch,
    DomainError,
    InvalidDomain,
    NoFeasiblePoint,
    NonFinite,
    OrderOutOfRange,
    OrderSingular,
    ParameterError,
    ProfileError,
    SingularMatrix,
    SkewnessOutOfRange,
    SolverError,
)
from .fit import FitConfig, FitResult, ObservedProfile, synthetic_profile
from .kernel import (
    FractionalParams,
    SchemeWeights,
    SideCoefficients,
    WeightTable,
    build_weight_table,
    gamma_fn,
    side_coefficients,
    tail_sum_left,
    tail_sum_right,
    validate_params,
    weight,
    weights,
)
from .oracle import (
    VerificationReport,
    bruteforce_tail,
    convergence_study,
    reduction_check,
    symmetry_check,
    tails_check,
)
from .solve import Solution, lu_solve, residual_inf, solve_bvp
