"""Optimal software release time under fuzzy cost and reliability goals."""
from ._accel import backend
from .cost_model import (CostParams, TruncatedExponential, expected_removal_time,
                         removal_time_pdf, testing_effort_cost, testing_removal_cost,
                         total_cost, warranty_cost)
from .errors import ConfigError, DomainError, EstimationError
from .fuzzy_core import (Direction, FuzzyTargets, RampMembership, alpha_cut, intersect,
                         membership, unite)
from .solver import (InfeasibilityReport, ReleaseDecision, ReleaseProblem, Status,
                     membership_pair, solve, solve_goal_program, solve_maximin)
from .srgm import (FailureDataset, GoelOkumotoModel, conditional_reliability, fit,
                   fit_least_squares, intensity, log_likelihood, mean_value)

__version__ = "0.1.0"
