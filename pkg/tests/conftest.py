import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fuzzy_release.cost_model import CostParams
from fuzzy_release.fuzzy_core import FuzzyTargets
from fuzzy_release.solver import ReleaseProblem
from fuzzy_release.srgm import GoelOkumotoModel

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


@pytest.fixture
def paper_model():
    return GoelOkumotoModel(143.32, 0.1246)


@pytest.fixture
def paper_cost():
    return CostParams(c0=50, c1=60, c2=700, c3=3600, alpha_exp=0.95, mu_y=0.1, mu_w=0.5, t_w=450)


@pytest.fixture
def feasible_targets():
    return FuzzyTargets(26000, 31000, 0.95, 0.80, 1.0)


@pytest.fixture
def infeasible_targets():
    return FuzzyTargets(23000, 24500, 0.95, 0.80, 1.0)


@pytest.fixture
def feasible_problem(paper_model, paper_cost, feasible_targets):
    return ReleaseProblem(paper_model, paper_cost, feasible_targets)


@pytest.fixture
def infeasible_problem(paper_model, paper_cost, infeasible_targets):
    return ReleaseProblem(paper_model, paper_cost, infeasible_targets)


@pytest.fixture
def config_dir():
    return CONFIG_DIR
