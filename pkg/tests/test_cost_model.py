import math

import numpy as np
import pytest
from scipy.integrate import quad

from fuzzy_release import cost_model as cm
from fuzzy_release.cost_model import (CostParams, TruncatedExponential, cost_breakdown,
                                      expected_removal_time, removal_time_pdf, total_cost,
                                      warranty_cost)
from fuzzy_release.errors import DomainError
from fuzzy_release.srgm import GoelOkumotoModel, mean_value
from oracles import truncexp_samples


def test_pdf_examples():
    assert removal_time_pdf(TruncatedExponential(1, 1e6), 0) == pytest.approx(1, abs=1e-6)
    assert removal_time_pdf(TruncatedExponential(1, 1), 2) == 0
    assert removal_time_pdf(TruncatedExponential(1, 1), -0.1) == 0
    # e^-0.5 / (1 - e^-1), mpmath
    assert removal_time_pdf(TruncatedExponential(1, 1), 0.5) == pytest.approx(0.9595173756674719, rel=1e-12)


@pytest.mark.parametrize("rate,cutoff", [(1, 1), (0.3, 7), (5, 0.2), (2, 50)])
def test_pdf_integrates_to_one(rate, cutoff):
    d = TruncatedExponential(rate, cutoff)
    total, _ = quad(lambda y: removal_time_pdf(d, y), 0, cutoff, epsabs=1e-13, epsrel=1e-13)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_pdf_rejects_nonfinite():
    with pytest.raises(DomainError):
        removal_time_pdf(TruncatedExponential(1, 1), math.inf)


def test_distribution_validation():
    with pytest.raises(DomainError):
        TruncatedExponential(0, 1)
    with pytest.raises(DomainError):
        TruncatedExponential(1, 0)


def test_expected_removal_time_examples():
    assert expected_removal_time(TruncatedExponential(1, 1)) == pytest.approx(0.4180232931306736, rel=1e-12)
    assert expected_removal_time(TruncatedExponential(1, 1e6)) == pytest.approx(1, abs=1e-4)


def test_expected_removal_time_below_cutoff():
    rng = np.random.default_rng(3)
    for rate, cutoff in zip(10 ** rng.uniform(-2, 2, 100), 10 ** rng.uniform(-2, 2, 100)):
        mu = expected_removal_time(TruncatedExponential(rate, cutoff))
        assert 0 < mu < cutoff


def test_expected_removal_time_matches_quadrature():
    d = TruncatedExponential(0.7, 3.0)
    mean, _ = quad(lambda y: y * removal_time_pdf(d, y), 0, 3.0, epsabs=1e-13)
    assert expected_removal_time(d) == pytest.approx(mean, rel=1e-10)


@pytest.mark.parametrize("rate,cutoff", [(1.0, 1.0), (10.0, 0.25), (0.5, 4.0)])
def test_expected_removal_time_monte_carlo(rate, cutoff):
    rng = np.random.default_rng(11)
    y = truncexp_samples(rate, cutoff, 1_000_000, rng)
    se = y.std(ddof=1) / math.sqrt(y.size)
    assert abs(y.mean() - expected_removal_time(TruncatedExponential(rate, cutoff))) < 3 * se


def test_cost_params_validation():
    with pytest.raises(DomainError):
        CostParams(50, 60, 700, 3600, 0.0, 0.1, 0.5, 450)
    with pytest.raises(DomainError):
        CostParams(50, 60, 700, 3600, 1.1, 0.1, 0.5, 450)
    with pytest.raises(DomainError):
        CostParams(-1, 60, 700, 3600, 0.9, 0.1, 0.5, 450)


def test_cost_params_from_distributions():
    p = CostParams.from_removal_distributions(
        50, 60, 700, 3600, 0.95, TruncatedExponential(1, 1), TruncatedExponential(2, 1e6), 450)
    assert p.mu_y == pytest.approx(0.4180232931306736, rel=1e-12)
    assert p.mu_w == pytest.approx(0.5, rel=1e-9)


# -- components, values from mpmath at 40 digits ---------------------------------

def test_testing_removal_cost(paper_model, paper_cost):
    assert cm.testing_removal_cost(paper_model, paper_cost, 0) == 0
    assert cm.testing_removal_cost(paper_model, paper_cost, 42.72) == pytest.approx(855.7248572763492, rel=1e-10)
    T = np.linspace(0, 500, 1001)
    e1 = cm.testing_removal_cost(paper_model, paper_cost, T)
    assert np.all(e1 <= 60 * 143.32 * 0.1)
    with pytest.raises(DomainError):
        cm.testing_removal_cost(paper_model, paper_cost, -1)


def test_testing_effort_cost(paper_cost):
    assert cm.testing_effort_cost(paper_cost, 0) == 0
    assert cm.testing_effort_cost(paper_cost, 1) == 700
    assert cm.testing_effort_cost(paper_cost, 42.72) == pytest.approx(24785.50213699409, rel=1e-10)
    T = np.linspace(0.1, 100, 500)
    e2 = cm.testing_effort_cost(paper_cost, T)
    assert np.all(np.diff(e2) > 0)
    assert np.all(np.diff(e2, 2) < 0)  # concave for alpha_exp < 1
    with pytest.raises(DomainError):
        cm.testing_effort_cost(paper_cost, -1)


def test_warranty_cost(paper_model, paper_cost):
    assert warranty_cost(paper_model, paper_cost, 42.72) == pytest.approx(1258.542817095238, rel=1e-10)
    assert warranty_cost(paper_model, paper_cost, 1e4) == pytest.approx(0, abs=1e-12)
    short = CostParams(50, 60, 700, 3600, 0.95, 0.1, 0.5, 0.0)
    assert warranty_cost(paper_model, short, 10) == 0
    with pytest.raises(DomainError):
        warranty_cost(paper_model, paper_cost, -1)


def test_total_cost_paper_points(paper_model, paper_cost):
    assert total_cost(paper_model, paper_cost, 42.72) == pytest.approx(26949.769, rel=5e-3)
    assert total_cost(paper_model, paper_cost, 34.68) == pytest.approx(24657.35, rel=5e-3)
    # exact evaluation (mpmath): the printed figures are already reproduced to the cent
    assert total_cost(paper_model, paper_cost, 42.72) == pytest.approx(26949.76981136568, rel=1e-12)
    assert total_cost(paper_model, paper_cost, 34.68) == pytest.approx(24657.354494416227, rel=1e-12)


def test_total_cost_at_zero(paper_model, paper_cost):
    expected = 50 + 3600 * 0.5 * mean_value(paper_model, 450)
    assert total_cost(paper_model, paper_cost, 0) == pytest.approx(expected, rel=1e-14)


def test_additivity_random_configs():
    rng = np.random.default_rng(5)
    for _ in range(100):
        model = GoelOkumotoModel(*10 ** rng.uniform([0, -3], [3, 0]))
        p = CostParams(*10 ** rng.uniform(0, 4, 4), rng.uniform(0.05, 1.0),
                       *10 ** rng.uniform(-2, 1, 2), 10 ** rng.uniform(0, 3))
        T = float(10 ** rng.uniform(-2, 3))
        parts = cost_breakdown(model, p, T)
        expected = parts["setup"] + parts["testing_removal"] + parts["testing_effort"] + parts["warranty"]
        assert total_cost(model, p, T) == expected


def test_component_monotonicity(paper_model, paper_cost):
    T = np.arange(0, 200, 0.1)
    assert np.all(np.diff(cm.testing_removal_cost(paper_model, paper_cost, T)) >= 0)
    assert np.all(np.diff(cm.testing_effort_cost(paper_cost, T)) >= 0)
    assert np.all(np.diff(warranty_cost(paper_model, paper_cost, T)) <= 0)


def test_total_cost_shape(paper_model, paper_cost):
    # Brute-force grid: the warranty term dominates early testing, so the cost
    # falls to a minimum near T = 32.5 and increases strictly after it.
    T = np.arange(1, 100.05, 0.1)
    c = total_cost(paper_model, paper_cost, T)
    i = int(np.argmin(c))
    assert T[i] == pytest.approx(32.5, abs=0.1)
    assert np.all(np.diff(c[:i + 1]) < 0)
    assert np.all(np.diff(c[i:]) > 0)
