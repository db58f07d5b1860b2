import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from core.error_handler import ValidationError
from core.graph_core import build_graph, complete_graph, cycle_graph, path_graph, star_graph
from core.moment_bounds import (
    EdgeMoments, moments, compute_mu, mu_abs_order_reading, graph_profile, theorem_bounds,
    complete_graph_bounds, rough_bounds, rough_to_sharp_ratio, cycle_bounds, improvement_ratio,
    max_degree_bounds, regular_improvement_floor, oracle_eigenvalues, fluctuation_radius
)
from core.moment_bounds import moment_bounds as bounds_module
from core.moment_bounds.moment_bounds import interval
from core.spectral_ops.weights import WeightVector


def test_moments_of_small_vector():
    stats = moments(WeightVector.of([2.0, 4.0]))
    assert (stats.q, stats.p, stats.variance) == (3.0, 10.0, 1.0)
    assert stats.edge_count == 2


def test_moments_need_an_edge():
    with pytest.raises(ValidationError):
        moments(WeightVector.of([]))


def test_mu_on_path_is_projected(p3):
    mu = compute_mu(p3)
    assert mu.value == pytest.approx(3.0, abs=1e-10)
    assert mu.method == 'projected_rayleigh'
    with pytest.raises(ValidationError):
        compute_mu(p3, method='closed')


def test_mu_on_cycle_uses_closed_form(c6):
    mu = compute_mu(c6)
    assert mu.value == pytest.approx(5.0, abs=1e-10)
    assert mu.method == 'regular_closed_form'
    assert mu.cross_check == pytest.approx(5.0, abs=1e-10)


def test_mu_on_complete_graph_and_bracket():
    mu = compute_mu(complete_graph(4))
    assert mu.value == pytest.approx(4.0, abs=1e-10)
    assert mu.bracket_low == pytest.approx(4.0, abs=1e-10)
    assert mu.bracket_high == pytest.approx(8.0, abs=1e-10)
    assert mu.dmax_bound == 8.0


def test_mu_dmax_method(p3):
    mu = compute_mu(star_graph(5), method='dmax')
    assert mu.value == 10.0
    assert mu.method == 'dmax_upper_bound'


def test_mu_needs_two_edges():
    with pytest.raises(ValidationError, match="mean-zero edge space is trivial"):
        compute_mu(complete_graph(2))


@pytest.mark.parametrize("g", [path_graph(6), star_graph(7), cycle_graph(7), complete_graph(5),
                               build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (1, 4)])])
def test_mu_lies_in_line_graph_bracket(g):
    mu = compute_mu(g, method='projected')
    slack = 1e-10 * max(1.0, mu.value)
    assert mu.bracket_low - slack <= mu.value <= mu.bracket_high + slack
    assert mu.bracket_high <= mu.dmax_bound + slack


def test_abs_order_reading(k3, p3):
    assert mu_abs_order_reading(k3) == pytest.approx((3.0, 6.0), abs=1e-10)
    assert mu_abs_order_reading(p3) == pytest.approx((3.0, 5.0), abs=1e-10)


def test_unit_triangle_certificate(k3):
    cert = theorem_bounds(k3, WeightVector.ones(3), with_oracle=True)
    assert cert.lower == pytest.approx(3.0, abs=1e-10)
    assert cert.upper == pytest.approx(3.0, abs=1e-10)
    assert cert.positivity_paper and cert.positivity_naive
    assert cert.sandwich_holds
    assert cert.oracle == pytest.approx([3.0, 3.0], abs=1e-10)


def test_signed_triangle_certificate(k3, signed_k3_weights):
    cert = theorem_bounds(k3, signed_k3_weights, with_oracle=True)
    assert cert.lower == pytest.approx(-1.5, abs=1e-10)
    assert cert.upper == pytest.approx(1.5, abs=1e-10)
    assert not cert.positivity_paper
    assert not cert.positivity_naive
    assert cert.oracle == pytest.approx([-1.5, 1.5], abs=1e-10)


def test_certificate_document_schema(k3, signed_k3_weights):
    doc = theorem_bounds(k3, signed_k3_weights).to_document()
    assert set(doc) == {"n", "e", "q", "p", "variance", "lambda2_g", "lambdaN_g", "mu", "mu_method",
                        "lower", "upper", "positivity_paper", "positivity_naive", "improvement_ratio",
                        "connected", "margins"}
    assert set(doc["margins"]) == {"paper", "naive"}
    assert "oracle_eigenvalues" in theorem_bounds(k3, signed_k3_weights, with_oracle=True).to_document()


def test_negative_mean_never_certifies(k3):
    cert = theorem_bounds(k3, WeightVector.of([-1.0, -1.0, -1.0]))
    assert cert.lower == pytest.approx(-3.0, abs=1e-10)
    assert not cert.positivity_paper and not cert.positivity_naive


def test_small_graphs_rejected():
    with pytest.raises(ValidationError):
        theorem_bounds(path_graph(2), WeightVector.ones(1))


def test_disconnected_graph_is_flagged():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    cert = theorem_bounds(g, WeightVector.ones(6), with_oracle=True)
    assert not cert.connected
    assert not cert.authoritative
    assert not cert.positivity_paper
    assert cert.sandwich_holds
    assert improvement_ratio(g) == (0.0, False)


def test_complete_graph_closed_forms():
    stats = EdgeMoments(q=0.0, p=0.5, variance=0.5, edge_count=3)
    sharp = complete_graph_bounds(3, stats)
    rough = rough_bounds(3, stats)
    assert (sharp.lower, sharp.upper) == pytest.approx((-1.5, 1.5))
    assert (rough.lower, rough.upper) == pytest.approx((-3.0, 3.0))
    assert rough.contains(sharp)
    assert rough_to_sharp_ratio(3) == pytest.approx(2.0)
    assert rough_to_sharp_ratio(10 ** 6) == pytest.approx(math.sqrt(2), rel=1e-5)


def test_theorem_matches_complete_graph_closed_form(rng):
    g = complete_graph(6)
    w = WeightVector(rng.normal(0.8, 0.4, size=g.edge_count))
    cert = theorem_bounds(g, w)
    closed = complete_graph_bounds(6, cert.moments)
    assert cert.lower == pytest.approx(closed.lower, abs=1e-9)
    assert cert.upper == pytest.approx(closed.upper, abs=1e-9)


def test_cycle_bounds_flag_largest_eigenvalue():
    stats = EdgeMoments(q=1.0, p=1.0, variance=0.0, edge_count=4)
    c4 = cycle_bounds(4, stats)
    assert c4.lambda2_g == pytest.approx(2.0)
    assert c4.lambdaN_g == pytest.approx(4.0)
    assert c4.lambdaN_discrepancy
    assert (c4.bounds.lower, c4.bounds.upper) == pytest.approx((2.0, 4.0))
    assert cycle_bounds(5, stats).lambdaN_g == pytest.approx(2 - 2 * math.cos(4 * math.pi / 5))


def test_cycle_bounds_match_general_theorem(rng):
    g = cycle_graph(7)
    w = WeightVector(rng.normal(1.0, 0.3, size=7))
    cert = theorem_bounds(g, w)
    closed = cycle_bounds(7, cert.moments).bounds
    assert cert.lower == pytest.approx(closed.lower, abs=1e-9)
    assert cert.upper == pytest.approx(closed.upper, abs=1e-9)


def test_improvement_ratio_by_family():
    ratio, connected = improvement_ratio(complete_graph(8))
    assert connected
    assert ratio == pytest.approx(8.0, abs=1e-9)
    assert improvement_ratio(cycle_graph(64))[0] < 1.0


def test_max_degree_bounds_dominate():
    g = star_graph(5)
    crude = max_degree_bounds(g)
    profile = graph_profile(g)
    assert (crude.lambdaN_upper, crude.mu_upper) == (8.0, 10.0)
    assert profile.lambdaN_g <= crude.lambdaN_upper
    assert profile.mu.value <= crude.mu_upper


def test_regular_improvement_floor():
    assert 0 < regular_improvement_floor(3) < 1
    assert regular_improvement_floor(20) > 1
    assert regular_improvement_floor(8) < 0.5
    assert regular_improvement_floor(10) < 1 < regular_improvement_floor(11)
    with pytest.raises(ValidationError):
        regular_improvement_floor(2)


CORPUS = [complete_graph(5), cycle_graph(6), path_graph(5), star_graph(6),
          build_graph(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (2, 6)])]


@hypothesis_settings(max_examples=60, deadline=None)
@given(st.sampled_from(CORPUS).flatmap(
    lambda g: st.tuples(st.just(g), st.lists(st.floats(-3, 3), min_size=g.edge_count, max_size=g.edge_count))))
def test_oracle_eigenvalues_lie_in_certified_interval(case):
    g, values = case
    w = WeightVector.of(values)
    cert = theorem_bounds(g, w, with_oracle=True)
    assert cert.sandwich_holds
    if cert.positivity_paper:
        assert min(cert.oracle) > 0
    if cert.positivity_naive:
        assert np.all(w.values > 0)


def test_oracle_eigenvalues_skip_the_kernel(k3):
    assert oracle_eigenvalues(k3, WeightVector.ones(3)) == pytest.approx([3.0, 3.0])


@pytest.mark.parametrize("n", range(3, 13))
def test_complete_graph_closed_form_on_ladder(n):
    g = complete_graph(n)
    w = WeightVector(np.random.default_rng(n).normal(0.5, 1.0, size=g.edge_count))
    cert = theorem_bounds(g, w)
    closed = complete_graph_bounds(n, cert.moments)
    assert cert.lower == pytest.approx(closed.lower, abs=1e-9)
    assert cert.upper == pytest.approx(closed.upper, abs=1e-9)
    assert rough_bounds(n, cert.moments).contains(closed)


def test_rough_ratio_at_one_hundred():
    assert rough_to_sharp_ratio(100) == pytest.approx(math.sqrt(2 * 99 / 98))
    assert abs(rough_to_sharp_ratio(100) / math.sqrt(2) - 1) < 0.011


def test_abs_order_reading_absorbs_rounding_in_ties(p3):
    # A_LG of P_3 is [[0, 1], [1, 0]]; its +-1 pair must read as a tie
    assert mu_abs_order_reading(p3) == (pytest.approx(3.0, abs=1e-10), pytest.approx(5.0, abs=1e-10))


@pytest.mark.parametrize("n", [900, 1200])
def test_mu_on_large_cycle_matches_closed_form(n):
    mu = compute_mu(cycle_graph(n))
    expected = 4.0 + 2.0 * math.cos(2.0 * math.pi / n)
    assert mu.method == 'regular_closed_form'
    assert mu.value == pytest.approx(expected, abs=1e-9)
    assert mu.cross_check == pytest.approx(expected, abs=1e-9)
    assert mu.bracket_high == pytest.approx(6.0, abs=1e-9)
    assert mu.bracket_low == pytest.approx(expected, abs=1e-9)


def test_large_mu_skips_full_line_graph_decomposition(monkeypatch):
    def fail(m, *args, **kwargs):
        if m.dimension > 800:
            raise AssertionError("full decomposition of the line graph")
        return real(m, *args, **kwargs)

    real = bounds_module.eigendecompose
    monkeypatch.setattr(bounds_module, "eigendecompose", fail)
    mu = compute_mu(path_graph(900))
    assert mu.method == 'projected_rayleigh'
    assert mu.abs_order_bracket_low is None and mu.abs_order_bracket_high is None
    # A_LG of P_900 is the adjacency of P_899
    assert mu.bracket_high == pytest.approx(4.0 + 2.0 * math.cos(math.pi / 900), abs=1e-9)
    assert mu.bracket_low - 1e-9 <= mu.value <= mu.bracket_high + 1e-9


@hypothesis_settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3))
def test_triangle_bounds_are_attained_for_mean_zero_weights(raw):
    values = np.array(raw) - np.mean(raw)
    w = WeightVector(values)
    cert = theorem_bounds(complete_graph(3), w, with_oracle=True)
    radius = math.sqrt(4.5 * cert.moments.variance)
    tol = 1e-9 * (1.0 + radius)
    assert cert.lower == pytest.approx(-radius, abs=tol)
    assert cert.upper == pytest.approx(radius, abs=tol)
    assert cert.oracle == pytest.approx([cert.lower, cert.upper], abs=tol)


@hypothesis_settings(max_examples=60, deadline=None)
@given(st.floats(-2, 2), st.floats(0, 5), st.floats(1e-3, 5))
def test_interval_widens_with_variance(q, variance, extra):
    lambda2_g, lambdaN_g = 2.0 - 2.0 * math.cos(math.pi / 4), 4.0
    narrow = interval(q, lambda2_g, lambdaN_g, fluctuation_radius(8, variance, 5.0, 8))
    wide = interval(q, lambda2_g, lambdaN_g, fluctuation_radius(8, variance + extra, 5.0, 8))
    assert wide.lower < narrow.lower and narrow.upper < wide.upper
