import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from core.dense_linalg import eigendecompose
from core.error_handler import ValidationError
from core.graph_core import build_graph, complete_graph, cycle_graph, path_graph, star_graph
from core.moment_bounds import deflated_spectrum
from core.spectral_ops.spectral_ops import (
    laplacian, equal_weight_laplacian, incidence_matrix, line_graph, line_graph_adjacency,
    incidence_identities, hs_quadratic_form, line_graph_quadratic_form, decompose,
    adjacency_matrix, degree_matrix
)
from core.spectral_ops.weights import WeightVector


def test_unit_triangle_laplacian(k3):
    lap = laplacian(k3, WeightVector.ones(3))
    assert np.array_equal(lap.entries, [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])


def test_signed_triangle_laplacian(k3, signed_k3_weights):
    lap = laplacian(k3, signed_k3_weights)
    assert np.array_equal(lap.entries, [[0.5, -1, 0.5], [-1, 0.5, 0.5], [0.5, 0.5, -1]])
    assert not np.any(lap.entries @ np.ones(3))


def test_path_laplacian_diagonal(p3):
    lap = laplacian(p3, WeightVector.of([2.0, 5.0]))
    assert list(np.diag(lap.entries)) == [2.0, 7.0, 5.0]


def test_misaligned_weights_rejected(k3):
    with pytest.raises(ValidationError):
        laplacian(k3, WeightVector.of([1.0, 2.0]))


def test_equal_weight_spectra():
    complete = eigendecompose(equal_weight_laplacian(complete_graph(5))).eigenvalues_ascending
    assert complete == pytest.approx([0, 5, 5, 5, 5], abs=1e-10)
    path = eigendecompose(equal_weight_laplacian(path_graph(3))).eigenvalues_ascending
    assert path == pytest.approx([0, 1, 3], abs=1e-10)
    n = 9
    cycle = deflated_spectrum(equal_weight_laplacian(cycle_graph(n)))
    assert cycle.smallest == pytest.approx(2 * (1 - math.cos(2 * math.pi / n)), abs=1e-10)


def test_equal_weight_diagonal_is_degree():
    g = star_graph(5)
    assert list(np.diag(equal_weight_laplacian(g).entries)) == [4, 1, 1, 1, 1]


def test_path_incidence_matrix(p3):
    assert np.array_equal(incidence_matrix(p3), [[1, 0], [1, 1], [0, 1]])


def test_line_graphs(p3, k3):
    assert np.array_equal(line_graph_adjacency(p3).entries, [[0, 1], [1, 0]])
    assert line_graph(k3).same_as(complete_graph(3))
    with pytest.raises(ValidationError):
        line_graph_adjacency(build_graph(3, []))


def random_graphs():
    def graph_for(n):
        pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
        return st.sets(pair.map(lambda p: (min(p), max(p))), min_size=1, max_size=n * (n - 1) // 2) \
            .map(lambda pairs: build_graph(n, pairs))
    return st.integers(min_value=3, max_value=10).flatmap(graph_for)


def integer_weights(g):
    return st.lists(st.integers(-50, 50), min_size=g.edge_count, max_size=g.edge_count) \
        .map(lambda xs: WeightVector.of([x / 4 for x in xs]))


@hypothesis_settings(max_examples=60, deadline=None)
@given(random_graphs().flatmap(lambda g: st.tuples(st.just(g), integer_weights(g), integer_weights(g))))
def test_row_sums_and_additivity_are_exact(case):
    g, w1, w2 = case
    l1, l2, l12 = laplacian(g, w1), laplacian(g, w2), laplacian(g, w1 + w2)
    assert not np.any(l1.entries @ np.ones(g.vertex_count))
    assert np.array_equal(l12.entries, l1.entries + l2.entries)


@hypothesis_settings(max_examples=60, deadline=None)
@given(random_graphs())
def test_incidence_identities_hold_in_integers(g):
    residuals = incidence_identities(g)
    assert not np.any(residuals["line_graph"])
    assert not np.any(residuals["graph"])
    c = incidence_matrix(g)
    assert np.array_equal(adjacency_matrix(g), c @ c.T - degree_matrix(g))


@hypothesis_settings(max_examples=60, deadline=None)
@given(random_graphs().flatmap(lambda g: st.tuples(st.just(g), integer_weights(g))))
def test_hs_form_equals_line_graph_form_and_frobenius(case):
    g, w = case
    hs = hs_quadratic_form(g, w)
    assert line_graph_quadratic_form(g, w) == pytest.approx(hs, rel=1e-12, abs=1e-12)
    assert laplacian(g, w).frobenius_norm() ** 2 == pytest.approx(hs, rel=1e-10, abs=1e-10)


def test_hs_examples(k3, p3, signed_k3_weights):
    assert hs_quadratic_form(k3, signed_k3_weights) == pytest.approx(4.5)
    assert hs_quadratic_form(p3, WeightVector.ones(2)) == pytest.approx(10.0)
    assert hs_quadratic_form(k3, WeightVector.of([0.0, 0.0, 0.0])) == 0.0


def test_hs_equals_sum_of_squared_fluctuation_eigenvalues(rng):
    g = complete_graph(6)
    w = WeightVector(rng.normal(1.0, 0.7, size=g.edge_count))
    fluctuation = decompose(w).fluctuation
    values = eigendecompose(laplacian(g, fluctuation)).eigenvalues_ascending
    assert float(np.sum(values ** 2)) == pytest.approx(hs_quadratic_form(g, fluctuation), rel=1e-10)
    assert abs(np.trace(laplacian(g, fluctuation).entries)) < 1e-12 * g.edge_count * fluctuation.max_abs() + 1e-15
    # trace-zero Laplacians with 1 in the kernel: max |lambda| <= sqrt((N-2)/(N-1)) ||L||_F
    n = g.vertex_count
    frobenius = laplacian(g, fluctuation).frobenius_norm()
    assert np.max(np.abs(values)) <= math.sqrt((n - 2) / (n - 1)) * frobenius + 1e-10


@pytest.mark.parametrize("values,q,fluctuation", [
    ([1.0, 1.0, 1.0], 1.0, [0.0, 0.0, 0.0]),
    ([1.0, -0.5, -0.5], 0.0, [1.0, -0.5, -0.5]),
    ([2.0, 4.0], 3.0, [-1.0, 1.0]),
])
def test_decompose(values, q, fluctuation):
    result = decompose(WeightVector.of(values))
    assert result.mean_q == pytest.approx(q)
    assert list(result.fluctuation.values) == pytest.approx(fluctuation)
