import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from core.error_handler import ValidationError, GraphFormatError
from core.graph_core import (
    build_graph, classify, components, describe, complete_graph, cycle_graph, path_graph, star_graph,
    read_edge_list, write_edge_list, load_edge_list, save_edge_list
)
from core.spectral_ops.weights import WeightVector


def test_build_graph_canonicalizes_pairs():
    g = build_graph(3, [(2, 1), (1, 0)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.degree == (1, 2, 1)
    assert g.edge_index(2, 1) == 1
    assert g.edge_index(0, 2) is None


@pytest.mark.parametrize("n,pairs", [
    (0, []),
    (3, [(0, 3)]),
    (3, [(1, 1)]),
    (3, [(0, 1), (1, 0)]),
])
def test_build_graph_rejects_invalid_input(n, pairs):
    with pytest.raises(ValidationError):
        build_graph(n, pairs)


def test_duplicate_pair_is_reported_in_context():
    with pytest.raises(ValidationError) as info:
        build_graph(4, [(0, 1), (2, 3), (1, 0)])
    assert info.value.context["value"] == (0, 1)


def test_classify_regular_and_irregular(k3, p3):
    assert classify(k3).regular_degree == 2
    assert classify(k3).connected
    info = classify(p3)
    assert info.regular_degree is None
    assert info.max_degree == 2


def test_disconnected_graph_components():
    g = build_graph(5, [(0, 1), (2, 3)])
    assert components(g) == [[0, 1], [2, 3], [4]]
    assert not classify(g).connected


def test_canonical_families():
    assert complete_graph(6).edge_count == 15
    assert cycle_graph(5).degree == (2,) * 5
    assert path_graph(4).edges == ((0, 1), (1, 2), (2, 3))
    assert star_graph(4).degree == (3, 1, 1, 1)
    with pytest.raises(ValidationError):
        cycle_graph(2)


def test_describe_reports_degree_statistics(p3):
    assert describe(p3) == {"n": 3, "e": 2, "max_degree": 2, "connected": True, "regular_degree": None}


def _pairs(n):
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    return st.sets(pair.map(lambda p: (min(p), max(p))), max_size=n * (n - 1) // 2)


@hypothesis_settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=12).flatmap(lambda n: st.tuples(st.just(n), _pairs(n))))
def test_degree_sum_is_twice_edge_count(case):
    n, pairs = case
    g = build_graph(n, pairs)
    assert sum(g.degree) == 2 * g.edge_count
    assert list(g.edges) == sorted(pairs)


def test_read_edge_list_realigns_weights():
    g, w = read_edge_list("# header comment\n3\n\n1 2 5\n0 1 7\n")
    assert g.edges == ((0, 1), (1, 2))
    assert list(w.values) == [7.0, 5.0]


def test_read_unweighted_edge_list(sample_data):
    g, w = load_edge_list(sample_data / "p3.txt")
    assert w is None
    assert g.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("text,line_number", [
    ("3\n0 1\n1 3\n", 3),
    ("3\n0 1 1.0\n1 2\n", 3),
    ("3\n0 x\n", 2),
    ("3\n0 0\n", 2),
    ("3\n0 1\n1 0\n", 3),
    ("3\n0 1 abc\n", 2),
    ("3\n0 1 2 3\n", 2),
    ("three\n0 1\n", 1),
])
def test_malformed_lines_report_line_number(text, line_number):
    with pytest.raises(GraphFormatError) as info:
        read_edge_list(text)
    assert info.value.context["line_number"] == line_number


def test_malformed_sample_points_at_offending_line(sample_data):
    with pytest.raises(GraphFormatError) as info:
        load_edge_list(sample_data / "malformed.txt")
    assert info.value.context["line_number"] == 4


def test_non_finite_weight_rejected():
    with pytest.raises(GraphFormatError):
        read_edge_list("3\n0 1 nan\n1 2 1\n")


def test_empty_edge_list_rejected():
    with pytest.raises(GraphFormatError):
        read_edge_list("# nothing here\n")


def test_written_weights_read_back_exactly(tmp_path):
    g = complete_graph(4)
    weights = WeightVector.of([0.1, -1 / 3, 2.5e-17, 1e300, -7.0, 0.2])
    path = save_edge_list(tmp_path / "k4.txt", g, weights)
    g2, w2 = load_edge_list(path)
    assert g2.same_as(g)
    assert list(w2.values) == list(weights.values)
    assert write_edge_list(g2, w2) == path.read_text()
