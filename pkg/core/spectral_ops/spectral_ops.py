import logging
from dataclasses import dataclass
from typing import Dict

import numpy as np

from core.dense_linalg import SymmetricMatrix
from core.error_handler import ValidationError, NumericalError
from core.graph_core import Graph, build_graph
from .weights import WeightVector


@dataclass(frozen=True, eq=False)
class FluctuationDecomposition:
    """w = mean_q * 1_E + fluctuation, with the fluctuation orthogonal to 1_E."""
    mean_q: float
    fluctuation: WeightVector


def laplacian(g: Graph, w: WeightVector) -> SymmetricMatrix:
    """
    Signed combinatorial Laplacian: L_ij = -w_ij on edges, zero off the graph, and the
    diagonal is the negated off-diagonal row sum so that L @ 1 == 0 bit for bit.
    """
    w.check_aligned(g.edge_count)
    n = g.vertex_count
    lap = np.zeros((n, n))
    if g.edge_count:
        us = np.fromiter((u for u, _ in g.edges), dtype=np.int64, count=g.edge_count)
        vs = np.fromiter((v for _, v in g.edges), dtype=np.int64, count=g.edge_count)
        lap[us, vs] = -w.values
        lap[vs, us] = -w.values
    # summing the row of negated weights in a fixed order; the diagonal entry is zero here
    diagonal = -np.sum(lap, axis=1)
    lap[np.arange(n), np.arange(n)] = diagonal
    return SymmetricMatrix(lap)


def equal_weight_laplacian(g: Graph) -> SymmetricMatrix:
    return laplacian(g, WeightVector.ones(g.edge_count))


def adjacency_matrix(g: Graph) -> np.ndarray:
    """0/1 integer adjacency."""
    a = np.zeros((g.vertex_count, g.vertex_count), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    return a


def degree_matrix(g: Graph) -> np.ndarray:
    return np.diag(np.asarray(g.degree, dtype=np.int64))


def incidence_matrix(g: Graph) -> np.ndarray:
    """Unoriented N x E incidence matrix with integer entries."""
    c = np.zeros((g.vertex_count, g.edge_count), dtype=np.int64)
    for index, (u, v) in enumerate(g.edges):
        c[u, index] = 1
        c[v, index] = 1
    return c


def line_graph(g: Graph) -> Graph:
    """
    Vertices are edge indices of g; two are adjacent when the edges share an endpoint.

    Pairs are enumerated per vertex, so the cost is the sum of squared degrees.
    """
    pairs = set()
    for incident in g.incident_edges():
        for i in range(len(incident)):
            for j in range(i + 1, len(incident)):
                pairs.add((incident[i], incident[j]))
    return build_graph(max(g.edge_count, 1), sorted(pairs))


def line_graph_adjacency(g: Graph) -> SymmetricMatrix:
    if g.edge_count == 0:
        raise ValidationError("Line graph of an edgeless graph is empty", field="edge_count", value=0)
    lg = line_graph(g)
    return SymmetricMatrix(adjacency_matrix(lg).astype(np.float64))


def incidence_identities(g: Graph) -> Dict[str, np.ndarray]:
    """
    Integer residuals of A_LG - (C^T C - 2I) and A_G - (C C^T - D); both are zero matrices.
    """
    c = incidence_matrix(g)
    lg = line_graph(g)
    a_lg = adjacency_matrix(lg) if g.edge_count else np.zeros((0, 0), dtype=np.int64)
    return {
        "line_graph": a_lg - (c.T @ c - 2 * np.eye(g.edge_count, dtype=np.int64)),
        "graph": adjacency_matrix(g) - (c @ c.T - degree_matrix(g)),
    }


def hs_quadratic_form(g: Graph, w: WeightVector) -> float:
    """
    2 * sum_e w_e^2 + sum_i (sum_{j~i} w_ij)^2, the squared Frobenius norm of L(w).
    """
    w.check_aligned(g.edge_count)
    c = incidence_matrix(g).astype(np.float64)
    vertex_sums = c @ w.values
    return float(2.0 * np.dot(w.values, w.values) + np.dot(vertex_sums, vertex_sums))


def line_graph_quadratic_form(g: Graph, w: WeightVector) -> float:
    """<w, (4I + A_LG) w>."""
    w.check_aligned(g.edge_count)
    a = line_graph_adjacency(g).entries
    return float(4.0 * np.dot(w.values, w.values) + w.values @ a @ w.values)


def decompose(w: WeightVector) -> FluctuationDecomposition:
    """Split w into its mean Q and mean-zero fluctuation."""
    e = len(w)
    if e < 1:
        raise ValidationError("Cannot decompose an empty weight vector", field="weights", value=0)
    q = float(np.sum(w.values) / e)
    fluctuation = w.values - q
    tolerance = 1e-12 * e * max(1.0, w.max_abs())
    if abs(float(np.sum(fluctuation))) > tolerance:
        raise NumericalError("Fluctuation is not mean-zero", operation="decompose",
                             context={"sum": float(np.sum(fluctuation))})
    logging.debug(f"Decomposed weights: Q={q}, |fluctuation|^2={float(fluctuation @ fluctuation)}")
    return FluctuationDecomposition(mean_q=q, fluctuation=WeightVector(fluctuation))
