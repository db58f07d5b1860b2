"""
Edge-list text format.

    # comment lines are ignored, as are blank lines
    N
    u v [w]
    ...

Either every edge line carries a weight or none does.
"""

import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from core.error_handler import GraphFormatError, SignedLaplacianError, InternalError
from core.spectral_ops.weights import WeightVector
from .graph_core import Graph, build_graph


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith('#'):
            continue
        yield number, stripped


def _parse_int(token: str, line_number: int, line: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"'{token}' is not an integer vertex id", line_number=line_number, line=line)


def read_edge_list(text: str) -> Tuple[Graph, Optional[WeightVector]]:
    """
    Parse edge-list text into a Graph and, when present, its weights.

    Weights are re-aligned to the canonical edge order.

    Raises:
        GraphFormatError: with the offending line number for malformed content.
    """
    lines = list(_content_lines(text))
    if not lines:
        raise GraphFormatError("Edge list is empty; expected the vertex count on the first line")

    header_number, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise GraphFormatError(f"Vertex count '{header}' is not an integer", line_number=header_number, line=header)
    if n < 1:
        raise GraphFormatError("Vertex count must be positive", line_number=header_number, line=header)

    pairs: List[Tuple[int, int]] = []
    weights: List[float] = []
    weighted: Optional[bool] = None
    seen = set()

    for line_number, line in lines[1:]:
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise GraphFormatError(
                f"Expected 'u v' or 'u v w', found {len(tokens)} columns",
                line_number=line_number, line=line
            )
        has_weight = len(tokens) == 3
        if weighted is None:
            weighted = has_weight
        elif weighted != has_weight:
            raise GraphFormatError(
                "Mixed weighted and unweighted edge lines", line_number=line_number, line=line
            )

        u = _parse_int(tokens[0], line_number, line)
        v = _parse_int(tokens[1], line_number, line)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"Vertex id out of range [0, {n})", line_number=line_number, line=line)
        if u == v:
            raise GraphFormatError(f"Self-loop at vertex {u}", line_number=line_number, line=line)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"Duplicate edge {key}", line_number=line_number, line=line)
        seen.add(key)
        pairs.append(key)

        if has_weight:
            try:
                weights.append(float(tokens[2]))
            except ValueError:
                raise GraphFormatError(f"'{tokens[2]}' is not a decimal weight", line_number=line_number, line=line)

    graph = build_graph(n, pairs)
    if not weighted:
        logging.info(f"Read unweighted graph: N={graph.vertex_count}, E={graph.edge_count}")
        return graph, None

    aligned = np.empty(graph.edge_count)
    for key, w in zip(pairs, weights):
        aligned[graph.adjacency_index[key]] = w
    try:
        weight_vector = WeightVector(aligned)
    except SignedLaplacianError as e:
        raise GraphFormatError(f"Invalid weights: {e.message}", original_error=e)
    logging.info(f"Read weighted graph: N={graph.vertex_count}, E={graph.edge_count}")
    return graph, weight_vector


def write_edge_list(g: Graph, weights: Optional[WeightVector] = None) -> str:
    """Serialize in canonical edge order; weights use the shortest round-tripping repr."""
    if weights is not None:
        weights.check_aligned(g.edge_count)
    out = [str(g.vertex_count)]
    for index, (u, v) in enumerate(g.edges):
        if weights is None:
            out.append(f"{u} {v}")
        else:
            out.append(f"{u} {v} {float(weights.values[index])!r}")
    return "\n".join(out) + "\n"


def load_edge_list(path: Union[str, Path]) -> Tuple[Graph, Optional[WeightVector]]:
    """Read an edge-list file from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise GraphFormatError(f"Cannot read edge list '{path}': {e}", context={"path": str(path)}, original_error=e)
    try:
        return read_edge_list(text)
    except GraphFormatError as e:
        e.context.setdefault("path", str(path))
        raise
    except SignedLaplacianError:
        raise
    except Exception as e:
        raise InternalError(f"Failed to process edge list '{path}': {e}", component="edge_list", original_error=e)


def save_edge_list(path: Union[str, Path], g: Graph, weights: Optional[WeightVector] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(write_edge_list(g, weights), encoding='utf-8')
    logging.info(f"Wrote edge list to {path}")
    return path
