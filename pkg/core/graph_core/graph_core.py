import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from core.error_handler import ValidationError

Edge = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Simple undirected graph on vertices 0..N-1.

    Edges are stored as (u, v) with u < v in lexicographic order; the position of
    an edge in `edges` is its coordinate in every edge-indexed vector and matrix.
    """
    vertex_count: int
    edges: Tuple[Edge, ...]
    degree: Tuple[int, ...]
    adjacency_index: Dict[Edge, int] = field(repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> Optional[int]:
        """Index of the edge joining u and v, or None."""
        if u > v:
            u, v = v, u
        return self.adjacency_index.get((u, v))

    def neighbours(self) -> List[List[int]]:
        nbrs: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return nbrs

    def incident_edges(self) -> List[List[int]]:
        """Edge indices touching each vertex, in edge order."""
        incident: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for index, (u, v) in enumerate(self.edges):
            incident[u].append(index)
            incident[v].append(index)
        return incident

    def same_as(self, other: "Graph") -> bool:
        return self.vertex_count == other.vertex_count and self.edges == other.edges


@dataclass(frozen=True)
class GraphClassification:
    connected: bool
    regular_degree: Optional[int]
    max_degree: int


def build_graph(n: int, pairs: Iterable[Edge]) -> Graph:
    """
    Build the canonical Graph for vertex count n and an edge list.

    Raises:
        ValidationError: on n < 1, an out-of-range id, a self-loop or a duplicate pair.
            The offending pair is carried in the error context.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError("Vertex count must be a positive integer", field="n", value=n)

    seen = set()
    canonical: List[Edge] = []
    for pair in pairs:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"Vertex id out of range [0, {n}) in pair {(u, v)}", field="pair", value=(u, v))
        if u == v:
            raise ValidationError(f"Self-loop at vertex {u}", field="pair", value=(u, v))
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValidationError(f"Duplicate edge {key}", field="pair", value=key)
        seen.add(key)
        canonical.append(key)

    canonical.sort()
    degree = [0] * n
    for u, v in canonical:
        degree[u] += 1
        degree[v] += 1
    index = {edge: i for i, edge in enumerate(canonical)}
    return Graph(vertex_count=n, edges=tuple(canonical), degree=tuple(degree), adjacency_index=index)


def components(g: Graph) -> List[List[int]]:
    """Connected components by breadth-first traversal, each sorted, ordered by smallest vertex."""
    nbrs = g.neighbours()
    label = [-1] * g.vertex_count
    result: List[List[int]] = []
    for start in range(g.vertex_count):
        if label[start] >= 0:
            continue
        label[start] = len(result)
        queue = deque([start])
        members = [start]
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if label[w] < 0:
                    label[w] = label[start]
                    members.append(w)
                    queue.append(w)
        result.append(sorted(members))
    return result


def classify(g: Graph) -> GraphClassification:
    """Connectivity, regularity and maximum degree."""
    connected = len(components(g)) == 1
    distinct = set(g.degree)
    regular_degree = g.degree[0] if len(distinct) == 1 else None
    return GraphClassification(connected=connected, regular_degree=regular_degree, max_degree=max(g.degree))


def complete_graph(n: int) -> Graph:
    if not isinstance(n, int) or n < 1:
        raise ValidationError("Complete graph needs n >= 1", field="n", value=n)
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if not isinstance(n, int) or n < 3:
        raise ValidationError("Cycle needs n >= 3", field="n", value=n)
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if not isinstance(n, int) or n < 2:
        raise ValidationError("Path needs n >= 2", field="n", value=n)
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """Star on n vertices with centre 0."""
    if not isinstance(n, int) or n < 2:
        raise ValidationError("Star needs n >= 2", field="n", value=n)
    return build_graph(n, [(0, i) for i in range(1, n)])


def describe(g: Graph) -> Dict[str, object]:
    """Summary statistics used in trial records and reports."""
    c = classify(g)
    stats = {
        "n": g.vertex_count,
        "e": g.edge_count,
        "max_degree": c.max_degree,
        "connected": c.connected,
        "regular_degree": c.regular_degree,
    }
    logging.debug(f"Graph summary: {stats}")
    return stats
