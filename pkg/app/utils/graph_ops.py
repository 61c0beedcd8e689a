"""
Graph constructors and structural operations (join, union, complement, copies)
"""
from collections import deque
from typing import Iterable, List, Optional, Sequence

from app.config import settings
from app.models.graph import Graph, MulticoneParams, bits_of
from app.utils.exceptions import InvalidParameterError, SizeLimitError, ValidationError


def _check_cap(n: int, what: str = "Graph") -> None:
    if n > settings.MAX_VERTICES:
        raise SizeLimitError(what, n, settings.MAX_VERTICES)


# Constructors

def make_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError("Cycle length must be at least 3", field="n", value=n)
    _check_cap(n)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_complete(w: int) -> Graph:
    if w < 1:
        raise InvalidParameterError("Clique size must be at least 1", field="w", value=w)
    _check_cap(w)
    full = (1 << w) - 1
    return Graph(w, tuple(full ^ (1 << i) for i in range(w)))


def make_empty(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError("Graph needs at least one vertex", field="n", value=n)
    _check_cap(n)
    return Graph(n, (0,) * n)


def make_path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError("Path needs at least one vertex", field="n", value=n)
    _check_cap(n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_star(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at vertex 0"""
    return join(make_complete(1), make_empty(leaves))


def make_complete_multipartite(parts: Sequence[int]) -> Graph:
    if not parts:
        raise InvalidParameterError("At least one part is required", field="parts")
    graph = make_empty(parts[0])
    for size in parts[1:]:
        graph = join(graph, make_empty(size))
    return graph


def make_wheel(order: int) -> Graph:
    """W_order = K1 joined with C_(order-1)"""
    return join(make_complete(1), make_cycle(order - 1))


# Structural operations

def disjoint_union(g: Graph, h: Graph) -> Graph:
    _check_cap(g.n + h.n)
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(row << shift for row in h.adj))


def copies(k: int, g: Graph) -> Graph:
    if k < 1:
        raise InvalidParameterError("Copy count must be at least 1", field="k", value=k)
    _check_cap(k * g.n)
    rows: List[int] = []
    for c in range(k):
        shift = c * g.n
        rows.extend(row << shift for row in g.adj)
    return Graph(k * g.n, tuple(rows))


def join(g: Graph, h: Graph) -> Graph:
    """Union plus every edge between g and h; g's vertices come first"""
    _check_cap(g.n + h.n)
    g_mask = (1 << g.n) - 1
    h_mask = ((1 << h.n) - 1) << g.n
    rows = [row | h_mask for row in g.adj]
    rows.extend((row << g.n) | g_mask for row in h.adj)
    return Graph(g.n + h.n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ row ^ (1 << i) for i, row in enumerate(g.adj)))


def multicone(p: MulticoneParams) -> Graph:
    _check_cap(p.vertex_count)
    return join(make_complete(p.w), copies(p.m, make_cycle(p.n)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    order = sorted(set(vertices))
    if not order:
        raise ValidationError("Induced subgraph needs a nonempty vertex subset", field="vertices")
    for v in order:
        if not 0 <= v < g.n:
            raise ValidationError(f"Vertex {v} outside graph", field="vertices", value=v)
    position = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = 0
        for u in bits_of(g.adj[v]):
            if u in position:
                row |= 1 << position[u]
        rows.append(row)
    return Graph(len(order), tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, (u for u in range(g.n) if u != v))


# Traversal-derived quantities

def degree_sequence(g: Graph) -> List[int]:
    return sorted(g.degrees())


def _bfs_distances(g: Graph, source: int) -> List[Optional[int]]:
    dist: List[Optional[int]] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in bits_of(g.adj[u]):
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def components(g: Graph) -> List[List[int]]:
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        reach = 1 << s
        frontier = reach
        while frontier:
            nxt = 0
            for u in bits_of(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~reach
            reach |= nxt
        seen |= reach
        out.append(bits_of(reach))
    return out


def component_count(g: Graph) -> int:
    return len(components(g))


def is_connected(g: Graph) -> bool:
    return component_count(g) == 1


def diameter(g: Graph) -> float:
    """Longest shortest path; ``float('inf')`` when g is disconnected"""
    best = 0
    for s in range(g.n):
        dist = _bfs_distances(g, s)
        if any(d is None for d in dist):
            return float("inf")
        best = max(best, max(dist))
    return best


def triangle_count(g: Graph) -> int:
    total = 0
    for u, v in g.edges():
        total += (g.adj[u] & g.adj[v]).bit_count()
    return total // 3


def is_regular(g: Graph) -> bool:
    return len(set(g.degrees())) == 1
