"""
Graph value types: bit-row simple graphs and multicone family parameters
"""
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Tuple

import networkx as nx
import numpy as np

from app.config import settings
from app.utils.exceptions import InvalidParameterError, SizeLimitError, ValidationError


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; row i of ``adj`` is the neighbour bitmask of vertex i"""
    n: int
    adj: Tuple[int, ...]
    _edge_count: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError("Graph needs at least one vertex", field="n", value=self.n)
        if self.n > settings.MAX_VERTICES:
            raise SizeLimitError("Graph", self.n, settings.MAX_VERTICES)
        if len(self.adj) != self.n:
            raise ValidationError(
                f"Row count {len(self.adj)} does not match vertex count {self.n}", field="adj"
            )
        full = (1 << self.n) - 1
        degree_sum = 0
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValidationError(f"Row {i} references vertices outside the graph", field="adj")
            if row >> i & 1:
                raise ValidationError(f"Self-loop at vertex {i}", field="adj")
            degree_sum += row.bit_count()
            rest = row
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if not self.adj[j] >> i & 1:
                    raise ValidationError(f"Adjacency is not symmetric at ({i}, {j})", field="adj")
                rest ^= low
        object.__setattr__(self, "_edge_count", degree_sum // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValidationError(f"Self-loop at vertex {u}", field="edges")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"Edge ({u}, {v}) outside vertex range", field="edges")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> List[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> List[int]:
        return bits_of(self.adj[v])

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in bits_of(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = 1
            a[v, u] = 1
        return a

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


def bits_of(mask: int) -> List[int]:
    """Indices of the set bits of ``mask`` in ascending order"""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class MulticoneParams:
    """Parameters of K_w joined with m disjoint n-cycles"""
    w: int
    m: int
    n: int

    def __post_init__(self):
        if self.w < 1:
            raise InvalidParameterError("Clique size w must be at least 1", field="w", value=self.w)
        if self.m < 1:
            raise InvalidParameterError("Cycle count m must be at least 1", field="m", value=self.m)
        if self.n < 3:
            raise InvalidParameterError("Cycle length n must be at least 3", field="n", value=self.n)

    @property
    def vertex_count(self) -> int:
        return self.w + self.m * self.n

    @property
    def hub_degree(self) -> int:
        return self.w - 1 + self.m * self.n

    @property
    def rim_degree(self) -> int:
        return self.w + 2

    def __str__(self) -> str:
        return f"MC({self.w},{self.m},{self.n})"
