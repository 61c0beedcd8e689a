"""
Complete corpora of small graphs up to isomorphism, taken from the networkx graph atlas
"""
from functools import lru_cache
from typing import List, Tuple

import networkx as nx

from app.models.graph import Graph
from app.utils.exceptions import SizeLimitError

ATLAS_MAX_VERTICES = 7


def from_networkx(g: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph.from_edges(len(index), ((index[u], index[v]) for u, v in g.edges()))


@lru_cache(maxsize=1)
def _atlas() -> Tuple[Graph, ...]:
    return tuple(from_networkx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() > 0)


def atlas_corpus(n: int) -> List[Graph]:
    """Every graph on exactly n vertices, one per isomorphism class (n <= 7)"""
    if n > ATLAS_MAX_VERTICES:
        raise SizeLimitError("Atlas corpus", n, ATLAS_MAX_VERTICES)
    return [g for g in _atlas() if g.n == n]


def atlas_up_to(n: int) -> List[Graph]:
    if n > ATLAS_MAX_VERTICES:
        raise SizeLimitError("Atlas corpus", n, ATLAS_MAX_VERTICES)
    return [g for g in _atlas() if g.n <= n]
