"""
Search spaces for the cospectral-mate scan
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Tuple, Union

from app.config import settings
from app.models.graph import Graph
from app.utils.exceptions import InvalidParameterError, SizeLimitError
from app.utils.graph6 import edge_positions, read_corpus


def graph_from_mask(n: int, mask: int) -> Graph:
    """Bit k of mask is the k-th upper-triangle pair in graph6 column-major order"""
    rows = [0] * n
    for k, (i, j) in enumerate(edge_positions(n)):
        if mask >> k & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def mask_of(g: Graph) -> int:
    mask = 0
    for k, (i, j) in enumerate(edge_positions(g.n)):
        if g.adj[i] >> j & 1:
            mask |= 1 << k
    return mask


@dataclass(frozen=True)
class LabeledEnumeration:
    """All 2^(n(n-1)/2) labeled graphs on n vertices"""
    n: int
    allow_long_run: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError("Enumeration needs at least one vertex", field="n", value=self.n)
        limit = settings.LONG_RUN_MAX_VERTICES if self.allow_long_run else settings.LABELED_MAX_VERTICES
        if self.n > limit:
            raise SizeLimitError("Labeled enumeration", self.n, limit)

    @property
    def pair_count(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def size(self) -> int:
        return 1 << self.pair_count

    def graphs(self) -> Iterator[Graph]:
        for mask in range(self.size):
            yield graph_from_mask(self.n, mask)


@dataclass(frozen=True)
class CorpusSource:
    """A finite list of graphs, usually read from a graph6 file"""
    graphs: Tuple[Graph, ...]
    origin: str = "graphs"

    @classmethod
    def from_path(cls, path: Union[str, Path], strict: bool = True, lenient: bool = False) -> "CorpusSource":
        return cls(tuple(read_corpus(path, strict=strict, lenient=lenient)), origin=str(path))

    @classmethod
    def from_graphs(cls, graphs: Iterable[Graph], origin: str = "graphs") -> "CorpusSource":
        return cls(tuple(graphs), origin=origin)


@dataclass(frozen=True)
class SearchSpace:
    source: Union[LabeledEnumeration, CorpusSource]
    connected_only: bool = False
    edge_count: Optional[int] = None
    vertex_count: Optional[int] = field(default=None)

    @property
    def kind_label(self) -> str:
        return "labeled" if isinstance(self.source, LabeledEnumeration) else "corpus"

    @classmethod
    def labeled(cls, n: int, connected_only: bool = False, edge_count: Optional[int] = None,
                allow_long_run: bool = False) -> "SearchSpace":
        return cls(LabeledEnumeration(n, allow_long_run), connected_only, edge_count, n)

    @classmethod
    def corpus(cls, source: CorpusSource, n: int, connected_only: bool = False,
               edge_count: Optional[int] = None) -> "SearchSpace":
        return cls(source, connected_only, edge_count, n)
