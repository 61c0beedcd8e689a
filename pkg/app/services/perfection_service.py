"""
Perfectness by explicit odd-hole and odd-antihole search
"""
import logging
from typing import List, Optional

from app.config import settings
from app.models.graph import Graph, MulticoneParams, bits_of
from app.models.reports import BergeWitness, PerfectReport, WitnessKind
from app.utils.exceptions import SizeLimitError
from app.utils.graph_ops import complement, induced_subgraph, multicone

logger = logging.getLogger(__name__)

MIN_HOLE = 5


class PerfectionService:
    """Berge witness search for graphs up to PERFECT_MAX_VERTICES"""

    def find_odd_hole(self, g: Graph, max_len: Optional[int] = None) -> Optional[BergeWitness]:
        """
        Lexicographically smallest induced odd cycle of length 5..max_len

        Args:
            g: Input graph
            max_len: Longest cycle considered (defaults to the vertex count)

        Returns:
            BergeWitness with the cycle starting at its smallest vertex, or None
        """
        cycle = self._smallest_odd_cycle(g, g.n if max_len is None else min(max_len, g.n))
        return None if cycle is None else BergeWitness(kind=WitnessKind.ODD_HOLE, vertices=cycle)

    def find_odd_antihole(self, g: Graph, max_len: Optional[int] = None) -> Optional[BergeWitness]:
        cycle = self._smallest_odd_cycle(complement(g), g.n if max_len is None else min(max_len, g.n))
        return None if cycle is None else BergeWitness(kind=WitnessKind.ODD_ANTIHOLE, vertices=cycle)

    def _smallest_odd_cycle(self, g: Graph, max_len: int) -> Optional[List[int]]:
        if max_len < MIN_HOLE:
            return None
        adj = g.adj

        # Paths start at their smallest vertex s; a cycle closes back to s with p[1] < p[-1]
        def extend(path: List[int], interior: int) -> Optional[List[int]]:
            s, last = path[0], path[-1]
            for u in bits_of(adj[last] >> (s + 1)):
                u += s + 1
                if adj[u] & interior or u in path:
                    continue
                if adj[u] >> s & 1:
                    length = len(path) + 1
                    if length >= MIN_HOLE and length % 2 == 1 and length <= max_len and path[1] < u:
                        return path + [u]
                    continue
                if len(path) + 1 < max_len:
                    found = extend(path + [u], interior | (1 << last))
                    if found:
                        return found
            return None

        for s in range(g.n):
            for v in bits_of(adj[s] >> (s + 1)):
                v += s + 1
                found = extend([s, v], 0)
                if found:
                    return found
        return None

    def is_perfect(self, g: Graph, max_len: Optional[int] = None) -> PerfectReport:
        """
        Berge test: no odd hole in g and none in its complement up to max_len

        Args:
            g: Input graph (at most PERFECT_MAX_VERTICES vertices)
            max_len: Longest cycle considered (defaults to the vertex count)

        Returns:
            PerfectReport with a witness when the graph is not perfect
        """
        if g.n > settings.PERFECT_MAX_VERTICES:
            raise SizeLimitError("Perfectness input", g.n, settings.PERFECT_MAX_VERTICES)
        limit = g.n if max_len is None else max_len
        witness = self.find_odd_hole(g, limit) or self.find_odd_antihole(g, limit)
        return PerfectReport(perfect=witness is None, max_len=limit, witness=witness)

    def multicone_perfect_predicate(self, p: MulticoneParams) -> bool:
        return p.n % 2 == 0 or p.n == 3

    def multicone_report(self, p: MulticoneParams, max_len: Optional[int] = None) -> PerfectReport:
        """is_perfect on the multicone graph, with the rim length as the default cycle bound"""
        report = self.is_perfect(multicone(p), p.n if max_len is None else max_len)
        report.predicate = self.multicone_perfect_predicate(p)
        return report

    def validate_witness(self, g: Graph, witness: BergeWitness) -> bool:
        """The witness vertices induce exactly the listed chordless odd cycle"""
        host = g if witness.kind == WitnessKind.ODD_HOLE else complement(g)
        cycle = witness.vertices
        k = len(cycle)
        if k < MIN_HOLE or k % 2 == 0 or len(set(cycle)) != k:
            return False
        sub = induced_subgraph(host, cycle)
        if sub.edge_count != k or any(d != 2 for d in sub.degrees()):
            return False
        return all(host.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


# Global instance
perfection_service = PerfectionService()
