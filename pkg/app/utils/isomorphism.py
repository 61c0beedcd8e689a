"""
Isomorphism testing for small graphs by backtracking over refined degree partitions
"""
from collections import Counter
from typing import Dict, List, Optional, Tuple

import networkx as nx

from app.config import settings
from app.models.graph import Graph, bits_of
from app.utils.exceptions import SizeLimitError


def _refine(g: Graph, h: Graph) -> Tuple[List[int], List[int]]:
    """Joint colour refinement starting from degrees; colours are comparable across g and h"""
    colors_g = g.degrees()
    colors_h = h.degrees()
    classes = len(set(colors_g) | set(colors_h))
    while True:
        sig_g = [(colors_g[v], tuple(sorted(colors_g[u] for u in bits_of(g.adj[v])))) for v in range(g.n)]
        sig_h = [(colors_h[v], tuple(sorted(colors_h[u] for u in bits_of(h.adj[v])))) for v in range(h.n)]
        palette: Dict[tuple, int] = {s: i for i, s in enumerate(sorted(set(sig_g) | set(sig_h)))}
        colors_g = [palette[s] for s in sig_g]
        colors_h = [palette[s] for s in sig_h]
        if len(palette) == classes:
            return colors_g, colors_h
        classes = len(palette)


def invariants_differ(g: Graph, h: Graph) -> bool:
    """Cheap fingerprint comparison; True means certainly non-isomorphic"""
    if g.n != h.n or g.edge_count != h.edge_count:
        return True
    if sorted(g.degrees()) != sorted(h.degrees()):
        return True
    colors_g, colors_h = _refine(g, h)
    return Counter(colors_g) != Counter(colors_h)


def find_isomorphism(g: Graph, h: Graph) -> Optional[List[int]]:
    """Return a mapping list (g vertex -> h vertex) or None"""
    if g.n > settings.ISOMORPHISM_MAX_VERTICES:
        raise SizeLimitError("Isomorphism input", g.n, settings.ISOMORPHISM_MAX_VERTICES)
    if invariants_differ(g, h):
        return None

    colors_g, colors_h = _refine(g, h)
    by_color: Dict[int, List[int]] = {}
    for w, c in enumerate(colors_h):
        by_color.setdefault(c, []).append(w)

    # Smallest colour classes first, then prefer vertices adjacent to those already placed
    order: List[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        v = min(
            remaining,
            key=lambda x: (len(by_color[colors_g[x]]), -(g.adj[x] & placed).bit_count(), x),
        )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)

    mapping = [-1] * g.n
    used = [False] * h.n

    def extend(depth: int) -> bool:
        if depth == g.n:
            return True
        v = order[depth]
        for w in by_color[colors_g[v]]:
            if used[w]:
                continue
            ok = True
            for u in order[:depth]:
                if g.has_edge(v, u) != h.has_edge(w, mapping[u]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if extend(depth + 1):
                return True
            used[w] = False
            mapping[v] = -1
        return False

    return list(mapping) if extend(0) else None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if invariants_differ(g, h):
        return False
    return find_isomorphism(g, h) is not None


def isomorphism_status(g: Graph, h: Graph) -> Optional[bool]:
    """Like are_isomorphic, but None ("not decided") above the isomorphism cap"""
    if invariants_differ(g, h):
        return False
    if g.n > settings.ISOMORPHISM_MAX_VERTICES:
        return None
    return find_isomorphism(g, h) is not None


def decide_isomorphism(g: Graph, h: Graph) -> bool:
    """Exact decision at any size; networkx VF2 takes over above the backtracking cap"""
    status = isomorphism_status(g, h)
    if status is None:
        return nx.is_isomorphic(g.to_networkx(), h.to_networkx())
    return status
