import math

import networkx as nx
import pytest

from app.models.graph import Graph, MulticoneParams
from app.models.search import LabeledEnumeration
from app.utils.corpus import atlas_corpus
from app.utils.exceptions import InvalidParameterError, SizeLimitError, ValidationError
from app.utils.graph_ops import (
    complement,
    component_count,
    components,
    copies,
    degree_sequence,
    delete_vertex,
    diameter,
    disjoint_union,
    induced_subgraph,
    is_connected,
    is_regular,
    join,
    make_complete,
    make_complete_multipartite,
    make_cycle,
    make_empty,
    multicone,
    triangle_count,
)
from app.utils.isomorphism import are_isomorphic, decide_isomorphism, find_isomorphism, isomorphism_status


class TestConstructors:
    def test_cycle(self, c4):
        assert c4.edge_count == 4
        assert c4.degrees() == [2, 2, 2, 2]

    def test_cycle_too_short(self):
        with pytest.raises(InvalidParameterError):
            make_cycle(2)

    def test_cone_over_triangle_is_k4(self, k4):
        assert are_isomorphic(join(make_complete(1), make_cycle(3)), k4)

    def test_wheel(self, w5):
        assert w5.edge_count == 8
        assert degree_sequence(w5) == [3, 3, 3, 3, 4]

    def test_multicone_degrees(self):
        g = multicone(MulticoneParams(1, 1, 4))
        assert g.degree(0) == 4
        assert sorted(g.degrees()) == [3, 3, 3, 3, 4]

    def test_multicone_params(self):
        p = MulticoneParams(3, 2, 5)
        assert p.vertex_count == 13
        assert p.hub_degree == 12
        assert p.rim_degree == 5
        assert str(p) == "MC(3,2,5)"

    @pytest.mark.parametrize("w,m,n", [(0, 1, 3), (1, 0, 3), (1, 1, 2)])
    def test_multicone_params_rejected(self, w, m, n):
        with pytest.raises(InvalidParameterError):
            MulticoneParams(w, m, n)

    def test_vertex_cap(self):
        with pytest.raises(SizeLimitError):
            make_empty(65)

    def test_complete_multipartite(self):
        g = make_complete_multipartite([2, 2, 1])
        assert g.edge_count == 8


class TestGraphValidation:
    def test_asymmetric_rows(self):
        with pytest.raises(ValidationError):
            Graph(2, (0b10, 0))

    def test_self_loop(self):
        with pytest.raises(ValidationError):
            Graph.from_edges(2, [(1, 1)])


class TestOperations:
    def test_complement_of_k4_is_empty(self, k4):
        assert complement(k4) == make_empty(4)

    def test_copies(self, c4):
        g = copies(3, c4)
        assert g.n == 12
        assert g.edge_count == 12
        assert component_count(g) == 3

    def test_union_components(self, c4_plus_k1):
        assert components(c4_plus_k1) == [[0, 1, 2, 3], [4]]
        assert not is_connected(c4_plus_k1)

    def test_delete_hub_leaves_rim(self, w5, c4):
        assert delete_vertex(w5, 0) == c4

    def test_induced_triangle(self, k4):
        assert induced_subgraph(k4, [0, 2, 3]) == make_complete(3)

    def test_join_edge_count(self):
        g = join(make_cycle(5), make_empty(3))
        assert g.edge_count == 5 + 15

    def test_diameter(self, c4, k4, c4_plus_k1):
        assert diameter(c4) == 2
        assert diameter(k4) == 1
        assert math.isinf(diameter(c4_plus_k1))

    def test_triangles(self, k4, w5, c4):
        assert triangle_count(k4) == 4
        assert triangle_count(w5) == 4
        assert triangle_count(c4) == 0

    def test_regular(self, k4, w5):
        assert is_regular(k4)
        assert not is_regular(w5)

    def test_disjoint_union_shifts_second_graph(self):
        g = disjoint_union(make_complete(2), make_complete(2))
        assert g.has_edge(2, 3)
        assert not g.has_edge(1, 2)


class TestIsomorphism:
    def test_star_is_not_c4_plus_k1(self, star4, c4_plus_k1):
        assert not are_isomorphic(star4, c4_plus_k1)

    def test_relabelled_cycle(self):
        g = Graph.from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
        mapping = find_isomorphism(g, make_cycle(5))
        assert mapping is not None
        h = make_cycle(5)
        for u, v in g.edges():
            assert h.has_edge(mapping[u], mapping[v])

    def test_cap(self):
        big = make_cycle(13)
        with pytest.raises(SizeLimitError):
            find_isomorphism(big, big)
        assert isomorphism_status(big, big) is None

    def test_cheap_rejection_above_cap(self):
        assert isomorphism_status(make_cycle(13), make_complete(13)) is False

    def test_decided_above_cap(self):
        g = multicone(MulticoneParams(1, 3, 4))
        relabelled = Graph.from_edges(g.n, ((g.n - 1 - u, g.n - 1 - v) for u, v in g.edges()))
        assert isomorphism_status(g, relabelled) is None
        assert decide_isomorphism(g, relabelled)
        assert not decide_isomorphism(make_cycle(13), disjoint_union(make_cycle(6), make_cycle(7)))


def test_isomorphism_agrees_with_networkx():
    graphs = atlas_corpus(5)
    for a in graphs:
        shuffled = Graph.from_edges(a.n, ((a.n - 1 - u, a.n - 1 - v) for u, v in a.edges()))
        assert are_isomorphic(a, shuffled)
        for b in graphs:
            assert are_isomorphic(a, b) == nx.is_isomorphic(a.to_networkx(), b.to_networkx())


def test_complement_is_an_involution():
    for n in range(1, 6):
        for g in LabeledEnumeration(n).graphs():
            assert complement(complement(g)) == g


def test_complement_of_join_is_union_of_complements():
    small = [g for n in range(1, 4) for g in LabeledEnumeration(n).graphs()] + atlas_corpus(4)
    for g in small:
        for h in small:
            assert complement(join(g, h)) == disjoint_union(complement(g), complement(h))
