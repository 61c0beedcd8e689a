import pytest

from app.config import settings
from app.models.graph import Graph, MulticoneParams
from app.models.reports import DsVerdict
from app.models.search import CorpusSource, LabeledEnumeration, SearchSpace, graph_from_mask, mask_of
from app.models.spectra import MatrixKind
from app.services.search_service import SearchService, search_service
from app.utils.corpus import atlas_corpus
from app.utils.exceptions import InvalidParameterError, SizeLimitError, UnsupportedInputError
from app.utils.graph6 import g6_decode, write_corpus
from app.utils.graph_ops import is_connected, make_complete, multicone
from app.utils.isomorphism import are_isomorphic

serial = SearchService(workers=1)


class TestLabeledEnumeration:
    @pytest.mark.parametrize("n,total,connected", [(4, 64, 38), (5, 1024, 728)])
    def test_counts(self, n, total, connected):
        enumeration = LabeledEnumeration(n)
        graphs = list(enumeration.graphs())
        assert enumeration.size == total
        assert len(graphs) == total
        assert sum(is_connected(g) for g in graphs) == connected

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            LabeledEnumeration(8)
        assert LabeledEnumeration(8, allow_long_run=True).pair_count == 28
        with pytest.raises(SizeLimitError):
            LabeledEnumeration(9, allow_long_run=True)

    def test_mask_round_trip(self, w5):
        assert graph_from_mask(5, mask_of(w5)) == w5
        assert mask_of(make_complete(4)) == 63


class TestAtlas:
    def test_atlas_sizes(self):
        assert [len(atlas_corpus(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]

    def test_atlas_cap(self):
        with pytest.raises(SizeLimitError):
            atlas_corpus(8)


class TestCospectralMates:
    def test_k4_unique_among_connected(self, k4):
        report = serial.find_cospectral_mates(k4, SearchSpace.labeled(4, connected_only=True))
        assert report.verdict == DsVerdict.UNIQUE_AMONG_CONNECTED
        assert report.mates == []
        assert report.space.scanned == 64
        assert report.space.candidates == 1
        assert report.space.polynomial_matches == 1

    def test_wheel_unique_among_connected(self, w5):
        report = serial.find_cospectral_mates(w5, SearchSpace.labeled(5, connected_only=True))
        assert report.verdict == DsVerdict.UNIQUE_AMONG_CONNECTED

    def test_star_has_disconnected_mate(self, star4, c4_plus_k1):
        report = serial.find_cospectral_mates(star4, SearchSpace.labeled(5))
        assert report.verdict == DsVerdict.MATES_FOUND
        assert len(report.mates) == 1
        mate = report.mates[0]
        assert not mate.connected
        assert mate.component_count == 2
        assert mate.isomorphic_to_target is False
        assert are_isomorphic(g6_decode(mate.graph6), c4_plus_k1)

    def test_star_unique_among_connected(self, star4):
        report = serial.find_cospectral_mates(star4, SearchSpace.labeled(5, connected_only=True))
        assert report.verdict == DsVerdict.UNIQUE_AMONG_CONNECTED

    def test_corpus_scan_matches_labeled_scan(self, star4):
        space = SearchSpace.corpus(CorpusSource.from_graphs(atlas_corpus(5), "atlas"), 5)
        report = serial.find_cospectral_mates(star4, space)
        assert report.space.source == "corpus"
        assert report.space.scanned == 34
        assert len(report.mates) == 1

    def test_edge_filter_excludes_target(self, k4):
        report = serial.find_cospectral_mates(k4, SearchSpace.labeled(4, edge_count=3))
        assert report.verdict == DsVerdict.UNIQUE_OVERALL
        assert report.space.polynomial_matches == 0
        assert report.space.scanned == 64

    def test_vertex_count_mismatch(self, k4):
        with pytest.raises(InvalidParameterError):
            serial.find_cospectral_mates(k4, SearchSpace.labeled(5))

    def test_deterministic(self, star4):
        space = SearchSpace.labeled(5)
        assert serial.find_cospectral_mates(star4, space) == serial.find_cospectral_mates(star4, space)

    def test_relabelled_target_above_isomorphism_cap_is_not_a_mate(self):
        p = MulticoneParams(1, 3, 4)
        g = multicone(p)
        relabelled = Graph.from_edges(g.n, ((g.n - 1 - u, g.n - 1 - v) for u, v in g.edges()))
        space = SearchSpace.corpus(CorpusSource.from_graphs([relabelled, g]), g.n, connected_only=True)
        report = serial.find_cospectral_mates(g, space, params=p)
        assert report.space.polynomial_matches == 2
        assert report.mates == []
        assert report.verdict == DsVerdict.UNIQUE_AMONG_CONNECTED
        cert = serial.certify_ds(p, MatrixKind.ADJACENCY, space)
        assert cert.consistent is True

    @pytest.mark.parametrize("connected_only", [False, True])
    def test_worker_count_does_not_change_the_report(self, star4, connected_only, monkeypatch):
        monkeypatch.setattr(settings, "SEARCH_BATCH_SIZE", 128)
        space = SearchSpace.labeled(5, connected_only=connected_only)
        assert serial.find_cospectral_mates(star4, space) == SearchService(workers=3).find_cospectral_mates(star4, space)

    def test_worker_count_does_not_change_corpus_reports(self):
        p = MulticoneParams(1, 1, 6)
        space = SearchSpace.corpus(CorpusSource.from_graphs(atlas_corpus(7), "atlas"), 7)
        one = serial.find_cospectral_mates(multicone(p), space, MatrixKind.LAPLACIAN, params=p)
        many = SearchService(workers=4).find_cospectral_mates(multicone(p), space, MatrixKind.LAPLACIAN, params=p)
        assert one == many

    def test_corpus_file(self, tmp_path, star4):
        path = tmp_path / "five.g6"
        with open(path, "wb") as handle:
            write_corpus(atlas_corpus(5), handle)
        space = SearchSpace.corpus(CorpusSource.from_path(path), 5)
        assert len(serial.find_cospectral_mates(star4, space).mates) == 1


class TestLaplacianWheels:
    def test_wheel7_has_laplacian_mate(self):
        p = MulticoneParams(1, 1, 6)
        space = SearchSpace.corpus(CorpusSource.from_graphs(atlas_corpus(7), "atlas"), 7)
        report = SearchService(workers=2).find_cospectral_mates(multicone(p), space, MatrixKind.LAPLACIAN, params=p)
        assert report.verdict == DsVerdict.MATES_FOUND
        audit = search_service.mate_degree_audit(report)
        assert audit.rows[0].min_degree_ok
        assert audit.rows[0].degree_profile == "Bidegreed(6^1, 3^6)"
        assert not audit.all_ok

    def test_wheel6_has_no_laplacian_mate(self):
        space = SearchSpace.labeled(6, connected_only=True)
        cert = serial.certify_ds(MulticoneParams(1, 1, 5), MatrixKind.LAPLACIAN, space)
        assert cert.report.verdict == DsVerdict.UNIQUE_AMONG_CONNECTED
        assert cert.expectation is None

    def test_audit_needs_multicone_target(self, star4):
        report = serial.find_cospectral_mates(star4, SearchSpace.labeled(5))
        with pytest.raises(UnsupportedInputError):
            search_service.mate_degree_audit(report)


class TestCertification:
    def test_adjacency_certificate(self):
        cert = serial.certify_ds(MulticoneParams(1, 1, 4), MatrixKind.ADJACENCY, SearchSpace.labeled(5, connected_only=True))
        assert cert.expectation == "unique"
        assert cert.consistent is True
        assert cert.params == {"w": 1, "m": 1, "n": 4}

    def test_perfect_transfer(self):
        p = MulticoneParams(1, 1, 4)
        report = serial.laplacian_perfect_transfer(p, SearchSpace.labeled(5))
        assert report.certified
        assert report.perfect is True
        assert report.agrees is True

    @pytest.mark.slow
    def test_butterfly_adjacency_on_seven_vertices(self):
        cert = search_service.certify_ds(MulticoneParams(1, 2, 3), MatrixKind.ADJACENCY, SearchSpace.labeled(7, connected_only=True))
        assert cert.report.space.scanned == 2 ** 21
        assert cert.consistent is not False


@pytest.mark.slow
def test_disconnected_mate_pairs():
    reports = search_service.verify_disconnected_mates()
    assert [r.vertex_counts for r in reports] == [(43, 43), (58, 58), (33, 33)]
    assert all(r.passed for r in reports)
