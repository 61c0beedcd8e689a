import networkx as nx
import pytest

from app.models.graph import MulticoneParams
from app.models.reports import BergeWitness, WitnessKind
from app.services.perfection_service import perfection_service
from app.utils.corpus import atlas_up_to
from app.utils.exceptions import SizeLimitError
from app.utils.graph_ops import complement, make_cycle, make_empty, multicone


def test_pentagon_is_an_odd_hole():
    report = perfection_service.is_perfect(make_cycle(5))
    assert not report.perfect
    assert report.witness.kind == WitnessKind.ODD_HOLE
    assert report.witness.vertices == [0, 1, 2, 3, 4]


def test_heptagon_complement_has_an_antihole():
    g = complement(make_cycle(7))
    report = perfection_service.is_perfect(g)
    assert not report.perfect
    assert report.witness.kind == WitnessKind.ODD_ANTIHOLE
    assert report.witness.vertices == [0, 1, 2, 3, 4, 5, 6]
    assert perfection_service.validate_witness(g, report.witness)


def test_short_cycle_bound_hides_the_hole():
    assert perfection_service.is_perfect(make_cycle(5), max_len=4).perfect


def test_even_cycles_and_cliques_are_perfect(k4):
    assert perfection_service.is_perfect(make_cycle(6)).perfect
    assert perfection_service.is_perfect(k4).perfect


@pytest.mark.parametrize("w,m,n,perfect", [
    (1, 1, 4, True),
    (1, 1, 5, False),
    (2, 2, 3, True),
    (2, 1, 6, True),
    (1, 2, 7, False),
])
def test_multicone_perfectness(w, m, n, perfect):
    p = MulticoneParams(w, m, n)
    report = perfection_service.multicone_report(p)
    assert report.perfect is perfect
    assert report.predicate is perfect
    assert report.max_len == n


def test_wheel_witness_is_the_rim():
    report = perfection_service.multicone_report(MulticoneParams(1, 1, 5))
    assert report.witness.vertices == [1, 2, 3, 4, 5]
    assert perfection_service.validate_witness(multicone(MulticoneParams(1, 1, 5)), report.witness)


def test_validate_witness_rejects_bad_cycles(k4):
    g = make_cycle(5)
    assert not perfection_service.validate_witness(g, BergeWitness(kind=WitnessKind.ODD_HOLE, vertices=[0, 1, 2, 3]))
    assert not perfection_service.validate_witness(g, BergeWitness(kind=WitnessKind.ODD_HOLE, vertices=[0, 2, 1, 3, 4]))
    assert not perfection_service.validate_witness(g, BergeWitness(kind=WitnessKind.ODD_ANTIHOLE, vertices=[0, 1, 2, 3, 4]))


def test_size_cap():
    with pytest.raises(SizeLimitError):
        perfection_service.is_perfect(make_empty(21))


def test_complement_symmetry_on_small_graphs():
    for g in atlas_up_to(6):
        assert perfection_service.is_perfect(g).perfect == perfection_service.is_perfect(complement(g)).perfect


def test_odd_holes_agree_with_chordless_cycles():
    for g in atlas_up_to(6):
        cycles = nx.chordless_cycles(g.to_networkx())
        has_hole = any(len(c) >= 5 and len(c) % 2 == 1 for c in cycles)
        assert (perfection_service.find_odd_hole(g) is not None) == has_hole
