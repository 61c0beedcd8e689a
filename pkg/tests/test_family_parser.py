import pytest

from app.models.graph import MulticoneParams
from app.utils.exceptions import FamilySyntaxError, InvalidParameterError, ValidationError
from app.utils.family_parser import (
    multicone_params_of,
    parse_expression,
    parse_family,
    print_family,
    resolve_graph,
    resolve_target,
)
from app.utils.graph_ops import component_count, make_complete, make_empty, make_wheel, multicone


def test_wheel_expression():
    assert parse_family("K1~C4") == make_wheel(5)


def test_multicone_atom():
    assert parse_family("MC(3,2,5)") == multicone(MulticoneParams(3, 2, 5))


def test_union_binds_loosest():
    g = parse_family("K1~C3+K1")
    assert g.n == 5
    assert g.edge_count == 6
    assert component_count(g) == 2


def test_copies_bind_tighter_than_join():
    g = parse_family("2*C3~K1")
    assert g.n == 7
    assert g.edge_count == 12


def test_disconnected_union_of_joins():
    g = parse_family("(2*C4)~(3*C4+K3)+5*C4")
    assert g.n == 43
    assert component_count(g) == 6


def test_complement():
    assert parse_family("co(K4)") == make_empty(4)


def test_whitespace_is_ignored():
    assert parse_family(" K1 ~ 2 * C3 ") == parse_family("K1~2*C3")


def test_printer_round_trip():
    text = "(2*C4)~(3*C4+K3)+5*C4"
    printed = print_family(parse_expression(text))
    assert printed == "2*C4~(3*C4+K3)+5*C4"
    assert parse_family(printed) == parse_family(text)


@pytest.mark.parametrize("text,expected", [
    ("MC(3,10,4)", MulticoneParams(3, 10, 4)),
    ("K3~2*C5", MulticoneParams(3, 2, 5)),
    ("K1~C4", MulticoneParams(1, 1, 4)),
    ("C4~K1", None),
    ("K1~C4+K1", None),
])
def test_multicone_recognition(text, expected):
    assert multicone_params_of(parse_expression(text)) == expected


@pytest.mark.parametrize("text", ["", "K", "C4~", "MC(1,2)", "(K3", "K3)", "3C4", "X5", "K\u00b2", "\u00b2*C4"])
def test_syntax_errors(text):
    with pytest.raises(FamilySyntaxError):
        parse_expression(text)


def test_syntax_error_position():
    with pytest.raises(FamilySyntaxError) as exc:
        parse_expression("K3~~C4")
    assert exc.value.position == 3


def test_semantic_errors_surface_on_build():
    with pytest.raises(InvalidParameterError):
        parse_family("C2")


class TestResolve:
    def test_expression(self):
        g, params, label = resolve_graph(expr="MC(1,1,4)")
        assert g == make_wheel(5)
        assert params == MulticoneParams(1, 1, 4)
        assert label == "MC(1,1,4)"

    def test_graph6(self):
        g, params, label = resolve_graph(g6="C~")
        assert g == make_complete(4)
        assert params is None
        assert label == "C~"

    def test_exactly_one_source(self):
        with pytest.raises(ValidationError):
            resolve_graph()
        with pytest.raises(ValidationError):
            resolve_graph(expr="K4", g6="C~")

    def test_target_falls_back_to_graph6(self):
        assert resolve_target("C~")[0] == make_complete(4)
        assert resolve_target("K5")[0] == make_complete(5)

    def test_target_reports_syntax_error(self):
        with pytest.raises(FamilySyntaxError):
            resolve_target("zz")
