import random

import pytest

from kgtext import LinearizeOptions, assign_levels, build_graph, linearize, parse_linearized, parsed_triples
from kgtext.errors import BadRolePrefix, BadSegmentCount, UnbalancedBrackets
from kgtext.linearize import linearized_order

from conftest import FIGURE1_LINEARIZED
from oracles import random_graph_triples


def test_figure1_golden(figure1_graph):
    assert linearize(assign_levels(figure1_graph)) == FIGURE1_LINEARIZED


def test_markers_off_single_triple():
    lg = assign_levels(build_graph([("A", "r", "B")]))
    assert linearize(lg, LinearizeOptions(include_level_markers=False)) == "[S | A, P | r, O | B]"


def test_marker_toggle_is_suffix_deletion():
    rng = random.Random(12)
    for _ in range(100):
        lg = assign_levels(build_graph(random_graph_triples(rng, 1, 8)))
        with_markers = linearize(lg)
        without = linearize(lg, LinearizeOptions(include_level_markers=False))
        stripped = with_markers
        for level in sorted(set(lg.levels), reverse=True):
            stripped = stripped.replace(f", {level}]", "]")
        assert without == stripped


def test_levels_non_decreasing_in_output():
    rng = random.Random(3)
    for _ in range(200):
        lg = assign_levels(build_graph(random_graph_triples(rng, 1, 10)))
        units = parse_linearized(linearize(lg))
        levels = [u.level for u in units]
        assert levels == sorted(levels)


def test_stable_order_within_level():
    g = build_graph([("R", "a", "B"), ("R", "b", "C"), ("R", "c", "D")])
    lg = assign_levels(g)
    units = parse_linearized(linearize(lg))
    assert [u.relation for u in units] == ["a", "b", "c"]


def test_round_trip_1000_random_graphs():
    rng = random.Random(42)
    for _ in range(1000):
        lg = assign_levels(build_graph(random_graph_triples(rng, 1, 12)))
        units = parse_linearized(linearize(lg))
        triples, levels = parsed_triples(units)
        order = linearized_order(lg)
        assert triples == [lg.graph.triples[i] for i in order]
        assert levels == [lg.levels[i] for i in order]


def test_round_trip_without_markers():
    rng = random.Random(43)
    for _ in range(200):
        lg = assign_levels(build_graph(random_graph_triples(rng, 1, 8)))
        text = linearize(lg, LinearizeOptions(include_level_markers=False))
        triples, levels = parsed_triples(parse_linearized(text))
        assert levels is None
        assert triples == [lg.graph.triples[i] for i in linearized_order(lg)]


def test_comma_bearing_labels_round_trip():
    g = build_graph([("Aarhus Airport", "city Served", "Aarhus, Denmark")])
    lg = assign_levels(g)
    text = linearize(lg)
    assert text == "[S | Aarhus Airport, P | city Served, O | Aarhus, Denmark, 1]"
    triples, levels = parsed_triples(parse_linearized(text))
    assert triples == list(g.triples)
    assert levels == [1]


def test_parse_figure1(figure1_graph):
    units = parse_linearized(FIGURE1_LINEARIZED)
    triples, levels = parsed_triples(units)
    assert triples == list(figure1_graph.triples)
    assert levels == [1, 2, 2, 3, 3]


def test_parse_masked_triple_placeholder():
    units = parse_linearized("[<X>, 1]")
    assert len(units) == 1
    assert units[0].masked and units[0].level == 1


def test_parse_masked_relation():
    units = parse_linearized("[S | A, <Y>, O | B, 1]")
    assert units[0].relation_masked
    assert units[0].head == "A" and units[0].tail == "B" and units[0].level == 1


def test_missing_segment_rejected():
    with pytest.raises((BadSegmentCount, BadRolePrefix)):
        parse_linearized("[S | A, O | B, 1]")


def test_bad_role_prefix():
    with pytest.raises(BadRolePrefix):
        parse_linearized("[Q | A, P | r, O | B, 1]")


def test_out_of_order_roles():
    with pytest.raises(BadRolePrefix):
        parse_linearized("[P | r, S | A, O | B, 1]")


@pytest.mark.parametrize("text", ["[S | A, P | r, O | B", "S | A]", "", "[S | A][S | B]"])
def test_unbalanced_brackets(text):
    with pytest.raises(UnbalancedBrackets):
        parse_linearized(text)


def test_extra_segment_rejected():
    with pytest.raises((BadSegmentCount, BadRolePrefix)):
        parse_linearized("[S | A, P | r, O | B, P | s, 1]")


def test_unknown_ordering_rejected():
    with pytest.raises(ValueError):
        LinearizeOptions(order="alphabetical")
