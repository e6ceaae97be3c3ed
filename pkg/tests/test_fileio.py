from fractions import Fraction

import pytest

from hubapsp.fileio import ParseError, parse_graph, parse_graph_text, serialize_graph
from hubapsp.generate import random_digraph, random_timed
from hubapsp.graph import Digraph
from hubapsp.parametric import TimedDigraph

PLAIN = "p sp 2 1\na 1 2 5\n"
TIMED = "p spt 2 2\na 1 2 3 1\na 2 1 0 1\n"


def test_parse_minimal_plain():
    g = parse_graph_text(PLAIN)
    assert isinstance(g, Digraph)
    assert g.n == 2 and g.m == 1
    assert g.edges[0] == (0, 1, 5)
    assert isinstance(g.edges[0][2], int)


def test_parse_minimal_timed():
    tg = parse_graph_text(TIMED)
    assert isinstance(tg, TimedDigraph)
    assert tg.base.edges == ((0, 1, 3), (1, 0, 0))
    assert tg.times == (1, 1)


def test_round_trip_is_byte_exact():
    for text in (PLAIN, TIMED):
        assert serialize_graph(parse_graph_text(text)) == text


def test_comments_and_blanks_are_skipped():
    text = "c generated\n\nc more\np sp 2 1\nc inner\na 1 2 5\n"
    assert serialize_graph(parse_graph_text(text)) == PLAIN


def test_float_weights_round_trip():
    text = "p sp 2 1\na 1 2 5.25\n"
    g = parse_graph_text(text)
    assert g.edges[0][2] == 5.25
    assert isinstance(g.edges[0][2], float)
    assert serialize_graph(g) == text


def test_parse_from_file(tmp_path):
    path = tmp_path / "g.gr"
    path.write_text(TIMED)
    tg = parse_graph(path)
    assert serialize_graph(tg) == TIMED


def test_built_graphs_round_trip():
    for seed in range(5):
        g = random_digraph(9, 0.4, -4, 12, seed=3000 + seed)
        assert parse_graph_text(serialize_graph(g)) == g
        tg = random_timed(7, 0.4, -4, 8, seed=3100 + seed)
        back = parse_graph_text(serialize_graph(tg))
        assert back.base == tg.base and back.times == tg.times


def _err(text):
    with pytest.raises(ParseError) as info:
        parse_graph_text(text, source="bad.gr")
    return info.value


def test_arc_out_of_range_names_line():
    err = _err("p sp 2 1\na 1 3 5\n")
    assert err.line == 2
    assert str(err).startswith("bad.gr:2:")


def test_vertex_ids_are_one_based():
    err = _err("p sp 2 1\na 0 1 5\n")
    assert err.line == 2


def test_duplicate_problem_line():
    assert _err("p sp 2 1\np sp 2 1\na 1 2 5\n").line == 2


def test_arc_before_problem_line():
    assert _err("a 1 2 5\np sp 2 1\n").line == 1


def test_missing_problem_line():
    err = _err("c nothing here\n")
    assert err.line is None
    assert "problem line" in str(err)


def test_bad_number():
    assert _err("p sp 2 1\na 1 2 five\n").line == 2


def test_non_finite_weight():
    assert _err("p sp 2 1\na 1 2 inf\n").line == 2
    assert _err("p sp 2 1\na 1 2 nan\n").line == 2


def test_field_count_enforced_per_format():
    assert _err("p sp 2 1\na 1 2\n").line == 2
    assert _err("p sp 2 1\na 1 2 5 1\n").line == 2
    assert _err("p spt 2 1\na 1 2 5\n").line == 2


def test_nonpositive_time_rejected():
    assert _err("p spt 2 1\na 1 2 5 0\n").line == 2
    assert _err("p spt 2 1\na 1 2 5 -1\n").line == 2


def test_declared_count_enforced():
    # one arc too many errors on the extra line
    assert _err("p sp 2 1\na 1 2 5\na 2 1 6\n").line == 3
    # one arc too few errors once the input ends
    too_few = _err("p sp 2 2\na 1 2 5\n")
    assert "2" in str(too_few)


def test_unknown_record_type():
    assert _err("p sp 2 1\nx 1 2 5\n").line == 2


def test_bad_problem_line():
    assert _err("p shortest 2 1\na 1 2 5\n").line == 1
    assert _err("p sp -1 0\n").line == 1
    assert _err("p sp 2\n").line == 1


def test_serialize_rejects_unsupported_weight():
    g = Digraph._unchecked(2, ((0, 1, Fraction(1, 3)),))
    with pytest.raises(TypeError):
        serialize_graph(g)
