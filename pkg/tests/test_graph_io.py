import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from btas.graph_io import (
    RANDOM_FAMILY,
    Graph,
    ParseError,
    SentinelConvention,
    edge_list_to_text,
    graph_to_matrix,
    matrix_to_graph,
    matrix_to_text,
    parse_edge_list,
    parse_matrix,
    random_graph,
)
from btas.matrix import TropicalMatrix
from btas.semiring import SemiringKind

MIN = SemiringKind.MIN_PLUS
MAX = SemiringKind.MAX_PLUS
INF = math.inf


def test_parse_edge_list_example():
    g = parse_edge_list("3 2\n0 1 1\n1 2 2")
    assert g.n == 3
    assert g.edges == ((0, 1, 1.0), (1, 2, 2.0))


def test_duplicate_edges_keep_minimum():
    g = parse_edge_list("2 2\n0 1 5\n0 1 3")
    assert g.edges == ((0, 1, 3.0),)


def test_out_of_range_vertex_rejected_with_line_number():
    with pytest.raises(ParseError) as err:
        parse_edge_list("2 1\n0 5 1")
    assert err.value.line_no == 2


def test_edge_count_mismatch_rejected():
    with pytest.raises(ParseError):
        parse_edge_list("3 2\n0 1 1")
    with pytest.raises(ParseError):
        parse_edge_list("3 1\n0 1 1\n1 2 2")


def test_malformed_edge_lines_rejected():
    for text in ("", "3", "x 2\n0 1 1", "2 1\n0 1", "2 1\n0 1 two", "2 -1"):
        with pytest.raises(ParseError):
            parse_edge_list(text)


def test_infinite_edge_weight_rejected():
    with pytest.raises(ParseError):
        parse_edge_list("2 1\n0 1 inf")


def test_comments_and_blank_lines_ignored():
    g = parse_edge_list("# a graph\n\n3 2\n0 1 1\n# middle\n1 2 2\n")
    assert g.edge_count == 2


def test_self_loop_handling():
    dropped = parse_edge_list("2 1\n0 0 3")
    assert dropped.edges == ()
    kept = parse_edge_list("2 1\n0 0 -3")
    assert kept.edges == ((0, 0, -3.0),)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(0, ())
    with pytest.raises(ValueError):
        Graph(2, ((0, 5, 1.0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 1, math.nan),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 1, INF),))


def test_graph_normalizes_duplicates_and_order():
    g = Graph(3, ((2, 1, 4.0), (0, 1, 9.0), (0, 1, 2.0)))
    assert g.edges == ((0, 1, 2.0), (2, 1, 4.0))


def test_edge_list_text_round_trip():
    g = Graph(4, ((0, 1, 1.0), (1, 2, 2.5), (3, 0, -2.0)))
    assert parse_edge_list(edge_list_to_text(g)) == g


def test_graph_to_matrix_example():
    m = graph_to_matrix(Graph(3, ((0, 1, 1.0), (1, 2, 2.0), (0, 2, 5.0))))
    assert m.to_lists() == [[0, 1, 5], [INF, 0, 2], [INF, INF, 0]]
    assert m.kind is MIN
    assert m.integer


def test_graph_to_matrix_empty_and_negative_loop():
    assert graph_to_matrix(Graph(2, ())).to_lists() == [[0, INF], [INF, 0]]
    loop = graph_to_matrix(Graph(1, ((0, 0, -1.0),)))
    assert loop.to_lists() == [[-1]]


def test_matrix_graph_round_trip():
    g = Graph(4, ((0, 1, 1.0), (1, 2, 2.0), (3, 3, -5.0), (2, 0, 7.0)))
    assert matrix_to_graph(graph_to_matrix(g)) == g


def test_matrix_to_graph_drops_unreachable_and_zero_diagonal():
    m = TropicalMatrix(MIN, [[0, INF], [3, 0]])
    assert matrix_to_graph(m) == Graph(2, ((1, 0, 3.0),))


def test_matrix_to_graph_rejects_wrong_shape_or_kind():
    with pytest.raises(ValueError):
        matrix_to_graph(TropicalMatrix(MIN, [[0, 1, 2], [3, 0, 4]]))
    with pytest.raises(ValueError):
        matrix_to_graph(TropicalMatrix(MAX, [[0, 1], [1, 0]]))


def test_matrix_text_example():
    m = parse_matrix("2 2 minplus\n0 inf\n1 0")
    assert m.to_lists() == [[0, INF], [1, 0]]
    assert matrix_to_text(m) == "2 2 minplus\n0 inf\n1 0\n"


entries = st.one_of(st.integers(min_value=-1000, max_value=1000).map(float), st.just(INF))


@st.composite
def symbolic_grids(draw):
    rows = draw(st.integers(min_value=1, max_value=6))
    cols = draw(st.integers(min_value=1, max_value=6))
    return draw(st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows))


@given(st.sampled_from([MIN, MAX]), symbolic_grids())
def test_integer_matrix_text_round_trip_is_exact(kind, grid):
    m = TropicalMatrix(kind, grid)
    assert m.integer
    back = parse_matrix(matrix_to_text(m))
    assert back.kind is kind
    assert back.tobytes() == m.tobytes()
    assert back.integer


@given(st.lists(st.floats(min_value=-1e9, max_value=1e9, allow_nan=False), min_size=1, max_size=8))
def test_float_matrix_text_round_trip_is_exact(values):
    m = TropicalMatrix(MIN, [values])
    back = parse_matrix(matrix_to_text(m))
    assert back.tobytes() == m.tobytes()


def test_parse_matrix_errors():
    for text in (
        "",
        "2 2\n0 1\n1 0",
        "2 2 boolean\n0 1\n1 0",
        "2 2 minplus\n0 1",
        "2 2 minplus\n0\n1 0",
        "2 2 minplus\n0 nan\n1 0",
        "2 2 minplus\n0 spam\n1 0",
        "0 1 minplus\n",
    ):
        with pytest.raises(ParseError):
            parse_matrix(text)


def test_zero_sentinel_example():
    m = parse_matrix("0 0\n4 0", SentinelConvention.ZERO_MEANS_NO_EDGE)
    assert m.to_lists() == [[0, INF], [4, 0]]


def test_minus_one_sentinel_example():
    m = parse_matrix("0 -1\n3 0", SentinelConvention.MINUS_ONE_MEANS_NO_EDGE)
    assert m.to_lists() == [[0, INF], [3, 0]]


def test_zero_sentinel_keeps_diagonal_and_finite_weights():
    text = "0 7 0\n2 0 5\n0 3 0"
    m = parse_matrix(text, SentinelConvention.ZERO_MEANS_NO_EDGE)
    assert m.to_lists() == [[0, 7, INF], [2, 0, 5], [INF, 3, 0]]


def test_minus_one_sentinel_applies_everywhere():
    text = "-1 -1\n5 -1"
    m = parse_matrix(text, SentinelConvention.MINUS_ONE_MEANS_NO_EDGE)
    assert m.to_lists() == [[INF, INF], [5, INF]]


def test_grid_parsing_errors():
    convention = SentinelConvention.ZERO_MEANS_NO_EDGE
    for text in ("0 0\n4", "0 0 0\n4 0 0", "0 x\n4 0", "0 inf\n4 0", "0 nan\n4 0"):
        with pytest.raises(ParseError):
            parse_matrix(text, convention)


def test_sentinel_convention_tokens():
    assert SentinelConvention.from_token("INF") is SentinelConvention.INF_TOKEN
    assert SentinelConvention.from_token("zero") is SentinelConvention.ZERO_MEANS_NO_EDGE
    assert SentinelConvention.from_token("minus-one") is SentinelConvention.MINUS_ONE_MEANS_NO_EDGE
    with pytest.raises(ValueError):
        SentinelConvention.from_token("guess")


def test_random_graph_edge_probability_extremes():
    assert random_graph(4, 0.0, (1, 100), 7).edge_count == 0
    full = random_graph(4, 1.0, (1, 1), 7)
    assert full.edge_count == 12
    assert all(w == 1.0 for _, _, w in full.edges)


def test_random_graph_is_deterministic_per_seed():
    a = random_graph(12, 0.4, (1, 100), 2024)
    b = random_graph(12, 0.4, (1, 100), 2024)
    assert a == b
    c = random_graph(12, 0.4, (1, 100), 2025)
    assert a != c


def test_random_graph_weight_ranges():
    integral = random_graph(10, 0.8, (1, 100), 5)
    assert integral.edge_count > 0
    assert all(w.is_integer() and 1 <= w <= 100 for _, _, w in integral.edges)
    real = random_graph(10, 0.8, (0.5, 2.5), 5)
    assert all(0.5 <= w < 2.5 for _, _, w in real.edges)


def test_random_graph_validation():
    with pytest.raises(ValueError):
        random_graph(0, 0.5, (1, 100), 1)
    with pytest.raises(ValueError):
        random_graph(4, -0.1, (1, 100), 1)
    with pytest.raises(ValueError):
        random_graph(4, 1.5, (1, 100), 1)
    with pytest.raises(ValueError):
        random_graph(4, 0.5, (100, 1), 1)
    with pytest.raises(ValueError):
        random_graph(4, 0.5, (0, INF), 1)


def test_random_family_token():
    assert RANDOM_FAMILY == "numpy-pcg64"
