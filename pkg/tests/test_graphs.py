import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monostar.errors import EdgeListParseError
from monostar.graphs import (
    GeneratorSpec,
    build_graph,
    circulant,
    complete,
    complete_bipartite,
    cycle,
    degree_sequence,
    edge_list_text,
    figure2_composite,
    generate,
    generator_scale,
    load_edge_list,
    parse_edge_list,
    parse_generator,
    path,
    spec_to_string,
    star,
    star_union,
    tadpole31,
)


def assert_well_formed(g):
    assert g.edge_count * 2 == sum(len(nb) for nb in g.adjacency)
    for v, nb in enumerate(g.adjacency):
        assert list(nb) == sorted(set(nb)), "neighbors sorted and unique"
        assert v not in nb, "no self-loops"
        for u in nb:
            assert 0 <= u < g.vertex_count
            assert v in g.adjacency[u], "symmetry"
    assert len(g.edge_u) == g.edge_count
    assert all(int(u) < int(v) for u, v in zip(g.edge_u, g.edge_v))


class TestLoader:
    def test_two_edge_path(self):
        g = load_edge_list("0 1\n1 2")
        assert g.vertex_count == 3
        assert g.edge_count == 2
        assert degree_sequence(g) == [2, 1, 1]

    def test_duplicates_collapse(self):
        g = load_edge_list("0 1\n1 0\n0 1")
        assert (g.vertex_count, g.edge_count) == (2, 1)

    def test_tadpole_edge_list(self):
        g = load_edge_list("0 1\n1 2\n2 0\n2 3")
        assert degree_sequence(g) == [3, 2, 2, 1]

    def test_comments_and_blanks(self):
        g = load_edge_list("# header\n\n0 1  # inline\n   \n1 2\n")
        assert g.edge_count == 2

    def test_id_compaction(self):
        g, mapping = parse_edge_list("10 70\n70 300")
        assert g.vertex_count == 3
        assert mapping == {10: 0, 70: 1, 300: 2}

    def test_reads_streams(self):
        g = load_edge_list(io.StringIO("0 1\n"))
        assert g.edge_count == 1

    def test_malformed_line_number(self):
        with pytest.raises(EdgeListParseError) as err:
            load_edge_list("0 1\n0 1 2\n")
        assert err.value.line_number == 2

    def test_non_integer_rejected(self):
        with pytest.raises(EdgeListParseError):
            load_edge_list("a b\n")

    def test_negative_id_rejected(self):
        with pytest.raises(EdgeListParseError):
            load_edge_list("-1 2\n")

    def test_self_loop_rejected(self):
        with pytest.raises(EdgeListParseError) as err:
            load_edge_list("0 1\n3 3\n")
        assert err.value.line_number == 2


class TestGenerators:
    def test_star(self):
        g = star(4)
        assert g.vertex_count == 5
        assert degree_sequence(g) == [4, 1, 1, 1, 1]

    def test_complete(self):
        g = complete(4)
        assert (g.vertex_count, g.edge_count) == (4, 6)
        assert degree_sequence(g) == [3, 3, 3, 3]

    def test_cycle(self):
        assert degree_sequence(cycle(5)) == [2] * 5

    def test_path(self):
        g = path(7)
        assert g.edge_count == 6
        assert degree_sequence(g) == [2] * 5 + [1, 1]

    def test_bipartite(self):
        g = complete_bipartite(3)
        assert (g.vertex_count, g.edge_count) == (6, 9)
        assert degree_sequence(g) == [3] * 6

    def test_tadpole(self):
        assert degree_sequence(tadpole31()) == [3, 2, 2, 1]

    def test_star_union_floor_sizes(self):
        g = star_union((0.6, 0.3, 0.1), 10)
        # floor sizes 6, 3, 1 -> 10 leaves + 3 hubs
        assert g.vertex_count == 13
        assert sorted(d for d in degree_sequence(g) if d > 1) == [3, 6]

    def test_star_union_drops_empty(self):
        g = star_union((0.05, 0.9), 10)
        # floor(0.5) = 0 star dropped
        assert g.vertex_count == 10
        assert max(degree_sequence(g)) == 9

    def test_star_union_shifted_has_n_stars(self):
        g = star_union((0.5,), 9, shift_exponent=0.5)
        # 9 stars of floor(9a_s + 3) leaves: one of 7, eight of 3
        assert degree_sequence(g)[0] == 7
        assert degree_sequence(g).count(3) == 8

    def test_figure2_small(self):
        g = figure2_composite(10)
        assert g.vertex_count == 11 + 5 + 100
        assert degree_sequence(g)[0] == 10  # star hub dominates

    def test_figure2_three_parts_two_bridges(self):
        n = 10
        g = figure2_composite(n)
        m2 = 5
        part = [0] * (n + 1) + [1] * m2 + [2] * (n * n)
        cross = [
            (int(u), int(v))
            for u, v in zip(g.edge_u, g.edge_v)
            if part[int(u)] != part[int(v)]
        ]
        assert len(cross) == 2
        kinds = sorted((part[u], part[v]) for u, v in cross)
        assert kinds == [(0, 1), (1, 2)]

    def test_figure2_max_degree_is_hub(self):
        g = figure2_composite(100)
        assert degree_sequence(g)[0] == 100
        assert int(g.degrees[0]) == 100

    def test_circulant_regularity(self):
        g = circulant(10, 4)
        assert degree_sequence(g) == [4] * 10

    def test_circulant_rejects_odd(self):
        with pytest.raises(ValueError):
            circulant(10, 3)

    def test_erdos_renyi_deterministic(self):
        a = generate(parse_generator("er:50:0.2:seed=7"))
        b = generate(parse_generator("er:50:0.2:seed=7"))
        c = generate(parse_generator("er:50:0.2:seed=8"))
        assert a.adjacency == b.adjacency
        assert a.adjacency != c.adjacency

    def test_disjoint_copies(self):
        g = generate(parse_generator("copies:3:star:3"))
        assert g.vertex_count == 12
        assert degree_sequence(g) == [3, 3, 3, 1, 1, 1, 1, 1, 1, 1, 1, 1]

    @pytest.mark.parametrize("text", [
        "star:4", "union:0.6,0.3,0.1:30", "complete:5", "bipartite:4", "cycle:6",
        "path:9", "circulant:12:4", "tadpole31", "copies:4:tadpole31",
        "figure2:5", "er:20:0.3:seed=3",
    ])
    def test_every_generator_well_formed(self, text):
        g = generate(parse_generator(text))
        assert_well_formed(g)

    def test_spec_string_round_trip(self):
        for text in ["star:4", "figure2:10", "er:100:0.05:seed=7",
                     "copies:10000:star:3", "union:0.6,0.3,0.1:3000"]:
            spec = parse_generator(text)
            assert parse_generator(spec_to_string(spec)) == spec

    def test_generator_scale(self):
        assert generator_scale(parse_generator("star:123")) == 123
        assert generator_scale(parse_generator("copies:77:star:3")) == 77

    def test_unknown_generator(self):
        with pytest.raises(ValueError):
            parse_generator("moebius:7")


class TestRoundTrip:
    def test_save_load_identity_on_dense_ids(self):
        g = figure2_composite(4)
        g2 = load_edge_list(edge_list_text(g))
        assert g2.adjacency == g.adjacency

    @given(st.integers(2, 12), st.random_module())
    @settings(max_examples=40, deadline=None)
    def test_random_round_trip(self, n, _rnd):
        rng = np.random.default_rng(n * 977)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        g = build_graph(n, edges)
        if g.edge_count == 0:
            return
        g2 = load_edge_list(edge_list_text(g))
        # compaction drops isolated vertices; degree sequences match on support
        assert [d for d in degree_sequence(g) if d > 0] == degree_sequence(g2)

    @given(st.integers(3, 40), st.integers(1, 6))
    @settings(max_examples=60, deadline=None)
    def test_circulant_always_regular(self, n, half_d):
        d = 2 * half_d
        if d >= n:
            return
        g = circulant(n, d)
        assert degree_sequence(g) == [d] * n


def test_build_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        build_graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        build_graph(3, [(0, 5)])


def test_vertex_count_addressing_guard():
    with pytest.raises(ValueError):
        build_graph(1 << 40, [])


def test_generate_spec_dataclass_direct():
    g = generate(GeneratorSpec("star", n=2))
    assert g.vertex_count == 3
