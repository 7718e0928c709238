from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monostar.errors import BudgetExceededError
from monostar.graphs import (
    build_graph,
    complete,
    complete_bipartite,
    cycle,
    figure2_composite,
    generate,
    parse_generator,
    star,
    tadpole31,
)
from monostar.stars import (
    beta,
    class_counts,
    connected_components,
    count_stars,
    decompose,
    epsilon_big,
    prune_low_degree_edges,
    remainder_mean_bound,
)

from oracles import brute_class_counts, brute_count_stars, random_graph


class TestCountStars:
    def test_triangle(self):
        assert count_stars(complete(3), 2) == 3

    @pytest.mark.parametrize("n,r", [(3, 2), (5, 2), (7, 3), (10, 4)])
    def test_star_formula(self, n, r):
        assert count_stars(star(n), r) == comb(n, r)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_complete_formula_vs_brute(self, n):
        for r in (1, 2, 3):
            g = complete(n)
            assert count_stars(g, r) == n * comb(n - 1, r)
            assert count_stars(g, r) == brute_count_stars(g, r)

    def test_zero_when_max_degree_small(self):
        assert count_stars(cycle(5), 3) == 0

    def test_empty_graph(self):
        assert count_stars(build_graph(0, []), 2) == 0

    def test_big_integer_exactness(self):
        # C(5000, 3) overflows 32-bit arithmetic comfortably
        assert count_stars(star(5000), 3) == comb(5000, 3)

    @given(st.integers(0, 9), st.integers(1, 4), st.random_module())
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, n, r, _rnd):
        g = random_graph(np.random.default_rng(n * 31 + r), n)
        assert count_stars(g, r) == brute_count_stars(g, r)


class TestClassCounts:
    def test_triangle(self):
        cc = class_counts(complete(3), 2)
        assert cc.class_counts == (0, 0, 1)
        assert 3 * 1 == cc.n_star

    def test_cycle4(self):
        assert class_counts(cycle(4), 2).class_counts == (4, 0, 0)

    def test_tadpole_r3(self):
        assert class_counts(tadpole31(), 3).class_counts == (1, 0, 0, 0)

    def test_r1_counts_edges_twice(self):
        g = cycle(6)
        cc = class_counts(g, 1)
        assert cc.class_counts == (0, 6)
        assert cc.n_star == 12

    def test_complete_r2(self):
        # every 3-subset of K_n induces a triangle
        cc = class_counts(complete(6), 2)
        assert cc.class_counts == (0, 0, comb(6, 3))

    def test_bipartite_has_only_class1(self):
        cc = class_counts(complete_bipartite(4), 2)
        assert cc.class_counts[1:] == (0, 0)
        assert cc.class_counts[0] == cc.n_star

    def test_budget_guard(self):
        with pytest.raises(BudgetExceededError) as err:
            class_counts(star(100), 2, budget=10)
        assert err.value.budget == 10

    def test_json_serialization(self):
        d = class_counts(complete(3), 2).to_json_dict()
        assert d == {"r": 2, "n_star": "3", "lambda_raw": ["0", "0", "1"]}

    @given(st.integers(0, 9), st.integers(1, 3), st.random_module())
    @settings(max_examples=80, deadline=None)
    def test_matches_subset_classifier(self, n, r, _rnd):
        g = random_graph(np.random.default_rng(n * 101 + r), n)
        assert class_counts(g, r).class_counts == brute_class_counts(g, r)

    @given(st.integers(0, 9), st.integers(1, 3), st.random_module())
    @settings(max_examples=80, deadline=None)
    def test_counting_identity(self, n, r, _rnd):
        g = random_graph(np.random.default_rng(n * 53 + r), n)
        cc = class_counts(g, r)
        assert sum(k * lam for k, lam in enumerate(cc.class_counts, start=1)) == cc.n_star


class TestDecomposition:
    def test_star_hub_is_big(self):
        assert epsilon_big(star(100), 100, 0.5) == {0}

    def test_cycle_has_no_big(self):
        assert epsilon_big(cycle(10), 100, 0.5) == frozenset()

    def test_figure2_hub_only(self):
        g = figure2_composite(100)
        assert epsilon_big(g, 100, 0.5) == {0}

    def test_threshold_is_closed(self):
        g = star(50)
        assert 0 in epsilon_big(g, 100, 0.5)  # degree 50 == 0.5 * 100

    def test_no_big_vertices_identity(self):
        g = cycle(10)
        dec = decompose(g, 100, 0.5)
        assert dec.g_minus.adjacency == g.adjacency
        assert dec.g_plus.edge_count == 0
        assert dec.removed_big_big_edges == ()

    def test_big_big_edge_removed(self):
        g = build_graph(2, [(0, 1)])
        dec = decompose(g, 1, 0.5)
        assert dec.big_vertices == {0, 1}
        assert dec.removed_big_big_edges == ((0, 1),)
        assert dec.g_plus.edge_count == dec.g_minus.edge_count == 0

    def test_figure2_split(self):
        g = figure2_composite(100)
        dec = decompose(g, 100, 0.5)
        assert dec.big_vertices == {0}
        assert dec.g_plus.edge_count == 100  # the hub star
        assert dec.g_minus.edge_count == g.edge_count - 100
        assert len(dec.g_minus.adjacency[0]) == 0

    def test_edge_partition_and_bipartite(self):
        g = generate(parse_generator("er:40:0.3:seed=11"))
        c = 20
        dec = decompose(g, c, 0.4)
        parts = dec.g_plus.edge_count + dec.g_minus.edge_count + len(dec.removed_big_big_edges)
        assert parts == g.edge_count
        # g_plus edges always join a big vertex to a non-big vertex
        for u, v in zip(dec.g_plus.edge_u, dec.g_plus.edge_v):
            assert (int(u) in dec.big_vertices) != (int(v) in dec.big_vertices)
        # g_minus never touches big vertices
        for v in dec.big_vertices:
            assert len(dec.g_minus.adjacency[v]) == 0

    @pytest.mark.parametrize("text,c,eps", [
        ("figure2:100", 100, 0.5),
        ("union:0.6,0.3,0.1:100", 100, 0.2),
        ("star:50", 50, 0.5),
    ])
    def test_star_accounting_across_split(self, text, c, eps):
        # with no big-big edges: total stars = stars centered at big vertices
        # + stars inside g_minus + cross stars (small center, >= 1 big leaf)
        g = generate(parse_generator(text))
        r = 2
        dec = decompose(g, c, eps)
        assert dec.removed_big_big_edges == ()
        from math import comb

        big_centered = sum(comb(len(dec.g_plus.adjacency[v]), r) for v in dec.big_vertices)
        cross = sum(
            comb(int(g.degrees[v]), r) - comb(len(dec.g_minus.adjacency[v]), r)
            for v in range(g.vertex_count)
            if v not in dec.big_vertices
        )
        assert count_stars(g, r) == big_centered + count_stars(dec.g_minus, r) + cross

    def test_remainder_bound_no_big(self):
        assert remainder_mean_bound(decompose(cycle(10), 100, 0.5), 2, 100) == 0

    @pytest.mark.parametrize("n", [20, 100])
    def test_remainder_bound_star(self, n):
        dec = decompose(star(n), n, 0.5)
        assert remainder_mean_bound(dec, 2, n) == pytest.approx(0.5)
        assert remainder_mean_bound(dec, 3, n) == pytest.approx(0.25)


class TestBeta:
    def test_single_edge(self):
        assert beta(build_graph(2, [(0, 1)]), 3) == Fraction(1, 3)

    def test_two_disjoint_edges(self):
        assert beta(build_graph(4, [(0, 1), (2, 3)]), 3) == Fraction(1, 9)

    def test_triangle(self):
        assert beta(complete(3), 2) == Fraction(1, 4)

    def test_isolated_vertices_cancel(self):
        h1 = build_graph(2, [(0, 1)])
        h2 = build_graph(10, [(0, 1)])
        assert beta(h1, 5) == beta(h2, 5)

    def test_disjoint_union_multiplies(self):
        rng = np.random.default_rng(4242)
        for _ in range(25):
            a = random_graph(rng, 6)
            b = random_graph(rng, 6)
            union = build_graph(
                a.vertex_count + b.vertex_count,
                [(int(u), int(v)) for u, v in zip(a.edge_u, a.edge_v)]
                + [(a.vertex_count + int(u), a.vertex_count + int(v))
                   for u, v in zip(b.edge_u, b.edge_v)],
            )
            assert beta(union, 4) == beta(a, 4) * beta(b, 4)

    @given(st.integers(2, 8), st.integers(2, 5), st.random_module())
    @settings(max_examples=120, deadline=None)
    def test_superadditive_under_overlapping_union(self, n, c, _rnd):
        # H1, H2 are labelled edge subsets on a shared vertex universe
        rng = np.random.default_rng(n * 7919 + c)
        pool = [(u, v) for u in range(n) for v in range(u + 1, n)]
        pick = lambda: [e for e in pool if rng.random() < 0.35]
        e1, e2 = pick(), pick()
        h1 = build_graph(n, e1)
        h2 = build_graph(n, e2)
        union = build_graph(n, e1 + e2)
        assert beta(union, c) >= beta(h1, c) * beta(h2, c)


class TestPrune:
    def test_pruning_preserves_star_count(self):
        g = generate(parse_generator("er:30:0.15:seed=3"))
        for r in (2, 3):
            pruned = prune_low_degree_edges(g, r)
            assert pruned.edge_count <= g.edge_count
            assert count_stars(pruned, r) == count_stars(g, r)

    def test_components(self):
        g = build_graph(5, [(0, 1), (2, 3)])
        assert connected_components(g) == 3
