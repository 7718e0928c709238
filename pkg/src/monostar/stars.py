"""Exact combinatorial star statistics.

Counts r-stars, classifies the (r+1)-vertex subsets carrying them by the
number k of spanning-star centers, and provides the degree-threshold
decomposition used to isolate high-degree star mass.

A spanning r-star in an (r+1)-vertex induced subgraph is exactly a vertex of
full within-subset degree r, so "contains k spanning stars" is equivalent to
"has k full-degree vertices". The classifier leans on this: a subset S = {v}
union U (U inside the neighborhood of v) has k(S) = 1 + #{u in U adjacent to
all of U \\ {u}}, and every full-degree vertex of S discovers S once, so
accumulating weight 1/k(S) per discovery counts each subset exactly once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .errors import BudgetExceededError
from .graphs import Graph, build_graph

__all__ = [
    "StarClassCounts",
    "Decomposition",
    "count_stars",
    "class_counts",
    "epsilon_big",
    "decompose",
    "remainder_mean_bound",
    "beta",
    "connected_components",
    "prune_low_degree_edges",
    "DEFAULT_CLASS_BUDGET",
]

DEFAULT_CLASS_BUDGET = 10**9


def count_stars(g: Graph, r: int) -> int:
    """Number of r-stars: sum over vertices of C(degree, r). Exact big integer."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if g.vertex_count == 0:
        return 0
    values, counts = np.unique(g.degrees, return_counts=True)
    return sum(comb(int(d), r) * int(c) for d, c in zip(values, counts))


@dataclass(frozen=True)
class StarClassCounts:
    """r-star count and the class counts Lambda_1..Lambda_{r+1}.

    class_counts[k-1] is the number of (r+1)-vertex subsets whose induced
    subgraph contains a spanning r-star and has exactly k full-degree vertices.
    Always satisfies sum(k * Lambda_k) == n_star.
    """

    r: int
    n_star: int
    class_counts: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "n_star": str(self.n_star),
            "lambda_raw": [str(x) for x in self.class_counts],
        }


def class_counts(g: Graph, r: int, budget: int = DEFAULT_CLASS_BUDGET) -> StarClassCounts:
    """Classify star-carrying (r+1)-subsets by their spanning-star count.

    Cost guard: refuses when sum_v C(d_v, r) exceeds ``budget`` star visits.
    Centers whose neighborhood admits no full-degree leaf (e.g. every center
    in a triangle-free graph) contribute C(d_v, r) class-1 subsets without
    enumeration, so the guard is conservative for sparse inputs.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    n_star = count_stars(g, r)
    if n_star > budget:
        raise BudgetExceededError(
            f"class_counts needs {n_star} star visits, budget is {budget}",
            cost=n_star,
            budget=budget,
        )
    lam1_direct = 0
    discoveries = [0] * (r + 2)  # index k: discoveries of subsets with k centers
    adj_sets = [set(nb) for nb in g.adjacency]
    for v in range(g.vertex_count):
        nb = g.adjacency[v]
        if len(nb) < r:
            continue
        nb_set = adj_sets[v]
        # Candidate full-degree leaves: need >= r-1 neighbors inside nb.
        local: dict[int, set[int]] = {}
        for u in nb:
            common = adj_sets[u] & nb_set
            if len(common) >= r - 1:
                local[u] = common
        if not local and r >= 2:
            lam1_direct += comb(len(nb), r)
            continue
        for subset in combinations(nb, r):
            k = 1
            for u in subset:
                commons = local.get(u)
                if commons is None:
                    continue
                for w in subset:
                    if w != u and w not in commons:
                        break
                else:
                    k += 1
            discoveries[k] += 1
    lams = [0] * (r + 2)
    lams[1] = lam1_direct + discoveries[1]
    for k in range(2, r + 2):
        lam_k = Fraction(discoveries[k], k)
        if lam_k.denominator != 1:
            raise AssertionError(f"non-integral class count at k={k}: {lam_k}")
        lams[k] = int(lam_k)
    result = StarClassCounts(r=r, n_star=n_star, class_counts=tuple(lams[1:]))
    if sum(k * lam for k, lam in enumerate(result.class_counts, start=1)) != n_star:
        raise AssertionError("class counts violate the star counting identity")
    return result


# ----------------------------------------------------------------------------
# Degree-threshold decomposition
# ----------------------------------------------------------------------------


def epsilon_big(g: Graph, c: int, eps: float) -> frozenset[int]:
    """Vertices with degree >= eps * c (closed threshold on integer degrees)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if c < 1:
        raise ValueError("c must be >= 1")
    return frozenset(int(v) for v in np.flatnonzero(g.degrees >= eps * c))


@dataclass(frozen=True)
class Decomposition:
    """Split of a graph at a degree threshold.

    ``g_plus`` holds the edges incident to big vertices (big-big edges
    removed); ``g_minus`` is induced on the non-big vertices. Both live on the
    original vertex universe, so their edges plus ``removed_big_big_edges``
    partition the source edge set exactly.
    """

    epsilon: float
    big_vertices: frozenset[int]
    g_plus: Graph
    g_minus: Graph
    removed_big_big_edges: tuple[tuple[int, int], ...]


def decompose(g: Graph, c: int, eps: float) -> Decomposition:
    big = epsilon_big(g, c, eps)
    plus_edges = []
    minus_edges = []
    removed = []
    for u, v in zip(g.edge_u, g.edge_v):
        u, v = int(u), int(v)
        u_big, v_big = u in big, v in big
        if u_big and v_big:
            removed.append((u, v))
        elif u_big or v_big:
            plus_edges.append((u, v))
        else:
            minus_edges.append((u, v))
    n = g.vertex_count
    return Decomposition(
        epsilon=eps,
        big_vertices=big,
        g_plus=build_graph(n, plus_edges),
        g_minus=build_graph(n, minus_edges),
        removed_big_big_edges=tuple(removed),
    )


def remainder_mean_bound(dec: Decomposition, r: int, c: int) -> float:
    """Upper bound (eps*c)^(r-1) * c^(-r) * sum of original big-vertex degrees
    on the expected count of cross stars centered outside the big set."""
    if r < 1:
        raise ValueError("r must be >= 1")
    total = 0
    for u in dec.big_vertices:
        deg = len(dec.g_plus.adjacency[u])
        deg += sum(1 for a, b in dec.removed_big_big_edges if u in (a, b))
        total += deg
    return (dec.epsilon * c) ** (r - 1) * c ** (-r) * total


# ----------------------------------------------------------------------------
# Joint indicator expectation
# ----------------------------------------------------------------------------


def connected_components(g: Graph) -> int:
    """Number of connected components; isolated vertices count."""
    seen = bytearray(g.vertex_count)
    count = 0
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        count += 1
        stack = [start]
        seen[start] = 1
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = 1
                    stack.append(w)
    return count


def beta(h: Graph, c: int) -> Fraction:
    """Probability that every edge of h is monochromatic: (1/c)^(|V|-components).

    Isolated vertices add one to both |V| and the component count, so the
    value is insensitive to how much of the ambient universe h carries.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    exponent = h.vertex_count - connected_components(h)
    return Fraction(1, c**exponent)


def prune_low_degree_edges(g: Graph, r: int) -> Graph:
    """Drop edges whose endpoints both have degree <= r-1.

    Such edges carry no r-star, so star counts are unchanged; diagnostic use
    only, generators never prune.
    """
    keep = [
        (int(u), int(v))
        for u, v in zip(g.edge_u, g.edge_v)
        if max(int(g.degrees[u]), int(g.degrees[v])) >= r
    ]
    return build_graph(g.vertex_count, keep)
