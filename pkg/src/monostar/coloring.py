"""Uniform random colorings, fast monochromatic r-star evaluation, and a
reproducible Monte-Carlo engine.

The engine partitions sample indices into fixed-size blocks (block size is a
function of the graph alone) and keys one Philox stream per (seed, block), so
the colors of sample i depend only on (seed, i) and the merged histogram is
identical for any worker count.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import BudgetExceededError
from .graphs import Graph

__all__ = [
    "Coloring",
    "EmpiricalDist",
    "sample_coloring",
    "eval_T",
    "monte_carlo",
    "empirical_moments",
    "DEFAULT_MC_BUDGET",
]

DEFAULT_MC_BUDGET = 10**11

_BLOCK_CELL_TARGET = 2_000_000
_MAX_BLOCK_ROWS = 4096
_MATRIX_KERNEL_MIN_ROWS = 64


@dataclass(frozen=True)
class Coloring:
    """Per-vertex colors in [0, c)."""

    colors: np.ndarray
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("c must be >= 1")
        if self.colors.size and int(self.colors.max()) >= self.c:
            raise ValueError("color out of range")


def _color_dtype(c: int):
    if c <= 1 << 16:
        return np.uint16
    if c <= 1 << 32:
        return np.uint32
    return np.uint64


def sample_coloring(g: Graph, c: int, rng: np.random.Generator) -> Coloring:
    """Independent uniform color per vertex; deterministic given the stream state."""
    if c < 1:
        raise ValueError("c must be >= 1")
    colors = rng.integers(0, c, size=g.vertex_count, dtype=_color_dtype(c))
    return Coloring(colors=colors, c=c)


def _star_table(g: Graph, r: int) -> np.ndarray | None:
    """C(m, r) lookup for m up to the max degree; None if int64 could overflow."""
    top = g.max_degree()
    if top >= r and comb(top, r) > 1 << 62:
        return None
    return np.array([comb(m, r) for m in range(top + 2)], dtype=np.int64)


def _eval_one(g: Graph, r: int, colors: np.ndarray) -> int:
    """T = sum over vertices of C(m_v, r), m_v = same-colored neighbor count."""
    if g.edge_count == 0:
        return 0
    cu = colors[g.edge_u]
    cv = colors[g.edge_v]
    hit = np.flatnonzero(cu == cv)
    if hit.size == 0:
        return 0
    ends = np.concatenate([g.edge_u[hit], g.edge_v[hit]])
    _, match_counts = np.unique(ends, return_counts=True)
    mvals, mult = np.unique(match_counts, return_counts=True)
    # Final sum in Python ints: exact regardless of magnitude.
    return sum(comb(int(m), r) * int(k) for m, k in zip(mvals, mult) if m >= r)


def eval_T(g: Graph, r: int, col: Coloring) -> int:
    if r < 1:
        raise ValueError("r must be >= 1")
    if col.colors.shape != (g.vertex_count,):
        raise ValueError("coloring does not match the graph")
    return _eval_one(g, r, col.colors)


@dataclass(frozen=True)
class EmpiricalDist:
    """Histogram of T over independent colorings."""

    counts: dict[int, int]
    total_samples: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(sorted(self.counts.items())))
        if sum(self.counts.values()) != self.total_samples:
            raise ValueError("histogram mass does not match total_samples")
        if any(v < 0 for v in self.counts):
            raise ValueError("negative T value in histogram")

    def to_pmf(self):
        from .pmf import Pmf

        total = self.total_samples
        return Pmf({v: Fraction(k, total) for v, k in self.counts.items()}, Fraction(0))

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.total_samples,
            "counts": {str(v): k for v, k in self.counts.items()},
        }

    def to_csv(self) -> str:
        lines = ["value,count"]
        lines.extend(f"{v},{k}" for v, k in self.counts.items())
        return "\n".join(lines) + "\n"


def empirical_moments(d: EmpiricalDist, order: int) -> list[Fraction]:
    """Exact rational raw moments 1..order of the empirical measure."""
    if order < 1:
        raise ValueError("order must be >= 1")
    out = []
    for j in range(1, order + 1):
        num = sum(k * v**j for v, k in d.counts.items())
        out.append(Fraction(num, d.total_samples))
    return out


def _block_rows(g: Graph) -> int:
    cells = g.vertex_count + 2 * g.edge_count
    return max(1, min(_MAX_BLOCK_ROWS, _BLOCK_CELL_TARGET // max(cells, 1)))


def _eval_rows_matrix(g: Graph, r: int, colors: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Vectorized T for every row of a (rows, n) color matrix."""
    rows = colors.shape[0]
    out = np.zeros(rows, dtype=np.int64)
    if g.edge_count == 0:
        return out
    n = g.vertex_count
    cu = colors[:, g.edge_u]
    cv = colors[:, g.edge_v]
    ri, ei = np.nonzero(cu == cv)
    if ri.size == 0:
        return out
    verts = np.concatenate([g.edge_u[ei], g.edge_v[ei]]).astype(np.int64)
    rows2 = np.concatenate([ri, ri]).astype(np.int64)
    keys, match_counts = np.unique(rows2 * n + verts, return_counts=True)
    np.add.at(out, keys // n, table[match_counts])
    return out


def _run_blocks(g: Graph, r: int, c: int, seed: int, block_span, block_size: int,
                samples: int, table: np.ndarray | None) -> Counter:
    counter: Counter = Counter()
    dtype = _color_dtype(c)
    n = g.vertex_count
    for b in block_span:
        rows = min(block_size, samples - b * block_size)
        rng = np.random.Generator(np.random.Philox(key=[seed, b]))
        colors = rng.integers(0, c, size=(rows, n), dtype=dtype)
        if table is not None and rows >= _MATRIX_KERNEL_MIN_ROWS:
            t_vals = _eval_rows_matrix(g, r, colors, table)
            values, reps = np.unique(t_vals, return_counts=True)
            for v, k in zip(values, reps):
                counter[int(v)] += int(k)
        else:
            for i in range(rows):
                counter[_eval_one(g, r, colors[i])] += 1
    return counter


def monte_carlo(g: Graph, r: int, c: int, samples: int, seed: int,
                workers: int = 1, budget: int = DEFAULT_MC_BUDGET) -> EmpiricalDist:
    """Histogram of T over ``samples`` independent uniform colorings.

    Per-sample randomness is a fixed function of (seed, sample index), so the
    result is identical for any ``workers`` value; workers only split blocks.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if c < 1:
        raise ValueError("c must be >= 1")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    cost = samples * max(g.vertex_count, 1)
    if cost > budget:
        raise BudgetExceededError(
            f"monte_carlo cost {cost} vertex-colorings exceeds budget {budget}",
            cost=cost,
            budget=budget,
        )
    table = _star_table(g, r)
    block = _block_rows(g)
    nblocks = -(-samples // block)
    if workers == 1 or nblocks == 1:
        counter = _run_blocks(g, r, c, seed, range(nblocks), block, samples, table)
    else:
        spans = [rng for rng in np.array_split(np.arange(nblocks), workers) if rng.size]
        counter = Counter()
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            futures = [
                pool.submit(_run_blocks, g, r, c, seed, [int(b) for b in span],
                            block, samples, table)
                for span in spans
            ]
            for fut in futures:
                counter.update(fut.result())
    return EmpiricalDist(counts=dict(counter), total_samples=samples, seed=seed)
