"""Experiment orchestration: generate -> count -> reference law -> Monte Carlo
-> distances, plus the pre-wired example suite and the birthday estimator.

Reports are deterministic given (spec, seed): every float reduction runs in
sorted order and the canonical JSON form excludes wall-clock runtime.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

from .coloring import DEFAULT_MC_BUDGET, empirical_moments, monte_carlo
from .errors import BudgetExceededError, MonostarError
from .graphs import generate, generator_scale, parse_generator
from .limits import (
    LimitLawParams,
    figure2_params,
    limit_pmf,
    params_from_graph,
    validate_params,
)
from .oracle import DEFAULT_ORACLE_BUDGET, exact_pmf
from .pmf import pmf_moments, tv_distance
from .stars import DEFAULT_CLASS_BUDGET, class_counts, count_stars

__all__ = [
    "ExperimentSpec",
    "Report",
    "run_experiment",
    "builtin_example",
    "builtin_names",
    "birthday_probability",
    "resolve_colors",
    "DEFAULT_TV_TOLERANCE",
]

# Finite-size tolerances are engineering choices, not theorem content; they
# are echoed in every report.
DEFAULT_TV_TOLERANCE = {"exact-oracle": 0.005, "limit-law": 0.05}

_EXPR_NAMES = {
    "floor": math.floor,
    "ceil": math.ceil,
    "sqrt": math.sqrt,
    "log": math.log,
    "round": round,
    "min": min,
    "max": max,
}


def resolve_colors(rule: int | str, scale: int) -> int:
    """Fixed color count, or an expression in the generator scale ``n``."""
    if isinstance(rule, int):
        c = rule
    else:
        value = eval(rule, {"__builtins__": {}}, dict(_EXPR_NAMES, n=scale))  # noqa: S307
        c = int(round(value))
    if c < 1:
        raise ValueError(f"color rule {rule!r} resolved to c = {c} < 1")
    return c


@dataclass(frozen=True)
class ExperimentSpec:
    """Generator + scaling + sampling plan and the comparison to run."""

    generator: str
    r: int
    colors: int | str
    samples: int
    seed: int
    comparison: str = "limit-law"  # exact-oracle | limit-law | both
    workers: int = 1
    theta_cut: int = 8
    theta_threshold: float = 0.05
    tail_eps: float = 1e-9
    predicted_params: LimitLawParams | None = None
    tv_tolerance: float | None = None
    mean_rtol: float = 0.05
    name: str = ""
    notes: tuple[str, ...] = ()
    class_budget: int = DEFAULT_CLASS_BUDGET
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    mc_budget: int = DEFAULT_MC_BUDGET

    def spec_echo(self) -> dict:
        d = asdict(self)
        d["predicted_params"] = (
            None if self.predicted_params is None else self.predicted_params.to_json_dict()
        )
        d["notes"] = list(self.notes)
        # execution detail with no effect on results; keeps reports byte-identical
        # across worker counts
        del d["workers"]
        return d


@dataclass
class Report:
    spec: dict
    failed: bool = False
    error: str | None = None
    graph: dict | None = None
    star_stats: dict | None = None
    params_used: dict | None = None
    empirical: dict | None = None
    tv_to_reference: dict = field(default_factory=dict)
    moments: dict = field(default_factory=dict)
    tolerance: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    runtime_seconds: float = 0.0

    def to_json_dict(self, include_runtime: bool = True) -> dict:
        d = {
            "spec": self.spec,
            "failed": self.failed,
            "error": self.error,
            "graph": self.graph,
            "star_stats": self.star_stats,
            "params_used": self.params_used,
            "empirical": self.empirical,
            "tv_to_reference": self.tv_to_reference,
            "moments": self.moments,
            "tolerance": self.tolerance,
            "warnings": self.warnings,
        }
        if include_runtime:
            d["runtime_seconds"] = self.runtime_seconds
        return d

    def canonical_json(self) -> str:
        """Deterministic byte form: identical across reruns and worker counts
        (wall-clock runtime excluded)."""
        return json.dumps(self.to_json_dict(include_runtime=False),
                          sort_keys=True, separators=(",", ":"))


def run_experiment(spec: ExperimentSpec) -> Report:
    started = time.perf_counter()
    report = Report(spec=spec.spec_echo(), warnings=list(spec.notes))
    if spec.comparison not in ("exact-oracle", "limit-law", "both"):
        report.failed = True
        report.error = f"unknown comparison {spec.comparison!r}"
        return report
    try:
        gen = parse_generator(spec.generator)
        g = generate(gen)
        c = resolve_colors(spec.colors, generator_scale(gen))
        n_star = count_stars(g, spec.r)
        report.graph = {
            "vertex_count": g.vertex_count,
            "edge_count": g.edge_count,
            "max_degree": g.max_degree(),
            "colors": c,
            "n_star": str(n_star),
            "mean_T": n_star / c**spec.r,
        }
        try:
            stats = class_counts(g, spec.r, budget=spec.class_budget)
            report.star_stats = stats.to_json_dict()
        except BudgetExceededError as exc:
            stats = None
            report.warnings.append(f"class_counts skipped: {exc}")

        references = {}
        if spec.comparison in ("exact-oracle", "both"):
            references["exact-oracle"] = exact_pmf(g, spec.r, c, budget=spec.oracle_budget)
        if spec.comparison in ("limit-law", "both"):
            if spec.predicted_params is not None:
                params = validate_params(spec.predicted_params)
            else:
                if stats is None:
                    raise BudgetExceededError(
                        "limit-law comparison needs class counts, which hit the budget"
                    )
                params = params_from_graph(
                    g, c, spec.r,
                    theta_cut=spec.theta_cut,
                    theta_threshold=spec.theta_threshold,
                    budget=spec.class_budget,
                )
            report.params_used = params.to_json_dict()
            if params.theta_dropped_tail > 0:
                report.warnings.append(
                    f"theta tail dropped: star mass {params.theta_dropped_tail!r}"
                )
            report.warnings.extend(params.flags)
            references["limit-law"] = limit_pmf(params, spec.tail_eps)

        dist = monte_carlo(g, spec.r, c, spec.samples, spec.seed,
                           workers=spec.workers, budget=spec.mc_budget)
        emp_pmf = dist.to_pmf()
        emp_moments = [float(x) for x in empirical_moments(dist, 4)]
        report.empirical = {
            "seed": dist.seed,
            "samples": dist.total_samples,
            "counts": {str(v): k for v, k in dist.counts.items()},
            "mean": emp_moments[0],
        }
        report.moments = {
            "empirical": emp_moments,
            "reference": {
                mode: [float(x) for x in pmf_moments(ref, 4)]
                for mode, ref in sorted(references.items())
            },
        }
        report.tv_to_reference = {
            mode: tv_distance(emp_pmf, ref) for mode, ref in sorted(references.items())
        }
        report.tolerance = {
            mode: (spec.tv_tolerance if spec.tv_tolerance is not None
                   else DEFAULT_TV_TOLERANCE[mode])
            for mode in references
        }
    except MonostarError as exc:
        report.failed = True
        report.error = f"{type(exc).__name__}: {exc}"
    except (ValueError, OverflowError) as exc:
        report.failed = True
        report.error = f"{type(exc).__name__}: {exc}"
    report.runtime_seconds = time.perf_counter() - started
    return report


# ----------------------------------------------------------------------------
# Pre-wired example experiments
# ----------------------------------------------------------------------------


def _icbrt(n: int) -> int:
    k = max(0, round(n ** (1.0 / 3.0)))
    while k**3 > n:
        k -= 1
    while (k + 1) ** 3 <= n:
        k += 1
    return k


def _er_regime(n: int, p: float, r: int) -> str:
    if p >= 0.05:
        return "(c) dense: fixed p, linear combination of Poissons"
    if n ** ((r + 1) / r) * p <= 10.0:
        return "(a) sub-critical: T -> 0 in probability"
    return "(b) sparse: Poisson limit"


def builtin_names() -> tuple[str, ...]:
    return (
        "star",
        "star-union",
        "star-union-shifted",
        "regular",
        "bipartite",
        "complete",
        "figure2",
        "tadpole-remark",
        "er",
    )


def builtin_example(name: str, n: int | None = None, samples: int | None = None,
                    seed: int | None = None, workers: int = 1) -> ExperimentSpec:
    """Pre-wired experiment matching one of the named example families,
    including its predicted limit parameters."""
    samples = 200_000 if samples is None else samples
    seed = 20240601 if seed is None else seed
    base = dict(samples=samples, seed=seed, workers=workers, name=name)

    if name == "star":
        n = 1000 if n is None else n
        params = validate_params(LimitLawParams(r=2, thetas=(1.0,), lambdas=(0.5, 0.0, 0.0)))
        return ExperimentSpec(generator=f"star:{n}", r=2, colors="n",
                              predicted_params=params, mean_rtol=0.01, **base)
    if name == "star-union":
        n = 3000 if n is None else n
        weights = (0.6, 0.3, 0.1)
        lam1 = sum(a**2 for a in weights) / 2
        params = validate_params(
            LimitLawParams(r=2, thetas=weights, lambdas=(lam1, 0.0, 0.0))
        )
        return ExperimentSpec(generator=f"union:0.6,0.3,0.1:{n}", r=2, colors="n",
                              predicted_params=params, mean_rtol=0.01, **base)
    if name == "star-union-shifted":
        n = 400 if n is None else n
        weights = (0.6, 0.3, 0.1)
        lam1 = sum(a**2 for a in weights) / 2 + 0.5
        params = validate_params(
            LimitLawParams(r=2, thetas=weights, lambdas=(lam1, 0.0, 0.0))
        )
        return ExperimentSpec(generator=f"union:0.6,0.3,0.1:{n}:shift=0.5", r=2,
                              colors="n", predicted_params=params, mean_rtol=0.08, **base)
    if name == "regular":
        n = 1000 if n is None else n
        d = 6
        c = round(math.sqrt(n * comb(d, 2) / 2.0))
        return ExperimentSpec(generator=f"circulant:{n}:{d}", r=2, colors=c,
                              theta_cut=0, mean_rtol=0.01,
                              notes=("regular family: no degree atoms, plug-in class rates",),
                              **base)
    if name == "bipartite":
        n = 40 if n is None else n
        c = round(math.sqrt(n * n * (n - 1) / 3.9936))
        mean = n * n * (n - 1) / c**2
        params = validate_params(LimitLawParams(r=2, thetas=(), lambdas=(mean, 0.0, 0.0)))
        return ExperimentSpec(generator=f"bipartite:{n}", r=2, colors=c,
                              predicted_params=params, mean_rtol=1e-9,
                              notes=("triangle-free: pure coefficient-1 Poisson reference",),
                              **base)
    if name == "complete":
        n = 60 if n is None else n
        n_star = n * comb(n - 1, 2)
        c = round(math.sqrt(n_star / 3.0))
        mean = n_star / c**2
        params = validate_params(
            LimitLawParams(r=2, thetas=(), lambdas=(0.0, 0.0, mean / 3.0))
        )
        return ExperimentSpec(generator=f"complete:{n}", r=2, colors=c,
                              predicted_params=params, mean_rtol=1e-9,
                              notes=("complete family: support on multiples of 3",),
                              **base)
    if name == "figure2":
        n = 300 if n is None else n
        return ExperimentSpec(generator=f"figure2:{n}", r=2, colors="n",
                              predicted_params=figure2_params(1.0),
                              tv_tolerance=0.07, mean_rtol=0.07, **base)
    if name == "tadpole-remark":
        n = 10_000 if n is None else n
        c = _icbrt(n)
        mean = n / c**3
        params = validate_params(
            LimitLawParams(r=3, thetas=(), lambdas=(mean, 0.0, 0.0, 0.0))
        )
        return ExperimentSpec(generator=f"copies:{n}:star:3", r=3, colors=c,
                              predicted_params=params, mean_rtol=1e-9, **base)
    if name == "er":
        n = 4000 if n is None else n
        p = 0.001
        expected_stars = n * comb(n - 1, 2) * p**2
        c = round(math.sqrt(expected_stars / 2.0))
        return ExperimentSpec(generator=f"er:{n}:{p}:seed=7", r=2, colors=c,
                              mean_rtol=1e-9,
                              notes=(f"er-regime {_er_regime(n, p, 2)}; "
                                     "comparison conditions on the realized graph",),
                              **base)
    raise ValueError(f"unknown builtin example {name!r}; names: {', '.join(builtin_names())}")


# ----------------------------------------------------------------------------
# Birthday probability
# ----------------------------------------------------------------------------


def birthday_probability(g, r: int, c: int, method: str = "oracle", *,
                         samples: int = 200_000, seed: int = 0, workers: int = 1,
                         oracle_budget: int = DEFAULT_ORACLE_BUDGET,
                         class_budget: int = DEFAULT_CLASS_BUDGET,
                         theta_cut: int = 8, tail_eps: float = 1e-9):
    """P(T > 0) under the chosen reference: exact, empirical, or limit law."""
    if method == "oracle":
        pmf = exact_pmf(g, r, c, budget=oracle_budget)
        return Fraction(1) - pmf.prob(0)
    if method == "mc":
        dist = monte_carlo(g, r, c, samples, seed, workers=workers)
        return Fraction(dist.total_samples - dist.counts.get(0, 0), dist.total_samples)
    if method == "limit":
        params = params_from_graph(g, c, r, theta_cut=theta_cut, budget=class_budget)
        pmf = limit_pmf(params, tail_eps)
        return 1.0 - float(pmf.prob(0))
    raise ValueError(f"unknown method {method!r}: use oracle, mc, or limit")
