"""Finite probability mass functions with explicit truncation deficit.

Two flavors share one container: exact (Fraction probabilities, deficit 0 for
enumeration output) and float (truncated convolutions). All iteration is in
sorted support order so float reductions are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = ["Pmf", "pmf_mean", "pmf_moments", "tv_distance"]

_FLOAT_MASS_TOL = 1e-12


def _frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class Pmf:
    support: dict[int, Fraction | float]
    deficit: Fraction | float = 0

    def __post_init__(self):
        object.__setattr__(self, "support", dict(sorted(self.support.items())))
        for v, p in self.support.items():
            if p < 0:
                raise ValueError(f"negative probability at {v}")
        if self.deficit < 0:
            raise ValueError("negative truncation deficit")
        total = sum(self.support.values()) + self.deficit
        if self.is_exact:
            if total != 1:
                raise ValueError(f"exact pmf mass is {total}, not 1")
        elif abs(float(total) - 1.0) > _FLOAT_MASS_TOL:
            raise ValueError(f"pmf mass {total} deviates from 1 beyond {_FLOAT_MASS_TOL}")

    @property
    def is_exact(self) -> bool:
        return isinstance(self.deficit, Rational) and all(
            isinstance(p, Rational) for p in self.support.values()
        )

    def prob(self, value: int) -> Fraction | float:
        return self.support.get(value, Fraction(0) if self.is_exact else 0.0)

    def to_json_dict(self) -> dict:
        if self.is_exact:
            return {
                "support": {str(v): _frac_str(p) for v, p in self.support.items()},
                "deficit": _frac_str(self.deficit),
            }
        return {
            "support": {str(v): float(p) for v, p in self.support.items()},
            "deficit": float(self.deficit),
        }

    def to_csv(self) -> str:
        lines = ["value,probability"]
        for v, p in self.support.items():
            lines.append(f"{v},{float(p)!r}" if not self.is_exact else f"{v},{p}")
        return "\n".join(lines) + "\n"


def pmf_mean(p: Pmf) -> Fraction | float:
    return pmf_moments(p, 1)[0]


def pmf_moments(p: Pmf, order: int) -> list:
    """Raw moments 1..order of the finite measure (exact when the pmf is exact)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    zero = Fraction(0) if p.is_exact else 0.0
    out = []
    for j in range(1, order + 1):
        acc = zero
        for v, prob in p.support.items():
            acc += prob * v**j
        out.append(acc)
    return out


def tv_distance(p: Pmf, q: Pmf) -> float:
    """Half L1 distance over the union support; deficits meet in a shared
    'unrepresented' atom."""
    values = sorted(set(p.support) | set(q.support))
    acc = 0.0
    for v in values:
        acc += abs(float(p.prob(v)) - float(q.prob(v)))
    acc += abs(float(p.deficit) - float(q.deficit))
    return 0.5 * acc
