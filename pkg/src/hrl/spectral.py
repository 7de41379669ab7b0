"""Zeros of P_n as preimages of finitely many level values under f = Q1^2 / Q2.

Writing 1 + Q1 t + Q2 t^2 = (1 - a t)(1 - b t) gives
P_n = (a^{n+1} - b^{n+1}) / (a - b), so P_n(x) = 0 exactly when a/b is a
nontrivial (n+1)-th root of unity.  Since Q1^2 / Q2 = (a + b)^2 / (ab), that
happens iff f(x) = 4 cos^2(pi k / (n+1)) for some 1 <= k <= n.  Pairing k
with n+1-k, and splitting off the self-paired level c = 0 (n odd), yields

    P_n = (-1)^n * Q1^[n odd] * prod_{k=1}^{floor(n/2)} (Q1^2 - c_k Q2).

Each factor has degree at most max(2 deg Q1, deg Q2), so the zeros come out
without ever forming the huge coefficients of P_n.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .numeric import ComplexRootSet, RootConfig, all_complex_roots, sort_roots
from .recurrence import RecurrencePair

# 4 cos^2(pi p / q) is rational only for these reduced denominators
_RATIONAL_LEVELS = {1: Fraction(4), 2: Fraction(0), 3: Fraction(1), 4: Fraction(2), 6: Fraction(3)}


@dataclass(frozen=True)
class Level:
    k: int
    value: float
    exact: Fraction | None  # set when 4 cos^2(pi k/(n+1)) is rational
    paired: bool

    @property
    def as_fraction(self) -> Fraction:
        """Exact value when rational, else the exact binary value of the double."""
        return self.exact if self.exact is not None else Fraction(self.value)


@dataclass(frozen=True)
class LevelSet:
    n: int
    levels: tuple[Level, ...]

    def __iter__(self):
        return iter(self.levels)

    def __len__(self):
        return len(self.levels)

    def values(self) -> list[float]:
        return [lv.value for lv in self.levels]


def level_value(k: int, n: int) -> tuple[float, Fraction | None]:
    g = math.gcd(k, n + 1)
    exact = _RATIONAL_LEVELS.get((n + 1) // g)
    if exact is not None:
        return float(exact), exact
    return 4.0 * math.cos(math.pi * k / (n + 1)) ** 2, None


def levels(n: int) -> LevelSet:
    """Distinct level values c_k = 4 cos^2(pi k / (n+1)) at which P_n vanishes."""
    if n < 1:
        raise ValueError("levels need n >= 1")
    out = []
    for k in range(1, n // 2 + 1):
        v, ex = level_value(k, n)
        out.append(Level(k, v, ex, True))
    if n % 2 == 1:
        out.append(Level((n + 1) // 2, 0.0, Fraction(0), False))
    return LevelSet(n, tuple(out))


@dataclass
class LevelRoots:
    level: Level
    roots: ComplexRootSet
    degree_drop: int = 0  # roots lost to infinity when the leading term cancels


@dataclass
class ZeroSet:
    """Zeros of P_n assembled level by level, sorted by real then imaginary part."""

    n: int
    roots: np.ndarray
    per_level: list[LevelRoots] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return all(lr.roots.converged for lr in self.per_level)

    @property
    def roots_at_infinity(self) -> int:
        return sum(lr.degree_drop for lr in self.per_level)

    def __len__(self):
        return len(self.roots)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HRL_THREADS", "1")))
    except ValueError:
        return 1


def _solve_level(pair: RecurrencePair, lv: Level, config: RootConfig) -> LevelRoots:
    if not lv.paired:
        return LevelRoots(lv, all_complex_roots(pair.q1, config))
    poly = pair.level_poly(lv.as_fraction)
    drop = pair.degree_f - poly.degree
    if poly.degree < 1:
        # a nonzero constant factor: every preimage of this level sits at infinity
        return LevelRoots(lv, ComplexRootSet(np.zeros(0, dtype=complex)), degree_drop=pair.degree_f)
    return LevelRoots(lv, all_complex_roots(poly, config), degree_drop=drop)


def zeros_via_levels(pair: RecurrencePair, n: int, config: RootConfig | None = None) -> ZeroSet:
    """Complex zeros of P_n (with multiplicity) from the per-level factors."""
    config = config or RootConfig()
    lvls = levels(n)
    workers = worker_count()
    if workers > 1 and len(lvls) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            per = list(ex.map(lambda lv: _solve_level(pair, lv, config), lvls))
    else:
        per = [_solve_level(pair, lv, config) for lv in lvls]
    roots = sort_roots(np.concatenate([lr.roots.roots for lr in per]))
    return ZeroSet(n, roots, per)

