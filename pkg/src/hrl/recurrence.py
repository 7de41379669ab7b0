"""Polynomial sequences from  P_i + Q_1 P_{i-1} + ... + Q_k P_{i-k} = 0.

Initial conditions are the standard ones: P_0 = 1 and P_j = 0 for j < 0.
General k is supported for generation; everything criterion-related works on
a validated order-2 :class:`RecurrencePair`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .poly import RatPoly, gcd

ONE = RatPoly.const(1)


@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficient polynomials ``[Q_1, ..., Q_k]`` of a k-term recurrence."""

    qs: tuple[RatPoly, ...]

    def __post_init__(self):
        qs = tuple(self.qs)
        object.__setattr__(self, "qs", qs)
        if not qs:
            raise ValidationError("a recurrence needs at least one coefficient polynomial")
        if qs[-1].is_zero:
            raise ValidationError(
                f"Q_{len(qs)} is identically zero; the recurrence has lower order")

    @property
    def order(self) -> int:
        return len(self.qs)

    def as_pair(self) -> "RecurrencePair":
        if self.order != 2:
            raise ValidationError(
                f"the reality criterion is only defined for k = 2 (got k = {self.order})")
        return RecurrencePair(*self.qs)


@dataclass(frozen=True)
class RecurrencePair:
    """A validated pair (Q1, Q2) for the order-2 recurrence.

    Requirements: Q2 is not identically zero, deg Q1 >= 1, and gcd(Q1, Q2) = 1.
    The discriminant ``d = Q1^2 - 4 Q2`` is computed once and cached.
    """

    q1: RatPoly
    q2: RatPoly
    d: RatPoly = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q1, q2 = self.q1, self.q2
        if q2.is_zero:
            raise ValidationError("Q2 is identically zero; the recurrence has order 1")
        if q1.is_zero or q1.degree < 1:
            raise ValidationError(
                "deg Q1 must be at least 1 (for constant Q1 every P_i is constant)")
        g = gcd(q1, q2)
        if g.degree > 0:
            raise ValidationError(
                f"Q1 and Q2 must be coprime but share the factor {g}; "
                "a common zero of Q1 and Q2 is a zero of every P_i")
        d = q1 * q1 - q2 * 4
        if d.is_zero:
            raise ValidationError("Q1^2 - 4 Q2 vanishes identically")
        object.__setattr__(self, "d", d)

    @classmethod
    def from_text(cls, q1: str, q2: str) -> "RecurrencePair":
        from .parse import parse_poly

        return cls(parse_poly(q1), parse_poly(q2))

    @property
    def spec(self) -> RecurrenceSpec:
        return RecurrenceSpec((self.q1, self.q2))

    @property
    def f_num(self) -> RatPoly:
        """Numerator Q1^2 of f = Q1^2 / Q2."""
        return self.q1 * self.q1

    def level_poly(self, s) -> RatPoly:
        """Q1^2 - s Q2, whose roots are the preimages f^{-1}(s)."""
        return self.f_num - self.q2 * s

    @property
    def degree_f(self) -> int:
        """Degree of the rational map f as a map of the Riemann sphere."""
        return max(2 * self.q1.degree, self.q2.degree)

    def f(self, x):
        return self.f_num(x) / self.q2(x)

    def __str__(self):
        return f"Q1 = {self.q1}, Q2 = {self.q2}"


def discriminant_char(pair: RecurrencePair) -> RatPoly:
    """Discriminant of 1 + Q1 t + Q2 t^2 in t: ``Q1^2 - 4 Q2`` (not normalised)."""
    return pair.q1 * pair.q1 - pair.q2 * 4


def _spec(obj) -> RecurrenceSpec:
    if isinstance(obj, RecurrencePair):
        return obj.spec
    if isinstance(obj, RecurrenceSpec):
        return obj
    return RecurrenceSpec(tuple(obj))


def generate_sequence(spec, n: int) -> list[RatPoly]:
    """``[P_0, ..., P_n]`` with exact coefficients."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    qs = _spec(spec).qs
    seq = [ONE]
    for i in range(1, n + 1):
        acc = RatPoly()
        for j, q in enumerate(qs, start=1):
            if i - j < 0:
                break
            acc = acc + q * seq[i - j]
        seq.append(-acc)
    return seq


def expand_generating_function(spec, n: int) -> list[RatPoly]:
    """Coefficients of t^0..t^n in ``1 / (1 + Q_1 t + ... + Q_k t^k)``.

    Computed as the truncated geometric series ``sum_j (-u)^j`` with
    ``u = Q_1 t + ... + Q_k t^k``, deliberately not via the recurrence, so the
    two routes check each other.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    qs = _spec(spec).qs
    u = [RatPoly()] + list(qs[:n])  # u[m] = coefficient of t^m
    neg_u = [-c for c in u]
    total = [ONE] + [RatPoly() for _ in range(n)]
    power = [ONE] + [RatPoly() for _ in range(n)]  # (-u)^j truncated at t^n
    for _ in range(n):
        nxt = [RatPoly() for _ in range(n + 1)]
        for a, pa in enumerate(power):
            if pa.is_zero:
                continue
            for b in range(1, min(len(neg_u), n + 1 - a)):
                if neg_u[b]:
                    nxt[a + b] = nxt[a + b] + pa * neg_u[b]
        power = nxt
        total = [t + p for t, p in zip(total, power)]
    return total


def generate_sequence_float(spec, n: int) -> list[np.ndarray]:
    """Float-coefficient fast path for plotting only (low-to-high coefficients)."""
    qs = [np.array(q.to_floats() or [0.0]) for q in _spec(spec).qs]
    seq = [np.array([1.0])]
    P = np.polynomial.polynomial
    for i in range(1, n + 1):
        acc = np.array([0.0])
        for j, q in enumerate(qs, start=1):
            if i - j < 0:
                break
            acc = P.polyadd(acc, P.polymul(q, seq[i - j]))
        seq.append(-acc)
    return seq


def parse_spec(text: str) -> RecurrenceSpec:
    """``'Q1;Q2;...'`` -> RecurrenceSpec."""
    from .parse import parse_poly

    parts = text.split(";")
    if any(not p.strip() for p in parts):
        raise ValidationError("empty coefficient in recurrence spec")
    return RecurrenceSpec(tuple(parse_poly(p) for p in parts))
