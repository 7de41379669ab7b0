"""Shared fixtures data: the worked examples and seeded random corpora."""

import random

from hrl.errors import ValidationError
from hrl.poly import RatPoly
from hrl.recurrence import RecurrencePair

EXAMPLES = {
    "ex1": ("-x^2+2x", "5x^2-1"),
    "ex2": ("2x^2-8x+6", "-5x^3+37x^2-43x-21"),
    "ex3": ("2x^2-8x+6", "x^4-8x^3+21x^2-14x-16"),
    "ex4": ("x^2-2x-5", "x^2"),
    "fig1": ("x^2+1", "x^2+6"),
    "fig2": ("x^2+5x+3", "5x^2-1"),
}


def pair(name):
    return RecurrencePair.from_text(*EXAMPLES[name])


def random_poly(rng, deg, lo=-6, hi=6):
    c = [rng.randint(lo, hi) for _ in range(deg + 1)]
    while c[-1] == 0:
        c[-1] = rng.randint(lo, hi)
    return RatPoly(c)


def random_pairs(count, seed, max_deg=3, q2_min_deg=0):
    """``count`` valid coprime integer pairs, deg <= max_deg, coefficients in [-6, 6]."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q1 = random_poly(rng, rng.randint(1, max_deg))
        q2 = random_poly(rng, rng.randint(q2_min_deg, max_deg))
        try:
            out.append(RecurrencePair(q1, q2))
        except ValidationError:
            continue
    return out
