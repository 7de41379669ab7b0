import math
from fractions import Fraction

import numpy as np
import pytest

from helpers import pair, random_pairs
from hrl.numeric import all_complex_roots, max_imag_deviation
from hrl.poly import RatPoly, gcd
from hrl.recurrence import RecurrencePair, generate_sequence
from hrl.spectral import level_value, levels, worker_count, zeros_via_levels

X = RatPoly.x()


def test_small_level_sets():
    assert [(lv.k, lv.exact) for lv in levels(1)] == [(1, Fraction(0))]
    assert [(lv.k, lv.exact) for lv in levels(2)] == [(1, Fraction(1))]
    l3 = levels(3)
    assert [lv.exact for lv in l3] == [Fraction(2), Fraction(0)]
    assert [lv.paired for lv in l3] == [True, False]
    with pytest.raises(ValueError):
        levels(0)


@pytest.mark.parametrize("n", [4, 7, 10, 25])
def test_levels_lie_in_open_interval(n):
    vals = levels(n).values()
    assert len(vals) == (n + 1) // 2
    assert all(0 <= v < 4 for v in vals)
    assert len(set(vals)) == len(vals)


def test_rational_levels_are_exact():
    assert level_value(1, 5) == (3.0, Fraction(3))
    assert level_value(2, 5) == (1.0, Fraction(1))
    v, ex = level_value(1, 4)
    assert ex is None and v == pytest.approx(4 * math.cos(math.pi / 5) ** 2)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_level_product_reassembles_pn(n):
    p = pair("ex1")
    prod = p.q1 if n % 2 else RatPoly.const(1)
    for lv in levels(n):
        if lv.paired and lv.exact is not None:
            prod = prod * p.level_poly(lv.exact)
    assert all(lv.exact is not None for lv in levels(n))
    assert prod * (-1) ** n == generate_sequence(p, n)[n]


@pytest.mark.parametrize("name", ["ex1", "ex2", "ex4", "fig1", "fig2"])
def test_root_count_equals_degree(name):
    p = pair(name)
    seq = generate_sequence(p, 15)
    for n in range(1, 16):
        z = zeros_via_levels(p, n)
        assert len(z) == seq[n].degree
        assert z.converged


def test_example4_zeros_are_real():
    z = zeros_via_levels(pair("ex4"), 40)
    assert max_imag_deviation(z.roots) < 1e-9
    assert len(z) == 80


def test_figure1_has_nonreal_zeros():
    assert max_imag_deviation(zeros_via_levels(pair("fig1"), 20).roots) > 0.1


def test_zeros_avoid_q2_roots():
    for p in random_pairs(30, seed=13):
        for n in (3, 6):
            assert gcd(generate_sequence(p, n)[n], p.q2).degree == 0


def test_zeros_accumulate_on_the_support():
    # the fraction of real zeros within 0.05 of each other grows: they fill the support
    p = pair("ex4")
    gaps = []
    for n in (50, 200):
        r = np.sort(zeros_via_levels(p, n).roots.real)
        gaps.append(np.max(np.diff(r)[np.diff(r) < 1.0]))
    assert gaps[1] < gaps[0] / 2


def test_thread_count_does_not_change_result(monkeypatch):
    p = pair("ex1")
    monkeypatch.setenv("HRL_THREADS", "1")
    a = zeros_via_levels(p, 60).roots
    monkeypatch.setenv("HRL_THREADS", "4")
    assert worker_count() == 4
    b = zeros_via_levels(p, 60).roots
    assert np.array_equal(a, b)
    monkeypatch.setenv("HRL_THREADS", "many")
    assert worker_count() == 1


def test_degree_drop_to_constant_level():
    # Q1 = x, Q2 = x^2 + 1: the level c = 1 gives the constant -1, so P_2 = -1
    p = RecurrencePair(X, X**2 + 1)
    z = zeros_via_levels(p, 2)
    assert len(z) == 0 and z.roots_at_infinity == 2
    assert generate_sequence(p, 2)[2] == RatPoly.const(-1)
    z5 = zeros_via_levels(p, 5)
    assert len(z5) == generate_sequence(p, 5)[5].degree == 3


def test_partial_degree_drop():
    # lc(Q1)^2 / lc(Q2) = 2 is a level for n = 3
    p = RecurrencePair(X + 1, Fraction(1, 2) * X**2 + 3)
    z = zeros_via_levels(p, 3)
    assert z.roots_at_infinity >= 1
    assert len(z) == generate_sequence(p, 3)[3].degree


def test_matches_direct_roots():
    p = pair("fig2")
    pn = generate_sequence(p, 9)[9]
    a = zeros_via_levels(p, 9).roots
    b = all_complex_roots(pn).roots
    for z in b:
        assert np.min(np.abs(a - z)) < 1e-8
