import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hrl.errors import ContractViolation, InvalidInput
from hrl.numeric import all_complex_roots
from hrl.poly import (
    NEG_INF,
    AlgebraicNumber,
    RatPoly,
    SturmChain,
    cauchy_bound,
    gcd,
    interval_eval,
    is_squarefree,
    isolate_real_roots,
    real_root_count_with_multiplicity,
    render,
    sign_at,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
    wronskian,
)
from hrl.recurrence import RecurrencePair, discriminant_char

X = RatPoly.x()
sx = sympy.Symbol("x")

small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=8).map(RatPoly)
nonzero_polys = small_polys.filter(lambda p: not p.is_zero)


def to_sympy(p: RatPoly):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p.coeffs])) or [0], sx)


# ring operations -------------------------------------------------------------------


def test_difference_of_squares():
    assert (X + 1) * (X - 1) == X**2 - 1


def test_derivative_power_rule():
    p = X**4 - 4 * X**3 - 16 * X**2 + 4
    assert p.derivative() == 4 * X**3 - 12 * X**2 - 32 * X


def test_expansion_of_example4_discriminant():
    d = (X**2 - 2 * X - 5) ** 2 - 4 * X**2
    assert d == X**4 - 4 * X**3 - 10 * X**2 + 20 * X + 25
    assert d == (X**2 - 4 * X - 5) * (X**2 - 5)


def test_zero_polynomial_degree_marker():
    z = RatPoly()
    assert z.is_zero and z.degree == NEG_INF and z.coeffs == ()
    assert RatPoly([1, 2, 0, 0]).coeffs == (1, 2)


def test_evaluation_exact_and_complex():
    p = X**2 - 2 * X - 5
    assert p(Fraction(1, 2)) == Fraction(-23, 4)
    assert p(1j) == pytest.approx(complex(-6, -2))


@settings(max_examples=150, deadline=None)
@given(small_polys, small_polys, st.integers(-5, 5))
def test_ring_ops_match_sympy(a, b, k):
    for ours, theirs in [
        (a + b, to_sympy(a) + to_sympy(b)),
        (a - b, to_sympy(a) - to_sympy(b)),
        (a * b, to_sympy(a) * to_sympy(b)),
        (a * k, to_sympy(a) * k),
        (-a, -to_sympy(a)),
        (a.derivative(), to_sympy(a).diff(sx)),
    ]:
        assert to_sympy(ours) == sympy.Poly(theirs, sx)


@settings(max_examples=100, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


# gcd / square-free -----------------------------------------------------------------


def test_gcd_examples():
    assert gcd(X**2 - 2 * X - 5, X**2) == RatPoly.const(1)
    assert gcd(X**2 - 1, X - 1) == X - 1
    d = 4 * X**2 - 40 * X + 100
    assert gcd(d, d.derivative()) == X - 5


def test_gcd_both_zero_rejected():
    with pytest.raises(InvalidInput):
        gcd(RatPoly(), RatPoly())


@settings(max_examples=150, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides_and_cofactors_coprime(a, b, c):
    a, b = a * c, b * c
    g = gcd(a, b)
    assert g.lc == 1
    assert (a % g).is_zero and (b % g).is_zero
    assert gcd(a // g, b // g).degree == 0
    expected = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), sx).monic()
    assert sympy.expand(to_sympy(g).as_expr() - expected.as_expr()) == 0


def test_squarefree_examples():
    assert squarefree_part(X**2) == X
    assert is_squarefree(-(X**2) + 2 * X)
    assert squarefree_part((X - 5) ** 2) == X - 5
    with pytest.raises(InvalidInput):
        squarefree_part(RatPoly())


def test_squarefree_decomposition_reassembles():
    p = 3 * (X - 1) ** 3 * (X + 2) ** 2 * (X**2 + 1)
    parts = squarefree_decomposition(p)
    prod = RatPoly.const(1)
    for f, m in parts:
        prod = prod * f**m
    assert prod.monic() == p.monic()
    assert {m for _, m in parts} == {1, 2, 3}


# Sturm ---------------------------------------------------------------------------


def test_sturm_examples():
    assert sturm_count(X**2 + 1) == 0
    assert sturm_count(X**4 - 4 * X**3 - 16 * X**2 + 4) == 4
    assert sturm_count(X**4 + X**2 - 5) == 2


def test_sturm_half_open_interval():
    p = (X - 1) * (X - 2) * (X - 3)
    assert sturm_count(p, 1, 3) == 2  # (1, 3] holds 2 and 3
    assert sturm_count(p, 0, 1) == 1
    assert sturm_count(p, NEG_INF, 2) == 2


def test_sturm_requires_squarefree():
    with pytest.raises(ContractViolation):
        sturm_count((X - 1) ** 2)
    with pytest.raises(ContractViolation):
        SturmChain(X).count(1, 1)


@settings(max_examples=200, deadline=None)
@given(nonzero_polys)
def test_sturm_count_equals_isolated_roots(p):
    if p.degree < 1:
        return
    roots = isolate_real_roots(p)
    assert sturm_count(squarefree_part(p)) == len(roots)
    assert len(roots) == len(sympy.real_roots(to_sympy(p).sqf_part()))


def test_sturm_agrees_with_numeric_roots():
    rng = random.Random(11)
    checked = 0
    while checked < 500:
        p = RatPoly([rng.randint(-9, 9) for _ in range(rng.randint(2, 13))])
        if p.degree < 1 or not is_squarefree(p):
            continue
        rs = all_complex_roots(p)
        numeric = sum(abs(z.imag) < 1e-8 for z in rs.roots)
        assert numeric == sturm_count(p), str(p)
        checked += 1


# isolation and signs -------------------------------------------------------------


def test_isolate_examples():
    r = isolate_real_roots(X**2 - 5)
    assert len(r) == 2 and r[0].hi < r[1].lo
    assert r[0].defining(r[0].lo) * r[0].defining(r[0].hi) < 0
    q1 = -(X**2) + 2 * X
    assert [a.lo for a in isolate_real_roots(q1)] == [0, 2]
    assert all(a.is_exact for a in isolate_real_roots(q1))
    assert isolate_real_roots(X**2 + 1) == []
    with pytest.raises(InvalidInput):
        isolate_real_roots(RatPoly())


def test_isolated_intervals_are_valid():
    p = (X**2 - 2) * (X**2 - 3) * (X - Fraction(1, 3)) * (X**2 + 1)
    roots = isolate_real_roots(p)
    assert len(roots) == 5
    for a, b in zip(roots, roots[1:]):
        assert a.hi < b.lo
    for a in roots:
        if a.is_exact:
            assert a.defining(a.lo) == 0
        else:
            assert a.defining(a.lo) != 0 and a.defining(a.hi) != 0
            assert sturm_count(a.defining, a.lo, a.hi) == 1
    assert roots[2].as_fraction() == Fraction(1, 3)


def test_refine_halves_and_keeps_root():
    a = isolate_real_roots(X**2 - 2)[1]
    b = a.refine()
    assert b.width == a.width / 2 or b.is_exact
    assert b.lo**2 < 2 < b.hi**2
    assert a.approx() == pytest.approx(math.sqrt(2), abs=1e-15)


def test_sign_at_examples():
    zero = isolate_real_roots(-(X**2) + 2 * X)[0]
    assert sign_at(5 * X**2 - 1, zero) == -1
    one = isolate_real_roots(2 * X**2 - 8 * X + 6)[0]
    q2 = X**4 - 8 * X**3 + 21 * X**2 - 14 * X - 16
    assert sign_at(q2, one) == -1 and q2(one.lo) == -16
    root5 = isolate_real_roots(X**2 - 5)[1]
    assert sign_at(X**2, root5) == 1
    assert sign_at(X**4 - 25, root5) == 0
    assert sign_at(X - 3, root5) == -1


def test_sign_at_matches_interval_evaluation():
    rng = random.Random(3)
    done = 0
    while done < 1000:
        d = RatPoly([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))])
        if d.degree < 1:
            continue
        roots = isolate_real_roots(d)
        if not roots:
            continue
        a = rng.choice(roots)
        p = RatPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 5))])
        s = sign_at(p, a)
        if s == 0:
            g = gcd(p, a.defining) if not p.is_zero else a.defining
            assert (a.is_exact and p(a.lo) == 0) or sturm_count(squarefree_part(g), a.lo, a.hi) == 1
        else:
            b = a
            while True:
                lo, hi = interval_eval(p, b.lo, b.hi)
                if lo > 0 or hi < 0:
                    break
                b = b.refine()
            assert s == (1 if lo > 0 else -1)
        done += 1


def test_algebraic_number_exactifies_rational_roots():
    a = AlgebraicNumber(squarefree_part((3 * X - 2) * (X**2 - 7)), Fraction(0), Fraction(1))
    assert a.as_fraction() == Fraction(2, 3)
    assert a.exactified().is_exact


# Wronskian / discriminant ------------------------------------------------------------


def test_wronskian_examples():
    assert wronskian(X**2, X) == X**2
    q1 = X**2 - 2 * X - 5
    assert wronskian(q1 * q1, X**2) == 2 * X * q1 * (X**2 + 5)


@settings(max_examples=100, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_wronskian_antisymmetric_and_degree(p, q):
    assert wronskian(p, q) == -wronskian(q, p)
    if p.degree >= 1 and q.degree >= 1 and p.degree != q.degree and gcd(p, q).degree == 0:
        assert wronskian(p, q).degree == p.degree + q.degree - 1


def test_discriminant_examples():
    cases = [
        ((-(X**2) + 2 * X, 5 * X**2 - 1), X**4 - 4 * X**3 - 16 * X**2 + 4),
        ((2 * X**2 - 8 * X + 6, X**4 - 8 * X**3 + 21 * X**2 - 14 * X - 16), 4 * X**2 - 40 * X + 100),
        ((X**2 - 2 * X - 5, X**2), X**4 - 4 * X**3 - 10 * X**2 + 20 * X + 25),
    ]
    for (q1, q2), d in cases:
        assert discriminant_char(RecurrencePair(q1, q2)) == d


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=50))
def test_discriminant_pointwise(x):
    p = RecurrencePair(X**3 - 2 * X + 1, 4 * X**2 + 7)
    assert discriminant_char(p)(x) == p.q1(x) ** 2 - 4 * p.q2(x)


def test_cauchy_bound_contains_roots():
    p = 2 * X**3 - 7 * X + 100
    b = cauchy_bound(p)
    for z in all_complex_roots(p).roots:
        assert abs(z) < b


def test_multiplicity_count():
    assert real_root_count_with_multiplicity((X - 1) ** 3 * (X**2 + 1) * X) == 4


def test_render_forms():
    assert render(X**4 - 8 * X**3 + 21 * X**2 - 14 * X - 16) == "x^4-8x^3+21x^2-14x-16"
    assert render(RatPoly()) == "0"
    assert render(Fraction(1, 2) * X - 1) == "1/2x-1"
