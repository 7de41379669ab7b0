from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import pair, random_pairs
from hrl.criterion import (
    FAIL,
    NUMERIC_PASS,
    PASS,
    check_a,
    check_b,
    check_c,
    check_d,
    check_e,
    full_verdict,
    hyperbolicity_sweep,
    simplest_between,
    support_intervals,
)
from hrl.errors import ContractViolation
from hrl.numeric import max_imag_deviation
from hrl.poly import RatPoly
from hrl.recurrence import RecurrencePair
from hrl.spectral import zeros_via_levels

X = RatPoly.x()


def statuses(p):
    v = full_verdict(p)
    return {r.id: r.status for r in v.reports}, v


def test_example1_statuses():
    st_, v = statuses(pair("ex1"))
    assert st_ == {"A": PASS, "B": PASS, "C": PASS, "D": FAIL, "E": FAIL}
    assert not v.overall and v.support is None
    w = v["E"].witness
    assert w.point.as_fraction() == 0 and w.value == -1


def test_example2_d_witness():
    v = full_verdict(pair("ex2"))
    w = v["D"].witness
    assert w.kind == "critical-point"
    assert w.data["x"] == pytest.approx(-1.66437, abs=1e-5)
    assert w.data["value"] == pytest.approx(3.50783, abs=1e-5)


def test_example3_e_failures():
    w = check_e(pair("ex3")).witness
    assert [f["q2_value"] for f in w.data["failures"]] == ["-16", "-4"]


def test_example4_passes_with_exact_support():
    v = full_verdict(pair("ex4"))
    assert v.overall and v.certified
    assert [iv.bounds() for iv in v.support] == [
        pytest.approx((-5**0.5, -1.0)), pytest.approx((5**0.5, 5.0))]
    assert v.support_text() == "[-2.23606797749979, -1] U [2.23606797749979, 5]"
    assert v.support[0].hi.as_fraction() == -1


def test_chebyshev_support():
    p = RecurrencePair(-2 * X, RatPoly.const(1))
    v = full_verdict(p)
    assert v.overall
    (iv,) = support_intervals(p, v)
    assert iv.lo.as_fraction() == -1 and iv.hi.as_fraction() == 1


def test_figure1_fails_a_to_d():
    st_, _ = statuses(pair("fig1"))
    assert [st_[c] for c in "ABCD"] == [FAIL] * 4


def test_support_requires_passing_pair():
    with pytest.raises(ContractViolation, match="failed: D, E"):
        support_intervals(pair("ex1"))


def test_a_repeated_factor():
    r = check_a(RecurrencePair((X - 1) ** 2, X + 3))
    assert r.status == FAIL and r.witness.kind == "repeated-factor"
    assert r.witness.recheck(RecurrencePair((X - 1) ** 2, X + 3))


def test_c_complex_discriminant_roots():
    p = RecurrencePair(X, X**2 + 1)  # D = -3x^2 - 4
    r = check_c(p)
    assert r.status == FAIL and r.witness.data["real"] == 0 and r.witness.recheck(p)


def test_d_critical_point_at_infinity():
    # f(inf) = 1/(1/2) = 2 in (0, 4) and infinity is ramified
    p = RecurrencePair(X, Fraction(1, 2) * X**2 + 1)
    r = check_d(p)
    assert r.status == FAIL
    assert r.witness.kind == "critical-point-at-infinity" and r.witness.value == 2
    assert r.witness.recheck(p)


def test_e_is_strict():
    # Q2 = 0 at a zero of Q1 is excluded by coprimality, so check strictness on a negative value
    p = RecurrencePair(X, X - 1)
    assert check_e(p).status == FAIL
    assert check_e(RecurrencePair(X, X + 1)).status == PASS


@pytest.mark.parametrize("seed", [21, 22])
def test_witnesses_recheck_on_corpus(seed):
    for p in random_pairs(60, seed=seed):
        v = full_verdict(p)
        for r in v.reports:
            if r.status == FAIL:
                assert r.witness is not None
                assert r.witness.recheck(p), (str(p), r.id)
            else:
                assert r.witness is None


def test_failing_pairs_have_nonreal_zeros():
    for p in random_pairs(40, seed=31):
        v = full_verdict(p)
        if v.overall:
            continue
        assert any(max_imag_deviation(zeros_via_levels(p, n).roots) > 1e-6 for n in range(2, 51, 4)), str(p)


def test_passing_pairs_have_zeros_in_support():
    seen = 0
    for p in random_pairs(120, seed=41):
        v = full_verdict(p)
        if not v.overall:
            continue
        seen += 1
        for z in zeros_via_levels(p, 24).roots:
            assert abs(z.imag) < 1e-8
            assert any(iv.contains(z.real, 1e-7) for iv in v.support), (str(p), z)
    assert seen >= 5


def test_check_b_modes():
    p = pair("fig1")
    assert check_b(p).status == FAIL
    assert check_b(p, "numeric").witness.kind == "curve-point"
    assert check_b(pair("ex4"), "numeric").status == NUMERIC_PASS
    assert check_b(pair("ex4")).status == PASS
    with pytest.raises(ValueError):
        check_b(p, "fast")


def test_numeric_pass_is_not_certified():
    v = full_verdict(pair("ex4"), b_mode="numeric")
    assert v.overall and not v.certified


def test_sweep_explains_failure():
    res = hyperbolicity_sweep(pair("ex1"))
    assert res.status == FAIL
    assert res.witness.recheck(pair("ex1"))
    assert set(res.explained_by) <= {"B", "C", "D", "E"} and res.explained_by
    res = hyperbolicity_sweep(pair("fig1"), explain=False)
    assert res.explained_by == []


def test_sweep_samples_are_simple():
    res = hyperbolicity_sweep(pair("ex4"))
    assert [s.source for s in res.samples] == ["gap"] * len(res.samples)
    assert Fraction(1) in [s.s for s in res.samples]


@pytest.mark.parametrize("lo, hi, want", [
    (Fraction(1, 3), Fraction(1, 2), Fraction(2, 5)),
    (Fraction(-1, 2), Fraction(1, 2), Fraction(0)),
    (Fraction(3), Fraction(4), Fraction(7, 2)),
    (Fraction(-4), Fraction(-3), Fraction(-7, 2)),
    (Fraction(0), Fraction(1, 100), Fraction(1, 101)),
])
def test_simplest_between_examples(lo, hi, want):
    assert simplest_between(lo, hi) == want


@settings(max_examples=300, deadline=None)
@given(st.fractions(min_value=-30, max_value=30, max_denominator=60),
       st.fractions(min_value=0, max_value=5, max_denominator=60).filter(lambda w: w > 0))
def test_simplest_between_is_inside_and_minimal(lo, width):
    hi = lo + width
    s = simplest_between(lo, hi)
    assert lo < s < hi
    # nothing with a smaller denominator fits
    for q in range(1, s.denominator):
        k = (lo * q).__floor__() + 1
        assert Fraction(k, q) >= hi
    with pytest.raises(ValueError):
        simplest_between(hi, lo)
