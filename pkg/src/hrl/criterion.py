"""Five-condition reality test for the zeros of all P_i.

For f = Q1^2 / Q2 and D = Q1^2 - 4 Q2, every P_i has only real zeros iff

  A. Q1 has only real, simple zeros;
  B. f^{-1}(RP^1) has no oval disjoint from RP^1;
  C. D has only real zeros;
  D. f has no real critical value in (0, 4);
  E. Q2 > 0 at every zero of Q1.

A, C, D and E are decided with exact arithmetic.  B is certified when some
fiber f^{-1}(s) is entirely real (a disjoint oval is mapped onto all of RP^1,
so it would put a nonreal point into every fiber); otherwise it falls back to
locating bounded faces of the curve numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ContractViolation
from .numeric import all_complex_roots
from .poly import (
    AlgebraicNumber,
    RatPoly,
    gcd,
    interval_eval,
    is_squarefree,
    isolate_real_roots,
    real_root_count_with_multiplicity,
    render,
    sign_at,
    squarefree_part,
    sturm_count,
    wronskian,
)
from .recurrence import RecurrencePair

PASS = "pass"
FAIL = "fail"
NUMERIC_PASS = "numeric-only-pass"

DISPLAY_WIDTH = Fraction(1, 10**10)
FOUR = Fraction(4)


def _num(a: AlgebraicNumber) -> float:
    """Nearest-double rendering (refined well below double spacing)."""
    r = a.as_fraction()
    if r is not None:
        return float(r)
    mag = max(abs(a.lo), abs(a.hi), Fraction(1, 2**60))
    return a.approx(mag / 2**60)


def _exact_text(a: AlgebraicNumber) -> str | None:
    r = a.as_fraction()
    return None if r is None else str(r)


def algebraic_dict(a: AlgebraicNumber) -> dict:
    a = a.refined_to(DISPLAY_WIDTH)
    return {
        "decimal": _num(a),
        "exact": _exact_text(a),
        "defining": render(a.defining),
        "interval": [str(a.lo), str(a.hi)],
    }


@dataclass
class Witness:
    """Evidence for a failed condition; ``recheck`` verifies it from scratch."""

    kind: str
    text: str
    point: AlgebraicNumber | None = None
    value: Fraction | None = None
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "text": self.text, "data": self.data}
        if self.point is not None:
            out["point"] = algebraic_dict(self.point)
        if self.value is not None:
            out["value"] = str(self.value)
        return out

    def recheck(self, pair: RecurrencePair) -> bool:
        k = self.kind
        if k == "repeated-factor":
            g = gcd(pair.q1, pair.q1.derivative())
            return g.degree >= 1 and render(g) == self.data["factor"]
        if k == "sturm-deficit":
            poly = {"Q1": pair.q1, "D": pair.d}[self.data["poly"]]
            sq = squarefree_part(poly)
            return sturm_count(sq) == self.data["real"] < self.data["expected"] == sq.degree
        if k == "critical-point":
            x = self.point
            w = wronskian(pair.f_num, pair.q2)
            return (sign_at(w, x) == 0 and sign_at(pair.q2, x) == 1
                    and sign_at(pair.q1, x) != 0 and sign_at(pair.d, x) == -1)
        if k == "critical-point-at-infinity":
            v = self.value
            return (2 * pair.q1.degree == pair.q2.degree
                    and v == pair.q1.lc**2 / pair.q2.lc and 0 < v < 4
                    and wronskian(pair.f_num, pair.q2).degree < 2 * pair.degree_f - 2)
        if k == "zero-of-q1":
            x = self.point
            return sign_at(pair.q1, x) == 0 and sign_at(pair.q2, x) == -1
        if k == "level-sample":
            s = self.value
            sq = squarefree_part(pair.level_poly(s))
            return sturm_count(sq) == self.data["real"] < sq.degree == self.data["expected"]
        if k == "curve-point":
            # numeric: the point lies on Im f = 0 off the real axis
            from .curves import im_numerator

            z = complex(*self.data["z"])
            g = im_numerator(pair)
            scale = sum(abs(float(c)) * abs(z.real) ** a * abs(z.imag) ** b
                        for (a, b), c in g.coeffs.items())
            val = float(g.grid(np.array([z.real]), np.array([z.imag]))[0, 0])
            return z.imag != 0 and abs(val) <= 1e-8 * max(scale, 1.0)
        raise ValueError(f"unknown witness kind {k!r}")


@dataclass
class ConditionReport:
    id: str
    status: str
    witness: Witness | None = None
    detail: dict = field(default_factory=dict)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in (PASS, NUMERIC_PASS)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "detail": self.detail,
            "note": self.note,
        }


@dataclass(frozen=True)
class SupportInterval:
    """Closed real interval; ``None`` marks an infinite end."""

    lo: AlgebraicNumber | None
    hi: AlgebraicNumber | None

    def bounds(self) -> tuple[float, float]:
        return (-math.inf if self.lo is None else _num(self.lo),
                math.inf if self.hi is None else _num(self.hi))

    def contains(self, x: float, tol: float = 0.0) -> bool:
        lo, hi = self.bounds()
        return lo - tol <= x <= hi + tol

    def render(self) -> str:
        def end(a, inf):
            if a is None:
                return inf
            return _exact_text(a) or repr(_num(a))

        return f"[{end(self.lo, '-inf')}, {end(self.hi, 'inf')}]"

    def to_dict(self) -> dict:
        return {
            "lo": None if self.lo is None else algebraic_dict(self.lo),
            "hi": None if self.hi is None else algebraic_dict(self.hi),
            "text": self.render(),
        }


@dataclass
class Verdict:
    reports: list[ConditionReport]
    support: list[SupportInterval] | None = None

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def certified(self) -> bool:
        return all(r.status != NUMERIC_PASS for r in self.reports)

    def __getitem__(self, cid: str) -> ConditionReport:
        for r in self.reports:
            if r.id == cid:
                return r
        raise KeyError(cid)

    def support_text(self) -> str:
        return " U ".join(iv.render() for iv in self.support or [])

    def to_dict(self) -> dict:
        return {
            "overall": PASS if self.overall else FAIL,
            "certified": self.certified,
            "conditions": [r.to_dict() for r in self.reports],
            "support": None if self.support is None else [iv.to_dict() for iv in self.support],
        }


# shared data -----------------------------------------------------------------


class PairAnalysis:
    """Objects several checks need, computed once per pair."""

    def __init__(self, pair: RecurrencePair):
        self.pair = pair
        self.w = wronskian(pair.f_num, pair.q2)
        self.q1_roots = isolate_real_roots(pair.q1)
        self.w_roots = isolate_real_roots(self.w) if self.w.degree > 0 else []
        self._crit = None

    def infinity(self) -> tuple[int, Fraction | None]:
        """(ramification order at infinity, f(infinity) or None for infinity)."""
        p = self.pair
        order = 2 * p.degree_f - 2 - self.w.degree
        a, b = 2 * p.q1.degree, p.q2.degree
        if a > b:
            return order, None
        if a < b:
            return order, Fraction(0)
        return order, p.q1.lc**2 / p.q2.lc

    def critical_points(self) -> list[dict]:
        """Real critical points with exact membership of f(x_c) in (0, 4)."""
        if self._crit is None:
            p = self.pair
            out = []
            for x in self.w_roots:
                s2, s1, sd = sign_at(p.q2, x), sign_at(p.q1, x), sign_at(p.d, x)
                out.append({
                    "point": x,
                    "inside": s2 == 1 and s1 != 0 and sd == -1,
                    "pole": s2 == 0,
                    "value": None if s2 == 0 else f_value_estimate(p, x),
                })
            self._crit = out
        return self._crit


def f_value_estimate(pair: RecurrencePair, x: AlgebraicNumber) -> float:
    x = x.refined_to(Fraction(1, 10**12))
    r = x.as_fraction()
    t = r if r is not None else (x.lo + x.hi) / 2
    return float(pair.f_num(t) / pair.q2(t))


def f_value_enclosure(pair: RecurrencePair, x: AlgebraicNumber, width=Fraction(1, 2**40)):
    """Rational enclosure of f at a real non-pole, refined below ``width``."""
    r = x.as_fraction()
    if r is not None:
        v = pair.f_num(r) / pair.q2(r)
        return v, v
    while True:
        nlo, nhi = interval_eval(pair.f_num, x.lo, x.hi)
        dlo, dhi = interval_eval(pair.q2, x.lo, x.hi)
        if dlo > 0 or dhi < 0:
            qs = [nlo / dlo, nlo / dhi, nhi / dlo, nhi / dhi]
            lo, hi = min(qs), max(qs)
            if hi - lo <= width:
                return lo, hi
        x = x.refine()
        if x.is_exact:
            v = pair.f_num(x.lo) / pair.q2(x.lo)
            return v, v


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with least denominator (then numerator) strictly inside (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -_simplest_pos(-hi, -lo)
    return _simplest_pos(lo, hi)


def _simplest_pos(a: Fraction, b: Fraction | None) -> Fraction:
    # 0 <= a < b; b None means +infinity
    fl = math.floor(a)
    if b is None or fl + 1 < b:
        return Fraction(fl + 1)
    inner = _simplest_pos(1 / (b - fl), None if a == fl else 1 / (a - fl))
    return fl + 1 / inner


def _simplicity_key(s: Fraction):
    return (s.denominator, abs(s.numerator), s)


# the five checks -------------------------------------------------------------


def check_a(pair: RecurrencePair, cache: PairAnalysis | None = None) -> ConditionReport:
    q1 = pair.q1
    if not is_squarefree(q1):
        g = gcd(q1, q1.derivative())
        return ConditionReport("A", FAIL, Witness(
            "repeated-factor", f"Q1 has the repeated factor {g}", data={"factor": render(g)}))
    real = sturm_count(q1)
    detail = {"degree": q1.degree, "real_roots": real}
    if real < q1.degree:
        return ConditionReport("A", FAIL, Witness(
            "sturm-deficit", f"Q1 has {real} real roots out of {q1.degree}",
            data={"poly": "Q1", "real": real, "expected": q1.degree}), detail)
    roots = (cache.q1_roots if cache else isolate_real_roots(q1))
    detail["roots"] = [algebraic_dict(a) for a in roots]
    return ConditionReport("A", PASS, detail=detail)


def check_c(pair: RecurrencePair, cache: PairAnalysis | None = None) -> ConditionReport:
    sq = squarefree_part(pair.d)
    real = sturm_count(sq)
    detail = {"discriminant": render(pair.d), "squarefree": render(sq),
              "distinct_roots": sq.degree, "real_roots": real}
    if real < sq.degree:
        return ConditionReport("C", FAIL, Witness(
            "sturm-deficit", f"D has {real} real roots out of {sq.degree} distinct",
            data={"poly": "D", "real": real, "expected": sq.degree}), detail)
    detail["roots"] = [algebraic_dict(a) for a in isolate_real_roots(sq)]
    return ConditionReport("C", PASS, detail=detail)


def check_d(pair: RecurrencePair, cache: PairAnalysis | None = None) -> ConditionReport:
    cache = cache or PairAnalysis(pair)
    rows = []
    witness = None
    for c in cache.critical_points():
        x = c["point"]
        rows.append({
            "point": algebraic_dict(x),
            "value": "inf" if c["pole"] else c["value"],
            "in_open_0_4": c["inside"],
        })
        if c["inside"] and witness is None:
            witness = Witness(
                "critical-point",
                f"critical point x = {x.render()} has critical value {c['value']!r} in (0, 4)",
                point=x, data={"x": _num(x), "value": c["value"]})
    order, v_inf = cache.infinity()
    inf_inside = order > 0 and v_inf is not None and 0 < v_inf < 4
    if order > 0:
        rows.append({"point": "inf", "order": order,
                     "value": "inf" if v_inf is None else str(v_inf), "in_open_0_4": inf_inside})
    if inf_inside and witness is None:
        witness = Witness("critical-point-at-infinity",
                          f"infinity is a critical point with critical value {v_inf} in (0, 4)",
                          value=v_inf)
    detail = {"wronskian": render(cache.w), "critical_points": rows}
    return ConditionReport("D", FAIL if witness else PASS, witness, detail)


def check_e(pair: RecurrencePair, cache: PairAnalysis | None = None) -> ConditionReport:
    roots = cache.q1_roots if cache else isolate_real_roots(pair.q1)
    rows, bad = [], []
    for a in roots:
        s = sign_at(pair.q2, a)
        r = a.as_fraction()
        val = pair.q2(r) if r is not None else None
        rows.append({"zero": algebraic_dict(a), "q2_sign": s,
                     "q2_value": str(val) if val is not None else repr(_q2_estimate(pair, a))})
        if s <= 0:
            bad.append((a, s, val))
    if not bad:
        return ConditionReport("E", PASS, detail={"zeros": rows},
                               note="Q2 must be strictly positive at the zeros of Q1")
    a, s, val = bad[0]
    shown = str(val) if val is not None else f"{_q2_estimate(pair, a):.12g}"
    text = "; ".join(f"Q2({b.render()}) = {v if v is not None else f'{_q2_estimate(pair, b):.12g}'}"
                     for b, _, v in bad)
    return ConditionReport("E", FAIL, Witness(
        "zero-of-q1", text, point=a, value=val,
        data={"failures": [{"zero": algebraic_dict(b), "q2_value": str(v) if v is not None else None}
                           for b, _, v in bad], "q2_value": shown}),
        {"zeros": rows}, note="Q2 must be strictly positive at the zeros of Q1")


def _q2_estimate(pair, a):
    a = a.refined_to(DISPLAY_WIDTH)
    return float(pair.q2((a.lo + a.hi) / 2))


def _fiber_is_real(pair: RecurrencePair, s) -> tuple[bool, int, int]:
    """Whether every preimage of s (with multiplicity, infinity counted real) is real."""
    if s is None:
        poly = pair.q2
    else:
        poly = pair.level_poly(s)
    if poly.degree < 1:
        return True, 0, 0
    real = real_root_count_with_multiplicity(poly)
    return real == poly.degree, real, poly.degree


def _real_critical_value_cuts(pair: RecurrencePair, cache: PairAnalysis) -> list[tuple[Fraction, Fraction]]:
    cuts = []
    for c in cache.critical_points():
        if not c["pole"]:
            cuts.append(f_value_enclosure(pair, c["point"]))
    order, v_inf = cache.infinity()
    if v_inf is not None and (order > 0 or 2 * pair.q1.degree == pair.q2.degree):
        cuts.append((v_inf, v_inf))
    return _merge_enclosures(cuts)


def _merge_enclosures(cuts):
    cuts = sorted(cuts)
    out: list[list[Fraction]] = []
    for lo, hi in cuts:
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(a, b) for a, b in out]


def _gap_samples(cuts, lo=None, hi=None) -> list[Fraction]:
    """Simplest rational in each open gap between enclosures, within (lo, hi)."""
    inner = []
    for a, b in cuts:
        if (lo is not None and b <= lo) or (hi is not None and a >= hi):
            continue
        inner.append((a, b))
    bounds = []
    prev = None if lo is None else Fraction(lo)
    for a, b in inner:
        bounds.append((prev, a))
        prev = b
    bounds.append((prev, None if hi is None else Fraction(hi)))
    out = []
    for a, b in bounds:
        if a is not None and b is not None and not a < b:
            continue
        if a is None and b is None:
            out.append(Fraction(0))
        elif a is None:
            out.append(Fraction(math.floor(b) - 1))
        elif b is None:
            out.append(Fraction(math.floor(a) + 1))
        else:
            out.append(simplest_between(a, b))
    return out


def check_b(pair: RecurrencePair, mode: str = "certified", cache: PairAnalysis | None = None,
            resolution: int = 512) -> ConditionReport:
    if mode not in ("certified", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    cache = cache or PairAnalysis(pair)
    tried = []
    if mode == "certified":
        cuts = _real_critical_value_cuts(pair, cache)
        candidates: list = [FOUR, Fraction(0), None] + _gap_samples(cuts)
        for s in candidates:
            ok, real, deg = _fiber_is_real(pair, s)
            tried.append({"s": "inf" if s is None else str(s), "real": real, "degree": deg})
            if ok:
                return ConditionReport("B", PASS, detail={
                    "method": "real fiber", "fiber": tried[-1], "fibers_tried": tried},
                    note="a fully real fiber rules out ovals disjoint from the real line")
    from .curves import disjoint_faces

    faces, cell = disjoint_faces(pair, resolution)
    detail = {"method": "bounded faces", "fibers_tried": tried, "cell": cell, "faces": len(faces)}
    if not faces:
        return ConditionReport("B", NUMERIC_PASS, detail=detail,
                               note="no fully real fiber found; grid search found no disjoint oval")
    f0 = max(faces, key=lambda f: f.cells)
    z = f0.boundary_point
    witness = Witness("curve-point",
                      f"oval off the real line through {z.real:.6g}{z.imag:+.6g}i "
                      f"(bounded face of {f0.cells} cells around {f0.centroid.real:.6g}{f0.centroid.imag:+.6g}i)",
                      data={"z": [z.real, z.imag], "centroid": [f0.centroid.real, f0.centroid.imag],
                            "cells": f0.cells})
    detail["face_centroids"] = [[f.centroid.real, f.centroid.imag] for f in faces]
    return ConditionReport("B", FAIL, witness, detail, note="numeric: found on a sign grid")


# hyperbolicity sweep ---------------------------------------------------------


@dataclass
class SweepSample:
    s: Fraction
    real: int
    expected: int
    source: str

    @property
    def ok(self) -> bool:
        return self.real == self.expected

    def to_dict(self) -> dict:
        return {"s": str(self.s), "s_decimal": float(self.s), "real": self.real,
                "expected": self.expected, "ok": self.ok, "source": self.source}


@dataclass
class SweepResult:
    status: str
    samples: list[SweepSample]
    cuts: list[tuple[Fraction, Fraction]]
    witness: Witness | None = None
    explained_by: list[str] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "cuts": [[str(a), str(b)] for a, b in self.cuts],
            "samples": [s.to_dict() for s in self.samples],
            "witness": None if self.witness is None else self.witness.to_dict(),
            "explained_by": self.explained_by,
            "note": self.note,
        }


def _complex_critical_cuts(pair: RecurrencePair, w: RatPoly) -> tuple[list, bool]:
    if w.degree < 1:
        return [], True
    rs = all_complex_roots(w)
    cuts = []
    for z in rs.roots:
        if z.imag == 0:
            continue
        q2 = complex(pair.q2(complex(z)))
        if abs(q2) == 0:
            continue
        v = complex(pair.f_num(complex(z))) / q2
        if abs(v.imag) <= 1e-9 * (1 + abs(v)) and 0 < v.real < 4:
            c = Fraction(v.real)
            pad = Fraction(1, 10**8) * (1 + abs(c))
            cuts.append((c - pad, c + pad))
    return cuts, rs.converged


def hyperbolicity_sweep(pair: RecurrencePair, grid: int = 0, cache: PairAnalysis | None = None,
                        explain: bool = True) -> SweepResult:
    """Real-root counts of Q1^2 - s Q2 on one rational s per gap between cuts in (0, 4).

    Cuts are the real critical values of f in (0, 4) (exact membership,
    rational enclosures), numeric estimates of complex critical values that
    look real, and the value at which the degree of Q1^2 - s Q2 drops.  The
    count of real roots is constant between cuts.  ``grid`` adds M evenly
    spaced samples.  The witness is the simplest failing sample.
    """
    cache = cache or PairAnalysis(pair)
    cuts = []
    for c in cache.critical_points():
        if c["inside"]:
            cuts.append(f_value_enclosure(pair, c["point"]))
    order, v_inf = cache.infinity()
    if v_inf is not None and 2 * pair.q1.degree == pair.q2.degree and 0 < v_inf < 4:
        cuts.append((v_inf, v_inf))
    extra, converged = _complex_critical_cuts(pair, cache.w)
    cuts = _merge_enclosures(cuts + extra)
    samples = {s: "gap" for s in _gap_samples(cuts, 0, 4)}
    for k in range(1, grid + 1):
        samples.setdefault(Fraction(4 * k, grid + 1), "grid")
    out = []
    for s in sorted(samples):
        sq = squarefree_part(pair.level_poly(s))
        out.append(SweepSample(s, sturm_count(sq) if sq.degree > 0 else 0, sq.degree, samples[s]))
    bad = [x for x in out if not x.ok]
    if bad:
        b = min(bad, key=lambda x: _simplicity_key(x.s))
        witness = Witness("level-sample",
                          f"Q1^2 - ({b.s}) Q2 has {b.real} real roots out of {b.expected}",
                          value=b.s, data={"s": str(b.s), "real": b.real, "expected": b.expected,
                                           "poly": render(pair.level_poly(b.s))})
        res = SweepResult(FAIL, out, cuts, witness)
        if explain:
            res.explained_by = _explain(pair, cache)
        return res
    if not converged:
        return SweepResult(NUMERIC_PASS, out, cuts,
                           note="complex critical points did not converge; cut set may be incomplete")
    return SweepResult(PASS, out, cuts)


def _explain(pair, cache) -> list[str]:
    why = [r.id for r in (check_c(pair, cache), check_d(pair, cache), check_e(pair, cache)) if not r.passed]
    if not why:
        if not check_b(pair, "numeric", cache).passed:
            why.append("B")
    return why


# support and verdict -----------------------------------------------------------


def _in_support(pair: RecurrencePair, signs) -> bool:
    s2, s1, sd = signs
    return (s2 > 0 and sd <= 0) or s1 == 0


def _signs_at_rational(pair, x: Fraction):
    sg = lambda v: (v > 0) - (v < 0)  # noqa: E731
    return sg(pair.q2(x)), sg(pair.q1(x)), sg(pair.d(x))


def _signs_at(pair, a: AlgebraicNumber):
    return sign_at(pair.q2, a), sign_at(pair.q1, a), sign_at(pair.d, a)


def _as_discriminant_root(pair: RecurrencePair, a: AlgebraicNumber, d_roots) -> AlgebraicNumber:
    """Re-express a root of D with D's own factors as defining polynomial.

    Rational roots get the product of D's rational linear factors, irrational
    ones the square-free part of D with those factors divided out.
    """
    if sign_at(pair.d, a) != 0:
        return a
    while True:
        hits = [r for r in d_roots if not (r.hi < a.lo or a.hi < r.lo)]
        if len(hits) == 1:
            return hits[0]
        a = a.refine()
        d_roots = [r.refine() for r in hits]


def _discriminant_roots(pair: RecurrencePair) -> list[AlgebraicNumber]:
    roots = isolate_real_roots(pair.d)
    rational = [r.lo for r in roots if r.is_exact]
    if rational:
        lin = RatPoly.from_roots(rational)
        roots = [AlgebraicNumber(lin, r.lo, r.hi) if r.is_exact else r for r in roots]
    return roots


def _support(pair: RecurrencePair) -> list[SupportInterval]:
    p = pair
    prod = squarefree_part(p.q1 * p.q2 * p.d)
    pts = isolate_real_roots(prod) if prod.degree > 0 else []
    if not pts:
        inside = _in_support(p, _signs_at_rational(p, Fraction(0)))
        return [SupportInterval(None, None)] if inside else []
    gaps = [pts[0].lo - 1]
    for a, b in zip(pts, pts[1:]):
        gaps.append(simplest_between(a.hi, b.lo) if a.hi < b.lo else a.hi)
    gaps.append(pts[-1].hi + 1)
    seq = []  # (kind, point or None, inside)
    for k, a in enumerate(pts):
        seq.append(("gap", None, _in_support(p, _signs_at_rational(p, gaps[k]))))
        seq.append(("pt", a, _in_support(p, _signs_at(p, a))))
    seq.append(("gap", None, _in_support(p, _signs_at_rational(p, gaps[-1]))))
    d_roots = _discriminant_roots(p)
    out = []
    start = None
    open_ = False
    last_pt = None
    for kind, a, inside in seq:
        if inside and not open_:
            open_ = True
            start = a  # None for a leading gap means -infinity
        elif not inside and open_:
            open_ = False
            out.append((start, last_pt))
        if kind == "pt":
            last_pt = a
    if open_:
        out.append((start, None))
    return [SupportInterval(None if lo is None else _as_discriminant_root(p, lo, d_roots),
                            None if hi is None else _as_discriminant_root(p, hi, d_roots))
            for lo, hi in out]


def full_verdict(pair: RecurrencePair, b_mode: str = "certified") -> Verdict:
    cache = PairAnalysis(pair)
    reports = [
        check_a(pair, cache),
        check_b(pair, b_mode, cache),
        check_c(pair, cache),
        check_d(pair, cache),
        check_e(pair, cache),
    ]
    v = Verdict(reports)
    if v.overall:
        v.support = _support(pair)
    return v


def support_intervals(pair: RecurrencePair, verdict: Verdict | None = None) -> list[SupportInterval]:
    """The real set {x : 0 <= f(x) <= 4} as maximal closed intervals (passing pairs only)."""
    verdict = verdict or full_verdict(pair)
    if not verdict.overall:
        failed = ", ".join(r.id for r in verdict.reports if not r.passed)
        raise ContractViolation(f"support intervals are only defined for passing pairs (failed: {failed})")
    return verdict.support if verdict.support is not None else _support(pair)
