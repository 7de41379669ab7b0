"""Exact univariate polynomials over the rationals.

Everything in this module is exact: coefficients are :class:`fractions.Fraction`
and no floating-point value ever feeds a decision.  The pieces are

* :class:`RatPoly` -- dense coefficient tuple, lowest power first;
* gcd / square-free part / Yun decomposition;
* Sturm chains and real-root counting on (lo, hi];
* real-root isolation by Sturm bisection inside the Cauchy bound;
* :class:`AlgebraicNumber` and exact sign evaluation at one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable

from .errors import ContractViolation, InvalidInput

NEG_INF = float("-inf")  # degree of the zero polynomial


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, float):
        # floats are accepted only as exact dyadic values
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class RatPoly:
    """Immutable dense polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; the highest stored entry is
    nonzero, and the zero polynomial stores the empty tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "RatPoly":
        return cls([0] * power + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RatPoly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    # basic properties -----------------------------------------------------

    @property
    def degree(self):
        """Index of the highest nonzero coefficient; ``NEG_INF`` for zero."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatPoly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"RatPoly('{self}')"

    def __str__(self):
        return render(self)

    # ring operations ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RatPoly":
        if isinstance(other, RatPoly):
            return other
        return RatPoly.const(other)

    def __add__(self, other):
        b = self._coerce(other).coeffs
        a = self.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatPoly):
            s = _frac(other)
            return RatPoly(c * s for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInput("negative polynomial power")
        result = RatPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        b = self._coerce(other)
        if b.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(b.coeffs) - 1
        inv_lc = 1 / b.lc
        if len(rem) - 1 < db:
            return RatPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lc
            quot[k] = c
            if c:
                for j, bj in enumerate(b.coeffs):
                    rem[k + j] -= c * bj
        return RatPoly(quot), RatPoly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "RatPoly":
        q, r = divmod(self, other)
        if r:
            raise ContractViolation(f"{other} does not divide {self}")
        return q

    # calculus and evaluation ---------------------------------------------

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Horner evaluation.

        Exact for ``int``/``Fraction`` arguments; float or complex arguments
        give a floating-point result (coefficients are rounded first).
        """
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def monic(self) -> "RatPoly":
        if self.is_zero:
            return self
        return self * (1 / self.lc)

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` a primitive integer polynomial."""
        if self.is_zero:
            return Fraction(0)
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in self.coeffs:
            num = math.gcd(num, c.numerator * (den // c.denominator))
        return Fraction(num, den)

    def primitive(self) -> "RatPoly":
        """Integer primitive part, scaled by a positive factor (signs preserved)."""
        if self.is_zero:
            return self
        return self * (1 / self.content())

    def integer_coeffs(self) -> list[int]:
        return [int(c) for c in self.primitive().coeffs]

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def compose_scale(self, factor) -> "RatPoly":
        """p(factor * x)."""
        f = _frac(factor)
        return RatPoly(c * f**i for i, c in enumerate(self.coeffs))


def render(p: RatPoly, var: str = "x") -> str:
    """Canonical text, highest power first: ``x^4-8x^3+21x^2-14x-16``.

    The output re-parses to the identical polynomial with
    :func:`hrl.parse.parse_poly`.
    """
    if p.is_zero:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}{mono}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)


X = RatPoly.x()


# gcd and square-free machinery ----------------------------------------------


def gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic greatest common divisor by the Euclidean remainder sequence."""
    if a.is_zero and b.is_zero:
        raise InvalidInput("gcd of two zero polynomials is undefined")
    a, b = a.primitive(), b.primitive()
    while b:
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: RatPoly) -> RatPoly:
    """``p / gcd(p, p')``, made monic."""
    if p.is_zero:
        raise InvalidInput("square-free part of the zero polynomial")
    if p.degree == 0:
        return RatPoly.const(1)
    return p.exact_div(gcd(p, p.derivative())).monic()


def is_squarefree(p: RatPoly) -> bool:
    if p.is_zero:
        raise InvalidInput("square-freeness of the zero polynomial")
    if p.degree == 0:
        return True
    return gcd(p, p.derivative()).degree == 0


def squarefree_decomposition(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: monic square-free, pairwise coprime ``(f_i, i)`` with
    ``p = lc(p) * prod f_i**i``.  Trivial factors are omitted."""
    if p.is_zero:
        raise InvalidInput("square-free decomposition of the zero polynomial")
    out: list[tuple[RatPoly, int]] = []
    if p.degree == 0:
        return out
    dp = p.derivative()
    a = gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = gcd(b, d)
        if g.degree > 0:
            out.append((g.monic(), i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def wronskian(p: RatPoly, q: RatPoly) -> RatPoly:
    """``p' q - q' p``; for coprime p, q its roots are the finite critical points of p/q."""
    return p.derivative() * q - q.derivative() * p


def cauchy_bound(p: RatPoly) -> Fraction:
    """``1 + max |c_i / c_lead|``: every complex root has modulus strictly below it."""
    if p.is_zero:
        raise InvalidInput("Cauchy bound of the zero polynomial")
    if p.degree == 0:
        return Fraction(1)
    lead = abs(p.lc)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


# Sturm chains ---------------------------------------------------------------


def _is_inf(v) -> bool:
    return isinstance(v, float) and math.isinf(v)


class SturmChain:
    """Sturm sequence of a square-free polynomial.

    Members after the first two are negated remainders rescaled by positive
    constants (content stripped), which leaves every sign unchanged.
    """

    __slots__ = ("p", "chain")

    def __init__(self, p: RatPoly):
        if p.is_zero:
            raise InvalidInput("Sturm sequence of the zero polynomial")
        chain = [p.primitive(), p.derivative().primitive()]
        while chain[-1]:
            r = chain[-2] % chain[-1]
            if r.is_zero:
                break
            chain.append((-r).primitive())
        if not chain[-1]:
            chain.pop()
        if chain[-1].degree > 0:
            raise ContractViolation(
                "Sturm counting needs a square-free polynomial; pass squarefree_part(p) first")
        self.p = p
        self.chain = chain

    def variations(self, x) -> int:
        signs = []
        if _is_inf(x):
            for q in self.chain:
                s = _sign(q.lc)
                if x < 0 and q.degree % 2 == 1:
                    s = -s
                signs.append(s)
        else:
            xf = _frac(x)
            signs = [_sign(q(xf)) for q in self.chain]
        last, count = 0, 0
        for s in signs:
            if s == 0:
                continue
            if last and s != last:
                count += 1
            last = s
        return count

    def count(self, lo=NEG_INF, hi=math.inf) -> int:
        """Number of distinct real roots in (lo, hi]."""
        if self.p.degree == 0:
            return 0
        if not (lo < hi):
            raise ContractViolation("sturm_count needs lo < hi")
        return self.variations(lo) - self.variations(hi)


def sturm_count(p: RatPoly, lo=NEG_INF, hi=math.inf) -> int:
    """Exact number of real roots of the square-free ``p`` in ``(lo, hi]``."""
    return SturmChain(p).count(lo, hi)


def count_real_roots(p: RatPoly) -> int:
    """Distinct real roots of any nonzero p."""
    return sturm_count(squarefree_part(p))


# algebraic numbers ----------------------------------------------------------


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of a square-free rational polynomial, isolated in [lo, hi].

    Either ``lo == hi`` and ``defining(lo) == 0``, or ``defining`` has exactly
    one root in the open interval and none at the endpoints.
    """

    defining: RatPoly
    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self) -> "AlgebraicNumber":
        """Halve the isolating interval; returns a new value."""
        if self.is_exact:
            return self
        mid = (self.lo + self.hi) / 2
        vm = self.defining(mid)
        if vm == 0:
            return AlgebraicNumber(self.defining, mid, mid)
        if _sign(vm) == _sign(self.defining(self.lo)):
            return AlgebraicNumber(self.defining, mid, self.hi)
        return AlgebraicNumber(self.defining, self.lo, mid)

    def refined_to(self, width) -> "AlgebraicNumber":
        a = self
        width = _frac(width)
        while a.width > width:
            a = a.refine()
        return a

    def approx(self, width=Fraction(1, 10**15)) -> float:
        a = self.refined_to(width)
        return float((a.lo + a.hi) / 2)

    def __float__(self):
        return self.approx()

    def as_fraction(self) -> Fraction | None:
        """The exact value when the root is rational, else ``None``.

        A rational root of a primitive integer polynomial has denominator
        dividing the leading coefficient L; once the interval is narrower than
        1/(2 L^2) it is the unique fraction with denominator <= L closest to
        the midpoint.
        """
        if self.is_exact:
            return self.lo
        lead = abs(self.defining.primitive().lc.numerator)
        a = self.refined_to(Fraction(1, 2 * lead * lead))
        if a.is_exact:
            return a.lo
        cand = ((a.lo + a.hi) / 2).limit_denominator(lead)
        if a.lo <= cand <= a.hi and self.defining(cand) == 0:
            return cand
        return None

    def exactified(self) -> "AlgebraicNumber":
        r = self.as_fraction()
        if r is None or self.is_exact:
            return self
        return AlgebraicNumber(self.defining, r, r)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def render(self, digits: int = 12) -> str:
        r = self.as_fraction()
        if r is not None:
            return str(r)
        return f"{self.approx():.{digits}g}"

    def __repr__(self):
        return f"AlgebraicNumber(root of {self.defining} in [{self.lo}, {self.hi}])"


def _split_point(q: RatPoly, lo: Fraction, hi: Fraction) -> Fraction:
    # a point strictly inside (lo, hi) that is not a root of q, near the middle
    for den in range(2, 64):
        for num in sorted(range(1, den), key=lambda k: abs(2 * k - den)):
            if math.gcd(num, den) != 1:
                continue
            t = lo + (hi - lo) * Fraction(num, den)
            if q(t) != 0:
                return t
    raise AssertionError("unreachable: polynomial with too many roots")


def isolate_real_roots(p: RatPoly) -> list[AlgebraicNumber]:
    """Every distinct real root of p, sorted ascending, with disjoint intervals.

    Bisection with Sturm counts inside ``(-B, B]`` where B is the Cauchy bound.
    Rational roots come back as exact points; irrational roots get the
    square-free part with the rational roots divided out as defining polynomial.
    """
    if p.is_zero:
        raise InvalidInput("real roots of the zero polynomial")
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    chain = SturmChain(q)
    bound = cauchy_bound(q)
    found: list[AlgebraicNumber] = []
    total = chain.count(-bound, bound)
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append(AlgebraicNumber(q, lo, hi))
            continue
        mid = _split_point(q, lo, hi)
        left = chain.count(lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, n - left))
    found.sort(key=lambda a: a.lo)
    # neighbours may share a (non-root) endpoint; shrink until the closed intervals are disjoint
    for k in range(len(found) - 1):
        while found[k].hi >= found[k + 1].lo:
            found[k], found[k + 1] = found[k].refine(), found[k + 1].refine()
    found = [a.exactified() for a in found]
    rational = [a.lo for a in found if a.is_exact]
    if rational and len(rational) < len(found):
        reduced = q.exact_div(RatPoly.from_roots(rational))
        found = [a if a.is_exact else AlgebraicNumber(reduced, a.lo, a.hi) for a in found]
    return found


def sign_at(p: RatPoly, a: AlgebraicNumber) -> int:
    """Exact sign of p at the real algebraic number a."""
    if p.is_zero:
        return 0
    if a.is_exact:
        return _sign(p(a.lo))
    g = gcd(p, a.defining)
    if g.degree > 0 and sturm_count(g, a.lo, a.hi) == 1:
        return 0
    chain = SturmChain(squarefree_part(p))
    while chain.count(a.lo, a.hi) > 0:
        a = a.refine()
        if a.is_exact:
            return _sign(p(a.lo))
    # no root of p in (lo, hi], so p(hi) is nonzero and has p's sign at a
    return _sign(p(a.hi))


def interval_eval(p: RatPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ``p([lo, hi])`` by interval Horner."""
    a, b = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def real_root_count_with_multiplicity(p: RatPoly) -> int:
    """Real roots of p counted with multiplicity."""
    if p.degree < 1:
        return 0
    return sum(i * sturm_count(f) for f, i in squarefree_decomposition(p))
