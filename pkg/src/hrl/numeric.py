"""Floating-point complex roots by Aberth-Ehrlich iteration with Newton polish.

Used for figures and as a numeric cross-check of the exact machinery; no
verdict depends on it.  Multiple roots are separated exactly beforehand with
Yun's square-free decomposition, so the iteration only ever sees simple roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidInput
from .poly import RatPoly, squarefree_decomposition

DEFAULT_TOL = 1e-12
DEFAULT_PAIR_TOL = 1e-8
DEFAULT_MAX_ITER = 500
CLUSTER_RADIUS = 1e-6
# relative backward error accepted as converged after polishing
POLISH_THRESHOLD = 1e-10


@dataclass(frozen=True)
class RootConfig:
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    pair_tol: float = DEFAULT_PAIR_TOL


@dataclass
class ComplexRootSet:
    """All complex roots of a polynomial, repeated according to multiplicity."""

    roots: np.ndarray
    residual: float = 0.0
    converged: bool = True
    iterations: int = 0
    rescale: float = 1.0
    clusters: list[tuple[complex, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.roots)

    def real_roots(self, tol: float = 0.0) -> np.ndarray:
        r = self.roots[np.abs(self.roots.imag) <= tol]
        return np.sort(r.real)


def _log2_abs(c: Fraction) -> float:
    return math.log2(abs(c.numerator)) - math.log2(c.denominator)


def _scaled_float_coeffs(p: RatPoly) -> tuple[np.ndarray, int]:
    """Coefficients of ``p(2**e * y)``, normalised to max modulus 1, as doubles.

    The exponent e balances |a_0| against |a_n| so the roots in y are O(1);
    working in log2 space avoids overflow for huge exact coefficients.
    """
    n = p.degree
    logs = [(_log2_abs(c) if c else None) for c in p.coeffs]
    e = 0
    if n >= 1 and logs[0] is not None:
        e = round((logs[0] - logs[n]) / n)
    top = math.floor(max(l + e * k for k, l in enumerate(logs) if l is not None))
    out = np.array([float(c * Fraction(2) ** (e * k - top)) for k, c in enumerate(p.coeffs)])
    out /= np.max(np.abs(out))
    return out, e


def _horner(coeffs: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """p(z) and p'(z) for low-to-high ``coeffs`` at every point of z."""
    p = np.full(z.shape, coeffs[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _abs_horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    a = np.abs(coeffs)
    r = np.abs(z)
    acc = np.full(z.shape, a[-1])
    for c in a[-2::-1]:
        acc = acc * r + c
    return acc


def _backward_error(coeffs, z):
    p, _ = _horner(coeffs, z)
    return np.abs(p) / np.maximum(_abs_horner(coeffs, z), np.finfo(float).tiny)


def _aberth(coeffs: np.ndarray, tol: float, max_iter: int) -> tuple[np.ndarray, bool, int]:
    n = len(coeffs) - 1
    if n == 1:
        return np.array([-coeffs[0] / coeffs[1]], dtype=complex), True, 0
    radius = 1.0 + np.max(np.abs(coeffs[:-1])) / abs(coeffs[-1])
    # Cauchy-bound circle, rotated off the real axis so conjugate pairs can separate
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    eye = np.eye(n, dtype=bool)
    for it in range(1, max_iter + 1):
        p, dp = _horner(coeffs, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            inv = 1.0 / diff
            inv[eye] = 0.0
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(w)
        if bad.any():
            # p'(z) = 0 or a collision: nudge the offending iterate
            w[bad] = 1e-3 * (1.0 + np.abs(z[bad])) * np.exp(1j * (it + np.arange(bad.sum())))
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            return z, True, it
    return z, False, max_iter


def _newton_polish(coeffs: np.ndarray, z: np.ndarray, steps: int = 4) -> np.ndarray:
    """A few Newton steps per root, keeping a step only if the residual shrinks."""
    z = z.copy()
    best = _backward_error(coeffs, z)
    for _ in range(steps):
        p, dp = _horner(coeffs, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = z - p / dp
        ok = np.isfinite(cand)
        err = np.full(z.shape, np.inf)
        err[ok] = _backward_error(coeffs, cand[ok])
        take = err < best
        z[take] = cand[take]
        best = np.minimum(best, err)
    return z


class _ExactEvaluator:
    """Exact p(z) and p'(z) at dyadic complex points (the bits of a double).

    With z = (a + ib) / 2^k, ``2^(kn) p(z)`` is a Gaussian integer computed by
    Horner on integer coefficients, so the Newton correction is only rounded
    once at the end, however ill-conditioned p is.
    """

    def __init__(self, p: RatPoly):
        self.c = p.integer_coeffs()
        self.dc = [i * c for i, c in enumerate(self.c)][1:]

    @staticmethod
    def _horner(coeffs, a, b, k):
        n = len(coeffs) - 1
        re, im = coeffs[-1], 0
        for j in range(n - 1, -1, -1):
            re, im = re * a - im * b, re * b + im * a
            re += coeffs[j] << (k * (n - j))
        return re, im

    @staticmethod
    def _dyadic(z: complex) -> tuple[int, int, int]:
        fx, fy = Fraction(z.real), Fraction(z.imag)
        k = max(fx.denominator, fy.denominator).bit_length() - 1
        return int(fx * (1 << k)), int(fy * (1 << k)), k

    def newton_step(self, z: complex) -> complex | None:
        a, b, k = self._dyadic(z)
        pr, pi = self._horner(self.c, a, b, k)
        if pr == 0 and pi == 0:
            return 0j
        dr, di = self._horner(self.dc, a, b, k)
        den = (dr * dr + di * di) << k
        if den == 0:
            return None
        # p/p' = (P / 2^(kn)) / (P' / 2^(k(n-1))) = P conj(P') / (|P'|^2 2^k)
        return complex(Fraction(pr * dr + pi * di, den), Fraction(pi * dr - pr * di, den))

    def real_sign(self, x: float) -> int:
        fx = Fraction(x)
        v = Fraction(0)
        for c in reversed(self.c):
            v = v * fx + c
        return (v > 0) - (v < 0)


def _exact_aberth(ev: _ExactEvaluator, z: np.ndarray, max_iter: int = 60) -> tuple[np.ndarray, bool]:
    """Aberth sweeps driven by the exact Newton ratio.

    Float Horner stalls at the noise floor for clustered roots of large,
    ill-conditioned polynomials; with exact ratios the iteration keeps
    converging down to the spacing of doubles.
    """
    z = z.copy()
    n = len(z)
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        done = True
        for i in range(n):
            ratio = ev.newton_step(complex(z[i]))
            if ratio is None or not np.isfinite(ratio):
                done = False
                continue
            if ratio == 0:
                continue
            d = z[i] - np.delete(z, i)
            s = np.sum(1.0 / d) if n > 1 else 0.0
            w = ratio / (1.0 - ratio * s)
            if not np.isfinite(w):
                done = False
                continue
            z[i] = z[i] - w
            if abs(w) > 4 * eps * max(abs(z[i]), 1e-300):
                done = False
        if done:
            return z, True
    return z, False


def _snap_real(ev: _ExactEvaluator, z: np.ndarray, pair_tol: float) -> np.ndarray:
    """Move nearly-real roots onto the axis when an exact sign change confirms
    a real root right there; genuine conjugate pairs never pass that test."""
    z = z.copy()
    eps = np.finfo(float).eps
    for i in np.flatnonzero(np.abs(z.imag) < pair_tol * np.maximum(1.0, np.abs(z))):
        if z[i].imag == 0:
            continue
        x = float(z[i].real)
        for _ in range(4):
            step = ev.newton_step(complex(x, 0.0))
            if step is None or not np.isfinite(step):
                break
            x -= step.real
        w = max(4 * abs(z[i].imag), 16 * eps * max(1.0, abs(x)))
        if abs(x - z[i].real) <= w and ev.real_sign(x - w) * ev.real_sign(x + w) < 0:
            z[i] = complex(x, 0.0)
    return z


def _pair_conjugates(z: np.ndarray) -> np.ndarray:
    """Symmetrise the non-real roots of a real polynomial into exact conjugate pairs."""
    real = z[z.imag == 0]
    upper = z[z.imag > 0]
    lower = z[z.imag < 0]
    if len(upper) != len(lower):
        return z
    upper = upper[np.lexsort((upper.imag, upper.real))]
    lower_c = np.conj(lower)
    used = np.zeros(len(lower_c), dtype=bool)
    paired = []
    for u in upper:
        d = np.abs(lower_c - u)
        d[used] = np.inf
        j = int(np.argmin(d))
        used[j] = True
        m = 0.5 * (u + lower_c[j])
        paired.extend([m, np.conj(m)])
    return np.concatenate([real, np.array(paired, dtype=complex)])


def sort_roots(z: np.ndarray) -> np.ndarray:
    """Deterministic order: by real part, then imaginary part."""
    z = np.asarray(z, dtype=complex)
    return z[np.lexsort((z.imag, z.real))]


def _simple_roots(p: RatPoly, config: RootConfig) -> tuple[np.ndarray, float, bool, int, int]:
    coeffs, e = _scaled_float_coeffs(p)
    z, ok, iters = _aberth(coeffs, config.tol, config.max_iter)
    z = _newton_polish(coeffs, z)
    ev = _ExactEvaluator(p)
    z, exact_ok = _exact_aberth(ev, z * 2.0**e)
    z = _pair_conjugates(_snap_real(ev, z, config.pair_tol))
    resid = float(np.max(_backward_error(coeffs, z / 2.0**e))) if len(z) else 0.0
    return z, resid, (ok or exact_ok) and resid < POLISH_THRESHOLD, iters, e


def all_complex_roots(p: RatPoly, config: RootConfig | None = None) -> ComplexRootSet:
    """Every complex root of p (degree >= 1), repeated by multiplicity.

    Non-convergence is reported through ``converged`` with the best iterate;
    it never raises.
    """
    config = config or RootConfig()
    if p.is_zero or p.degree < 1:
        raise InvalidInput("all_complex_roots needs a polynomial of degree >= 1")
    parts = []
    clusters = []
    resid, converged, iters, rescale = 0.0, True, 0, 0
    for factor, mult in squarefree_decomposition(p):
        z, r, ok, it, e = _simple_roots(factor, config)
        resid = max(resid, r)
        converged = converged and ok
        iters = max(iters, it)
        rescale = e if abs(e) > abs(rescale) else rescale
        parts.append(np.repeat(z, mult))
        if mult > 1:
            clusters.extend((complex(c), mult) for c in sort_roots(z))
    roots = sort_roots(np.concatenate(parts)) if parts else np.zeros(0, dtype=complex)
    clusters.extend(_numeric_clusters(roots, clusters))
    return ComplexRootSet(roots=roots, residual=resid, converged=converged,
                          iterations=iters, rescale=2.0**rescale, clusters=clusters)


def _numeric_clusters(roots: np.ndarray, known) -> list[tuple[complex, int]]:
    # simple roots that still sit within CLUSTER_RADIUS of each other
    out = []
    seen = {c for c, _ in known}
    n = len(roots)
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(roots[j] - roots[i]) < CLUSTER_RADIUS:
            j += 1
        if j - i > 1 and complex(roots[i]) not in seen:
            group = roots[i:j]
            if not np.allclose(group, group[0], atol=0):
                out.append((complex(group.mean()), j - i))
        i = j
    return out


def max_imag_deviation(rs) -> float:
    """Largest |Im| over the roots; 0 for an empty set."""
    roots = rs.roots if isinstance(rs, ComplexRootSet) else np.asarray(rs)
    if len(roots) == 0:
        return 0.0
    return float(np.max(np.abs(np.imag(roots))))
