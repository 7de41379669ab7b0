"""The curve f^{-1}(RP^1) for f = Q1^2/Q2, traced by marching squares.

Off the real axis, Im f(z) = 0 is the zero set of

    G(x, y) = Im(A(z) * conj(B(z))) / y,   A = Q1^2, B = Q2, z = x + iy,

a polynomial in x and y with rational coefficients, even in y, with
G(x, 0) = W(A, B)(x).  Contouring G instead of Im f keeps the real axis (on
which Im f vanishes identically) from swamping the picture; the axis is added
back as a synthetic component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .errors import InvalidInput
from .numeric import RootConfig, all_complex_roots
from .poly import RatPoly, cauchy_bound, isolate_real_roots, wronskian
from .recurrence import RecurrencePair

DEFAULT_RESOLUTION = 512
MIN_COMPONENT_POINTS = 8
MERGE_CELLS = 2.0
CROSSING_CELLS = 3.0

REAL_AXIS = "real-axis"
CROSSING = "crossing-oval"
DISJOINT = "disjoint-oval"
UNRESOLVED = "unresolved"


# bivariate polynomials as dicts {(a, b): coeff of x^a y^b} -------------------


def _re_im(p: RatPoly) -> tuple[dict, dict]:
    """Real and imaginary parts of p(x + iy) as bivariate polynomials."""
    re: dict = {}
    im: dict = {}
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        for m in range(k + 1):
            term = c * math.comb(k, m)
            key = (k - m, m)
            if m % 2 == 0:
                target, sign = re, (-1) ** (m // 2)
            else:
                target, sign = im, (-1) ** ((m - 1) // 2)
            target[key] = target.get(key, 0) + sign * term
    return re, im


def _bimul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


def _bisub(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) - c
    return out


@dataclass(frozen=True)
class BivariatePoly:
    coeffs: dict  # (a, b) -> Fraction, zero entries dropped

    @property
    def shape(self) -> tuple[int, int]:
        if not self.coeffs:
            return (1, 1)
        return (max(a for a, _ in self.coeffs) + 1, max(b for _, b in self.coeffs) + 1)

    def dense(self, dtype=float) -> np.ndarray:
        g = np.zeros(self.shape, dtype=object if dtype is Fraction else float)
        if dtype is Fraction:
            g[:] = Fraction(0)
        for (a, b), c in self.coeffs.items():
            g[a, b] = c if dtype is Fraction else float(c)
        return g

    def __call__(self, x, y):
        return sum(c * x**a * y**b for (a, b), c in self.coeffs.items())

    def grid(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Values on the tensor grid, shape (len(ys), len(xs)), in doubles."""
        g = self.dense()
        # c_a(y) for every row, then Horner in x
        cy = np.polynomial.polynomial.polyval(np.asarray(ys, dtype=float), g.T)
        cy = np.atleast_2d(cy)
        xs = np.asarray(xs, dtype=float)
        out = np.zeros((len(ys), len(xs)))
        for a in range(g.shape[0] - 1, -1, -1):
            out = out * xs[None, :] + cy[a][:, None]
        return out

    def grid_exact(self, xs, ys) -> np.ndarray:
        """Exact signs on the grid; xs and ys are sequences of Fractions."""
        g = self.dense(Fraction)
        out = np.zeros((len(ys), len(xs)), dtype=np.int8)
        xs = list(xs)
        for j, y in enumerate(ys):
            cy = []
            for a in range(g.shape[0]):
                acc = Fraction(0)
                for b in range(g.shape[1] - 1, -1, -1):
                    acc = acc * y + g[a, b]
                cy.append(acc)
            for i, x in enumerate(xs):
                acc = Fraction(0)
                for c in reversed(cy):
                    acc = acc * x + c
                out[j, i] = (acc > 0) - (acc < 0)
        return out


def im_numerator(pair: RecurrencePair) -> BivariatePoly:
    """G(x, y) = Im(Q1(z)^2 conj Q2(z)) / y as an exact bivariate polynomial."""
    ar, ai = _re_im(pair.f_num)
    br, bi = _re_im(pair.q2)
    n = _bisub(_bimul(ai, br), _bimul(ar, bi))
    g = {}
    for (a, b), c in n.items():
        if c:
            assert b >= 1, "Im part must carry a factor y"
            g[(a, b - 1)] = Fraction(c)
    return BivariatePoly(g)


# window ------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    resolution: int = DEFAULT_RESOLUTION

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidInput(f"empty window {self}")
        if self.resolution < 16:
            raise InvalidInput("window resolution must be at least 16")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.resolution

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / self.resolution

    @property
    def cell(self) -> float:
        return max(self.dx, self.dy)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.resolution + 1)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.resolution + 1)

    @classmethod
    def parse(cls, text: str, resolution: int = DEFAULT_RESOLUTION) -> "Window":
        """``'xmin,xmax,ymin,ymax'``."""
        try:
            vals = [float(v) for v in text.split(",")]
        except ValueError:
            raise InvalidInput(f"bad window {text!r}; expected xmin,xmax,ymin,ymax") from None
        if len(vals) != 4:
            raise InvalidInput(f"bad window {text!r}; expected four numbers")
        return cls(*vals, resolution=resolution)


def default_window(pair: RecurrencePair, resolution: int = DEFAULT_RESOLUTION) -> Window:
    """Square [-R, R]^2 with R = 1.5 * max Cauchy bound of Q1, Q2, D.

    Resolution is rounded up to an even number so y = 0 is a grid row.
    """
    r = 1.5 * float(max(cauchy_bound(pair.q1), cauchy_bound(pair.q2), cauchy_bound(pair.d)))
    resolution += resolution % 2
    return Window(-r, r, -r, r, resolution)


# marching squares ----------------------------------------------------------


def _interp(p0, p1, v0, v1):
    t = v0 / (v0 - v1) if v0 != v1 else 0.5
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def marching_squares(values: np.ndarray, xs: np.ndarray, ys: np.ndarray, center=None):
    """Zero-level polylines of a sampled function.

    ``values[j, i]`` is the sample at ``(xs[i], ys[j])``; zero counts as
    positive.  ``center(x, y)`` gives the function at a cell center and is
    only consulted in saddle cells.  Returns a list of (points, closed).
    """
    ny, nx = values.shape
    pos = values >= 0
    case = (pos[:-1, :-1].astype(np.int8) | pos[:-1, 1:] << 1
            | pos[1:, 1:] << 2 | pos[1:, :-1] << 3)
    n_h = (nx - 1) * ny

    def hid(i, j):
        return j * (nx - 1) + i

    def vid(i, j):
        return n_h + j * nx + i

    coords: dict[int, tuple[float, float]] = {}

    def edge_point(eid, i, j, kind):
        if eid not in coords:
            if kind == "h":
                coords[eid] = _interp((xs[i], ys[j]), (xs[i + 1], ys[j]), values[j, i], values[j, i + 1])
            else:
                coords[eid] = _interp((xs[i], ys[j]), (xs[i], ys[j + 1]), values[j, i], values[j + 1, i])
        return eid

    adj: dict[int, list[int]] = {}
    js, is_ = np.nonzero((case != 0) & (case != 15))
    for j, i in zip(js.tolist(), is_.tolist()):
        c = int(case[j, i])
        b = [c & 1, (c >> 1) & 1, (c >> 2) & 1, (c >> 3) & 1]
        cross = [b[0] != b[1], b[1] != b[2], b[3] != b[2], b[0] != b[3]]
        ids = [hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)]
        where = [(i, j, "h"), (i + 1, j, "v"), (i, j + 1, "h"), (i, j, "v")]
        e = [edge_point(ids[k], *where[k]) if cross[k] else None for k in range(4)]
        if sum(cross) == 2:
            a, bb = [e[k] for k in range(4) if cross[k]]
            segs = [(a, bb)]
        else:
            cx = 0.5 * (xs[i] + xs[i + 1])
            cy = 0.5 * (ys[j] + ys[j + 1])
            cval = center(cx, cy) if center is not None else values[j:j + 2, i:i + 2].mean()
            center_pos = cval >= 0
            if (c == 5) == center_pos:
                # separate corners 1 and 3
                segs = [(e[0], e[1]), (e[2], e[3])]
            else:
                segs = [(e[3], e[0]), (e[1], e[2])]
        for a, bb in segs:
            adj.setdefault(a, []).append(bb)
            adj.setdefault(bb, []).append(a)

    lines = []
    seen = set()

    def walk(start):
        path = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [n for n in adj[cur] if n != prev and n not in seen]
            if not nxt:
                closed = len(path) > 2 and start in adj[cur] and prev is not None
                return path, closed
            prev, cur = cur, nxt[0]
            seen.add(cur)
            path.append(cur)

    for eid in sorted(adj):
        if eid not in seen and len(adj[eid]) == 1:
            lines.append(walk(eid))
    for eid in sorted(adj):
        if eid not in seen:
            lines.append(walk(eid))
    return [(np.array([coords[k] for k in path]), closed) for path, closed in lines]


# components ----------------------------------------------------------------


@dataclass
class CurveComponent:
    polylines: list[np.ndarray]
    closed: bool
    classification: str = UNRESOLVED
    crossing_points: list[float] = field(default_factory=list)
    note: str = ""

    @property
    def points(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros((0, 2))
        return np.concatenate(self.polylines)

    def __len__(self):
        return sum(len(p) for p in self.polylines)


def _merge(lines: list[tuple[np.ndarray, bool]], radius: float) -> list[list[int]]:
    """Group polylines whose points come within ``radius`` (union-find)."""
    parent = list(range(len(lines)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pts = [p for p, _ in lines]
    if len(lines) > 1:
        owner = np.concatenate([np.full(len(p), k) for k, p in enumerate(pts)])
        tree = cKDTree(np.concatenate(pts))
        for a, b in tree.query_pairs(radius, output_type="ndarray"):
            ra, rb = find(owner[a]), find(owner[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for k in range(len(lines)):
        groups.setdefault(find(k), []).append(k)
    return [groups[r] for r in sorted(groups)]


def trace_gamma_tilde(pair: RecurrencePair, window: Window | None = None,
                      exact: bool = False) -> list[CurveComponent]:
    """Components of f^{-1}(RP^1), including the real axis, unclassified.

    ``exact`` decides the sign of G at every grid node with rational
    arithmetic (slow); the default uses doubles.
    """
    window = window or default_window(pair)
    g = im_numerator(pair)
    xs, ys = window.xs(), window.ys()
    if exact:
        values = g.grid_exact([Fraction(v) for v in xs], [Fraction(v) for v in ys]).astype(float)
        center = lambda x, y: float(g(Fraction(x), Fraction(y)))  # noqa: E731
    else:
        values = g.grid(xs, ys)
        center = lambda x, y: float(g.grid(np.array([x]), np.array([y]))[0, 0])  # noqa: E731
    lines = marching_squares(values, xs, ys, center)
    comps = []
    for group in _merge(lines, MERGE_CELLS * window.cell):
        polys = [lines[k][0] for k in group]
        if sum(len(p) for p in polys) < MIN_COMPONENT_POINTS:
            continue
        comps.append(CurveComponent(polys, all(lines[k][1] for k in group)))
    if window.y_min <= 0 <= window.y_max:
        axis = np.column_stack([xs, np.zeros_like(xs)])
        comps.insert(0, CurveComponent([axis], False, REAL_AXIS))
    return comps


def real_critical_points(pair: RecurrencePair) -> list[float]:
    """Finite real critical points of f, i.e. real roots of W(Q1^2, Q2)."""
    return [a.approx() for a in isolate_real_roots(wronskian(pair.f_num, pair.q2))]


def _touches_border(pts: np.ndarray, window: Window) -> bool:
    tol = 0.5 * window.cell
    return bool(np.any((pts[:, 0] <= window.x_min + tol) | (pts[:, 0] >= window.x_max - tol)
                       | (pts[:, 1] <= window.y_min + tol) | (pts[:, 1] >= window.y_max - tol)))


def classify(components: list[CurveComponent], critical_points_real, window: Window) -> list[CurveComponent]:
    """Tag each component as crossing-oval, disjoint-oval or unresolved.

    Crossings are read off the y = 0 grid row, where G equals W(Q1^2, Q2); each
    must lie within a few cells of a real critical point or the component is
    left unresolved (grid too coarse).
    """
    crit = np.asarray(sorted(critical_points_real), dtype=float)
    cell = window.cell
    for comp in components:
        if comp.classification == REAL_AXIS:
            continue
        pts = comp.points
        on_axis = pts[pts[:, 1] == 0.0][:, 0]
        xs = sorted(set(np.round(on_axis, 12).tolist()))
        comp.crossing_points = _cluster_1d(xs, cell)
        if comp.crossing_points:
            comp.classification = CROSSING
            for x in comp.crossing_points:
                if crit.size == 0 or np.min(np.abs(crit - x)) > CROSSING_CELLS * cell:
                    comp.classification = UNRESOLVED
                    comp.note = f"crossing at x={x!r} has no real critical point within {CROSSING_CELLS:g} cells"
                    break
        elif np.min(np.abs(pts[:, 1])) > 2 * cell and not _touches_border(pts, window):
            comp.classification = DISJOINT
        else:
            comp.classification = UNRESOLVED
            comp.note = "leaves the window or hugs the real axis"
    return components


def _cluster_1d(xs: list[float], gap: float) -> list[float]:
    out: list[list[float]] = []
    for x in xs:
        if out and x - out[-1][-1] <= gap:
            out[-1].append(x)
        else:
            out.append([x])
    return [float(np.mean(c)) for c in out]


def trace_and_classify(pair: RecurrencePair, window: Window | None = None, exact: bool = False):
    window = window or default_window(pair)
    comps = trace_gamma_tilde(pair, window, exact)
    return classify(comps, real_critical_points(pair), window), window


# faces off the real axis -----------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A region of the upper half plane cut out by the curve that never reaches R."""

    cells: int
    centroid: complex
    boundary_point: complex  # a point on the curve bounding the face
    sign: int  # sign of Im f inside


def _oval_window(pair: RecurrencePair) -> float:
    # every face maps onto a half plane, so it holds a preimage of i or -i;
    # those are roots of Q1^2 -/+ i Q2, bounded by this Cauchy bound
    fa, fb = pair.f_num.to_floats(), pair.q2.to_floats()
    a = np.zeros(max(len(fa), len(fb)))
    b = np.zeros_like(a)
    a[: len(fa)] = fa
    b[: len(fb)] = fb
    mod = np.hypot(a, b)
    k = len(mod) - 1
    while k > 0 and mod[k] == 0:
        k -= 1
    bound = 1 + float(np.max(mod[:k]) / mod[k]) if k > 0 else 1.0
    others = [float(cauchy_bound(p)) for p in (pair.q1, pair.q2, pair.d)]
    return 1.5 * max([bound] + others)


def _curve_crossings(pair: RecurrencePair) -> list[complex]:
    """Critical points in the upper half plane whose critical value is real or
    infinite; the curve has at least four branches through each of them."""
    w = wronskian(pair.f_num, pair.q2)
    if w.degree < 1:
        return []
    out = []
    for z in all_complex_roots(w).roots:
        if z.imag <= 0:
            continue
        z = complex(z)
        a, b = complex(pair.f_num(z)), complex(pair.q2(z))
        if abs(b) <= 1e-12 * abs(a):
            out.append(z)  # a multiple pole
            continue
        v = a / b
        if abs(v.imag) <= 1e-8 * (1 + abs(v)):
            out.append(z)
    return out


def disjoint_faces(pair: RecurrencePair, resolution: int = DEFAULT_RESOLUTION,
                   radius: float | None = None) -> tuple[list[Face], float]:
    """Faces of the upper half plane bounded by the curve and avoiding RP^1.

    Such a face is the inside of an oval disjoint from the real projective
    line.  Grid nodes are shifted off the symmetry lines so that exact zeros
    of G (e.g. along the imaginary axis) do not glue neighbouring faces.
    A face touching the bottom row is taken to reach R, one touching the outer
    border to reach infinity.  Returns the faces and the cell size.
    """
    r = radius or _oval_window(pair)
    h = 2 * r / resolution
    xs = -r + h * (np.arange(resolution) + 0.371)
    ys = h * (np.arange(resolution // 2) + 0.5)
    g = im_numerator(pair)
    vals = g.grid(xs, ys)
    # crossings of the curve off the axis pinch faces together; cut them out
    # so a one-cell bridge through the crossing cannot glue two faces
    pinch = np.zeros(vals.shape, dtype=bool)
    for z in _curve_crossings(pair):
        pinch |= np.hypot(xs[None, :] - z.real, ys[:, None] - z.imag) <= 2.5 * h
    faces = []
    for sgn in (1, -1):
        mask = ((vals > 0) if sgn > 0 else (vals < 0)) & ~pinch
        labels, count = ndimage.label(mask)
        if count == 0:
            continue
        edge = set(np.unique(labels[0, :])) | set(np.unique(labels[-1, :]))
        edge |= set(np.unique(labels[:, 0])) | set(np.unique(labels[:, -1]))
        for lab in range(1, count + 1):
            if lab in edge:
                continue
            jj, ii = np.nonzero(labels == lab)
            cen = complex(xs[ii].mean(), ys[jj].mean())
            faces.append(Face(len(jj), cen, _boundary_point(g, xs, ys, labels, lab, jj, ii), sgn))
    faces.sort(key=lambda f: (f.centroid.real, f.centroid.imag))
    return faces, h


def _boundary_point(g: BivariatePoly, xs, ys, labels, lab, jj, ii) -> complex:
    # topmost cell of the face; the curve crosses between it and the cell above
    k = int(np.argmax(jj))
    j, i = int(jj[k]), int(ii[k])
    x = float(xs[i])
    lo, hi = float(ys[j]), float(ys[min(j + 1, len(ys) - 1)])
    val = lambda y: float(g.grid(np.array([x]), np.array([y]))[0, 0])  # noqa: E731
    vlo = val(lo)
    if hi == lo or (vlo > 0) == (val(hi) > 0):
        return complex(x, lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if (val(mid) > 0) == (vlo > 0):
            lo = mid
        else:
            hi = mid
    return complex(x, 0.5 * (lo + hi))


# point cloud of Gamma_Q ------------------------------------------------------


@dataclass
class CloudPoint:
    s: Fraction
    z: complex


@dataclass
class GammaCloud:
    points: list[CloudPoint]
    converged: bool
    roots_at_infinity: int = 0

    def array(self) -> np.ndarray:
        return np.array([p.z for p in self.points], dtype=complex)


def gamma_point_cloud(pair: RecurrencePair, s_count: int, config: RootConfig | None = None) -> GammaCloud:
    """Roots of Q1^2 - s Q2 for s on a uniform grid of [0, 4] with s_count nodes."""
    if s_count < 2:
        raise InvalidInput("s_count must be at least 2")
    pts = []
    ok = True
    lost = 0
    for k in range(s_count):
        s = Fraction(4 * k, s_count - 1)
        poly = pair.level_poly(s)
        lost += pair.degree_f - poly.degree
        if poly.degree < 1:
            continue
        rs = all_complex_roots(poly, config)
        ok = ok and rs.converged
        pts.extend(CloudPoint(s, complex(z)) for z in rs.roots)
    return GammaCloud(pts, ok, lost)


# output ----------------------------------------------------------------------


def components_csv_rows(components: list[CurveComponent]):
    yield ("x", "y", "component_id", "classification")
    for cid, comp in enumerate(components):
        for x, y in comp.points:
            yield (repr(float(x)), repr(float(y)), str(cid), comp.classification)


_COLORS = {REAL_AXIS: "#444444", CROSSING: "#1f5fbf", DISJOINT: "#c05000", UNRESOLVED: "#999999"}


def render_svg(window: Window, components: list[CurveComponent], *, cloud=(), red=(), green=(),
               title: str = "", size: int = 640) -> str:
    """Static SVG: curve components, a point cloud, and accent dots.

    ``red`` are zeros of the discriminant and ``green`` real critical points.
    """
    sx = size / (window.x_max - window.x_min)
    sy = size / (window.y_max - window.y_min)

    def px(x, y):
        return f"{(x - window.x_min) * sx:.3f},{(window.y_max - y) * sy:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        out.append(f"<title>{_esc(title)}</title>")
    for comp in components:
        color = _COLORS.get(comp.classification, "#000000")
        for line in comp.polylines:
            pts = " ".join(px(x, y) for x, y in line)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1" '
                       f'class="{comp.classification}" points="{pts}"/>')
    dots = [(z, 1.2, "black") for z in cloud]
    dots += [(z, 3, "red") for z in red] + [(z, 3, "green") for z in green]
    for z, r, color in dots:
        z = complex(z)
        cx, cy = px(z.real, z.imag).split(",")
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
