"""Command-line front end: ``hrl check|zeros|gen|curve|verify|sweep``.

Exit codes: 0 on a computed result (pass or fail), 2 on a parse error,
3 on invalid input, 4 when a required numeric step did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from contextlib import contextmanager

import numpy as np

from . import criterion, curves
from .errors import ConvergenceError, InvalidInput, ParseError, ValidationError
from .numeric import RootConfig, all_complex_roots, max_imag_deviation
from .poly import isolate_real_roots, render, wronskian
from .recurrence import RecurrencePair, generate_sequence, parse_spec
from .spectral import zeros_via_levels

SCHEMA_VERSION = 1
REAL_TOL = 1e-8

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3, 4


# output helpers ----------------------------------------------------------------


def atomic_write(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def cnum(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


class Timer:
    def __init__(self):
        self.marks: dict[str, float] = {}

    @contextmanager
    def __call__(self, name):
        t = time.perf_counter()
        yield
        self.marks[name] = round(time.perf_counter() - t, 6)


def _document(args, command: str, result: dict, timer: Timer | None = None, pair=None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
    if pair is not None:
        doc["input"] = {"q1": render(pair.q1), "q2": render(pair.q2)}
    if timer is not None and getattr(args, "timings", False):
        doc["timings"] = timer.marks
    return doc


def _emit_json(args, doc: dict) -> None:
    if getattr(args, "json", None):
        atomic_write(args.json, dump_json(doc))


def _config(args) -> RootConfig:
    return RootConfig(tol=args.tol, pair_tol=args.pair_tol, max_iter=args.max_iter)


def _pair(args) -> RecurrencePair:
    return RecurrencePair.from_text(args.q1, args.q2)


# subcommands ---------------------------------------------------------------------


def cmd_check(args) -> int:
    pair = _pair(args)
    timer = Timer()
    with timer("verdict"):
        v = criterion.full_verdict(pair, b_mode=args.b_mode)
    print(f"Q1 = {pair.q1}")
    print(f"Q2 = {pair.q2}")
    for r in v.reports:
        line = f"  ({r.id}) {r.status}"
        if r.witness is not None:
            line += f": {r.witness.text}"
        print(line)
    print(f"overall: {'pass' if v.overall else 'fail'}{'' if v.certified else ' (numeric)'}")
    if v.support is not None:
        print(f"support: {v.support_text()}")
    _emit_json(args, _document(args, "check", v.to_dict(), timer, pair))
    return EXIT_OK


def _zeros(pair, n, method, config):
    if method == "levels":
        zs = zeros_via_levels(pair, n, config)
        return zs.roots, zs.converged, zs.roots_at_infinity
    p = generate_sequence(pair, n)[n]
    if p.degree < 1:
        return np.zeros(0, dtype=complex), True, 0
    rs = all_complex_roots(p, config)
    return rs.roots, rs.converged, 0


def cmd_zeros(args) -> int:
    pair = _pair(args)
    if args.n < 1:
        raise InvalidInput("-n must be at least 1")
    timer = Timer()
    with timer("zeros"):
        roots, ok, at_inf = _zeros(pair, args.n, args.method, _config(args))
    dev = max_imag_deviation(roots)
    result = {
        "n": args.n,
        "method": args.method,
        "count": len(roots),
        "roots_at_infinity": at_inf,
        "converged": ok,
        "max_imag_deviation": dev,
        "roots": [cnum(z) for z in roots],
    }
    print(f"P_{args.n}: {len(roots)} zeros ({args.method}), max |Im| = {dev!r}"
          + ("" if ok else "  [NOT CONVERGED]"))
    if args.print:
        for z in roots:
            print(f"  {z.real!r} {z.imag:+.17g}i")
    if args.csv:
        atomic_write(args.csv, csv_text([("re", "im")] + [(repr(float(z.real)), repr(float(z.imag))) for z in roots]))
    if args.svg:
        atomic_write(args.svg, _zeros_svg(pair, roots, args.n))
    _emit_json(args, _document(args, "zeros", result, timer, pair))
    if not ok:
        raise ConvergenceError(f"root finding for P_{args.n} did not converge")
    return EXIT_OK


def _accent_points(pair):
    red = all_complex_roots(pair.d).roots if pair.d.degree > 0 else []
    green = [complex(a.approx()) for a in isolate_real_roots(wronskian(pair.f_num, pair.q2))]
    return red, green


def _zeros_svg(pair, roots, n) -> str:
    red, green = _accent_points(pair)
    pts = np.concatenate([np.asarray(roots, dtype=complex), np.asarray(red, dtype=complex),
                          np.asarray(green, dtype=complex)])
    r = 1.0
    if len(pts):
        r = max(1.0, float(np.max(np.abs(pts.real))), float(np.max(np.abs(pts.imag)))) * 1.1
    win = curves.Window(-r, r, -r, r, 16)
    axis = curves.CurveComponent([np.array([[-r, 0.0], [r, 0.0]])], False, curves.REAL_AXIS)
    return curves.render_svg(win, [axis], cloud=roots, red=red, green=green,
                             title=f"zeros of P_{n}; Q1 = {pair.q1}, Q2 = {pair.q2}")


def cmd_gen(args) -> int:
    spec = parse_spec(args.q)
    if args.n < 0:
        raise InvalidInput("-n must be nonnegative")
    seq = generate_sequence(spec, args.n)
    for i, p in enumerate(seq):
        print(f"P_{i} = {p}")
    result = {
        "k": spec.order,
        "qs": [render(q) for q in spec.qs],
        "sequence": [{"i": i, "poly": render(p), "coeffs": [str(c) for c in p.coeffs]}
                     for i, p in enumerate(seq)],
    }
    _emit_json(args, _document(args, "gen", result))
    return EXIT_OK


def cmd_curve(args) -> int:
    pair = _pair(args)
    if args.window:
        window = curves.Window.parse(args.window, args.resolution)
    else:
        window = curves.default_window(pair, args.resolution)
    timer = Timer()
    with timer("trace"):
        comps, window = curves.trace_and_classify(pair, window, exact=args.exact)
    with timer("cloud"):
        cloud = curves.gamma_point_cloud(pair, args.s_count, _config(args))
    counts: dict[str, int] = {}
    for c in comps:
        counts[c.classification] = counts.get(c.classification, 0) + 1
    print(f"window [{window.x_min!r}, {window.x_max!r}] x [{window.y_min!r}, {window.y_max!r}], "
          f"{window.resolution} cells per axis")
    for cid, c in enumerate(comps):
        xs = ", ".join(f"{x:.6g}" for x in c.crossing_points)
        print(f"  component {cid}: {c.classification}, {len(c)} points"
              + (f", crosses R at {xs}" if xs else "") + (f" ({c.note})" if c.note else ""))
    result = {
        "window": [window.x_min, window.x_max, window.y_min, window.y_max],
        "resolution": window.resolution,
        "components": [
            {"id": cid, "classification": c.classification, "closed": c.closed, "points": len(c),
             "crossing_points": c.crossing_points, "note": c.note}
            for cid, c in enumerate(comps)
        ],
        "counts": counts,
        "cloud": {"s_count": args.s_count, "points": len(cloud.points), "converged": cloud.converged,
                  "roots_at_infinity": cloud.roots_at_infinity,
                  "max_imag_deviation": max_imag_deviation(cloud.array())},
    }
    if args.csv:
        atomic_write(args.csv, csv_text(curves.components_csv_rows(comps)))
    if args.cloud_csv:
        atomic_write(args.cloud_csv, csv_text(
            [("s", "re", "im")] + [(str(p.s), repr(p.z.real), repr(p.z.imag)) for p in cloud.points]))
    if args.svg:
        red, green = _accent_points(pair)
        atomic_write(args.svg, curves.render_svg(window, comps, cloud=cloud.array(), red=red, green=green,
                                                 title=f"Q1 = {pair.q1}, Q2 = {pair.q2}"))
    _emit_json(args, _document(args, "curve", result, timer, pair))
    return EXIT_OK


def cmd_verify(args) -> int:
    pair = _pair(args)
    if args.n_max < 1:
        raise InvalidInput("--n-max must be at least 1")
    timer = Timer()
    with timer("verdict"):
        v = criterion.full_verdict(pair)
    rows = []
    ok_all = True
    with timer("zeros"):
        for n in range(1, args.n_max + 1):
            zs = zeros_via_levels(pair, n, _config(args))
            dev = max_imag_deviation(zs.roots)
            ok_all = ok_all and zs.converged
            rows.append({"n": n, "max_imag_deviation": dev, "converged": zs.converged})
    real = all(r["max_imag_deviation"] < REAL_TOL for r in rows)
    consistent = real == v.overall
    print(f"{'n':>5}  max |Im|")
    for r in rows:
        print(f"{r['n']:>5}  {r['max_imag_deviation']:.3e}")
    print(f"verdict: {'pass' if v.overall else 'fail'}; empirically real up to n = {args.n_max}: "
          f"{'yes' if real else 'no'}; consistent: {'yes' if consistent else 'NO'}")
    result = {"n_max": args.n_max, "rows": rows, "verdict": "pass" if v.overall else "fail",
              "empirically_real": real, "consistent": consistent, "threshold": REAL_TOL}
    _emit_json(args, _document(args, "verify", result, timer, pair))
    if not ok_all:
        raise ConvergenceError("root finding did not converge for some n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    pair = _pair(args)
    timer = Timer()
    with timer("sweep"):
        res = criterion.hyperbolicity_sweep(pair, grid=args.grid)
    print(f"{'s':>14} {'real':>5} {'of':>4}")
    for s in res.samples:
        print(f"{str(s.s):>14} {s.real:>5} {s.expected:>4}{'' if s.ok else '  <-'}")
    line = f"sweep: {res.status}"
    if res.witness is not None:
        line += f"; witness s = {res.witness.value}: {res.witness.text}"
    if res.explained_by:
        line += f"; failing conditions: {', '.join(res.explained_by)}"
    print(line)
    _emit_json(args, _document(args, "sweep", res.to_dict(), timer, pair))
    return EXIT_OK


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hrl", description=(
        "Reality of the zeros of P_i + Q1 P_(i-1) + Q2 P_(i-2) = 0, P_0 = 1, P_(-1) = 0."))
    sub = ap.add_subparsers(dest="command", required=True)

    def pair_args(p, numeric=True):
        p.add_argument("--q1", required=True, help="Q1 as a polynomial in x, e.g. '-x^2+2x'")
        p.add_argument("--q2", required=True, help="Q2 as a polynomial in x")
        p.add_argument("--json", metavar="PATH", help="write a JSON report")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings in the JSON")
        if numeric:
            p.add_argument("--tol", type=float, default=1e-12, help="Aberth correction tolerance")
            p.add_argument("--pair-tol", type=float, default=1e-8, help="snap-to-real threshold")
            p.add_argument("--max-iter", type=int, default=500)

    p = sub.add_parser("check", help="decide the five conditions")
    pair_args(p, numeric=False)
    p.add_argument("--b-mode", choices=["certified", "numeric"], default="certified")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("zeros", help="zeros of P_n")
    pair_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--method", choices=["levels", "expand"], default="levels")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--print", action="store_true", help="list the zeros on stdout")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("gen", help="P_0..P_n for a k-term recurrence")
    p.add_argument("--q", required=True, help="'Q1;Q2;...;Qk'")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("curve", help="trace Im f = 0 and sample f^-1([0,4])")
    pair_args(p)
    p.add_argument("--window", help="xmin,xmax,ymin,ymax (default from Cauchy bounds)")
    p.add_argument("--resolution", type=int, default=curves.DEFAULT_RESOLUTION)
    p.add_argument("--exact", action="store_true", help="exact signs at grid nodes (slow)")
    p.add_argument("--s-count", type=int, default=41)
    p.add_argument("--svg", metavar="PATH")
    p.add_argument("--csv", metavar="PATH", help="curve points x,y,component_id,classification")
    p.add_argument("--cloud-csv", metavar="PATH", help="preimages of [0,4] as s,re,im")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify", help="max |Im| of the zeros of P_1..P_N against the verdict")
    pair_args(p)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="real-root counts of Q1^2 - s Q2 across (0, 4)")
    pair_args(p, numeric=False)
    p.add_argument("--grid", type=int, default=0, help="extra evenly spaced samples")
    p.set_defaults(func=cmd_sweep)
    return ap


_POLY_OPTIONS = ("--q1", "--q2", "--q")


def _glue_poly_values(argv: list[str]) -> list[str]:
    # "--q1 -x^2+2x" would read the value as a flag; pass it as "--q1=-x^2+2x"
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _POLY_OPTIONS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_poly_values(argv))
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, InvalidInput) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
