"""Command-line interface: ``curvlab {decompose,spectrum,check,verify,gallery}``.

Exit status: 0 on success (or when a condition/suite passes), 1 when a
condition or the verification suite fails, 2 on input errors.

The default tolerance of ``check`` and ``spectrum`` can be overridden with
the environment variable ``CURVLAB_TOL``.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

import numpy as np

from . import jsonio
from .bochner import WeightSpec, check_vanishing, mu_list
from .curvature import bivector_basis, decompose, partial_sum_verdict, spectrum, validate
from .errors import CurvlabError, MiddleDegree, SchemaError
from .gallery import EXAMPLES, gallery
from .suite import run_suite

LAPLACIAN_RTOL = 1e-9


def _default_tol():
    raw = os.environ.get("CURVLAB_TOL")
    if raw is None:
        return 1e-10
    try:
        return float(raw)
    except ValueError:
        raise SchemaError("$CURVLAB_TOL", f"not a number: {raw!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # unknown flags and bad values are input errors
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _read_json(path):
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError("$", f"cannot read {path}: {exc}") from exc
    return jsonio.loads(text)


def _curvature(obj, path="$"):
    if isinstance(obj, dict) and "curvature" in obj and "components" not in obj:
        obj, path = obj["curvature"], f"{path}.curvature"
    R = jsonio.tensor_from_json(obj, path, order=4)
    return validate(R)


def _emit(fmt, payload, text_lines, csv_rows, out):
    if fmt == "json":
        out.write(jsonio.dumps(payload) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


def _fmt(x):
    return repr(float(x))


# ---------------------------------------------------------------- decompose

def cmd_decompose(args, out):
    R = _curvature(_read_json(args.input))
    d = decompose(R)
    payload = {
        "dim": R.n,
        "scal": d.scal,
        "ric0": jsonio.tensor_to_json(d.ric0),
        "weyl": jsonio.tensor_to_json(d.weyl.tensor),
    }
    rows = [["field", "index", "value"], ["scal", "", _fmt(d.scal)]]
    rows += [["ric0", " ".join(map(str, i)), _fmt(v)] for i, v in np.ndenumerate(d.ric0)]
    rows += [["weyl", " ".join(map(str, i)), _fmt(v)] for i, v in np.ndenumerate(d.weyl.tensor)]
    text = [
        f"dimension: {R.n}",
        f"scalar curvature: {d.scal:.12g}",
        f"|trace-free Ricci|: {np.linalg.norm(d.ric0):.6g}",
        f"|Weyl|: {np.linalg.norm(d.weyl.tensor.ravel()):.6g}",
    ]
    _emit(args.format, payload, text, rows, out)
    return 0


# ----------------------------------------------------------------- spectrum

def cmd_spectrum(args, out):
    R = _curvature(_read_json(args.input))
    spec = spectrum(R)
    sums = spec.partial_sums()
    payload = {
        "dim": R.n,
        "eigenvalues": [float(v) for v in spec.eigenvalues],
        "partial_sums": [float(v) for v in sums],
    }
    text = [f"dimension: {R.n}", "index  eigenvalue  partial_sum"]
    text += [f"{i + 1:5d}  {v: .12g}  {s: .12g}" for i, (v, s) in enumerate(zip(spec.eigenvalues, sums))]
    if args.l is not None:
        rep = partial_sum_verdict(spec, args.l, args.tol)
        payload["verdict"] = rep.to_dict()
        text.append(f"l = {rep.l}: sum {rep.partial_sum:.12g} -> {rep.verdict}")
    if args.vectors:
        payload["bivector_basis"] = [list(p) for p in bivector_basis(R.n)]
        payload["eigenvectors"] = spec.eigenvectors.T.tolist()
    rows = [["index", "eigenvalue", "partial_sum"]]
    rows += [[i + 1, _fmt(v), _fmt(s)] for i, (v, s) in enumerate(zip(spec.eigenvalues, sums))]
    _emit(args.format, payload, text, rows, out)
    return 0


# -------------------------------------------------------------------- check

_CONCLUSIONS = {
    "vanishing": "harmonic {p}-forms vanish; on a closed manifold b_{p} = b_{q} = 0",
    "parallel-only": "harmonic {p}-forms are parallel",
    "fails": "the weighted condition does not hold; no conclusion is drawn",
}


def _check_inputs(obj, args):
    """Return (curvature, weight) from a check document."""
    if not isinstance(obj, dict):
        raise SchemaError("$", "expected an object")
    if "curvature" not in obj:
        # bare tensor: f = 0
        return _curvature(obj), None, None
    R = _curvature(obj["curvature"], "$.curvature")
    hess = None
    if obj.get("hess_f") is not None:
        hess = jsonio.symform_from_json(obj["hess_f"], "$.hess_f")
        if hess.shape[0] != R.n:
            raise SchemaError("$.hess_f", f"dimension {hess.shape[0]} does not match curvature dimension {R.n}")
    mu = None
    if obj.get("mu") is not None:
        if not isinstance(obj["mu"], list):
            raise SchemaError("$.mu", "expected an array")
        mu = [jsonio._number(x, f"$.mu[{i}]") for i, x in enumerate(obj["mu"])]
        if len(mu) != R.n:
            raise SchemaError("$.mu", f"expected {R.n} eigenvalues, got {len(mu)}")
        if any(b < a for a, b in zip(mu, mu[1:])):
            raise SchemaError("$.mu", "eigenvalues must be sorted ascending")
    lap = obj.get("laplacian_f")
    if lap is not None:
        lap = jsonio._number(lap, "$.laplacian_f")
    return R, hess, (mu, lap)


def _run_check(R, hess, extra, args):
    mu, lap = extra if extra else (None, None)
    if args.laplacian != "auto":
        try:
            lap = float(args.laplacian)
        except ValueError:
            raise SchemaError("--laplacian", f"expected 'auto' or a number, got {args.laplacian!r}") from None
    route = args.route
    if route == "auto":
        route = "proposition" if mu is not None else "theorem"
    if hess is None and mu is None:
        hess = np.zeros((R.n, R.n))
    if route == "proposition":
        if mu is None:
            mu = mu_list(hess)
        return check_vanishing(R, np.asarray(mu), args.p, strict=args.strict, tol=args.tol)
    if hess is None:
        raise SchemaError("$.hess_f", "the theorem route needs a Hessian")
    if lap is not None:
        tr = float(np.trace(hess))
        if abs(lap - tr) > LAPLACIAN_RTOL * max(abs(tr), abs(lap)):
            raise SchemaError("laplacian_f", f"{lap!r} disagrees with tr(hess_f) = {tr!r}")
    ws = WeightSpec(hess, args.p, laplacian_f=lap, rtol=LAPLACIAN_RTOL)
    return check_vanishing(R, ws, args.p, strict=args.strict, tol=args.tol)


def _report_check(rep, n, args, out):
    payload = rep.to_dict()
    conclusion = _CONCLUSIONS[rep.verdict].format(p=rep.p, q=n - rep.p)
    text = [
        f"p: {rep.p}",
        f"l = n - p: {rep.l}",
        f"weight route: {rep.weight_route}",
        f"partial sum: {rep.partial_sum:.12g} (tolerance {rep.tolerance:g})",
        f"verdict: {rep.verdict}",
        conclusion,
    ]
    rows = [list(payload), [payload[k] for k in payload]]
    _emit(args.format, payload, text, rows, out)
    return 0 if rep.holds else 1


def cmd_check(args, out):
    R, hess, extra = _check_inputs(_read_json(args.input), args)
    return _report_check(_run_check(R, hess, extra, args), R.n, args, out)


# ------------------------------------------------------------------- verify

def _dims(text):
    try:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo < 3 or hi < lo:
        raise argparse.ArgumentTypeError(f"need 3 <= A <= B, got {text!r}")
    return range(lo, hi + 1)


def cmd_verify(args, out):
    report = run_suite(trials=args.trials, seed=args.seed, dims=args.dims, tol=args.tol, jobs=args.jobs)
    payload = report.to_dict(timing=args.timing)
    text = [f"seed {report.seed}, dims {report.dims[0]}..{report.dims[-1]}"]
    for r in report.results:
        mark = "PASS" if r.passed else "FAIL"
        line = f"{mark}  {r.name:28s} trials={r.trials:5d}  max residual {r.max_residual:.3e}  tol {r.tolerance:.0e}"
        if args.timing:
            line += f"  {r.wall_time:.2f}s"
        text.append(line)
    text.append("suite passed" if report.passed else "suite FAILED")
    header = ["name", "trials", "max_residual", "tolerance", "passed"] + (["wall_time"] if args.timing else [])
    rows = [header] + [[r.to_dict(args.timing)[k] for k in header] for r in report.results]
    _emit(args.format, payload, text, rows, out)
    return 0 if report.passed else 1


# ------------------------------------------------------------------ gallery

def cmd_gallery(args, out):
    ex = gallery(args.name, args.n, seed=args.seed)
    if args.check:
        if args.p is None:
            raise SchemaError("--p", "required with --check")
        return _report_check(_run_check(ex.curvature, ex.hess_f, None, args), ex.n, args, out)
    payload = {
        "name": ex.name,
        "description": ex.description,
        "curvature": jsonio.tensor_to_json(ex.curvature.tensor),
        "hess_f": jsonio.tensor_to_json(ex.hess_f),
    }
    text = [f"{ex.name} (n = {ex.n}): {ex.description}"]
    rows = [["field", "index", "value"]]
    rows += [["curvature", " ".join(map(str, i)), _fmt(v)] for i, v in np.ndenumerate(ex.curvature.tensor)]
    rows += [["hess_f", " ".join(map(str, i)), _fmt(v)] for i, v in np.ndenumerate(ex.hess_f)]
    _emit(args.format, payload, text, rows, out)
    return 0


def _add_check_flags(p, required):
    p.add_argument("--p", type=int, required=required, help="form degree")
    p.add_argument("--strict", action="store_true", help="require the vanishing conclusion")
    p.add_argument("--tol", type=float, default=_default_tol())
    p.add_argument("--laplacian", default="auto", help="'auto' (trace of Hessian) or a value")
    p.add_argument("--route", choices=["auto", "theorem", "proposition"], default="auto")


def build_parser():
    parser = _Parser(prog="curvlab", description=__doc__.splitlines()[0])
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=["json", "csv", "text"], default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[fmt], help="scalar / Ricci / Weyl split")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("spectrum", parents=[fmt], help="curvature operator eigenvalues")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--l", type=int, help="also report l-nonnegativity")
    p.add_argument("--tol", type=float, default=_default_tol())
    p.add_argument("--vectors", action="store_true", help="include eigenvectors")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("check", parents=[fmt], help="weighted vanishing condition")
    p.add_argument("input", nargs="?", default="-")
    _add_check_flags(p, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[fmt], help="run the property suite")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--dims", type=_dims, default=range(3, 7))
    p.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="report wall time (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gallery", parents=[fmt], help="named example geometries")
    p.add_argument("name", choices=sorted(EXAMPLES))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="store_true", help="run check on the example")
    _add_check_flags(p, required=False)
    p.set_defaults(func=cmd_gallery)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except MiddleDegree as exc:
        print(f"curvlab {args.command}: MiddleDegree: {exc} (--route proposition)", file=sys.stderr)
        return 2
    except CurvlabError as exc:
        print(f"curvlab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"curvlab {args.command}: input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
