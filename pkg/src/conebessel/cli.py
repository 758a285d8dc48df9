"""Command-line interface: ``cone-bessel`` / ``python -m conebessel``.

Results go to stdout as JSON (or CSV for tables), logs go to stderr.
Exit codes: 0 success, 1 failed verification, 2 bad arguments,
3 mathematical domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys

import numpy as np

from . import __version__
from .errors import MathDomainError
from .jordan import Algebra, Element, get_algebra

log = logging.getLogger("conebessel")

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_DOMAIN = 0, 1, 2, 3


class ArgError(ValueError):
    """Malformed command-line input (exit code 2)."""


# --------------------------------------------------------------------------
# argument parsing helpers

def parse_complex(text: str) -> complex:
    s = str(text).strip().replace(" ", "").replace("i", "j")
    if s in ("j", "+j"):
        return 1j
    if s == "-j":
        return -1j
    try:
        return complex(s)
    except ValueError:
        raise ArgError(f"cannot parse {text!r} as a number") from None


def _scalar(value: complex):
    value = complex(value)
    return value.real if value.imag == 0 else value


def parse_element(alg: Algebra, text: str | None) -> Element:
    """An element from the command line.

    Accepted forms: ``zero``, ``unit``, ``diag:a,b,...`` (frame
    coordinates), a JSON element object, a JSON list of coordinates (numbers
    or complex strings), or a bare number for V = R.
    """
    if text is None:
        raise ArgError("an element argument is required")
    s = text.strip()
    if s == "zero":
        return alg.zero()
    if s == "unit":
        return alg.unit()
    if s.startswith("diag:"):
        vals = [parse_complex(v) for v in s[5:].split(",") if v]
        if len(vals) != alg.r:
            raise ArgError(f"diag needs {alg.r} values for {alg.name}")
        return alg.diag(np.array([_scalar(v) for v in vals]))
    if s.startswith("{"):
        try:
            el = Element.from_json(json.loads(s))
        except (ValueError, KeyError, TypeError) as exc:
            raise ArgError(f"bad element JSON: {exc}") from None
        if el.algebra != alg:
            raise ArgError(f"element belongs to {el.algebra.name}, not {alg.name}")
        return el
    if s.startswith("["):
        try:
            raw = json.loads(s)
        except ValueError as exc:
            raise ArgError(f"bad coordinate list: {exc}") from None
        vals = [parse_complex(v) if isinstance(v, str) else complex(v) for v in raw]
        if len(vals) != alg.n:
            raise ArgError(f"{alg.name} needs {alg.n} coordinates, got {len(vals)}")
        arr = np.array(vals)
        return alg.element(arr.real if not np.any(arr.imag) else arr)
    if alg.r != 1:
        raise ArgError(f"a bare number is only an element of V = R, not {alg.name}")
    return alg.element([_scalar(parse_complex(s))])


def parse_algebra(name: str) -> Algebra:
    try:
        return get_algebra(name)
    except ValueError as exc:
        raise ArgError(str(exc)) from None


def parse_grid(text: str, width: int) -> np.ndarray:
    """``a:b:n`` (linspace) or a JSON list of numbers / of ``width``-vectors."""
    s = text.strip()
    if s.count(":") == 2 and not s.startswith("["):
        try:
            a, b, n = s.split(":")
            n = int(n)
            if n < 1:
                raise ValueError
            pts = np.linspace(float(a), float(b), n)
        except ValueError:
            raise ArgError(f"malformed grid {text!r}; expected start:stop:count") from None
        return np.repeat(pts[:, None], width, axis=1) if width > 1 else pts[:, None]
    try:
        arr = np.asarray(json.loads(s), dtype=float)
    except (ValueError, TypeError):
        raise ArgError(f"malformed grid {text!r}") from None
    if arr.ndim == 1:
        arr = arr[:, None] if width == 1 else arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != width or arr.size == 0:
        raise ArgError(f"grid points must have {width} components")
    return arr


def cnum(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _clean(obj):
    """Make numpy and complex values JSON-serializable."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return cnum(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    return obj


def emit(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(_clean(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def emit_csv(header, rows, path: str | None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    if path in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        log.info("wrote %d rows to %s", len(rows), path)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def config_of(args: argparse.Namespace) -> dict:
    """The resolved run configuration, echoed in every JSON result."""
    skip = {"func", "verbose", "config"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    cfg["schema"] = SCHEMA
    cfg["version"] = __version__
    return _clean(cfg)


def workers_of(args) -> int | None:
    n = getattr(args, "threads", None)
    if n is not None:
        if n < 1:
            raise ArgError("--threads must be positive")
        return n
    env = os.environ.get("CONE_BESSEL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ArgError("CONE_BESSEL_THREADS must be an integer") from None
    return None


# --------------------------------------------------------------------------
# commands

def _bessel_params(args):
    from .bessel import BesselParams

    alg = parse_algebra(args.algebra)
    lam = _scalar(parse_complex(args.lam))
    params = BesselParams(alg, lam, args.k, args.kind)
    params.resolved_k()  # raises ParameterOutOfRange early
    return alg, params


def _mc(args):
    from .bessel import MCSpec

    try:
        return MCSpec(samples=args.samples, seed=args.seed, sampler=args.sampler, replicates=args.replicates)
    except ValueError as exc:
        raise ArgError(str(exc)) from None


def cmd_eval_bessel(args) -> int:
    """I_lambda(x^2) (or J_lambda(x^2)) by the series, the integral, or both."""
    from .bessel import bessel_integral, bessel_series
    from .jordan import jordan_product

    alg, params = _bessel_params(args)
    if args.z is not None:
        if args.method != "series":
            raise ArgError("--z (direct series argument) needs --method series")
        z, x = parse_element(alg, args.z), None
    else:
        x = parse_element(alg, args.x)
        z = jordan_product(x, x)
    out = {"config": config_of(args), "schema": SCHEMA}
    if args.method in ("series", "both"):
        res = bessel_series(params, z, args.max_weight)
        out["series"] = res.to_json()
    if args.method in ("integral", "both"):
        res_i = bessel_integral(params, x, _mc(args), workers_of(args))
        out["integral"] = res_i.to_json()
    if args.method == "both":
        diff = abs(res.value - res_i.value)
        out["abs_difference"] = diff
        out["within_3_sigma"] = bool(diff <= 3 * res_i.error + res.error)
    main = out.get("series") or out["integral"]
    out.update({"value": main["value"], "error": main["error"], "meta": main["meta"]})
    emit(out)
    return EXIT_OK


def cmd_eval_kernel(args) -> int:
    from .semigroup import KernelParams, kernel_K

    alg = parse_algebra(args.algebra)
    params = KernelParams(alg, float(args.lam), complex(args.t_re, args.t_im))
    x, y = parse_element(alg, args.x), parse_element(alg, args.y)
    res = kernel_K(params, x, y)
    emit({"config": config_of(args), **res.to_json()})
    return EXIT_OK


def cmd_bessel_check_bound(args) -> int:
    from .bessel import upper_bound_check

    _, params = _bessel_params(args)
    rep = upper_bound_check(params, args.samples, np.random.default_rng(args.seed), args.l1_max)
    emit({"config": config_of(args), "schema": SCHEMA, "report": rep})
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def _profile(name: str):
    from .semigroup import RadialFunction

    if name == "exp":
        return RadialFunction.exp_trace()
    if name == "gaussian":
        return RadialFunction.gaussian()
    if name == "exp-poly":
        return RadialFunction(lambda s: (1 + s.sum(axis=1)) * np.exp(-s.sum(axis=1)),
                              ("exponential", -0.99), "(1+tr y)exp(-tr y)")
    raise ArgError(f"unknown profile {name!r}")


def cmd_semigroup_compose(args) -> int:
    from .semigroup import KernelParams, semigroup_check

    alg = parse_algebra(args.algebra)
    params = KernelParams(alg, float(args.lam), complex(args.t_re, args.t_im))
    grid = parse_grid(args.grid, alg.r)
    if np.any(grid < 0):
        raise ArgError("grid points are eigenvalue vectors of cone elements (nonnegative)")
    rep = semigroup_check(params, complex(args.s_re, args.s_im), _profile(args.profile), grid,
                          args.inner_level, args.outer_level)
    rep["passed"] = rep["discrepancy"] <= args.tol
    emit({"config": config_of(args), "schema": SCHEMA, "report": rep})
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_semigroup_bound(args) -> int:
    from .semigroup import KernelParams, kernel_bound_check

    alg = parse_algebra(args.algebra)
    params = KernelParams(alg, float(args.lam), complex(args.t_re, args.t_im))
    rows = [] if args.csv else None
    rep = kernel_bound_check(params, args.k, args.samples, np.random.default_rng(args.seed),
                             args.tr_max, csv_rows=rows)
    if rows is not None:
        emit_csv(["tr_x", "tr_y", "abs_K", "bound"], rows, args.csv)
    emit({"config": config_of(args), "schema": SCHEMA, "report": rep})
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_verify(args) -> int:
    from .verify import ALGEBRAS, run_suite

    algebras = tuple(args.algebra) if args.algebra else ALGEBRAS
    for a in algebras:
        if a not in ALGEBRAS:
            raise ArgError(f"verify supports {', '.join(ALGEBRAS)}; got {a!r}")
    rep = run_suite(args.suite, args.quick, algebras, args.seed)
    for rec in rep["checks"]:
        log.info("%s %s metric=%s", "PASS" if rec["passed"] else "FAIL", rec["name"], rec["metric"])
    emit({"config": config_of(args), **rep})
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def _lambdas(text: str) -> list:
    try:
        return [_scalar(parse_complex(v)) for v in text.split(",") if v.strip()]
    except ArgError:
        raise ArgError(f"malformed lambda list {text!r}") from None


def cmd_tabulate(args) -> int:
    """CSV tables for plotting: Bessel values, kernel decay, bound ratios."""
    from .bessel import BesselParams, bessel_series_many, upper_bound_check
    from .semigroup import KernelParams, kernel_K_eigs

    alg = parse_algebra(args.algebra)
    if args.what == "bessel":
        grid = parse_grid(args.grid, alg.r)
        rows = []
        for lam in _lambdas(args.lam):
            params = BesselParams(alg, lam, kind=args.kind)
            coords = grid.astype(complex) @ np.array([c.coords for c in alg.frame()], dtype=complex)
            vals, errs, _ = bessel_series_many(params, coords, args.max_weight)
            for g, v, e in zip(grid, vals, errs):
                rows.append([complex(lam).real, complex(lam).imag, *g, v.real, v.imag, e])
        head = ["lambda_re", "lambda_im", *[f"x{j + 1}" for j in range(alg.r)], "re", "im", "error"]
        emit_csv(head, rows, args.out)
    elif args.what == "kernel-decay":
        s = parse_grid(args.grid, 1)[:, 0]
        if np.any(s < 0):
            raise ArgError("kernel-decay grid must be nonnegative")
        params = KernelParams(alg, complex(_lambdas(args.lam)[0]).real, complex(args.t_re, args.t_im))
        tr = s * alg.r
        # x = y = s e: P(x^{1/2}) y = s^2 e
        eig = np.repeat((s ** 2)[:, None], alg.r, axis=1)
        vals, errs, _ = kernel_K_eigs(params, tr, tr, eig)
        rows = [[a, abs(v), v.real, v.imag, e] for a, v, e in zip(s, vals, errs)]
        emit_csv(["s", "abs_K", "re", "im", "error"], rows, args.out)
    else:  # bound-ratio
        lam = _lambdas(args.lam)[0]
        params = BesselParams(alg, lam, args.k, args.kind)
        params.resolved_k()
        rows = []
        rep = upper_bound_check(params, args.samples, np.random.default_rng(args.seed), csv_rows=rows)
        rows = [list(r) + [rep["C_star"]] for r in rows]
        emit_csv(["set", "l1_norm", "abs_I", "envelope", "ratio", "C_star"], rows, args.out)
        log.info("C* = %.6g, validation max = %.6g, violations = %d",
                 rep["C_star"], rep["validation_max"], rep["violations"])
    return EXIT_OK


def cmd_tabulate_poch(args) -> int:
    """Generalized Pochhammer symbols (lambda)_m for |m| <= max weight."""
    from .spherical import partitions_upto, poch_general

    alg = parse_algebra(args.algebra)
    rows = []
    for lam in _lambdas(args.lam):
        for m in partitions_upto(alg.r, args.max_weight):
            v = complex(poch_general(lam, m.padded(alg.r), alg.d))
            rows.append([complex(lam).real, complex(lam).imag, " ".join(map(str, m.padded(alg.r))), v.real, v.imag])
    emit_csv(["lambda_re", "lambda_im", "m", "re", "im"], rows, args.out)
    return EXIT_OK


def cmd_tabulate_gamma(args) -> int:
    """Gindikin gamma Gamma_Omega(s) on a real grid (optionally its log)."""
    from .spherical import gindikin_gamma_log

    alg = parse_algebra(args.algebra)
    rows = []
    for s in parse_grid(args.grid, 1)[:, 0]:
        lg = complex(gindikin_gamma_log(s + 1j * args.s_im, alg))
        v = lg if args.log else complex(np.exp(lg))
        rows.append([s, args.s_im, v.real, v.imag])
    emit_csv(["s_re", "s_im", "log_re" if args.log else "re", "log_im" if args.log else "im"], rows, args.out)
    return EXIT_OK


def cmd_sample_domain(args) -> int:
    """Accepted points of D from the Monte-Carlo sampler, with a summary."""
    from .bessel import domain_volume, region_volume, sample_D

    alg = parse_algebra(args.algebra)
    mc = _mc(args)
    rows, accepted = [], 0
    for pts, _ in sample_D(alg, mc):
        accepted += len(pts)
        if args.out and len(rows) < args.max_rows:
            for w in pts[: args.max_rows - len(rows)]:
                rows.append([*w.real, *w.imag])
    total = mc.per_replicate * mc.replicates
    vol = domain_volume(alg, mc)
    if args.out:
        head = [f"re{j}" for j in range(alg.n)] + [f"im{j}" for j in range(alg.n)]
        emit_csv(head, rows, args.out)
    p = accepted / total
    emit({
        "config": config_of(args),
        "schema": SCHEMA,
        "algebra": alg.name,
        "draws": total,
        "accepted": accepted,
        "acceptance": p,
        "acceptance_se": math.sqrt(p * (1 - p) / total),
        "region_volume": region_volume(alg, mc.sampler),
        "volume_D": vol.to_json(),
        "rows_written": len(rows),
    })
    return EXIT_OK


def cmd_rerun(args) -> int:
    """Re-execute a run from the configuration echoed in its JSON output."""
    try:
        with open(args.config, encoding="utf-8") as fh:
            obj = json.load(fh)
        argv = (obj.get("config", obj))["argv"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ArgError(f"cannot read an echoed config from {args.config}: {exc}") from None
    if argv and argv[0] == "rerun":
        raise ArgError("refusing to rerun a rerun")
    return main(list(argv))


# --------------------------------------------------------------------------
# parser

def _common(p):
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                   help="worker pool size (default: CONE_BESSEL_THREADS or all cores)")
    p.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS, help="log to stderr")


def _lambda_arg(p, required=True, many=False):
    p.add_argument("--lambda", dest="lam", required=required,
                   help="comma-separated list of lambda values" if many else "lambda (complex allowed: 2+0.5i)")


def _bessel_args(p):
    p.add_argument("--algebra", default="r", help="r, symrN, hermcN or spinN (default r)")
    _lambda_arg(p)
    p.add_argument("--k", type=int, default=None, help="regularization order (default: smallest admissible)")
    p.add_argument("--kind", choices=("I", "J"), default="I")


def _mc_args(p, samples):
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sampler", default="sobol-ball",
                   choices=("sobol-ball", "sobol-box", "random-ball", "random-box"))
    p.add_argument("--replicates", type=int, default=16)


def _kernel_args(p):
    p.add_argument("--algebra", default="r")
    _lambda_arg(p)
    p.add_argument("--t-re", type=float, required=True)
    p.add_argument("--t-im", type=float, default=0.0)


def _add_eval_bessel(sub, name):
    p = sub.add_parser(name, help="I_lambda(x^2) by series and/or integral")
    _common(p)
    _bessel_args(p)
    p.add_argument("--x", default="zero", help="x (the value is I_lambda(x^2)); see README for formats")
    p.add_argument("--z", default=None, help="direct series argument z (value I_lambda(z))")
    p.add_argument("--method", choices=("series", "integral", "both"), default="series")
    p.add_argument("--max-weight", type=int, default=None)
    _mc_args(p, 2 ** 20)
    p.set_defaults(func=cmd_eval_bessel)


def _add_kernel(sub, name):
    p = sub.add_parser(name, help="the semigroup kernel K_lambda(x, y; t)")
    _common(p)
    _kernel_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_eval_kernel)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cone-bessel", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a Bessel function or the kernel").add_subparsers(
        dest="target", required=True)
    _add_eval_bessel(ev, "bessel")
    _add_kernel(ev, "kernel")

    bs = sub.add_parser("bessel", help="Bessel functions").add_subparsers(dest="action", required=True)
    _add_eval_bessel(bs, "eval")
    p = bs.add_parser("check-bound", help="calibrate and validate the growth estimate")
    _common(p)
    _bessel_args(p)
    p.add_argument("--samples", type=int, default=10000, help="calibration and validation sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--l1-max", type=float, default=20.0)
    p.set_defaults(func=cmd_bessel_check_bound)

    sg = sub.add_parser("semigroup", help="the holomorphic semigroup").add_subparsers(dest="action", required=True)
    _add_kernel(sg, "kernel")
    p = sg.add_parser("compose-check", help="tau(s) tau(t) phi against tau(s+t) phi")
    _common(p)
    _kernel_args(p)
    p.add_argument("--s-re", type=float, required=True)
    p.add_argument("--s-im", type=float, default=0.0)
    p.add_argument("--profile", choices=("exp", "gaussian", "exp-poly"), default="exp")
    p.add_argument("--grid", default="0.2:2.5:3", help="eigenvalue vectors: a:b:n or JSON list")
    p.add_argument("--inner-level", type=int, default=None)
    p.add_argument("--outer-level", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_semigroup_compose)
    p = sg.add_parser("bound-check", help="calibrate and validate the kernel estimate")
    _common(p)
    _kernel_args(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tr-max", type=float, default=50.0)
    p.add_argument("--csv", default=None, help="write (tr x, tr y, |K|, bound) rows here")
    p.set_defaults(func=cmd_semigroup_bound)

    p = sub.add_parser("verify", help="run an invariant suite")
    _common(p)
    p.add_argument("suite", choices=("core", "spherical", "bessel", "semigroup", "all"))
    p.add_argument("--quick", action="store_true")
    p.add_argument("--algebra", action="append", help="restrict to an algebra (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tabulate", help="CSV tables for plotting")
    _common(p)
    p.add_argument("what", choices=("bessel", "kernel-decay", "bound-ratio"))
    p.add_argument("--algebra", default="r")
    _lambda_arg(p, many=True)
    p.add_argument("--grid", default="0:4:41", help="a:b:n or JSON list")
    p.add_argument("--kind", choices=("I", "J"), default="I")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--t-re", type=float, default=0.5)
    p.add_argument("--t-im", type=float, default=0.0)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("tabulate-poch", help="generalized Pochhammer symbols as CSV")
    _common(p)
    p.add_argument("--algebra", default="r")
    _lambda_arg(p, many=True)
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tabulate_poch)

    p = sub.add_parser("tabulate-gamma", help="Gindikin gamma function as CSV")
    _common(p)
    p.add_argument("--algebra", default="r")
    p.add_argument("--grid", default="1:5:9")
    p.add_argument("--s-im", type=float, default=0.0)
    p.add_argument("--log", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tabulate_gamma)

    p = sub.add_parser("sample-domain", help="Monte-Carlo points of the bounded domain D")
    _common(p)
    p.add_argument("--algebra", default="r")
    _mc_args(p, 2 ** 16)
    p.add_argument("--out", default=None, help="CSV file for the accepted points")
    p.add_argument("--max-rows", type=int, default=100000)
    p.set_defaults(func=cmd_sample_domain)

    p = sub.add_parser("rerun", help="re-execute a run from its echoed config")
    p.add_argument("config", help="a JSON result (or its config object) written by cone-bessel")
    p.set_defaults(func=cmd_rerun)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    level = logging.WARNING - 10 * min(int(getattr(args, "verbose", 0) or 0), 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ArgError as exc:
        print(f"cone-bessel: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except MathDomainError as exc:
        print(f"cone-bessel: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
