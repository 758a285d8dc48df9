"""The holomorphic semigroup tau_lambda(t) on the symmetric cone.

    tau(t) phi(x) = 1/Gamma_Omega(lam) int_Omega phi(y) sinh(t)^{-r lam} K(x, y; t)
                    Delta(y)^{lam - n/r} dy,
    K(x, y; t)    = exp(-coth t (tr x + tr y)) I_lam(sinh(t)^{-2} P(x^{1/2}) y).

For K_L-invariant phi the K_L-average of the kernel factorizes through the
spherical functions, so that in eigenvalue coordinates

    avg_k I_lam(u P(x^{1/2}) k y) = sum_m u^{|m|} C_m(x) C_m(y) / (|m|! (lam)_m C_m(e)).

The y-integral is then a set of moments against C_m, computed once per
quadrature rule and reused at every evaluation point.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.special as sc

from .bessel import EvalResult, series_from_eigs
from .errors import (
    AlgebraMismatch,
    GrowthIncompatible,
    NotInCone,
    ParameterOutOfRange,
    QuadratureNotConverged,
    UnsupportedAlgebra,
)
from .jordan import Algebra, Element, coords_eigenvalues, sandwich, spectral, trace
from .quadrature import MAX_NODES, ConeQuadrature
from .spherical import gindikin_gamma_log, graded_C, log_jack_C_at_ones, poch_log

SINH_MIN = 1e-8
SERIES_TOL = 1e-17
PRUNE_LOG = 60.0


@dataclass(frozen=True)
class KernelParams:
    """lam > n/r - 1 and t = u + iv with u >= 0, sinh t away from zero."""

    algebra: Algebra
    lam: float
    t: complex

    def __post_init__(self):
        t = complex(self.t)
        object.__setattr__(self, "t", t)
        if not self.lam > self.algebra.n_over_r - 1:
            raise ParameterOutOfRange(f"lambda must exceed n/r - 1 = {self.algebra.n_over_r - 1}")
        if t.real < 0:
            raise ParameterOutOfRange("Re t must be >= 0")
        if abs(cmath.sinh(t)) <= SINH_MIN:
            raise ParameterOutOfRange("t is too close to pi*i*Z")

    @property
    def u(self) -> float:
        return self.t.real

    @property
    def v(self) -> float:
        return self.t.imag

    @property
    def coth(self) -> complex:
        return 1 / cmath.tanh(self.t)

    @property
    def inv_sinh2(self) -> complex:
        return 1 / cmath.sinh(self.t) ** 2

    def at(self, t: complex) -> "KernelParams":
        return KernelParams(self.algebra, self.lam, t)


@dataclass(frozen=True)
class RadialFunction:
    """A K_L-invariant function given on eigenvalue vectors.

    ``fn`` maps an (N, r) array of eigenvalues to N values.  ``growth`` is
    ``("bounded",)``, ``("polynomial", p)`` or ``("exponential", a)``
    meaning |phi(y)| <= C e^{a tr y}; a < 0 is decay.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    growth: tuple = ("bounded",)
    name: str = "phi"

    def __call__(self, eigs: np.ndarray) -> np.ndarray:
        return np.asarray(self.fn(np.atleast_2d(eigs)), dtype=complex)

    @property
    def rate(self) -> float:
        return float(self.growth[1]) if self.growth[0] == "exponential" else 0.0

    @staticmethod
    def exp_trace(a: float = 1.0) -> "RadialFunction":
        return RadialFunction(lambda s: np.exp(-a * s.sum(axis=1)), ("exponential", -a), f"exp(-{a} tr)")

    @staticmethod
    def gaussian() -> "RadialFunction":
        return RadialFunction(lambda s: np.exp(-(s ** 2).sum(axis=1)), ("exponential", -1.0), "exp(-tr y^2)")

    @staticmethod
    def constant(c: complex = 1.0) -> "RadialFunction":
        return RadialFunction(lambda s: np.full(s.shape[0], c, dtype=complex), ("bounded",), f"{c}")


def exp_trace_image(params: KernelParams, a: float, tr_x):
    """Closed form of tau(t) e^{-a tr}: a Laplace-transform computation.

    (cosh t + a sinh t)^{-r lam} exp(-tr x (sinh t + a cosh t)/(cosh t + a sinh t)).
    """
    t = params.t
    ch, sh = cmath.cosh(t), cmath.sinh(t)
    den = ch + a * sh
    r = params.algebra.r
    return np.exp(-r * params.lam * np.log(den + 0j) - np.asarray(tr_x) * (sh + a * ch) / den)


# --------------------------------------------------------------------------
# the kernel

def _cone_eigs(x: Element) -> np.ndarray:
    if not x.is_real:
        raise NotInCone("cone arguments must be real")
    vals = spectral(x).values
    if np.min(vals) < -1e-12 * max(1.0, np.max(np.abs(vals))):
        raise NotInCone("argument is not in the closed cone")
    return vals


def kernel_K(params: KernelParams, x: Element, y: Element) -> EvalResult:
    """K_lam(x, y; t) through the spherical series of the sandwich argument."""
    alg = params.algebra
    if x.algebra != alg or y.algebra != alg:
        raise AlgebraMismatch("kernel arguments must lie in the parameter algebra")
    _cone_eigs(x)
    _cone_eigs(y)
    z = sandwich(x, y)
    mu = coords_eigenvalues(alg, np.asarray(z.coords, dtype=complex)[None]) * params.inv_sinh2
    vals, errs, meta = series_from_eigs(alg, params.lam, mu, alg.r)
    pref = np.exp(-params.coth * complex(trace(x) + trace(y)))
    meta.update({"method": "series", "t": [params.t.real, params.t.imag]})
    return EvalResult(complex(vals[0] * pref), float(errs[0] * abs(pref)), meta)


def kernel_K_eigs(params: KernelParams, tr_x: np.ndarray, tr_y: np.ndarray,
                  sandwich_eigs: np.ndarray):
    """Vectorized K from traces and eigenvalues of P(x^{1/2}) y."""
    mu = np.asarray(sandwich_eigs, dtype=complex) * params.inv_sinh2
    vals, errs, meta = series_from_eigs(params.algebra, params.lam, mu, params.algebra.r)
    pref = np.exp(-params.coth * (np.asarray(tr_x) + np.asarray(tr_y)))
    return vals * pref, errs * np.abs(pref), meta


def sandwich_eigs(alg: Algebra, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Eigenvalues of P(x^{1/2}) y for stacks of real coordinates."""
    out = np.empty((len(X), alg.r))
    for i, (cx, cy) in enumerate(zip(X, Y)):
        z = sandwich(Element(alg, cx), Element(alg, cy))
        out[i] = np.sort(spectral(z).values)[::-1]
    return out


# --------------------------------------------------------------------------
# radial reduction

class _RadialCoeffs:
    """Per-degree partitions and log(1/(|m|! (lam)_m C_m(e)))."""

    def __init__(self, alg: Algebra, lam: float):
        self.alg, self.lam = alg, lam
        self._cache: dict[int, tuple] = {}

    def __call__(self, k: int):
        if k not in self._cache:
            alg = self.alg
            parts, _ = graded_C(alg.r, alg.d, np.ones((1, alg.r), dtype=complex), k)
            logc = np.array([-math.lgamma(k + 1) - poch_log(self.lam, m.padded(alg.r), alg.d).real
                             - log_jack_C_at_ones(m, alg.r, alg.d) for m in parts])
            self._cache[k] = (parts, logc)
        return self._cache[k]


def _safe_log(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore"):
        return np.where(z != 0, np.log(np.where(z != 0, z, 1.0)), -np.inf)


def _relevant(absw: np.ndarray, tr_nodes: np.ndarray, u: complex, tr_points: np.ndarray) -> np.ndarray:
    """Nodes whose weight matters, against the growth exp(2 sqrt(|u| tr x tr s)) of B,
    for at least one trace on a geometric ladder covering the evaluation points."""
    pos = tr_points[tr_points > 0]
    ladder = [0.0]
    if pos.size:
        ladder += list(np.geomspace(pos.min(), pos.max(), 24))
    keep = np.zeros(len(absw), dtype=bool)
    with np.errstate(divide="ignore"):
        base = np.log(absw)
    fin = np.isfinite(base)
    for x in ladder:
        lg = base + 2 * np.sqrt(abs(u) * x * tr_nodes)
        if np.any(fin):
            keep |= fin & (lg >= np.max(lg[fin]) - PRUNE_LOG)
    return keep


def radial_apply(alg: Algebra, lam: float, u: complex, nodes: np.ndarray, g: np.ndarray,
                 points: np.ndarray, coeffs: _RadialCoeffs | None = None, cap: int = 3000):
    """sum_i g_i B(x_j, s_i) for B(x, s) = sum_m u^{|m|} C_m(x) C_m(s)/(|m|! (lam)_m C_m(e)).

    Parameters
    ----------
    nodes : (N, r) nonnegative eigenvalues s_i
    g : (N,) complex weights
    points : (M, r) nonnegative eigenvalues x_j

    Returns
    -------
    values (M,), truncation estimate (M,), degrees used
    """
    coeffs = coeffs or _RadialCoeffs(alg, lam)
    nodes = np.asarray(nodes, dtype=float)
    points = np.atleast_2d(np.asarray(points, dtype=float))
    g = np.asarray(g, dtype=complex)
    xi = np.max(points, axis=1)
    M = len(points)
    keep = _relevant(np.abs(g), nodes.sum(axis=1), u, points.sum(axis=1))
    nodes, g = nodes[keep], g[keep]
    sig = float(np.max(nodes)) if nodes.size else 0.0
    total = np.full(M, complex(np.sum(g)))
    absum = np.full(M, float(np.sum(np.abs(g))))
    if sig == 0 or not np.any(xi > 0):
        return total, np.zeros(M), 0
    sn = nodes / sig
    pos = xi > 0
    xn = points / np.where(pos, xi, 1.0)[:, None]
    logu = cmath.log(u)
    logscale = np.where(pos, np.log(np.where(pos, xi, 1.0)), -np.inf) + math.log(sig)
    prev = np.inf
    last = np.zeros(M)
    k_used = 0
    for k in range(1, cap + 1):
        parts, logc = coeffs(k)
        _, Cs = graded_C(alg.r, alg.d, sn.astype(complex), k)
        _, Cx = graded_C(alg.r, alg.d, xn.astype(complex), k)
        mom = g @ Cs
        amom = np.abs(g) @ np.abs(Cs)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            lw = k * (logu + logscale[:, None]) + logc[None, :]
            term = Cx * np.exp(lw + _safe_log(mom)[None, :])
            aterm = np.abs(Cx) * np.exp(lw.real + _safe_log(amom).real[None, :])
        term[~pos] = 0
        aterm[~pos] = 0
        total += term.sum(axis=1)
        contrib = aterm.sum(axis=1)
        absum += contrib
        k_used = k
        worst = float(np.max(contrib / np.maximum(absum, 1e-300)))
        last = contrib
        if k >= 4 and worst <= SERIES_TOL and worst <= prev:
            break
        prev = worst
    else:
        raise QuadratureNotConverged(f"radial kernel series did not settle in {cap} degrees")
    return total, last + 16 * np.finfo(float).eps * absum * math.sqrt(k_used), k_used


def _check_growth(params: KernelParams, phi: RadialFunction) -> float:
    """Effective decay rate Re coth t - a of the integrand."""
    rate = params.coth.real - phi.rate
    if phi.growth[0] == "exponential" and phi.rate < 0:
        ok = rate > 0
    else:
        ok = params.u > 0 and rate > 0
    if not ok:
        raise GrowthIncompatible(
            f"growth {phi.growth} of {phi.name} is not integrable against the kernel at t = {params.t}")
    return rate


def default_quadrature(params: KernelParams, phi: RadialFunction, level: int | None = None) -> ConeQuadrature:
    rate = _check_growth(params, phi)
    if level is None:
        level = 5 if params.algebra.r == 1 else 3
    return ConeQuadrature(params.algebra, level, scale=1.0 / rate,
                          exponent=params.lam - params.algebra.n_over_r)


def _tau_on_rule(params: KernelParams, phi_vals: np.ndarray, points: np.ndarray, quad: ConeQuadrature,
                 coeffs=None):
    alg = params.algebra
    nr = alg.n_over_r
    lam = params.lam
    with np.errstate(divide="ignore", invalid="ignore"):
        dpow = np.where(quad.delta > 0, quad.delta ** (lam - nr), 0.0)
    g = quad.weights * phi_vals * np.exp(-params.coth * quad.trace) * dpow
    vals, err, kk = radial_apply(alg, lam, params.inv_sinh2, quad.nodes, g, points, coeffs)
    tr_x = points.sum(axis=1)
    log_pref = (-alg.r * lam * cmath.log(cmath.sinh(params.t)) - gindikin_gamma_log(lam, alg))
    pref = np.exp(log_pref - params.coth * tr_x)
    return vals * pref, err * np.abs(pref), kk


def _points(alg: Algebra, x) -> np.ndarray:
    """Eigenvalue stack from an Element, a list of Elements or an (M, r) array."""
    if isinstance(x, Element):
        if x.algebra != alg:
            raise AlgebraMismatch("point and parameters use different algebras")
        return np.sort(_cone_eigs(x))[::-1][None, :]
    if isinstance(x, (list, tuple)) and x and isinstance(x[0], Element):
        return np.concatenate([_points(alg, e) for e in x])
    pts = np.atleast_2d(np.asarray(x, dtype=float))
    if pts.shape[1] != alg.r:
        raise AlgebraMismatch(f"expected eigenvalue vectors of length {alg.r}")
    if np.any(pts < 0):
        raise NotInCone("eigenvalues must be nonnegative")
    return pts


def tau_apply(params: KernelParams, phi: RadialFunction, x, quad: ConeQuadrature | None = None,
              tol: float = 1e-10, max_level: int = 12) -> EvalResult:
    """tau_lam(t) phi at one or several cone points.

    Without an explicit rule the level is raised (step halved) until two
    successive estimates agree to ``tol`` relative; with one, that rule is
    used as is and the error is the series certificate only.
    """
    alg = params.algebra
    pts = _points(alg, x)
    coeffs = _RadialCoeffs(alg, params.lam)
    if quad is not None:
        _check_growth(params, phi)
        vals, err, kk = _tau_on_rule(params, phi(quad.nodes), pts, quad, coeffs)
        meta = {"quadrature": quad.describe(), "series_degrees": kk}
    else:
        quad = default_quadrature(params, phi)
        vals, err, kk = _tau_on_rule(params, phi(quad.nodes), pts, quad, coeffs)
        while True:
            if quad.level >= max_level or 4 * len(quad) > MAX_NODES:
                raise QuadratureNotConverged(f"no agreement to {tol} by level {quad.level}")
            finer = quad.refine()
            v2, e2, kk = _tau_on_rule(params, phi(finer.nodes), pts, finer, coeffs)
            diff = np.abs(v2 - vals)
            quad, vals = finer, v2
            if np.all(diff <= tol * np.maximum(np.abs(v2), 1e-300)):
                err = diff + e2
                break
        meta = {"quadrature": quad.describe(), "series_degrees": kk}
    meta["t"] = [params.t.real, params.t.imag]
    if isinstance(x, Element):
        return EvalResult(complex(vals[0]), float(err[0]), meta)
    return EvalResult(vals, err, meta)


# --------------------------------------------------------------------------
# composition law

def semigroup_check(params: KernelParams, s: complex, phi: RadialFunction, grid,
                    inner_level: int | None = None, outer_level: int | None = None,
                    direct_tol: float = 1e-11) -> dict:
    """Compare tau(s) tau(t) phi with tau(s + t) phi on a grid of cone points.

    ``params`` carries t.  The inner image tau(t) phi is evaluated at the
    nodes of the outer rule, so the left side is a genuine nested
    quadrature.  Returns sup |difference| / sup |tau(s+t) phi|.
    """
    alg = params.algebra
    ps = params.at(s)
    pst = params.at(params.t + complex(s))
    if ps.u <= 0 or params.u <= 0:
        raise ParameterOutOfRange("the composition check needs Re s, Re t > 0")
    pts = _points(alg, grid)
    direct = tau_apply(pst, phi, pts, tol=direct_tol)

    inner_q = default_quadrature(params, phi, inner_level)
    coeffs_t = _RadialCoeffs(alg, params.lam)
    # tau(t) phi decays at least like exp(-Re tanh t tr y) for the profiles used here
    inner_rate = float(np.real(cmath.tanh(params.t)))
    inner_fn = RadialFunction(lambda e: e, ("exponential", -inner_rate), f"tau({params.t}){phi.name}")
    outer_q = default_quadrature(ps, inner_fn, outer_level)
    nr = alg.n_over_r
    with np.errstate(divide="ignore", invalid="ignore"):
        dpow = np.where(outer_q.delta > 0, outer_q.delta ** (params.lam - nr), 0.0)
    outer_w = np.abs(outer_q.weights * np.exp(-ps.coth * outer_q.trace) * dpow)
    need = _relevant(outer_w, outer_q.trace, ps.inv_sinh2, pts.sum(axis=1))
    inner_vals = np.zeros(len(outer_q), dtype=complex)
    inner_vals[need], _, k_in = _tau_on_rule(params, phi(inner_q.nodes), outer_q.nodes[need],
                                             inner_q, coeffs_t)
    nested, _, k_out = _tau_on_rule(ps, inner_vals, pts, outer_q)
    ref = np.abs(direct.value)
    disc = float(np.max(np.abs(nested - direct.value)) / np.max(ref))
    return {
        "algebra": alg.name,
        "lambda": params.lam,
        "s": [complex(s).real, complex(s).imag],
        "t": [params.t.real, params.t.imag],
        "phi": phi.name,
        "grid_points": int(len(pts)),
        "discrepancy": disc,
        "direct_error": float(np.max(direct.error) / np.max(ref)),
        "inner_quadrature": inner_q.describe(),
        "outer_quadrature": outer_q.describe(),
        "outer_nodes_used": int(need.sum()),
        "series_degrees": [k_in, k_out],
        "above_threshold_lambda": bool(params.lam > 2 * nr - 1),
    }


# --------------------------------------------------------------------------
# decay bound for the kernel

def decay_rate(t: complex) -> float:
    """sinh u / (cosh u + |cos v|) for t = u + iv."""
    t = complex(t)
    return math.sinh(t.real) / (math.cosh(t.real) + abs(math.cos(t.imag)))


def _resolve_k(params: KernelParams, k: int | None) -> int:
    thr = 2 * params.algebra.n_over_r - 1
    if k is None:
        return max(0, math.floor(thr - params.lam) + 1)
    if not params.lam + k > thr:
        raise ParameterOutOfRange(f"need lambda + k > 2n/r - 1 = {thr}")
    return int(k)


def _cone_with_traces(alg: Algebra, rng: np.random.Generator, traces: np.ndarray) -> np.ndarray:
    out = np.empty((len(traces), alg.n))
    for i, T in enumerate(traces):
        y = alg.random_cone(rng)
        out[i] = y.coords * (T / trace(y))
    return out


def kernel_bound_check(params: KernelParams, k: int | None, sample_count: int,
                       rng: np.random.Generator, tr_max: float = 50.0, diagonal: int = 41,
                       csv_rows: list | None = None) -> dict:
    """Calibrate C* for |K| <= C* (1 + (tr x tr y)^{rk/2}) exp(-gamma (tr x + tr y)).

    gamma = sinh u/(cosh u + |cos v|).  The calibration set is random cone
    pairs with traces uniform in [0, tr_max], plus the x = 0 row and the
    diagonal x = y = s e; a disjoint random set is the validation.
    """
    alg = params.algebra
    k = _resolve_k(params, k)
    rk = alg.r * k
    gamma = decay_rate(params.t)
    unit = alg.unit().coords

    def ratios(X, Y):
        tx = X @ _trace_vec(alg)
        ty = Y @ _trace_vec(alg)
        eig = sandwich_eigs(alg, X, Y)
        vals, errs, meta = kernel_K_eigs(params, tx, ty, eig)
        log_bound = np.log1p((tx * ty) ** (rk / 2)) - gamma * (tx + ty)
        if csv_rows is not None:
            csv_rows.extend(zip(tx, ty, np.abs(vals), np.exp(log_bound)))
        return np.abs(vals) * np.exp(-log_bound), errs * np.exp(-log_bound), meta, np.abs(vals)

    m = sample_count
    diag_s = np.linspace(0, tr_max / alg.r, diagonal)
    zero_row = np.zeros((diagonal, alg.n))
    rand_y = _cone_with_traces(alg, rng, np.linspace(0, tr_max, diagonal))
    Xc = np.concatenate([zero_row, np.outer(diag_s, unit),
                         _cone_with_traces(alg, rng, rng.uniform(0, tr_max, m))])
    Yc = np.concatenate([rand_y, np.outer(diag_s, unit),
                         _cone_with_traces(alg, rng, rng.uniform(0, tr_max, m))])
    Xv = _cone_with_traces(alg, rng, rng.uniform(0, tr_max, m))
    Yv = _cone_with_traces(alg, rng, rng.uniform(0, tr_max, m))
    r_cal, e_cal, m_cal, k_cal = ratios(Xc, Yc)
    r_val, e_val, m_val, _ = ratios(Xv, Yv)
    c_star = float(np.max(r_cal))
    viol = int(np.sum(r_val > c_star * (1 + 1e-9)))
    # x = 0 row: |K| = exp(-Re coth t tr y) exactly
    ty0 = rand_y @ _trace_vec(alg)
    zero_dev = float(np.max(np.abs(k_cal[:diagonal] - np.exp(-params.coth.real * ty0))))
    # v = 0: the exponent is tanh(u/2); along the diagonal |K| e^{2 gamma tr x} stays bounded
    diag_r = r_cal[diagonal:2 * diagonal]
    report = {
        "algebra": alg.name,
        "lambda": params.lam,
        "t": [params.t.real, params.t.imag],
        "k": k,
        "gamma": gamma,
        "n_calibration": int(len(r_cal)),
        "n_validation": int(len(r_val)),
        "C_star": c_star,
        "validation_max": float(np.max(r_val)),
        "violations": viol,
        "x0_row_deviation": zero_dev,
        "diagonal_max_ratio": float(np.max(diag_r)),
        "max_ratio_error": float(max(np.max(e_cal), np.max(e_val))),
        "high_precision_points": m_cal["high_precision_points"] + m_val["high_precision_points"],
    }
    if params.v == 0:
        report["tanh_half_u_mismatch"] = abs(gamma - math.tanh(params.u / 2))
    report["passed"] = bool(np.isfinite(c_star) and viol == 0)
    return report


def _trace_vec(alg: Algebra) -> np.ndarray:
    from .jordan import trace_vector

    return trace_vector(alg)


# --------------------------------------------------------------------------
# V = R: Hankel transform and the Hermite (Mehler) semigroup

def _require_R(alg: Algebra | None):
    if alg is not None and alg.n != 1:
        raise UnsupportedAlgebra("only V = R is supported here")


def _vec(phi):
    def f(y):
        y = np.asarray(y, dtype=float)
        try:
            out = np.asarray(phi(y), dtype=complex)
            if out.shape == y.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([complex(phi(v)) for v in y.ravel()]).reshape(y.shape)
    return f


def _support_end(lam: float, f) -> float:
    """s beyond which phi(s^2) is negligible, scanned outward in chunks.

    phi itself must drop below 1e-14 of its peak (an absolute noise floor for
    phi given by quadrature) and the weighted integrand below 1e-10 of its
    peak.
    """
    grid = np.geomspace(1e-3, 1e3, 241)
    top = wtop = 0.0
    for start in range(0, len(grid), 12):
        s = grid[start:start + 12]
        with np.errstate(over="ignore", under="ignore"):
            mag = np.abs(f(s * s))
            wmag = mag * s ** (2 * lam - 1)
        top, wtop = max(top, float(np.max(mag))), max(wtop, float(np.max(wmag)))
        if top > 0 and s[0] > 1 and np.all(mag <= 1e-14 * top) and np.all(wmag <= 1e-10 * wtop):
            return float(s[0])
    raise QuadratureNotConverged("phi does not decay fast enough for the Hankel transform")


def _gl_panels(end: float, width: float, order: int):
    """Composite Gauss-Legendre on [0, end]; the first panel is split
    dyadically toward 0 to absorb the algebraic endpoint factor."""
    xg, wg = np.polynomial.legendre.leggauss(order)
    npan = max(1, math.ceil(end / width))
    edges = np.linspace(0, end, npan + 1)
    first = edges[1] * 2.0 ** -np.arange(0, 44)[::-1]
    edges = np.concatenate([[0.0], first, edges[2:]])
    half = np.diff(edges)[:, None] / 2
    mid = (edges[:-1] + edges[1:])[:, None] / 2
    return (mid + half * xg).ravel(), (half * wg).ravel()


def hankel_V_R(lam: float, phi: Callable, x, tol: float = 1e-11,
               algebra: Algebra | None = None):
    """H_lam phi(x) = 1/Gamma(lam) int_0^inf phi(y) 0F1(; lam; -x y) y^{lam-1} dy.

    In s = sqrt(y) the Bessel factor oscillates with frequency 2 sqrt(x), so
    composite Gauss-Legendre panels narrower than a quarter period resolve
    it; two orders are compared as the convergence check.  ``x`` may be an
    array.
    """
    _require_R(algebra)
    if lam <= 0:
        raise ParameterOutOfRange("lambda must be positive")
    f = _vec(phi)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    end = _support_end(lam, f)
    order_idx = np.argsort(xs)
    result = np.empty(len(xs), dtype=complex)
    # blocks of similar x share a panel width (and bound the matrix size)
    for start in range(0, len(xs), 64):
        idx = order_idx[start:start + 64]
        xb = xs[idx]
        width = min(0.5, math.pi / (4 * math.sqrt(max(xb.max(), 1e-12))))
        out = []
        for order in (16, 24):
            s, w = _gl_panels(end, width, order)
            y = s * s
            base = f(y) * 2 * s ** (2 * lam - 1) * w
            out.append(sc.hyp0f1(lam, -np.outer(xb, y)) @ base / math.gamma(lam))
        diff = np.abs(out[1] - out[0])
        # against the absolute integral, since H phi may itself be tiny
        scale = float(np.sum(np.abs(base))) / math.gamma(lam)
        if np.max(diff) > tol * scale:
            raise QuadratureNotConverged(f"Hankel quadrature orders disagree by {np.max(diff):.2e}")
        result[idx] = out[1]
    return complex(result[0]) if np.ndim(x) == 0 else result


def hankel_involution_check(lam: float, phi: Callable, grid, tol: float = 1e-9) -> dict:
    """sup |H(H phi) - phi| on a grid (nested quadrature)."""
    def h1(y):
        return hankel_V_R(lam, phi, np.asarray(y, dtype=float).ravel(), tol).reshape(np.shape(y))

    grid = np.asarray(grid, dtype=float)
    back = hankel_V_R(lam, h1, grid, tol)
    ref = _vec(phi)(grid)
    return {
        "lambda": lam,
        "grid_points": int(len(grid)),
        "sup_error": float(np.max(np.abs(back - ref))),
        "sup_reference": float(np.max(np.abs(ref))),
    }


def mehler_side(N: int, t: complex, F: Callable[[np.ndarray], np.ndarray], xi: float) -> complex:
    """The Hermite semigroup on f(xi) = F(|xi|^2/2), reduced by polar coordinates.

    Uses int_{S^{N-1}} e^{a (xi^ | sigma)} dsigma = |S^{N-1}| 0F1(; N/2; a^2/4).
    """
    from scipy.integrate import quad

    t = complex(t)
    sh, coth = cmath.sinh(t), 1 / cmath.tanh(t)
    sphere = 2 * math.pi ** (N / 2) / math.gamma(N / 2)
    pref = sphere * cmath.exp(-(N / 2) * cmath.log(2 * math.pi * sh))

    def g(rho):
        z = (xi * rho) ** 2 / (4 * sh * sh)
        return (complex(F(np.array([rho * rho / 2]))[0]) * cmath.exp(-0.5 * coth * (xi * xi + rho * rho))
                * complex(sc.hyp0f1(N / 2, z)) * rho ** (N - 1))

    # the integrand peaks near rho ~ |xi| / (sinh t coth t) and decays like a Gaussian
    top = 12.0 / math.sqrt(max(coth.real, 1e-3)) + 4 * xi
    re = quad(lambda p: g(p).real, 0, top, limit=400, epsabs=0, epsrel=1e-12)[0]
    im = quad(lambda p: g(p).imag, 0, top, limit=400, epsabs=0, epsrel=1e-12)[0]
    return pref * complex(re, im)


def mehler_radial_check(N: int, t: complex, F: RadialFunction, grid) -> dict:
    """Hermite semigroup on radial functions of R^N vs tau_{N/2}(t) on V = R."""
    if N < 2:
        raise ParameterOutOfRange("N >= 2 is required")
    alg = Algebra.real_line()
    params = KernelParams(alg, N / 2, t)
    grid = np.asarray(grid, dtype=float)
    lhs = np.array([mehler_side(N, t, F, xi) for xi in grid])
    rhs = tau_apply(params, F, (grid ** 2 / 2)[:, None], tol=1e-11).value
    disc = float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)))
    return {"N": N, "t": [complex(t).real, complex(t).imag], "profile": F.name,
            "grid_points": int(len(grid)), "discrepancy": disc,
            "sup_value": float(np.max(np.abs(lhs)))}
