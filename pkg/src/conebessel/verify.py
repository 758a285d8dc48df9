"""Desk-scale invariant suites used by ``cone-bessel verify``.

Every check returns a record ``{name, passed, metric, threshold, seconds}``;
a suite is a list of such records.
"""
from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from .jordan import (
    Algebra,
    Element,
    coords_singular_values,
    det_delta,
    haar_KL_sample,
    inner,
    op_L,
    op_P,
    sandwich,
    singular,
    spectral,
    trace,
)

ALGEBRAS = ("r", "symr2", "symr3", "hermc2", "hermc3", "spin3", "spin5")
RANK2 = ("r", "symr2", "hermc2", "spin3")


def _record(name: str, fn: Callable[[], tuple]) -> dict:
    t0 = time.perf_counter()
    try:
        metric, threshold, ok = fn()
        err = None
    except Exception as exc:  # a crashing check is a failing check
        metric, threshold, ok, err = float("nan"), None, False, f"{type(exc).__name__}: {exc}"
    rec = {"name": name, "passed": bool(ok), "metric": _num(metric), "threshold": _num(threshold),
           "seconds": round(time.perf_counter() - t0, 3)}
    if err:
        rec["error"] = err
    return rec


def _num(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else str(v)


def _alg(name: str) -> Algebra:
    from .jordan import get_algebra

    return get_algebra(name)


def _complex_stack(alg: Algebra, rng, count: int) -> np.ndarray:
    return rng.standard_normal((count, alg.n)) + 1j * rng.standard_normal((count, alg.n))


# --------------------------------------------------------------------------
# core

def norm_axioms(alg: Algebra, rng, count: int):
    X, Y = _complex_stack(alg, rng, count), _complex_stack(alg, rng, count)
    c = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    tx, ty = coords_singular_values(alg, X), coords_singular_values(alg, Y)
    txy = coords_singular_values(alg, X + Y)
    tcx = coords_singular_values(alg, c[:, None] * X)
    worst = 0.0
    for p in (1, 1.5, 2, 3, np.inf):
        def nrm(t):
            return t.max(axis=1) if np.isinf(p) else (t ** p).sum(axis=1) ** (1 / p)

        nx, ny = nrm(tx), nrm(ty)
        homog = np.abs(nrm(tcx) - np.abs(c) * nx) / (np.abs(c) * nx)
        tri = (nrm(txy) - nx - ny) / (nx + ny)
        worst = max(worst, homog.max(), tri.max(), -nx.min())
    return worst, 1e-12, worst <= 1e-12


def holder(alg: Algebra, rng, count: int):
    X, Y = _complex_stack(alg, rng, count), _complex_stack(alg, rng, count)
    tx, ty = coords_singular_values(alg, X), coords_singular_values(alg, Y)
    ip = np.abs(np.einsum("ij,ij->i", X, Y.conj()))
    worst = -np.inf
    for p, q in ((1, np.inf), (1.5, 3), (2, 2), (3, 1.5)):
        def nrm(t, e):
            return t.max(axis=1) if np.isinf(e) else (t ** e).sum(axis=1) ** (1 / e)

        worst = max(worst, np.max(ip / (nrm(tx, p) * nrm(ty, q)) - 1))
    return worst, 1e-12, worst <= 1e-12


def duality(alg: Algebra, rng, count: int):
    Z = _complex_stack(alg, rng, count)
    decs = [singular(Element(alg, z), frame=True) for z in Z]
    T = np.array([sd.values for sd in decs])
    F = np.array([[f.coords for f in sd.frame] for sd in decs])  # (count, r, n)
    worst = 0.0
    for p in (1.5, 2, 3):
        q = p / (p - 1)
        Y = np.einsum("ij,ijk->ik", T ** (p - 1), F)
        ty = coords_singular_values(alg, Y)
        ratio = np.abs(np.einsum("ij,ij->i", Y.conj(), Z)) / np.sum(ty ** q, axis=1) ** (1 / q)
        nz = np.sum(T ** p, axis=1) ** (1 / p)
        worst = max(worst, float(np.max(np.abs(ratio - nz) / nz)))
    return worst, 1e-10, worst <= 1e-10


def structure_identities(alg: Algebra, rng, count: int):
    worst = 0.0
    for _ in range(count):
        x = alg.random(rng)
        dP = np.linalg.det(op_P(x))
        target = det_delta(x) ** (2 * alg.n / alg.r)
        worst = max(worst, abs(dP - target) / max(abs(target), 1e-300),
                    abs(np.trace(op_L(x)) - alg.n_over_r * trace(x)) / max(1.0, abs(trace(x))))
    return worst, 1e-8, worst <= 1e-8


def spectral_reconstruction(alg: Algebra, rng, count: int):
    worst = 0.0
    for _ in range(count):
        x = alg.random(rng)
        sd = spectral(x)
        rec = sum(v * c.coords for v, c in zip(sd.values, sd.frame))
        worst = max(worst, np.linalg.norm(rec - x.coords) / np.linalg.norm(x.coords))
    return worst, 1e-10, worst <= 1e-10


def sandwich_symmetry(alg: Algebra, rng, count: int):
    worst = 0.0
    for _ in range(count):
        x, y = alg.random_cone(rng), alg.random_cone(rng)
        a = np.sort(spectral(sandwich(x, y)).values)
        b = np.sort(spectral(sandwich(y, x)).values)
        worst = max(worst, np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a))))
    return worst, 1e-10, worst <= 1e-10


def trace_sqrt_lemma(alg: Algebra, rng, count: int):
    worst = -np.inf
    for _ in range(count):
        x, y = alg.random_cone(rng), alg.random_cone(rng)
        ev = np.clip(spectral(sandwich(x, y)).values, 0, None)
        a, b = float(np.sum(np.sqrt(ev))), math.sqrt(trace(x) * trace(y))
        worst = max(worst, a - b * (1 + 1e-12), b - (trace(x) + trace(y)) / 2 * (1 + 1e-12))
    return worst, 0.0, worst <= 0.0


def suite_core(quick: bool = False, algebras=ALGEBRAS, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    big, small = (1000, 30) if quick else (10_000, 200)
    out = []
    for name in algebras:
        alg = _alg(name)
        out.append(_record(f"core/{name}/norm-axioms", lambda: norm_axioms(alg, rng, big)))
        out.append(_record(f"core/{name}/holder", lambda: holder(alg, rng, big)))
        out.append(_record(f"core/{name}/duality", lambda: duality(alg, rng, small)))
        out.append(_record(f"core/{name}/det-P-and-trace-L", lambda: structure_identities(alg, rng, small)))
        out.append(_record(f"core/{name}/spectral-reconstruction", lambda: spectral_reconstruction(alg, rng, small)))
        out.append(_record(f"core/{name}/sandwich-symmetry", lambda: sandwich_symmetry(alg, rng, small)))
        out.append(_record(f"core/{name}/trace-sqrt-lemma", lambda: trace_sqrt_lemma(alg, rng, small)))
    return out


# --------------------------------------------------------------------------
# spherical

def jack_normalization(alg: Algebra, rng, kmax: int = 10):
    from .spherical import graded_C

    pts = (rng.standard_normal((20, alg.r)) + 1j * rng.standard_normal((20, alg.r))) / 2
    worst = 0.0
    for k in range(kmax + 1):
        _, vals = graded_C(alg.r, alg.d, pts, k)
        target = pts.sum(axis=1) ** k
        worst = max(worst, np.max(np.abs(vals.sum(axis=1) - target) / np.abs(pts).sum(axis=1) ** k))
    return worst, 1e-10, worst <= 1e-10


def graded_dimensions(alg: Algebra, kmax: int = 5):
    from .spherical import dim_dm, partitions_of

    bad = 0
    for k in range(kmax + 1):
        total = sum(dim_dm(m, alg) for m in partitions_of(k, alg.r))
        bad += total != math.comb(alg.n + k - 1, k)
    return bad, 0, bad == 0


def gamma_pochhammer(alg: Algebra, rng, count: int = 50):
    from .spherical import gindikin_gamma_log, partitions_of, poch_general

    worst = 0.0
    for _ in range(count):
        s = rng.uniform(alg.n_over_r, alg.n_over_r + 4) + 1j * rng.uniform(-2, 2)
        m = partitions_of(int(rng.integers(0, 7)), alg.r)
        m = m[int(rng.integers(0, len(m)))].padded(alg.r)
        lhs = poch_general(s, m, alg.d)
        sv = np.array([s + mj for mj in m])
        rhs = np.exp(gindikin_gamma_log(sv, alg) - gindikin_gamma_log(s, alg))
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst, 1e-10, worst <= 1e-10


def km_square_identity(alg: Algebra, rng, count: int = 20):
    from .jordan import jordan_product
    from .spherical import kernel_Km, partitions_upto

    worst = 0.0
    e = alg.unit()
    for _ in range(count):
        x = Element(alg, _complex_stack(alg, rng, 1)[0] / 2)
        x2 = jordan_product(x, x)
        for m in partitions_upto(alg.r, 5):
            a = kernel_Km(m, x, x.conj())
            b = kernel_Km(m, x2, e)
            worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    return worst, 1e-8, worst <= 1e-8


def km_exponential(alg: Algebra, rng, K: int = 30):
    from .spherical import kernel_Km, partitions_upto

    z = Element(alg, _complex_stack(alg, rng, 1)[0] / 2)
    w = Element(alg, _complex_stack(alg, rng, 1)[0] / 2)
    total = sum(kernel_Km(m, z, w) for m in partitions_upto(alg.r, K))
    target = np.exp(inner(z, w))
    err = abs(total - target) / abs(target)
    return err, 1e-12, err <= 1e-12


def km_symmetry(alg: Algebra, rng, count: int = 10):
    from .spherical import kernel_Km, partitions_upto

    worst = 0.0
    for _ in range(count):
        z = Element(alg, _complex_stack(alg, rng, 1)[0])
        w = Element(alg, _complex_stack(alg, rng, 1)[0])
        for m in partitions_upto(alg.r, 4):
            a, b = kernel_Km(m, z, w), np.conj(kernel_Km(m, w, z))
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    return worst, 1e-10, worst <= 1e-10


def peirce_minors_stack(alg: Algebra, C: np.ndarray) -> np.ndarray:
    """Delta_1, ..., Delta_r for a stack of real coordinates, shape (N, r)."""
    from .jordan import SQRT2, coords_det, coords_to_matrix

    if alg.r == 1:
        return C[:, :1]
    if alg.is_matrix:
        M = coords_to_matrix(alg, C)
        return np.stack([np.linalg.det(M[:, :l, :l]).real for l in range(1, alg.r + 1)], axis=1)
    return np.stack([(C[:, 0] + C[:, 1]) / SQRT2, coords_det(alg, C).real], axis=1)


def phi_monte_carlo(alg: Algebra, rng, kmax: int, samples: int, nsigma: float = 3.0):
    """Phi_m(x) against the K_L-average of Delta_m(kx), in standard errors."""
    from .spherical import partitions_upto, phi_m

    x = alg.random(rng)
    kx = np.stack([haar_KL_sample(alg, rng) @ x.coords for _ in range(samples)])
    minors = peirce_minors_stack(alg, kx)
    worst = 0.0
    for m in partitions_upto(alg.r, kmax):
        if m.weight == 0:
            continue
        p = m.padded(alg.r)
        expo = [p[l] - (p[l + 1] if l + 1 < alg.r else 0) for l in range(alg.r)]
        vals = np.prod(minors ** np.array(expo), axis=1)
        se = vals.std(ddof=1) / math.sqrt(samples)
        exact = phi_m(m, x)
        z = abs(vals.mean() - exact) / max(se, 1e-14 * max(1.0, abs(exact)))
        worst = max(worst, z)
    return worst, nsigma, worst <= nsigma


def suite_spherical(quick: bool = False, algebras=ALGEBRAS, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    out = []
    for name in algebras:
        alg = _alg(name)
        out.append(_record(f"spherical/{name}/jack-normalization", lambda: jack_normalization(alg, rng)))
        out.append(_record(f"spherical/{name}/graded-dimensions", lambda: graded_dimensions(alg)))
        out.append(_record(f"spherical/{name}/gamma-pochhammer", lambda: gamma_pochhammer(alg, rng)))
        out.append(_record(f"spherical/{name}/Km-square", lambda: km_square_identity(alg, rng, 5 if quick else 20)))
        out.append(_record(f"spherical/{name}/Km-exponential", lambda: km_exponential(alg, rng)))
        out.append(_record(f"spherical/{name}/Km-symmetry", lambda: km_symmetry(alg, rng, 3 if quick else 10)))
        if alg.r > 1:
            out.append(_record(f"spherical/{name}/phi-monte-carlo",
                               lambda: phi_monte_carlo(alg, rng, 3 if quick else 6, 2000 if quick else 20000)))
    return out


# --------------------------------------------------------------------------
# Bessel functions

def classical_reduction(lams=(0.5, 1.0, 2.5), points: int = 41):
    """I_{lam+1}(x^2/4)/Gamma(lam+1) against (x/2)^{-lam} I_lam(x) on [0, 4]."""
    from .bessel import BesselParams, bessel_series_many, classical_tilde_I

    alg = Algebra.real_line()
    xs = np.linspace(0, 4, points)
    worst = 0.0
    for lam in lams:
        vals, _, _ = bessel_series_many(BesselParams(alg, lam + 1), (xs ** 2 / 4)[:, None])
        got = vals.real / math.gamma(lam + 1)
        ref = classical_tilde_I(lam, xs)
        worst = max(worst, float(np.max(np.abs(got - ref) / np.abs(ref))))
    return worst, 1e-10, worst <= 1e-10


def j_classical(lams=(0.5, 1.0, 3.0), points: int = 41):
    """J_lam(x^2) = Gamma(lam) x^{1-lam} J_{lam-1}(2x) on V = R."""
    from scipy.special import jv

    from .bessel import BesselParams, bessel_series_many

    alg = Algebra.real_line()
    xs = np.linspace(0.05, 6, points)
    worst = 0.0
    for lam in lams:
        vals, _, _ = bessel_series_many(BesselParams(alg, lam, kind="J"), (xs ** 2)[:, None])
        ref = math.gamma(lam) * xs ** (1 - lam) * jv(lam - 1, 2 * xs)
        worst = max(worst, float(np.max(np.abs(vals - ref)) / np.max(np.abs(ref))))
    return worst, 1e-10, worst <= 1e-10


def integral_vs_series(alg: Algebra, lam: complex, k: int | None, x: Element, samples: int,
                       floor: float, seed: int = 0):
    """|integral - series| in units of max(3 sigma, floor * |series|)."""
    from .bessel import BesselParams, MCSpec, bessel_integral, bessel_series

    params = BesselParams(alg, lam, k)
    ser = bessel_series(params, sandwich_square(x)).value
    est = bessel_integral(params, x, MCSpec(samples=samples, seed=seed))
    allow = max(3 * est.error, floor * abs(ser))
    score = abs(est.value - ser) / allow
    return score, 1.0, score <= 1.0


def sandwich_square(x: Element) -> Element:
    """x^2 in the Jordan sense (the series is evaluated at x^2)."""
    from .jordan import jordan_product

    return jordan_product(x, x)


def zero_normalization(alg: Algebra, samples: int, seed: int = 0):
    """The integral at x = 0, k = 0 is 1; returned in standard errors."""
    from .bessel import BesselParams, MCSpec, bessel_integral

    lam = 2 * alg.n_over_r + 0.5
    est = bessel_integral(BesselParams(alg, lam, 0), alg.zero(), MCSpec(samples=samples, seed=seed))
    z = abs(est.value - 1) / max(est.error, 1e-15)
    return z, 3.0, z <= 3.0


def tube_oracle(points: int = 10):
    """The contour-integral representation against the series on V = R."""
    from .bessel import BesselParams, bessel_series, tube_contour_oracle

    alg = Algebra.real_line()
    worst = 0.0
    for i, (lam, x) in enumerate(zip(np.linspace(0.6, 4.0, points), np.linspace(0.0, 6.0, points))):
        ref = bessel_series(BesselParams(alg, float(lam)), alg.element([x])).value
        got = tube_contour_oracle(float(lam), float(x))
        worst = max(worst, abs(got - ref) / abs(ref))
    return worst, 1e-6, worst <= 1e-6


def dk_differentiation(rng, kmax: int = 3, count: int = 20):
    """Coefficient of e^{xy} in x^{1-lam} (d/dx)^k x^{lam-1+k} e^{xy} on V = R.

    The oracle is the Leibniz rule:
    sum_j C(k, j) (a)_j^falling (xy)^{k-j} with a = lam - 1 + k.
    """
    from scipy.special import poch

    from .bessel import dk_exp_coeffs

    alg = Algebra.real_line()
    worst = 0.0
    for _ in range(count):
        lam = float(rng.uniform(0.3, 4.0))
        x, y = rng.uniform(0.1, 3.0, size=2)
        for k in range(kmax + 1):
            a = lam - 1 + k
            ref = sum(math.comb(k, j) * poch(a - j + 1, j) * (x * y) ** (k - j) for j in range(k + 1))
            gen, red = dk_exp_coeffs(k, lam, alg.element([x]), alg.element([y]))
            worst = max(worst, abs(gen - ref) / abs(ref))
            if red is not None:
                worst = max(worst, abs(red - ref) / abs(ref))
    return worst, 1e-9, worst <= 1e-9


def suite_bessel(quick: bool = False, algebras=ALGEBRAS, seed: int = 0) -> list[dict]:
    from .bessel import BesselParams, j_sup_check, upper_bound_check

    rng = np.random.default_rng(seed)
    samples = 2 ** 16 if quick else 2 ** 20
    real = Algebra.real_line()
    out = [
        _record("bessel/r/classical-reduction", classical_reduction),
        _record("bessel/r/J-classical", j_classical),
        _record("bessel/r/tube-contour", tube_oracle),
        _record("bessel/r/dk-differentiation", lambda: dk_differentiation(rng)),
    ]
    for lam, k in ((1.5, 0), (0.7, 1), (3.0, 0)):
        for x in (0.5, 1.0, 2.0, 1j, 1 + 1j):
            out.append(_record(f"bessel/r/integral/lam={lam},k={k},x={x}",
                               lambda: integral_vs_series(real, lam, k, real.element([x]), samples, 1e-3, seed)))
    for name in algebras:
        alg = _alg(name)
        out.append(_record(f"bessel/{name}/zero-normalization",
                           lambda: zero_normalization(alg, samples // 4, seed)))

    def bound(alg, lam):
        rep = upper_bound_check(BesselParams(alg, lam, 0), 1000 if quick else 10000, rng)
        return rep["validation_max"] / rep["C_star"], 1.0, rep["passed"]

    out.append(_record("bessel/r/upper-estimate", lambda: bound(real, 3.0)))
    if "symr2" in algebras:
        out.append(_record("bessel/symr2/upper-estimate", lambda: bound(_alg("symr2"), 4.0)))

    def jsup():
        rep = j_sup_check(10.0)
        return rep["sup"], None, rep["passed"]

    out.append(_record("bessel/r/J-sup", jsup))
    return out


# --------------------------------------------------------------------------
# the semigroup

def quadrature_calibration(alg: Algebra, shifts=(0.25, 1.5, 4.5, 7.0)):
    """Gamma_Omega(n/r - 1 + s) reproduced by the calibrated cone rule."""
    from .quadrature import ConeQuadrature

    q = ConeQuadrature(alg, 5 if alg.r == 1 else 3)
    worst = max(q.gamma_check(alg.n_over_r - 1 + s) for s in shifts)
    return worst, 1e-9, worst <= 1e-9


def kernel_symmetry(alg: Algebra, rng, count: int = 10):
    """K(x, y; t) = K(y, x; t)."""
    from .semigroup import KernelParams, kernel_K

    params = KernelParams(alg, alg.n_over_r + 0.5, 0.6 + 0.4j)
    worst = 0.0
    for _ in range(count):
        x, y = alg.random_cone(rng), alg.random_cone(rng)
        a, b = kernel_K(params, x, y).value, kernel_K(params, y, x).value
        worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    return worst, 1e-10, worst <= 1e-10


def tau_closed_form(alg: Algebra, t: complex, a: float = 1.0):
    """tau(t) e^{-a tr} against its closed form on a grid of cone points."""
    from .semigroup import KernelParams, RadialFunction, exp_trace_image, tau_apply

    params = KernelParams(alg, alg.n_over_r + 0.75, t)
    rng = np.random.default_rng(1)
    pts = [alg.zero()] + [alg.random_cone(rng, scale=s) for s in (0.3, 1.0, 3.0, 8.0)]
    got = tau_apply(params, RadialFunction.exp_trace(a), pts).value
    ref = exp_trace_image(params, a, np.array([float(trace(p)) for p in pts]))
    err = float(np.max(np.abs(got - ref)) / np.max(np.abs(ref)))
    return err, 1e-8, err <= 1e-8


def composition(alg: Algebra, lam: float, s: float, t: float, phi, threshold: float):
    from .semigroup import KernelParams, semigroup_check

    grid = np.array([[0.2], [1.0], [2.5]]) if alg.r == 1 else np.array([[1.0, 0.3], [2.0, 2.0], [0.5, 0.1]])
    rep = semigroup_check(KernelParams(alg, lam, t), s, phi, grid)
    return rep["discrepancy"], threshold, rep["discrepancy"] <= threshold


def mehler(N: int, t: complex, phi):
    from .semigroup import mehler_radial_check

    rep = mehler_radial_check(N, t, phi, np.linspace(0.0, 3.0, 7))
    return rep["discrepancy"], 1e-6, rep["discrepancy"] <= 1e-6


def hankel_exponential(lams=(0.6, 1.0, 2.5, 4.0)):
    """H_lam e^{-y} = e^{-x} on V = R."""
    from .semigroup import hankel_V_R

    xs = np.linspace(0.0, 6.0, 25)
    worst = max(float(np.max(np.abs(hankel_V_R(l, lambda y: np.exp(-y), xs) - np.exp(-xs)))) for l in lams)
    return worst, 1e-9, worst <= 1e-9


def hankel_involution(lam: float):
    from .semigroup import hankel_involution_check

    rep = hankel_involution_check(lam, lambda y: (1 + y) * np.exp(-y), np.linspace(0.0, 4.0, 9))
    err = rep["sup_error"] / rep["sup_reference"]
    return err, 1e-8, err <= 1e-8


def kernel_bound(alg: Algebra, lam: float, t: complex, rng, count: int):
    from .semigroup import KernelParams, kernel_bound_check

    rep = kernel_bound_check(KernelParams(alg, lam, t), None, count, rng)
    ok = rep["passed"] and (rep.get("tanh_half_u_mismatch") is None
                             or rep["tanh_half_u_mismatch"] <= 1e-12)
    return rep["validation_max"] / rep["C_star"], 1.0, ok


def suite_semigroup(quick: bool = False, algebras=ALGEBRAS, seed: int = 0) -> list[dict]:
    from .semigroup import RadialFunction

    rng = np.random.default_rng(seed)
    out = []
    rank2 = [a for a in algebras if a in RANK2]
    for name in rank2:
        alg = _alg(name)
        out.append(_record(f"semigroup/{name}/quadrature-calibration", lambda: quadrature_calibration(alg)))
        out.append(_record(f"semigroup/{name}/kernel-symmetry", lambda: kernel_symmetry(alg, rng, 3 if quick else 10)))
        for t in ((0.7,) if quick else (0.7, 0.5 + 1j)):
            out.append(_record(f"semigroup/{name}/closed-form/t={t}", lambda: tau_closed_form(alg, t)))
    real = Algebra.real_line()
    out.append(_record("semigroup/r/composition",
                       lambda: composition(real, 3.0, 0.5, 0.5, RadialFunction.exp_trace(), 1e-6)))
    if "spin3" in algebras:
        out.append(_record("semigroup/spin3/composition",
                           lambda: composition(_alg("spin3"), 4.0, 0.7, 0.7, RadialFunction.gaussian(), 1e-4)))
    profiles = (RadialFunction.exp_trace(), RadialFunction(lambda s: (1 + s[:, 0]) * np.exp(-s[:, 0]),
                                                           ("exponential", -0.99), "(1+y)exp(-y)"))
    for N in ((2,) if quick else (2, 5)):
        for t in (0.5, 1 + 0.3j):
            for phi in profiles:
                out.append(_record(f"semigroup/r/mehler/N={N},t={t},{phi.name}", lambda: mehler(N, t, phi)))
    out.append(_record("semigroup/r/hankel-exponential", hankel_exponential))
    out.append(_record("semigroup/r/hankel-involution", lambda: hankel_involution(1.5)))
    count = 300 if quick else 1000
    out.append(_record("semigroup/r/kernel-bound/t=0.5", lambda: kernel_bound(real, 2.0, 0.5, rng, count)))
    out.append(_record("semigroup/r/kernel-bound/t=0.5+1j", lambda: kernel_bound(real, 2.0, 0.5 + 1j, rng, count)))
    if "symr2" in algebras:
        out.append(_record("semigroup/symr2/kernel-bound/t=0.7",
                           lambda: kernel_bound(_alg("symr2"), 4.0, 0.7, rng, count)))
    return out


SUITES = {
    "core": suite_core,
    "spherical": suite_spherical,
    "bessel": suite_bessel,
    "semigroup": suite_semigroup,
}


def run_suite(name: str = "all", quick: bool = False, algebras=ALGEBRAS, seed: int = 0) -> dict:
    """Run one suite (or all) and summarize."""
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    records = []
    for n in names:
        records.extend(SUITES[n](quick=quick, algebras=algebras, seed=seed))
    failed = [r["name"] for r in records if not r["passed"]]
    return {"schema": 1, "suite": name, "quick": quick, "seed": seed, "checks": records,
            "n_checks": len(records), "n_failed": len(failed), "failed": failed, "passed": not failed}
