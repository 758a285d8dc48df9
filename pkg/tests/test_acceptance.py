"""Acceptance criteria, one test per criterion.

Each check returns ``(ok, detail)``; the outcome is recorded in ``RESULTS`` and
printed as a PASS/FAIL line at the end of the pytest run (see conftest.py).
Run ``python tests/test_acceptance.py`` to get the same lines without pytest.
"""

import itertools
import math
import time

import numpy as np
import pytest

from conebessel import verify
from conebessel.bessel import (
    BesselParams,
    MCSpec,
    bessel_integral,
    bessel_series,
    j_sup_check,
    upper_bound_check,
)
from conebessel.errors import ArgumentOffVariety
from conebessel.jordan import Algebra, get_algebra, jordan_product
from conebessel.semigroup import RadialFunction

RESULTS: dict[int, tuple[bool, str, float]] = {}
R = Algebra.real_line()


def within(est, ref, floor):
    """|est - ref| / max(3 sigma, floor |ref|)."""
    return abs(est.value - ref) / max(3 * est.error, floor * abs(ref))


def c01_classical_reduction():
    t0 = time.perf_counter()
    err, tol, ok = verify.classical_reduction((0.5, 1.0, 2.5), 41)
    dt = time.perf_counter() - t0
    return ok and dt < 1.0, f"max rel err {err:.2e} (tol {tol:g}), {dt:.2f}s (budget 1s)"


def c02_integral_R():
    t0 = time.perf_counter()
    worst = 0.0
    for (lam, k), x in itertools.product(((1.5, 0), (0.7, 1), (3.0, 0)), (0.5, 1.0, 2.0, 1j, 1 + 1j)):
        score, _, _ = verify.integral_vs_series(R, lam, k, R.element([x]), 10 ** 6, 1e-3)
        worst = max(worst, score)
    dt = time.perf_counter() - t0
    return worst <= 1 and dt < 30, f"worst score {worst:.3f} (<= 1), 15 points, {dt:.1f}s (budget 30s)"


def c03_integral_rank2():
    t0 = time.perf_counter()
    alg = get_algebra("symr2")
    cases = [(alg, x) for x in (alg.diag([0.8, 0.3]), alg.diag([1.0, 1.0]), alg.zero())]
    spin = get_algebra("spin3")
    cases.append((spin, spin.diag([0.8, 0.3])))
    worst = 0.0
    for a, x in cases:
        p = BesselParams(a, 4.0, 0)
        est = bessel_integral(p, x, MCSpec(samples=10 ** 7))
        worst = max(worst, within(est, bessel_series(p, jordan_product(x, x)).value, 2e-2))
    dt = time.perf_counter() - t0
    return worst <= 1 and dt < 180, f"worst score {worst:.3f} (<= 1), 4 points at 1e7, {dt:.1f}s (budget 180s)"


def c04_k_independence():
    p = [BesselParams(R, 2.5, k) for k in (0, 1, 2)]
    ests = [bessel_integral(q, R.element([1.0]), MCSpec(samples=2 ** 20)) for q in p]
    worst = 0.0
    for a, b in itertools.combinations(ests, 2):
        worst = max(worst, abs(a.value - b.value) / (3 * math.hypot(a.error, b.error)))
    return worst <= 1, f"worst pairwise |diff|/(3 sigma) {worst:.3f}"


def c05_normalization():
    worst, names = 0.0, []
    for name in verify.ALGEBRAS:
        alg = get_algebra(name)
        z, _, _ = verify.zero_normalization(alg, 2 ** 18 if alg.r <= 2 else 2 ** 16)
        worst = max(worst, z)
        names.append(name)
    return worst <= 3, f"worst |I(0) - 1|/sigma {worst:.2f} (<= 3) over {','.join(names)}"


def c06_rank_restricted():
    alg = get_algebra("hermc2")
    worst = 0.0
    for s in (0.5, 0.9, 1.5):
        for k in (3, 4):  # Re lam + k > 3
            p = BesselParams(alg, 1.0, k)
            assert p.rank == 1
            x = alg.diag([s, 0.0])
            est = bessel_integral(p, x, MCSpec(samples=2 ** 20))
            worst = max(worst, within(est, bessel_series(p, jordan_product(x, x)).value, 2e-2))
    raised = 0
    off = alg.diag([1.0, 0.5])
    for fn in (lambda: bessel_series(BesselParams(alg, 1.0), off),
               lambda: bessel_integral(BesselParams(alg, 1.0, 4), off, MCSpec(samples=64))):
        try:
            fn()
        except ArgumentOffVariety:
            raised += 1
    return worst <= 1 and raised == 2, f"worst score {worst:.3f} (<= 1), off-variety raised {raised}/2"


def c07_upper_estimate():
    rng = np.random.default_rng(0)
    details, ok = [], True
    for alg, lam in ((R, 3.0), (get_algebra("symr2"), 4.0)):
        rep = upper_bound_check(BesselParams(alg, lam, 0), 10 ** 4, rng, l1_max=20.0)
        ok &= rep["passed"] and math.isfinite(rep["C_star"]) and rep["violations"] == 0
        details.append(f"{alg.name}: C*={rep['C_star']:.3g} viol={rep['violations']}")
    js = j_sup_check(10.0, 50.0)
    ok &= js["passed"]
    details.append(f"sup|J_10|={js['sup']:.4g} at x={js['argmax']:.3g}")
    return ok, "; ".join(details)


def c08_pnorm():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    ok, worst = True, 0.0
    for name in verify.ALGEBRAS:
        alg = get_algebra(name)
        for check in (verify.norm_axioms, verify.holder, verify.duality):
            metric, _, passed = check(alg, rng, 10 ** 4)
            ok &= passed
            worst = max(worst, metric)
    dt = time.perf_counter() - t0
    return ok and dt < 10, f"3 statements x {len(verify.ALGEBRAS)} algebras, worst metric {worst:.2e}, {dt:.1f}s (budget 10s)"


def c09_spherical():
    t0 = time.perf_counter()
    recs = verify.suite_spherical(quick=False)
    dt = time.perf_counter() - t0
    failed = [r["name"] for r in recs if not r["passed"]]
    return not failed and dt < 120, f"{len(recs)} checks, failed {failed}, {dt:.1f}s (budget 120s)"


def c10_dk():
    err, tol, ok = verify.dk_differentiation(np.random.default_rng(0), 3, 20)
    return ok, f"max rel err {err:.2e} (tol {tol:g})"


def c11_semigroup_law():
    t0 = time.perf_counter()
    a, _, ok_a = verify.composition(R, 3.0, 0.5, 0.5, RadialFunction.exp_trace(), 1e-6)
    b, _, ok_b = verify.composition(get_algebra("spin3"), 4.0, 0.7, 0.7, RadialFunction.gaussian(), 1e-4)
    dt = time.perf_counter() - t0
    return ok_a and ok_b and dt < 120, f"R: {a:.2e} (<=1e-6), Spin(3): {b:.2e} (<=1e-4), {dt:.1f}s (budget 120s)"


def c12_kernel_estimate():
    rng = np.random.default_rng(0)
    details, ok = [], True
    for alg, lam, t in ((R, 2.0, 0.5), (R, 2.0, 0.5 + 1j), (get_algebra("symr2"), 4.0, 0.7)):
        ratio, _, passed = verify.kernel_bound(alg, lam, t, rng, 1000)
        ok &= passed
        details.append(f"{alg.name} t={t}: max ratio {ratio:.3f}")
    return ok, "; ".join(details)


def c13_mehler():
    t0 = time.perf_counter()
    profiles = (RadialFunction.exp_trace(), RadialFunction(lambda s: (1 + s[:, 0]) * np.exp(-s[:, 0]),
                                                           ("exponential", -0.99), "(1+y)exp(-y)"))
    worst, ok = 0.0, True
    for N, t, phi in itertools.product((2, 5), (0.5, 1 + 0.3j), profiles):
        d, _, passed = verify.mehler(N, t, phi)
        ok &= passed
        worst = max(worst, d)
    dt = time.perf_counter() - t0
    return ok and dt < 60, f"worst discrepancy {worst:.2e} (<= 1e-6), {dt:.1f}s (budget 60s)"


def c14_tube():
    err, tol, ok = verify.tube_oracle(10)
    return ok, f"max rel err {err:.2e} (tol {tol:g}) on 10 points"


CRITERIA = {
    1: ("classical reduction", c01_classical_reduction),
    2: ("integral vs series on R", c02_integral_R),
    3: ("integral vs series on SymR(2), Spin(3)", c03_integral_rank2),
    4: ("k-independence", c04_k_independence),
    5: ("normalization at x = 0", c05_normalization),
    6: ("rank-restricted HermC(2)", c06_rank_restricted),
    7: ("upper estimate and sup |J|", c07_upper_estimate),
    8: ("p-norm statements", c08_pnorm),
    9: ("spherical engine", c09_spherical),
    10: ("differential operator coefficients", c10_dk),
    11: ("semigroup law", c11_semigroup_law),
    12: ("kernel estimate", c12_kernel_estimate),
    13: ("Mehler radial consistency", c13_mehler),
    14: ("tube-contour oracle", c14_tube),
}


def run_criterion(num: int) -> tuple[bool, str, float]:
    name, fn = CRITERIA[num]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    res = (bool(ok), f"{name}: {detail}", time.perf_counter() - t0)
    RESULTS[num] = res
    return res


def format_line(num: int, res: tuple[bool, str, float]) -> str:
    return f"[{'PASS' if res[0] else 'FAIL'}] criterion {num:2d} ({res[2]:6.1f}s) {res[1]}"


@pytest.mark.acceptance
@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    ok, detail, _ = run_criterion(num)
    print(format_line(num, RESULTS[num]))
    assert ok, detail


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        print(format_line(n, run_criterion(n)), flush=True)
