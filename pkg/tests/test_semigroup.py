import cmath
import math

import numpy as np
import pytest
import scipy.special as sc

from conebessel.errors import GrowthIncompatible, NotInCone, ParameterOutOfRange, UnsupportedAlgebra
from conebessel.jordan import get_algebra
from conebessel.semigroup import (
    KernelParams,
    RadialFunction,
    decay_rate,
    exp_trace_image,
    hankel_involution_check,
    hankel_V_R,
    kernel_bound_check,
    kernel_K,
    mehler_radial_check,
    mehler_side,
    radial_apply,
    semigroup_check,
    tau_apply,
)

R = get_algebra("r")


def test_params_validation():
    with pytest.raises(ParameterOutOfRange):
        KernelParams(get_algebra("symr2"), 0.4, 0.5)  # lam <= n/r - 1
    with pytest.raises(ParameterOutOfRange):
        KernelParams(R, 2.0, -0.1)
    with pytest.raises(ParameterOutOfRange):
        KernelParams(R, 2.0, 1j * math.pi)
    p = KernelParams(R, 2.0, 0.5 + 0.25j)
    assert p.u == 0.5 and p.v == 0.25
    assert np.isclose(p.coth, 1 / cmath.tanh(0.5 + 0.25j))
    assert p.at(1.0).t == 1.0


@pytest.mark.parametrize("t", [0.5, 0.7 + 0.4j])
def test_kernel_on_R_is_classical(t):
    # K(x, y; t) = exp(-coth t (x + y)) 0F1(; lam; x y / sinh^2 t)
    lam = 2.5
    p = KernelParams(R, lam, t)
    for x, y in ((0.3, 1.2), (2.0, 2.0), (0.0, 4.0)):
        ref = cmath.exp(-p.coth * (x + y)) * complex(sc.hyp0f1(lam, x * y / cmath.sinh(t) ** 2))
        got = kernel_K(p, R.element([x]), R.element([y]))
        assert abs(got.value - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("name", ["symr2", "hermc2", "spin3", "symr3"])
def test_kernel_symmetry_and_zero_row(name):
    alg = get_algebra(name)
    p = KernelParams(alg, alg.n_over_r + 0.4, 0.6 + 0.3j)
    rng = np.random.default_rng(2)
    x, y = alg.random_cone(rng), alg.random_cone(rng)
    a, b = kernel_K(p, x, y).value, kernel_K(p, y, x).value
    assert abs(a - b) <= 1e-11 * abs(a)
    # x = 0: only the prefactor survives
    from conebessel.jordan import trace

    z = kernel_K(p, alg.zero(), y).value
    assert np.isclose(z, np.exp(-p.coth * trace(y)), rtol=1e-12)


def test_kernel_rejects_non_cone():
    alg = get_algebra("symr2")
    p = KernelParams(alg, 2.0, 0.5)
    with pytest.raises(NotInCone):
        kernel_K(p, alg.diag([1.0, -1.0]), alg.unit())


def test_radial_apply_single_node_is_the_series():
    # one node: B(x, s) = sum_m u^|m| C_m(x) C_m(s) / (|m|! (lam)_m C_m(e)); on R: 0F1(; lam; u x s)
    lam, u = 1.5, 0.8
    vals, err, _ = radial_apply(R, lam, u, np.array([[2.0]]), np.array([1.0]), np.array([[0.5], [3.0]]))
    assert np.allclose(vals, sc.hyp0f1(lam, u * np.array([1.0, 6.0])), rtol=1e-13)
    assert np.all(err < 1e-12 * np.abs(vals))


@pytest.mark.parametrize("name", ["r", "symr2", "hermc2", "spin3"])
@pytest.mark.parametrize("t", [0.6, 0.5 + 1j])
def test_tau_closed_form(name, t):
    alg = get_algebra(name)
    p = KernelParams(alg, alg.n_over_r + 0.3, t)
    traces = np.array([0.0, 0.5, 2.0, 6.0])
    pts = np.outer(traces / alg.r, np.ones(alg.r))
    got = tau_apply(p, RadialFunction.exp_trace(1.5), pts)
    ref = exp_trace_image(p, 1.5, traces)
    assert np.allclose(got.value, ref, rtol=1e-9, atol=0)
    assert np.all(got.error <= 1e-8 * np.abs(ref))


def test_tau_near_threshold_lambda():
    # strong wall singularity Delta^{-0.9}: the rule is sized for it
    alg = get_algebra("symr2")
    p = KernelParams(alg, alg.n_over_r - 0.9, 0.8)
    got = tau_apply(p, RadialFunction.exp_trace(), alg.unit()).value
    assert abs(got - exp_trace_image(p, 1.0, 2.0)) <= 1e-9 * abs(got)


def test_tau_small_time():
    # approaching t = 0 the image tends to phi; at t = 0.05 the rule still resolves the kernel
    p = KernelParams(R, 2.0, 0.05)
    got = tau_apply(p, RadialFunction.exp_trace(), np.array([[1.0]])).value[0]
    assert np.isclose(got, exp_trace_image(p, 1.0, 1.0), rtol=1e-10)
    assert abs(got - math.exp(-1.0)) < 0.1
    # a near-delta kernel is reported, not silently mis-integrated
    from conebessel.errors import QuadratureNotConverged

    with pytest.raises(QuadratureNotConverged):
        tau_apply(KernelParams(R, 2.0, 1e-3), RadialFunction.exp_trace(), np.array([[1.0]]))


def test_growth_incompatible():
    p = KernelParams(R, 2.0, 0.3)
    grow = RadialFunction(lambda s: np.exp(5 * s[:, 0]), ("exponential", 5.0), "exp(5y)")
    with pytest.raises(GrowthIncompatible):
        tau_apply(p, grow, np.array([[1.0]]))
    with pytest.raises(GrowthIncompatible):
        tau_apply(KernelParams(R, 2.0, 1j), RadialFunction.constant(), np.array([[1.0]]))


def test_composition_R():
    p = KernelParams(R, 3.0, 0.5)
    rep = semigroup_check(p, 0.5, RadialFunction.exp_trace(), np.array([[0.2], [1.0], [2.5]]))
    assert rep["discrepancy"] <= 1e-10
    assert rep["above_threshold_lambda"]


def test_composition_complex_times_spin3():
    alg = get_algebra("spin3")
    p = KernelParams(alg, 4.0, 0.6 + 0.2j)
    rep = semigroup_check(p, 0.5 - 0.1j, RadialFunction.gaussian(), np.array([[1.0, 0.3], [2.0, 2.0]]))
    assert rep["discrepancy"] <= 1e-8


def test_composition_needs_positive_real_parts():
    with pytest.raises(ParameterOutOfRange):
        semigroup_check(KernelParams(R, 3.0, 0.5), 1j, RadialFunction.exp_trace(), np.array([[1.0]]))


def test_decay_rate():
    assert np.isclose(decay_rate(0.8), math.tanh(0.4))
    assert np.isclose(decay_rate(0.8 + math.pi / 2 * 1j), math.tanh(0.8))


@pytest.mark.parametrize("name,lam,t", [("r", 2.0, 0.5), ("r", 2.0, 0.5 + 1j), ("symr2", 4.0, 0.7)])
def test_kernel_bound(name, lam, t):
    alg = get_algebra(name)
    rows = []
    rep = kernel_bound_check(KernelParams(alg, lam, t), None, 200, np.random.default_rng(0), csv_rows=rows)
    assert rep["passed"] and rep["violations"] == 0
    assert rep["x0_row_deviation"] < 1e-12
    assert len(rows) == rep["n_calibration"] + rep["n_validation"]
    if complex(t).imag == 0:
        assert rep["tanh_half_u_mismatch"] < 1e-15


def test_kernel_bound_k_precondition():
    alg = get_algebra("symr2")
    with pytest.raises(ParameterOutOfRange):
        kernel_bound_check(KernelParams(alg, 1.0, 0.5), 0, 10, np.random.default_rng(0))


# --------------------------------------------------------------------------
# V = R: Hankel transform and the Hermite semigroup

@pytest.mark.parametrize("lam", [0.6, 1.0, 2.5])
def test_hankel_exponential(lam):
    # H_lam e^{-y} = e^{-x}
    xs = np.linspace(0, 5, 11)
    assert np.allclose(hankel_V_R(lam, lambda y: np.exp(-y), xs), np.exp(-xs), atol=1e-12)


def test_hankel_scalar_and_gaussian():
    # a Gaussian profile against direct adaptive quadrature
    from scipy.integrate import quad

    lam, x = 1.5, 0.7
    ref = quad(lambda y: math.exp(-y * y) * sc.hyp0f1(lam, -x * y) * y ** (lam - 1), 0, np.inf,
               epsabs=1e-14)[0] / math.gamma(lam)
    assert np.isclose(hankel_V_R(lam, lambda y: np.exp(-y * y), x), ref, rtol=1e-10)


def test_hankel_involution():
    rep = hankel_involution_check(2.0, lambda y: (1 + y) * np.exp(-y), np.linspace(0, 3, 5))
    assert rep["sup_error"] <= 1e-9 * rep["sup_reference"]


def test_hankel_rejects_other_algebras():
    with pytest.raises(UnsupportedAlgebra):
        hankel_V_R(1.0, np.exp, 1.0, algebra=get_algebra("symr2"))


def test_mehler_side_gaussian_semigroup_of_constant():
    # the Hermite semigroup maps 1 to (cosh t)^{-N/2} exp(-tanh t |xi|^2 / 2)
    N, t, xi = 3, 0.4, 1.1
    got = mehler_side(N, t, lambda y: np.ones_like(y), xi)
    ref = math.cosh(t) ** (-N / 2) * math.exp(-math.tanh(t) * xi * xi / 2)
    assert np.isclose(got, ref, rtol=1e-10)


@pytest.mark.parametrize("N", [2, 5])
@pytest.mark.parametrize("t", [0.5, 1 + 0.3j])
def test_mehler_radial(N, t):
    rep = mehler_radial_check(N, t, RadialFunction.exp_trace(), np.linspace(0, 2.5, 5))
    assert rep["discrepancy"] <= 1e-9
