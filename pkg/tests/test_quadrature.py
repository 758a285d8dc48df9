import math

import numpy as np
import pytest

from conebessel.errors import UnsupportedAlgebra
from conebessel.jordan import get_algebra
from conebessel.quadrature import ConeQuadrature, exp_exp_rule, tanh_sinh_rule
from conebessel.spherical import gindikin_gamma


def test_exp_exp_rule_gamma_integrals():
    # int_0^inf x^{a-1} e^{-x} dx = Gamma(a), including the singular a < 1
    x, w = exp_exp_rule(2.0 ** -5)
    for a in (0.3, 1.0, 2.5, 7.0):
        assert np.isclose(np.sum(w * x ** (a - 1) * np.exp(-x)), math.gamma(a), rtol=1e-12)


def test_exp_exp_rule_scale():
    x, w = exp_exp_rule(2.0 ** -5, scale=10.0)
    assert np.isclose(np.sum(w * np.exp(-x / 10)), 10.0, rtol=1e-12)


def test_tanh_sinh_beta_integrals():
    # int_0^1 q^{a-1} (1-q)^{b-1} dq = B(a, b), endpoint singularities included
    q, qc, w = tanh_sinh_rule(2.0 ** -4)
    for a, b in ((0.5, 0.5), (0.2, 3.0), (2.0, 2.0)):
        ref = math.gamma(a) * math.gamma(b) / math.gamma(a + b)
        assert np.isclose(np.sum(w * q ** (a - 1) * qc ** (b - 1)), ref, rtol=1e-10)


@pytest.mark.parametrize("name,c", [("r", 1.0), ("symr2", math.pi * math.sqrt(2)), ("spin3", math.pi * math.sqrt(2)),
                                    ("hermc2", 2 * math.pi)])
def test_calibrated_constant(name, c):
    q = ConeQuadrature(get_algebra(name), 4)
    assert np.isclose(q.c_omega, c, rtol=1e-10)
    assert q.calibration_error < 1e-12


@pytest.mark.parametrize("name", ["r", "symr2", "hermc2", "spin3", "spin5"])
def test_gamma_integrals_over_the_cone(name):
    # int_Omega e^{-tr y} Delta(y)^{s - n/r} dy = Gamma_Omega(s) for s > n/r - 1
    alg = get_algebra(name)
    q = ConeQuadrature(alg, 5 if alg.r == 1 else 3, exponent=-0.95)
    for s in (alg.n_over_r - 0.95, alg.n_over_r - 0.9, alg.n_over_r + 0.5, alg.n_over_r + 6.0):
        assert q.gamma_check(s) < 1e-12


def test_nodes_and_refinement():
    q = ConeQuadrature(get_algebra("symr2"), 2)
    assert q.nodes.shape == (len(q), 2)
    assert np.all(q.nodes[:, 0] >= q.nodes[:, 1])
    assert np.all(q.delta > 0) and np.all(q.weights > 0)
    assert np.allclose(q.trace, q.nodes.sum(axis=1))
    finer = q.refine()
    assert finer.level == 3 and len(finer) > 3 * len(q)
    assert q.describe()["nodes"] == len(q)


def test_exponential_moment():
    # int_Omega e^{-tr y} tr(y) dy = n Gamma_Omega(n/r) (tr y has mean n under e^{-tr y})
    alg = get_algebra("spin5")
    q = ConeQuadrature(alg, 3)
    est = q.integrate(np.exp(-q.trace) * q.trace)
    assert np.isclose(est.real, alg.n * gindikin_gamma(alg.n_over_r, alg).real, rtol=1e-10)


def test_tanh_sinh_strong_singularity():
    q, qc, w = tanh_sinh_rule(2.0 ** -4, power=0.05)
    ref = math.gamma(0.05) * math.gamma(0.05) / math.gamma(0.1)
    assert np.isclose(np.sum(w * q ** -0.95 * qc ** -0.95), ref, rtol=1e-12)


def test_rank_three_rejected():
    with pytest.raises(UnsupportedAlgebra):
        ConeQuadrature(get_algebra("symr3"))
