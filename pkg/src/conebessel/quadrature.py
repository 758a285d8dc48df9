"""Quadrature over the symmetric cone for K_L-invariant integrands.

A K_L-invariant function on Omega depends only on the eigenvalues
s_1 > ... > s_r > 0, and

    int_Omega F(y) dy = c_Omega int_{s_1 > ... > s_r > 0} F(s) prod_{i<j} (s_i - s_j)^d ds.

The rule lives in the coordinates p = sum(s) (double-exponential map of
(0, inf)) and, for rank two, q = (s_1 - s_2)/p in (0, 1) (tanh-sinh).
c_Omega is not taken from a closed form: it is fitted so that the rule
reproduces Gamma_Omega(n/r) and then cross-checked at n/r + 1.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureNotConverged, UnsupportedAlgebra
from .jordan import Algebra
from .spherical import gindikin_gamma_log

MAX_NODES = 2 ** 20
CALIBRATION_TOL = 1e-6

# truncation windows of the two maps (in the map variable); the
# endpoint windows widen for integrands that are singular at the walls
_EXP_HI = 6.5
_EXP_LO = (-6.5, -5.0)
_TS_HI = (5.0, 6.2)
_LOG_TINY = 37.0  # e^-37 ~ 1e-16


def exp_exp_rule(h: float, scale: float = 1.0, power: float = 1.0):
    """Nodes and weights on (0, inf): x = scale * exp(tau - exp(-tau)).

    Double-exponential at 0, single-exponential at infinity, which makes
    exponentially decaying integrands decay double-exponentially.  The
    window at 0 is wide enough for integrands x^{power - 1}, power > 0.
    """
    lo = -math.log(_LOG_TINY / min(power, 1.0))
    lo = min(max(lo, _EXP_LO[0]), _EXP_LO[1])
    tau = np.arange(math.floor(lo / h), math.ceil(_EXP_HI / h) + 1) * h
    x = scale * np.exp(tau - np.exp(-tau))
    w = h * x * (1 + np.exp(-tau))
    return x, w


def tanh_sinh_rule(h: float, power: float = 1.0):
    """Nodes q, complements 1-q and weights on (0, 1).

    The window covers endpoint singularities q^{power - 1}, power > 0.
    Complements are computed directly, so they stay accurate near 1.
    """
    hi = math.asinh(_LOG_TINY / (math.pi * min(power, 1.0)))
    hi = min(max(hi, _TS_HI[0]), _TS_HI[1])
    tau = np.arange(math.floor(-hi / h), math.ceil(hi / h) + 1) * h
    a = 0.5 * math.pi * np.sinh(tau)
    with np.errstate(over="ignore", under="ignore"):
        q = 1 / (1 + np.exp(-2 * a))
        qc = 1 / (1 + np.exp(2 * a))
        w = h * math.pi * np.cosh(tau) * np.exp(-2 * np.abs(a)) / (1 + np.exp(-2 * np.abs(a))) ** 2
    keep = (q > 0) & (qc > 0) & (w > 0)
    return q[keep], qc[keep], w[keep]


class ConeQuadrature:
    """Eigenvalue-space rule for int_Omega F(y) dy, F K_L-invariant.

    Attributes
    ----------
    nodes : (N, r) array
        Eigenvalues, descending.
    weights : (N,) array
        Include the density prod (s_i - s_j)^d, the Jacobian and c_Omega.
    exponent : float
        Power of Delta the endpoint windows are sized for (clipped to <= 0).
    delta : (N,) array
        Jordan determinant prod s_i at the nodes (computed without
        cancellation near the walls).
    c_omega : float
        Calibrated normalization constant.
    calibration_error : float
        Relative Gamma_Omega(n/r + 1) mismatch at construction.
    """

    def __init__(self, algebra: Algebra, level: int = 4, scale: float = 1.0, exponent: float = 0.0):
        if algebra.r > 2:
            raise UnsupportedAlgebra("cone quadrature is implemented for rank <= 2")
        self.algebra = algebra
        self.level = level
        self.scale = float(scale)
        # integrands carry Delta^exponent, exponent > -1
        self.exponent = float(min(exponent, 0.0))
        if not self.exponent > -1:
            raise ValueError("exponent must exceed -1")
        power = 1 + self.exponent
        h = 2.0 ** (-level)
        p, wp = exp_exp_rule(h, self.scale, algebra.r * power)
        if algebra.r == 1:
            nodes = p[:, None]
            base = wp
            delta = p
        else:
            q, qc, wq = tanh_sinh_rule(h, power)
            P, Q = np.meshgrid(p, q, indexing="ij")
            QC = np.broadcast_to(qc[None, :], P.shape)
            W = np.outer(wp, wq)
            s1 = 0.5 * P * (1 + Q)
            s2 = 0.5 * P * QC
            nodes = np.stack([s1.ravel(), s2.ravel()], axis=1)
            base = (W * 0.5 * P * (P * Q) ** algebra.d).ravel()
            delta = (s1 * s2).ravel()
        # nodes deep in the corner underflow; they carry no weight
        live = (base > 0) & (delta > 0)
        nodes, base, delta = nodes[live], base[live], delta[live]
        if len(base) > MAX_NODES:
            raise QuadratureNotConverged(f"{len(base)} nodes exceed the cap {MAX_NODES}")
        self.nodes = nodes
        self.delta = delta
        self.trace = nodes.sum(axis=1)
        nr = algebra.n_over_r
        raw = float(np.sum(base * np.exp(-self.trace)))
        self.c_omega = math.exp(gindikin_gamma_log(nr, algebra).real) / raw
        self.weights = base * self.c_omega
        check = float(np.sum(self.weights * np.exp(-self.trace) * delta))
        target = math.exp(gindikin_gamma_log(nr + 1, algebra).real)
        self.calibration_error = abs(check / target - 1)
        if self.calibration_error > CALIBRATION_TOL:
            raise QuadratureNotConverged(
                f"Gamma_Omega check failed at level {level}: rel. error {self.calibration_error:.2e}")

    def __len__(self):
        return len(self.weights)

    def refine(self) -> "ConeQuadrature":
        return ConeQuadrature(self.algebra, self.level + 1, self.scale, self.exponent)

    def integrate(self, values: np.ndarray) -> complex:
        return complex(np.sum(self.weights * values))

    def gamma_check(self, lam: float) -> float:
        """Relative error of the rule on Gamma_Omega(lam)."""
        nr = self.algebra.n_over_r
        est = np.sum(self.weights * np.exp(-self.trace) * self.delta ** (lam - nr))
        return float(abs(est / math.exp(gindikin_gamma_log(lam, self.algebra).real) - 1))

    def describe(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "level": self.level,
            "scale": self.scale,
            "exponent": self.exponent,
            "nodes": len(self),
            "c_omega": self.c_omega,
            "calibration_error": self.calibration_error,
        }
