"""Pure-numpy implementations of the hot loops.

These mirror ``_ckernels.pyx`` function for function and are used when the
compiled module is unavailable or ``CONE_BESSEL_PURE=1`` is set.
"""
from __future__ import annotations

import numpy as np


def poly2_eval(F: np.ndarray, e1: np.ndarray, e2: np.ndarray) -> np.ndarray:
    """sum_{p,q} F[p, q] e1^p e2^q by nested Horner."""
    P, Q = F.shape
    out = np.zeros(np.shape(e1), dtype=complex)
    for p in range(P - 1, -1, -1):
        inner = np.zeros_like(out)
        for q in range(Q - 1, -1, -1):
            inner = inner * e2 + F[p, q]
        out = out * e1 + inner
    return out


def mc_accumulate(W, a, delta_a, b, tau, r, p, F):
    """Accumulate the Bessel-integral integrand over sample points.

    Parameters
    ----------
    W : (N, 2n) float array
        Real parts of the coordinates followed by imaginary parts.
    a : (n,) complex
        First argument of the polynomial kernel (the pair spectrum of (a, w)).
    delta_a : complex
        Jordan determinant of ``a`` (ignored for r=1).
    b : (n,) complex
        Exponential factor ``exp(sum_i b_i Re w_i)``.
    tau : (n,) float
        Trace vector.
    r : {1, 2}
    p : complex
        Exponent of h(w, w).
    F : (P, Q) complex
        Polynomial in (e1, e2) of the pair spectrum.

    Returns
    -------
    (sum_re, sum_im, sum_abs2, accepted)
    """
    W = np.ascontiguousarray(W, dtype=float)
    n = W.shape[1] // 2
    wr, wi = W[:, :n], W[:, n:]
    s2 = np.einsum("ij,ij->i", wr, wr) + np.einsum("ij,ij->i", wi, wi)
    if r == 1:
        dw2 = np.zeros_like(s2)
        dw = None
        t1sq = s2
        h = 1.0 - s2
    else:
        w = wr + 1j * wi
        tr = w @ tau
        dw = 0.5 * (tr * tr - np.einsum("ij,ij->i", w, w))
        dw2 = dw.real ** 2 + dw.imag ** 2
        q = 0.5 * s2
        t1sq = q + np.sqrt(np.maximum(q * q - dw2, 0.0))
        h = 1.0 - s2 + dw2
    ok = t1sq < 1.0
    if not np.any(ok):
        return 0.0, 0.0, 0.0, 0
    wr, wi, h = wr[ok], wi[ok], h[ok]
    hp = np.exp(p * np.log(np.maximum(h, 1e-300)))
    ex = np.exp(wr @ b)
    # e1 = sum a_i conj(w_i)
    e1 = wr @ a - 1j * (wi @ a)
    e2 = delta_a * np.conj(dw[ok]) if r == 2 else np.zeros_like(e1)
    f = poly2_eval(F, e1, e2) * ex * hp
    return float(f.real.sum()), float(f.imag.sum()), float((f.real ** 2 + f.imag ** 2).sum()), int(ok.sum())
