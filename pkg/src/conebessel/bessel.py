"""I- and J-Bessel functions on V^C.

Two independent evaluation routes are provided: the restricted spherical
series (with a certified truncation bound) and the integral representation
over the bounded symmetric domain D, estimated by randomized quasi-Monte
Carlo with a replicate-based standard error.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import gmpy2
import mpmath
import numpy as np
import scipy.special as sc
from scipy.stats import qmc

from . import kernels
from .errors import (
    AlgebraMismatch,
    ArgumentOffVariety,
    ParameterOutOfRange,
    PochhammerZero,
    UnsupportedAlgebra,
)
from .jordan import (
    Algebra,
    Element,
    coords_det,
    coords_eigenvalues,
    coords_singular_values,
    pair_elementary,
    trace_vector,
)
from .spherical import (
    Partition,
    c_lambda,
    graded_C,
    partitions_of,
    poch_general,
    poch_log_table,
    rank_lambda,
)

EPS = np.finfo(float).eps
SERIES_TOL = 1e-17
PRECISION_TARGET = 1e-12
SERIES_HARD_CAP = 4000


@dataclass(frozen=True)
class BesselParams:
    """Parameters of I_lambda / J_lambda and of the integral representation.

    ``k=None`` lets :func:`bessel_integral` pick the smallest k with
    Re(lambda) + k >= 2n/r.
    """

    algebra: Algebra
    lam: complex
    k: int | None = None
    kind: str = "I"

    def __post_init__(self):
        if self.kind not in ("I", "J"):
            raise ValueError("kind must be 'I' or 'J'")
        if self.k is not None and self.k < 0:
            raise ValueError("k must be nonnegative")

    @property
    def rank(self) -> int:
        return rank_lambda(self.lam, self.algebra)

    def resolved_k(self) -> int:
        alg = self.algebra
        crit = 2 * alg.n / alg.r
        lam_re = complex(self.lam).real
        if self.k is None:
            return max(0, math.ceil(crit - lam_re - 1e-12))
        if lam_re + self.k <= crit - 1:
            raise ParameterOutOfRange(
                f"Re(lambda)+k = {lam_re + self.k:g} must exceed 2n/r-1 = {crit - 1:g}"
            )
        return self.k


@dataclass
class EvalResult:
    """A value with an error certificate (tail bound or MC standard error)."""

    value: complex
    error: float
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "value": {"re": float(np.real(self.value)), "im": float(np.imag(self.value))},
            "error": float(self.error),
            "meta": self.meta,
        }


# --------------------------------------------------------------------------
# variety membership

def variety_rank(z: Element) -> int:
    """Number of numerically nonzero singular values."""
    t = coords_singular_values(z.algebra, np.asarray(z.coords, dtype=complex)[None])[0]
    t1 = t[0]
    cut = 1e-14 if t1 < 1e-4 else 1e-10 * t1
    return int(np.sum(t > cut))


def check_variety(z: Element, l: int):
    if variety_rank(z) > l:
        raise ArgumentOffVariety(
            f"argument has {variety_rank(z)} nonzero singular values; rank lambda is {l}"
        )


# --------------------------------------------------------------------------
# series

def _lattice_gap(lam: complex, rank: int, d: float) -> float:
    """min |lam - j d/2 + p| over admissible rows j < rank and p >= 0."""
    best = math.inf
    for j in range(rank):
        c = complex(lam) - j * d / 2
        if c.real >= 0:
            best = min(best, abs(c))
        else:
            for p in (math.floor(-c.real), math.ceil(-c.real)):
                best = min(best, abs(c + p))
    return best


class _PochLogs:
    """log (lam)_m for partitions, from per-row cumulative logs."""

    def __init__(self, lam: complex, r: int, d: float):
        self.lam, self.r, self.d = lam, r, d
        self.table = poch_log_table(lam, r, d, 64)
        self.min_cache: dict = {}

    def __call__(self, m: Partition) -> complex:
        need = m[0] if m.parts else 0
        if need >= self.table.shape[1]:
            self.table = poch_log_table(self.lam, self.r, self.d, max(2 * need, need + 64))
        return sum(self.table[j, v] for j, v in enumerate(m.parts))


def series_from_eigs(alg: Algebra, lam: complex, mu: np.ndarray, rank: int | None = None,
                     max_weight: int | None = None, high_precision: bool = True) -> tuple:
    """Sum_m C_m(mu)/(|m|! (lam)_m) for a stack of eigenvalue vectors.

    Parameters
    ----------
    mu : (N, r) complex
        Jordan eigenvalues of the arguments.
    rank : int, optional
        Restrict to partitions of length <= rank (default rank lambda).
    max_weight : int, optional
        Truncation weight; default runs until the certified tail is negligible.

    Returns
    -------
    values, errors, meta
    """
    mu = np.atleast_2d(np.asarray(mu, dtype=complex))
    npts, r = mu.shape
    d = alg.d
    rank = rank_lambda(lam, alg) if rank is None else rank
    cap = SERIES_HARD_CAP if max_weight is None else max_weight
    s = np.max(np.abs(mu), axis=1)
    S = np.sum(np.abs(mu), axis=1)
    pos = s > 0
    logs = np.where(pos, np.log(np.where(pos, s, 1.0)), 0.0)
    logS = np.where(pos, np.log(np.where(pos, S, 1.0)), -np.inf)
    y = mu / np.where(pos, s, 1.0)[:, None]
    gap = _lattice_gap(lam, rank, d)
    plog = _PochLogs(lam, r, d)

    total = np.ones(npts, dtype=complex)
    abssum = np.ones(npts)
    tail = np.zeros(npts)
    k_used = 0
    if np.any(pos):
        for k in range(1, cap + 1):
            parts, vals = graded_C(r, d, y, k, max_len=rank)
            if not parts:
                tail[:] = 0
                break
            lp = np.array([plog(m) for m in parts])
            if np.any(~np.isfinite(lp.real)):
                bad = parts[int(np.argmax(~np.isfinite(lp.real)))]
                raise PochhammerZero(f"(lambda)_m = 0 for admissible m = {bad.parts}")
            logc = k * logs[:, None] - math.lgamma(k + 1) - lp[None, :]
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                terms = vals * np.exp(logc)
                terms[~pos] = 0
            total += terms.sum(axis=1)
            abssum += np.abs(terms).sum(axis=1)
            k_used = k
            # the term bound tail is only worth computing once the terms are small
            if np.all(np.abs(terms).sum(axis=1) <= SERIES_TOL * abssum):
                with np.errstate(over="ignore", under="ignore"):
                    tail = np.exp(_log_tail(plog, rank, k, logS, gap))
                tail[~pos] = 0
                if np.all(tail <= SERIES_TOL * abssum):
                    break
            else:
                tail[:] = np.inf
                tail[~pos] = 0
    rounding = 8 * EPS * abssum * math.sqrt(k_used + 1)
    meta = {"max_weight_used": k_used, "high_precision_points": 0}
    values = total
    if high_precision and r <= 2:
        mag = np.maximum(np.abs(total), 1e-300)
        redo = np.nonzero(rounding > PRECISION_TARGET * mag)[0]
        for i in redo:
            # the float sum may be pure noise; refine the loss estimate until stable
            est = mag[i]
            for _ in range(6):
                dps = int(20 + max(0.0, math.log10(abssum[i] / est)))
                # extend the truncation so the tail is small against the value itself
                kk, logt = k_used, math.log(max(tail[i], 1e-300))
                goal = math.log(SERIES_TOL * max(est, abssum[i] * 10.0 ** (-dps + 3)))
                while logt > goal and kk < k_used + 400:
                    kk += 5
                    logt = float(_log_tail(plog, rank, kk, logS[i:i + 1], gap)[0])
                val = _series_mp(alg, lam, mu[i], rank, kk, dps)
                if abs(val) >= 0.1 * est or abs(val) == 0:
                    break
                est = abs(val)
            values[i] = val
            tail[i] = math.exp(logt)
            rounding[i] = abssum[i] * 10.0 ** (-dps + 3)
        meta["high_precision_points"] = int(len(redo))
    return values, tail + rounding, meta


def _series_mp(alg: Algebra, lam: complex, mu: np.ndarray, rank: int, K: int, dps: int) -> complex:
    """The same truncated series in multiprecision (rank <= 2)."""
    if alg.r == 1:
        with mpmath.workdps(dps):
            return complex(mpmath.hyp0f1(mpmath.mpmathify(complex(lam)), mpmath.mpmathify(complex(mu[0]))))
    with gmpy2.context(gmpy2.get_context(), precision=int(dps * 3.33) + 16):
        lam_mp = gmpy2.mpc(complex(lam))
        beta = gmpy2.mpfr(alg.d) / 2
        m0, m1 = gmpy2.mpc(complex(mu[0])), gmpy2.mpc(complex(mu[1]))
        e1, e2 = m0 + m1, m0 * m1
        # H_j = (j + beta) G_j with G_j from the Gegenbauer recurrence
        G = [gmpy2.mpc(1)]
        prev = gmpy2.mpc(0)
        for i in range(K):
            nxt = (e1 * (i + beta) * G[-1] - e2 * (i - 1 + 2 * beta) * prev) / (i + 1)
            prev = G[-1]
            G.append(nxt)
        H = [(j + beta) * g for j, g in enumerate(G)]
        # A_s = 1/(Gamma(s+1+beta) (lam)_s),  B_l = e2^l / (l! (lam-beta)_l)
        A = [1 / gmpy2.gamma(1 + beta)]
        for s_ in range(K):
            A.append(A[-1] / ((s_ + 1 + beta) * (lam_mp + s_)))
        lmax = K // 2 if rank >= 2 else 0
        B = [gmpy2.mpc(1)]
        for l in range(lmax):
            B.append(B[-1] * e2 / ((l + 1) * (lam_mp - beta + l)))
        acc = gmpy2.mpc(0)
        for l in range(lmax + 1):
            inner = gmpy2.mpc(0)
            for j in range(K - 2 * l + 1):
                inner += H[j] * A[j + l]
            acc += inner * B[l]
        return complex(acc * gmpy2.gamma(beta))


def _log_min_poch(plog, rank: int, k: int) -> float:
    key = (rank, k)
    if key not in plog.min_cache:
        plog.min_cache[key] = min(plog(m).real for m in partitions_of(k, rank))
    return plog.min_cache[key]


TAIL_STEPS = 4000


def _log_tail(plog, rank: int, k: int, logS: np.ndarray, gap: float) -> np.ndarray:
    """log of sum_{j>k} S^j/(j! min_{|m|=j} |(lam)_m|), which dominates the series tail.

    The terms are summed exactly until they are negligible; the remainder
    is bounded geometrically, by the lattice-gap ratio S/((j+1) gap) when
    that is below one (rigorous) and otherwise by the last observed ratio.
    """
    logS = np.asarray(logS, dtype=float)
    acc = np.full(logS.shape, -np.inf)
    prev = None
    done = ~np.isfinite(logS)
    out = np.where(done, -np.inf, np.inf)
    for j in range(k + 1, k + TAIL_STEPS):
        logb = j * logS - math.lgamma(j + 1) - _log_min_poch(plog, rank, j)
        acc = np.logaddexp(acc, logb)
        if prev is not None:
            with np.errstate(invalid="ignore"):
                ratio = logb - prev
            fin = (~done) & (ratio < 0) & (logb < acc - 40)
            if np.any(fin):
                with np.errstate(divide="ignore", over="ignore"):
                    lr_gap = logS - math.log((j + 1) * gap)
                lr = np.where(lr_gap < 0, lr_gap, ratio)
                rem = logb + lr - np.log1p(-np.exp(lr))
                out = np.where(fin, np.logaddexp(acc, rem), out)
                done |= fin
            if np.all(done):
                break
        prev = logb
    return out


def bessel_series(params: BesselParams, z: Element, max_weight: int | None = None) -> EvalResult:
    """I_lambda(z) (or J_lambda(z) = I_lambda(-z)) by the restricted series."""
    alg = z.algebra
    if params.algebra != alg:
        raise AlgebraMismatch("parameters and argument use different algebras")
    rank = params.rank
    check_variety(z, rank)
    arg = z.coords if params.kind == "I" else -np.asarray(z.coords)
    mu = coords_eigenvalues(alg, np.asarray(arg, dtype=complex)[None])
    vals, errs, meta = series_from_eigs(alg, params.lam, mu, rank, max_weight)
    meta.update({"method": "series", "rank_lambda": rank})
    return EvalResult(complex(vals[0]), float(errs[0]), meta)


def bessel_series_many(params: BesselParams, coords: np.ndarray, max_weight: int | None = None):
    """Vectorized series for a stack of arguments (no variety check)."""
    alg = params.algebra
    arg = np.asarray(coords, dtype=complex)
    if params.kind == "J":
        arg = -arg
    mu = coords_eigenvalues(alg, arg)
    return series_from_eigs(alg, params.lam, mu, params.rank, max_weight)


def classical_tilde_I(nu: float, x):
    """(x/2)^{-nu} I_nu(x), extended continuously to x=0."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 1e-300
    out[small] = 1 / sc.gamma(nu + 1)
    xs = x[~small]
    out[~small] = np.exp(np.abs(xs) - nu * np.log(xs / 2)) * sc.ive(nu, xs)
    return out


def bessel_rank1(lam: complex, z: Element, kind: str = "I") -> complex:
    """I_lambda(z) = Gamma(lam) tilde I_{lam-1}(2 sqrt(tr z)) for rank-one z.

    Evaluated through the classical confluent limit function 0F1(; lam; tr z).
    """
    check_variety(z, 1)
    mu = complex(np.asarray(z.coords) @ trace_vector(z.algebra))
    if kind == "J":
        mu = -mu
    if mu.imag == 0 and complex(lam).imag == 0:
        return complex(sc.hyp0f1(complex(lam).real, mu.real))
    return complex(mpmath.hyp0f1(complex(lam), mu))


# --------------------------------------------------------------------------
# the 1F1 polynomial and the D^(k) coefficients

def _pair_C(alg: Algebra, E: np.ndarray, k: int, max_len: int):
    """C_m at the pair spectrum given by elementary symmetric functions E (N, r)."""
    from .jordan import eigen_from_elementary
    from .spherical import graded_C_rank2

    E = np.atleast_2d(np.asarray(E, dtype=complex))
    if alg.r == 1:
        return [Partition((k,)) if k else Partition()], E[:, :1] ** k
    if alg.r == 2:
        return graded_C_rank2(E[:, 0], E[:, 1], alg.d, k, max_len)
    return graded_C(alg.r, alg.d, eigen_from_elementary(E), k, max_len)


def _admissible(alg: Algebra, lam: complex, k: int, rank: int):
    """(m, (-k)_m/(lam)_m) for the nonzero terms of 1F1(-k, lam; .)."""
    out = []
    for w in range(alg.r * k + 1):
        for m in partitions_of(w, rank):
            mk = m.padded(alg.r)
            num = poch_general(-k, mk, alg.d)
            if num == 0:
                continue
            den = poch_general(lam, mk, alg.d)
            if den == 0:
                raise PochhammerZero(f"(lambda)_m = 0 for m = {m.parts}")
            out.append((m, num / den))
    return out


def one_F1(k: int, lam: complex, x: Element, w: Element) -> complex:
    """1F1(-k, lam; x, w) = sum_m (-k)_m/(lam)_m K^m(x, w), m_{rank lam + 1} = 0."""
    alg = x.algebra
    if w.algebra != alg:
        raise AlgebraMismatch("arguments use different algebras")
    rank = rank_lambda(lam, alg)
    E = pair_elementary(alg, np.asarray(x.coords)[None], np.asarray(w.coords)[None])
    acc = 0j
    coeffs = dict((m, c) for m, c in _admissible(alg, lam, k, rank))
    for wt in range(alg.r * k + 1):
        parts, vals = _pair_C(alg, E, wt, rank)
        for m, v in zip(parts, vals[0]):
            if m in coeffs:
                acc += coeffs[m] * v / math.factorial(wt)
    return complex(acc)


def dk_exp_coeffs(k: int, lam: complex, x: Element, y: Element) -> tuple:
    """Coefficient of e^{(x|y)} in D^(k)(lam) e^{(x|y)}.

    Returns ``(general, reduced)`` where ``general`` is
    sum_m (-1)^{|m|} (-k)_m (lam+m)_{k-m} K^m(x, y) and ``reduced`` is
    (lam)_k 1F1(-k, lam; -x, y), or None when some (lam)_m vanishes.
    """
    alg = x.algebra
    r, d = alg.r, alg.d
    E = pair_elementary(alg, np.asarray(x.coords)[None], np.asarray(y.coords)[None])
    general = 0j
    for wt in range(r * k + 1):
        parts, vals = _pair_C(alg, E, wt, r)
        for m, v in zip(parts, vals[0]):
            mk = m.padded(r)
            c1 = poch_general(-k, mk, d)
            if c1 == 0:
                continue
            shifted = np.asarray(lam, dtype=complex) + np.asarray(mk)
            c2 = poch_general(shifted, [k - v_ for v_ in mk], d)
            general += (-1) ** wt * c1 * c2 * v / math.factorial(wt)
    reduced = None
    if all(poch_general(lam, m.padded(r), d) != 0 for w_ in range(r * k + 1) for m in partitions_of(w_, r)):
        reduced = poch_general(lam, [k] * r, d) * one_F1(k, lam, -x, y)
    return complex(general), reduced


def one_F1_poly2(alg: Algebra, lam: complex, k: int, rank: int) -> np.ndarray:
    """1F1(-k, lam; .) as F[p, q] coefficients of e1^p e2^q (r <= 2)."""
    terms = _admissible(alg, lam, k, rank)
    deg = alg.r * k
    F = np.zeros((deg + 1, deg // 2 + 1 if alg.r == 2 else 1), dtype=complex)
    if alg.r == 1:
        for m, c in terms:
            F[m.weight, 0] += c / math.factorial(m.weight)
        return F
    beta = alg.d / 2
    # Gegenbauer polynomials G_j(e1, e2) as coefficient arrays
    G = [np.zeros_like(F) for _ in range(deg + 1)]
    G[0][0, 0] = 1
    for i in range(deg):
        nxt = np.zeros_like(F)
        nxt[1:, :] += (i + beta) * G[i][:-1, :]
        if i >= 1:
            nxt[:, 1:] -= (i - 1 + 2 * beta) * G[i - 1][:, :-1]
        G[i + 1] = nxt / (i + 1)
    for m, c in terms:
        l, j = m[1], m[0] - m[1]
        wt = m.weight
        lognorm = (math.lgamma(wt + 1) - math.lgamma(l + 1) + math.log(j + beta)
                   + math.lgamma(beta) - math.lgamma(j + l + 1 + beta))
        shifted = np.zeros_like(F)
        shifted[:, l:] = G[j][:, : F.shape[1] - l]
        F += c * math.exp(lognorm - math.lgamma(wt + 1)) * shifted
    return F


# --------------------------------------------------------------------------
# sampling D

SAMPLERS = ("sobol-ball", "sobol-box", "random-ball", "random-box")


@dataclass(frozen=True)
class MCSpec:
    """Monte-Carlo budget.  Identical specs give bit-identical estimates."""

    samples: int = 2 ** 20
    seed: int = 0
    sampler: str = "sobol-ball"
    chunk: int = 2 ** 16
    replicates: int = 16

    def __post_init__(self):
        if self.sampler not in SAMPLERS:
            raise ValueError(f"sampler must be one of {SAMPLERS}")
        if self.samples < self.replicates or self.replicates < 2:
            raise ValueError("need at least two replicates and one sample each")

    @property
    def per_replicate(self) -> int:
        return -(-self.samples // self.replicates)


def region_volume(alg: Algebra, sampler: str) -> float:
    """Volume of the enclosing region in R^{2n} (radius / half-width sqrt(r))."""
    n, r = alg.n, alg.r
    if sampler.endswith("ball"):
        return math.exp(n * math.log(math.pi * r) - math.lgamma(n + 1))
    return (2 * math.sqrt(r)) ** (2 * n)


def _raw_chunks(alg: Algebra, mc: MCSpec, replicate: int,
                radial_power: float | None = None) -> Iterator[np.ndarray]:
    """Points of the enclosing region for one replicate, (m, 2n) real.

    With ``radial_power=q`` (V = R and a ball sampler only) the points follow
    the density proportional to (1 - |w|^2)^q on the unit disk instead.
    """
    dim = 2 * alg.n
    seed = np.random.SeedSequence(mc.seed).spawn(mc.replicates)[replicate]
    ball = mc.sampler.endswith("ball")
    udim = dim + 1 if ball else dim
    if mc.sampler.startswith("sobol"):
        engine = qmc.Sobol(udim, scramble=True, seed=np.random.default_rng(seed))
        draw = engine.random
    else:
        gen = np.random.default_rng(seed)
        draw = lambda m: gen.random((m, udim))  # noqa: E731
    rad = math.sqrt(alg.r)
    left = mc.per_replicate
    import warnings

    while left > 0:
        m = min(mc.chunk, left)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            u = draw(m)
        if ball:
            g = sc.ndtri(np.clip(u[:, :dim], 1e-16, 1 - 1e-16))
            g /= np.linalg.norm(g, axis=1, keepdims=True)
            if radial_power is None:
                radius = rad * u[:, dim:] ** (1.0 / dim)
            else:
                radius = np.sqrt(-np.expm1(np.log1p(-u[:, dim:]) / (radial_power + 1)))
            pts = g * radius
        else:
            pts = (2 * u - 1) * rad
        yield pts
        left -= m


def _in_D_raw(alg: Algebra, W: np.ndarray) -> np.ndarray:
    n = alg.n
    w = W[:, :n] + 1j * W[:, n:]
    return coords_singular_values(alg, w)[:, 0] < 1.0


def sample_D(alg: Algebra, mc: MCSpec) -> Iterator[tuple]:
    """Stream of (points of D as (m, n) complex coords, weight per point).

    The weight is region volume / number of region draws, so summing
    f(w) * weight over the stream estimates the integral of f over D.
    """
    vol = region_volume(alg, mc.sampler)
    total = mc.per_replicate * mc.replicates
    for rep in range(mc.replicates):
        for W in _raw_chunks(alg, mc, rep):
            ok = _in_D_raw(alg, W)
            yield W[ok, : alg.n] + 1j * W[ok, alg.n:], vol / total


def default_workers() -> int:
    env = os.environ.get("CONE_BESSEL_THREADS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


# --------------------------------------------------------------------------
# the integral representation

def _generic_accumulate(alg, W, a, b, p, lam, k, rank):
    """Integrand sums for r >= 3 (numpy, batched linear algebra)."""
    n = alg.n
    w = W[:, :n] + 1j * W[:, n:]
    t = coords_singular_values(alg, w)
    ok = t[:, 0] < 1.0
    w, t, wr = w[ok], t[ok], W[ok, :n]
    h = np.prod(1 - t * t, axis=1)
    f = np.exp(p * np.log(np.maximum(h, 1e-300)) + wr @ b)
    if np.any(a != 0):
        E = pair_elementary(alg, np.broadcast_to(a, w.shape), w)
        poly = np.zeros(len(w), dtype=complex)
        coeffs = dict(_admissible(alg, lam, k, rank))
        for wt in range(alg.r * k + 1):
            parts, vals = _pair_C(alg, E, wt, rank)
            for i, m in enumerate(parts):
                if m in coeffs:
                    poly += coeffs[m] * vals[:, i] / math.factorial(wt)
        f = f * poly
    return float(f.real.sum()), float(f.imag.sum()), float(np.sum(np.abs(f) ** 2)), int(ok.sum())


def bessel_integral(params: BesselParams, x: Element, mc: MCSpec = MCSpec(),
                    workers: int | None = None) -> EvalResult:
    """I_lambda(x^2) (or J_lambda(x^2)) from the integral over D.

    I_lambda(x^2) = c_{lambda+k} int_D 1F1(-k, lambda; -x, w) e^{2(x|Re w)}
    h(w, w)^{lambda+k-2n/r} dw, with J obtained by x -> i x.
    """
    alg = x.algebra
    if params.algebra != alg:
        raise AlgebraMismatch("parameters and argument use different algebras")
    k = params.resolved_k()
    rank = params.rank
    check_variety(x, rank)
    lam = params.lam
    xc = np.asarray(x.coords, dtype=complex)
    if params.kind == "J":
        xc = 1j * xc
    a = -xc
    delta_a = complex(coords_det(alg, a[None])[0]) if alg.r == 2 else 0j
    b = 2 * xc
    p = complex(lam) + k - 2 * alg.n / alg.r
    const = complex(c_lambda(complex(lam) + k, alg))
    vol = region_volume(alg, mc.sampler)
    radial = None
    if alg.r == 1 and mc.sampler.endswith("ball"):
        # sample the disk with density ~ h^{Re p}: removes the boundary singularity
        radial = p.real
        vol = math.pi / (radial + 1)
        p = 1j * p.imag
    if alg.r <= 2:
        F = one_F1_poly2(alg, lam, k, rank)
        tau = np.asarray(trace_vector(alg), dtype=float)

        def run(rep):
            acc = np.zeros(4)
            for W in _raw_chunks(alg, mc, rep, radial):
                acc += kernels.mc_accumulate(W, a, delta_a, b, tau, alg.r, p, F)
            return acc
    else:
        def run(rep):
            acc = np.zeros(4)
            for W in _raw_chunks(alg, mc, rep):
                acc += _generic_accumulate(alg, W, a, b, p, lam, k, rank)
            return acc

    workers = workers or default_workers()
    reps = range(mc.replicates)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, mc.replicates)) as pool:
            sums = list(pool.map(run, reps))
    else:
        sums = [run(rep) for rep in reps]
    sums = np.array(sums)
    m = mc.per_replicate
    ests = const * vol * (sums[:, 0] + 1j * sums[:, 1]) / m
    value = complex(ests.mean())
    sigma = float(np.sqrt((np.abs(ests - value) ** 2).sum() / (mc.replicates - 1) / mc.replicates))
    meta = {
        "method": "integral",
        "k": k,
        "rank_lambda": rank,
        "samples": m * mc.replicates,
        "accepted": int(sums[:, 3].sum()),
        "acceptance": float(sums[:, 3].sum() / (m * mc.replicates)),
        "sampler": mc.sampler,
        "seed": mc.seed,
        "replicates": mc.replicates,
        "backend": kernels.BACKEND if alg.r <= 2 else "python",
    }
    return EvalResult(value, sigma, meta)


def domain_volume(alg: Algebra, mc: MCSpec = MCSpec()) -> EvalResult:
    """Lebesgue volume of D with a replicate standard error."""
    vol = region_volume(alg, mc.sampler)
    counts = []
    for rep in range(mc.replicates):
        counts.append(sum(int(_in_D_raw(alg, W).sum()) for W in _raw_chunks(alg, mc, rep)))
    ests = vol * np.array(counts) / mc.per_replicate
    return EvalResult(float(ests.mean()), float(ests.std(ddof=1) / math.sqrt(mc.replicates)),
                      {"acceptance": float(np.sum(counts) / (mc.per_replicate * mc.replicates))})


# --------------------------------------------------------------------------
# oracle along the tube contour (V = R)

def tube_contour_oracle(lam: float, x: float, alg: Algebra | None = None) -> complex:
    """I_lambda(x) = Gamma(lam)/(2 pi i) int_{1+iR} e^w e^{x/w} w^{-lam} dw  (V = R).

    The contour integral is folded onto (0, inf) and evaluated with
    Fourier-weighted quadrature, which also handles lam <= 1 where the
    integrand decays only algebraically.
    """
    from scipy.integrate import quad

    if alg is not None and alg.n != 1:
        raise UnsupportedAlgebra("the tube-contour oracle is implemented for V = R only")
    if lam <= 0:
        raise ParameterOutOfRange("lambda must be positive")
    x = float(x)

    def g(v):
        w = 1 + 1j * v
        return np.exp(x / w - lam * np.log(w))

    head = 40.0
    re_h = quad(lambda v: (np.exp(1j * v) * g(v)).real, 0, head, limit=400, epsabs=1e-14, epsrel=1e-13)[0]
    c_t = quad(lambda v: g(v + head).real, 0, np.inf, weight="cos", wvar=1.0, epsabs=1e-14)[0]
    s_t = quad(lambda v: g(v + head).imag, 0, np.inf, weight="sin", wvar=1.0, epsabs=1e-14)[0]
    s_re = quad(lambda v: g(v + head).real, 0, np.inf, weight="sin", wvar=1.0, epsabs=1e-14)[0]
    c_im = quad(lambda v: g(v + head).imag, 0, np.inf, weight="cos", wvar=1.0, epsabs=1e-14)[0]
    # Re(e^{i(v+head)} g) = cos(v+head) Re g - sin(v+head) Im g
    ch, sh = math.cos(head), math.sin(head)
    tail = ch * c_t - sh * s_re - (sh * c_im + ch * s_t)
    total = 2 * (re_h + tail)
    return complex(math.e * total * math.gamma(lam) / (2 * math.pi))


# --------------------------------------------------------------------------
# growth bound verification

def _jordan_square_coords(alg: Algebra, C: np.ndarray) -> np.ndarray:
    from .jordan import structure_tensor

    return np.einsum("ni,nj,ijk->nk", C, C, structure_tensor(alg))


def random_on_variety(alg: Algebra, rank: int, rng: np.random.Generator, count: int,
                      l1_max: float = 20.0, kinds=("real", "imag", "mixed")) -> np.ndarray:
    """Random points of the variety X_rank with |x|_1 uniform in [0, l1_max].

    Returns complex coordinates (count, n); the three kinds cycle.
    """
    from .jordan import Element, spectral

    out = np.empty((count, alg.n), dtype=complex)
    for i in range(count):
        kind = kinds[i % len(kinds)]
        a = alg.random(rng)
        if rank < alg.r:
            sd = spectral(a)
            keep = np.argsort(-np.abs(sd.values))[:rank]
            a = Element(alg, sum(sd.values[j] * sd.frame[j].coords for j in keep))
        c = np.asarray(a.coords, dtype=complex)
        if kind == "imag":
            c = 1j * c
        elif kind == "mixed":
            if rank < alg.r:
                c = c * np.exp(1j * rng.uniform(0, 2 * np.pi))
            else:
                c = c + 1j * alg.random(rng).coords
        norm1 = np.sum(coords_singular_values(alg, c[None])[0])
        target = rng.uniform(0, l1_max)
        out[i] = c * (target / norm1 if norm1 > 0 else 0.0)
    return out


def upper_bound_check(params: BesselParams, sample_count: int, rng: np.random.Generator,
                      l1_max: float = 20.0, grid: int = 41, csv_rows: list | None = None) -> dict:
    """Calibrate C* on one sample and test R(x) <= C* on a disjoint one.

    R(x) = |I_lambda(x^2)| / ((1 + |x|_1^{rk}) e^{2 |Re x|_1}) for kind I and
    the same with |Im x|_1 for kind J.  The calibration set also contains
    x = 0 and a deterministic ray grid along the frame.  With ``csv_rows``
    a list, (set, |x|_1, |I|, envelope, ratio) rows are appended to it.
    """
    alg = params.algebra
    k = params.resolved_k()
    rank = params.rank
    rk = alg.r * k

    def ratios(C, label):
        sq = _jordan_square_coords(alg, C)
        vals, errs, meta = bessel_series_many(params, sq)
        t = coords_singular_values(alg, C)
        l1 = t.sum(axis=1)
        part = C.imag if params.kind == "J" else C.real
        expo = 2 * coords_singular_values(alg, part.astype(complex)).sum(axis=1)
        denom_log = np.log1p(l1 ** rk) + expo
        if csv_rows is not None:
            env = np.exp(denom_log)
            csv_rows.extend((label, a, b, c, b / c) for a, b, c in zip(l1, np.abs(vals), env))
        return np.abs(vals) * np.exp(-denom_log), errs * np.exp(-denom_log), meta

    ray = np.linspace(0, l1_max, grid)
    frame = np.zeros(alg.n)
    frame[:] = alg.frame()[0].coords
    det_grid = np.concatenate([np.outer(ray, frame), 1j * np.outer(ray, frame)]).astype(complex)
    calib = np.concatenate([np.zeros((1, alg.n), dtype=complex), det_grid,
                            random_on_variety(alg, rank, rng, sample_count, l1_max)])
    valid = random_on_variety(alg, rank, rng, sample_count, l1_max)
    r_cal, e_cal, m_cal = ratios(calib, "calibration")
    r_val, e_val, m_val = ratios(valid, "validation")
    c_star = float(np.max(r_cal))
    slack = c_star * (1 + 1e-9)
    viol = int(np.sum(r_val > slack))
    return {
        "algebra": alg.name,
        "lambda": [float(np.real(params.lam)), float(np.imag(params.lam))],
        "k": k,
        "kind": params.kind,
        "rank_lambda": rank,
        "n_calibration": int(len(calib)),
        "n_validation": int(len(valid)),
        "C_star": c_star,
        "calibration_argmax_l1": float(coords_singular_values(alg, calib[[int(np.argmax(r_cal))]]).sum()),
        "validation_max": float(np.max(r_val)),
        "violations": viol,
        "max_ratio_error": float(max(np.max(e_cal), np.max(e_val))),
        "high_precision_points": m_cal["high_precision_points"] + m_val["high_precision_points"],
        "passed": bool(np.isfinite(c_star) and viol == 0),
    }


def j_sup_check(lam: float, x_max: float = 50.0, points: int = 2001) -> dict:
    """sup |J_lambda(x^2)| over real x in [0, x_max] for V = R."""
    alg = Algebra.real_line()
    xs = np.linspace(0, x_max, points)
    params = BesselParams(alg, lam, kind="J")
    vals, errs, _ = bessel_series_many(params, (xs ** 2)[:, None].astype(complex))
    mags = np.abs(vals)
    i = int(np.argmax(mags))
    far = mags[xs >= x_max / 2].max()
    return {
        "lambda": lam,
        "sup": float(mags[i]),
        "argmax": float(xs[i]),
        "max_on_outer_half": float(far),
        "max_error": float(np.max(errs)),
        "passed": bool(np.isfinite(mags[i]) and xs[i] < x_max and far <= mags[i]),
    }
