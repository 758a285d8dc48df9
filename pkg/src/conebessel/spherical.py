"""Partitions, generalized Pochhammer symbols and spherical polynomials.

Spherical polynomials are evaluated through Jack polynomials ``C_m`` with
parameter ``alpha = 2/d`` in the C-normalization, using

    d_m / (n/r)_m * Phi_m(x) = C_m(eigenvalues of x) / |m|!

Rank-two tables come from a closed form (a Gegenbauer-type recurrence in
``e1 = x1 + x2`` and ``e2 = x1 x2``); other ranks solve the Laplace-Beltrami
eigen-equation on monomial symmetric functions.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.special import loggamma

from .errors import NonIntegerDimension, PochhammerZero, PoleHit, WeightTooLarge
from .jordan import Algebra, Element, coords_eigenvalues, pair_elementary

DEFAULT_MAX_WEIGHT = 40
LATTICE_TOL = 1e-12
POLE_TOL = 1e-8


@dataclass(frozen=True)
class Partition:
    """Nonincreasing tuple of nonnegative integers, trailing zeros dropped."""

    parts: tuple

    def __init__(self, parts: Iterable[int] = ()):
        p = tuple(int(v) for v in parts)
        if any(v < 0 for v in p) or any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"not a partition: {p}")
        while p and p[-1] == 0:
            p = p[:-1]
        object.__setattr__(self, "parts", p)

    def __repr__(self):
        return f"Partition{self.parts}"

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i] if i < len(self.parts) else 0

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def padded(self, r: int) -> tuple:
        if self.length > r:
            raise ValueError(f"{self} has more than {r} parts")
        return self.parts + (0,) * (r - self.length)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for v in self.parts if v > j) for j in range(self.parts[0]))

    def cells(self):
        """(arm, leg, i, j) for every box, 0-based coordinates."""
        conj = self.conjugate().parts
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield row - j - 1, conj[j] - i - 1, i, j


def partitions_of(k: int, r: int) -> list[Partition]:
    """Partitions of k with at most r parts, descending lexicographic order."""
    out = []

    def rec(rem, maxpart, slots, acc):
        if rem == 0:
            out.append(Partition(acc))
            return
        if slots == 0:
            return
        for first in range(min(rem, maxpart), 0, -1):
            if first * slots < rem:
                break
            rec(rem - first, first, slots - 1, acc + (first,))

    rec(k, k, r, ())
    return out


def partitions_upto(r: int, K: int) -> list[Partition]:
    """All partitions with length <= r and weight <= K, graded by weight."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    return [m for k in range(K + 1) for m in partitions_of(k, r)]


# --------------------------------------------------------------------------
# Pochhammer symbols and the Gindikin gamma function

def _shifted(s, length: int, d: float) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    if s.ndim == 0:
        s = np.full(length, complex(s))
    if s.shape[0] < length:
        raise ValueError("parameter vector shorter than index")
    return s[:length] - d / 2 * np.arange(length)


def poch_general(s, m: Sequence[int], d: float) -> complex:
    """(s)_m = prod_j (s_j - (j-1)d/2)_{m_j} for any nonnegative index vector."""
    m = tuple(m)
    base = _shifted(s, len(m), d)
    out = 1.0 + 0j
    for b, mj in zip(base, m):
        for i in range(mj):
            out *= b + i
    return out


def poch_log(s, m: Sequence[int], d: float) -> complex:
    """log (s)_m as a sum of principal logarithms."""
    m = tuple(m)
    base = _shifted(s, len(m), d)
    acc = 0j
    for b, mj in zip(base, m):
        if mj:
            f = b + np.arange(mj)
            if np.any(np.abs(f) == 0):
                raise PochhammerZero(f"(s)_m vanishes for m={m}")
            acc += np.sum(np.log(f))
    return acc


def poch_log_table(lam: complex, r: int, d: float, K: int) -> np.ndarray:
    """L[j, p] = log (lam - j d/2)_p for p <= K; -inf-real entries where zero."""
    out = np.empty((r, K + 1), dtype=complex)
    for j in range(r):
        f = complex(lam) - j * d / 2 + np.arange(K)
        with np.errstate(divide="ignore"):
            logs = np.log(f.astype(complex))
        out[j, 0] = 0
        out[j, 1:] = np.cumsum(logs)
    return out


def _check_pole(v: complex):
    if abs(v.imag) < POLE_TOL and v.real < POLE_TOL and abs(v.real - round(v.real)) < POLE_TOL:
        raise PoleHit(f"Gamma pole at {v}")


def gindikin_gamma_log(s, algebra: Algebra) -> complex:
    """log Gamma_Omega(s) = (n-r)/2 log(2 pi) + sum_j log Gamma(s_j - (j-1)d/2)."""
    base = _shifted(s, algebra.r, algebra.d)
    for b in base:
        _check_pole(complex(b))
    return (algebra.n - algebra.r) / 2 * math.log(2 * math.pi) + complex(np.sum(loggamma(base)))


def gindikin_gamma(s, algebra: Algebra) -> complex:
    return complex(np.exp(gindikin_gamma_log(s, algebra)))


def c_lambda(lam: complex, algebra: Algebra) -> complex:
    """Gamma_Omega(lam) / (pi^n Gamma_Omega(lam - n/r))."""
    lg = gindikin_gamma_log(lam, algebra) - gindikin_gamma_log(lam - algebra.n / algebra.r, algebra)
    val = np.exp(lg - algebra.n * math.log(math.pi))
    return val.real if np.isreal(lam) else complex(val)


def _on_lattice(lam: complex, shift: float) -> bool:
    v = complex(lam) - shift
    if abs(v.imag) >= LATTICE_TOL:
        return False
    return v.real < LATTICE_TOL and abs(v.real - round(v.real)) < LATTICE_TOL


def rank_lambda(lam: complex, algebra: Algebra) -> int:
    for l in range(algebra.r):
        if _on_lattice(lam, l * algebra.d / 2):
            return l
    return algebra.r


def wallach_member(lam: float, algebra: Algebra) -> bool:
    top = (algebra.r - 1) * algebra.d / 2
    if lam > top:
        return True
    return any(abs(lam - j * algebra.d / 2) < LATTICE_TOL for j in range(algebra.r))


# --------------------------------------------------------------------------
# Jack polynomials

def _alpha(d: int):
    return Fraction(2, d) if d else None


def _log_c_prime(m: Partition, alpha: float) -> float:
    """log prod_cells (alpha a + l + alpha)."""
    return sum(math.log(alpha * a + l + alpha) for a, l, _, _ in m.cells())


def log_jack_C_at_ones(m: Partition, r: int, d: int) -> float:
    """log C_m(1, ..., 1) with r ones."""
    if m.length > r:
        return -math.inf
    if r == 1 or d == 0:
        return 0.0
    alpha = 2.0 / d
    k = m.weight
    acc = k * math.log(alpha) + math.lgamma(k + 1)
    for a, l, i, j in m.cells():
        acc += math.log(r - i + alpha * j) - math.log(alpha * a + l + 1) - math.log(alpha * a + l + alpha)
    return acc


def _rank2_coeffs(k: int, beta: Fraction) -> tuple[list[Partition], list[dict]]:
    """Monomial coefficients of C_m for r=2, exact."""
    parts = partitions_of(k, 2)
    rows = []
    for m in parts:
        l = m[1]
        j = m[0] - l
        # C = N_{j,l} e2^l G_j,  G_j = sum_i (beta)_i (beta)_{j-i}/(i!(j-i)!) x1^i x2^{j-i}
        norm = Fraction(math.factorial(k), math.factorial(l)) * (j + beta) / _rpoch(beta, j + l + 1)
        row = {}
        for i in range(j + 1):
            c = _rpoch(beta, i) * _rpoch(beta, j - i) / (math.factorial(i) * math.factorial(j - i))
            a, b = l + max(i, j - i), l + min(i, j - i)
            key = Partition((a, b))
            row[key] = row.get(key, 0) + norm * c
        # each monomial symmetric m_(a,b), a>b, collects both x1^a x2^b and x1^b x2^a
        for key in row:
            if key[0] != key[1]:
                row[key] /= 2
        rows.append(row)
    return parts, rows


@lru_cache(maxsize=None)
def _rpoch(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def _laplace_matrix(k: int, r: int, alpha):
    """Action of the Laplace-Beltrami type operator on monomial symmetric functions."""
    parts = partitions_of(k, r)
    index = {m.padded(r): i for i, m in enumerate(parts)}
    half = alpha / 2
    cols = []
    for m in parts:
        mu = m.padded(r)
        orbit = set(itertools.permutations(mu))
        out: dict = {}

        def add(expo, c):
            expo = tuple(expo)
            if expo in index:
                out[expo] = out.get(expo, 0) + c

        diag = half * sum(p * (p - 1) for p in mu)
        add(mu, diag)
        for i, j in itertools.combinations(range(r), 2):
            for a in orbit:
                p, q = a[i], a[j]
                if p < q:
                    continue
                rest = list(a)
                if p == q:
                    if p:
                        add(a, p)
                    continue
                # (x_i^2 d_i - x_j^2 d_j)/(x_i - x_j) on x^a + x^{swap(a)}
                for coef, (A, B) in ((p, (p + 1, q)), (-q, (p, q + 1))):
                    if A == B or coef == 0:
                        continue
                    for l in range(A - B):
                        rest[i], rest[j] = A - 1 - l, B + l
                        add(rest, coef)
        cols.append(out)
    return parts, index, cols


def _generic_coeffs(k: int, r: int, alpha, exact: bool):
    """Monomial coefficients of C_m (C-normalized) by a triangular eigen-solve."""
    one = Fraction(1) if exact else 1.0
    al = alpha if exact else float(alpha)
    parts, index, cols = _laplace_matrix(k, r, al)
    keys = [m.padded(r) for m in parts]
    eig = [cols[i].get(keys[i], 0) * one for i in range(len(parts))]
    rows = []
    for ki, kappa in enumerate(parts):
        u = {ki: one}
        for ni in range(ki + 1, len(parts)):
            acc = 0 * one
            key = keys[ni]
            for mi, val in u.items():
                c = cols[mi].get(key)
                if c:
                    acc += c * val
            if acc == 0:
                continue
            gap = eig[ki] - eig[ni]
            if gap == 0:
                raise ArithmeticError("degenerate Jack eigenvalue")
            u[ni] = acc / gap
        # P -> C normalization
        if exact:
            cp = Fraction(1)
            for a, l, _, _ in kappa.cells():
                cp *= al * a + l + al
            scale = al ** k * math.factorial(k) / cp
        else:
            scale = math.exp(k * math.log(al) + math.lgamma(k + 1) - _log_c_prime(kappa, al))
        rows.append({parts[i]: v * scale for i, v in u.items()})
    return parts, rows


class JackTable:
    """Memoized C-normalized Jack coefficients for one (r, d).

    ``coeffs(k)`` returns the partitions of weight k (length <= r) and a
    matrix whose row i expands C_{parts[i]} in the monomial symmetric
    functions m_{parts[j]}.  Weights are built on demand; the table is safe
    for concurrent readers.
    """

    def __init__(self, r: int, d: int, max_weight: int = DEFAULT_MAX_WEIGHT, exact: bool = False):
        self.r, self.d, self.max_weight, self.exact = r, d, max_weight, exact
        self.alpha = _alpha(d)
        self._cache: dict = {}
        self._lock = threading.Lock()

    def _build(self, k: int):
        r = self.r
        if r == 1 or self.alpha is None:
            parts = partitions_of(k, 1) if r == 1 else partitions_of(k, r)
            rows = [{parts[0]: Fraction(1) if self.exact else 1.0}]
        elif r == 2:
            parts, rows = _rank2_coeffs(k, Fraction(self.d, 2))
            if not self.exact:
                rows = [{key: float(v) for key, v in row.items()} for row in rows]
        else:
            parts, rows = _generic_coeffs(k, r, self.alpha, self.exact)
        pos = {m: i for i, m in enumerate(parts)}
        dtype = object if self.exact else float
        mat = np.zeros((len(parts), len(parts)), dtype=dtype)
        if self.exact:
            mat[:] = Fraction(0)
        for i, row in enumerate(rows):
            for key, v in row.items():
                mat[i, pos[key]] = v
        return parts, mat

    def coeffs(self, k: int):
        if k > self.max_weight:
            raise WeightTooLarge(f"|m|={k} exceeds max weight {self.max_weight}")
        hit = self._cache.get(k)
        if hit is None:
            with self._lock:
                hit = self._cache.get(k)
                if hit is None:
                    hit = self._build(k)
                    self._cache[k] = hit
        return hit

    def row(self, m: Partition):
        parts, mat = self.coeffs(m.weight)
        return parts, mat[parts.index(m)]


@lru_cache(maxsize=None)
def jack_table(r: int, d: int, max_weight: int = DEFAULT_MAX_WEIGHT) -> JackTable:
    return JackTable(r, d, max_weight)


def monomial_matrix(parts: Sequence[Partition], points: np.ndarray) -> np.ndarray:
    """M[p, j] = m_{parts[j]}(points[p]) for an (N, r) array of points."""
    points = np.asarray(points)
    r = points.shape[-1]
    out = np.zeros((points.shape[0], len(parts)), dtype=np.result_type(points.dtype, float))
    for j, m in enumerate(parts):
        for expo in set(itertools.permutations(m.padded(r))):
            out[:, j] += np.prod(points ** np.array(expo), axis=-1)
    return out


def alpha_from(alpha) -> int:
    """Peirce parameter d from the Jack parameter alpha = 2/d."""
    d = Fraction(2) / Fraction(alpha).limit_denominator(1000)
    if d.denominator != 1:
        raise ValueError(f"alpha={alpha} is not 2/d for an integer d")
    return int(d)


def jack_C(m: Partition, alpha, points: Sequence, max_weight: int = DEFAULT_MAX_WEIGHT) -> complex:
    """C-normalized Jack polynomial C_m^(alpha) at r points (r = len(points))."""
    if not isinstance(m, Partition):
        m = Partition(m)
    pts = np.asarray(points, dtype=complex).reshape(1, -1)
    r = pts.shape[1]
    if m.length > r:
        return 0j
    if m.weight > max_weight:
        raise WeightTooLarge(f"|m|={m.weight} exceeds max weight {max_weight}")
    if r == 1:
        return complex(pts[0, 0] ** m.weight)
    table = jack_table(r, alpha_from(alpha), max(max_weight, DEFAULT_MAX_WEIGHT))
    parts, row = table.row(m)
    return complex(monomial_matrix(parts, pts)[0] @ row)


def _alg_alpha(algebra: Algebra):
    return Fraction(2, algebra.d) if algebra.d else 1


def phi_m(m: Partition, z: Element, max_weight: int = DEFAULT_MAX_WEIGHT) -> complex:
    """Spherical polynomial Phi_m(z) = C_m(eig z) / C_m(1^r)."""
    alg = z.algebra
    eig = coords_eigenvalues(alg, np.asarray(z.coords)[None])[0]
    val = jack_C(m, _alg_alpha(alg), eig, max_weight)
    return val / math.exp(log_jack_C_at_ones(Partition(m), alg.r, alg.d))


def kernel_Km(m: Partition, z: Element, w: Element, max_weight: int = DEFAULT_MAX_WEIGHT) -> complex:
    """Reproducing kernel K^m(z, w) = C_m(pair spectrum of (z, w)) / |m|!."""
    from .jordan import eigen_from_elementary

    alg = z.algebra
    if w.algebra != alg:
        from .errors import AlgebraMismatch

        raise AlgebraMismatch("kernel arguments live in different algebras")
    m = Partition(m)
    e = pair_elementary(alg, np.asarray(z.coords)[None], np.asarray(w.coords)[None])
    if alg.r == 2 and m.weight <= max_weight:
        # closed form avoids root extraction
        return complex(rank2_C(e[:, 0], e[:, 1], m, alg.d)[0]) / math.factorial(m.weight)
    mu = eigen_from_elementary(e)[0]
    return jack_C(m, _alg_alpha(alg), mu, max_weight) / math.factorial(m.weight)


def rank2_C(e1, e2, m: Partition, d: int) -> np.ndarray:
    """C_m(x1, x2) from e1 = x1 + x2 and e2 = x1 x2, vectorized."""
    e1 = np.asarray(e1, dtype=complex)
    e2 = np.asarray(e2, dtype=complex)
    l = m[1]
    j = m[0] - l
    beta = d / 2
    g_prev, g = np.zeros_like(e1), np.ones_like(e1)
    for i in range(j):
        g_prev, g = g, (e1 * (i + beta) * g - e2 * (i - 1 + 2 * beta) * g_prev) / (i + 1)
    k = m.weight
    lognorm = (math.lgamma(k + 1) - math.lgamma(l + 1) + math.log(j + beta)
               + math.lgamma(beta) - math.lgamma(j + l + 1 + beta))
    return math.exp(lognorm) * e2 ** l * g


def dim_dm(m: Partition, algebra: Algebra) -> int:
    """d_m = dim P_m(V^C) = (n/r)_m C_m(1^r) / |m|!, checked for integrality."""
    m = Partition(m)
    if m.length > algebra.r:
        return 0
    val = poch_general(algebra.n / algebra.r, m.padded(algebra.r), algebra.d).real
    val *= math.exp(log_jack_C_at_ones(m, algebra.r, algebra.d) - math.lgamma(m.weight + 1))
    near = round(val)
    if near < 1 or abs(val - near) > 1e-8 * max(1.0, abs(val)):
        raise NonIntegerDimension(f"d_m={val!r} for m={m.parts}")
    return int(near)


# --------------------------------------------------------------------------
# degree-graded evaluation of all C_m for many points

def graded_C(r: int, d: int, points: np.ndarray, k: int, max_len: int | None = None,
             table: JackTable | None = None):
    """All C_m(points) with |m| = k and length <= max_len.

    ``points`` is (N, r) complex and should be normalized to max |x_i| <= 1
    by the caller.  Returns ``(parts, values)`` with values of shape (N, P).
    """
    pts = np.asarray(points, dtype=complex)
    max_len = r if max_len is None else min(max_len, r)
    if r == 1 or d == 0:
        if k and max_len < 1:
            return [], np.zeros((pts.shape[0], 0), dtype=complex)
        return [Partition((k,)) if k else Partition()], pts[:, :1] ** k
    if r == 2:
        e1 = pts[:, 0] + pts[:, 1]
        e2 = pts[:, 0] * pts[:, 1]
        return graded_C_rank2(e1, e2, d, k, max_len)
    table = table or jack_table(r, d, max(k, DEFAULT_MAX_WEIGHT))
    parts, mat = table.coeffs(k)
    keep = [i for i, m in enumerate(parts) if m.length <= max_len]
    mon = monomial_matrix(parts, pts)
    return [parts[i] for i in keep], mon @ mat[keep].T


def graded_C_rank2(e1, e2, d: int, k: int, max_len: int = 2):
    """Rank-two C_m for |m| = k from elementary symmetric functions."""
    e1 = np.asarray(e1, dtype=complex)
    e2 = np.asarray(e2, dtype=complex)
    beta = d / 2
    lmax = k // 2 if max_len >= 2 else 0
    gs = _gegenbauer_stack(e1, e2, beta, k)
    parts, cols = [], []
    for l in range(0, lmax + 1):
        j = k - 2 * l
        lognorm = (math.lgamma(k + 1) - math.lgamma(l + 1) + math.log(j + beta)
                   + math.lgamma(beta) - math.lgamma(j + l + 1 + beta))
        parts.append(Partition((j + l, l)))
        cols.append(math.exp(lognorm) * e2 ** l * gs[j])
    # descending lexicographic order: l = 0 first
    return parts, np.stack(cols, axis=-1)


def _gegenbauer_stack(e1, e2, beta, jmax):
    out = [np.ones_like(e1)]
    prev = np.zeros_like(e1)
    for i in range(jmax):
        nxt = (e1 * (i + beta) * out[-1] - e2 * (i - 1 + 2 * beta) * prev) / (i + 1)
        prev = out[-1]
        out.append(nxt)
    return out
