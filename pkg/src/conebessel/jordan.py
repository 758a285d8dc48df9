"""Simple Euclidean Jordan algebras and their complexifications.

Three families are supported: ``Sym(r, R)`` (``symr``), ``Herm(r, C)``
(``hermc``) and the spin factor ``R^{1,n-1}`` (``spin``).  Elements are
stored by their coordinates in a fixed basis which is orthonormal for the
trace form ``(x|y) = tr(xy)``; complex coordinates describe points of the
complexification ``V^C``.  The real basis vectors are fixed by complex
conjugation, so ``bar(z)`` is plain coordinate conjugation.

Array-level helpers (``coords_*``) act on stacks of coordinate vectors of
shape ``(N, n)`` and are what the Monte-Carlo and quadrature code use.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import (
    AlgebraMismatch,
    MinorVanishes,
    NotInCone,
    OutsideDomain,
    SingularElement,
)

FAMILIES = ("symr", "hermc", "spin")
SLACK = 1e-12
REL_TOL = 1e-10
SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Algebra:
    """Descriptor of a simple Euclidean Jordan algebra."""

    family: str
    r: int
    n: int
    d: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.r < 1:
            raise ValueError("rank must be positive")
        if 2 * self.n != 2 * self.r + self.r * (self.r - 1) * self.d:
            raise ValueError("n != r + r(r-1)d/2")
        if self.family == "spin" and (self.r != 2 or self.n < 3):
            raise ValueError("spin factor needs r=2, n>=3")

    @classmethod
    def symr(cls, r: int) -> "Algebra":
        return cls("symr", r, r * (r + 1) // 2, 1 if r > 1 else 0)

    @classmethod
    def hermc(cls, r: int) -> "Algebra":
        return cls("hermc", r, r * r, 2 if r > 1 else 0)

    @classmethod
    def spin(cls, n: int) -> "Algebra":
        return cls("spin", 2, n, n - 2)

    @classmethod
    def real_line(cls) -> "Algebra":
        return cls.symr(1)

    @property
    def name(self) -> str:
        if self.r == 1:
            return "r"
        if self.family == "spin":
            return f"spin{self.n}"
        return f"{self.family}{self.r}"

    @property
    def n_over_r(self) -> float:
        return self.n / self.r

    @property
    def is_matrix(self) -> bool:
        return self.family != "spin"

    # constructors -------------------------------------------------------
    def element(self, coords) -> "Element":
        return Element(self, coords)

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.n))

    def unit(self) -> "Element":
        return Element(self, _unit_coords(self))

    def frame(self) -> list["Element"]:
        """The fixed Jordan frame c_1, ..., c_r."""
        return [Element(self, c) for c in _frame_coords(self)]

    def diag(self, values: Sequence) -> "Element":
        """sum_j values[j] c_j for the fixed frame."""
        values = np.asarray(values)
        if values.shape != (self.r,):
            raise ValueError(f"need {self.r} values")
        return Element(self, values @ _frame_coords(self))

    def from_matrix(self, m) -> "Element":
        if not self.is_matrix:
            raise ValueError("spin factor has no matrix view")
        m = np.asarray(m)
        return Element(self, _simplify(matrix_to_coords(self, m[None])[0]))

    def from_view(self, x0, xvec) -> "Element":
        """Spin factor element from the (x0, x) picture."""
        if self.family != "spin":
            raise ValueError("view coordinates are for the spin factor")
        v = np.concatenate([[x0], np.asarray(xvec)])
        return Element(self, SQRT2 * v)

    def random(self, rng: np.random.Generator, complex_: bool = False, scale: float = 1.0) -> "Element":
        c = rng.standard_normal(self.n)
        if complex_:
            c = c + 1j * rng.standard_normal(self.n)
        return Element(self, scale * c)

    def random_cone(self, rng: np.random.Generator, scale: float = 1.0) -> "Element":
        """Random point of the open cone (a Jordan square plus a small shift)."""
        y = self.random(rng)
        return Element(self, scale * (jordan_product(y, y).coords + 1e-3 * _unit_coords(self)))


def get_algebra(name: str) -> Algebra:
    """Parse identifiers like ``r``, ``symr2``, ``hermc3``, ``spin5``."""
    key = name.strip().lower()
    if key in ("r", "real", "symr1", "hermc1"):
        return Algebra.real_line()
    for fam, ctor in (("symr", Algebra.symr), ("hermc", Algebra.hermc), ("spin", Algebra.spin)):
        if key.startswith(fam) and key[len(fam):].isdigit():
            return ctor(int(key[len(fam):]))
    raise ValueError(f"unknown algebra {name!r}")


def _simplify(c: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(c) and not np.any(c.imag):
        return c.real.copy()
    return c


class Element:
    """A point of V (real coordinates) or of V^C (complex coordinates)."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords):
        c = np.array(coords, dtype=complex if np.iscomplexobj(coords) else float).reshape(-1)
        if c.shape != (algebra.n,):
            raise ValueError(f"expected {algebra.n} coordinates, got {c.shape}")
        c.setflags(write=False)
        self.algebra = algebra
        self.coords = c

    def __repr__(self):
        return f"Element({self.algebra.name}, {np.array2string(self.coords, precision=6)})"

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coords)

    @property
    def real(self) -> "Element":
        return Element(self.algebra, self.coords.real)

    @property
    def imag(self) -> "Element":
        return Element(self.algebra, self.coords.imag if not self.is_real else np.zeros(self.algebra.n))

    def conj(self) -> "Element":
        return self if self.is_real else Element(self.algebra, self.coords.conj())

    def as_complex(self) -> "Element":
        return Element(self.algebra, self.coords.astype(complex))

    def _other(self, other):
        if isinstance(other, Element):
            if other.algebra != self.algebra:
                raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")
            return other.coords
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Element(self.algebra, self.coords + o)

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Element(self.algebra, self.coords - o)

    def __neg__(self):
        return Element(self.algebra, -self.coords)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        return Element(self.algebra, self.coords * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Element(self.algebra, self.coords / scalar)

    def matrix(self) -> np.ndarray:
        if not self.algebra.is_matrix:
            raise ValueError("spin factor has no matrix view")
        return coords_to_matrix(self.algebra, self.coords[None])[0]

    def view(self) -> tuple:
        """(x0, xvec) for the spin factor."""
        if self.algebra.family != "spin":
            raise ValueError("view coordinates are for the spin factor")
        v = self.coords / SQRT2
        return v[0], v[1:]

    def to_json(self) -> dict:
        a = self.algebra
        return {
            "algebra": {"family": a.family, "r": a.r, "n": a.n},
            "re": [float(v) for v in self.coords.real],
            "im": [float(v) for v in (self.coords.imag if not self.is_real else np.zeros(a.n))],
        }

    @classmethod
    def from_json(cls, obj) -> "Element":
        if isinstance(obj, str):
            obj = json.loads(obj)
        fam, r, n = obj["algebra"]["family"], obj["algebra"]["r"], obj["algebra"]["n"]
        alg = {"symr": Algebra.symr, "hermc": Algebra.hermc}.get(fam, lambda _r: Algebra.spin(n))(r)
        if alg.n != n:
            raise ValueError("inconsistent algebra descriptor")
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros(n)), dtype=float)
        return cls(alg, re + 1j * im if np.any(im) else re)


# --------------------------------------------------------------------------
# bases and structure constants

@lru_cache(maxsize=None)
def _basis(alg: Algebra) -> np.ndarray:
    """Orthonormal basis as an (n, r, r) stack of Hermitian matrices."""
    r = alg.r
    dtype = complex if alg.family == "hermc" else float
    mats = []
    for i in range(r):
        m = np.zeros((r, r), dtype=dtype)
        m[i, i] = 1
        mats.append(m)
    for i in range(r):
        for j in range(i + 1, r):
            m = np.zeros((r, r), dtype=dtype)
            m[i, j] = m[j, i] = 1 / SQRT2
            mats.append(m)
            if alg.family == "hermc":
                m = np.zeros((r, r), dtype=dtype)
                m[i, j], m[j, i] = 1j / SQRT2, -1j / SQRT2
                mats.append(m)
    out = np.array(mats)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def structure_tensor(alg: Algebra) -> np.ndarray:
    """T[i, j, k] = k-th coordinate of b_i o b_j."""
    n = alg.n
    if alg.is_matrix:
        b = _basis(alg)
        prod = 0.5 * (np.einsum("iab,jbc->ijac", b, b) + np.einsum("jab,ibc->ijac", b, b))
        t = np.einsum("ijab,kba->ijk", prod, b).real
    else:
        # view-picture product, rescaled to orthonormal coordinates
        t = np.zeros((n, n, n))
        t[0, 0, 0] = 1
        for a in range(1, n):
            t[a, a, 0] = 1
            t[0, a, a] = t[a, 0, a] = 1
        t /= SQRT2
    t.setflags(write=False)
    return t


@lru_cache(maxsize=None)
def trace_vector(alg: Algebra) -> np.ndarray:
    if alg.is_matrix:
        v = np.einsum("kaa->k", _basis(alg)).real
    else:
        v = np.zeros(alg.n)
        v[0] = SQRT2
    v.setflags(write=False)
    return v


@lru_cache(maxsize=None)
def _unit_coords(alg: Algebra) -> np.ndarray:
    if alg.is_matrix:
        c = np.zeros(alg.n)
        c[: alg.r] = 1
    else:
        c = np.zeros(alg.n)
        c[0] = SQRT2
    c.setflags(write=False)
    return c


@lru_cache(maxsize=None)
def _frame_coords(alg: Algebra) -> np.ndarray:
    if alg.is_matrix:
        f = np.eye(alg.r, alg.n)
    else:
        f = np.zeros((2, alg.n))
        f[0, 0] = f[0, 1] = 1 / SQRT2
        f[1, 0], f[1, 1] = 1 / SQRT2, -1 / SQRT2
    f.setflags(write=False)
    return f


def coords_to_matrix(alg: Algebra, c: np.ndarray) -> np.ndarray:
    return np.einsum("...k,kab->...ab", c, _basis(alg))


def matrix_to_coords(alg: Algebra, m: np.ndarray) -> np.ndarray:
    c = np.einsum("...ab,kba->...k", m, _basis(alg))
    if alg.family == "symr" and not np.iscomplexobj(m):
        return c.real
    if alg.family == "hermc" and not np.iscomplexobj(m):
        return c.real
    return c


# --------------------------------------------------------------------------
# array-level helpers, (N, n) stacks of coordinates

def coords_det(alg: Algebra, c: np.ndarray) -> np.ndarray:
    """Jordan determinant, complex-bilinearly extended."""
    if alg.r == 1:
        return c[..., 0]
    if alg.family == "spin" or alg.r == 2:
        tr = c @ trace_vector(alg)
        return 0.5 * (tr * tr - np.einsum("...k,...k->...", c, c))
    return np.linalg.det(coords_to_matrix(alg, c))


def coords_singular_values(alg: Algebra, c: np.ndarray) -> np.ndarray:
    """Singular values t_1 >= ... >= t_r >= 0 for a stack of points."""
    c = np.asarray(c)
    if alg.r == 1:
        return np.abs(c[..., :1])
    if alg.r == 2:
        q = 0.5 * np.einsum("...k,...k->...", c, c.conj()).real
        dd = np.abs(coords_det(alg, c))
        disc = np.sqrt(np.maximum(q * q - dd * dd, 0.0))
        t1 = np.sqrt(q + disc)
        t2 = np.where(t1 > 0, dd / np.where(t1 > 0, t1, 1.0), 0.0)
        return np.stack([t1, t2], axis=-1)
    return np.linalg.svd(coords_to_matrix(alg, c), compute_uv=False)


def coords_eigenvalues(alg: Algebra, c: np.ndarray) -> np.ndarray:
    """Jordan eigenvalues (roots of Delta(s e - z)), unsorted."""
    c = np.asarray(c)
    if alg.r == 1:
        return c[..., :1].copy()
    if alg.family == "spin":
        rad = np.sqrt(np.asarray(np.einsum("...k,...k->...", c[..., 1:], c[..., 1:]), dtype=complex))
        return np.stack([(c[..., 0] + rad) / SQRT2, (c[..., 0] - rad) / SQRT2], axis=-1)
    return np.linalg.eigvals(coords_to_matrix(alg, c))


def pair_elementary(alg: Algebra, z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Elementary symmetric functions e_1..e_r of the pair spectrum of (z, w).

    Holomorphic in z and antiholomorphic in w; for w = e they reduce to the
    elementary symmetric functions of the Jordan eigenvalues of z.
    """
    z, w = np.broadcast_arrays(np.asarray(z, dtype=complex), np.asarray(w, dtype=complex))
    e1 = np.einsum("...k,...k->...", z, w.conj())
    if alg.r == 1:
        return e1[..., None]
    if alg.r == 2:
        e2 = coords_det(alg, z) * coords_det(alg, w).conj()
        return np.stack([e1, e2], axis=-1)
    m = coords_to_matrix(alg, z) @ coords_to_matrix(alg, w.conj())
    # Newton's identities from power sums
    pw = [None]
    mk = np.broadcast_to(np.eye(alg.r), m.shape).astype(complex)
    for _ in range(alg.r):
        mk = mk @ m
        pw.append(np.trace(mk, axis1=-2, axis2=-1))
    e = [np.ones_like(e1)]
    for k in range(1, alg.r + 1):
        acc = sum(((-1) ** (i - 1)) * e[k - i] * pw[i] for i in range(1, k + 1))
        e.append(acc / k)
    return np.stack(e[1:], axis=-1)


def eigen_from_elementary(e: np.ndarray) -> np.ndarray:
    """Roots of s^r - e1 s^{r-1} + e2 s^{r-2} - ... for a stack of e-vectors."""
    e = np.asarray(e, dtype=complex)
    r = e.shape[-1]
    if r == 1:
        return e.copy()
    if r == 2:
        disc = np.sqrt(e[..., 0] ** 2 - 4 * e[..., 1])
        return np.stack([(e[..., 0] + disc) / 2, (e[..., 0] - disc) / 2], axis=-1)
    flat = e.reshape(-1, r)
    comp = np.zeros((flat.shape[0], r, r), dtype=complex)
    comp[:, 0, :] = flat * np.array([(-1) ** k for k in range(r)])
    comp[:, np.arange(1, r), np.arange(r - 1)] = 1
    return np.linalg.eigvals(comp).reshape(e.shape)


# --------------------------------------------------------------------------
# element-level operations

def _same(x: Element, y: Element):
    if x.algebra != y.algebra:
        raise AlgebraMismatch(f"{x.algebra.name} vs {y.algebra.name}")


def jordan_product(x: Element, y: Element) -> Element:
    _same(x, y)
    t = structure_tensor(x.algebra)
    return Element(x.algebra, np.einsum("i,j,ijk->k", x.coords, y.coords, t))


def op_L(x: Element) -> np.ndarray:
    """Multiplication operator L(x) as a matrix on coordinates."""
    return np.einsum("i,ijk->kj", x.coords, structure_tensor(x.algebra))


def op_box(x: Element, y: Element) -> np.ndarray:
    _same(x, y)
    lx, ly = op_L(x), op_L(y)
    return op_L(jordan_product(x, y)) + lx @ ly - ly @ lx


def op_P2(x: Element, z: Element) -> np.ndarray:
    _same(x, z)
    lx, lz = op_L(x), op_L(z)
    return lx @ lz + lz @ lx - op_L(jordan_product(x, z))


def op_P(x: Element) -> np.ndarray:
    lx = op_L(x)
    return 2 * lx @ lx - op_L(jordan_product(x, x))


def op_B(x: Element, y: Element) -> np.ndarray:
    """Bergman operator B(x, y) = I - 2 x box ybar + P(x) P(ybar)."""
    _same(x, y)
    yb = y.conj()
    return np.eye(x.algebra.n) - 2 * op_box(x, yb) + op_P(x) @ op_P(yb)


def apply(op: np.ndarray, x: Element) -> Element:
    return Element(x.algebra, _simplify(op @ x.coords))


def trace(x: Element):
    return x.coords @ trace_vector(x.algebra)


def det_delta(x: Element):
    v = coords_det(x.algebra, x.coords[None])[0]
    return v.real if x.is_real else v


def inner(x: Element, y: Element):
    """(x|y) = tr(x ybar)."""
    _same(x, y)
    return np.vdot(y.coords, x.coords) if not y.is_real else x.coords @ y.coords


class SpectralData(NamedTuple):
    values: np.ndarray
    frame: list | None


def spectral(x: Element) -> SpectralData:
    """Eigenvalues (descending) and Jordan frame of a real element."""
    if not x.is_real:
        raise ValueError("spectral() needs a real element; use singular()")
    alg = x.algebra
    if alg.r == 1:
        return SpectralData(x.coords.copy(), [alg.unit()])
    if alg.is_matrix:
        vals, vecs = np.linalg.eigh(x.matrix())
        order = np.argsort(vals)[::-1]
        frame = []
        for j in order:
            v = vecs[:, j]
            frame.append(Element(alg, _simplify(matrix_to_coords(alg, np.outer(v, v.conj())[None])[0]).real))
        return SpectralData(vals[order], frame)
    c0, cv = x.coords[0], x.coords[1:]
    rad = np.linalg.norm(cv)
    if rad <= SLACK * max(1.0, abs(c0)):
        u = np.zeros(alg.n - 1)
        u[0] = 1.0
    else:
        u = cv / rad
    vals = np.array([(c0 + rad) / SQRT2, (c0 - rad) / SQRT2])
    frame = [
        Element(alg, np.concatenate([[1.0], u]) / SQRT2),
        Element(alg, np.concatenate([[1.0], -u]) / SQRT2),
    ]
    return SpectralData(vals, frame)


def _takagi(m: np.ndarray):
    """Complex symmetric m = U diag(s) U^T."""
    w, s, vh = np.linalg.svd(m)
    v = vh.conj().T
    dmat = v.T @ w
    half = scipy.linalg.sqrtm(dmat)
    u = v.conj() @ half
    return u, s


def singular(z: Element, frame: bool = False) -> SpectralData:
    """Singular values t_1 >= ... >= t_r >= 0 with z = k sum t_j c_j.

    With ``frame=True`` also returns the rotated frame (k c_j) as complex
    elements, so that z = sum_j t_j (k c_j).
    """
    alg = z.algebra
    c = z.coords.astype(complex)
    if not frame:
        return SpectralData(coords_singular_values(alg, c[None])[0], None)
    if alg.r == 1:
        t = abs(c[0])
        phase = c[0] / t if t > 0 else 1.0
        return SpectralData(np.array([t]), [Element(alg, np.array([phase]))])
    if alg.family == "hermc":
        u, s, vh = np.linalg.svd(z.matrix().astype(complex))
        kc = [Element(alg, matrix_to_coords(alg, np.outer(u[:, j], vh[j])[None])[0]) for j in range(alg.r)]
        return SpectralData(s, kc)
    if alg.family == "symr":
        u, s = _takagi(z.matrix().astype(complex))
        kc = [Element(alg, matrix_to_coords(alg, np.outer(u[:, j], u[:, j])[None])[0]) for j in range(alg.r)]
        return SpectralData(s, kc)
    # spin: Lie-ball coordinates zeta = (c0, i cvec), K = U(1) x SO(n)
    zeta = c.copy()
    zeta[1:] *= 1j
    sq = zeta @ zeta
    theta = 0.5 * np.angle(sq) if abs(sq) > 0 else 0.0
    zp = np.exp(-1j * theta) * zeta
    u, v = zp.real, zp.imag
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu < nv:  # only possible through rounding when sq ~ 0
        u, v, nu, nv = v, -u, nv, nu
        theta += np.pi / 2
    f0 = u / nu if nu > 0 else np.eye(alg.n)[0]
    if nv > SLACK * max(nu, 1.0):
        f1 = v / nv
    else:
        trial = np.eye(alg.n)[np.argmin(np.abs(f0))]
        f1 = trial - (trial @ f0) * f0
        f1 /= np.linalg.norm(f1)
    t = np.array([(nu + nv) / SQRT2, (nu - nv) / SQRT2])
    kc = []
    for sign in (1, -1):
        zk = np.exp(1j * theta) * (f0 + sign * 1j * f1) / SQRT2
        ck = zk.copy()
        ck[1:] *= -1j
        kc.append(Element(alg, ck))
    return SpectralData(t, kc)


def pnorm(z: Element, p: float) -> float:
    t = coords_singular_values(z.algebra, np.asarray(z.coords, dtype=complex)[None])[0]
    if np.isinf(p):
        return float(t.max())
    if p < 1:
        raise ValueError("p must be >= 1")
    return float(np.sum(t ** p) ** (1.0 / p))


def jordan_eigenvalues(z: Element) -> np.ndarray:
    return coords_eigenvalues(z.algebra, np.asarray(z.coords)[None])[0]


def _cone_eigs(x: Element, boundary_ok: bool) -> SpectralData:
    if not x.is_real:
        raise NotInCone("cone elements are real")
    sd = spectral(x)
    scale = max(1.0, float(np.max(np.abs(sd.values))))
    lo = sd.values.min()
    if boundary_ok:
        if lo < -SLACK * scale:
            raise NotInCone(f"eigenvalue {lo:.3e} < 0")
    elif lo <= SLACK * scale:
        raise NotInCone(f"eigenvalue {lo:.3e} not strictly positive")
    return sd


def _from_spectral(alg: Algebra, vals, frame) -> Element:
    return Element(alg, sum(v * f.coords for v, f in zip(vals, frame)))


def sqrt_cone(x: Element) -> Element:
    sd = _cone_eigs(x, boundary_ok=False)
    return _from_spectral(x.algebra, np.sqrt(sd.values), sd.frame)


def _sqrt_closed(x: Element) -> Element:
    sd = _cone_eigs(x, boundary_ok=True)
    return _from_spectral(x.algebra, np.sqrt(np.maximum(sd.values, 0.0)), sd.frame)


def inverse(x: Element) -> Element:
    alg = x.algebra
    scale = max(1e-300, np.linalg.norm(x.coords)) ** alg.r
    if abs(det_delta(x)) <= REL_TOL * scale:
        raise SingularElement("Delta(x) vanishes")
    if x.is_real:
        sd = spectral(x)
        return _from_spectral(alg, 1.0 / sd.values, sd.frame)
    # x^{-1} = P(x)^{-1} x
    return Element(alg, np.linalg.solve(op_P(x), x.coords))


def power_int(x: Element, k: int) -> Element:
    if k < 0:
        return power_int(inverse(x), -k)
    out = x.algebra.unit()
    if not x.is_real:
        out = out.as_complex()
    base = x
    while k:
        if k & 1:
            out = jordan_product(out, base)
        base = jordan_product(base, base)
        k >>= 1
    return out


def peirce_minor(x: Element, l: int):
    """Delta_l(x): determinant of the Peirce projection onto V_(l)."""
    alg = x.algebra
    if not 1 <= l <= alg.r:
        raise ValueError("l out of range")
    if l == alg.r:
        return det_delta(x)
    if alg.is_matrix:
        return np.linalg.det(x.matrix()[:l, :l])
    # spin, l = 1: frame c1 = (1/2)(1, e_1) in view coordinates
    return (x.coords[0] + x.coords[1]) / SQRT2


def gen_power(x: Element, s: Sequence):
    """Generalized power Delta_s(x) with principal branches."""
    alg = x.algebra
    s = np.asarray(s, dtype=complex)
    minors = [peirce_minor(x, l) for l in range(1, alg.r + 1)]
    out = 1.0 + 0j
    for l in range(alg.r):
        expo = s[l] - (s[l + 1] if l + 1 < alg.r else 0.0)
        if expo == 0:
            continue
        if minors[l] == 0:
            raise MinorVanishes(f"Delta_{l + 1}(x) = 0")
        if float(expo.real).is_integer() and expo.imag == 0 and expo.real > 0:
            out *= minors[l] ** int(expo.real)
        else:
            out *= np.exp(expo * np.log(complex(minors[l])))
    return out.real if np.isreal(out) and np.isrealobj(x.coords) else out


def generic_norm_h(w: Element) -> float:
    """h(w, w) as the positive root of Det B(w, w)."""
    alg = w.algebra
    if not in_domain_D(w):
        raise OutsideDomain("|w|_inf >= 1")
    det = np.linalg.det(op_B(w, w))
    if abs(det.imag) > 1e-9 * max(1.0, abs(det)) or det.real <= 0:
        raise OutsideDomain(f"Det B(w,w) = {det}")
    return float(det.real ** (alg.r / (2 * alg.n)))


def generic_norm_h_spectral(w: Element) -> float:
    """h(w, w) = prod (1 - t_j^2); signed, valid everywhere."""
    t = singular(w).values
    return float(np.prod(1 - t * t))


def in_domain_D(w: Element) -> bool:
    return pnorm(w, np.inf) < 1.0


def sandwich(x: Element, y: Element) -> Element:
    """P(x^{1/2}) y for x in the closed cone."""
    _same(x, y)
    return apply(op_P(_sqrt_closed(x)), y)


def haar_KL_sample(alg: Algebra, rng: np.random.Generator) -> np.ndarray:
    """Haar-random Jordan automorphism, as a real matrix on coordinates."""
    r = alg.r
    if alg.r == 1:
        return np.eye(1)
    if alg.is_matrix:
        g = rng.standard_normal((r, r))
        if alg.family == "hermc":
            g = g + 1j * rng.standard_normal((r, r))
        q, rr = np.linalg.qr(g)
        q = q * (np.diag(rr) / np.abs(np.diag(rr)))
        b = _basis(alg)
        imgs = q[None] @ b @ q.conj().T[None]
        return matrix_to_coords(alg, imgs).T.real
    m = alg.n - 1
    q, rr = np.linalg.qr(rng.standard_normal((m, m)))
    q = q * np.sign(np.diag(rr))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    out = np.eye(alg.n)
    out[1:, 1:] = q
    return out
