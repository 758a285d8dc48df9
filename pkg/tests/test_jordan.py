import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conebessel.errors import NotInCone, OutsideDomain, SingularElement
from conebessel.jordan import (
    Algebra,
    Element,
    det_delta,
    generic_norm_h,
    generic_norm_h_spectral,
    get_algebra,
    in_domain_D,
    inner,
    inverse,
    jordan_product,
    op_B,
    op_P,
    peirce_minor,
    pnorm,
    power_int,
    sandwich,
    singular,
    spectral,
    sqrt_cone,
    trace,
)

NAMES = ["r", "symr2", "symr3", "hermc2", "hermc3", "spin3", "spin5"]
MATRIX = ["symr2", "symr3", "hermc2", "hermc3"]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def test_dimensions():
    # n = r + r(r-1)d/2 for each family
    assert [(get_algebra(a).n, get_algebra(a).r, get_algebra(a).d) for a in NAMES] == [
        (1, 1, 0), (3, 2, 1), (6, 3, 1), (4, 2, 2), (9, 3, 2), (3, 2, 1), (5, 2, 3)]
    with pytest.raises(ValueError):
        get_algebra("quat2")
    with pytest.raises(ValueError):
        Algebra("spin", 2, 2, 0)


@pytest.mark.parametrize("name", MATRIX)
def test_matrix_product_and_trace(name, rng):
    # oracle: the symmetrized matrix product and the matrix trace
    alg = get_algebra(name)
    x, y = alg.random(rng), alg.random(rng)
    X, Y = x.matrix(), y.matrix()
    assert np.allclose(jordan_product(x, y).matrix(), (X @ Y + Y @ X) / 2)
    assert np.isclose(trace(x), np.trace(X).real)
    assert np.isclose(det_delta(x), np.linalg.det(X).real)
    # coordinates are orthonormal for tr(xy)
    assert np.isclose(inner(x, y), np.trace(X @ Y).real)


@pytest.mark.parametrize("name", MATRIX)
def test_quadratic_representation_is_sandwich(name, rng):
    alg = get_algebra(name)
    x, y = alg.random(rng), alg.random(rng)
    got = Element(alg, op_P(x) @ y.coords).matrix()
    assert np.allclose(got, x.matrix() @ y.matrix() @ x.matrix())


def test_spin_factor_closed_forms():
    # x = (x0, v) in the view picture: eigenvalues x0 +- |v|, det x0^2 - |v|^2
    alg = get_algebra("spin5")
    x = alg.from_view(2.0, [0.5, -1.0, 0.25, 0.0])
    rad = np.linalg.norm([0.5, -1.0, 0.25, 0.0])
    assert np.allclose(spectral(x).values, [2 + rad, 2 - rad])
    assert np.isclose(det_delta(x), 4 - rad ** 2)
    assert np.isclose(trace(x), 4.0)
    assert np.allclose(alg.unit().view()[0], 1.0)


@pytest.mark.parametrize("name", NAMES)
def test_spectral_reconstruction(name, rng):
    alg = get_algebra(name)
    x = alg.random(rng)
    sd = spectral(x)
    back = sum(v * f.coords for v, f in zip(sd.values, sd.frame))
    assert np.allclose(back, x.coords)
    assert np.all(np.diff(sd.values) <= 1e-12)
    # the frame consists of orthogonal idempotents summing to e
    for i, c in enumerate(sd.frame):
        assert np.allclose(jordan_product(c, c).coords, c.coords)
        for c2 in sd.frame[i + 1:]:
            assert np.allclose(jordan_product(c, c2).coords, 0, atol=1e-12)
    assert np.allclose(sum(f.coords for f in sd.frame), alg.unit().coords)


@pytest.mark.parametrize("name", ["hermc2", "hermc3"])
def test_singular_values_hermitian_matrices(name, rng):
    # oracle: ordinary SVD of the complex matrix
    alg = get_algebra(name)
    z = alg.random(rng, complex_=True)
    assert np.allclose(singular(z).values, np.linalg.svd(z.matrix(), compute_uv=False))


@pytest.mark.parametrize("name", ["symr2", "symr3"])
def test_singular_values_takagi(name, rng):
    # complex symmetric: Takagi values equal the SVD singular values
    alg = get_algebra(name)
    z = alg.random(rng, complex_=True)
    sd = singular(z, frame=True)
    assert np.allclose(sd.values, np.linalg.svd(z.matrix(), compute_uv=False))
    assert np.allclose(sum(t * c.coords for t, c in zip(sd.values, sd.frame)), z.coords)


@pytest.mark.parametrize("name", NAMES)
def test_singular_frame_reconstructs(name, rng):
    alg = get_algebra(name)
    z = alg.random(rng, complex_=True)
    sd = singular(z, frame=True)
    assert np.allclose(sum(t * c.coords for t, c in zip(sd.values, sd.frame)), z.coords)
    assert np.isclose(pnorm(z, 2) ** 2, np.vdot(z.coords, z.coords).real)


def test_spin_singular_values_real_case():
    # real elements: |x0 +- |v||
    alg = get_algebra("spin3")
    x = alg.from_view(0.3, [1.0, 0.0])
    assert np.allclose(singular(x).values, [1.3, 0.7])


@pytest.mark.parametrize("name", NAMES)
def test_sqrt_inverse_powers(name, rng):
    alg = get_algebra(name)
    x = alg.random_cone(rng)
    s = sqrt_cone(x)
    assert np.allclose(jordan_product(s, s).coords, x.coords)
    assert np.allclose(jordan_product(x, inverse(x)).coords, alg.unit().coords)
    assert np.allclose(power_int(x, 3).coords, jordan_product(x, jordan_product(x, x)).coords)
    assert np.allclose(power_int(x, -1).coords, inverse(x).coords)


def test_domain_errors():
    alg = get_algebra("symr2")
    with pytest.raises(NotInCone):
        sqrt_cone(alg.diag([1.0, -1.0]))
    with pytest.raises(NotInCone):
        sqrt_cone(alg.diag([1.0, 0.0]))
    with pytest.raises(SingularElement):
        inverse(alg.diag([1.0, 0.0]))
    with pytest.raises(OutsideDomain):
        generic_norm_h(alg.diag([1.0, 0.2]))


@pytest.mark.parametrize("name", NAMES)
def test_generic_norm(name, rng):
    # Det B(w, w) = h(w, w)^{2n/r} and h = prod (1 - t_j^2)
    alg = get_algebra(name)
    w = alg.random(rng, complex_=True)
    w = w * (0.9 / pnorm(w, np.inf))
    assert in_domain_D(w)
    h = generic_norm_h(w)
    assert np.isclose(h, generic_norm_h_spectral(w), rtol=1e-9)
    assert np.isclose(np.linalg.det(op_B(w, w)).real, h ** (2 * alg.n / alg.r), rtol=1e-8)


def test_peirce_minors_matrix():
    alg = get_algebra("symr3")
    m = np.array([[2.0, 0.5, 0.1], [0.5, 1.0, 0.3], [0.1, 0.3, 3.0]])
    x = alg.from_matrix(m)
    assert np.isclose(peirce_minor(x, 1), 2.0)
    assert np.isclose(peirce_minor(x, 2), 2.0 - 0.25)
    assert np.isclose(peirce_minor(x, 3), np.linalg.det(m))


@pytest.mark.parametrize("name", NAMES)
def test_sandwich_trace(name, rng):
    # tr P(x^{1/2}) y = (x | y)
    alg = get_algebra(name)
    x, y = alg.random_cone(rng), alg.random_cone(rng)
    assert np.isclose(trace(sandwich(x, y)), inner(x, y))


@pytest.mark.parametrize("name", NAMES)
def test_json_roundtrip(name, rng):
    alg = get_algebra(name)
    z = alg.random(rng, complex_=True)
    back = Element.from_json(json.dumps(z.to_json()))
    assert back.algebra == alg
    assert np.array_equal(back.coords, z.coords)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3),
       st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_jordan_identity_spin3(a, b):
    # (x^2 y) x = x^2 (y x): the Jordan identity
    alg = get_algebra("spin3")
    x, y = alg.element(np.array(a)), alg.element(np.array(b))
    x2 = jordan_product(x, x)
    lhs = jordan_product(jordan_product(x2, y), x).coords
    rhs = jordan_product(x2, jordan_product(y, x)).coords
    assert np.allclose(lhs, rhs, atol=1e-9 * (1 + np.abs(lhs).max()))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 10), st.floats(0.01, 10), st.floats(-3, 3))
def test_symr2_hypothesis_eigen(a, c, b):
    alg = get_algebra("symr2")
    m = np.array([[a, b], [b, c]])
    x = alg.from_matrix(m)
    assert np.allclose(spectral(x).values, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-9)
