import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from khpert.errors import AccuracyError, DomainError, IntegrandError
from khpert.hydrogen import BoundState, radial_wavefunction
from khpert.specfun import (
    QuadratureSpec,
    bessel_J,
    chebyshev_nodes,
    chebyshev_T,
    gaunt,
    gauss_chebyshev,
    integrate_chebyshev_weight,
    integrate_radial,
    legendre_P,
    legendre_x_axis_element,
    wigner_3j,
)

unit = st.floats(-1.0, 1.0)


def test_chebyshev_values():
    assert chebyshev_T(0, 0.37) == 1.0
    assert chebyshev_T(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert chebyshev_T(7, 0.3) == pytest.approx(math.cos(7 * math.acos(0.3)), abs=1e-13)


def test_chebyshev_domain():
    with pytest.raises(DomainError):
        chebyshev_T(2, 1.5)
    with pytest.raises(DomainError):
        chebyshev_T(-1, 0.5)


@given(st.integers(0, 30), st.lists(unit, min_size=1, max_size=100))
def test_chebyshev_parity(k, xs):
    x = np.array(xs)
    assert np.array_equal(chebyshev_T(k, -x), (-1) ** k * chebyshev_T(k, x))


@given(st.integers(0, 40), unit)
def test_chebyshev_matches_trig(k, x):
    assert chebyshev_T(k, x) == pytest.approx(math.cos(k * math.acos(x)), abs=1e-11)


def test_legendre_values():
    assert legendre_P(2, 1.0) == 1.0
    assert legendre_P(2, 0.0) == -0.5
    val, _ = integrate.quad(lambda x: legendre_P(2, x) * legendre_P(4, x), -1, 1, epsabs=1e-14)
    assert abs(val) < 1e-12


@given(st.integers(0, 30), unit)
def test_legendre_parity(n, x):
    assert legendre_P(n, -x) == pytest.approx((-1) ** n * legendre_P(n, x), abs=1e-14)


def test_bessel_identities():
    assert bessel_J(0, 0.0) == 1.0
    for n in range(1, 6):
        assert bessel_J(-n, 2.7) == pytest.approx((-1) ** n * bessel_J(n, 2.7), rel=1e-14)
    total = math.fsum(bessel_J(n, 7.3) ** 2 for n in range(-60, 61))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_bessel_rejects_fractional_order():
    with pytest.raises(DomainError):
        bessel_J(0.5, 1.0)


def test_bessel_integral_oracle():
    # J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt
    for n, x in [(0, 2.4048), (3, 1.7), (5, 9.0)]:
        ref, _ = integrate.quad(lambda t: math.cos(n * t - x * math.sin(t)) / math.pi, 0, math.pi, epsabs=1e-14)
        assert bessel_J(n, x) == pytest.approx(ref, abs=1e-12)


@given(st.floats(0.0, 10.0), st.floats(0.0, 2 * math.pi))
def test_jacobi_anger(z, theta):
    ns = np.arange(-40, 41)
    series = np.sum(bessel_J(ns, z) * np.exp(1j * ns * theta))
    assert abs(series - np.exp(1j * z * math.sin(theta))) < 1e-10


def test_chebyshev_nodes_are_mirrored():
    for n in (7, 64):
        x = chebyshev_nodes(n)
        assert np.array_equal(x, -x[::-1])


def test_chebyshev_weight_examples():
    assert integrate_chebyshev_weight(lambda x: np.ones_like(x)) == pytest.approx(1.0, abs=1e-15)
    assert integrate_chebyshev_weight(lambda x: x * x) == pytest.approx(0.5, abs=1e-15)
    for k in range(1, 20):
        assert abs(integrate_chebyshev_weight(lambda x: chebyshev_T(k, x))) < 1e-12


@given(st.lists(st.floats(-1, 1), min_size=1, max_size=127))
def test_chebyshev_weight_exact_on_polynomials(coeffs):
    # degree < 2 n is integrated exactly; the reference uses <T_0 T_k> = delta_k0 in the Chebyshev basis
    p = np.polynomial.Polynomial(coeffs)
    ref = np.polynomial.chebyshev.poly2cheb(coeffs)[0]
    assert gauss_chebyshev(p, 64) == pytest.approx(ref, abs=1e-13 * max(1.0, np.sum(np.abs(coeffs))))


def test_chebyshev_weight_against_quad():
    f = lambda x: np.exp(np.cos(3 * x))  # noqa: E731
    ref, _ = integrate.quad(lambda t: f(math.cos(t)) / math.pi, 0, math.pi, epsabs=1e-14)
    assert integrate_chebyshev_weight(f) == pytest.approx(ref, rel=1e-12)


def test_chebyshev_weight_vector_integrand():
    out = integrate_chebyshev_weight(lambda x: np.stack([x**2, x**4]))
    assert out == pytest.approx([0.5, 0.375], abs=1e-15)


def test_chebyshev_weight_reports_bad_node():
    with pytest.raises(IntegrandError) as exc, np.errstate(divide="ignore"):
        integrate_chebyshev_weight(lambda x: 1.0 / (x - chebyshev_nodes(64)[3]))
    assert exc.value.node == pytest.approx(chebyshev_nodes(64)[3])


def test_chebyshev_weight_nonconvergence():
    spec = QuadratureSpec(node_count=8, max_refinements=1)
    with pytest.raises(AccuracyError) as exc:
        integrate_chebyshev_weight(lambda x: np.abs(x) ** 0.5, spec)
    assert exc.value.estimate is not None


def test_quadrature_spec_validation():
    assert QuadratureSpec().node_counts() == [64 * 2**i for i in range(7)]
    with pytest.raises(DomainError):
        QuadratureSpec(node_count=1)


def test_radial_examples():
    assert integrate_radial(lambda r: r * r * np.exp(-2 * r), 0.5) == pytest.approx(0.25, rel=1e-12)
    assert integrate_radial(lambda r: np.exp(-r), 1.0) == pytest.approx(1.0, rel=1e-12)
    s = BoundState(3, 2, 0, Z=1)
    norm = integrate_radial(lambda r: radial_wavefunction(s, r) ** 2 * r * r, 1.5 * s.a)
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_radial_nonconvergence():
    with pytest.raises(AccuracyError):
        integrate_radial(lambda r: 1.0 / (1.0 + r * r), 1.0)
    with pytest.raises(DomainError):
        integrate_radial(lambda r: r, 0.0)


def test_wigner_3j_known_values():
    assert wigner_3j(1, 1, 0, 0, 0, 0) == pytest.approx(-1 / math.sqrt(3), rel=1e-14)
    assert wigner_3j(2, 2, 2, 0, 0, 0) == pytest.approx(-math.sqrt(2 / 35), rel=1e-14)
    assert wigner_3j(1, 1, 2, 1, -1, 0) == pytest.approx(1 / math.sqrt(30), rel=1e-14)
    assert wigner_3j(1, 1, 3, 0, 0, 0) == 0.0


def _sphere_grid(n=40):
    c, wc = np.polynomial.legendre.leggauss(n)
    phi = 2 * np.pi * np.arange(2 * n) / (2 * n)
    theta = np.arccos(c)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(wc, np.full(2 * n, np.pi / n))
    return T, P, W


@pytest.mark.parametrize("l1,m1,l2,m2,l3,m3", [(2, 0, 2, 0, 0, 0), (2, 1, 2, 0, 1, 1), (3, -2, 1, -1, 2, -1),
                                               (2, 2, 2, 0, 2, 2), (1, 0, 2, 1, 1, -1)])
def test_gaunt_against_sphere_quadrature(l1, m1, l2, m2, l3, m3):
    from scipy.special import sph_harm_y

    T, P, W = _sphere_grid()
    f = np.conj(sph_harm_y(l1, m1, T, P)) * sph_harm_y(l2, m2, T, P) * sph_harm_y(l3, m3, T, P)
    assert gaunt(l1, m1, l2, m2, l3, m3) == pytest.approx(np.sum(W * f).real, abs=1e-13)


@given(st.integers(0, 3), st.integers(0, 4), st.integers(0, 3), st.data())
def test_x_axis_legendre_element_against_quadrature(l1, k, l2, data):
    from scipy.special import sph_harm_y

    m1 = data.draw(st.integers(-l1, l1))
    m2 = data.draw(st.integers(-l2, l2))
    T, P, W = _sphere_grid(24)
    xhat = np.sin(T) * np.cos(P)
    f = np.conj(sph_harm_y(l1, m1, T, P)) * legendre_P(k, xhat) * sph_harm_y(l2, m2, T, P)
    assert legendre_x_axis_element(l1, m1, k, l2, m2) == pytest.approx(np.sum(W * f).real, abs=1e-12)
