"""Special-function kernel against scipy and mpmath oracles."""
import math

import mpmath
import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given
from hypothesis import strategies as st

from solvstates import DomainError
from solvstates import specfun


def test_log_gamma_against_scipy():
    xs = np.array([0.5, 1.0, 2.7, 11.25, 140.0, 3000.5])
    got = np.array([specfun.log_gamma(x) for x in xs])
    assert np.allclose(got, sp.gammaln(xs), rtol=1e-14, atol=1e-13)


def test_log_gamma_positive_domain():
    with pytest.raises(DomainError):
        specfun.log_gamma(0.0)
    with pytest.raises(DomainError):
        specfun.log_gamma(-1.5)


@pytest.mark.parametrize("n,a,b", [(0, 1.5, 0.7), (3, 1.5, 0.7), (7, 0.5, 2.5), (12, 3.0, 3.0)])
def test_jacobi_matches_scipy(n, a, b):
    xs = np.linspace(-0.95, 0.95, 11)
    got = specfun.jacobi_p(n, a, b, xs)
    want = sp.eval_jacobi(n, a, b, xs)
    assert np.allclose(got, want, rtol=1e-11, atol=1e-13)


def test_jacobi_negative_parameters_against_mpmath():
    # parameters at or below -1 are outside scipy's reliable range;
    # integer a+b = -m is a genuine degeneracy of the recurrence and is
    # not reachable from the disk expansions, so it stays out of scope
    for n, a, b in [(4, -2.5, 1.0), (6, -5.0, -1.5), (3, -1.3, -1.1)]:
        for x in (-0.4, 0.0, 0.3):
            want = complex(mpmath.jacobi(n, a, b, x))
            got = specfun.jacobi_p(n, a, b, x)
            assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


@given(st.integers(min_value=0, max_value=10),
       st.floats(min_value=-0.9, max_value=0.9))
def test_jacobi_reflection_symmetry(n, x):
    a, b = 1.2, 0.8
    left = specfun.jacobi_p(n, a, b, -x)
    right = (-1.0) ** n * specfun.jacobi_p(n, b, a, x)
    assert left == pytest.approx(right, rel=1e-12, abs=1e-12)


def test_hyp1f1_real_against_mpmath():
    for a, b, z in [(1.5, 4.0, 0.7), (2.0, 5.4, -3.0), (0.5, 2.0, 10.0)]:
        want = complex(mpmath.hyp1f1(a, b, z))
        got = specfun.hyp1f1(a, b, z)
        assert abs(got - want) < 1e-11 * abs(want)


def test_hyp1f1_complex_parameters_against_mpmath():
    # complex a is the case the disk expansions feed in
    for a, b, z in [(1.0 + 2.0j, 4.0, 0.5 + 0.3j),
                    (-0.7 + 1.1j, 5.4, 1.0j),
                    (2.5 - 0.4j, 3.0, -0.8 + 0.2j)]:
        want = complex(mpmath.hyp1f1(a, b, z))
        got = specfun.hyp1f1(a, b, z)
        assert abs(got - want) < 1e-11 * max(1.0, abs(want))


def test_kummer_transformation():
    # e^-z M(a,b,z) = M(b-a,b,-z)
    for a, b, z in [(1.2, 3.7, 0.9), (0.4 + 0.6j, 4.2, 1.1 - 0.5j)]:
        lhs = np.exp(-z) * specfun.hyp1f1(a, b, z)
        rhs = specfun.hyp1f1(b - a, b, -z)
        assert abs(lhs - rhs) < 1e-12 * abs(lhs)


def test_hyp0f1_against_mpmath():
    for b, z in [(5.0, 1.0), (3.4, -2.0), (2.0, 0.25 + 1.0j)]:
        want = complex(mpmath.hyp0f1(b, z))
        got = specfun.hyp0f1(b, z)
        assert abs(got - want) < 1e-12 * max(1.0, abs(want))


@pytest.mark.parametrize("nu", [2.0, 4.0, 5.4])
def test_bessel_i_against_scipy(nu):
    xs = np.array([0.3, 1.0, 2.5, 6.0])
    got = np.array([specfun.bessel_i(nu, x) for x in xs])
    assert np.allclose(got, sp.iv(nu, xs), rtol=1e-12)


@pytest.mark.parametrize("nu", [2.0, 4.0, 5.4])
def test_bessel_k_against_scipy(nu):
    xs = np.array([0.3, 1.0, 2.5, 6.0])
    got = np.array([specfun.bessel_k(nu, x) for x in xs])
    assert np.allclose(got, sp.kv(nu, xs), rtol=1e-11)


@pytest.mark.parametrize("nu", [2.0, 5.4])
@pytest.mark.parametrize("x", [0.7, 2.5])
def test_bessel_wronskian(nu, x):
    w = x * (specfun.bessel_i(nu, x) * specfun.bessel_k(nu + 1.0, x)
             + specfun.bessel_i(nu + 1.0, x) * specfun.bessel_k(nu, x))
    assert w == pytest.approx(1.0, abs=1e-12)


def test_gauss_legendre_nodes_match_numpy():
    rule = specfun.gauss_legendre(24)
    xs, ws = np.polynomial.legendre.leggauss(24)
    assert np.allclose(np.sort(rule.nodes), xs, atol=1e-14)
    assert np.allclose(rule.weights[np.argsort(rule.nodes)], ws, atol=1e-14)


def test_gauss_legendre_exactness():
    # order m integrates monomials up to degree 2m-1 exactly
    rule = specfun.gauss_legendre(12)
    for k in range(24):
        got = rule.integrate(lambda x: x ** k, -1.0, 1.0)
        want = 0.0 if k % 2 else 2.0 / (k + 1)
        assert got == pytest.approx(want, abs=1e-13)


def test_gauss_legendre_scaled_interval():
    rule = specfun.gauss_legendre(40)
    got = rule.integrate(np.exp, 0.0, 2.0)
    assert got == pytest.approx(math.e ** 2 - 1.0, rel=1e-14)


def test_gauss_legendre_order_guard():
    with pytest.raises(DomainError):
        specfun.gauss_legendre(0)
    with pytest.raises(DomainError):
        specfun.gauss_legendre(1000)
