import math

import numpy as np
import pytest
from scipy import integrate

from cylhardy import constants as C
from cylhardy import extremals as X
from cylhardy import functional as F
from cylhardy.errors import DomainError, NoExtremalError, ResolutionError


def test_interp_extremal_is_sech_for_theta_one_p_four():
    w = X.interp_extremal(1, 4, 1)
    np.testing.assert_allclose(w.values, 1 / np.cosh(w.s), rtol=1e-13, atol=1e-300)
    assert w.n == 8193 and w.is_even


@pytest.mark.parametrize("theta,p,sigma", [(1, 4, 1), (0.3, 2.2, 2.5), (0.9, 5.0, 0.4), (0.55, 3.0, 1.0)])
def test_interp_extremal_peak_and_ode(theta, p, sigma):
    w = X.interp_extremal(theta, p, sigma)
    assert w.values[w.n // 2] == 1.0
    lam = C.lambda_extremal(theta, p, sigma)
    # (p-2)^2 w'' - 4 w + 2p w^(p-1) = 0 in the variable lam s; O(h^2) residual from the 3-point stencil
    v, h = w.values, w.h * lam
    wpp = (v[2:] - 2 * v[1:-1] + v[:-2]) / h**2
    res = (p - 2) ** 2 * wpp - 4 * v[1:-1] + 2 * p * v[1:-1] ** (p - 1)
    scale = (p - 2) ** 2 * np.max(np.abs(wpp))
    assert np.max(np.abs(res)) < 10 * h**2 * scale
    # halving the step shrinks the residual by ~4
    w2 = X.interp_extremal(theta, p, sigma, n=2 * w.n - 1)
    v2, h2 = w2.values, w2.h * lam
    res2 = (p - 2) ** 2 * (v2[2:] - 2 * v2[1:-1] + v2[:-2]) / h2**2 - 4 * v2[1:-1] + 2 * p * v2[1:-1] ** (p - 1)
    ratio = np.max(np.abs(res)) / np.max(np.abs(res2))
    assert 3.5 < ratio < 4.5


def test_interp_extremal_tail_below_envelope():
    w = X.interp_extremal(0.7, 3.0, 1.2)
    assert np.all(np.abs(w.values) <= w.envelope_at(w.s) * (1 + 1e-12))
    assert w.values[0] < 1e-17


def test_interp_extremal_errors():
    with pytest.raises(NoExtremalError):
        X.interp_extremal((4 - 2) / 8, 4, 1)
    with pytest.raises(ResolutionError):
        X.interp_extremal(1, 4, 1, n=33)


def test_glh_extremal_normalized():
    w = X.glh_extremal(0.5, 1.0)
    np.testing.assert_allclose(w.values, (2 / math.pi) ** 0.25 * np.exp(-w.s**2), rtol=1e-13)
    assert F.profile_integrals(w).mass.value == pytest.approx(1.0, abs=1e-10)
    assert w.is_even
    with pytest.raises(NoExtremalError):
        X.glh_extremal(0.25, 1.0)


def test_profile_validation_and_immutability():
    w = X.gaussian_profile()
    with pytest.raises(ValueError):
        w.values[0] = 1.0
    with pytest.raises(DomainError):
        X.Profile(1.0, np.ones(4), 1.0)
    with pytest.raises(DomainError):
        X.Profile(1.0, np.array([0.0, np.nan, 0.0]), 1.0)
    odd = X.Profile.from_function(lambda s: s * np.exp(-s * s), 10, 101, 1.0, "gaussian")
    assert not odd.is_even


def test_profile_csv_round_trip(tmp_path):
    w = X.interp_extremal(0.8, 3.0, 1.0, n=1025)
    path = tmp_path / "w.csv"
    w.to_csv(path)
    assert path.read_text().splitlines()[0] == "s,w"
    back = X.Profile.from_csv(path, decay_rate=w.decay_rate)
    np.testing.assert_array_equal(back.values, w.values)
    assert back.half_width == pytest.approx(w.half_width, rel=1e-15)
    fitted = X.Profile.from_csv(path)
    assert fitted.decay_rate == pytest.approx(w.decay_rate, rel=1e-3)


def test_euclidean_sech_example():
    w = X.sech_profile(1.0, 1.0, half_width=20, n=2001)
    u = X.to_euclidean(w, 3, 0.0)
    np.testing.assert_allclose(u.values, u.r**-0.5 / np.cosh(np.log(u.r)), rtol=1e-12)
    mid = np.argmin(np.abs(u.r - 1))
    assert u.r[mid] == pytest.approx(1.0) and u.values[mid] == pytest.approx(1.0)


@pytest.mark.parametrize("d,a", [(3, 0.0), (2, -0.7), (5, 1.2), (4, -3.0)])
def test_euclidean_round_trip(d, a):
    w = X.interp_extremal(0.8, 3.0, C.sigma_of(a, d), n=2049)
    back = X.from_euclidean(X.to_euclidean(w, d, a), decay_rate=w.decay_rate)
    np.testing.assert_allclose(back.values, w.values, rtol=1e-12, atol=1e-300)
    np.testing.assert_allclose(back.s, w.s, atol=1e-12 * w.half_width)


def test_euclidean_integrals_match_cylinder():
    """Radial integrals in R^d (by independent quadrature in r) equal the cylinder ones times |S^{d-1}|."""
    d, a, p = 3, -0.5, 3.0
    sigma = C.sigma_of(a, d)
    b = a + 1 + d * (1 / p - 0.5)
    lam = C.lambda_extremal(1.0, p, sigma)
    e = 2 / (p - 2)
    wfun = lambda s: math.exp(-e * (abs(lam * s) + math.log1p(math.exp(-2 * abs(lam * s))) - math.log(2)))
    wp = lambda s: -e * lam * math.tanh(lam * s) * wfun(s)
    u = lambda r: r**-sigma * wfun(-math.log(r))
    du = lambda r: r ** (-sigma - 1) * (-sigma * wfun(-math.log(r)) - wp(-math.log(r)))
    area = C.sphere_area(d)
    q = lambda f: integrate.quad(f, 0, 1, limit=400, epsrel=1e-12)[0] + integrate.quad(f, 1, np.inf, limit=400, epsrel=1e-12)[0]
    eu_mass = area * q(lambda r: u(r) ** 2 * r ** (-2 * (a + 1)) * r ** (d - 1))
    eu_grad = area * q(lambda r: du(r) ** 2 * r ** (-2 * a) * r ** (d - 1))
    eu_lp = area * q(lambda r: u(r) ** p * r ** (-b * p) * r ** (d - 1))
    I = F.profile_integrals(X.interp_extremal(1.0, p, sigma), p=p)
    assert eu_mass == pytest.approx(area * I.mass.value, rel=1e-9)
    assert eu_grad == pytest.approx(area * (I.grad.value + sigma**2 * I.mass.value), rel=1e-9)
    assert eu_lp == pytest.approx(area * I.lp.value, rel=1e-9)


def test_log_hardy_optimizer_matches_gaussian_profile():
    d = 3
    w = X.glh_extremal(d / 4, (d - 2) / 2, n=4097)
    u = X.to_euclidean(w, d, 0.0)
    ref = X.lh_optimizer_profile(d, u.r)
    ratio = u.values / ref
    keep = ref > 1e-200
    np.testing.assert_allclose(ratio[keep], ratio[keep][0], rtol=1e-10)


def test_scaling_is_a_shift():
    """u -> lambda^sigma u(lambda x) is s -> s - log(lambda): integrals unchanged."""
    theta, p, sigma = 0.8, 3.0, 1.0
    lam = C.lambda_extremal(theta, p, sigma)
    base = X.interp_extremal(theta, p, sigma, half_width=60 / lam)
    e = 2 / (p - 2)
    f = lambda s: np.exp(-e * (np.abs(lam * s) + np.log1p(np.exp(-2 * np.abs(lam * s))) - math.log(2)))
    I0 = F.profile_integrals(base, p=p)
    for shift in (0.37, -2.5, 7.0):
        I = F.profile_integrals(X.shifted(base, shift, f), p=p)
        assert I.mass.value == pytest.approx(I0.mass.value, rel=1e-10)
        assert I.grad.value == pytest.approx(I0.grad.value, rel=1e-10)
        assert I.lp.value == pytest.approx(I0.lp.value, rel=1e-10)


def test_extremal_second_order_positivity_under_even_perturbations():
    rng = np.random.default_rng(4)
    for theta, p, sigma in [(1, 4, 1), (0.5, 3.0, 2.0), (0.3, 2.2, 2.5)]:
        w = X.interp_extremal(theta, p, sigma)
        lam = C.lambda_extremal(theta, p, sigma)
        for _ in range(5):
            c = rng.normal(size=3)
            x = lam * w.s
            phi = (c[0] + c[1] * x**2 + c[2] * np.cos(x)) * np.exp(-0.5 * x**2)
            pert = w.with_values(w.values + 1e-3 * phi)
            rep = F.quotient_interp(pert, theta, p, sigma)
            assert rep.deficit / rep.rhs > -1e-8
