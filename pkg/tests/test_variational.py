import json
import math

import numpy as np
import pytest

from cylhardy import constants as C
from cylhardy import extremals as X
from cylhardy import functional as F
from cylhardy import spectral as S
from cylhardy import variational as V
from cylhardy.errors import DegenerateInputError, DomainError

BREAKING = C.Params.interpolation(3, -1.0, 2.2, 0.2)
SYMMETRIC = C.Params.interpolation(3, 0.0, 4.0, 1.0)
EXAMPLE = C.Params.interpolation(3, -1.0, 2.2, 0.3)


def trap(v, h):
    return h * (v.sum() - 0.5 * (v[0] + v[-1]))


def sech2(x):
    x = np.abs(x)
    return np.exp(2 * (math.log(2.0) - x - np.log1p(np.exp(-2 * x))))


@pytest.mark.parametrize("params", [SYMMETRIC, EXAMPLE, C.Params.interpolation(5, -0.5, 3.0, 0.9)])
def test_radial_state_reproduces_radial_constant(params):
    w0 = X.interp_extremal(params.theta, params.p, params.sigma)
    state = V.TwoModeState(w0, w0.scaled(0.0))
    q = V.evaluate_quotient(state, params)
    assert abs(q.normalized / C.c_star_interp(params) - 1) < 1e-7
    assert abs(V.deficit_functional(state, params)) < 1e-8 * q.energy


def test_flip_symmetry():
    state = V.perturbed_extremal(EXAMPLE, 0.3)
    a = V.evaluate_quotient(state, EXAMPLE)
    b = V.evaluate_quotient(state.flipped(), EXAMPLE)
    assert a.quotient == pytest.approx(b.quotient, rel=1e-13)


def test_angular_rule_exact_for_polynomials():
    """Moments of Y1 = sqrt(d) t: E[Y1^2] = 1 and E[Y1^4] = 3d/(d+2) under the uniform measure."""
    for d in (2, 3, 4, 6):
        w0 = np.array([1.0])
        for coef in (0.0, 0.7):
            two = V._lp_two_mode(w0, np.array([coef]), 1.0, 2.0, d, 64)[0]
            four = V._lp_two_mode(w0, np.array([coef]), 1.0, 4.0, d, 64)[0]
            assert two == pytest.approx(1 + coef**2, rel=1e-13)
            assert four == pytest.approx(1 + 6 * coef**2 + coef**4 * 3 * d / (d + 2), rel=1e-13)


def _quadratic_form(params, w, phi, sector):
    c = C.linearization_coeffs(params)
    h = w.h
    dphi = F.derivative(phi, h, 8)
    q = trap(dphi**2, h) - c.kappa * trap(sech2(c.lam * w.s) * phi**2, h) + c.mu * trap(phi**2, h)
    if sector == 0:
        q -= c.nu * trap(w.values * phi, h) ** 2
    else:
        q += (params.d - 1) * trap(phi**2, h)
    return q


def _second_difference(params, w, phi, sector, eps=1e-3):
    def J(e):
        if sector == 0:
            st = V.TwoModeState(w.with_values(w.values + e * phi), w.scaled(0.0))
        else:
            st = V.TwoModeState(w, w.with_values(e * phi))
        return V.deficit_functional(st, params)

    return (J(eps) + J(-eps) - 2 * J(0.0)) / eps**2


def _directions(params, w, rng, count=5):
    """Random directions phi = w * g with g a Gaussian-damped quadratic in lam s.

    |w + e phi|^p is not analytic where w vanishes faster than phi; keeping
    phi / w bounded makes the second-order expansion uniform in s.
    """
    x = C.lambda_extremal(params.theta, params.p, params.sigma) * w.s
    for _ in range(count):
        c0, c1, c2, m = rng.normal(size=4)
        width = rng.uniform(0.5, 2.0)
        yield w.values * (c0 + c1 * x + c2 * x**2) * np.exp(-(((x - 0.5 * m) / width) ** 2))


def _radial_projection(params, w, phi):
    # orthogonality to w^(p-1), projecting along w
    h = w.h
    wp1 = w.values ** (params.p - 1)
    return phi - trap(wp1 * phi, h) / trap(wp1 * w.values, h) * w.values


@pytest.mark.parametrize("params", [EXAMPLE, BREAKING, C.Params.interpolation(4, -0.3, 3.0, 0.7)])
def test_second_difference_matches_quadratic_form(params):
    rng = np.random.default_rng(9)
    lam = C.lambda_extremal(params.theta, params.p, params.sigma)
    w = X.interp_extremal(params.theta, params.p, params.sigma, half_width=30 / lam)
    for phi in _directions(params, w, rng):
        for sector, f in ((0, _radial_projection(params, w, phi)), (1, phi)):
            q2 = _quadratic_form(params, w, f, sector)
            diff = _second_difference(params, w, f, sector)
            assert diff == pytest.approx(2 * q2, rel=1e-2), (sector, diff, 2 * q2)


def test_second_difference_generic_direction_converges():
    """For directions decaying slower than w the expansion holds only as e -> 0."""
    params = EXAMPLE
    lam = C.lambda_extremal(params.theta, params.p, params.sigma)
    w = X.interp_extremal(params.theta, params.p, params.sigma, half_width=30 / lam)
    x = lam * w.s
    phi = _radial_projection(params, w, (0.3 + 0.5 * x - 0.2 * x * x) * np.exp(-((x / 1.3) ** 2)))
    q2 = _quadratic_form(params, w, phi, 0)
    errs = [abs(_second_difference(params, w, phi, 0, eps) / (2 * q2) - 1) for eps in (1e-2, 1e-3, 1e-4, 1e-5)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-3


@pytest.mark.parametrize("params", [BREAKING, SYMMETRIC, EXAMPLE])
def test_second_difference_along_phi10_has_sign_of_eigenvalue(params):
    w = X.interp_extremal(params.theta, params.p, params.sigma)
    phi = V.phi_10(params, w.s)
    diff = _second_difference(params, w, phi, 1)
    lam10 = C.eig_interp(1, 0, params)
    fd = S.check_interp_mode(1, 0, params, refine=False).numeric
    assert np.sign(diff) == np.sign(lam10) == np.sign(fd)
    # phi_10 is an eigenfunction, so the ratio is the eigenvalue itself
    assert diff / (2 * trap(phi**2, w.h)) == pytest.approx(lam10, rel=1e-3)


def test_zero_start_stays_radial():
    res = V.minimize_deficit(SYMMETRIC, epsilon=0.0)
    # odd angular moments cancel only to roundoff
    assert np.max(np.abs(res.state.w1.values)) < 1e-15 * np.max(res.state.w0.values)
    assert abs(res.delta) < 1e-6
    assert res.converged


def test_descent_is_monotone():
    res = V.minimize_deficit(BREAKING, epsilon=0.05)
    hist = np.array(res.history)
    assert np.all(np.diff(hist) <= 0.0)
    assert hist[-1] < hist[0]


def test_breaking_certificate():
    res = V.minimize_deficit(BREAKING, epsilon=0.05)
    assert res.converged
    assert res.delta > 10 * res.value.rel_error
    assert res.certified
    assert res.phi_final < 0
    assert np.max(np.abs(res.state.w1.values)) > 1e-2


def test_symmetric_case_returns_to_radial():
    res = V.minimize_deficit(SYMMETRIC, epsilon=0.05)
    assert res.converged
    assert res.delta <= 10 * res.value.rel_error
    assert not res.certified
    assert np.max(np.abs(res.state.w1.values)) < 1e-3


def test_certificate_soundness():
    """Every quotient of a trial state stays below a valid upper bound on the optimal constant."""
    rng = np.random.default_rng(3)
    # the bound is rigorous (non-proxy) when radial symmetry of the Sobolev-type optimizer is known: a >= 0
    params = [SYMMETRIC, C.Params.interpolation(3, 0.2, 3.0, 0.7), C.Params.interpolation(5, 0.5, 2.5, 0.6),
              C.Params.interpolation(4, 0.3, 3.0, 0.9)]
    checked = 0
    for P in params:
        ub = C.upper_bound_interp(P)
        assert not ub.proxy
        w = X.interp_extremal(P.theta, P.p, P.sigma, n=4097)
        lam = C.lambda_extremal(P.theta, P.p, P.sigma)
        for _ in range(5):
            a, b = rng.normal(size=2)
            w1 = w.with_values(a * V.phi_10(P, w.s) + b * np.exp(-((lam * w.s) ** 2)) * lam * w.s)
            q = V.evaluate_quotient(V.TwoModeState(w, w1), P)
            assert q.normalized <= ub.value * (1 + q.rel_error)
            checked += 1
        res = V.minimize_deficit(P, n=1025)
        assert res.value.normalized <= ub.value * (1 + res.value.rel_error)
    assert checked == 20


def test_state_validation_and_csv(tmp_path):
    w = X.interp_extremal(1, 4, 1, n=1025)
    with pytest.raises(DomainError):
        V.TwoModeState(w, X.interp_extremal(1, 4, 1, n=513))
    with pytest.raises(DegenerateInputError):
        V.TwoModeState(w.scaled(0.0), w)
    state = V.perturbed_extremal(SYMMETRIC, 0.1, n=1025)
    path = tmp_path / "state.csv"
    state.to_csv(path)
    rows = path.read_text().splitlines()
    assert rows[0] == "s,w0,w1" and len(rows) == 1026


def test_result_json():
    res = V.minimize_deficit(BREAKING, epsilon=0.05, n=1025)
    obj = json.loads(res.to_json())
    assert obj["certified"] == res.certified
    assert obj["delta"] == pytest.approx(res.delta)
    assert obj["quotient"]["params"]["theta"] == 0.2
