import json
import math

import numpy as np
import pytest
from scipy.linalg import eigvalsh

from cylhardy import constants as C
from cylhardy import extremals as X
from cylhardy import spectral as S
from cylhardy.errors import DomainError, DomainTooSmallError, SpectrumError

import draws


def sech2(x):
    x = np.abs(x)
    return np.exp(2 * (math.log(2.0) - x - np.log1p(np.exp(-2 * x))))


# --------------------------------------------------------------------------
# Solver


def test_oscillator_ladder():
    A = 2.0
    spec = S.SchrodingerSpec(lambda s: 0.25 * A * A * s**2 - 1.5 * A, 0.0, 16.0, 4097)
    lam = S.lowest_eigenvalues(spec, 4)
    np.testing.assert_allclose(lam, [A * (j + 0.5) - 1.5 * A for j in range(4)], atol=5e-4)
    np.testing.assert_allclose(lam, [C.eig_glh(0, j, 0.75, 1.0, 3) for j in range(4)], atol=5e-4)


def test_reflectionless_well_ground_state():
    for lam_ in (0.5, 1.0, 1.7):
        kappa = 2 * lam_**2
        spec = S.SchrodingerSpec(lambda s: -kappa * sech2(lam_ * s), 0.0, 40 / lam_, 8193)
        assert S.lowest_eigenvalues(spec, 1)[0] == pytest.approx(-lam_**2, rel=1e-5)


def test_free_laplacian_bottom():
    """Dirichlet box on [-L, L]: lowest FD eigenvalue is (2 - 2 cos(pi h / (2L))) / h^2 above the shift."""
    for shift in (0.0, 2.0):
        for L in (50.0, 400.0):
            spec = S.SchrodingerSpec(lambda s: 0 * s, shift, L, 8193)
            lam = S.lowest_eigenvalues(spec, 1, check_decay=False)[0]
            h = spec.h
            exact = (2 - 2 * math.cos(math.pi * h / (2 * L))) / h**2
            # absolute accuracy of bisection is a few eps * ||T|| = eps * 4/h^2
            assert lam - shift == pytest.approx(exact, abs=64 * np.finfo(float).eps * 4 / h**2)
    # gap to the continuum bottom is ~ (pi / 2L)^2: 1e-3 at L = 50, below 1e-5 at L = 500
    big = S.SchrodingerSpec(lambda s: 0 * s, 0.0, 500.0, 16385)
    assert S.lowest_eigenvalues(big, 1, check_decay=False)[0] < 1e-5


def test_sturm_count_matches_dense_solver():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(5, 60))
        diag = rng.normal(size=n)
        off = rng.normal(size=n - 1)
        T = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
        ev = eigvalsh(T)
        for x in rng.normal(size=5) * 2:
            assert S.sturm_count(diag, off, x) == int(np.sum(ev < x))


def test_eigenvalues_match_dense_solver():
    spec = S.SchrodingerSpec(lambda s: s**2 / 4 - 1, 1.0, 12.0, 301)
    diag, off = spec.tridiagonal()
    T = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    np.testing.assert_allclose(S.lowest_eigenvalues(spec, 5, check_decay=False), eigvalsh(T)[:5], rtol=1e-12, atol=1e-12)


def test_domain_too_small():
    spec = S.SchrodingerSpec(lambda s: 0.01 * s**2, 0.0, 5.0, 1001)
    with pytest.raises(DomainTooSmallError) as info:
        S.lowest_eigenvalues(spec, 1)
    assert info.value.suggested_half_width > 5.0


def test_solver_input_checks():
    with pytest.raises(DomainError):
        S.SchrodingerSpec(lambda s: s, 0.0, 1.0, 3)
    with pytest.raises(SpectrumError):
        S.lowest_eigenvalues(S.SchrodingerSpec(lambda s: s * s, 0.0, 10.0, 41), 20)
    with pytest.raises(DomainError):
        with np.errstate(divide="ignore"):
            S.lowest_eigenvalues(S.SchrodingerSpec(lambda s: 1 / s, 0.0, 10.0, 41), 1)


def test_eigenvector_parity():
    params = C.Params.interpolation(3, 0.0, 4.0, 1.0)
    spec = S.pt_spec(1, params)
    _, vec = S.lowest_eigenvalues(spec, 2, vectors=True)
    v0, v1 = vec[:, 0], vec[:, 1]
    np.testing.assert_allclose(v0, v0[::-1], atol=1e-10)
    np.testing.assert_allclose(v1, -v1[::-1], atol=1e-10)
    assert np.all(v0 * np.sign(v0[v0.size // 2]) > -1e-14)
    osc = S.oscillator_spec(1, 0.9, 1.5, 3)
    _, vec = S.lowest_eigenvalues(osc, 2, vectors=True)
    np.testing.assert_allclose(vec[:, 0], vec[::-1, 0], atol=1e-10)
    np.testing.assert_allclose(vec[:, 1], -vec[::-1, 1], atol=1e-10)


# --------------------------------------------------------------------------
# Linearized operators


def test_interp_mode_example_breaking_point():
    """(1,0) at (3,-1,2.2,0.3): closed form +0.228125; FD agrees within a second-order gap."""
    params = C.Params.interpolation(3, -1.0, 2.2, 0.3)
    rep = S.check_interp_mode(1, 0, params)
    assert rep.closed_form == pytest.approx(0.228125, rel=1e-12)
    assert rep.signs_agree
    assert 1.9 <= rep.order <= 2.1
    assert abs(rep.gap_extrapolated) < 1e-7
    # raw gap at (L=200, n=8193)
    assert abs(rep.gap) == pytest.approx(1.21e-4, rel=0.02)


def test_interp_mode_breaking_theta():
    params = C.Params.interpolation(3, -1.0, 2.2, 0.2)
    rep = S.check_interp_mode(1, 0, params)
    assert rep.closed_form < 0 and rep.numeric < 0
    assert 1.9 <= rep.order <= 2.1
    assert abs(rep.gap_extrapolated) < 1e-7


def test_interp_mode_symmetric_case():
    params = C.Params.interpolation(3, 0.0, 4.0, 1.0)
    rep = S.check_interp_mode(1, 0, params)
    assert rep.closed_form == pytest.approx(1.25) and rep.numeric > 0
    assert abs(rep.gap) < 1e-4 and 1.9 <= rep.order <= 2.1
    g = S.check_interp_mode(0, 0, params)
    assert g.closed_form == pytest.approx(-0.75) and abs(g.gap) < 1e-4
    # translation mode: j = 1 in sector 0 is zero
    assert S.check_interp_mode(0, 1, params, refine=False).numeric == pytest.approx(0.0, abs=1e-4)


def test_interp_sector_zero_requires_theta_one():
    with pytest.raises(SpectrumError):
        S.check_interp_mode(0, 0, C.Params.interpolation(3, -1.0, 2.2, 0.3))


@pytest.mark.parametrize("params", [
    C.Params.interpolation(3, 0.0, 4.0, 1.0),
    C.Params.interpolation(5, -1.0, 3.0, 0.9),
    C.Params.interpolation(4, -0.5, 3.5, 1.0),
])
def test_ground_state_is_power_of_extremal(params):
    s, v = S.interp_ground_state(0, params)
    w = X.interp_extremal(params.theta, params.p, params.sigma)
    wbar = np.interp(s, w.s, w.values)
    target = wbar ** (params.p / 2)
    corr = np.dot(v, target) / np.linalg.norm(target)
    assert corr > 0.999999
    # the profile itself is not the ground state
    assert np.dot(v, wbar) / np.linalg.norm(wbar) < 0.9999


def test_glh_mode_examples():
    rep = S.check_glh_mode(1, 0, 0.9, 1.5, 3)
    assert rep.extra["A"] == pytest.approx(4 * 1.5**2 / 2.6)
    assert rep.closed_form == pytest.approx(2 - 4 * 1.5**2 / 2.6)
    assert rep.numeric < 0 and abs(rep.gap) < 1e-4
    assert 1.9 <= rep.order <= 2.1
    two = S.check_glh_mode(2, 0, 0.9, 1.5, 3)
    assert two.closed_form == pytest.approx(6 - rep.extra["A"])
    assert abs(two.gap) < 1e-4
    # A = d - 1: gamma = (4 sigma^2 / 2 + 1) / 4
    sigma = 1.5
    gamma = (2 * sigma**2 + 1) / 4
    edge = S.check_glh_mode(1, 0, gamma, sigma, 3)
    assert edge.closed_form == pytest.approx(0.0, abs=1e-14)
    assert abs(edge.numeric) < 1e-4


def test_glh_sign_matches_region():
    # the breaking theorem speaks for gamma >= d/4 only
    for gamma, a in [(0.9, -1.0), (1.2, -1.0), (0.75, -1.0), (1.0, 0.0), (0.8, -0.6), (3.0, -1.0)]:
        sigma = C.sigma_of(a, 3)
        rep = S.check_glh_mode(1, 0, gamma, sigma, 3, refine=False)
        assert (rep.numeric < 0) == (C.region_glh(gamma, a, 3) is C.Region.BREAKING)


def test_grid_convergence_ratio():
    rng = np.random.default_rng(21)
    for P in draws.draw_interp(rng, 5, negative=1):
        rep = S.check_interp_mode(1, 0, P)
        ratio = rep.gap / (rep.numeric_refined - rep.closed_form)
        assert 3.5 <= ratio <= 4.5
    for gamma, sigma, d, _ in draws.draw_glh(rng, 5, negative=1):
        rep = S.check_glh_mode(1, 0, gamma, sigma, d, half_width=200.0)
        ratio = rep.gap / (rep.numeric_refined - rep.closed_form)
        assert 3.5 <= ratio <= 4.5


def test_sturm_negative_count_matches_region_interp():
    rng = np.random.default_rng(22)
    for P in draws.draw_interp(rng, 50, negative=15):
        count = S.count_negative(S.pt_spec(1, P))
        breaking = C.region_interp(P) is C.Region.BREAKING
        assert count == (1 if breaking else 0), P


def test_sturm_negative_count_matches_region_glh():
    rng = np.random.default_rng(23)
    for gamma, sigma, d, a in draws.draw_glh(rng, 50, negative=15):
        count = S.count_negative(S.oscillator_spec(1, gamma, sigma, d, half_width=200.0))
        breaking = C.region_glh(gamma, a, d) is C.Region.BREAKING
        assert count == (1 if breaking else 0), (gamma, a, d)


def test_stiff_wells_converge_after_extrapolation():
    """Outside the resolved box the raw gap exceeds 1e-4 but stays second order."""
    rng = np.random.default_rng(24)
    seen = 0
    for P in draws.draw_any_interp(rng, 400):
        c = C.linearization_coeffs(P)
        if not (1.5 < c.ell * c.lam**2 < 3 and c.lam * c.ell * 200 > 35):
            continue
        rep = S.check_interp_mode(1, 0, P)
        assert 1.9 <= rep.order <= 2.1
        assert abs(rep.gap_extrapolated) < 1e-6
        seen += 1
        if seen == 5:
            break
    assert seen == 5


def test_report_json():
    rep = S.check_glh_mode(1, 0, 0.9, 1.5, 3)
    obj = json.loads(rep.to_json())
    assert obj["mode"] == {"i": 1, "j": 0}
    assert obj["closed_form"] == rep.closed_form
    assert obj["grid"]["n"] == 8193
    assert obj["order"] == pytest.approx(rep.order)
