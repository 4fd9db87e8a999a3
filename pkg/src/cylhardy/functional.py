"""Quadrature engine and deficit evaluation for the one-dimensional and
cylinder inequalities.

Every integral comes with an error estimate: for sampled profiles this
is |I_h - I_2h| (coarse rule on every other sample) plus the analytic
tail bound from the profile's decay envelope plus a roundoff floor.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import special

from . import constants as C
from ._io import dumps
from .errors import AccuracyError, DegenerateInputError, DomainError
from .extremals import EuclideanProfile, Profile

ENV_TOL = "CYLHARDY_QUAD_TOL"
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_refinements: int = 18
    fd_order: int = 8  # derivative stencil order for sampled profiles (2 or 8)
    angular_nodes: int = 64

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_refinements < 1:
            raise DomainError("max_refinements must be >= 1")
        if self.fd_order not in (2, 4, 8):
            raise DomainError("fd_order must be 2, 4 or 8")
        if self.angular_nodes < 4:
            raise DomainError("angular_nodes must be >= 4")

    @classmethod
    def default(cls) -> "QuadratureConfig":
        """Defaults, with both tolerances overridden by $CYLHARDY_QUAD_TOL when set."""
        tol = os.environ.get(ENV_TOL)
        if tol:
            try:
                t = float(tol)
            except ValueError:
                raise DomainError(f"{ENV_TOL}={tol!r} is not a number") from None
            return cls(abs_tol=t, rel_tol=t)
        return cls()


def _cfg(cfg):
    return QuadratureConfig.default() if cfg is None else cfg


# --------------------------------------------------------------------------
# Integration of callables on the line


def truncation_radius(decay_rate, tol, decay="exponential", envelope=1.0) -> float:
    """Smallest L with the analytic tail bound of |f| beyond |s| = L below tol."""
    r, env = float(decay_rate), float(envelope)
    if not r > 0:
        raise DomainError("decay_rate must be positive")
    if decay == "exponential":
        # 2 env exp(-r L) / r <= tol
        return max(math.log(2.0 * env / (r * tol)) / r, 1.0 / r)
    L = math.sqrt(max(math.log(env / (r * tol)), 1.0) / r)
    for _ in range(50):  # env exp(-r L^2)/(r L) <= tol, fixed point in L
        L = math.sqrt(max(math.log(env / (r * L * tol)), 1.0) / r)
    return L


def _tail(decay_rate, L, decay, envelope):
    if decay == "exponential":
        return 2.0 * envelope * math.exp(-decay_rate * L) / decay_rate
    return envelope * math.exp(-decay_rate * L * L) / (decay_rate * L)


def integrate_line(f, decay_rate, cfg=None, decay="exponential", envelope=1.0):
    """Integral of f over R for |f(s)| <= envelope * exp(-rate |s|) (or exp(-rate s^2)).

    Composite trapezoid on [-L, L], doubling the resolution until two
    successive values agree; for smooth decaying integrands the rule
    converges geometrically, so the last difference over-estimates the
    error.  Returns (value, error).
    """
    cfg = _cfg(cfg)
    L = truncation_radius(decay_rate, cfg.abs_tol / 10.0, decay, envelope)
    tail = _tail(decay_rate, L, decay, envelope)
    n = 64
    s = np.linspace(-L, L, n + 1)
    fs = np.asarray(f(s), dtype=float)
    h = 2.0 * L / n
    prev = h * (fs.sum() - 0.5 * (fs[0] + fs[-1]))
    for _ in range(cfg.max_refinements):
        mid = s[:-1] + 0.5 * h
        fm = np.asarray(f(mid), dtype=float)
        cur = 0.5 * prev + 0.5 * h * fm.sum()
        diff = abs(cur - prev)
        floor = 64 * _EPS * h * (np.abs(fs).sum() + np.abs(fm).sum())
        if diff <= max(cfg.abs_tol, cfg.rel_tol * abs(cur)):
            return cur, diff + tail + floor
        s = np.sort(np.concatenate([s, mid]))
        fs = np.asarray(f(s), dtype=float)
        h *= 0.5
        prev = cur
    raise AccuracyError(f"integrate_line did not converge in {cfg.max_refinements} refinements",
                        best=prev, error=diff + tail)


# --------------------------------------------------------------------------
# Sampled profiles

_STENCILS = {
    4: np.array([1 / 12, -2 / 3, 0.0, 2 / 3, -1 / 12]),
    8: np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280]),
}


def derivative(values, h, order=8) -> np.ndarray:
    """Centered finite-difference derivative of uniformly sampled data.

    order=2 is numpy's second-order scheme (one-sided at the ends).  Higher
    orders use the wide centered stencil in the interior and fall back to
    the second-order values on the few samples next to each end, where
    decaying profiles are negligible anyway.
    """
    v = np.asarray(values, dtype=float)
    out = np.gradient(v, h, edge_order=2)
    if order == 2 or v.size < 2 * order + 1:
        return out
    c = _STENCILS[order]
    k = order // 2
    inner = np.zeros(v.size - 2 * k)
    for j, cj in enumerate(c):
        if cj:
            inner += cj * v[j : j + inner.size]
    out[k:-k] = inner / h
    return out


def _trap(v, h):
    return h * (v.sum() - 0.5 * (v[0] + v[-1]))


@dataclass(frozen=True)
class Estimate:
    value: float
    error: float


def _sampled(fn, w: Profile, tail) -> Estimate:
    """Integral of fn(values, h) over the profile grid with an h-vs-2h estimate."""
    fine = fn(w.values, w.h)
    coarse = fn(w.values[::2], 2.0 * w.h)
    I1, I2 = _trap(fine, w.h), _trap(coarse, 2.0 * w.h)
    floor = 64 * _EPS * _trap(np.abs(fine), w.h) + 1e-300
    return Estimate(float(I1), float(abs(I1 - I2) + tail + floor))


def _grad_tail(w: Profile) -> float:
    # |w'| is bounded by (rate-scaled) envelope; exponential: |w'| <~ rate*env*e^{-rate s}
    if w.decay == "exponential":
        return w.decay_rate**2 * w.tail_bound(2.0)
    L = w.half_width
    return (2.0 * w.decay_rate * L) ** 2 * w.tail_bound(2.0)


@dataclass(frozen=True)
class ProfileIntegrals:
    """Integrals of a sampled profile appearing in the one-dimensional inequalities."""

    mass: Estimate  # int w^2
    grad: Estimate  # int w'^2
    lp: Estimate | None = None  # int |w|^p
    entropy: Estimate | None = None  # int w^2 log w^2
    p: float | None = None


def _xlogx_sq(v):
    v2 = v * v
    out = np.zeros_like(v2)
    keep = v2 >= 1e-300  # 0 log 0 := 0
    out[keep] = v2[keep] * np.log(v2[keep])
    return out


def profile_integrals(w: Profile, p=None, entropy=False, cfg=None) -> ProfileIntegrals:
    cfg = _cfg(cfg)
    order = cfg.fd_order
    mass = _sampled(lambda v, h: v * v, w, w.tail_bound(2.0))
    if not mass.value > 0:
        raise DegenerateInputError("profile vanishes identically")
    grad = _sampled(lambda v, h: derivative(v, h, order) ** 2, w, _grad_tail(w))
    lp = ent = None
    if p is not None:
        lp = _sampled(lambda v, h: np.abs(v) ** p, w, w.tail_bound(p))
    if entropy:
        # |w^2 log w^2| <= w^(2-eps) near the tail; use power 1.9 for the bound
        ent = _sampled(lambda v, h: _xlogx_sq(v), w, 40.0 * w.tail_bound(1.9))
    return ProfileIntegrals(mass, grad, lp, ent, p)


# --------------------------------------------------------------------------
# Reports


class InequalityId(str, enum.Enum):
    INTERP_1D = "Interp1D"
    GLH_1D = "GLH1D"
    LSI_CYLINDER = "LSICylinder"
    HARDY = "Hardy"
    HS = "HS"


@dataclass(frozen=True)
class DeficitReport:
    """rhs - lhs of an inequality in the orientation where >= 0 is the claim."""

    lhs: float
    rhs: float
    deficit: float
    quad_error: float
    inequality_id: InequalityId
    params: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.deficit >= -self.quad_error

    @property
    def relative_deficit(self) -> float:
        return self.deficit / abs(self.rhs) if self.rhs else math.inf

    def to_dict(self) -> dict:
        return {
            "inequality_id": self.inequality_id.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "deficit": self.deficit,
            "quad_error": self.quad_error,
            "verified": self.verified,
            "params": dict(self.params),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _report(lhs, rhs, err, ident, **params):
    return DeficitReport(float(lhs), float(rhs), float(rhs - lhs), float(err), ident, params)


def quotient_interp(w: Profile, theta, p, sigma, cfg=None) -> DeficitReport:
    """(int|w|^p)^(2/p) <= K (int|w'|^2 + sigma^2 int|w|^2)^theta (int|w|^2)^(1-theta)."""
    K = C.k_interp(theta, p, sigma)
    I = profile_integrals(w, p=p, cfg=cfg)
    M, G, N = I.mass, I.grad, I.lp
    E = G.value + sigma * sigma * M.value
    dE = G.error + sigma * sigma * M.error
    lhs = N.value ** (2.0 / p)
    rhs = K * E**theta * M.value ** (1.0 - theta)
    err = (2.0 / p) * lhs * N.error / N.value + rhs * (theta * dE / E + (1.0 - theta) * M.error / M.value)
    return _report(lhs, rhs, err, InequalityId.INTERP_1D, theta=theta, p=p, sigma=sigma)


def deficit_glh(w: Profile, gamma, sigma, cfg=None) -> DeficitReport:
    """int w^2 log(w^2/int w^2) + K(gamma,sigma) int w^2 <= 2 gamma int w^2 log(int w'^2/int w^2 + sigma^2)."""
    Kg = C.k_log_hardy(gamma, sigma)
    I = profile_integrals(w, entropy=True, cfg=cfg)
    M, G, S = I.mass, I.grad, I.entropy
    m = M.value
    lhs = S.value - m * math.log(m) + Kg * m
    x = G.value / m + sigma * sigma
    rhs = 2.0 * gamma * m * math.log(x)
    # first-order propagation of the three integral errors
    e_lhs = S.error + abs(Kg - math.log(m) - 1.0) * M.error
    e_rhs = 2.0 * gamma * (abs(math.log(x)) * M.error + (G.error + G.value / m * M.error) / x)
    return _report(lhs, rhs, e_lhs + e_rhs, InequalityId.GLH_1D, gamma=gamma, sigma=sigma)


# --------------------------------------------------------------------------
# Angular quadrature on S^{d-1} for functions of t = cos(polar angle)


def angular_rule(d: int, n: int = 64):
    """Nodes/weights for the uniform probability measure on S^{d-1}, reduced to t.

    The density is proportional to (1-t^2)^((d-3)/2); Gauss-Jacobi nodes
    absorb it, including the endpoint singularity when d = 2.
    """
    if d < 2:
        raise DomainError("angular integration needs d >= 2")
    alpha = (d - 3.0) / 2.0
    t, wts = special.roots_jacobi(n, alpha, alpha)
    # exact mirror symmetry, so odd moments vanish to roundoff
    t = 0.5 * (t - t[::-1])
    wts = 0.5 * (wts + wts[::-1])
    return t, wts / wts.sum()


def spherical_harmonic(i: int, d: int, t) -> np.ndarray:
    """Zonal harmonic of degree i on S^{d-1}, normalized to unit L^2(d mu) norm."""
    t = np.asarray(t, dtype=float)
    if i == 0:
        return np.ones_like(t)
    if d == 2:
        raw = special.eval_chebyt(i, t)
        norm2 = 0.5
    else:
        alpha = (d - 2.0) / 2.0
        raw = special.eval_gegenbauer(i, alpha, t)
        tq, wq = angular_rule(d, max(16, i + 2))
        norm2 = float(np.dot(wq, special.eval_gegenbauer(i, alpha, tq) ** 2))
    return raw / math.sqrt(norm2)


def verify_lsi_cylinder(w0: Profile, angular_mode=(0, 0.0), d=3, sigma=1.0, cfg=None) -> DeficitReport:
    """Logarithmic Sobolev inequality on R x S^{d-1} for w(s, omega) = w0(s) (1 + amp Y_i(omega)).

    Both sides use Lebesgue measure on the cylinder (|S^{d-1}| times the
    probability measure on the sphere factor).
    """
    cfg = _cfg(cfg)
    i, amp = angular_mode
    if d < 2 or not sigma > 0:
        raise DomainError("need d >= 2 and sigma > 0")
    area = C.sphere_area(d)
    I = profile_integrals(w0, entropy=True, cfg=cfg)
    M0, G0, S0 = I.mass, I.grad, I.entropy

    def ang(n):
        t, wt = angular_rule(d, n)
        y = spherical_harmonic(i, d, t) if i else np.zeros_like(t)
        g = 1.0 + amp * y
        return float(np.dot(wt, _xlogx_sq(g)))

    a2 = amp * amp if i else 0.0
    ent_ang = ang(cfg.angular_nodes)
    ent_ang_err = abs(ent_ang - ang(cfg.angular_nodes // 2)) + 64 * _EPS
    mass_c = area * M0.value * (1.0 + a2)
    grad_c = area * (G0.value * (1.0 + a2) + M0.value * a2 * C.angular_eigenvalue(i, d))
    # int_C w^2 log w^2 = |S| [ (1+a^2) int w0^2 log w0^2 + M0 int g^2 log g^2 dmu ]
    ent_c = area * ((1.0 + a2) * S0.value + M0.value * ent_ang)
    kd = C.k_d_sigma(d, sigma)
    const = max(2.0 / (d - 1.0), 2.0 * sigma * sigma)
    lhs = ent_c - mass_c * math.log(mass_c) + kd * mass_c
    rhs = const * grad_c
    dM = area * M0.error * (1.0 + a2)
    err = (
        area * ((1.0 + a2) * S0.error + M0.error * abs(ent_ang) + M0.value * ent_ang_err)
        + abs(kd - math.log(mass_c) - 1.0) * dM
        + const * area * (G0.error * (1.0 + a2) + M0.error * a2 * C.angular_eigenvalue(i, d))
    )
    return _report(lhs, rhs, err, InequalityId.LSI_CYLINDER, d=d, sigma=sigma, mode_i=i, amplitude=amp)


def verify_hardy(u: EuclideanProfile, cfg=None) -> DeficitReport:
    """sigma^2 int |u|^2 |x|^(-2(a+1)) dx <= int |grad u|^2 |x|^(-2a) dx for radial u.

    With t = log r both integrals become |S^{d-1}| int F(t) dt with weight
    r^(d-2-2a); the tails are estimated from the exponential decay rate of
    the integrand at each end, and a non-decaying end is reported as a
    divergent weighted norm.
    """
    cfg = _cfg(cfg)
    d, a = u.d, u.a
    sigma = u.sigma
    area = C.sphere_area(d) if d >= 2 else 2.0
    t = np.log(u.r)
    h = t[1] - t[0]
    weight = np.exp((d - 2.0 - 2.0 * a) * t)

    def parts(vals, hh, wt):
        du = derivative(vals, hh, cfg.fd_order)
        return wt * vals * vals, wt * du * du

    m_f, g_f = parts(u.values, h, weight)
    m_c, g_c = parts(u.values[::2], 2 * h, weight[::2])
    out = []
    for fine, coarse in ((m_f, m_c), (g_f, g_c)):
        tail = _log_radial_tail(fine, h)
        I1, I2 = _trap(fine, h), _trap(coarse, 2 * h)
        out.append(Estimate(I1, abs(I1 - I2) + tail + 64 * _EPS * _trap(np.abs(fine), h) + 1e-300))
    M, G = out
    if not M.value > 0:
        raise DegenerateInputError("profile vanishes identically")
    lhs = area * sigma * sigma * M.value
    rhs = area * G.value
    err = area * (sigma * sigma * M.error + G.error)
    return _report(lhs, rhs, err, InequalityId.HARDY, d=d, a=a)


def _log_radial_tail(f, h, k=4) -> float:
    """Tail of int f dt beyond both grid ends assuming locally exponential decay."""
    total = 0.0
    peak = float(np.max(np.abs(f)))
    for edge, inner in ((f[0], f[k]), (f[-1], f[-1 - k])):
        e, i_ = abs(edge), abs(inner)
        if e <= 1e-300 or e <= 1e-30 * peak:
            continue
        if i_ <= e:
            raise DomainError("weighted norm diverges: integrand does not decay at the grid end")
        rate = math.log(i_ / e) / (k * h)
        total += e / rate
    return total


def hardy_from_profile(w: Profile, d: int, a: float, cfg=None) -> DeficitReport:
    """Hardy deficit evaluated directly on the cylinder: |S| int w'^2."""
    area = C.sphere_area(d) if d >= 2 else 2.0
    sigma = C.sigma_of(a, d)
    I = profile_integrals(w, cfg=cfg)
    lhs = area * sigma * sigma * I.mass.value
    rhs = area * (I.grad.value + sigma * sigma * I.mass.value)
    err = area * (I.grad.error + 2 * sigma * sigma * I.mass.error)
    return _report(lhs, rhs, err, InequalityId.HARDY, d=d, a=a)


def glh_hardy_limit(w: Profile, sigma: float, cfg=None) -> float:
    """Limit of deficit_glh(w, gamma, sigma)/(2 gamma) as gamma -> infinity.

    Equals M log(1 + G/(sigma^2 M)) with M = int w^2, G = int w'^2; it is
    positive exactly when the Hardy deficit |S| G is.
    """
    I = profile_integrals(w, cfg=cfg)
    m, g = I.mass.value, I.grad.value
    return m * math.log1p(g / (sigma * sigma * m))


def verify_hs(w: Profile, p: float, d: int, cfg=None) -> DeficitReport:
    """Hardy-Sobolev inequality for radial functions, written on the cylinder (a = 0)."""
    sigma = C.sigma_of(0.0, d)
    area = C.sphere_area(d)
    rep = quotient_interp(w, 1.0, p, sigma, cfg)
    # both sides carry |S|^(2/p) and |S| respectively; c_hs absorbs the ratio
    lhs = area ** (2.0 / p) * rep.lhs
    rhs = area * rep.rhs * C.c_hs(p, d) / C.k_interp(1.0, p, sigma)
    scale = rhs / rep.rhs if rep.rhs else 1.0
    return _report(lhs, rhs, rep.quad_error * scale, InequalityId.HS, p=p, d=d)


def log_ratio_decreasing(t) -> np.ndarray:
    """f(t) = log(1+t)/t with f(0) = 1."""
    t = np.asarray(t, dtype=float)
    out = np.ones_like(t)
    nz = t != 0
    out[nz] = np.log1p(t[nz]) / t[nz]
    return out


def with_tolerance(cfg: QuadratureConfig | None, tol: float) -> QuadratureConfig:
    return replace(_cfg(cfg), abs_tol=tol, rel_tol=tol)
