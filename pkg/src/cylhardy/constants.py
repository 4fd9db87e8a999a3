"""Closed-form constants, thresholds and linearization spectra.

Everything here is a pure function of its scalar arguments. Products of
Gamma values are always formed in log space so large dimensions and
exponents close to 2 do not overflow.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NoExtremalError, SpectrumError

LOG_PI = math.log(math.pi)

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _lanczos_log(x: float) -> float:
    # log Gamma(x) for x >= 1/2
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"log_gamma needs a finite positive argument, got {x!r}")
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x
        return _lanczos_log(x + 1.0) - math.log(x)
    return _lanczos_log(x)


def gamma_fn(x: float) -> float:
    """Gamma(x) for real x > 0 via a Lanczos approximation (g = 7)."""
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"gamma_fn needs a finite positive argument, got {x!r}")
    if x < 0.5:
        return gamma_fn(x + 1.0) / x
    if x > 171.6:
        raise DomainError("Gamma overflows double precision; use log_gamma")
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    # split the power so t**(z+0.5) cannot overflow before exp(-t) tames it
    half = t ** (0.5 * (z + 0.5))
    return math.sqrt(2.0 * math.pi) * half * (half * math.exp(-t)) * acc


def cosh_moment(q: float) -> float:
    """Integral of sech(s)**q over the real line, sqrt(pi) Gamma(q/2) / Gamma((q+1)/2)."""
    if not q > 0:
        raise DomainError(f"cosh_moment needs q > 0, got {q!r}")
    return math.exp(0.5 * LOG_PI + log_gamma(0.5 * q) - log_gamma(0.5 * (q + 1.0)))


def log_sphere_area(d: int) -> float:
    """log |S^{d-1}|, with |S^0| = 2 (two points) for d = 1."""
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    return math.log(2.0) + 0.5 * d * LOG_PI - log_gamma(0.5 * d)


def sphere_area(d: int) -> float:
    return math.exp(log_sphere_area(d))


@dataclass(frozen=True)
class SphereGeometry:
    d: int
    area: float

    @classmethod
    def of(cls, d: int) -> "SphereGeometry":
        if d < 2:
            raise DomainError("SphereGeometry is defined for d >= 2")
        return cls(d, sphere_area(d))


def vartheta(p: float, d: int) -> float:
    """Scaling lower bound d(p-2)/(2p) on the interpolation exponent."""
    if p < 2 or d < 1:
        raise DomainError(f"vartheta needs p >= 2 and d >= 1, got p={p}, d={d}")
    return d * (p - 2.0) / (2.0 * p)


def critical_exponent(d: int) -> float:
    """2d/(d-2) for d >= 3, infinity for d in {1, 2}."""
    return math.inf if d <= 2 else 2.0 * d / (d - 2.0)


def sigma_of(a: float, d: int) -> float:
    return 0.5 * (d - 2.0 - 2.0 * a)


def _close(x: float, y: float) -> bool:
    return abs(x - y) <= 1e-13 * max(1.0, abs(x), abs(y))


# --------------------------------------------------------------------------
# Parameter bundle


class Mode(str, enum.Enum):
    INTERPOLATION = "interpolation"
    LOG_HARDY = "log_hardy"


@dataclass(frozen=True)
class Params:
    """Validated (d, a, p, theta, gamma) bundle.

    ``sigma``, ``b`` and ``eta = b - a`` are derived. In log-Hardy mode the
    exponent is pinned to p = 2 and ``theta`` is unused.
    """

    d: int
    a: float
    p: float
    theta: float = 1.0
    gamma: float = math.nan
    mode: Mode = Mode.INTERPOLATION

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise DomainError(f"d must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))
        if not self.a < (self.d - 2) / 2:
            raise DomainError(f"need a < (d-2)/2 = {(self.d - 2) / 2}, got a={self.a}")
        if self.mode is Mode.INTERPOLATION:
            if not self.p > 2:
                raise DomainError(f"interpolation mode needs p > 2, got p={self.p}")
            if self.d >= 3 and self.p > critical_exponent(self.d) * (1 + 1e-14):
                raise DomainError(f"p={self.p} exceeds 2d/(d-2) for d={self.d}")
            lo = vartheta(self.p, self.d)
            if not (lo - 1e-12 <= self.theta <= 1.0 + 1e-15):
                raise DomainError(f"theta={self.theta} outside [vartheta(p,d)={lo}, 1]")
        else:
            if self.p != 2:
                raise DomainError("log-Hardy mode uses p = 2")
            if not self.gamma >= 0.25:
                raise DomainError(f"log-Hardy mode needs gamma >= 1/4, got {self.gamma}")

    @classmethod
    def interpolation(cls, d: int, a: float, p: float, theta: float) -> "Params":
        return cls(d=d, a=float(a), p=float(p), theta=float(theta))

    @classmethod
    def log_hardy(cls, d: int, a: float, gamma: float) -> "Params":
        return cls(d=d, a=float(a), p=2.0, theta=math.nan, gamma=float(gamma), mode=Mode.LOG_HARDY)

    @property
    def sigma(self) -> float:
        return sigma_of(self.a, self.d)

    @property
    def b(self) -> float:
        return self.a + 1.0 + self.d * (1.0 / self.p - 0.5)

    @property
    def eta(self) -> float:
        return self.b - self.a

    def as_dict(self) -> dict:
        out = {"d": self.d, "a": self.a, "mode": self.mode.value, "sigma": self.sigma}
        if self.mode is Mode.INTERPOLATION:
            out.update(p=self.p, theta=self.theta, eta=self.eta)
        else:
            out.update(gamma=self.gamma)
        return out


# --------------------------------------------------------------------------
# One-dimensional interpolation constant


def _log_gamma_ratio_term(p: float) -> float:
    # log[ Gamma(t + 1/2) / (sqrt(pi) Gamma(t)) ] with t = 2/(p-2)
    t = 2.0 / (p - 2.0)
    return log_gamma(t + 0.5) - 0.5 * LOG_PI - log_gamma(t)


def log_k_interp(theta: float, p: float, sigma: float) -> float:
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if not p > 2:
        raise DomainError(f"k_interp needs p > 2, got {p}")
    lo = vartheta(p, 1)
    if theta > 1.0 + 1e-15:
        raise DomainError(f"theta={theta} > 1")
    tail = (6.0 - p) / (2.0 * p) * math.log(4.0 / (p + 2.0)) + (p - 2.0) / p * _log_gamma_ratio_term(p)
    if _close(theta, lo):
        # D = 2 + (2 theta - 1) p vanishes; the first two factors tend to (p-2)^theta
        return lo * math.log(p - 2.0) + tail
    if theta < lo:
        raise DomainError(
            f"theta={theta} below vartheta(p,1)={lo}: the inequality fails (infimum over scalings is 0)"
        )
    D = 2.0 + (2.0 * theta - 1.0) * p
    s2 = sigma * sigma
    return (
        (p - 2.0) / (2.0 * p) * math.log((p - 2.0) ** 2 * s2 / D)
        + theta * math.log(D / (2.0 * p * theta * s2))
        + tail
    )


def k_interp(theta: float, p: float, sigma: float) -> float:
    """Best constant K(theta, p, sigma) of the one-dimensional interpolation inequality

        (int |w|^p)^(2/p) <= K (int |w'|^2 + sigma^2 int |w|^2)^theta (int |w|^2)^(1-theta)

    on the real line. Defined for vartheta(p,1) <= theta <= 1; at the lower
    endpoint the value is the (sigma independent) Gagliardo-Nirenberg limit.
    """
    return math.exp(log_k_interp(theta, p, sigma))


def lambda_extremal(theta: float, p: float, sigma: float) -> float:
    """Scale of the optimal profile cosh(lambda s)^(-2/(p-2))."""
    if not p > 2 or not sigma > 0:
        raise DomainError("lambda_extremal needs p > 2 and sigma > 0")
    lo = vartheta(p, 1)
    if theta <= lo or _close(theta, lo):
        raise NoExtremalError(f"no optimal function when theta <= vartheta(p,1)={lo}")
    if theta > 1.0 + 1e-15:
        raise DomainError(f"theta={theta} > 1")
    D = 2.0 + (2.0 * theta - 1.0) * p
    return 0.5 * (p - 2.0) * sigma * math.sqrt((p + 2.0) / D)


def _log_c_star(theta: float, p: float, a: float, d: int) -> float:
    return -(p - 2.0) / p * log_sphere_area(d) + log_k_interp(theta, p, sigma_of(a, d))


def c_star_interp(params: Params) -> float:
    """Radial sharp constant C*(theta, p, a) = |S^{d-1}|^{-(p-2)/p} K(theta, p, sigma)."""
    if params.mode is not Mode.INTERPOLATION:
        raise DomainError("c_star_interp needs interpolation-mode params")
    if params.d == 1:
        raise DomainError("d = 1: the cylinder is the real line; use k_interp(theta, p, sigma) directly")
    return math.exp(_log_c_star(params.theta, params.p, params.a, params.d))


def c_hs(p: float, d: int) -> float:
    """Hardy-Sobolev constant for 2 <= p <= 2d/(d-2), d >= 3."""
    if d < 3:
        raise DomainError("c_hs needs d >= 3")
    if not (2.0 <= p <= critical_exponent(d) * (1 + 1e-14)):
        raise DomainError(f"p={p} outside [2, 2d/(d-2)]")
    sigma = 0.5 * (d - 2.0)
    if p == 2.0:
        # Hardy endpoint, continuous limit of the formula below
        return 1.0 / (sigma * sigma)
    return math.exp(-(p - 2.0) / p * log_sphere_area(d) + log_k_interp(1.0, p, sigma))


def sobolev_constant(d: int) -> float:
    """Optimal Sobolev constant S = [pi d (d-2)]^-1 [Gamma(d)/Gamma(d/2)]^(2/d)."""
    if d < 3:
        raise DomainError("sobolev_constant needs d >= 3")
    log_s = -math.log(math.pi * d * (d - 2.0)) + 2.0 / d * (log_gamma(d) - log_gamma(0.5 * d))
    return math.exp(log_s)


# --------------------------------------------------------------------------
# Logarithmic Hardy constants


def k_log_hardy(gamma: float, sigma: float) -> float:
    """Additive sharp constant of the one-dimensional logarithmic inequality."""
    if not gamma >= 0.25:
        raise DomainError(f"k_log_hardy needs gamma >= 1/4, got {gamma}")
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    base = 2.0 * gamma * math.log(gamma) + 0.5 * math.log(2.0 * math.pi * math.e)
    if gamma == 0.25:
        return base
    g = 4.0 * gamma - 1.0
    return base - 0.5 * g * (math.log(g / 4.0) - 2.0 * math.log(sigma))


def log_c_star_glh(gamma: float, a: float, d: int) -> float:
    if not gamma >= 0.25:
        raise DomainError(f"c_star_glh needs gamma >= 1/4, got {gamma}")
    if not a < (d - 2) / 2:
        raise DomainError(f"need a < (d-2)/2, got a={a}")
    lg = log_gamma(0.5 * d)
    log8 = math.log(8.0) + (d + 1) * LOG_PI + 1.0
    if gamma == 0.25:
        return math.log(4.0) + 2.0 * lg - log8
    g = 4.0 * gamma - 1.0
    return (
        -math.log(gamma)
        + lg / (2.0 * gamma)
        - log8 / (4.0 * gamma)
        + g / (4.0 * gamma) * (math.log(g) - 2.0 * math.log(d - 2.0 - 2.0 * a))
    )


def c_star_glh(gamma: float, a: float, d: int) -> float:
    """Radial sharp constant of the weighted logarithmic Hardy inequality.

    For d = 1 the same closed formula is used; it corresponds to |S^0| = 2.
    """
    return math.exp(log_c_star_glh(gamma, a, d))


def c_star_lh(d: int) -> float:
    if d < 3:
        raise DomainError("c_star_lh needs d >= 3")
    log_c = (
        math.log(4.0 / d)
        + 2.0 / d * log_gamma(0.5 * d)
        - LOG_PI
        - (math.log(8.0 * math.pi) + 1.0) / d
        + (1.0 - 1.0 / d) * math.log((d - 1.0) / (d - 2.0) ** 2)
    )
    return math.exp(log_c)


def k_d_sigma(d: int, sigma: float) -> float:
    """Optimal additive constant of the logarithmic Sobolev inequality on the cylinder."""
    if d < 2:
        raise DomainError("k_d_sigma needs d >= 2")
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    return 1.0 + 0.5 * (math.log(8.0 * sigma * sigma) + (d + 1) * LOG_PI - 2.0 * log_gamma(0.5 * d))


# --------------------------------------------------------------------------
# Upper bounds


class UpperBound(NamedTuple):
    value: float
    proxy: bool
    argmin: float = math.nan


def radial_symmetry_known(a: float, d: int) -> bool:
    """True when the CKN optimizers are known to be radial, so C_CKN equals its radial value.

    Only the quantified cases are used: d = 1, or d >= 3 with a >= 0. The
    "|a| small" and "p - 2 small" regimes carry no explicit size and are
    treated as unknown.
    """
    return d == 1 or (d >= 3 and a >= 0)


def upper_bound_interp(params: Params, k_grid: int = 512, margin: float = 1e-9) -> UpperBound:
    """Minimise the Hoelder/Hardy bound over a uniform grid of the exponent k.

    The admissible k satisfy p(1-theta) <= k < 2 (so that the Hardy
    interpolation weight lies in [0, 1]) and, for d >= 3, k <= d - (d-2)p/2.
    C_CKN is replaced by its radial value; ``proxy`` flags the cases where
    that replacement is not known to be exact.
    """
    if params.mode is not Mode.INTERPOLATION:
        raise DomainError("upper_bound_interp needs interpolation-mode params")
    d, a, p, theta = params.d, params.a, params.p, params.theta
    if d < 2:
        raise DomainError("upper_bound_interp needs d >= 2")
    if k_grid < 2:
        raise DomainError("k_grid must be >= 2")
    k_lo = max(p * (1.0 - theta), margin)
    k_hi = 2.0 - margin
    if d >= 3:
        k_hi = min(k_hi, d - (d - 2.0) * p / 2.0)
    if k_lo > k_hi:
        raise DomainError(f"admissible k-set is empty for p={p}, theta={theta}, d={d}")
    ks = np.linspace(k_lo, k_hi, k_grid)
    log_hardy = -math.log(params.sigma)  # log(2/(d-2-2a))
    best, best_k = math.inf, math.nan
    for k in ks:
        P = 2.0 * (p - k) / (2.0 - k)
        val = (1.0 - k / p) * _log_c_star(1.0, P, a, d) + 2.0 * (k / p + theta - 1.0) * log_hardy
        if val < best:
            best, best_k = val, float(k)
    return UpperBound(math.exp(best), not radial_symmetry_known(a, d), best_k)


def upper_bound_glh(gamma: float, a: float, d: int) -> UpperBound:
    """C_GLH <= C_CKN(4 gamma/(2 gamma - 1), a), with the radial value standing in for C_CKN."""
    if d < 2:
        raise DomainError("upper_bound_glh needs d >= 2")
    if not a < (d - 2) / 2:
        raise DomainError(f"need a < (d-2)/2, got a={a}")
    if d == 2 and not gamma > 0.5:
        raise DomainError("d = 2 needs gamma > 1/2")
    if not gamma > 0.5:
        raise DomainError(f"gamma={gamma} too small")
    P = 4.0 * gamma / (2.0 * gamma - 1.0)
    if d >= 3 and P > critical_exponent(d) * (1 + 1e-13):
        raise DomainError(f"exponent 4 gamma/(2 gamma - 1) = {P} exceeds 2d/(d-2)")
    P = min(P, critical_exponent(d))
    return UpperBound(math.exp(_log_c_star(1.0, P, a, d)), not radial_symmetry_known(a, d), P)


# --------------------------------------------------------------------------
# Linearization around the radial optimizer (interpolation case)


@dataclass(frozen=True)
class LinearizationCoeffs:
    """Coefficients of the second variation at the radial optimizer.

    All three refer to integrals over the s-line (equivalently to the
    probability measure on the sphere factor):

        J[w + e phi] / e^2 -> int|grad phi|^2 - kappa int w^(p-2) phi^2
                              + mu int phi^2 - nu (int w phi)^2
    """

    kappa: float
    mu: float
    nu: float
    lam: float

    @property
    def ell(self) -> float:
        # Poeschl-Teller index: kappa = ell (ell + 1) lam^2
        return 0.5 * (math.sqrt(1.0 + 4.0 * self.kappa / self.lam**2) - 1.0)


def profile_moments(p: float) -> tuple[float, float, float]:
    """(I_2, I_p, J_2) for the unit-scale profile cosh(s)^(-2/(p-2))."""
    i2 = cosh_moment(4.0 / (p - 2.0))
    return i2, 4.0 * i2 / (p + 2.0), 4.0 * i2 / ((p + 2.0) * (p - 2.0))


def linearization_coeffs(params: Params) -> LinearizationCoeffs:
    if params.mode is not Mode.INTERPOLATION:
        raise DomainError("linearization_coeffs needs interpolation-mode params")
    p, theta, sigma = params.p, params.theta, params.sigma
    lam = lambda_extremal(theta, p, sigma)
    i2, ip, j2 = profile_moments(p)
    e = lam * lam * j2 + sigma * sigma * i2
    kappa = (p - 1.0) / theta * e / ip
    mu = sigma * sigma + (1.0 - theta) / theta * e / i2
    nu = 2.0 * (1.0 - theta) / theta**2 * lam * e / i2**2
    return LinearizationCoeffs(kappa, mu, nu, lam)


def angular_eigenvalue(i: int, d: int) -> float:
    """Laplace-Beltrami eigenvalue i(d+i-2) of degree-i spherical harmonics."""
    return i * (d + i - 2.0)


def eig_interp(i: int, j: int, params: Params) -> float:
    """Closed-form eigenvalue lambda_{i,j} of the linearized operator."""
    if i < 0 or j < 0:
        raise DomainError("mode indices must be non-negative")
    c = linearization_coeffs(params)
    r = math.sqrt(1.0 + 4.0 * c.kappa / c.lam**2)
    if r < 2 * j + 1:
        raise SpectrumError(f"mode j={j} is not in the discrete spectrum (sqrt(1+4k/l^2)={r})")
    return c.mu + angular_eigenvalue(i, params.d) - 0.25 * c.lam**2 * (r - (1 + 2 * j)) ** 2


def quartic_criterion(a: float, p: float, theta: float, d: int) -> float:
    """Negative exactly when lambda_{1,0} < 0."""
    return 4.0 * p * (d - 1.0) * (p * p + 2.0 * p + 8.0 * theta - 8.0) - (
        d * d + 4.0 * a * a - 4.0 * a * (d - 2.0)
    ) * (p - 2.0) * (p + 2.0) ** 2


def theta_breaking(a: float, p: float, d: int) -> float:
    """Threshold Theta(a,p,d): symmetry breaks for theta below it."""
    if d < 2 or p < 2:
        raise DomainError("theta_breaking needs d >= 2 and p >= 2")
    bracket = (p + 2.0) ** 2 * (d * d + 4.0 * a * a - 4.0 * a * (d - 2.0)) - 4.0 * p * (p + 4.0) * (d - 1.0)
    return (p - 2.0) / (32.0 * (d - 1.0) * p) * bracket


def a_minus(p: float, d: int) -> float:
    """Largest a for which vartheta(p,d) < Theta(a,p,d)."""
    if d < 2 or p < 2:
        raise DomainError("a_minus needs d >= 2 and p >= 2")
    return (d - 2.0) / 2.0 - 2.0 * (d - 1.0) / (p + 2.0)


def a_full_breaking(p: float, d: int) -> float:
    """Below this a, Theta(a,p,d) > 1 and every admissible theta breaks symmetry."""
    if d < 2 or not p > 2:
        raise DomainError("a_full_breaking needs d >= 2 and p > 2")
    return (d - 2.0) / 2.0 - 2.0 * math.sqrt(d - 1.0) / math.sqrt((p - 2.0) * (p + 2.0))


class Region(str, enum.Enum):
    BREAKING = "Breaking"
    NOT_DECIDED = "NotDecided"


def region_interp(params: Params) -> Region:
    """Breaking when the symmetry-breaking theorem applies; NotDecided otherwise."""
    if params.mode is not Mode.INTERPOLATION:
        raise DomainError("region_interp needs interpolation-mode params")
    d, a, p, theta = params.d, params.a, params.p, params.theta
    if d < 2 or not (2.0 < p < critical_exponent(d)):
        return Region.NOT_DECIDED
    if not a < a_minus(p, d):
        return Region.NOT_DECIDED
    lo = vartheta(p, d)
    if a >= a_full_breaking(p, d):
        hit = lo <= theta < theta_breaking(a, p, d)
    else:
        hit = lo <= theta <= 1.0
    return Region.BREAKING if hit else Region.NOT_DECIDED


def glh_gamma_window(a: float, d: int) -> tuple[float, float]:
    """(d/4, (1 + (d-2a-2)^2/(d-1))/4): the gamma window of the breaking theorem."""
    if d < 2:
        raise DomainError("glh_gamma_window needs d >= 2")
    return d / 4.0, 0.25 * (1.0 + (d - 2.0 * a - 2.0) ** 2 / (d - 1.0))


def region_glh(gamma: float, a: float, d: int) -> Region:
    if d < 2:
        return Region.NOT_DECIDED
    if d == 2 and not gamma > 0.5:
        return Region.NOT_DECIDED
    if not a < -0.5:
        return Region.NOT_DECIDED
    lo, hi = glh_gamma_window(a, d)
    return Region.BREAKING if lo <= gamma < hi else Region.NOT_DECIDED


def oscillator_strength(gamma: float, sigma: float) -> float:
    """A = 4 sigma^2 / (4 gamma - 1)."""
    if not gamma > 0.25:
        raise DomainError("oscillator_strength needs gamma > 1/4")
    return 4.0 * sigma * sigma / (4.0 * gamma - 1.0)


def eig_glh(i: int, j: int, gamma: float, sigma: float, d: int) -> float:
    if i < 0 or j < 0:
        raise DomainError("mode indices must be non-negative")
    A = oscillator_strength(gamma, sigma)
    return angular_eigenvalue(i, d) + A * (j - 1.0)


FORMULAS = {
    "gamma": "Gamma(x), Lanczos g=7",
    "cosh-moment": "sqrt(pi) Gamma(q/2) / Gamma((q+1)/2)",
    "sphere-area": "2 pi^(d/2) / Gamma(d/2)",
    "vartheta": "d (p-2) / (2 p)",
    "k-interp": "[(p-2)^2 s^2/D]^((p-2)/(2p)) [D/(2 p theta s^2)]^theta [4/(p+2)]^((6-p)/(2p)) "
    "[Gamma(2/(p-2)+1/2)/(sqrt(pi) Gamma(2/(p-2)))]^((p-2)/p), D = 2+(2 theta-1) p",
    "lambda-extremal": "(p-2) sigma/2 sqrt((p+2)/(2+(2 theta-1) p))",
    "c-star-interp": "|S^{d-1}|^(-(p-2)/p) K(theta, p, sigma)",
    "c-hs": "|S^{d-1}|^(-(p-2)/p) K(1, p, (d-2)/2)",
    "sobolev": "[pi d (d-2)]^-1 [Gamma(d)/Gamma(d/2)]^(2/d)",
    "k-log-hardy": "2g log g - (4g-1)/2 log((4g-1)/(4 s^2)) + 1/2 log(2 pi e)",
    "c-star-glh": "(1/g) Gamma(d/2)^(1/(2g)) (8 pi^(d+1) e)^(-1/(4g)) ((4g-1)/(d-2-2a)^2)^((4g-1)/(4g))",
    "c-star-lh": "(4/d) Gamma(d/2)^(2/d) / (pi (8 pi e)^(1/d)) [(d-1)/(d-2)^2]^(1-1/d)",
    "k-d-sigma": "1 + 1/2 log(8 pi^(d+1) s^2 / Gamma(d/2)^2)",
    "upper-bound-interp": "inf_k C_CKN(2(p-k)/(2-k), a)^(1-k/p) (2/(d-2-2a))^(2(k/p+theta-1))",
    "upper-bound-glh": "C_CKN(4g/(2g-1), a)",
    "linearization": "kappa, mu, nu of the second variation at the radial optimizer",
    "eig-interp": "mu + i(d+i-2) - (l^2/4)(sqrt(1+4 kappa/l^2) - (1+2j))^2",
    "theta-breaking": "(p-2)/(32(d-1)p) [(p+2)^2 (d^2+4a^2-4a(d-2)) - 4p(p+4)(d-1)]",
    "a-minus": "(d-2)/2 - 2(d-1)/(p+2)",
    "region-interp": "Breaking iff vartheta <= theta < Theta (or theta <= 1 when Theta > 1), a < a_minus",
    "region-glh": "Breaking iff d/4 <= g < (1 + (d-2a-2)^2/(d-1))/4 and a < -1/2",
    "eig-glh": "i(d+i-2) + A (j-1), A = 4 s^2/(4g-1)",
}
