"""Two-mode variational search for non-radial trial functions.

States are w(s, omega) = w0(s) + w1(s) Y1(omega) with Y1 = sqrt(d) t the
unit-norm first spherical harmonic (d mu the uniform probability measure
on S^{d-1}, t = cos of the polar angle).  All integrals use that
probability measure on the sphere factor, so that for w1 = 0 the
quotient equals the one-dimensional quotient; the Lebesgue-measure
quotient on the cylinder differs by the factor |S^{d-1}|^(-(p-2)/p).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from . import constants as C
from ._io import dumps
from .errors import DegenerateInputError, DomainError
from .extremals import Profile, interp_extremal, _fit_exponential_rate
from .functional import Estimate, QuadratureConfig, _cfg, _sampled, _grad_tail, angular_rule, derivative


@dataclass(frozen=True, eq=False)
class TwoModeState:
    w0: Profile
    w1: Profile

    def __post_init__(self):
        if self.w0.n != self.w1.n or self.w0.half_width != self.w1.half_width:
            raise DomainError("w0 and w1 must share the same grid")
        if not np.any(self.w0.values):
            raise DegenerateInputError("radial part w0 must be nonzero")

    @property
    def s(self):
        return self.w0.s

    @classmethod
    def from_arrays(cls, half_width, w0, w1, label="") -> "TwoModeState":
        return cls(_profile_from_samples(half_width, w0, label), _profile_from_samples(half_width, w1, label))

    def flipped(self) -> "TwoModeState":
        """Y1 -> -Y1."""
        return TwoModeState(self.w0, self.w1.scaled(-1.0))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["s", "w0", "w1"])
            for row in zip(self.s, self.w0.values, self.w1.values):
                out.writerow([format(float(x), ".17g") for x in row])


def _profile_from_samples(half_width, values, label=""):
    v = np.asarray(values, dtype=float)
    s = np.linspace(-half_width, half_width, v.size)
    if not np.any(v):
        return Profile(half_width, v, 1.0, envelope=0.0, label=label)
    rate = _fit_exponential_rate(s, v)
    env = float(np.max(np.abs(v) * np.exp(rate * np.abs(s))))
    return Profile(half_width, v, rate, envelope=env, label=label)


@dataclass(frozen=True)
class QuotientValue:
    """lhs / (energy^theta mass^(1-theta)) for a two-mode state, with error bars."""

    lhs: float
    energy: float
    mass: float
    lp: float
    quotient: float
    normalized: float  # quotient * |S^{d-1}|^(-(p-2)/p), comparable with C*(theta,p,a)
    rel_error: float
    params: dict = field(default_factory=dict)

    @property
    def abs_error(self) -> float:
        return self.rel_error * abs(self.quotient)

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "energy": self.energy,
            "mass": self.mass,
            "lp": self.lp,
            "quotient": self.quotient,
            "normalized": self.normalized,
            "rel_error": self.rel_error,
            "params": dict(self.params),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _lp_two_mode(w0, w1, h, p, d, nodes):
    t, wt = angular_rule(d, nodes)
    y = math.sqrt(d) * t
    u = np.abs(w0[:, None] + w1[:, None] * y[None, :]) ** p
    return u @ wt


def _integrals(state: TwoModeState, p, d, sigma, cfg):
    w0, w1 = state.w0, state.w1
    order = cfg.fd_order
    m0 = _sampled(lambda v, h: v * v, w0, w0.tail_bound(2.0))
    m1 = _sampled(lambda v, h: v * v, w1, w1.tail_bound(2.0))
    g0 = _sampled(lambda v, h: derivative(v, h, order) ** 2, w0, _grad_tail(w0))
    g1 = _sampled(lambda v, h: derivative(v, h, order) ** 2, w1, _grad_tail(w1))
    mass = Estimate(m0.value + m1.value, m0.error + m1.error)
    energy = Estimate(
        g0.value + g1.value + (d - 1.0) * m1.value + sigma * sigma * mass.value,
        g0.error + g1.error + (d - 1.0) * m1.error + sigma * sigma * mass.error,
    )
    # p-norm: h vs 2h on the s grid, full vs half angular rule
    h = w0.h
    nodes = cfg.angular_nodes
    fine = _lp_two_mode(w0.values, w1.values, h, p, d, nodes)
    half = _lp_two_mode(w0.values, w1.values, h, p, d, nodes // 2)
    trap = lambda f, hh: hh * (f.sum() - 0.5 * (f[0] + f[-1]))
    N1 = trap(fine, h)
    N2 = trap(fine[::2], 2 * h)
    tail = (1.0 + math.sqrt(d)) ** p * (w0.tail_bound(p) + w1.tail_bound(p))
    lp = Estimate(N1, abs(N1 - N2) + abs(N1 - trap(half, h)) + tail + 1e-15 * abs(N1))
    return mass, energy, lp


def evaluate_quotient(state: TwoModeState, params: C.Params, cfg=None) -> QuotientValue:
    cfg = _cfg(cfg)
    if params.mode is not C.Mode.INTERPOLATION:
        raise DomainError("evaluate_quotient needs interpolation-mode params")
    p, theta, d, sigma = params.p, params.theta, params.d, params.sigma
    mass, energy, lp = _integrals(state, p, d, sigma, cfg)
    if not mass.value > 0:
        raise DegenerateInputError("zero mass")
    lhs = lp.value ** (2.0 / p)
    q = lhs / (energy.value**theta * mass.value ** (1.0 - theta))
    rel = (2.0 / p) * lp.error / lp.value + theta * energy.error / energy.value + (1.0 - theta) * mass.error / mass.value
    norm = q * math.exp(-(p - 2.0) / p * C.log_sphere_area(d)) if d >= 2 else q
    return QuotientValue(lhs, energy.value, mass.value, lp.value, q, norm, rel, params.as_dict())


def deficit_functional(state: TwoModeState, params: C.Params, cfg=None) -> float:
    """E - K^(-1/theta) N^(2/(p theta)) M^(-(1-theta)/theta): zero at the radial optimizer."""
    cfg = _cfg(cfg)
    p, theta = params.p, params.theta
    mass, energy, lp = _integrals(state, p, params.d, params.sigma, cfg)
    logK = C.log_k_interp(theta, p, params.sigma)
    logF = (-logK + (2.0 / p) * math.log(lp.value) - (1.0 - theta) * math.log(mass.value)) / theta
    return energy.value - math.exp(logF)


def phi_10(params: C.Params, s) -> np.ndarray:
    """Shape of the lowest i = 1 mode of the linearized operator: cosh(lam s)^(-p/(p-2)).

    In every angular sector the ground state of -d^2/ds^2 - kappa sech^2(lam s)
    is sech^ell with ell (ell + 1) = kappa / lam^2, and ell = p/(p-2).
    """
    c = C.linearization_coeffs(params)
    x = c.lam * np.abs(np.asarray(s, dtype=float))
    return np.exp(c.ell * (math.log(2.0) - x - np.log1p(np.exp(-2.0 * x))))


def perturbed_extremal(params: C.Params, epsilon: float, n=None, half_width=None) -> TwoModeState:
    """w0 = radial optimizer, w1 = epsilon * phi_(1,0) (both sup-normalized to 1 before scaling)."""
    kw = {} if n is None else {"n": n}
    w0 = interp_extremal(params.theta, params.p, params.sigma, half_width=half_width, **kw)
    w1 = w0.with_values(epsilon * phi_10(params, w0.s), label=f"phi_10 x {epsilon}")
    return TwoModeState(w0, w1)


# --------------------------------------------------------------------------
# Descent


@dataclass
class DescentResult:
    state: TwoModeState
    value: QuotientValue
    delta: float  # normalized quotient / C* - 1
    certified: bool
    iterations: int
    converged: bool
    history: list
    phi_final: float

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "certified": self.certified,
            "error_bound": self.value.rel_error,
            "iterations": self.iterations,
            "converged": self.converged,
            "phi_final": self.phi_final,
            "c_star": self.value.normalized / (1.0 + self.delta),
            "w1_l2": float(math.sqrt(_trap_sq(self.state.w1.values, self.state.w1.h))),
            "quotient": self.value.to_dict(),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _trap_sq(v, h):
    return h * float(np.dot(v, v))


class _Discrete:
    """Forward-difference discretization with Dirichlet ends; interior unknowns only."""

    def __init__(self, params, h, nodes):
        self.p, self.theta, self.d = params.p, params.theta, params.d
        self.sig2 = params.sigma**2
        self.h = h
        t, wt = angular_rule(self.d, nodes)
        self.y, self.wt = math.sqrt(self.d) * t, wt
        self.logK = C.log_k_interp(self.theta, self.p, params.sigma)

    def parts(self, w0, w1):
        h, y = self.h, self.y
        z0 = np.concatenate([[0.0], w0, [0.0]])
        z1 = np.concatenate([[0.0], w1, [0.0]])
        d0, d1 = np.diff(z0), np.diff(z1)
        M = h * (w0 @ w0 + w1 @ w1)
        E = (d0 @ d0 + d1 @ d1) / h + h * ((self.d - 1.0) * (w1 @ w1)) + self.sig2 * M
        u = w0[:, None] + w1[:, None] * y[None, :]
        au = np.abs(u)
        upm2 = au ** (self.p - 2.0)
        N = h * float(((upm2 * au * au) @ self.wt).sum())
        # gradients
        lap0 = 2.0 * w0 - z0[:-2] - z0[2:]
        lap1 = 2.0 * w1 - z1[:-2] - z1[2:]
        gM0, gM1 = 2.0 * h * w0, 2.0 * h * w1
        gE0 = 2.0 * lap0 / h + self.sig2 * gM0
        gE1 = 2.0 * lap1 / h + (self.d - 1.0) * gM1 + self.sig2 * gM1
        pu = self.p * upm2 * u
        gN0 = h * (pu @ self.wt)
        gN1 = h * (pu @ (self.wt * y))
        return M, E, N, (gM0, gM1), (gE0, gE1), (gN0, gN1)

    def phi(self, w0, w1, grad=False):
        M, E, N, gM, gE, gN = self.parts(w0, w1)
        p, th = self.p, self.theta
        R = N ** (2.0 / p) / M
        F = math.exp((-self.logK + math.log(R)) / th)  # K^(-1/theta) R^(1/theta)
        val = E / M - F
        if not grad:
            return val
        out = []
        for k in range(2):
            dR = (2.0 / p) * N ** (2.0 / p - 1.0) * gN[k] / M - R * gM[k] / M
            out.append(gE[k] / M - E * gM[k] / M**2 - F / (th * R) * dR)
        return val, out


def _riesz(g, h, shift):
    """Solve (-D^2 + shift) x = g / h with Dirichlet ends (discrete H^1 Riesz map)."""
    m = g.size
    ab = np.empty((3, m))
    ab[0, :] = -1.0 / h**2
    ab[1, :] = 2.0 / h**2 + shift
    ab[2, :] = -1.0 / h**2
    return solve_banded((1, 1), ab, g / h)


def minimize_deficit(params: C.Params, init: TwoModeState | None = None, cfg=None, epsilon=0.05, n=2049,
                     max_iter=10_000, tol=1e-10, descent_nodes=32) -> DescentResult:
    """Preconditioned descent on Phi = J/M over two-mode states, then accurate evaluation.

    Phi is scale invariant; the state is renormalized to the initial mass
    after every accepted step.  Steps follow the H^1 Riesz gradient with
    Armijo backtracking, so Phi never increases along accepted steps.
    Stops when the decrease of Phi over an accepted step falls below
    tol * (E/M), or after max_iter iterations (reported as not converged).
    """
    cfg = _cfg(cfg)
    if params.mode is not C.Mode.INTERPOLATION:
        raise DomainError("minimize_deficit needs interpolation-mode params")
    if params.d < 2:
        raise DomainError("the two-mode ansatz needs d >= 2")
    if init is None:
        init = perturbed_extremal(params, epsilon, n=n)
    L = init.w0.half_width
    h = init.w0.h
    w0 = np.array(init.w0.values[1:-1], dtype=float)
    w1 = np.array(init.w1.values[1:-1], dtype=float)
    disc = _Discrete(params, h, descent_nodes)
    mass0 = h * (w0 @ w0 + w1 @ w1)
    val, g = disc.phi(w0, w1, grad=True)
    step = 1.0
    hist = [val]
    converged = False
    it = 0
    sig2 = params.sigma**2
    for it in range(1, max_iter + 1):
        d0 = -_riesz(g[0], h, sig2)
        d1 = -_riesz(g[1], h, sig2 + params.d - 1.0)
        slope = float(g[0] @ d0 + g[1] @ d1)
        if slope >= 0:
            converged = True
            break
        scale_ref = abs(val) + 1.0
        accepted = False
        for _ in range(60):
            n0, n1 = w0 + step * d0, w1 + step * d1
            new = disc.phi(n0, n1)
            if new <= val + 1e-4 * step * slope:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True
            break
        c = math.sqrt(mass0 / (h * (n0 @ n0 + n1 @ n1)))
        w0, w1 = c * n0, c * n1
        newval, g = disc.phi(w0, w1, grad=True)
        decrease = val - newval
        val = newval
        hist.append(val)
        step = min(step * 2.0, 1e6)
        E_over_M = disc.parts(w0, w1)[1] / mass0
        if decrease < tol * E_over_M:
            converged = True
            break
    z0 = np.concatenate([[0.0], w0, [0.0]])
    z1 = np.concatenate([[0.0], w1, [0.0]])
    # fix the orientation of Y1 so that the reported state is canonical
    if z1[np.argmax(np.abs(z1))] < 0:
        z1 = -z1
    final = TwoModeState.from_arrays(L, z0, z1, label="minimized")
    q = evaluate_quotient(final, params, cfg)
    cstar = C.k_interp(params.theta, params.p, params.sigma)  # probability-measure form of C*
    delta = q.quotient / cstar - 1.0
    return DescentResult(final, q, delta, bool(delta > 10.0 * q.rel_error), it, converged, hist, val)
