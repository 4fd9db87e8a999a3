"""Sampled profiles on the s-line, the explicit optimizers, and the
Emden-Fowler change of variables u(x) = |x|^(-sigma) w(-log|x|).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import constants as C
from .errors import DomainError, NoExtremalError, ResolutionError

DEFAULT_N = 8193
# tail target: envelope at the wall below exp(-TAIL_EXPONENT) relative to the peak
TAIL_EXPONENT = 40.0


@dataclass(frozen=True, eq=False)
class Profile:
    """Immutable samples w(s_k) on the uniform grid s_k in [-half_width, half_width].

    ``decay`` is either "exponential" (|w| <= envelope * exp(-rate |s|)) or
    "gaussian" (|w| <= envelope * exp(-rate s^2)).
    """

    half_width: float
    values: np.ndarray
    decay_rate: float
    decay: str = "exponential"
    envelope: float = 1.0
    label: str = ""
    s: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 3 or vals.size % 2 == 0:
            raise DomainError("profiles need an odd number (>= 3) of samples")
        if not np.all(np.isfinite(vals)):
            raise DomainError("profile values must be finite")
        if not self.half_width > 0 or not self.decay_rate > 0:
            raise DomainError("half_width and decay_rate must be positive")
        if self.decay not in ("exponential", "gaussian"):
            raise DomainError(f"unknown decay kind {self.decay!r}")
        vals.setflags(write=False)
        s = np.linspace(-self.half_width, self.half_width, vals.size)
        s.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "s", s)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / (self.n - 1)

    @property
    def is_even(self) -> bool:
        return bool(np.max(np.abs(self.values - self.values[::-1])) < 1e-12)

    def envelope_at(self, s):
        s = np.abs(np.asarray(s, dtype=float))
        if self.decay == "exponential":
            return self.envelope * np.exp(-self.decay_rate * s)
        return self.envelope * np.exp(-self.decay_rate * s * s)

    def tail_bound(self, power: float = 2.0) -> float:
        """Bound on int_{|s|>L} |w|^power from the decay envelope."""
        L, r = self.half_width, self.decay_rate * power
        env = self.envelope**power
        if self.decay == "exponential":
            return 2.0 * env * math.exp(-r * L) / r
        # Mills-ratio bound for the Gaussian tail
        return env * math.exp(-r * L * L) / (r * L)

    @classmethod
    def from_function(cls, f, half_width, n=DEFAULT_N, decay_rate=1.0, decay="exponential", envelope=1.0, label=""):
        s = np.linspace(-half_width, half_width, n)
        return cls(half_width, f(s), decay_rate, decay, envelope, label)

    def with_values(self, values, label=None) -> "Profile":
        return Profile(self.half_width, values, self.decay_rate, self.decay, self.envelope, label or self.label)

    def scaled(self, c: float) -> "Profile":
        return Profile(
            self.half_width, c * self.values, self.decay_rate, self.decay, abs(c) * self.envelope, self.label
        )

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["s", "w"])
            for s, w in zip(self.s, self.values):
                out.writerow([f"{s:.17g}", f"{w:.17g}"])

    @classmethod
    def from_csv(cls, path, decay_rate=None) -> "Profile":
        """Read an (s, w) CSV written on a symmetric uniform grid.

        With no ``decay_rate`` the rate is fitted from the outer tenth of
        the samples (log-linear fit of |w|).
        """
        s, w = _read_two_columns(path, ("s", "w"))
        if s.size % 2 == 0:
            raise DomainError("profile CSV needs an odd number of rows")
        L = s[-1]
        if not np.allclose(s, np.linspace(-L, L, s.size), rtol=0, atol=1e-9 * max(1.0, L)):
            raise DomainError("profile CSV grid must be uniform and symmetric")
        if decay_rate is None:
            decay_rate = _fit_exponential_rate(s, w)
        env = max(float(np.max(np.abs(w) * np.exp(decay_rate * np.abs(s)))), 1e-300)
        return cls(float(L), w, decay_rate, "exponential", env, label=f"file:{path}")


def _read_two_columns(path, names):
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if [h.strip() for h in header[:2]] != list(names):
            raise DomainError(f"{path}: expected header {','.join(names)}")
        for row in reader:
            if row:
                rows.append((float(row[0]), float(row[1])))
    if len(rows) < 3:
        raise DomainError(f"{path}: need at least three rows")
    arr = np.array(rows)
    return arr[:, 0], arr[:, 1]


def _fit_exponential_rate(s, w):
    k = max(3, s.size // 10)
    ss = np.concatenate([s[:k], s[-k:]])
    ww = np.abs(np.concatenate([w[:k], w[-k:]]))
    keep = ww > 1e-300
    if keep.sum() < 2:
        return 1.0
    slope = np.polyfit(np.abs(ss[keep]), np.log(ww[keep]), 1)[0]
    return max(-slope, 1e-6)


def _check_resolution(prof: Profile, min_core_samples: int = 16) -> Profile:
    peak = np.max(np.abs(prof.values))
    core = int(np.count_nonzero(np.abs(prof.values) >= 0.5 * peak))
    if core < min_core_samples:
        raise ResolutionError(
            f"only {core} samples across the half-maximum core; increase n (currently {prof.n})"
        )
    return prof


def interp_extremal(theta, p, sigma, half_width=None, n=DEFAULT_N) -> Profile:
    """Optimal profile cosh(lambda s)^(-2/(p-2)) of the 1D interpolation inequality.

    The default half-width puts the tail envelope 2^ell exp(-ell lambda L)
    (ell = 2/(p-2)) below exp(-40).
    """
    lam = C.lambda_extremal(theta, p, sigma)
    ell = 2.0 / (p - 2.0)
    rate = ell * lam
    env = 2.0**ell
    if half_width is None:
        half_width = (TAIL_EXPONENT / ell + math.log(2.0)) / lam
    s = np.linspace(-half_width, half_width, n)
    # cosh(x)^(-ell) = (2 e^{-|x|} / (1 + e^{-2|x|}))^ell, overflow-free
    x = lam * np.abs(s)
    vals = np.exp(ell * (math.log(2.0) - x - np.log1p(np.exp(-2.0 * x))))
    prof = Profile(half_width, vals, rate, "exponential", env, label=f"interp_extremal({theta},{p},{sigma})")
    return _check_resolution(prof)


def glh_extremal(gamma, sigma, half_width=None, n=DEFAULT_N) -> Profile:
    """L^2-normalized Gaussian optimizer of the 1D logarithmic inequality."""
    if not gamma > 0.25:
        raise NoExtremalError("gamma = 1/4 is reached only as a limit; no optimal profile")
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    c = sigma * sigma / (4.0 * gamma - 1.0)
    amp = (4.0 * sigma * sigma / (2.0 * math.pi * (4.0 * gamma - 1.0))) ** 0.25
    if half_width is None:
        half_width = math.sqrt(TAIL_EXPONENT / c)
    s = np.linspace(-half_width, half_width, n)
    prof = Profile(half_width, amp * np.exp(-c * s * s), c, "gaussian", amp, label=f"glh_extremal({gamma},{sigma})")
    return _check_resolution(prof)


def gaussian_profile(c=1.0, half_width=None, n=DEFAULT_N) -> Profile:
    """exp(-c s^2)."""
    if half_width is None:
        half_width = math.sqrt(TAIL_EXPONENT / c)
    return Profile.from_function(lambda s: np.exp(-c * s * s), half_width, n, c, "gaussian", 1.0, f"gaussian({c})")


def sech_profile(rate=1.0, power=1.0, half_width=None, n=DEFAULT_N) -> Profile:
    """sech(rate s)^power."""
    if half_width is None:
        half_width = (TAIL_EXPONENT / power + math.log(2.0)) / rate
    def f(s):
        x = rate * np.abs(s)
        return np.exp(power * (math.log(2.0) - x - np.log1p(np.exp(-2.0 * x))))
    return Profile.from_function(f, half_width, n, rate * power, "exponential", 2.0**power, f"sech({rate})^{power}")


@dataclass(frozen=True, eq=False)
class EuclideanProfile:
    """Radial function u(r_k) on a log-uniform grid (ascending r)."""

    r: np.ndarray
    values: np.ndarray
    d: int
    a: float
    label: str = ""

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        u = np.array(self.values, dtype=float)
        if r.shape != u.shape or r.ndim != 1 or r.size < 3:
            raise DomainError("r and values must be equal-length 1D arrays")
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise DomainError("radii must be positive and increasing")
        t = np.log(r)
        if not np.allclose(np.diff(t), t[1] - t[0], rtol=1e-9, atol=1e-12):
            raise DomainError("radial grid must be log-uniform")
        if not self.a < (self.d - 2) / 2:
            raise DomainError("need a < (d-2)/2")
        r.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "values", u)

    @property
    def sigma(self) -> float:
        return C.sigma_of(self.a, self.d)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            out = csv.writer(fh)
            out.writerow(["r", "u"])
            for r, u in zip(self.r, self.values):
                out.writerow([f"{r:.17g}", f"{u:.17g}"])

    @classmethod
    def from_csv(cls, path, d, a) -> "EuclideanProfile":
        r, u = _read_two_columns(path, ("r", "u"))
        return cls(r, u, d, a, label=f"file:{path}")


def to_euclidean(w: Profile, d: int, a: float) -> EuclideanProfile:
    if not a < (d - 2) / 2:
        raise DomainError("need a < (d-2)/2")
    sigma = C.sigma_of(a, d)
    s = w.s[::-1]  # r = exp(-s) ascending
    r = np.exp(-s)
    u = np.exp(sigma * s) * w.values[::-1]
    return EuclideanProfile(r, u, d, a, label=w.label)


def from_euclidean(u: EuclideanProfile, decay_rate=None, decay="exponential", envelope=None) -> Profile:
    """Inverse map w(s) = r^sigma u(r) with s = -log r.

    The log-radial grid must be symmetric about r = 1 so that s is a
    symmetric uniform grid.
    """
    s = -np.log(u.r)[::-1]
    if s.size % 2 == 0 or not math.isclose(s[0], -s[-1], rel_tol=1e-12, abs_tol=1e-12):
        raise DomainError("radial grid must be symmetric about r = 1 with an odd number of points")
    w = np.exp(-u.sigma * s) * u.values[::-1]
    if decay_rate is None:
        decay_rate = _fit_exponential_rate(s, w)
    if envelope is None:
        envelope = float(np.max(np.abs(w) * (np.exp(decay_rate * np.abs(s)) if decay == "exponential"
                                            else np.exp(decay_rate * s * s))))
    return Profile(float(s[-1]), w, decay_rate, decay, envelope, label=u.label)


def lh_optimizer_profile(d: int, r) -> np.ndarray:
    """Unnormalized radial optimizer |x|^(-(d-2)/2) exp(-(d-2)^2/(4(d-1)) log(|x|)^2)."""
    r = np.asarray(r, dtype=float)
    lr = np.log(r)
    return r ** (-(d - 2.0) / 2.0) * np.exp(-((d - 2.0) ** 2) / (4.0 * (d - 1.0)) * lr * lr)


def shifted(w: Profile, shift: float, f) -> Profile:
    """Resample s -> f(s - shift) on the grid of ``w``, keeping its metadata.

    The envelope is widened by exp(rate |shift|) (exponential) so the tail
    certificate stays valid.
    """
    vals = f(w.s - shift)
    env = w.envelope * (math.exp(w.decay_rate * abs(shift)) if w.decay == "exponential" else 1.0)
    return Profile(w.half_width, vals, w.decay_rate, w.decay, env, label=f"{w.label} shifted {shift}")
