"""Finite-difference spectra of the two linearized operators.

The operator -d^2/ds^2 + V(s) + angular_term is discretized on n grid
points of [-L, L] (Dirichlet walls at the two end points, n-2 unknowns),
so that n -> 2n-1 halves the step.  Eigenvalues come from LAPACK's
Sturm-sequence bisection, are re-certified with an independent Sturm
count, and eigenvectors from inverse iteration are checked by residual
and boundary decay.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import constants as C
from ._io import dumps
from .errors import DomainError, DomainTooSmallError, SpectrumError

PT_HALF_WIDTH = 200.0
DEFAULT_N = 8193


@dataclass(frozen=True)
class SchrodingerSpec:
    potential: object  # vectorized callable s -> V(s)
    angular_term: float = 0.0
    half_width: float = PT_HALF_WIDTH
    n: int = DEFAULT_N

    def __post_init__(self):
        if self.n < 5:
            raise DomainError("need at least 5 grid points")
        if not self.half_width > 0:
            raise DomainError("half_width must be positive")

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / (self.n - 1)

    @property
    def s(self) -> np.ndarray:
        """Interior grid points (the unknowns)."""
        return np.linspace(-self.half_width, self.half_width, self.n)[1:-1]

    def tridiagonal(self):
        h2 = self.h**2
        v = np.asarray(self.potential(self.s), dtype=float)
        if not np.all(np.isfinite(v)):
            raise DomainError("potential is not finite on the grid")
        diag = 2.0 / h2 + v + self.angular_term
        off = np.full(diag.size - 1, -1.0 / h2)
        return diag, off

    def refined(self) -> "SchrodingerSpec":
        return SchrodingerSpec(self.potential, self.angular_term, self.half_width, 2 * self.n - 1)


def sturm_count(diag, off, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix strictly below x."""
    off2 = np.asarray(off, dtype=float) ** 2
    tiny = np.finfo(float).tiny
    count = 0
    q = 1.0
    for k in range(len(diag)):
        q = diag[k] - x - (off2[k - 1] / q if k else 0.0)
        if q == 0.0:
            q = tiny
        if q < 0.0:
            count += 1
    return count


def lowest_eigenvalues(spec: SchrodingerSpec, count: int, vectors=False, check_decay=True, decay_tol=1e-12):
    """Lowest ``count`` eigenvalues (ascending) of the FD operator.

    With ``vectors`` the unit-norm eigenvectors on the interior grid are
    returned as columns of a second array.  The decay check requires
    every eigenvector to fall below decay_tol (relative to its maximum)
    on the three samples next to each wall.
    """
    if count < 1 or count > spec.n // 4:
        raise SpectrumError(f"count must lie in [1, n/4]; got {count} for n={spec.n}")
    diag, off = spec.tridiagonal()
    need_vec = vectors or check_decay
    out = eigh_tridiagonal(
        diag, off, eigvals_only=not need_vec, select="i", select_range=(0, count - 1), lapack_driver="stebz"
    )
    lam, vec = (out, None) if not need_vec else out
    lam = np.asarray(lam, dtype=float)
    _certify_counts(diag, off, lam)
    if need_vec:
        vec = vec / np.linalg.norm(vec, axis=0)
        for k in range(count):
            v = vec[:, k]
            tv = diag * v
            tv[:-1] += off * v[1:]
            tv[1:] += off * v[:-1]
            res = np.linalg.norm(tv - lam[k] * v)
            if res >= 1e-8:
                raise SpectrumError(f"eigenvector {k} residual {res:.3e} exceeds 1e-8")
        if check_decay:
            _check_decay(spec, lam, vec, decay_tol)
    return (lam, vec) if vectors else lam


def _certify_counts(diag, off, lam):
    scale = np.max(np.abs(diag)) + 2 * np.max(np.abs(off))
    tol = 64 * np.finfo(float).eps * scale
    for k, x in enumerate(lam):
        below = sturm_count(diag, off, x - tol)
        upto = sturm_count(diag, off, x + tol)
        if not (below <= k < upto):
            raise SpectrumError(f"Sturm count disagrees with eigenvalue {k} = {x}")


def _check_decay(spec, lam, vec, tol):
    k_edge = 3
    s = spec.s
    for k in range(vec.shape[1]):
        v = np.abs(vec[:, k])
        edge = max(v[:k_edge].max(), v[-k_edge:].max())
        if edge > tol * v.max():
            # local decay rate from the potential at the wall, if the mode is bound there
            gap = float(np.min(spec.potential(np.array([s[0], s[-1]])))) + spec.angular_term - lam[k]
            L = spec.half_width
            if gap > 0:
                need = math.log(edge / (tol * v.max())) / math.sqrt(gap)
                suggestion = L + 1.5 * need
            else:
                suggestion = 2.0 * L
            raise DomainTooSmallError(
                f"eigenvector {k} is {edge / v.max():.2e} of its peak near the wall; domain too small "
                f"(suggested half_width {suggestion:.4g})",
                suggested_half_width=suggestion,
            )


# --------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class SpectrumReport:
    mode: tuple
    closed_form: float
    numeric: float
    gap: float
    grid: tuple
    numeric_refined: float | None = None
    order: float | None = None
    extrapolated: float | None = None
    label: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def gap_extrapolated(self):
        return None if self.extrapolated is None else self.extrapolated - self.closed_form

    @property
    def signs_agree(self) -> bool:
        return np.sign(self.closed_form) == np.sign(self.numeric)

    def to_dict(self) -> dict:
        out = {
            "label": self.label,
            "mode": {"i": self.mode[0], "j": self.mode[1]},
            "closed_form": self.closed_form,
            "numeric": self.numeric,
            "gap": self.gap,
            "grid": {"half_width": self.grid[0], "n": self.grid[1]},
        }
        if self.numeric_refined is not None:
            out["numeric_refined"] = self.numeric_refined
            out["gap_refined"] = self.numeric_refined - self.closed_form
            out["order"] = self.order
            out["extrapolated"] = self.extrapolated
            out["gap_extrapolated"] = self.gap_extrapolated
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _mode_report(spec, mode, closed, refine, label, extra):
    j = mode[1]
    lam = lowest_eigenvalues(spec, j + 1)[j]
    kw = {}
    if refine:
        lam2 = lowest_eigenvalues(spec.refined(), j + 1)[j]
        g1, g2 = lam - closed, lam2 - closed
        order = math.log2(abs(g1) / abs(g2)) if g1 and g2 else math.nan
        kw = dict(numeric_refined=float(lam2), order=order, extrapolated=float((4.0 * lam2 - lam) / 3.0))
    return SpectrumReport(
        mode, float(closed), float(lam), float(lam - closed),
        (spec.half_width, spec.n), label=label, extra=extra, **kw,
    )


def pt_spec(i: int, params: C.Params, half_width=PT_HALF_WIDTH, n=DEFAULT_N) -> SchrodingerSpec:
    """-d^2/ds^2 - kappa sech^2(lam s) + mu + i(d+i-2)."""
    c = C.linearization_coeffs(params)
    kappa, lam, mu = c.kappa, c.lam, c.mu

    def V(s):
        x = lam * np.abs(np.asarray(s, dtype=float))
        sech2 = np.exp(2.0 * (math.log(2.0) - x - np.log1p(np.exp(-2.0 * x))))
        return mu - kappa * sech2

    return SchrodingerSpec(V, C.angular_eigenvalue(i, params.d), half_width, n)


def check_interp_mode(i, j, params: C.Params, half_width=PT_HALF_WIDTH, n=DEFAULT_N, refine=True) -> SpectrumReport:
    """FD eigenvalue j in angular sector i against the closed form.

    The rank-one term of the second variation vanishes for i >= 1 and for
    theta = 1, which are the only sectors handled.
    """
    if i < 0 or j < 0:
        raise DomainError("mode indices must be non-negative")
    if i == 0 and params.theta != 1.0:
        raise SpectrumError("sector i = 0 is only certified for theta = 1 (rank-one term not deflated)")
    closed = C.eig_interp(i, j, params)
    spec = pt_spec(i, params, half_width, n)
    return _mode_report(spec, (i, j), closed, refine, "interp", {"params": params.as_dict()})


def oscillator_half_width(A: float, count: int) -> float:
    return 12.0 * max(1.0, A**-0.5) * math.sqrt(2.0 * count + 10.0)


def oscillator_spec(i, gamma, sigma, d, half_width=None, n=DEFAULT_N) -> SchrodingerSpec:
    """-d^2/ds^2 + A^2 s^2/4 - 3A/2 + i(d+i-2)."""
    A = C.oscillator_strength(gamma, sigma)
    L = oscillator_half_width(A, 1) if half_width is None else half_width
    return SchrodingerSpec(lambda s: 0.25 * A * A * np.asarray(s) ** 2 - 1.5 * A, C.angular_eigenvalue(i, d), L, n)


def check_glh_mode(i, j, gamma, sigma, d, half_width=None, n=DEFAULT_N, refine=True) -> SpectrumReport:
    if i < 0 or j < 0:
        raise DomainError("mode indices must be non-negative")
    closed = C.eig_glh(i, j, gamma, sigma, d)
    A = C.oscillator_strength(gamma, sigma)
    L = oscillator_half_width(A, j + 1) if half_width is None else half_width
    spec = oscillator_spec(i, gamma, sigma, d, L, n)
    extra = {"A": A, "gamma": gamma, "sigma": sigma, "d": d}
    return _mode_report(spec, (i, j), closed, refine, "glh", extra)


def interp_ground_state(i, params: C.Params, half_width=PT_HALF_WIDTH, n=DEFAULT_N):
    """Grid (interior points) and unit FD ground state in sector i, sign fixed positive at s = 0."""
    spec = pt_spec(i, params, half_width, n)
    _, vec = lowest_eigenvalues(spec, 1, vectors=True)
    v = vec[:, 0]
    v = v * np.sign(v[v.size // 2])
    return spec.s, v


def count_negative(spec: SchrodingerSpec) -> int:
    """Number of FD eigenvalues below zero (Sturm count)."""
    diag, off = spec.tridiagonal()
    return sturm_count(diag, off, 0.0)
