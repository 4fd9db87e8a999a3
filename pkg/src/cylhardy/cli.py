"""Command-line front end.

Exit codes: 0 success, 1 inequality violated, 2 usage or domain error,
3 numerical accuracy failure.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import constants as C
from . import extremals as X
from . import functional as F
from . import spectral as S
from . import variational as V
from ._io import dumps, write_csv
from .errors import AccuracyError, CylHardyError, DomainError, ResolutionError, SpectrumError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_ACCURACY = 0, 1, 2, 3

# option defaults; a --config file overrides these, explicit flags override both
DEFAULTS = {
    "d": 3, "a": 0.0, "p": None, "theta": None, "gamma": None, "sigma": None,
    "x": None, "q": None, "i": 1, "j": 0, "k_grid": 512,
    "n": None, "half_width": None, "refine": False,
    "mode_i": 0, "amplitude": 0.0,
    "a_min": None, "a_max": None, "a_steps": 1,
    "eta_min": 1e-3, "eta_max": 1.0, "eta_steps": 1000,
    "epsilon": 0.05, "max_iter": 10_000, "descent_n": 2049,
    "quad_tol": None, "out": None, "state_out": None, "euclidean": False,
}

CONST_NAMES = [
    "gamma", "cosh-moment", "sphere-area", "vartheta", "k-interp", "lambda-extremal", "c-star-interp",
    "c-hs", "sobolev", "k-log-hardy", "c-star-glh", "c-star-lh", "k-d-sigma", "upper-bound-interp",
    "upper-bound-glh", "linearization", "eig-interp", "theta-breaking", "a-minus", "region-interp",
    "region-glh", "eig-glh",
]


class UsageError(CylHardyError):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _sigma(args):
    return args.sigma if args.sigma is not None else C.sigma_of(args.a, args.d)


def _interp_params(args):
    _need(args, "p", "theta")
    return C.Params.interpolation(args.d, args.a, args.p, args.theta)


def _quad(args):
    cfg = F.QuadratureConfig.default()
    return cfg if args.quad_tol is None else F.with_tolerance(cfg, args.quad_tol)


# --------------------------------------------------------------------------
# const


def _const_value(name, args):
    d, a = args.d, args.a
    if name == "gamma":
        _need(args, "x")
        return {"x": args.x}, C.gamma_fn(args.x), None
    if name == "cosh-moment":
        _need(args, "q")
        return {"q": args.q}, C.cosh_moment(args.q), None
    if name == "sphere-area":
        return {"d": d}, C.sphere_area(d), None
    if name == "vartheta":
        _need(args, "p")
        return {"p": args.p, "d": d}, C.vartheta(args.p, d), None
    if name in ("k-interp", "lambda-extremal"):
        _need(args, "theta", "p")
        sig = _sigma(args)
        fn = C.k_interp if name == "k-interp" else C.lambda_extremal
        return {"theta": args.theta, "p": args.p, "sigma": sig}, fn(args.theta, args.p, sig), None
    if name == "c-star-interp":
        P = _interp_params(args)
        return P.as_dict(), C.c_star_interp(P), None
    if name == "c-hs":
        _need(args, "p")
        return {"p": args.p, "d": d}, C.c_hs(args.p, d), None
    if name == "sobolev":
        return {"d": d}, C.sobolev_constant(d), None
    if name == "k-log-hardy":
        _need(args, "gamma")
        sig = _sigma(args)
        return {"gamma": args.gamma, "sigma": sig}, C.k_log_hardy(args.gamma, sig), None
    if name == "c-star-glh":
        _need(args, "gamma")
        return {"gamma": args.gamma, "a": a, "d": d}, C.c_star_glh(args.gamma, a, d), None
    if name == "c-star-lh":
        return {"d": d}, C.c_star_lh(d), None
    if name == "k-d-sigma":
        sig = _sigma(args)
        return {"d": d, "sigma": sig}, C.k_d_sigma(d, sig), None
    if name == "upper-bound-interp":
        P = _interp_params(args)
        ub = C.upper_bound_interp(P, args.k_grid)
        return dict(P.as_dict(), k_grid=args.k_grid, argmin_k=ub.argmin), ub.value, ub.proxy
    if name == "upper-bound-glh":
        _need(args, "gamma")
        ub = C.upper_bound_glh(args.gamma, a, d)
        return {"gamma": args.gamma, "a": a, "d": d, "exponent": ub.argmin}, ub.value, ub.proxy
    if name == "linearization":
        P = _interp_params(args)
        c = C.linearization_coeffs(P)
        return P.as_dict(), {"kappa": c.kappa, "mu": c.mu, "nu": c.nu, "lambda": c.lam, "ell": c.ell}, None
    if name == "eig-interp":
        P = _interp_params(args)
        return dict(P.as_dict(), i=args.i, j=args.j), C.eig_interp(args.i, args.j, P), None
    if name == "theta-breaking":
        _need(args, "p")
        return {"a": a, "p": args.p, "d": d}, C.theta_breaking(a, args.p, d), None
    if name == "a-minus":
        _need(args, "p")
        return {"p": args.p, "d": d}, C.a_minus(args.p, d), None
    if name == "region-interp":
        P = _interp_params(args)
        return P.as_dict(), C.region_interp(P).value, None
    if name == "region-glh":
        _need(args, "gamma")
        return {"gamma": args.gamma, "a": a, "d": d}, C.region_glh(args.gamma, a, d).value, None
    if name == "eig-glh":
        _need(args, "gamma")
        sig = _sigma(args)
        params = {"i": args.i, "j": args.j, "gamma": args.gamma, "sigma": sig, "d": d}
        return params, C.eig_glh(args.i, args.j, args.gamma, sig, d), None
    raise UsageError(f"unknown constant {name!r}")


def cmd_const(args, out):
    params, value, proxy = _const_value(args.name, args)
    doc = {"name": args.name, "params": params, "value": value}
    if proxy is not None:
        doc["proxy"] = proxy
    doc["formula"] = C.FORMULAS.get(args.name, "")
    out.write(dumps(doc) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify / extremal


def _grid_kw(args):
    kw = {}
    if args.n is not None:
        kw["n"] = args.n
    if args.half_width is not None:
        kw["half_width"] = args.half_width
    return kw


def _profile(kind, args, which):
    """Build the named profile for inequality ``which``."""
    grid = _grid_kw(args)
    if kind.startswith("file:"):
        return X.Profile.from_csv(kind[5:])
    if kind == "gaussian":
        return X.gaussian_profile(1.0, **grid)
    if kind == "sech":
        return X.sech_profile(1.0, 1.0, **grid)
    if kind != "extremal":
        raise UsageError(f"unknown profile {kind!r} (extremal | gaussian | sech | file:PATH)")
    sig = _sigma(args)
    if which == "interp":
        _need(args, "theta", "p")
        return X.interp_extremal(args.theta, args.p, sig, **grid)
    if which == "glh":
        _need(args, "gamma")
        return X.glh_extremal(args.gamma, sig, **grid)
    if which == "lsi":
        return X.gaussian_profile(1.0 / (4.0 * sig * sig), **grid)
    if which == "hardy":
        # radial optimizer of the logarithmic Hardy inequality (Gaussian in s)
        return X.glh_extremal(args.d / 4.0 if args.gamma is None else args.gamma, sig, **grid)
    raise UsageError(f"unknown inequality {which!r}")


def cmd_verify(args, out):
    cfg = _quad(args)
    which = args.inequality
    if which == "interp":
        _need(args, "theta", "p")
        rep = F.quotient_interp(_profile(args.profile, args, which), args.theta, args.p, _sigma(args), cfg)
    elif which == "glh":
        _need(args, "gamma")
        rep = F.deficit_glh(_profile(args.profile, args, which), args.gamma, _sigma(args), cfg)
    elif which == "lsi":
        w0 = _profile(args.profile, args, which)
        rep = F.verify_lsi_cylinder(w0, (args.mode_i, args.amplitude), args.d, _sigma(args), cfg)
    elif which == "hardy":
        if args.profile.startswith("file:"):
            u = X.EuclideanProfile.from_csv(args.profile[5:], args.d, args.a)
        else:
            u = X.to_euclidean(_profile(args.profile, args, which), args.d, args.a)
        rep = F.verify_hardy(u, cfg)
    else:
        raise UsageError(f"unknown inequality {which!r}")
    out.write(rep.to_json() + "\n")
    return EXIT_OK if rep.verified else EXIT_VIOLATION


def cmd_extremal(args, out):
    grid = _grid_kw(args)
    sig = _sigma(args)
    if args.kind == "interp":
        _need(args, "theta", "p")
        w = X.interp_extremal(args.theta, args.p, sig, **grid)
    else:
        _need(args, "gamma")
        w = X.glh_extremal(args.gamma, sig, **grid)
    if args.euclidean:
        u = X.to_euclidean(w, args.d, args.a)
        rows, header = zip(u.r, u.values), ["r", "u"]
    else:
        rows, header = zip(w.s, w.values), ["s", "w"]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, header, fh)
    else:
        out.write(write_csv(rows, header))
    return EXIT_OK


# --------------------------------------------------------------------------
# spectrum / region / minimize


def cmd_spectrum(args, out):
    kw = {}
    if args.n is not None:
        kw["n"] = args.n
    if args.half_width is not None:
        kw["half_width"] = args.half_width
    if args.kind == "interp":
        rep = S.check_interp_mode(args.i, args.j, _interp_params(args), refine=args.refine, **kw)
    else:
        _need(args, "gamma")
        rep = S.check_glh_mode(args.i, args.j, args.gamma, _sigma(args), args.d, refine=args.refine, **kw)
    out.write(rep.to_json() + "\n")
    return EXIT_OK


REGION_HEADER = ["a", "eta", "vartheta", "theta_cap", "breaking_interp", "gamma_low", "gamma_high", "breaking_glh"]


def region_rows(d, a_values, eta_values, theta=None, gamma=None):
    """RegionRecord rows, row-major in (a, eta)."""
    for a in a_values:
        lo, hi = C.glh_gamma_window(a, d)
        if gamma is None:
            glh = bool(a < -0.5)
        else:
            glh = C.region_glh(gamma, a, d) is C.Region.BREAKING
        for eta in eta_values:
            p = 2.0 * d / (d - 2.0 + 2.0 * eta)
            vt = C.vartheta(p, d)
            cap = C.theta_breaking(a, p, d)
            if theta is None:
                br = bool(vt < cap)
            elif p > 2.0 and vt <= theta <= 1.0:
                br = C.region_interp(C.Params.interpolation(d, a, p, theta)) is C.Region.BREAKING
            else:
                br = False
            yield (float(a), float(eta), vt, cap, br, lo, hi, glh)


def cmd_region(args, out):
    d = args.d
    if d < 3:
        raise UsageError("region scans parametrize p by eta and need d >= 3")
    a_min = args.a if args.a_min is None else args.a_min
    a_max = a_min if args.a_max is None else args.a_max
    if a_max < a_min or args.a_steps < 1 or args.eta_steps < 1 or args.eta_max < args.eta_min:
        raise UsageError("empty range")
    if args.a_steps * args.eta_steps > 1_000_000:
        raise UsageError("grid exceeds 10^6 points")
    if not a_max < (d - 2) / 2:
        raise DomainError("need a < (d-2)/2")
    if not (0 < args.eta_min and args.eta_max <= 1):
        raise UsageError("eta range must lie in (0, 1]")
    a_vals = np.linspace(a_min, a_max, args.a_steps)
    eta_vals = np.linspace(args.eta_min, args.eta_max, args.eta_steps)
    rows = region_rows(d, a_vals, eta_vals, args.theta, args.gamma)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, REGION_HEADER, fh)
    else:
        write_csv(rows, REGION_HEADER, out)
    return EXIT_OK


def cmd_minimize(args, out):
    P = _interp_params(args)
    res = V.minimize_deficit(P, cfg=_quad(args), epsilon=args.epsilon, n=args.descent_n, max_iter=args.max_iter)
    doc = dict(res.to_dict(), params=P.as_dict(), region=C.region_interp(P).value)
    if args.state_out:
        res.state.to_csv(args.state_out)
    out.write(dumps(doc) + "\n")
    return EXIT_OK if res.converged else EXIT_ACCURACY


# --------------------------------------------------------------------------
# parser


def _add_common(p, *names):
    flags = {
        "d": dict(type=int, help="dimension"),
        "a": dict(type=float, help="weight exponent a < (d-2)/2"),
        "p": dict(type=float, help="exponent p"),
        "theta": dict(type=float, help="interpolation exponent"),
        "gamma": dict(type=float, help="logarithmic exponent gamma"),
        "sigma": dict(type=float, help="sigma (defaults to (d-2-2a)/2)"),
        "i": dict(type=int, help="angular sector"),
        "j": dict(type=int, help="radial level"),
        "n": dict(type=int, help="grid points"),
        "half_width": dict(type=float, help="grid half-width L"),
        "quad_tol": dict(type=float, help="quadrature tolerance (also $CYLHARDY_QUAD_TOL)"),
    }
    for name in names:
        p.add_argument("--" + name.replace("_", "-"), dest=name, default=None, **flags[name])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cylhardy", description="Sharp constants, extremals and spectra for "
                                 "weighted Hardy, logarithmic Hardy and interpolation inequalities.")
    ap.add_argument("--config", help="key=value file of option defaults (flags take precedence)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("const", help="evaluate a closed-form constant")
    p.add_argument("name", choices=CONST_NAMES)
    _add_common(p, "d", "a", "p", "theta", "gamma", "sigma", "i", "j")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--k-grid", dest="k_grid", type=int, default=None)
    p.set_defaults(func=cmd_const)

    p = sub.add_parser("verify", help="evaluate both sides of an inequality on a profile")
    p.add_argument("inequality", choices=["interp", "glh", "lsi", "hardy"])
    p.add_argument("--profile", default="extremal", help="extremal | gaussian | sech | file:PATH")
    _add_common(p, "d", "a", "p", "theta", "gamma", "sigma", "n", "half_width", "quad_tol")
    p.add_argument("--mode-i", dest="mode_i", type=int, default=None)
    p.add_argument("--amplitude", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extremal", help="write an optimal profile as CSV")
    p.add_argument("kind", choices=["interp", "glh"])
    _add_common(p, "d", "a", "p", "theta", "gamma", "sigma", "n", "half_width")
    p.add_argument("--euclidean", action="store_true", default=None, help="write u(r) instead of w(s)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("spectrum", help="finite-difference check of a linearized eigenvalue")
    p.add_argument("kind", choices=["interp", "glh"])
    _add_common(p, "d", "a", "p", "theta", "gamma", "sigma", "i", "j", "n", "half_width")
    p.add_argument("--refine", action="store_true", default=None, help="also solve on 2n-1 points")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("region", help="CSV scan of the symmetry-breaking regions")
    _add_common(p, "d", "a", "theta", "gamma")
    for name, typ in (("a_min", float), ("a_max", float), ("a_steps", int),
                      ("eta_min", float), ("eta_max", float), ("eta_steps", int)):
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=typ, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("minimize", help="two-mode descent certifying a non-radial trial function")
    _add_common(p, "d", "a", "p", "theta", "quad_tol")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    p.add_argument("--descent-n", dest="descent_n", type=int, default=None)
    p.add_argument("--state-out", dest="state_out")
    p.set_defaults(func=cmd_minimize)
    return ap


def read_config(path) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            k, v = (x.strip() for x in line.split("=", 1))
            k = k.replace("-", "_")
            if k not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown key {k!r}")
            out[k] = v
    return out


_INT_KEYS = {"d", "i", "j", "k_grid", "n", "mode_i", "a_steps", "eta_steps", "max_iter", "descent_n"}
_BOOL_KEYS = {"refine", "euclidean"}
_STR_KEYS = {"out", "state_out"}


def _coerce(key, raw):
    try:
        if key in _BOOL_KEYS:
            return raw.lower() in ("1", "true", "yes", "on")
        if key in _INT_KEYS:
            return int(raw)
        if key in _STR_KEYS:
            return raw
        return float(raw)
    except ValueError:
        raise UsageError(f"config value for {key!r} is not valid: {raw!r}") from None


def _resolve(args):
    conf = read_config(args.config) if args.config else {}
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            val = _coerce(key, conf[key]) if key in conf else default
            setattr(args, key, val)
    return args


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _resolve(args)
        return args.func(args, out)
    except (UsageError, DomainError, ValueError, OSError) as exc:
        sys.stderr.write(f"cylhardy: error: {exc}\n")
        return EXIT_USAGE
    except (ResolutionError, AccuracyError, SpectrumError) as exc:
        sys.stderr.write(f"cylhardy: accuracy failure: {exc}\n")
        return EXIT_ACCURACY


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
