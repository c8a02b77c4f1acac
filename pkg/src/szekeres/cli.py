"""Command-line front end.

Subcommands: ``classify``, ``phi-surface``, ``curves`` and ``geodesic``.
Exit status is 0 on success (whatever the verdict), 2 on a user error
and 3 on a numerical failure.
"""

import argparse
import io
import sys
from dataclasses import dataclass

import numpy as np

from .errors import (
    Homogeneous,
    InadmissibleProfile,
    InsufficientSamples,
    InvalidModel,
    NonPositiveOrdinate,
    NoSolution,
    PastSingularity,
    StepUnderflow,
    SzekeresError,
)
from .kinematics import collapse_curves
from .null_geodesics import phi_roots, solve_xi_eq_m, solve_xi_gt_m, with_second_order
from .numeric import DEFAULT_WINDOW, IntegrationControls, fit_power_law, integrate_null_geodesic
from .series import ModelParams, find_m, validate
from .visibility import DensityProfile, classify

EXIT_OK, EXIT_USER, EXIT_NUMERIC = 0, 2, 3

_PROFILES = {"rapid": DensityProfile.RAPID_FALLOFF, "gradual": DensityProfile.GRADUAL_DECREASE}


class UserError(Exception):
    pass


@dataclass
class RunConfig:
    n: int = None
    F: tuple = ()
    nu: tuple = (0.0,)
    profile: str = None
    ortg_A: float = None
    ortg_q: float = None

    def params(self):
        if self.n is None:
            raise UserError("config needs n")
        if not self.F:
            raise UserError("config needs F (at least F_0)")
        return ModelParams(self.n, self.F, self.nu)


def _floats(text):
    return tuple(float(v) for v in text.split(",") if v.strip())


def parse_config(text):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    cfg = RunConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UserError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "n":
                cfg.n = int(value)
            elif key == "F":
                cfg.F = _floats(value)
            elif key == "nu":
                cfg.nu = _floats(value)
            elif key == "profile":
                if value not in _PROFILES:
                    raise UserError(f"line {lineno}: profile must be rapid or gradual")
                cfg.profile = value
            elif key in ("ortg_A", "ortg_q"):
                setattr(cfg, key, float(value))
            else:
                raise UserError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise UserError(f"line {lineno}: {exc}") from None
    return cfg


def serialize_config(cfg):
    lines = []
    if cfg.n is not None:
        lines.append(f"n = {cfg.n}")
    if cfg.F:
        lines.append("F = " + ", ".join(repr(v) for v in cfg.F))
    lines.append("nu = " + ", ".join(repr(v) for v in cfg.nu))
    if cfg.profile is not None:
        lines.append(f"profile = {cfg.profile}")
    for key in ("ortg_A", "ortg_q"):
        if getattr(cfg, key) is not None:
            lines.append(f"{key} = {getattr(cfg, key)!r}")
    return "\n".join(lines) + "\n"


def parse_grid(spec, kind="linear"):
    """``lo:hi:steps`` -> array; steps >= 2."""
    try:
        lo, hi, steps = spec.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise UserError(f"grid must be lo:hi:steps, got {spec!r}") from None
    if steps < 2:
        raise UserError("grid needs at least 2 steps")
    if kind == "geometric":
        if not (lo > 0.0 and hi > 0.0):
            raise UserError("geometric grid needs positive bounds")
        return np.geomspace(lo, hi, steps)
    return np.linspace(lo, hi, steps)


def fmt(x):
    if x is None:
        return ""
    return repr(float(x))


def _csv(header, rows, comments=()):
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) if not isinstance(v, (int, str)) else str(v) for v in row) + "\n")
    for c in comments:
        out.write(f"# {c}\n")
    return out.getvalue()


def _load_config(args):
    if args.config is None:
        return RunConfig()
    try:
        with open(args.config, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise UserError(f"cannot read config: {exc}") from None


def _model(cfg):
    return validate(cfg.params())


def cmd_classify(args):
    cfg = _load_config(args)
    profile = args.profile or cfg.profile
    if profile is None:
        raise UserError("classify needs a density profile (rapid or gradual)")
    mdl = _model(cfg)
    ortg = None
    if cfg.ortg_A is not None or cfg.ortg_q is not None:
        if cfg.ortg_A is None or cfg.ortg_q is None:
            raise UserError("ortg_A and ortg_q must be given together")
        ortg = (cfg.ortg_A, cfg.ortg_q)
    verdict = classify(mdl, _PROFILES[profile], ortg)
    rec = {"outcome": verdict.outcome.value, "case_tag": verdict.case_tag.value,
           "geodesic_kind": verdict.geodesic_kind.value}
    try:
        m, _ = find_m(mdl)
        rec["m"] = m
    except Homogeneous:
        m = None
    rec["crit"] = str(mdl.critical_m)
    ev = verdict.details
    sol = ev.null
    if sol is not None:
        sol = with_second_order(mdl, sol)
        rec.update(xi=fmt(sol.xi), a=fmt(sol.a), sigma=fmt(sol.sigma))
        if sol.h is not None:
            rec["h"] = fmt(sol.h)
        rec["family"] = sol.family.value
        if sol.phi is not None:
            rec.update(phi=fmt(sol.phi), b=fmt(sol.b), zeta=fmt(sol.zeta), root_count=len(sol.roots))
        rec["tbl_reduction"] = str(sol.tbl_reduction).lower()
    if ev.null_limit is not None:
        rec["null_limit"] = fmt(ev.null_limit)
    if ev.bound_satisfied is not None:
        rec["bound_satisfied"] = str(ev.bound_satisfied).lower()
    if ev.timelike is not None:
        t = ev.timelike
        rec.update(ortg_case=t.case.value, p=fmt(t.p), c=fmt(t.c), timelike_limit=fmt(ev.timelike_limit))
    for i, note in enumerate(ev.notes):
        rec[f"note{i}"] = note

    head = f"{verdict.outcome.value}"
    if m is not None:
        rel = ">" if m > mdl.critical_m else ("=" if m == mdl.critical_m else "<")
        head += f", m={m} {rel} crit={float(mdl.critical_m)!r}"
    if sol is not None:
        head += f", xi={sol.xi!r}"
    text = head + "\n" + "".join(f"{k}={v}\n" for k, v in rec.items())
    _emit(args, text)
    return EXIT_OK


def cmd_phi_surface(args):
    cfg = _load_config(args)
    n = args.n if args.n is not None else cfg.n
    if n not in (2, 3):
        raise UserError("phi-surface needs n in {2, 3}")
    zetas = parse_grid(args.zeta)
    if np.any(zetas >= 0.0):
        raise UserError("zeta sweep must be entirely negative")
    if args.nu_grid is not None:
        nus = parse_grid(args.nu_grid)
    else:
        nus = np.array([args.nu])
    if np.any(nus < -1.0):
        raise UserError("nu_-1 sweep must be >= -1")
    rows = []
    for nu in nus:
        for z in zetas:
            roots = phi_roots(n, float(z), float(nu))
            roots = [r for r in roots if r.amplitude_residual <= 1e-8]
            if roots:
                rows.append((nu, z, roots[0].phi, len(roots), roots[0].amplitude_residual))
            else:
                rows.append((nu, z, None, 0, None))
    _emit(args, _csv(("nu_m1", "zeta", "phi", "root_count", "residual"), rows, [f"n={n}"]))
    return EXIT_OK


def cmd_curves(args):
    cfg = _load_config(args)
    mdl = _model(cfg)
    if args.grid is None:
        raise UserError("curves needs --grid lo:hi:steps")
    grid = parse_grid(args.grid, args.grid_kind)
    if np.any(grid <= 0.0):
        raise UserError("curves are defined for r > 0 only")
    curves = collapse_curves(mdl, grid)
    header = ("r", "t_s_exact", "t_s_series", "t_ah_exact", "t_ah_series")
    _emit(args, _csv(header, curves.rows(), [f"n={mdl.n}", f"t0={mdl.t0!r}"]))
    return EXIT_OK


def _asymptotic(mdl):
    for solver in (solve_xi_gt_m, solve_xi_eq_m):
        try:
            return solver(mdl)
        except NoSolution:
            continue
    return None


def _pair(spec, name):
    try:
        lo, hi = (float(v) for v in spec.split(":"))
    except ValueError:
        raise UserError(f"{name} must be lo:hi") from None
    return lo, hi


def cmd_geodesic(args):
    cfg = _load_config(args)
    mdl = _model(cfg)
    comments = [f"n={mdl.n}", f"t0={mdl.t0!r}"]
    try:
        find_m(mdl)
        sol = _asymptotic(mdl)
    except Homogeneous:
        sol = None
        comments.append("fit: refused (NoConsistentGeodesic: homogeneous model, no xi or a)")
    if args.t_start is None and sol is None:
        if len(comments) == 2:
            comments.append("fit: refused (NoConsistentGeodesic: no asymptotic ray to launch on)")
        _emit(args, _csv(("r", "t"), [], comments))
        return EXIT_OK
    ctl = IntegrationControls()
    if args.t_start is None:
        dt0 = sol.a * args.r_start**sol.xi
    else:
        dt0 = args.t_start - mdl.t0
    try:
        path = integrate_null_geodesic(mdl, args.r_start, None, args.r_end, ctl, dt_start=dt0)
    except PastSingularity as exc:
        raise UserError(str(exc)) from None
    comments.append(f"terminal_event={path.terminal_event.value}")
    if sol is not None:
        window = _pair(args.window, "--window") if args.window else DEFAULT_WINDOW
        try:
            fit = fit_power_law(path, mdl.t0, window)
        except (InsufficientSamples, NonPositiveOrdinate) as exc:
            comments.append(f"fit: failed ({exc})")
        else:
            comments += [
                f"window={fit.r_window[0]!r}:{fit.r_window[1]!r}",
                f"xi_est={fit.xi_est!r}",
                f"a_est={fit.a_est!r}",
                f"residual_rms={fit.residual_rms!r}",
                f"xi_analytic={sol.xi!r}",
                f"a_analytic={sol.a!r}",
                f"xi_rel_err={abs(fit.xi_est / sol.xi - 1.0)!r}",
                f"a_rel_err={abs(fit.a_est / sol.a - 1.0)!r}",
            ]
    _emit(args, _csv(("r", "t"), zip(path.r, path.t), comments))
    return EXIT_OK


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="szekeres", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value model file")
        p.add_argument("--out", help="output path (default stdout)")
        return p

    p = common(sub.add_parser("classify", help="local-visibility verdict"))
    p.add_argument("--profile", choices=sorted(_PROFILES), help="overrides the config profile")
    p.set_defaults(func=cmd_classify)

    p = common(sub.add_parser("phi-surface", help="sweep the phi equation over (nu_-1, zeta)"))
    p.add_argument("--n", type=int, help="dimension parameter (2 or 3)")
    p.add_argument("--zeta", required=True, help="zeta sweep lo:hi:steps")
    p.add_argument("--nu-grid", help="nu_-1 sweep lo:hi:steps")
    p.add_argument("--nu", type=float, default=-1.0, help="fixed nu_-1 when --nu-grid is absent")
    p.set_defaults(func=cmd_phi_surface)

    p = common(sub.add_parser("curves", help="singularity and apparent-horizon curves"))
    p.add_argument("--grid", help="radial grid lo:hi:steps")
    p.add_argument("--grid-kind", choices=("linear", "geometric"), default="geometric")
    p.set_defaults(func=cmd_curves)

    p = common(sub.add_parser("geodesic", help="integrate a radial null ray and fit a power law"))
    p.add_argument("--r-start", type=float, default=1e-8)
    p.add_argument("--r-end", type=float, default=1e-3)
    p.add_argument("--t-start", type=float, help="launch time (default: on the asymptotic ray)")
    p.add_argument("--window", help="fit window lo:hi")
    p.set_defaults(func=cmd_geodesic)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UserError, InvalidModel, InadmissibleProfile) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except StepUnderflow as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except SzekeresError as exc:
        if isinstance(exc, ValueError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USER
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ArithmeticError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
