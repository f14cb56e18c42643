"""Command-line front end: generate meshes for the three construction
regimes, verify any analytic configuration with the finite-difference oracle,
and emit machine-readable residual reports.

Subcommands: generate, verify, solve-rho, revolve, presets.

Exit codes: 0 all checks passed, 1 residuals/oracle checks exceeded the
configured tolerances, 2 configuration error, 3 numerical failure (blow-up,
inadmissible speed-up, degenerate immersion).

Output formats (all deterministic, 17 significant digits, LF endings):
  mesh  -- Wavefront OBJ (v/vn lines plus quads split into two triangles)
  report -- CSV rows (u, v, E, F, G, lambda1, lambda2, H, K, theta) with a
            JSON summary in a sidecar file <report>.summary.json

ISOR_NUM_THREADS caps the worker threads used for oracle row blocks.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels, cmc, geometry, intrinsic, minimal, revolve
from .errors import ConfigError, IsorevError, RadicandError

FMT = "%.17g"


def _fmt(x):
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return "nan"
    return FMT % x


def worker_count():
    cap = os.environ.get("ISOR_NUM_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ConfigError(f"ISOR_NUM_THREADS={cap!r} is not an integer")
    return min(n, 8)


# ---------------------------------------------------------------- job config

MODES = ("minimal", "cmc", "untwisted")
SOURCES = ("enneper", "exp", "const", "minimal", "csv")


@dataclass
class JobConfig:
    mode: str = ""
    # minimal-family parameters
    preset: Optional[str] = None
    order: int = 1
    a: Optional[float] = None
    A: Optional[float] = None
    B: Optional[float] = None
    # cmc parameters
    H: Optional[float] = None
    b: Optional[float] = None
    rho0: Optional[float] = None
    drho0: Optional[float] = None
    u0: float = 0.0
    tol: float = 1e-10
    cylinder: bool = False
    # untwisted parameters
    source: Optional[str] = None
    c: Optional[float] = None
    k: float = 1.0
    value: float = 1.0
    csv: Optional[str] = None
    n_quad: int = 64
    # sampling
    u_range: tuple = (-1.0, 1.0)
    v_range: tuple = (0.0, 2.0 * np.pi)
    nu: int = 80
    nv: int = 240
    fd_step: Optional[float] = None
    # verification overrides (negative controls)
    override_b: Optional[float] = None
    override_H: Optional[float] = None
    rho_scale: float = 1.0
    # tolerances (None -> per-mode default)
    tol_residual: Optional[float] = None
    tol_metric: Optional[float] = None
    tol_mean_curv: Optional[float] = None
    tol_twist: Optional[float] = None
    # outputs
    out: Optional[str] = None
    report: Optional[str] = None

    def validate(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.nu < 2 or self.nv < 2:
            raise ConfigError("nu and nv must be >= 2")
        if not (self.u_range[0] < self.u_range[1]
                and self.v_range[0] < self.v_range[1]):
            raise ConfigError("u/v ranges must be increasing")
        if self.mode == "minimal":
            if self.preset is None and None in (self.a, self.A, self.B):
                raise ConfigError(
                    "minimal mode needs --preset or all of --a --A --B")
        elif self.mode == "cmc":
            need = {"H": self.H, "a": self.a, "b": self.b}
            if not self.cylinder:
                need.update({"rho0": self.rho0, "drho0": self.drho0})
            missing = [k for k, v in need.items() if v is None]
            if missing:
                raise ConfigError(f"cmc mode needs --{' --'.join(missing)}")
        elif self.mode == "untwisted":
            if self.source not in SOURCES:
                raise ConfigError(
                    f"untwisted mode needs --source from {SOURCES}")
            if self.c is None:
                raise ConfigError("untwisted mode needs --c")
            if self.source == "minimal" and None in (self.a, self.A, self.B):
                raise ConfigError("--source minimal needs --a --A --B")
            if self.source == "csv" and not self.csv:
                raise ConfigError("--source csv needs --csv PATH")
        return self


def parse_range(text):
    try:
        lo, hi = text.split(":")
        return (float(lo), float(hi))
    except Exception:
        raise ConfigError(f"range {text!r} must look like LO:HI")


# ------------------------------------------------------------ job assembly


@dataclass
class Job:
    config: JobConfig
    smap: geometry.SurfaceMap
    data: Optional[intrinsic.IntrinsicData]     # None for untwisted
    rp: Optional[revolve.RevolveProfile]        # untwisted only
    twist_expected: float
    H_expected: Optional[float]
    period: Optional[np.ndarray]
    ode_info: Optional[dict]
    params_echo: dict


def _untwisted_profile(cfg: JobConfig):
    if cfg.source == "enneper":
        return intrinsic.enneper_quarter_profile()
    if cfg.source == "exp":
        return intrinsic.MetricProfile.exponential(cfg.k)
    if cfg.source == "const":
        return intrinsic.MetricProfile.constant(cfg.value)
    if cfg.source == "minimal":
        p = minimal.MinimalParams(cfg.a, cfg.A, cfg.B)
        return minimal.metric_profile(p)
    if cfg.source == "csv":
        try:
            raw = np.loadtxt(cfg.csv, delimiter=",", skiprows=1)
            return intrinsic.MetricProfile.from_samples(raw[:, 0], raw[:, 1])
        except (OSError, ValueError, IndexError) as exc:
            raise ConfigError(f"cannot read profile samples: {exc}")
    raise ConfigError(f"unknown source {cfg.source!r}")


def build_job(cfg: JobConfig) -> Job:
    cfg.validate()
    if cfg.mode == "minimal":
        try:
            p = (minimal.preset(cfg.preset, cfg.order) if cfg.preset
                 else minimal.MinimalParams(cfg.a, cfg.A, cfg.B))
        except (KeyError, ValueError) as exc:
            raise ConfigError(str(exc))
        data = minimal.intrinsic_data(p)
        if cfg.override_b is not None:
            data = data.replace(b=cfg.override_b)
        if cfg.override_H is not None:
            data = data.replace(H=cfg.override_H)
        if cfg.rho_scale != 1.0:
            data = data.replace(profile=data.profile.scaled(cfg.rho_scale))
        return Job(config=cfg, smap=minimal.surface_map(p), data=data, rp=None,
                   twist_expected=p.a, H_expected=0.0,
                   period=minimal.period_vector(p), ode_info=None,
                   params_echo={"a": p.a, "A": p.A, "B": p.B,
                                "preset": cfg.preset, "order": cfg.order})

    if cfg.mode == "cmc":
        echo = {"H": cfg.H, "a": cfg.a, "b": cfg.b, "cylinder": cfg.cylinder}
        if cfg.cylinder:
            smap = cmc.cylinder_map(cfg.H, cfg.a, cfg.b)
            data = cmc.cylinder_intrinsic(cfg.H, cfg.a, cfg.b)
            ode_info = None
        else:
            span = cfg.u_range[1] - cfg.u_range[0]
            pad = 0.02 * span
            sol = cmc.solve_rho(cfg.H, cfg.a, cfg.b, cfg.rho0, cfg.drho0,
                                (cfg.u_range[0] - pad, cfg.u_range[1] + pad),
                                tol=cfg.tol, u0=cfg.u0)
            if sol.truncated:
                lo, hi = sol.interval
                if lo > cfg.u_range[0] or hi < cfg.u_range[1]:
                    raise IsorevError(
                        f"metric ODE solution blew up inside the requested "
                        f"range (reached [{lo:.6g}, {hi:.6g}])")
            smap = cmc.surface_map(sol, cfg.H, cfg.a, cfg.b)
            data = sol.intrinsic_data()
            ode_info = {"stats": sol.stats,
                        "truncated": bool(sol.truncated),
                        "interval": list(sol.interval)}
            echo.update({"rho0": cfg.rho0, "drho0": cfg.drho0, "u0": cfg.u0,
                         "tol": cfg.tol})
        if cfg.override_b is not None:
            data = data.replace(b=cfg.override_b)
        if cfg.override_H is not None:
            data = data.replace(H=cfg.override_H)
        if cfg.rho_scale != 1.0:
            data = data.replace(profile=data.profile.scaled(cfg.rho_scale))
        return Job(config=cfg, smap=smap, data=data, rp=None,
                   twist_expected=cfg.a, H_expected=cfg.H, period=None,
                   ode_info=ode_info, params_echo=echo)

    # untwisted
    profile = _untwisted_profile(cfg)
    if cfg.rho_scale != 1.0:
        profile = profile.scaled(cfg.rho_scale)
    rp = revolve.build_revolve(profile, cfg.c, cfg.u_range, cfg.n_quad)
    return Job(config=cfg, smap=revolve.revolve_map(rp), data=None, rp=rp,
               twist_expected=0.0, H_expected=None, period=None, ode_info=None,
               params_echo={"source": cfg.source, "c": cfg.c,
                            "n_quad": cfg.n_quad})


# -------------------------------------------------------------- the oracle


def _oracle_rows(job: Job):
    """Evaluate the finite-difference oracle on the report grid.  Analytic
    maps are split into row blocks across worker threads; integrated maps
    evaluate in one batched call (their grid evaluation is already the
    optimal access pattern)."""
    cfg = job.config
    u = np.linspace(cfg.u_range[0], cfg.u_range[1], cfg.nu)
    v = np.linspace(cfg.v_range[0], cfg.v_range[1], cfg.nv)
    h = cfg.fd_step or job.smap.default_step(cfg.u_range, cfg.v_range)
    (du1, du2), _ = job.smap.domain
    inner = (u > du1 + 2 * h) & (u < du2 - 2 * h)
    u = u[inner]

    workers = worker_count()
    serial = job.config.mode == "cmc" and not job.config.cylinder
    if workers > 1 and not serial and len(u) >= 2 * workers:
        blocks = np.array_split(np.arange(len(u)), workers)
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(
                lambda idx: geometry.principal_grid(job.smap, u[idx], v, h),
                blocks))
        res = {k: np.concatenate([p[k] for p in parts], axis=0)
               for k in ("lambda1", "lambda2", "theta", "umbilic",
                         "E", "F", "G", "L", "M", "N")}
        res["h"] = h
    else:
        res = geometry.principal_grid(job.smap, u, v, h)
    res["u"], res["v"] = u, v
    return res


def _summarize(job: Job, rows):
    cfg = job.config
    u, v = rows["u"], rows["v"]
    E, F, G = rows["E"], rows["F"], rows["G"]
    lam1, lam2 = rows["lambda1"], rows["lambda2"]

    if job.data is not None:
        prof = job.data.profile
        res = {
            "gauss": float(np.abs(intrinsic.gauss_residual(job.data, u)).max()),
            "codazzi": float(max(np.abs(np.stack(
                intrinsic.codazzi_residuals(job.data, u, 0.35))).max(), 0.0)),
            "master_ode": float(np.abs(
                intrinsic.master_ode_residual(job.data, u)).max()),
        }
        rho2 = np.asarray(prof.rho(u), dtype=float)[:, None] ** 2
    else:
        g_res, c_res = revolve.untwisted_residuals(job.rp.profile, job.rp.c, u)
        res = {"gauss": float(np.abs(g_res).max()),
               "codazzi": float(np.abs(c_res).max()),
               "master_ode": None}
        rho2 = np.asarray(job.rp.profile.rho(u), dtype=float)[:, None] ** 2

    metric_dev = float(max(np.abs(E / rho2 - 1.0).max(),
                           np.abs(G / rho2 - 1.0).max(),
                           np.abs(F / rho2).max()))

    if job.H_expected is not None:
        hdev = float(np.abs(lam1 + lam2 - job.H_expected).max())
        ldev = None
    else:
        lc1, lc2 = revolve.untwisted_lambdas(job.rp.profile, job.rp.c, u)
        got = np.sort(np.stack([lam1, lam2]), axis=0)
        want = np.sort(np.stack([np.broadcast_to(lc1[:, None], lam1.shape),
                                 np.broadcast_to(lc2[:, None], lam1.shape)]),
                       axis=0)
        hdev = None
        ldev = float(np.abs(got - want).max())

    tf = geometry.fit_twist(job.smap, u[:: max(1, len(u) // 8)],
                            v[:: max(1, len(v) // 48)], h=rows["h"])

    # metric defaults allow for the h^2 truncation of the default FD step;
    # tighter checks should pass --fd-step explicitly
    defaults = {
        "minimal": {"residual": 1e-8, "metric": 5e-6, "mean_curv": 1e-5,
                    "twist": 1e-4},
        "cmc": {"residual": max(100 * cfg.tol, 1e-8), "metric": 1e-5,
                "mean_curv": 1e-3, "twist": 1e-3},
        "untwisted": {"residual": 1e-8 if cfg.source != "csv" else 1e-5,
                      "metric": 5e-6 if cfg.source != "csv" else 1e-4,
                      "mean_curv": 1e-4, "twist": 1e-4},
    }[cfg.mode]
    tols = {
        "residual": cfg.tol_residual or defaults["residual"],
        "metric": cfg.tol_metric or defaults["metric"],
        "mean_curv": cfg.tol_mean_curv or defaults["mean_curv"],
        "twist": cfg.tol_twist or defaults["twist"],
    }

    checks = {
        "residuals": all(val is None or val <= tols["residual"]
                         for val in res.values()),
        "metric": metric_dev <= tols["metric"],
        "mean_curvature": (hdev if hdev is not None else ldev)
        <= tols["mean_curv"],
        "twist": abs(tf.a_est - job.twist_expected) <= tols["twist"],
    }
    summary = {
        "mode": cfg.mode,
        "params": job.params_echo,
        "grid": {"nu": cfg.nu, "nv": cfg.nv,
                 "u": list(cfg.u_range), "v": list(cfg.v_range)},
        "fd_step": rows["h"],
        "kernel_backend": _kernels.BACKEND,
        "residual_maxima": res,
        "oracle": {
            "metric_max_rel_dev": metric_dev,
            "mean_curvature_max_dev": hdev,
            "lambda_max_dev": ldev,
            "twist_estimate": tf.a_est,
            "twist_fit_max_dev": tf.max_dev,
            "twist_expected": job.twist_expected,
        },
        "tolerances": tols,
        "checks": checks,
        "passed": all(checks.values()),
        "period_vector": (None if job.period is None
                          else [float(x) for x in job.period]),
        "ode": job.ode_info,
    }
    return summary


# ---------------------------------------------------------------- writers


def write_obj(path, mesh: geometry.Mesh):
    nu, nv = mesh.nu, mesh.nv
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# isorev mesh {nu}x{nv}\n")
        V = mesh.vertices.reshape(-1, 3)
        N = mesh.normals.reshape(-1, 3)
        for x, y, z in V:
            fh.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
        for x, y, z in N:
            fh.write(f"vn {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
        for i in range(nu - 1):
            for j in range(nv - 1):
                a = i * nv + j + 1
                b = (i + 1) * nv + j + 1
                c = (i + 1) * nv + j + 2
                d = i * nv + j + 2
                fh.write(f"f {a}//{a} {b}//{b} {c}//{c}\n")
                fh.write(f"f {a}//{a} {c}//{c} {d}//{d}\n")


def write_report(path, rows, summary):
    u, v = rows["u"], rows["v"]
    lam1, lam2 = rows["lambda1"], rows["lambda2"]
    with open(path, "w", newline="\n") as fh:
        fh.write("u,v,E,F,G,lambda1,lambda2,H,K,theta\n")
        for i, uu in enumerate(u):
            for j, vv in enumerate(v):
                vals = [uu, vv, rows["E"][i, j], rows["F"][i, j],
                        rows["G"][i, j], lam1[i, j], lam2[i, j],
                        lam1[i, j] + lam2[i, j], lam1[i, j] * lam2[i, j],
                        rows["theta"][i, j]]
                fh.write(",".join(_fmt(x) for x in vals) + "\n")
    side = path + ".summary.json"
    with open(side, "w", newline="\n") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ------------------------------------------------------------- subcommands


def run_generate(cfg: JobConfig):
    job = build_job(cfg)
    if cfg.mode == "cmc" and not cfg.cylinder:
        mesh = cmc.integrate_surface(
            job.data.profile, cfg.H, cfg.a, cfg.b,
            cfg.u_range, cfg.v_range, cfg.nu, cfg.nv,
            anchor=cfg.u0)
    else:
        mesh = geometry.sample_mesh(job.smap, cfg.nu, cfg.nv,
                                    cfg.u_range, cfg.v_range)
    if cfg.out:
        write_obj(cfg.out, mesh)
    rows = _oracle_rows(job)
    summary = _summarize(job, rows)
    if cfg.report:
        write_report(cfg.report, rows, summary)
    print(json.dumps(summary["residual_maxima"], sort_keys=True))
    print("PASS" if summary["passed"] else "FAIL")
    return 0 if summary["passed"] else 1


def run_verify(cfg: JobConfig):
    job = build_job(cfg)
    rows = _oracle_rows(job)
    summary = _summarize(job, rows)
    if cfg.report:
        write_report(cfg.report, rows, summary)
    for key, val in sorted(summary["residual_maxima"].items()):
        print(f"{key}: {val if val is not None else 'n/a'}")
    print("PASS" if summary["passed"] else "FAIL")
    return 0 if summary["passed"] else 1


def run_solve_rho(cfg: JobConfig, out):
    need = {"H": cfg.H, "a": cfg.a, "b": cfg.b,
            "rho0": cfg.rho0, "drho0": cfg.drho0}
    missing = [k for k, vv in need.items() if vv is None]
    if missing:
        raise ConfigError(f"solve-rho needs --{' --'.join(missing)}")
    sol = cmc.solve_rho(cfg.H, cfg.a, cfg.b, cfg.rho0, cfg.drho0,
                        cfg.u_range, tol=cfg.tol, u0=cfg.u0)
    with open(out, "w", newline="\n") as fh:
        fh.write("u,rho,drho,ddrho\n")
        for i in range(len(sol.u)):
            fh.write(",".join(_fmt(x) for x in
                              (sol.u[i], sol.rho[i], sol.drho[i],
                               sol.ddrho[i])) + "\n")
    side = {"stats": sol.stats, "truncated_low": sol.truncated_low,
            "truncated_high": sol.truncated_high,
            "interval": list(sol.interval), "tol": sol.tol}
    with open(out + ".summary.json", "w", newline="\n") as fh:
        json.dump(side, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(sol.u)} nodes to {out}"
          + (" (truncated)" if sol.truncated else ""))
    return 0


def run_revolve(cfg: JobConfig, out):
    if cfg.source is None or cfg.c is None:
        raise ConfigError("revolve needs --source and --c")
    profile = _untwisted_profile(cfg)
    rp = revolve.build_revolve(profile, cfg.c, cfg.u_range, cfg.n_quad)
    u = np.linspace(cfg.u_range[0], cfg.u_range[1], max(cfg.nu, 2))
    g = rp.g(u)
    hh = rp.h(u)
    rho = profile.rho(u)
    with open(out, "w", newline="\n") as fh:
        fh.write("u,g,h,rho\n")
        for i in range(len(u)):
            fh.write(",".join(_fmt(x) for x in
                              (u[i], g[i], hh[i], rho[i])) + "\n")
    cmin = revolve.min_admissible_c(profile, cfg.u_range)
    with open(out + ".summary.json", "w", newline="\n") as fh:
        json.dump({"c": cfg.c, "min_admissible_c": cmin,
                   "u_range": list(cfg.u_range), "n_quad": cfg.n_quad},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote profile to {out} (min admissible c = {cmin:.6g})")
    return 0


def run_presets():
    print("name                    order   a        A      B      period")
    for name in minimal.PRESET_NAMES:
        orders = (1, 2, 3) if name != "translation-invariant" else (1,)
        for n in orders:
            p = minimal.preset(name, n)
            per = minimal.period_vector(p)
            per_s = ("(0, %.6g, 0)" % per[1]) if per is not None else "-"
            label = name if name == "translation-invariant" else f"{name}({n})"
            print(f"{label:<22}  {n:<5}  {p.a:<7.4g} {p.A:<6.4g} "
                  f"{p.B:<6.4g} {per_s}")
    return 0


# -------------------------------------------------------------------- main


def _add_common(sp):
    sp.add_argument("--config", help="JSON config file (flags override it)")
    sp.add_argument("--mode", choices=MODES)
    sp.add_argument("--preset")
    sp.add_argument("--order", type=int)
    sp.add_argument("--a", type=float)
    sp.add_argument("--A", type=float)
    sp.add_argument("--B", type=float)
    sp.add_argument("--H", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--rho0", type=float)
    sp.add_argument("--drho0", type=float)
    sp.add_argument("--u0", type=float)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--cylinder", action="store_true", default=None)
    sp.add_argument("--source", choices=SOURCES)
    sp.add_argument("--c", type=float)
    sp.add_argument("--k", type=float)
    sp.add_argument("--value", type=float)
    sp.add_argument("--csv")
    sp.add_argument("--n-quad", type=int, dest="n_quad")
    sp.add_argument("--u", help="u range LO:HI")
    sp.add_argument("--v", help="v range LO:HI")
    sp.add_argument("--nu", type=int)
    sp.add_argument("--nv", type=int)
    sp.add_argument("--fd-step", type=float, dest="fd_step")
    sp.add_argument("--override-b", type=float, dest="override_b")
    sp.add_argument("--override-H", type=float, dest="override_H")
    sp.add_argument("--rho-scale", type=float, dest="rho_scale")
    sp.add_argument("--tol-residual", type=float, dest="tol_residual")
    sp.add_argument("--tol-metric", type=float, dest="tol_metric")
    sp.add_argument("--tol-mean-curv", type=float, dest="tol_mean_curv")
    sp.add_argument("--tol-twist", type=float, dest="tol_twist")
    sp.add_argument("--out")
    sp.add_argument("--report")


def build_config(args) -> JobConfig:
    cfg = JobConfig()
    merged = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            merged.update(json.load(fh))
    for key, val in vars(args).items():
        if key in ("command", "config") or val is None:
            continue
        merged[key] = val
    for key, val in merged.items():
        if key in ("u", "u_range"):
            cfg.u_range = parse_range(val) if isinstance(val, str) else tuple(val)
        elif key in ("v", "v_range"):
            cfg.v_range = parse_range(val) if isinstance(val, str) else tuple(val)
        elif hasattr(cfg, key):
            setattr(cfg, key, val)
        else:
            raise ConfigError(f"unknown config key {key!r}")
    return cfg


def _merge_range_flags(argv):
    """Let `--u -1:1` parse: argparse rejects values starting with '-' unless
    they look like plain numbers, so glue range values onto their flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--u", "--v") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="isorev",
        description="Surfaces that are intrinsically surfaces of revolution")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("generate", "verify", "solve-rho", "revolve"):
        sp = sub.add_parser(name)
        _add_common(sp)
    sub.add_parser("presets")

    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_range_flags(list(argv)))
    try:
        if args.command == "presets":
            return run_presets()
        cfg = build_config(args)
        if args.command == "generate":
            return run_generate(cfg)
        if args.command == "verify":
            return run_verify(cfg)
        if args.command == "solve-rho":
            if not cfg.out:
                raise ConfigError("solve-rho needs --out PATH")
            return run_solve_rho(cfg, cfg.out)
        if args.command == "revolve":
            if not cfg.out:
                raise ConfigError("revolve needs --out PATH")
            return run_revolve(cfg, cfg.out)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (IsorevError, RadicandError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
