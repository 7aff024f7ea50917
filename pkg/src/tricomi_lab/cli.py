"""Command-line harness: scenario orchestration, CSV/JSON-lines artifacts, manifests.

Every run writes its primary artifacts into ``--output-dir`` plus a
``manifest.json`` echoing the configuration, library versions, wall time,
and a sha256 checksum per primary output so reruns can be compared
byte-for-byte.  Numbers in CSVs are printed with 17 significant digits.

Exit codes: 0 success (a detected blowup is a result, not an error),
2 validation error, 3 internal numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, SCENARIOS, parse_config
from .errors import (
    AccuracyError,
    GridError,
    InstabilityError,
    ParameterError,
    PicardDivergenceError,
    SupportError,
    TricomiLabError,
)
from .exponents import (
    ModelParams,
    damped_wave_coeffs,
    gamma_interval,
    gamma_window_formula,
    p_conf,
    p_crit,
    q_bounds,
    strauss_exponent,
)
from .geometry import (
    bisect_max_delta,
    max_shift,
    phi_inverse,
    verify_shifted_cone_bounds,
    verify_unshifted_cone_inequality,
)
from .grids import RadialGrid
from .linear import solve_linear
from .profiles import make_profile
from .semilinear import (
    NonlinearitySpec,
    StepControl,
    picard_solve,
    sweep_p,
    time_march,
    weighted_solution_norm,
)
from .strichartz import (
    homogeneous_ratio,
    inhomogeneous_ratio,
    paired_gamma2,
    standard_family,
)
from .symbols import amplitude_envelope_bound, v1_symbol, v2_symbol

EXPONENT_HEADER = "m,n,p,p_crit,p_conf,p_strauss,q_min,q0,mu_m,alpha_m,gamma_lo,gamma_hi"


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and not np.isfinite(x)):
        return "" if x is None else repr(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return str(x)


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _manifest(outdir: Path, cfg_payload: dict, outputs: list[Path], t0: float) -> None:
    import scipy

    checks = {}
    for p in outputs:
        if p.exists():
            checks[p.name] = hashlib.sha256(p.read_bytes()).hexdigest()
    manifest = {
        "config": cfg_payload,
        "versions": {
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "tricomi_lab": __version__,
        },
        "wall_time_s": round(time.time() - t0, 3),
        "outputs": checks,
    }
    _write_text(outdir / "manifest.json", json.dumps(manifest, sort_keys=True, indent=2) + "\n")


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------


def _exponent_row(m: int, n: int, p: float | None):
    pc, pf = p_crit(m, n), p_conf(m, n)
    q_min, q0 = q_bounds(m, n)
    mu, al = damped_wave_coeffs(m)
    glo = ghi = None
    if p is not None and m >= 1 and pc < p < pf:
        glo, ghi = gamma_interval(ModelParams(m, n, p))
    return [m, n, p, pc, pf, strauss_exponent(n), q_min, q0, mu, al, glo, ghi]


_SWEEP_RE = re.compile(r"^m=(\d+)\.\.(\d+)\s+n=(\d+)\.\.(\d+)$")


def run_exponents(m, n, p=None, sweep: str | None = None) -> str:
    rows = []
    if sweep:
        match = _SWEEP_RE.match(sweep.strip())
        if not match:
            raise ParameterError(f"bad sweep spec {sweep!r}; expected 'm=1..6 n=3..8'")
        m0, m1, n0, n1 = (int(g) for g in match.groups())
        for mm in range(m0, m1 + 1):
            for nn in range(n0, n1 + 1):
                rows.append(_exponent_row(mm, nn, p))
    else:
        rows.append(_exponent_row(m, n, p))
    return _csv(EXPONENT_HEADER, rows)


# ---------------------------------------------------------------------------
# check-geometry
# ---------------------------------------------------------------------------


def run_check_geometry(m, M, T0, nu=None, delta=1e-4, seed=0) -> str:
    d_max = bisect_max_delta(m, M, T0)
    un = verify_unshifted_cone_inequality(m, M, T0, delta)
    nu_val = max_shift(m, M, T0) if nu is None else nu
    rng = np.random.default_rng(seed)
    sh = verify_shifted_cone_bounds(m, M, T0, nu_val, rng=rng)
    rows = [
        ["unshifted-cone", un.holds, un.worst_margin, d_max],
        ["shifted-cone-lower", sh.c_lower > 0, sh.c_lower, None],
        ["shifted-cone-upper", np.isfinite(sh.C_upper), sh.C_upper, None],
    ]
    return _csv("inequality,holds,margin,delta_max", rows)


# ---------------------------------------------------------------------------
# symbols
# ---------------------------------------------------------------------------


def run_symbols(m: int, grid_spec: str = "100:64") -> str:
    try:
        w_max_s, n_s = grid_spec.split(":")
        w_max, n_pts = float(w_max_s), int(n_s)
    except ValueError:
        raise ParameterError(f"bad symbols grid {grid_spec!r}; expected 'WMAX:NPOINTS'")
    lam = 1.0
    ws = np.geomspace(max(w_max, 1.0) * 1e-4, w_max, n_pts)
    rows = []
    for w in ws:
        t = phi_inverse(m, w / lam)
        v1 = v1_symbol(m, t, lam)
        v2 = v2_symbol(m, t, lam)
        rows.append([t, lam, v1.real, v1.imag, v2.real, v2.imag,
                     float(amplitude_envelope_bound(m, t, lam))])
    return _csv("t,lambda,re_v1,im_v1,re_v2,im_v2,envelope_bound", rows)


# ---------------------------------------------------------------------------
# config-driven scenarios
# ---------------------------------------------------------------------------


def _data_callables(cfg: RunConfig, section: dict):
    params = cfg.model_params()
    dd = section.get("data", {"profile": "bump", "amplitude": 1.0})
    amp = float(dd.get("amplitude", 1.0)) * params.eps
    vel = float(dd.get("vel_amplitude", dd.get("amplitude", 1.0))) * params.eps
    prof = make_profile(dd.get("profile", "bump"), params.M, 1.0)
    f = lambda r: amp * prof(r)
    g = (lambda r: vel * prof(r)) if vel != 0.0 else (lambda r: np.zeros_like(np.asarray(r, float)))
    return f, g


def _snapshot_times(section: dict, t_final: float):
    n = int(section.get("snapshots", 16))
    spacing = section.get("snapshot_spacing", "log")
    t_start = float(section.get("t_start", max(t_final / 100.0, 1e-3)))
    if spacing == "linear":
        return np.linspace(t_start, t_final, n)
    return np.geomspace(t_start, t_final, n)


def _scenario_solve_linear(cfg: RunConfig, outdir: Path) -> list[Path]:
    params = cfg.model_params()
    grid = RadialGrid(**cfg.grid_args())
    sec = cfg.section("linear")
    t_final = float(sec.get("t_final", 10.0))
    times = _snapshot_times(sec, t_final)
    f, g = _data_callables(cfg, sec)
    field = solve_linear(params, f, g, times, grid)
    field_rows = []
    stride = max(1, grid.N // int(sec.get("field_r_points", 512)))
    for i, t in enumerate(field.times):
        for j in range(0, grid.N + 1, stride):
            field_rows.append([t, grid.r[j], field.u[i, j]])
    sup = field.sup_norms()
    l2 = field.l2_norms()
    leak = field.support_leak()
    summary_rows = [[t, sup[i], l2[i], leak[i]] for i, t in enumerate(field.times)]
    p_field = outdir / "field.csv"
    p_summary = outdir / "summary.csv"
    _write_text(p_field, _csv("t,r,u", field_rows))
    _write_text(p_summary, _csv("t,sup_norm,l2_norm,support_leak", summary_rows))
    return [p_field, p_summary]


def _scenario_solve_semilinear(cfg: RunConfig, outdir: Path) -> list[Path]:
    params = cfg.model_params()
    grid = RadialGrid(**cfg.grid_args())
    sec = cfg.section("semilinear")
    horizon = float(sec.get("horizon", 20.0))
    control = StepControl(dt=float(sec.get("dt", 0.01)))
    spec = NonlinearitySpec(p=params.p, T0=float(sec.get("T0", 0.5)))
    f, g = _data_callables(cfg, sec)
    mode = sec.get("mode", "march")
    record: dict = {
        "params": {"m": params.m, "n": params.n, "p": params.p, "eps": params.eps, "M": params.M},
        "mode": mode,
        "horizon": horizon,
        "dt": control.dt,
    }
    outputs: list[Path] = []
    if mode == "picard":
        diag, field = picard_solve(
            params, spec, f, g, horizon, control, grid,
            max_iters=int(sec.get("max_iters", 25)),
        )
        record.update(
            kind="picard",
            converged=diag.converged,
            iterations=diag.iterations,
            M_seq=diag.M_seq,
            N_seq=diag.N_seq,
        )
    else:
        times = _snapshot_times(sec, horizon)
        outcome, field = time_march(
            params, spec, f, g, horizon, control, grid, snapshot_times=times
        )
        record.update(kind=outcome.kind, blowup_time=outcome.blowup_time)
        if outcome.kind == "global-horizon":
            record["tail_nonincreasing"] = outcome.tail_nonincreasing
            lo, hi = gamma_window_formula(params.m, params.n, params.p)
            if lo < hi and field.times.size:
                gamma = 0.5 * (lo + hi)
                record["weighted_norm"] = weighted_solution_norm(field, params, gamma)
                record["weighted_norm_gamma"] = gamma
        record["norm_history"] = [[t, s] for t, s in outcome.norm_history[:: max(1, len(outcome.norm_history) // 200)]]
    p_out = outdir / "outcome.json-lines"
    _write_text(p_out, json.dumps(record, sort_keys=True) + "\n")
    outputs.append(p_out)
    if sec.get("write_field", False) and field.times.size:
        rows = []
        stride = max(1, grid.N // int(sec.get("field_r_points", 256)))
        for i, t in enumerate(field.times):
            for j in range(0, grid.N + 1, stride):
                rows.append([t, grid.r[j], field.u[i, j]])
        p_field = outdir / "field.csv"
        _write_text(p_field, _csv("t,r,u", rows))
        outputs.append(p_field)
    return outputs


def _scenario_sweep_p(cfg: RunConfig, outdir: Path, p_grid_override=None) -> list[Path]:
    params = cfg.model_params()
    grid = RadialGrid(**cfg.grid_args())
    sec = cfg.section("sweep")
    p_grid = p_grid_override if p_grid_override is not None else sec.get("p_grid", [])
    if not len(p_grid):
        raise ParameterError("sweep requires a nonempty p_grid (config sweep.p_grid or --p-grid)")
    horizon = float(sec.get("horizon", 20.0))
    control = StepControl(dt=float(sec.get("dt", 0.01)))
    f, g = _data_callables(cfg, sec)
    rows = sweep_p(params, [float(p) for p in p_grid], f, g, horizon, control, grid,
                   T0=float(sec.get("T0", 0.5)))
    lines = [json.dumps(row, sort_keys=True) for row in rows]
    p_out = outdir / "outcome.json-lines"
    _write_text(p_out, "\n".join(lines) + "\n")
    return [p_out]


def _scenario_verify_strichartz(cfg: RunConfig, outdir: Path) -> list[Path]:
    params = cfg.model_params()
    grid = RadialGrid(**cfg.grid_args())
    sec = cfg.section("strichartz")
    kind = sec.get("kind", "homogeneous")
    q_min, q0 = q_bounds(params.m, params.n)
    q = float(sec.get("q", 0.5 * (q_min + q0)))
    from .exponents import strichartz_gamma_bound

    gamma = float(sec.get("gamma", 0.5 * strichartz_gamma_bound(params.m, params.n, q)))
    delta_max = params.n / 2.0 + 1.0 / (params.m + 2.0) - gamma - 1.0 / q
    delta = float(sec.get("delta", 0.5 * delta_max))
    t_max = float(sec.get("t_max", 100.0))
    rows = []
    if kind in ("homogeneous", "both"):
        fam = standard_family(params.M, params.m)
        for row in homogeneous_ratio(params, fam, q, gamma, delta, grid, t_max=t_max):
            rows.append([f"hom:{row.member}", row.lhs, row.rhs, row.ratio, row.tail_fraction, row.flags])
    if kind in ("inhomogeneous", "both"):
        from .profiles import bump as _bump
        from .strichartz import inhomogeneous_defaults

        qi_d, g1_d, g2_d = inhomogeneous_defaults(params.m, params.n)
        qi = float(sec.get("q_inhom", qi_d))
        g1 = float(sec.get("gamma1", g1_d))
        g2 = float(sec.get("gamma2", paired_gamma2(qi, g1) if "gamma1" in sec else g2_d))
        prof = _bump(0.8 * (params.M - 1.0))

        def src(name, t_lo, t_hi):
            def s(t, r):
                if t <= t_lo or t >= t_hi:
                    return np.zeros_like(np.asarray(r, float))
                x = (t - t_lo) / (t_hi - t_lo)
                return float(np.exp(1.0 - 1.0 / (1.0 - (2.0 * x - 1.0) ** 2))) * prof(r)

            return (name, s)

        fam2 = [src("pulse-1-2", 1.0, 2.0), src("pulse-1.5-2.5", 1.5, 2.5)]
        for row in inhomogeneous_ratio(
            params, fam2, qi, g1, g2, grid,
            T0=float(sec.get("T0", 0.5)),
            t_max=min(t_max, float(sec.get("t_max_inhom", 50.0))),
            dt=float(sec.get("dt", 0.02)),
        ):
            rows.append([f"inh:{row.member}", row.lhs, row.rhs, row.ratio, row.tail_fraction, row.flags])
    p_out = outdir / "ratios.csv"
    _write_text(p_out, _csv("member_id,lhs,rhs,ratio,tail_fraction,flags", rows))
    return [p_out]


def run_scenario(cfg: RunConfig) -> int:
    """Execute the scenario named by the config; writes artifacts + manifest."""
    t0 = time.time()
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    scenario = cfg.scenario
    if scenario == "exponents":
        md = cfg.data["model"]
        sweep = cfg.section("exponents").get("sweep")
        text = run_exponents(int(md["m"]), int(md["n"]), md.get("p"), sweep)
        p_out = outdir / "exponents.csv"
        _write_text(p_out, text)
        outputs = [p_out]
    elif scenario == "check-geometry":
        sec = cfg.section("geometry")
        md = cfg.data["model"]
        text = run_check_geometry(
            int(md["m"]), float(md["M"]), float(sec.get("T0", 0.5)),
            sec.get("nu"), float(sec.get("delta", 1e-4)), cfg.seed
        )
        p_out = outdir / "geometry.csv"
        _write_text(p_out, text)
        outputs = [p_out]
    elif scenario == "symbols":
        md = cfg.data["model"]
        text = run_symbols(int(md["m"]), cfg.section("symbols").get("grid", "100:64"))
        p_out = outdir / "symbols.csv"
        _write_text(p_out, text)
        outputs = [p_out]
    elif scenario == "solve-linear":
        outputs = _scenario_solve_linear(cfg, outdir)
    elif scenario == "solve-semilinear":
        outputs = _scenario_solve_semilinear(cfg, outdir)
    elif scenario == "sweep-p":
        outputs = _scenario_sweep_p(cfg, outdir)
    elif scenario == "verify-strichartz":
        outputs = _scenario_verify_strichartz(cfg, outdir)
    else:  # unreachable: parse_config validates
        raise ParameterError(f"unknown scenario {scenario!r}")
    _manifest(outdir, cfg.data, outputs, t0)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tricomi-lab",
        description="Numerical laboratory for the semilinear generalized Tricomi equation.",
    )
    ap.add_argument("--output-dir", default=None, help="directory for artifacts (default: stdout only / config value)")
    ap.add_argument("--threads", type=int, default=1, help="worker count (all paths are deterministic; reserved)")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    sub = ap.add_subparsers(dest="command", required=True)

    p_exp = sub.add_parser("exponents", help="closed-form exponent table")
    p_exp.add_argument("--m", type=int, default=None)
    p_exp.add_argument("--n", type=int, default=None)
    p_exp.add_argument("--p", type=float, default=None)
    p_exp.add_argument("--sweep", default=None, help="e.g. 'm=1..6 n=3..8'")

    p_geo = sub.add_parser("check-geometry", help="cone-covering inequality margins")
    p_geo.add_argument("--m", type=int, required=True)
    p_geo.add_argument("--M", type=float, required=True)
    p_geo.add_argument("--T0", type=float, required=True)
    p_geo.add_argument("--nu", type=float, default=None)
    p_geo.add_argument("--delta", type=float, default=1e-4)

    p_sym = sub.add_parser("symbols", help="multiplier symbol dump")
    p_sym.add_argument("--m", type=int, required=True)
    p_sym.add_argument("--grid", default="100:64", help="'WMAX:NPOINTS' in w = phi(t)*lambda")

    for name in ("solve-linear", "solve-semilinear", "verify-strichartz"):
        pc = sub.add_parser(name, help=f"run the {name} scenario from a config file")
        pc.add_argument("--config", required=True)

    p_swp = sub.add_parser("sweep-p", help="outcome sweep across nonlinearity powers")
    p_swp.add_argument("--config", required=True)
    p_swp.add_argument("--p-grid", default=None, help="comma-separated powers, overrides config")
    return ap


def _load_config(path: str, scenario: str, output_dir: str | None) -> RunConfig:
    text = Path(path).read_text()
    cfg = parse_config(text)
    if cfg.scenario != scenario:
        raise ParameterError(
            f"config names scenario {cfg.scenario!r} but the subcommand is {scenario!r}"
        )
    if output_dir is not None:
        data = dict(cfg.data)
        data["output_dir"] = output_dir
        cfg = RunConfig(data=data)
    return cfg


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "exponents":
            if args.sweep is None and (args.m is None or args.n is None):
                raise ParameterError("exponents requires --m and --n (or --sweep)")
            text = run_exponents(args.m, args.n, args.p, args.sweep)
            sys.stdout.write(text)
            if args.output_dir:
                outdir = Path(args.output_dir)
                _write_text(outdir / "exponents.csv", text)
                _manifest(outdir, {"command": "exponents"}, [outdir / "exponents.csv"], time.time())
            return 0
        if args.command == "check-geometry":
            text = run_check_geometry(args.m, args.M, args.T0, args.nu, args.delta, args.seed)
            sys.stdout.write(text)
            if args.output_dir:
                _write_text(Path(args.output_dir) / "geometry.csv", text)
            return 0
        if args.command == "symbols":
            text = run_symbols(args.m, args.grid)
            sys.stdout.write(text)
            if args.output_dir:
                _write_text(Path(args.output_dir) / "symbols.csv", text)
            return 0
        cfg = _load_config(args.config, args.command, args.output_dir)
        if args.command == "sweep-p" and args.p_grid:
            outdir = Path(cfg.output_dir)
            outdir.mkdir(parents=True, exist_ok=True)
            t0 = time.time()
            outputs = _scenario_sweep_p(cfg, outdir, [float(x) for x in args.p_grid.split(",")])
            _manifest(outdir, cfg.data, outputs, t0)
            return 0
        return run_scenario(cfg)
    except (ParameterError, GridError, SupportError, FileNotFoundError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except (AccuracyError, InstabilityError, PicardDivergenceError, TricomiLabError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
