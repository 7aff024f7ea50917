"""Run configuration: JSON in, validated typed view out, canonical JSON back.

The grammar is plain JSON with nested sections (documented in the README):

    {
      "scenario": "solve-semilinear",
      "model":  {"m": 1, "n": 3, "p": 2.0, "eps": 1e-3, "M": 2.0},
      "grid":   {"r_max": 64.0, "N": 2048, "transform": "auto"},
      "output_dir": "out",
      "seed": 0,
      ... scenario-specific section ...
    }

``parse_config(emit_config(cfg)) == cfg`` holds exactly: emission is
canonical JSON (sorted keys), and equality is dict equality on the
normalized payload.  Validation errors always name the violated
constraint; exponent-window checks are delegated to the exponents module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParameterError
from .exponents import ModelParams, p_conf, p_crit

__all__ = ["RunConfig", "parse_config", "emit_config", "SCENARIOS"]

SCENARIOS = (
    "exponents",
    "solve-linear",
    "solve-semilinear",
    "sweep-p",
    "verify-strichartz",
    "check-geometry",
    "symbols",
)

_DEFAULTS = {
    "model": {"m": 1, "n": 3, "p": 2.0, "eps": 1e-3, "M": 2.0},
    "grid": {"r_max": 64.0, "N": 2048, "transform": "auto"},
    "output_dir": ".",
    "seed": 0,
}


@dataclass(frozen=True)
class RunConfig:
    """Normalized configuration payload with typed accessors."""

    data: dict = field(default_factory=dict)

    @property
    def scenario(self) -> str:
        return self.data["scenario"]

    @property
    def output_dir(self) -> str:
        return self.data.get("output_dir", ".")

    @property
    def seed(self) -> int:
        return int(self.data.get("seed", 0))

    def model_params(self) -> ModelParams:
        md = self.data["model"]
        return ModelParams(
            m=int(md["m"]),
            n=int(md["n"]),
            p=float(md["p"]),
            eps=float(md["eps"]),
            M=float(md["M"]),
        )

    def grid_args(self) -> dict:
        gd = self.data["grid"]
        return {
            "r_max": float(gd["r_max"]),
            "N": int(gd["N"]),
            "transform": gd.get("transform", "auto"),
        }

    def section(self, name: str, default=None) -> dict:
        return self.data.get(name, default if default is not None else {})


def _merge_defaults(payload: dict) -> dict:
    out = dict(payload)
    for key, sub in _DEFAULTS.items():
        if isinstance(sub, dict):
            merged = dict(sub)
            merged.update(out.get(key, {}))
            out[key] = merged
        else:
            out.setdefault(key, sub)
    return out


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config; raises ParameterError naming the issue."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"config parse error at line {exc.lineno}, col {exc.colno}: {exc.msg}")
    if not isinstance(payload, dict):
        raise ParameterError("config must be a JSON object")
    if "scenario" not in payload:
        raise ParameterError("missing required key 'scenario'")
    if payload["scenario"] not in SCENARIOS:
        raise ParameterError(
            f"unknown scenario {payload['scenario']!r}; known: {', '.join(SCENARIOS)}"
        )
    cfg = RunConfig(data=_merge_defaults(payload))
    _validate(cfg)
    return cfg


def emit_config(cfg: RunConfig) -> str:
    """Canonical JSON emission; parse_config(emit_config(cfg)) == cfg."""
    return json.dumps(cfg.data, sort_keys=True, indent=2)


def _validate(cfg: RunConfig) -> None:
    params = cfg.model_params()  # raises ParameterError with the constraint name
    scenario = cfg.scenario
    if scenario == "solve-semilinear":
        sl = cfg.section("semilinear")
        if sl.get("mode", "march") == "picard":
            lo_p = p_crit(params.m, params.n)
            hi_p = p_conf(params.m, params.n)
            if not (lo_p < params.p < hi_p):
                raise ParameterError(
                    f"exponent out of range (p_crit = {lo_p:.6f}, p_conf = {hi_p:.6f}): "
                    f"picard mode requires p strictly between them, got p = {params.p}"
                )
        if float(sl.get("dt", 0.01)) <= 0:
            raise ParameterError("semilinear.dt must be positive")
    if scenario == "sweep-p":
        sw = cfg.section("sweep")
        grid = sw.get("p_grid", [])
        if any(not (1.0 < float(p)) for p in grid):
            raise ParameterError("sweep.p_grid entries must satisfy p > 1")
    if scenario == "verify-strichartz":
        st = cfg.section("strichartz")
        kind = st.get("kind", "homogeneous")
        if kind not in ("homogeneous", "inhomogeneous", "both"):
            raise ParameterError(f"strichartz.kind {kind!r} invalid")
    gd = cfg.grid_args()
    if gd["r_max"] <= 0 or gd["N"] < 8:
        raise ParameterError("grid requires r_max > 0 and N >= 8")
