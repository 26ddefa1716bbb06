"""Run configuration: flat key=value files plus command-line overrides.

Precedence, lowest to highest: built-in defaults, preset values, config
file entries, --set overrides.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .grid import Grid, build_grid
from .integrator import IntegratorConfig
from .model import ProblemSpec
from .presets import B_FORMS, U0_FORMS, get_preset

_DEFAULTS = {
    "p": "3.0",
    "q": "1.3",
    "N": "101",
    "b_kind": "const",
    "b_const": "1.0",
    "u0_kind": "sine",
    "u0_scale": "1.0",
    "rel_tol": "1e-6",
    "abs_tol": "1e-8",
    "dt_init": "1e-9",
    "dt_min": "1e-22",
    "t_max": "1.0",
    "blowup_threshold": "1e8",
    "monitor_stride": "1",
    "snapshot_times": "",
    "out_dir": "",
    "prefix": "",
}

_KNOWN_KEYS = set(_DEFAULTS) | {"preset"}


class ConfigError(ValueError):
    pass


def parse_kv_text(text: str) -> dict[str, str]:
    """Parse `key = value` lines; blank lines and # comments are skipped."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


@dataclass(frozen=True)
class RunConfig:
    p: float
    q: float
    n_interior: int
    b_kind: str
    b_const: float
    u0_kind: str
    u0_scale: float
    rel_tol: float
    abs_tol: float
    dt_init: float
    dt_min: float
    t_max: float
    blowup_threshold: float
    monitor_stride: int
    snapshot_times: tuple[float, ...]
    out_dir: str
    prefix: str
    preset_name: str | None = None

    def build_grid(self) -> Grid:
        return build_grid(self.n_interior)

    def b_function(self):
        if self.b_kind == "const":
            const = self.b_const
            return lambda x: np.full_like(np.asarray(x, dtype=float), const)
        try:
            return B_FORMS[self.b_kind]
        except KeyError:
            raise ConfigError(
                f"unknown b_kind {self.b_kind!r}; use 'const' or one of {sorted(B_FORMS)}"
            ) from None

    def u0_function(self):
        try:
            base = U0_FORMS[self.u0_kind]
        except KeyError:
            raise ConfigError(
                f"unknown u0_kind {self.u0_kind!r}; use one of {sorted(U0_FORMS)}"
            ) from None
        scale = self.u0_scale
        return lambda x: scale * base(x)

    def build_problem(self) -> tuple[ProblemSpec, Grid]:
        g = self.build_grid()
        spec = ProblemSpec.from_functions(self.p, self.q, self.b_function(), self.u0_function(), g)
        return spec, g

    def integrator_config(self) -> IntegratorConfig:
        return IntegratorConfig(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            dt_init=self.dt_init,
            dt_min=self.dt_min,
            t_max=self.t_max,
            blowup_threshold=self.blowup_threshold,
            snapshot_times=self.snapshot_times,
            monitor_stride=self.monitor_stride,
        )

    def resolve_out_dir(self, cli_out: str | None) -> Path:
        if cli_out:
            return Path(cli_out)
        if self.out_dir:
            return Path(self.out_dir)
        env = os.environ.get("BLOWUPLAB_OUT")
        if env:
            return Path(env)
        return Path("blowuplab_out")


def _coerce(raw: dict[str, str], preset_name: str | None) -> RunConfig:
    def as_float(key):
        try:
            return float(raw[key])
        except ValueError:
            raise ConfigError(f"{key} must be a number, got {raw[key]!r}") from None

    def as_int(key):
        try:
            return int(raw[key])
        except ValueError:
            raise ConfigError(f"{key} must be an integer, got {raw[key]!r}") from None

    snap_text = raw["snapshot_times"].replace(";", ",")
    snapshot_times = []
    for piece in snap_text.split(","):
        piece = piece.strip()
        if piece:
            try:
                snapshot_times.append(float(piece))
            except ValueError:
                raise ConfigError(f"bad snapshot time {piece!r}") from None

    return RunConfig(
        p=as_float("p"),
        q=as_float("q"),
        n_interior=as_int("N"),
        b_kind=raw["b_kind"],
        b_const=as_float("b_const"),
        u0_kind=raw["u0_kind"],
        u0_scale=as_float("u0_scale"),
        rel_tol=as_float("rel_tol"),
        abs_tol=as_float("abs_tol"),
        dt_init=as_float("dt_init"),
        dt_min=as_float("dt_min"),
        t_max=as_float("t_max"),
        blowup_threshold=as_float("blowup_threshold"),
        monitor_stride=as_int("monitor_stride"),
        snapshot_times=tuple(snapshot_times),
        out_dir=raw["out_dir"],
        prefix=raw["prefix"],
        preset_name=preset_name,
    )


def load_config(
    config_path: str | None = None,
    sets: list[str] | None = None,
    preset: str | None = None,
) -> RunConfig:
    """Merge defaults, preset values, a config file, and --set overrides."""
    file_values: dict[str, str] = {}
    if config_path:
        path = Path(config_path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {config_path}")
        file_values = parse_kv_text(path.read_text())

    set_values: dict[str, str] = {}
    for item in sets or []:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, _, value = item.partition("=")
        set_values[key.strip()] = value.strip()

    preset_name = preset or set_values.pop("preset", None) or file_values.pop("preset", None)

    merged = dict(_DEFAULTS)
    if preset_name:
        try:
            chosen = get_preset(preset_name)
        except KeyError as exc:
            raise ConfigError(str(exc)) from None
        merged.update({k: str(v) for k, v in chosen.as_config_values().items()})
    merged.update(file_values)
    merged.update(set_values)

    unknown = set(merged) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return _coerce(merged, preset_name)
