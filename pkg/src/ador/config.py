"""
Run configuration files.

Configurations are INI files with one section per component::

    [problem]
    problem = burgers1d
    re = 100
    nx = 41

    [ador]
    prescription = c4
    gamma1 = 0.0015

    [stepper]
    scheme = rk4
    dt = 0.01
    t_end = 40

    [output]
    dir = out/burgers_re100
    snapshots = 0.4, 0.8, 1.2
    oracle = auto

.. autoclass:: RunConfig
.. autoexception:: ConfigError

.. autofunction:: load_config
.. autofunction:: parse_config
.. autofunction:: override
"""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from ador.anisotropic import AdorConfig
from ador.integrators import StepperConfig

PROBLEMS = ("burgers1d", "burgers2d", "taylor_green", "shear_layer")
ORACLE_MODES = ("auto", "on", "off")

#: recognized keys per section, used for error messages and sweeps
KEYS: Dict[str, Tuple[str, ...]] = {
    "problem": ("problem", "re", "nx", "ny", "rho", "delta", "ador_on"),
    "ador": ("prescription", "d1", "d2", "e1", "gamma1", "gamma2", "sigma_edge"),
    "stepper": ("scheme", "dt", "t_end", "fp_tol", "fp_max_iter", "max_abs"),
    "output": ("dir", "snapshots", "oracle"),
}


class ConfigError(ValueError):
    """Invalid configuration; *key* names the offending ``section.key``."""

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass(frozen=True)
class RunConfig:
    kind: str = "burgers1d"
    reynolds: float = math.inf
    nx: int = 41
    ny: Optional[int] = None
    #: shear layer thickness; ``None`` is the discontinuous limit
    rho: Optional[float] = math.pi / 15.0
    delta: float = 0.05
    ador_on: str = "velocity"

    ador: AdorConfig = field(default_factory=AdorConfig)
    stepper: StepperConfig = field(default_factory=StepperConfig)
    t_end: float = 1.0
    max_abs: float = math.inf

    output_dir: Path = Path("out")
    snapshots: Tuple[float, ...] = ()
    oracle: str = "auto"

    def __post_init__(self) -> None:
        if self.kind not in PROBLEMS:
            raise ConfigError("problem.problem", f"expected one of {PROBLEMS}, got {self.kind!r}")
        if not self.t_end >= 0:
            raise ConfigError("stepper.t_end", f"must be non-negative: {self.t_end}")
        for t in self.snapshots:
            if not 0.0 <= t <= self.t_end:
                raise ConfigError("output.snapshots", f"time {t} outside [0, {self.t_end}]")
        if self.oracle not in ORACLE_MODES:
            raise ConfigError("output.oracle", f"expected one of {ORACLE_MODES}")
        if self.ny is not None and self.ny != self.nx:
            raise ConfigError("problem.ny", "only square grids are supported (ny = nx)")


# {{{ parsing


def _number(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(key, f"not a number: {raw!r}") from None


def _integer(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(key, f"not an integer: {raw!r}") from None


def _times(key: str, raw: str) -> Tuple[float, ...]:
    items = [s for s in raw.replace(";", ",").split(",") if s.strip()]
    return tuple(sorted({_number(key, s) for s in items}))


def parse_config(text: str, base_dir: Union[str, Path] = ".") -> RunConfig:
    """Parse configuration *text*; a relative output directory is taken
    relative to *base_dir* (the working directory by default). ``ADOR_OUT`` overrides the output directory."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("<file>", str(exc).splitlines()[0]) from None

    for section in parser.sections():
        if section not in KEYS:
            raise ConfigError(section, "unknown section")
        for key in parser[section]:
            if key not in KEYS[section]:
                raise ConfigError(f"{section}.{key}", "unknown key")

    def get(section: str, key: str) -> Optional[str]:
        if parser.has_option(section, key):
            return parser.get(section, key).strip()
        return None

    kw: Dict[str, object] = {}
    if (v := get("problem", "problem")) is not None:
        v = v.lower()
        if v == "burgers1d_inviscid":
            v = "burgers1d"
            kw["reynolds"] = math.inf
        kw["kind"] = v
    if (v := get("problem", "re")) is not None:
        if kw.get("kind") == "burgers1d" and "reynolds" in kw and v.lower() != "inf":
            raise ConfigError("problem.re", "burgers1d_inviscid requires re = inf")
        kw["reynolds"] = _number("problem.re", v)
        if not kw["reynolds"] > 0:
            raise ConfigError("problem.re", f"must be positive: {v}")
    if (v := get("problem", "nx")) is not None:
        kw["nx"] = _integer("problem.nx", v)
    if (v := get("problem", "ny")) is not None:
        kw["ny"] = _integer("problem.ny", v)
    if (v := get("problem", "rho")) is not None:
        kw["rho"] = None if v.lower() in ("none", "discontinuous", "0") else _number("problem.rho", v)
    if (v := get("problem", "delta")) is not None:
        kw["delta"] = _number("problem.delta", v)
    if (v := get("problem", "ador_on")) is not None:
        if v not in ("velocity", "vorticity"):
            raise ConfigError("problem.ador_on", f"expected 'velocity' or 'vorticity', got {v!r}")
        kw["ador_on"] = v

    ador: Dict[str, object] = {}
    for key in KEYS["ador"]:
        v = get("ador", key)
        if v is None:
            continue
        if key == "prescription":
            ador[key] = None if v.lower() in ("none", "off", "") else v.lower()
        else:
            ador[key] = _number(f"ador.{key}", v)
    try:
        kw["ador"] = AdorConfig(**ador)
    except ValueError as exc:
        bad = next((k for k in KEYS["ador"] if f"'{k}'" in str(exc)), "prescription")
        raise ConfigError(f"ador.{bad}", str(exc)) from None

    stepper: Dict[str, object] = {}
    if (v := get("stepper", "scheme")) is not None:
        stepper["scheme"] = v.lower()
    if (v := get("stepper", "dt")) is not None:
        stepper["dt"] = _number("stepper.dt", v)
    if (v := get("stepper", "fp_tol")) is not None:
        stepper["fp_tol"] = _number("stepper.fp_tol", v)
    if (v := get("stepper", "fp_max_iter")) is not None:
        stepper["fp_max_iter"] = _integer("stepper.fp_max_iter", v)
    try:
        kw["stepper"] = StepperConfig(**stepper)
    except ValueError as exc:
        bad = next((k for k in ("dt", "fp_tol", "fp_max_iter") if f"'{k}'" in str(exc)), "scheme")
        raise ConfigError(f"stepper.{bad}", str(exc)) from None
    if (v := get("stepper", "t_end")) is not None:
        kw["t_end"] = _number("stepper.t_end", v)
    if (v := get("stepper", "max_abs")) is not None:
        kw["max_abs"] = _number("stepper.max_abs", v)

    out = get("output", "dir") or "out"
    out = os.environ.get("ADOR_OUT") or out
    path = Path(out)
    kw["output_dir"] = path if path.is_absolute() else Path(base_dir) / path
    if (v := get("output", "snapshots")) is not None:
        kw["snapshots"] = _times("output.snapshots", v)
    if (v := get("output", "oracle")) is not None:
        v = v.lower()
        kw["oracle"] = {"true": "on", "yes": "on", "false": "off", "no": "off"}.get(v, v)

    return RunConfig(**kw)


def load_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)


def override(text: str, key: str, value: str) -> str:
    """Return configuration *text* with ``section.key`` (or a bare key that is
    unique across sections) set to *value*."""
    if "." in key:
        section, name = key.split(".", 1)
    else:
        owners = [s for s, names in KEYS.items() if key in names]
        if len(owners) != 1:
            raise ConfigError(key, "unknown configuration key")
        section, name = owners[0], key
    if name not in KEYS.get(section, ()):
        raise ConfigError(f"{section}.{name}", "unknown configuration key")

    parser = configparser.ConfigParser(interpolation=None)
    parser.read_string(text)
    if not parser.has_section(section):
        parser.add_section(section)
    parser.set(section, name, value)

    lines = []
    for s in parser.sections():
        lines.append(f"[{s}]")
        lines.extend(f"{k} = {v}" for k, v in parser[s].items())
        lines.append("")
    return "\n".join(lines)


# }}}
