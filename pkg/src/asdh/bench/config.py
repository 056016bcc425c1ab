"""Named solver configurations and the flat key=value config file format."""

from __future__ import annotations

from dataclasses import fields, replace
from pathlib import Path

from ..solver import SolverConfig

_INT_KEYS = {"k_max", "max_halvings"}
_ALIASES = {"kmax": "k_max", "epsilon": "eps"}
_KEYS = {f.name for f in fields(SolverConfig)} - {"eta_schedule"}

BUILTIN_CONFIGS = {
    "asdh": SolverConfig(),
    # eta == 0 throughout: plain monotone Armijo backtracking
    "asdh-monotone": SolverConfig(eta_min=0.0, eta_max=0.0),
}


class ConfigError(ValueError):
    pass


def parse_config_text(text: str, base: SolverConfig = SolverConfig(), source: str = "<string>"):
    """Parse ``key = value`` lines into (name or None, SolverConfig)."""
    name = None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        key = _ALIASES.get(key, key)
        if key == "name":
            name = val
            continue
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = int(float(val)) if key in _INT_KEYS else float(val)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {val!r}") from None
    try:
        return name, replace(base, **values)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(spec: str):
    """Resolve a builtin name or a config file path to (name, SolverConfig)."""
    if spec in BUILTIN_CONFIGS:
        return spec, BUILTIN_CONFIGS[spec]
    path = Path(spec)
    if not path.is_file():
        raise ConfigError(f"{spec!r} is neither a builtin config ({', '.join(BUILTIN_CONFIGS)}) nor a file")
    name, cfg = parse_config_text(path.read_text(), source=str(path))
    return name or path.stem, cfg


def format_config(cfg: SolverConfig, name: str = None) -> str:
    lines = [f"name = {name}"] if name else []
    lines += [f"{k} = {v!r}" for k, v in cfg.numeric_fields().items()]
    return "\n".join(lines) + "\n"
