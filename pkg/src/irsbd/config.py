"""Scenario configuration and its flat ``key = value`` file format.

One assignment per line, ``#`` starts a comment, blank lines are ignored.
Lists are comma separated. ``noise_dbm`` sets both UE noise levels at once.
Example::

    M = 32
    power_sweep_dbm = 0, 10, 20, 30
    methods = PIB, FIB
"""
from dataclasses import dataclass, field, fields, replace
import os

import numpy as np

from .errors import ConfigError
from .metrics import NOISE_MODELS, SE_MODES
from .txrx import MethodId


def dbm_to_watts(dbm):
    return 10.0 ** ((np.asarray(dbm, dtype=float) - 30.0) / 10.0)


def default_power_sweep():
    return tuple(float(p) for p in range(0, 31, 2))


@dataclass(frozen=True)
class ScenarioConfig:
    M: int = 32
    N: int = 64
    P: int = 8
    Q: int = 8
    Ns: int = 2
    fc_ghz: float = 28.0
    h_bs: float = 25.0
    h_irs: float = 8.0
    h_ue: float = 1.5
    d2d_bs_irs: float = 100.0
    d2d_bs_ue1: float = 100.0
    d2d_bs_ue2: float = 100.0
    d2d_irs_ue1: float = 51.7
    d2d_irs_ue2: float = 100.0
    noise_dbm1: float = -80.0
    noise_dbm2: float = -80.0
    power_sweep_dbm: tuple = field(default_factory=default_power_sweep)
    realizations: int = 10000
    seed: int = 0
    ray_count: int = 100
    methods: tuple = tuple(MethodId)
    se_mode: str = "det"
    noise_model: str = "combined"
    freeze_large_scale: bool = False
    rank_tol: float = 1e-10

    def __post_init__(self):
        object.__setattr__(self, "power_sweep_dbm", tuple(float(p) for p in self.power_sweep_dbm))
        object.__setattr__(self, "methods", tuple(MethodId(m) for m in self.methods))
        self.validate()

    @property
    def noise_var1(self):
        return float(dbm_to_watts(self.noise_dbm1))

    @property
    def noise_var2(self):
        return float(dbm_to_watts(self.noise_dbm2))

    def validate(self):
        for key in ("M", "N", "P", "Q", "Ns", "ray_count"):
            if getattr(self, key) < 1:
                raise ConfigError("must be >= 1", key=key)
        if self.realizations < 1:
            raise ConfigError("must be >= 1", key="realizations")
        if self.M < self.P + self.Q:
            raise ConfigError(
                f"BD needs M >= P + Q, got M={self.M} < {self.P + self.Q}", key="M")
        if self.Ns > min(self.P, self.Q):
            raise ConfigError("Ns exceeds the UE antenna count", key="Ns")
        if self.fc_ghz <= 0:
            raise ConfigError("must be positive", key="fc_ghz")
        sweep = self.power_sweep_dbm
        if not sweep:
            raise ConfigError("power sweep is empty", key="power_sweep_dbm")
        if any(b <= a for a, b in zip(sweep, sweep[1:])):
            raise ConfigError("power sweep must be strictly ascending", key="power_sweep_dbm")
        if self.se_mode not in SE_MODES:
            raise ConfigError(f"expected one of {SE_MODES}", key="se_mode")
        if self.noise_model not in NOISE_MODELS:
            raise ConfigError(f"expected one of {NOISE_MODELS}", key="noise_model")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer", key="seed")
        if self.rank_tol <= 0:
            raise ConfigError("must be positive", key="rank_tol")

    def with_overrides(self, **kwargs):
        return replace(self, **kwargs)


def _parse_bool(text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_methods(text):
    return tuple(MethodId(m.strip().upper()) for m in text.split(",") if m.strip())


def parse_power_range(text):
    """``start:step:stop`` in dBm (stop inclusive) or a comma list of points."""
    if ":" not in text:
        return tuple(float(x) for x in text.split(",") if x.strip())
    parts = [float(x) for x in text.split(":")]
    if len(parts) != 3 or parts[1] <= 0:
        raise ConfigError(f"power range must be start:step:stop with step > 0, got {text!r}")
    start, step, stop = parts
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 10) for i in range(count))


_PARSERS = {
    int: lambda s: int(s, 0),
    float: float,
    str: str.strip,
    bool: _parse_bool,
}
_SPECIAL = {
    "power_sweep_dbm": parse_power_range,
    "methods": _parse_methods,
}
_FIELD_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}


def _coerce(key, raw):
    if key in _SPECIAL:
        return _SPECIAL[key](raw)
    typ = _FIELD_TYPES[key]
    if isinstance(typ, str):
        typ = {"int": int, "float": float, "str": str, "bool": bool}[typ]
    return _PARSERS[typ](raw)


def parse_config(text, base=None) -> ScenarioConfig:
    """Parse a key-value document; omitted keys keep their defaults."""
    values, lines = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, raw = (part.strip() for part in line.split("=", 1))
        keys = ("noise_dbm1", "noise_dbm2") if key == "noise_dbm" else (key,)
        for k in keys:
            if k not in _FIELD_TYPES:
                raise ConfigError("unknown key", key=key, line=lineno)
            try:
                values[k] = _coerce(k, raw)
                lines[k] = lineno
            except ValueError as exc:
                raise ConfigError(f"cannot parse {raw!r}: {exc}", key=key, line=lineno) from None
    try:
        return replace(base, **values) if base is not None else ScenarioConfig(**values)
    except ConfigError as exc:
        if exc.line is None and exc.key in lines:
            raise ConfigError(exc.reason, key=exc.key, line=lines[exc.key]) from None
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(source) -> ScenarioConfig:
    """Load from a path, or from literal text if ``source`` is not an existing file."""
    if isinstance(source, os.PathLike) or (
        isinstance(source, str) and "\n" not in source and "=" not in source
    ):
        with open(source, encoding="utf-8") as fh:
            return parse_config(fh.read())
    return parse_config(source)
