"""Scenario configuration: defaults, flat key=value files, validation.

The config file format is one `key = value` per line with `#` comments.
Flag overrides from the CLI win over file values. Unknown keys are errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .energy import RadioParams
from .protocols import ProtocolKind


class ConfigError(ValueError):
    """Invalid scenario configuration; message names the offending key."""


R_MODES = ("ideal", "measured", "fixed", "analytic")


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one simulation run."""

    protocol: ProtocolKind = ProtocolKind.LEACH
    n: int = 100
    field_w: float = 100.0
    field_h: float = 50.0
    q: int = 4
    m: float = 0.1
    a: float = 0.0
    e0: float = 0.5
    p_opt: float = 0.1
    radio: RadioParams = field(default_factory=RadioParams)
    control_bits: int = 200
    max_rounds: int = 20000
    seed: int = 1
    # Lifetime-estimate mode. "fixed" uses r_fixed directly; "measured"
    # derives R from a discarded dry run of round 0; "analytic" divides the
    # initial energy by the supplied per-round figure e_round; "ideal"
    # targets the optimistic bound (initial energy over the cost of one
    # all-direct round). The default pins a short horizon: the energy-aware
    # protocols then shift into their cheap every-node-reports regime while
    # plenty of energy remains, giving late first deaths, long death tails
    # and high delivered-packet counts.
    r_mode: str = "fixed"
    r_fixed: float | None = 250.0
    e_round: float | None = None
    r_bootstrap: float = 1500.0
    # Ad-LEACH only: estimate the average energy from each static cluster's
    # own initial energy and population instead of the network-wide totals.
    cluster_average: bool = False

    @property
    def packet_bits(self) -> int:
        return self.radio.packet_bits

    def validate(self) -> None:
        if self.n < 1:
            raise ConfigError(f"n: node count must be >= 1, got {self.n}")
        if self.field_w <= 0 or self.field_h <= 0:
            raise ConfigError(f"field_w/field_h: field must be positive, got {self.field_w} x {self.field_h}")
        if self.q < 1:
            raise ConfigError(f"q: cluster count must be >= 1, got {self.q}")
        if not 0.0 <= self.m <= 1.0:
            raise ConfigError(f"m: advanced fraction must be in [0, 1], got {self.m}")
        if self.a < 0.0:
            raise ConfigError(f"a: energy multiplier must be >= 0, got {self.a}")
        if self.e0 <= 0.0:
            raise ConfigError(f"e0: initial energy must be positive, got {self.e0}")
        if not 0.0 < self.p_opt <= 1.0:
            raise ConfigError(f"p_opt: probability must be in (0, 1], got {self.p_opt}")
        if self.control_bits < 1:
            raise ConfigError(f"control_bits: must be >= 1, got {self.control_bits}")
        if self.max_rounds < 0:
            raise ConfigError(f"max_rounds: must be >= 0, got {self.max_rounds}")
        if self.r_mode not in R_MODES:
            raise ConfigError(f"r_mode: must be one of {', '.join(R_MODES)}, got {self.r_mode!r}")
        if self.r_mode == "fixed" and (self.r_fixed is None or self.r_fixed <= 0):
            raise ConfigError(f"r_fixed: fixed r_mode needs a positive lifetime, got {self.r_fixed}")
        if self.r_mode == "analytic" and (self.e_round is None or self.e_round <= 0):
            raise ConfigError(f"e_round: analytic r_mode needs a positive per-round energy, got {self.e_round}")
        if self.r_bootstrap <= 0:
            raise ConfigError(f"r_bootstrap: must be positive, got {self.r_bootstrap}")
        try:
            RadioParams(**_radio_dict(self.radio))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def _radio_dict(radio: RadioParams) -> dict:
    return {
        "e_elec": radio.e_elec,
        "eps_fs": radio.eps_fs,
        "eps_mp": radio.eps_mp,
        "e_da": radio.e_da,
        "packet_bits": radio.packet_bits,
    }


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_optional_float(text: str) -> float | None:
    if text.strip().lower() in ("none", ""):
        return None
    return float(text)


# key -> (target, caster). Targets starting with "radio." set RadioParams fields.
_KEY_TABLE = {
    "protocol": ("protocol", ProtocolKind.from_name),
    "n": ("n", int),
    "field_w": ("field_w", float),
    "field_h": ("field_h", float),
    "q": ("q", int),
    "m": ("m", float),
    "a": ("a", float),
    "e0": ("e0", float),
    "p_opt": ("p_opt", float),
    "e_elec": ("radio.e_elec", float),
    "eps_fs": ("radio.eps_fs", float),
    "eps_mp": ("radio.eps_mp", float),
    "e_da": ("radio.e_da", float),
    "packet_bits": ("radio.packet_bits", int),
    "control_bits": ("control_bits", int),
    "max_rounds": ("max_rounds", int),
    "seed": ("seed", int),
    "r_mode": ("r_mode", str.strip),
    "r_fixed": ("r_fixed", _parse_optional_float),
    "e_round": ("e_round", _parse_optional_float),
    "r_bootstrap": ("r_bootstrap", float),
    "cluster_average": ("cluster_average", _parse_bool),
}


def _apply(fields: dict, radio_fields: dict, key: str, raw, where: str) -> None:
    if key not in _KEY_TABLE:
        raise ConfigError(f"unknown key {key!r} {where}")
    target, caster = _KEY_TABLE[key]
    try:
        value = caster(raw) if isinstance(raw, str) else raw
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad value for {key!r} {where}: {exc}") from None
    if target.startswith("radio."):
        radio_fields[target.split(".", 1)[1]] = value
    else:
        fields[target] = value


def parse_config(path: str | Path | None = None, overrides: dict | None = None) -> ScenarioConfig:
    """Build a validated ScenarioConfig from an optional file plus overrides.

    Overrides (e.g. CLI flags) are applied after the file. Values may be
    strings (parsed like file values) or already-typed Python values.
    """
    fields: dict = {}
    radio_fields: dict = _radio_dict(RadioParams())
    if path is not None:
        text = Path(path).read_text()
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"expected 'key = value' on line {lineno}: {line.rstrip()!r}")
            key, raw = (part.strip() for part in stripped.split("=", 1))
            _apply(fields, radio_fields, key, raw, f"on line {lineno}")
    for key, raw in (overrides or {}).items():
        _apply(fields, radio_fields, key, raw, "(override)")
    try:
        radio = RadioParams(**radio_fields)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    config = ScenarioConfig(radio=radio, **fields)
    config.validate()
    return config


def serialize_config(config: ScenarioConfig) -> str:
    """Render a config as the flat key = value format parse_config reads."""
    lines = [
        f"protocol = {config.protocol.value}",
        f"n = {config.n}",
        f"field_w = {config.field_w!r}",
        f"field_h = {config.field_h!r}",
        f"q = {config.q}",
        f"m = {config.m!r}",
        f"a = {config.a!r}",
        f"e0 = {config.e0!r}",
        f"p_opt = {config.p_opt!r}",
        f"e_elec = {config.radio.e_elec!r}",
        f"eps_fs = {config.radio.eps_fs!r}",
        f"eps_mp = {config.radio.eps_mp!r}",
        f"e_da = {config.radio.e_da!r}",
        f"packet_bits = {config.radio.packet_bits}",
        f"control_bits = {config.control_bits}",
        f"max_rounds = {config.max_rounds}",
        f"seed = {config.seed}",
        f"r_mode = {config.r_mode}",
        f"r_fixed = {'none' if config.r_fixed is None else repr(config.r_fixed)}",
        f"e_round = {'none' if config.e_round is None else repr(config.e_round)}",
        f"r_bootstrap = {config.r_bootstrap!r}",
        f"cluster_average = {'true' if config.cluster_average else 'false'}",
    ]
    return "\n".join(lines) + "\n"


def config_to_dict(config: ScenarioConfig) -> dict:
    """JSON-friendly dict echo of a config (used in run summaries)."""
    return {
        "protocol": config.protocol.value,
        "n": config.n,
        "field_w": config.field_w,
        "field_h": config.field_h,
        "q": config.q,
        "m": config.m,
        "a": config.a,
        "e0": config.e0,
        "p_opt": config.p_opt,
        "radio": _radio_dict(config.radio),
        "control_bits": config.control_bits,
        "max_rounds": config.max_rounds,
        "seed": config.seed,
        "r_mode": config.r_mode,
        "r_fixed": config.r_fixed,
        "e_round": config.e_round,
        "r_bootstrap": config.r_bootstrap,
        "cluster_average": config.cluster_average,
    }


def config_with(config: ScenarioConfig, **kwargs) -> ScenarioConfig:
    """Copy a config with some fields replaced, revalidating the result."""
    updated = replace(config, **kwargs)
    updated.validate()
    return updated
