"""Flat dotted-key configuration files and the run configuration.

Config files are plain text, one ``key = value`` per line, ``#`` starts a
comment, keys are dotted paths. Unknown or duplicate keys and malformed
lines are rejected with their line numbers. Grasp description files use the
same format plus per-contact keys ``contact.N.angle_deg`` and optional
``contact.N.force_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

from .grasp import (
    SPRING_VARIANTS,
    GraspConfiguration,
    GraspContact,
    great_circle_pose,
)
from .hertz import ContactPair, Material, get_material
from .sensing import FingertipSurface

__all__ = [
    "ConfigError",
    "RunConfig",
    "load_grasp_file",
    "load_run_config",
    "parse_keyvalues",
]


class ConfigError(ValueError):
    """Malformed configuration input; the message carries the line number."""


def parse_keyvalues(text: str, source: str = "<config>") -> dict[str, tuple[str, int]]:
    """Parse ``key = value`` lines into ``{key: (value, line_number)}``."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"{source}:{lineno}: empty key or value")
        if key in entries:
            first = entries[key][1]
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r} (first set on line {first})")
        entries[key] = (value, lineno)
    return entries


def _parse_float(key: str, value: str, lineno: int, source: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise ConfigError(f"{source}:{lineno}: {key} must be a number, got {value!r}") from None
    if math.isnan(x):
        raise ConfigError(f"{source}:{lineno}: {key} must not be NaN")
    return x


def _parse_int(key: str, value: str, lineno: int, source: str) -> int:
    try:
        return int(value, 10)
    except ValueError:
        raise ConfigError(f"{source}:{lineno}: {key} must be an integer, got {value!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings shared by all harness runs (lengths in mm as in the
    config file; use the builder methods for SI objects)."""

    fingertip_radius_mm: float = 10.0
    fingertip_material: str = "rubber"
    fingertip_alpha: float = 1.0
    fingertip_beta: float = 1.0
    fingertip_gamma: float = 1.0
    object_material: str = "aluminium"
    object_signed_radius_mm: float = 40.0
    contact_distance_mm: float = 40.0
    force_n: float = 5.0
    mu: float = 0.5
    spring_variant: str = "dual_tangential"
    sweep_force_min_n: float = 0.01
    sweep_force_max_n: float = 1.0
    sweep_steps: int = 50
    seed: int = 42
    output_dir: str = "."

    def fingertip(self) -> Material:
        return get_material(self.fingertip_material)

    def object(self) -> Material:
        return get_material(self.object_material)

    def contact_pair(self, object_radius_mm: float | None = None) -> ContactPair:
        r2 = self.object_signed_radius_mm if object_radius_mm is None else object_radius_mm
        return ContactPair(
            self.fingertip_radius_mm * 1e-3,
            r2 * 1e-3,
            self.fingertip(),
            self.object(),
        )

    def fingertip_surface(self) -> FingertipSurface:
        return FingertipSurface(
            self.fingertip_alpha,
            self.fingertip_beta,
            self.fingertip_gamma,
            self.fingertip_radius_mm * 1e-3,
        )


_FLOAT_KEYS = {
    "fingertip.radius_mm": "fingertip_radius_mm",
    "fingertip.alpha": "fingertip_alpha",
    "fingertip.beta": "fingertip_beta",
    "fingertip.gamma": "fingertip_gamma",
    "object.signed_radius_mm": "object_signed_radius_mm",
    "grasp.contact_distance_mm": "contact_distance_mm",
    "grasp.force_n": "force_n",
    "grasp.mu": "mu",
    "sweep.force_min_n": "sweep_force_min_n",
    "sweep.force_max_n": "sweep_force_max_n",
}
_INT_KEYS = {"sweep.steps": "sweep_steps", "seed": "seed"}
_STR_KEYS = {
    "fingertip.material": "fingertip_material",
    "object.material": "object_material",
    "grasp.spring_variant": "spring_variant",
    "output_dir": "output_dir",
}


def _config_from_entries(
    entries: dict[str, tuple[str, int]], source: str, base: RunConfig
) -> RunConfig:
    fields = {}
    for key, (value, lineno) in entries.items():
        if key in _FLOAT_KEYS:
            fields[_FLOAT_KEYS[key]] = _parse_float(key, value, lineno, source)
        elif key in _INT_KEYS:
            fields[_INT_KEYS[key]] = _parse_int(key, value, lineno, source)
        elif key in _STR_KEYS:
            fields[_STR_KEYS[key]] = value
        else:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
    cfg = replace(base, **fields)
    _validate(cfg, source)
    return cfg


def _validate(cfg: RunConfig, source: str) -> None:
    if cfg.spring_variant not in SPRING_VARIANTS:
        raise ConfigError(
            f"{source}: grasp.spring_variant must be one of {SPRING_VARIANTS}, "
            f"got {cfg.spring_variant!r}"
        )
    if cfg.sweep_steps < 1:
        raise ConfigError(f"{source}: sweep.steps must be at least 1")
    if not cfg.sweep_force_min_n <= cfg.sweep_force_max_n:
        raise ConfigError(f"{source}: sweep.force_min_n must not exceed sweep.force_max_n")
    try:
        cfg.fingertip()
        cfg.object()
    except KeyError as exc:
        raise ConfigError(f"{source}: {exc.args[0]}") from None


def load_run_config(path: str | Path | None = None, base: RunConfig | None = None) -> RunConfig:
    """Load a run configuration, defaulting every unset key."""
    base = base if base is not None else RunConfig()
    if path is None:
        return base
    path = Path(path)
    entries = parse_keyvalues(path.read_text(), source=str(path))
    return _config_from_entries(entries, str(path), base)


_GRASP_SHARED_KEYS = (
    set(_FLOAT_KEYS) | set(_INT_KEYS) | set(_STR_KEYS)
) - {"output_dir"}


def load_grasp_file(
    path: str | Path, base: RunConfig | None = None
) -> tuple[GraspConfiguration, RunConfig]:
    """Read a grasp description file into a configuration.

    The file lists per-contact keys ``contact.N.angle_deg`` (great-circle
    angle) and optional ``contact.N.force_n`` (defaults to ``grasp.force_n``),
    plus any shared geometry/material keys. Returns the grasp and the
    effective run configuration.
    """
    path = Path(path)
    source = str(path)
    entries = parse_keyvalues(path.read_text(), source=source)

    shared = {k: v for k, v in entries.items() if k in _GRASP_SHARED_KEYS}
    cfg = _config_from_entries(shared, source, base if base is not None else RunConfig())

    contacts: dict[int, dict[str, float]] = {}
    for key, (value, lineno) in entries.items():
        if key in _GRASP_SHARED_KEYS:
            continue
        parts = key.split(".")
        if len(parts) == 3 and parts[0] == "contact":
            try:
                index = int(parts[1], 10)
            except ValueError:
                raise ConfigError(f"{source}:{lineno}: bad contact index in {key!r}") from None
            if index < 1:
                raise ConfigError(f"{source}:{lineno}: contact indices start at 1")
            if parts[2] not in ("angle_deg", "force_n"):
                raise ConfigError(f"{source}:{lineno}: unknown contact key {key!r}")
            contacts.setdefault(index, {})[parts[2]] = _parse_float(key, value, lineno, source)
        else:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")

    if not contacts:
        raise ConfigError(f"{source}: no contacts defined (need contact.N.angle_deg keys)")
    for index, fields in sorted(contacts.items()):
        if "angle_deg" not in fields:
            raise ConfigError(f"{source}: contact.{index}.angle_deg is missing")

    pair = cfg.contact_pair()
    distance = cfg.contact_distance_mm * 1e-3
    grasp_contacts = tuple(
        GraspContact(
            great_circle_pose(math.radians(fields["angle_deg"]), distance),
            pair,
            fields.get("force_n", cfg.force_n),
        )
        for _, fields in sorted(contacts.items())
    )
    return GraspConfiguration(grasp_contacts), cfg
