"""Run configuration and the parsers for command-line specifications.

Field configs are JSON objects with a monic integer ``polynomial``
(leading coefficient first), optional ``units`` (integral-basis
coordinates), optional ``precision`` and ``name``.  Built-in configs live
in ``eisres/data/fields`` and are addressed by name or alias.

Spec syntaxes:

* α-spec: ``"c1,c2|d1,d2@l; ..."``, one term per torsion point; ``ci`` and
  ``di`` are integer numerators over n of the two components (integral
  basis coordinates) and ``l`` a rational coefficient.  ``"0"`` is α = 0.
* h-spec: ``"a;b;c;d"``, row-major entries, each ``x1,x2`` integer residues.
* ideal: generators separated by ``;``, each as integral-basis coordinates.
* point: comma-separated rational coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from ..cusps import LevelGroupElement, LevelGroupError, ResidueRing, RingTooLargeError
from ..field import FieldError, FieldElement, FractionalIdeal, InvalidIdealError, TotallyRealField
from ..nori.context import InvalidDistributionError, TorsionDistribution

__all__ = [
    "ConfigError",
    "RunConfig",
    "builtin_fields",
    "load_field",
    "parse_alpha",
    "parse_h",
    "parse_ideal",
    "parse_point",
]

FORMATS = ("table", "json", "csv")


class ConfigError(ValueError):
    """Malformed configuration or specification (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    field: str = "Q(sqrt2)"
    level: int = 3
    weight: int = 2
    truncation: float = 1e4
    jet_degree: int = 4
    precision: int = 50
    format: str = "table"
    seed: int = 0
    out: str | None = None
    timing: bool = True

    def __post_init__(self) -> None:
        for name in ("level", "weight", "truncation", "jet_degree", "precision"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"--{name.replace('_', '-')} must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"--format must be one of {', '.join(FORMATS)}")
        if self.precision < 15:
            raise ConfigError("--precision must be at least 15 digits")

    def header(self) -> dict[str, Any]:
        return {
            "field": self.field,
            "level": self.level,
            "weight": self.weight,
            "truncation": self.truncation,
            "jet_degree": self.jet_degree,
            "precision": self.precision,
            "seed": self.seed,
        }


def _builtin_dir():
    return resources.files("eisres") / "data" / "fields"


def builtin_fields() -> dict[str, dict[str, Any]]:
    """Alias -> config for the shipped field files."""
    out: dict[str, dict[str, Any]] = {}
    for entry in sorted(_builtin_dir().iterdir(), key=lambda p: p.name):
        if not entry.name.endswith(".json"):
            continue
        cfg = json.loads(entry.read_text())
        for alias in [cfg.get("name", entry.name[:-5])] + list(cfg.get("aliases", [])):
            out[alias.lower()] = cfg
    return out


def _field_from_config(cfg: Any, precision: int) -> TotallyRealField:
    if not isinstance(cfg, dict) or "polynomial" not in cfg:
        raise ConfigError("field config needs a 'polynomial' entry")
    poly = cfg["polynomial"]
    if not isinstance(poly, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in poly):
        raise ConfigError(f"polynomial must be a list of integers, got {poly!r}")
    try:
        return TotallyRealField(
            poly,
            units=cfg.get("units"),
            precision=int(cfg.get("precision", precision)),
            name=cfg.get("name"),
        )
    except (FieldError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad field config: {exc}") from exc


_FIELD_CACHE: dict[tuple[str, int], TotallyRealField] = {}


def load_field(spec: str, precision: int = 50) -> TotallyRealField:
    """Field from a built-in name, a JSON file path or an inline JSON object."""
    key = (spec, precision)
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    known = builtin_fields()
    if spec.lower() in known:
        cfg = known[spec.lower()]
    elif spec.lstrip().startswith("{"):
        try:
            cfg = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"inline field config is not valid JSON: {exc}") from exc
    else:
        path = Path(spec)
        if not path.is_file():
            raise ConfigError(f"unknown field {spec!r}; built-ins: {', '.join(sorted(known))}")
        try:
            cfg = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    field = _field_from_config(cfg, precision)
    _FIELD_CACHE[key] = field
    return field


def _ints(text: str, count: int, what: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ConfigError(f"{what} {text!r} needs {count} comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"{what} {text!r}: {exc}") from exc


def parse_point(text: str, field: TotallyRealField) -> FieldElement:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != field.g:
        raise ConfigError(f"point {text!r} needs {field.g} coordinates")
    try:
        return field.element([Fraction(p) for p in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"point {text!r}: {exc}") from exc


def parse_ideal(text: str | None, field: TotallyRealField) -> FractionalIdeal:
    if text is None or not text.strip():
        return FractionalIdeal.unit(field)
    gens = [parse_point(g, field) for g in text.split(";") if g.strip()]
    try:
        return FractionalIdeal.from_generators(field, gens)
    except (InvalidIdealError, FieldError) as exc:
        raise ConfigError(f"ideal {text!r}: {exc}") from exc


def parse_alpha(text: str, field: TotallyRealField, n: int) -> TorsionDistribution:
    g = field.g
    if text.strip() in ("", "0"):
        return TorsionDistribution.zero(n)
    pairs = []
    for term in text.split(";"):
        term = term.strip()
        if not term:
            continue
        if "@" not in term or "|" not in term:
            raise ConfigError(f"α term {term!r} must look like 'c1,..|d1,..@l'")
        point, coeff = term.rsplit("@", 1)
        first, second = point.split("|", 1)
        num = _ints(first, g, "α component") + _ints(second, g, "α component")
        try:
            l = Fraction(coeff.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"α coefficient {coeff!r}: {exc}") from exc
        pairs.append(([Fraction(c % n, n) for c in num], l))
    try:
        return TorsionDistribution.from_pairs(pairs, n)
    except InvalidDistributionError as exc:
        raise ConfigError(f"α: {exc}") from exc


def parse_h(text: str | None, field: TotallyRealField, n: int) -> LevelGroupElement:
    try:
        ring = ResidueRing(field, n)
    except RingTooLargeError as exc:
        raise ConfigError(str(exc)) from exc
    if text is None or not text.strip() or text.strip().lower() in ("id", "identity"):
        return LevelGroupElement.identity(ring)
    entries = [e for e in text.split(";")]
    if len(entries) != 4:
        raise ConfigError(f"h-spec {text!r} needs four ';'-separated entries")
    try:
        return LevelGroupElement.from_entries(ring, [_ints(e, field.g, "matrix entry") for e in entries])
    except LevelGroupError as exc:
        raise ConfigError(f"h: {exc}") from exc
