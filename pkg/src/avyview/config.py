"""Startup configuration: vocabularies, count bins, glyph scaling, theme.

One UTF-8 INI-style file configures everything that is vocabulary rather
than code. All sections and keys are optional; anything omitted falls
back to the shipped defaults. Example::

    [bins]
    # label = lo..hi   (open-ended: lo..)
    isolated = 1..1
    several = 2..9
    numerous = 10..

    [vocab]
    triggers = natural, skier, skier-remote, explosive, cornice-fall, vehicle, other, unspecified
    problem_types = storm-slab, wind-slab, persistent-slab, deep-persistent-slab, wet-slab, loose-dry, loose-wet, cornice, unspecified

    [glyph]
    darkness_cap = 100
    radius_base = 8.0

    [theme]
    numeric_hue_deg = 215
    ordinal_hue_deg = 135
    saturation = 0.65

Bin order in the file is the display order. The reserved token
"unspecified" is appended to a vocabulary if the file leaves it out.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .model import (
    DEFAULT_PROBLEM_TYPES,
    DEFAULT_TRIGGERS,
    UNSPECIFIED,
    OrdinalBinTable,
    OrdinalCount,
    Vocabularies,
)


class ConfigError(ValueError):
    """Configuration file is unreadable or carries an invalid value."""


@dataclass(frozen=True)
class GlyphScale:
    """Knobs for the count-darkness and size-radius encodings."""

    darkness_cap: int = 100
    radius_base: float = 8.0

    def __post_init__(self) -> None:
        if self.darkness_cap < 1:
            raise ConfigError(f"darkness_cap must be >= 1, got {self.darkness_cap}")
        if self.radius_base <= 0:
            raise ConfigError(f"radius_base must be > 0, got {self.radius_base}")


@dataclass(frozen=True)
class ThemeConfig:
    """Hue/saturation anchors for the two colour families."""

    numeric_hue_deg: float = 215.0
    ordinal_hue_deg: float = 135.0
    saturation: float = 0.65


@dataclass(frozen=True)
class AppConfig:
    vocab: Vocabularies = field(default_factory=Vocabularies)
    glyph: GlyphScale = field(default_factory=GlyphScale)
    theme: ThemeConfig = field(default_factory=ThemeConfig)


def _parse_bin_range(label: str, text: str) -> OrdinalCount:
    text = text.strip()
    if ".." not in text:
        raise ConfigError(f"bin {label!r}: expected 'lo..hi' or 'lo..', got {text!r}")
    lo_s, hi_s = text.split("..", 1)
    try:
        lo = int(lo_s)
        hi = int(hi_s) if hi_s.strip() else None
    except ValueError as exc:
        raise ConfigError(f"bin {label!r}: bad bounds {text!r}") from exc
    try:
        return OrdinalCount(label, lo, hi)
    except ValueError as exc:
        raise ConfigError(f"bin {label!r}: {exc}") from exc


def _parse_token_list(text: str) -> tuple[str, ...]:
    toks = tuple(t.strip() for t in text.split(",") if t.strip())
    if UNSPECIFIED not in toks:
        toks = toks + (UNSPECIFIED,)
    return toks


def load_config(path: Union[str, Path, None] = None) -> AppConfig:
    """Load the configuration file, or the shipped defaults when None."""
    if path is None:
        return AppConfig()

    parser = configparser.ConfigParser()
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        parser.read_string(raw, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc

    if parser.has_section("bins") and parser.options("bins"):
        entries = tuple(
            _parse_bin_range(label, parser.get("bins", label))
            for label in parser.options("bins")
        )
        try:
            bins = OrdinalBinTable(entries)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        bins = Vocabularies().bins

    triggers = DEFAULT_TRIGGERS
    problem_types = DEFAULT_PROBLEM_TYPES
    if parser.has_option("vocab", "triggers"):
        triggers = _parse_token_list(parser.get("vocab", "triggers"))
    if parser.has_option("vocab", "problem_types"):
        problem_types = _parse_token_list(parser.get("vocab", "problem_types"))

    try:
        vocab = Vocabularies(triggers=triggers, problem_types=problem_types, bins=bins)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    glyph = GlyphScale(
        darkness_cap=parser.getint("glyph", "darkness_cap", fallback=100),
        radius_base=parser.getfloat("glyph", "radius_base", fallback=8.0),
    )
    theme = ThemeConfig(
        numeric_hue_deg=parser.getfloat("theme", "numeric_hue_deg", fallback=215.0),
        ordinal_hue_deg=parser.getfloat("theme", "ordinal_hue_deg", fallback=135.0),
        saturation=parser.getfloat("theme", "saturation", fallback=0.65),
    )
    return AppConfig(vocab=vocab, glyph=glyph, theme=theme)
