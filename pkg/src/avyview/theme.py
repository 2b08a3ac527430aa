"""Colour theme shared by the SVG exporter and the browser client.

One fixture, two consumers: the count-darkness scale maps a darkness
value d in [0, 1] to HSL lightness ``90 - 60*d`` (percent), so darker
always means a higher resolved count and the monotonicity is directly
assertable. Hue separates the two count families; exact hues are a
design fixture, not domain truth.
"""

from __future__ import annotations

import colorsys

from .config import ThemeConfig

FAMILY_NUMERIC = "numeric-blue"
FAMILY_ORDINAL = "ordinal-green"

HIGHLIGHT_STROKE = "#d7263d"
DIMMED_OPACITY = 0.25


def lightness_for(darkness: float) -> float:
    """HSL lightness percentage for a darkness value in [0, 1]."""
    if not 0.0 <= darkness <= 1.0:
        raise ValueError(f"darkness {darkness} outside [0, 1]")
    return 90.0 - 60.0 * darkness


def color_hex(family: str, darkness: float, theme: ThemeConfig = ThemeConfig()) -> str:
    """Hex colour for a count family at the given darkness."""
    if family == FAMILY_NUMERIC:
        hue = theme.numeric_hue_deg
    elif family == FAMILY_ORDINAL:
        hue = theme.ordinal_hue_deg
    else:
        raise ValueError(f"unknown colour family {family!r}")
    l = lightness_for(darkness) / 100.0
    r, g, b = colorsys.hls_to_rgb(hue / 360.0, l, theme.saturation)
    return "#{:02x}{:02x}{:02x}".format(
        round(r * 255), round(g * 255), round(b * 255)
    )


def theme_json(theme: ThemeConfig = ThemeConfig()) -> dict:
    """Theme payload served to the client; includes sampled ramps."""
    steps = [i / 10 for i in range(11)]
    return {
        "families": {
            FAMILY_NUMERIC: {
                "hue_deg": theme.numeric_hue_deg,
                "ramp": [color_hex(FAMILY_NUMERIC, d, theme) for d in steps],
            },
            FAMILY_ORDINAL: {
                "hue_deg": theme.ordinal_hue_deg,
                "ramp": [color_hex(FAMILY_ORDINAL, d, theme) for d in steps],
            },
        },
        "saturation": theme.saturation,
        "lightness": {"at_zero": 90.0, "slope": -60.0},
        "highlight_stroke": HIGHLIGHT_STROKE,
        "dimmed_opacity": DIMMED_OPACITY,
    }
