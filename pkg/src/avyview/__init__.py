"""avyview: glyph-based decision-support views for avalanche forecasting data.

Ingests structured avalanche observation reports and weather telemetry,
computes deterministic packed-glyph layouts for five coordinated views,
and serves them with linked selection over HTTP. The reporting choice
between numeric and ordinal avalanche counts is preserved end to end.
"""

__version__ = "0.1.0"
