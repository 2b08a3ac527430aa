"""Windowed descriptive statistics over weather-station telemetry.

Summaries cover a half-open window (now - w, now] so adjacent windows
add up: precipitation over (t0, t1] plus (t1, t2] equals (t0, t2].
Statistics use only non-missing channel values; gaps are counted, never
imputed. No interpolation between stations happens here, deliberately:
reading regional patterns out of point telemetry stays a human task.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Optional

import numpy as np

from .model import WeatherReading


class UnknownStation(KeyError):
    """Station id with no readings at all."""


class MixedWindows(ValueError):
    """Regional aggregation over summaries with differing windows."""


@dataclass(frozen=True)
class StationSummary:
    station_id: str
    window_hours: int
    precip_sum_mm: Optional[float]
    wind_max_kmh: Optional[float]
    temp_mean_c: Optional[float]
    temp_trend_c_per_hr: Optional[float]
    sample_count: int  # readings in window with every channel present
    missing_count: int  # readings in window with at least one gap


def _in_window(reading: WeatherReading, now: datetime, window_hours: int) -> bool:
    return now - timedelta(hours=window_hours) < reading.timestamp <= now


def summarize_station(
    readings, now: datetime, window_hours: int = 24
) -> StationSummary:
    """Descriptive statistics for one station over (now - w, now].

    ``readings`` must belong to one station, sorted by timestamp. The
    temperature trend is the least-squares slope of temperature against
    time in forward degrees-Celsius per hour; it needs at least two
    temperature samples, otherwise it is absent.
    """
    if window_hours < 1:
        raise ValueError(f"window_hours must be >= 1, got {window_hours}")
    window = [r for r in readings if _in_window(r, now, window_hours)]
    station_id = window[0].station_id if window else (
        readings[0].station_id if readings else "unknown"
    )

    precip = [r.precip_mm for r in window if r.precip_mm is not None]
    wind = [r.wind_speed_kmh for r in window if r.wind_speed_kmh is not None]
    temps = [
        (r.timestamp, r.temp_c) for r in window if r.temp_c is not None
    ]

    trend: Optional[float] = None
    if len(temps) >= 2:
        hours = np.array(
            [(ts - now).total_seconds() / 3600.0 for ts, _ in temps], dtype=np.float64
        )
        values = np.array([v for _, v in temps], dtype=np.float64)
        dx = hours - hours.mean()
        denom = float(np.dot(dx, dx))
        if denom > 0.0:
            trend = float(np.dot(dx, values - values.mean()) / denom)
        else:
            trend = 0.0  # all samples at one instant

    complete = sum(
        1
        for r in window
        if r.precip_mm is not None and r.wind_speed_kmh is not None and r.temp_c is not None
    )

    return StationSummary(
        station_id=station_id,
        window_hours=window_hours,
        precip_sum_mm=float(sum(precip)) if precip else None,
        wind_max_kmh=float(max(wind)) if wind else None,
        temp_mean_c=float(sum(v for _, v in temps) / len(temps)) if temps else None,
        temp_trend_c_per_hr=trend,
        sample_count=complete,
        missing_count=len(window) - complete,
    )


def summarize_all(
    readings, now: datetime, window_hours: int = 24
) -> list[StationSummary]:
    """Per-station summaries over a shared window, sorted by station id."""
    by_station: dict[str, list[WeatherReading]] = {}
    for r in readings:
        by_station.setdefault(r.station_id, []).append(r)
    return [
        summarize_station(sorted(rs, key=lambda r: r.timestamp), now, window_hours)
        for _, rs in sorted(by_station.items())
    ]


@dataclass(frozen=True)
class RegionalStat:
    min: float
    max: float
    mean: float
    station_count: int


@dataclass(frozen=True)
class RegionalSummary:
    window_hours: int
    precip_sum_mm: Optional[RegionalStat]
    wind_max_kmh: Optional[RegionalStat]
    temp_mean_c: Optional[RegionalStat]
    temp_trend_c_per_hr: Optional[RegionalStat]
    station_count: int


def _aggregate(values: list[float]) -> Optional[RegionalStat]:
    if not values:
        return None
    return RegionalStat(
        min=min(values),
        max=max(values),
        mean=sum(values) / len(values),
        station_count=len(values),
    )


def regional_summary(summaries) -> RegionalSummary:
    """Min/max/mean across stations, per statistic, absent values excluded."""
    summaries = list(summaries)
    if not summaries:
        raise ValueError("regional_summary needs at least one station summary")
    windows = {s.window_hours for s in summaries}
    if len(windows) != 1:
        raise MixedWindows(f"summaries span different windows: {sorted(windows)}")

    def pick(attr: str) -> Optional[RegionalStat]:
        return _aggregate([getattr(s, attr) for s in summaries if getattr(s, attr) is not None])

    return RegionalSummary(
        window_hours=summaries[0].window_hours,
        precip_sum_mm=pick("precip_sum_mm"),
        wind_max_kmh=pick("wind_max_kmh"),
        temp_mean_c=pick("temp_mean_c"),
        temp_trend_c_per_hr=pick("temp_trend_c_per_hr"),
        station_count=len(summaries),
    )


def station_detail(
    station_id: str, readings, now: datetime, window_hours: int = 24
) -> list[WeatherReading]:
    """Raw readings for one station over the window, newest first.

    The verbatim tooltip payload: no rounding, no gap filling.
    """
    mine = [r for r in readings if r.station_id == station_id]
    if not mine:
        raise UnknownStation(station_id)
    window = [r for r in mine if _in_window(r, now, window_hours)]
    return sorted(window, key=lambda r: r.timestamp, reverse=True)
