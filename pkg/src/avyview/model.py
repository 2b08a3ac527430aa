"""Core vocabulary types for avalanche observation reports.

Everything downstream (ingest, layout, views, selection) consumes these
types. They are immutable value objects: invariants are checked at
construction time and an invalid instance cannot exist.

The one type with teeth is the avalanche count. Field reports state the
number of observed avalanches either as a plain number or as a labelled
ordinal bin ("several" meaning 2-9), and which of the two the reporter
chose is itself information. The count is therefore a tagged union and
no function in this package converts one variant into the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime
from fractions import Fraction
from typing import Optional, Union

SIZE_CLASSES = tuple(x / 2 for x in range(2, 11))  # 1.0, 1.5, ... 5.0

UNSPECIFIED = "unspecified"

DEFAULT_TRIGGERS = (
    "natural",
    "skier",
    "skier-remote",
    "explosive",
    "cornice-fall",
    "vehicle",
    "other",
    UNSPECIFIED,
)

DEFAULT_PROBLEM_TYPES = (
    "storm-slab",
    "wind-slab",
    "persistent-slab",
    "deep-persistent-slab",
    "wet-slab",
    "loose-dry",
    "loose-wet",
    "cornice",
    UNSPECIFIED,
)


class UnknownBinLabel(KeyError):
    """Count label not present in the active ordinal bin table."""


@dataclass(frozen=True)
class NumericCount:
    """Avalanche count reported as an exact number."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"numeric count must be an integer, got {self.n!r}")
        if self.n < 0:
            raise ValueError(f"numeric count must be >= 0, got {self.n}")


@dataclass(frozen=True)
class OrdinalCount:
    """Avalanche count reported as a labelled ordinal bin.

    ``hi`` is None for an open-ended bin ("10 or more").
    """

    label: str
    lo: int
    hi: Optional[int]

    def __post_init__(self) -> None:
        if self.lo < 1:
            raise ValueError(f"ordinal bin lo must be >= 1, got {self.lo}")
        if self.hi is not None and self.lo > self.hi:
            raise ValueError(f"ordinal bin [{self.lo}, {self.hi}] is inverted")
        if not self.label:
            raise ValueError("ordinal bin label must be non-empty")


AvalancheCount = Union[NumericCount, OrdinalCount]


@dataclass(frozen=True)
class OrdinalBinTable:
    """Ordered table of (label, lo, hi) count bins, configuration-supplied."""

    entries: tuple[OrdinalCount, ...]

    def __post_init__(self) -> None:
        labels = [e.label.lower() for e in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("ordinal bin labels must be unique")

    def get(self, label: str) -> OrdinalCount:
        """Look up a bin by label, case-insensitively, trimming whitespace."""
        key = label.strip().lower()
        for entry in self.entries:
            if entry.label.lower() == key:
                return entry
        raise UnknownBinLabel(label)

    def __contains__(self, label: str) -> bool:
        try:
            self.get(label)
        except UnknownBinLabel:
            return False
        return True


DEFAULT_BIN_TABLE = OrdinalBinTable(
    (
        OrdinalCount("isolated", 1, 1),
        OrdinalCount("several", 2, 9),
        OrdinalCount("numerous", 10, None),
    )
)


def resolve_count_scalar(
    count: AvalancheCount,
    table: OrdinalBinTable = DEFAULT_BIN_TABLE,
    policy: str = "midpoint",
) -> Fraction:
    """Reduce a count to a scalar for encoding purposes only.

    The scalar feeds the colour-darkness scale; it never replaces the
    stored count. Policies: "midpoint" (default) takes (lo+hi)/2 for a
    bounded bin, "lo"/"hi" take the bin endpoints. Open-ended bins
    resolve to lo under every policy, the only certain value they carry.
    """
    if isinstance(count, NumericCount):
        return Fraction(count.n)
    entry = table.get(count.label)  # raises UnknownBinLabel if unresolvable
    if entry.hi is None:
        return Fraction(entry.lo)
    if policy == "midpoint":
        return Fraction(entry.lo + entry.hi, 2)
    if policy == "lo":
        return Fraction(entry.lo)
    if policy == "hi":
        return Fraction(entry.hi)
    raise ValueError(f"unknown scalar policy {policy!r}")


@dataclass(frozen=True)
class ElevationInterval:
    """Elevation band of a report, metres above sea level."""

    min_m: float
    max_m: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "min_m", float(self.min_m))
        object.__setattr__(self, "max_m", float(self.max_m))
        if not (0 <= self.min_m <= self.max_m <= 9000):
            raise ValueError(
                f"elevation interval [{self.min_m}, {self.max_m}] out of range"
            )

    def overlaps(self, other: "ElevationInterval") -> bool:
        return self.min_m <= other.max_m and other.min_m <= self.max_m


@dataclass(frozen=True)
class AspectInterval:
    """Range of compass directions, swept clockwise from start to end.

    Compass degrees increase clockwise (N=0, E=90, S=180, W=270), so the
    sweep from start to end is ``(end - start) mod 360``. start == end
    with full_circle=False is a single reported direction (zero-length);
    full_circle=True covers all aspects regardless of start/end.
    """

    start_deg: float
    end_deg: float
    full_circle: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "start_deg", float(self.start_deg))
        object.__setattr__(self, "end_deg", float(self.end_deg))
        if not (0 <= self.start_deg < 360 and 0 <= self.end_deg < 360):
            raise ValueError(
                f"aspect endpoints must lie in [0, 360), got "
                f"[{self.start_deg}, {self.end_deg}]"
            )

    @property
    def sweep_deg(self) -> float:
        """Clockwise angular length in [0, 360]."""
        if self.full_circle:
            return 360.0
        return (self.end_deg - self.start_deg) % 360.0


def aspect_contains(interval: AspectInterval, angle: float) -> bool:
    """True iff ``angle`` lies on the clockwise sweep, endpoints inclusive."""
    if not 0 <= angle < 360:
        raise ValueError(f"angle must lie in [0, 360), got {angle}")
    if interval.full_circle:
        return True
    return (angle - interval.start_deg) % 360.0 <= interval.sweep_deg


def aspect_overlaps(a: AspectInterval, b: AspectInterval) -> bool:
    """True iff some compass direction is contained in both intervals.

    Two circular arcs intersect exactly when one contains the start of
    the other, so two membership checks suffice.
    """
    if a.full_circle or b.full_circle:
        return True
    return aspect_contains(a, b.start_deg % 360.0) or aspect_contains(
        b, a.start_deg % 360.0
    )


@dataclass(frozen=True)
class AvalancheObservationReport:
    """One structured avalanche observation report."""

    report_id: str
    operation_id: str
    reported_at: datetime
    occurred_on: date
    count: AvalancheCount
    size: float
    trigger: str
    problem_type: str
    elevation: ElevationInterval
    aspect: AspectInterval
    percent_observed: int
    comment: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", float(self.size))
        if self.size not in SIZE_CLASSES:
            raise ValueError(
                f"size {self.size} not in the half-step scale {SIZE_CLASSES}"
            )
        if self.reported_at.tzinfo is None:
            raise ValueError("reported_at must be timezone-aware (UTC)")
        if self.occurred_on > self.reported_at.date():
            raise ValueError(
                f"occurred_on {self.occurred_on} is after the report "
                f"timestamp {self.reported_at}"
            )
        if not 0 <= self.percent_observed <= 100:
            raise ValueError(
                f"percent_observed must be in 0..100, got {self.percent_observed}"
            )
        if not self.report_id:
            raise ValueError("report_id must be non-empty")
        if not self.operation_id:
            raise ValueError("operation_id must be non-empty")


Ring = tuple[tuple[float, float], ...]


def _ring_self_intersects(ring: Ring) -> bool:
    """Brute-force segment intersection test; rings here are small."""
    n = len(ring)
    segs = [(ring[i], ring[(i + 1) % n]) for i in range(n)]

    def _orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return 0 if v == 0 else (1 if v > 0 else -1)

    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # shared endpoint with a neighbour is fine
            (p1, p2), (q1, q2) = segs[i], segs[j]
            if (
                _orient(p1, p2, q1) != _orient(p1, p2, q2)
                and _orient(q1, q2, p1) != _orient(q1, q2, p2)
            ):
                return True
    return False


@dataclass(frozen=True)
class OperationTenure:
    """Operating-area polygon of one avalanche safety operation.

    The first ring is the outer boundary; later rings are holes (kept for
    rendering, ignored for centroid anchoring).
    """

    operation_id: str
    rings: tuple[Ring, ...]
    display_name: str

    def __post_init__(self) -> None:
        if not self.operation_id:
            raise ValueError("operation_id must be non-empty")
        if not self.rings:
            raise ValueError("tenure needs at least one ring")
        for ring in self.rings:
            if len(ring) < 3:
                raise ValueError(f"ring with {len(ring)} vertices is degenerate")
            if _ring_self_intersects(ring):
                raise ValueError("self-intersecting tenure ring")

    @property
    def outer_ring(self) -> Ring:
        return self.rings[0]


@dataclass(frozen=True)
class WeatherReading:
    """One telemetry reading from a remote weather station.

    Missing sensor channels are None; a reading with every channel
    missing is still a reading (it counts toward gap bookkeeping).
    """

    station_id: str
    timestamp: datetime
    precip_mm: Optional[float] = None
    wind_speed_kmh: Optional[float] = None
    wind_dir_deg: Optional[float] = None
    temp_c: Optional[float] = None

    def __post_init__(self) -> None:
        if self.timestamp.tzinfo is None:
            raise ValueError("timestamp must be timezone-aware (UTC)")
        if self.precip_mm is not None and self.precip_mm < 0:
            raise ValueError(f"precip_mm must be >= 0, got {self.precip_mm}")
        if self.wind_speed_kmh is not None and self.wind_speed_kmh < 0:
            raise ValueError(f"wind_speed_kmh must be >= 0, got {self.wind_speed_kmh}")
        if self.wind_dir_deg is not None and not 0 <= self.wind_dir_deg < 360:
            raise ValueError(f"wind_dir_deg must be in [0, 360), got {self.wind_dir_deg}")


@dataclass(frozen=True)
class Vocabularies:
    """Configured trigger / problem-type token lists plus the bin table."""

    triggers: tuple[str, ...] = DEFAULT_TRIGGERS
    problem_types: tuple[str, ...] = DEFAULT_PROBLEM_TYPES
    bins: OrdinalBinTable = field(default_factory=lambda: DEFAULT_BIN_TABLE)

    def __post_init__(self) -> None:
        for name, toks in (("triggers", self.triggers), ("problem_types", self.problem_types)):
            if len(set(toks)) != len(toks):
                raise ValueError(f"duplicate tokens in {name}")
            if UNSPECIFIED not in toks:
                raise ValueError(f"{name} must include the reserved token {UNSPECIFIED!r}")
