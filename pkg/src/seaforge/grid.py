"""Scene grid: generation dimensions, sweep enumeration, seeds, zone labels.

The dataset is the Cartesian product of six dimensions (vessel class,
relative heading, sun position, sky condition, sea state, observer),
1,000,000 scenes at the default selectors.  Every piece of randomness in
the pipeline flows from a per-scene 64-bit seed derived here, so any
slice of the grid can be regenerated independently and reproducibly on
any machine.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Sequence

import numpy as np

__all__ = [
    "ConfigError",
    "VesselClass",
    "SkyCondition",
    "Zone",
    "SunPosition",
    "SceneSpec",
    "SweepConfig",
    "HEADINGS",
    "ALL_SUN_POSITIONS",
    "SEA_STATE_CODES",
    "SEA_STATE_HS_BANDS",
    "OBSERVER_IDS",
    "DEFAULT_ZONE_MAP",
    "heading_index",
    "heading_zone",
    "sun_angles",
    "hs_band",
    "hs_midpoint",
    "mix64",
    "derive_seed",
    "unit_float",
    "scene_seed",
    "grid_index",
    "grid_seeds",
    "enumerate_sweep",
    "sweep_count",
]


class ConfigError(ValueError):
    """Invalid sweep or pipeline configuration."""


class VesselClass(enum.IntEnum):
    """Ten commercial vessel classes.

    The integer value is the stable code used in seeds; the member name is
    the stable string used in manifests and configuration files.
    """

    LngTanker = 0
    OilTanker = 1
    Container1Ballast = 2
    Container1Full = 3
    Container2Ballast = 4
    Container2Full = 5
    Cargo1 = 6
    Cargo2 = 7
    Cargo3 = 8
    Barge = 9


class SkyCondition(enum.IntEnum):
    Clear = 0
    DynamicClouds = 1
    DenseDynamicClouds = 2
    Overcast = 3
    DenseFog = 4


class Zone(enum.IntEnum):
    """Collision-danger zones, ordered by decreasing danger."""

    Zone0 = 0  # imminent collision
    Zone1 = 1  # collision danger
    Zone2 = 2  # safe maneuvering
    Zone3 = 3  # no danger


#: The 20 relative headings, ascending.  Index in this tuple is the stable
#: heading code used in seed derivation and enumeration order.
HEADINGS: tuple[int, ...] = (
    -160, -135, -120, -90, -60, -45, -30, -15, -5,
    0, 5, 15, 30, 45, 60, 90, 120, 135, 160, 180,
)
_HEADING_INDEX = {h: i for i, h in enumerate(HEADINGS)}

#: Default heading -> zone table.  0 deg is bow-on (head-on approach);
#: danger falls off monotonically with |heading|; stern aspects move away.
DEFAULT_ZONE_MAP: Mapping[int, Zone] = {
    h: (
        Zone.Zone0 if abs(h) <= 5
        else Zone.Zone1 if abs(h) <= 45
        else Zone.Zone2 if abs(h) <= 120
        else Zone.Zone3
    )
    for h in HEADINGS
}


def heading_index(heading_deg: int) -> int:
    """Stable 0-19 code for a heading; rejects values outside the grid."""
    try:
        return _HEADING_INDEX[heading_deg]
    except KeyError:
        raise ConfigError(
            f"heading {heading_deg!r} is not one of the 20 grid headings"
        ) from None


def heading_zone(heading_deg: int, zone_map: Mapping[int, Zone] | None = None) -> Zone:
    """Map a grid heading to its collision-danger zone.

    `zone_map` overrides the default table; it must cover the heading.
    """
    heading_index(heading_deg)
    table = DEFAULT_ZONE_MAP if zone_map is None else zone_map
    try:
        return Zone(table[heading_deg])
    except KeyError:
        raise ConfigError(f"zone map does not cover heading {heading_deg}") from None


class SunPosition(NamedTuple):
    """One of the 4 x 5 = 20 light-source stations."""

    path: int
    station: int


ALL_SUN_POSITIONS: tuple[SunPosition, ...] = tuple(
    SunPosition(p, s) for p in range(4) for s in range(5)
)

# Dawn / morning / noon / afternoon / dusk elevations along each path.
_SUN_ELEVATION_BY_STATION = (2.0, 30.0, 75.0, 30.0, 2.0)


def sun_angles(sun: SunPosition) -> tuple[float, float]:
    """(elevation_deg, azimuth_deg) for a sun station.

    Elevation is a per-station table; azimuth advances 40 deg per station
    along a path, with paths offset by 45 deg.
    """
    path, station = sun
    if not (0 <= path <= 3 and 0 <= station <= 4):
        raise ConfigError(f"invalid sun position {sun!r}")
    elevation = _SUN_ELEVATION_BY_STATION[station]
    azimuth = 45.0 * path + 40.0 * (station - 2)
    return elevation, azimuth


#: WMO sea-state code -> significant-wave-height band (meters).
SEA_STATE_HS_BANDS: Mapping[int, tuple[float, float]] = {
    2: (0.1, 0.5),
    3: (0.5, 1.25),
    4: (1.25, 2.5),
    5: (2.5, 4.0),
    6: (4.0, 6.0),
}
SEA_STATE_CODES: tuple[int, ...] = tuple(sorted(SEA_STATE_HS_BANDS))

OBSERVER_IDS: tuple[int, ...] = tuple(range(10))


def hs_band(sea_code: int) -> tuple[float, float]:
    try:
        return SEA_STATE_HS_BANDS[sea_code]
    except KeyError:
        raise ConfigError(f"invalid sea-state code {sea_code!r}") from None


def hs_midpoint(sea_code: int) -> float:
    lo, hi = hs_band(sea_code)
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class SceneSpec:
    """One point of the generation grid."""

    vessel: VesselClass
    heading_deg: int
    sun: SunPosition
    sky: SkyCondition
    sea_state: int
    observer: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "vessel", VesselClass(self.vessel))
        object.__setattr__(self, "sun", SunPosition(*self.sun))
        object.__setattr__(self, "sky", SkyCondition(self.sky))
        heading_index(self.heading_deg)
        sun_angles(self.sun)
        hs_band(self.sea_state)
        if self.observer not in OBSERVER_IDS:
            raise ConfigError(f"invalid observer id {self.observer!r}")

    @property
    def zone(self) -> Zone:
        return heading_zone(self.heading_deg)


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a fixed 64-bit avalanche permutation.

    This is the single mixing primitive behind all seed derivation; it is
    pure integer arithmetic, identical on every platform and release.
    """
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, *tags: int) -> int:
    """Derive an independent substream seed from `seed` and integer tags."""
    h = seed & _MASK64
    for t in tags:
        h = mix64((h ^ (t & _MASK64)) + _GOLDEN)
    return h


def unit_float(seed: int, k: int) -> float:
    """k-th deterministic uniform draw in [0, 1) for a seed."""
    return mix64(seed + k * _GOLDEN) * 2.0**-64


def grid_index(spec: SceneSpec) -> int:
    """Rank of a spec in the full-grid enumeration order."""
    idx = int(spec.vessel)
    idx = idx * 20 + heading_index(spec.heading_deg)
    idx = idx * 20 + (spec.sun.path * 5 + spec.sun.station)
    idx = idx * 5 + int(spec.sky)
    idx = idx * 5 + SEA_STATE_CODES.index(spec.sea_state)
    idx = idx * 10 + spec.observer
    return idx


def scene_seed(spec: SceneSpec, master_seed: int = 0) -> int:
    """64-bit seed for one scene.

    seed = mix64(mix64(master_seed ^ GOLDEN) + grid_index).  The outer
    mix64 is a bijection, so seeds are injective over the grid for any
    fixed master seed.
    """
    base = mix64(master_seed ^ _GOLDEN)
    return mix64(base + grid_index(spec))


def grid_seeds(master_seed: int = 0) -> np.ndarray:
    """Seeds for every spec of the full default grid, in enumeration order.

    Vectorized equivalent of `scene_seed`; used for exhaustive collision
    checks.  Returns a (1_000_000,) uint64 array.
    """
    base = np.uint64(mix64(master_seed ^ _GOLDEN))
    idx = np.arange(1_000_000, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = base + idx
        x ^= x >> np.uint64(30)
        x *= np.uint64(0xBF58476D1CE4E5B9)
        x ^= x >> np.uint64(27)
        x *= np.uint64(0x94D049BB133111EB)
        x ^= x >> np.uint64(31)
    return x


def _unique(name: str, values: Sequence, full: Sequence) -> tuple:
    vals = tuple(values)
    if not vals:
        raise ConfigError(f"selector {name!r} is empty")
    if len(set(vals)) != len(vals):
        raise ConfigError(f"selector {name!r} contains duplicates")
    full_set = set(full)
    for v in vals:
        if v not in full_set:
            raise ConfigError(f"selector {name!r} has invalid value {v!r}")
    return vals


@dataclass(frozen=True)
class SweepConfig:
    """Per-dimension subset selectors plus the master seed.

    Defaults select the full grid.  Selector order is irrelevant;
    enumeration always follows the fixed lexicographic dimension order
    (vessel, heading, sun, sky, sea, observer), each dimension sorted by
    its stable code.
    """

    vessels: tuple[VesselClass, ...] = tuple(VesselClass)
    headings: tuple[int, ...] = HEADINGS
    suns: tuple[SunPosition, ...] = ALL_SUN_POSITIONS
    skies: tuple[SkyCondition, ...] = tuple(SkyCondition)
    sea_states: tuple[int, ...] = SEA_STATE_CODES
    observers: tuple[int, ...] = OBSERVER_IDS
    master_seed: int = 0
    zone_map: Mapping[int, Zone] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "vessels",
            tuple(VesselClass(v) for v in _unique("vessels", self.vessels, tuple(VesselClass))),
        )
        object.__setattr__(
            self, "headings", _unique("headings", self.headings, HEADINGS)
        )
        object.__setattr__(
            self, "suns",
            tuple(SunPosition(*s) for s in _unique(
                "suns", [SunPosition(*s) for s in self.suns], ALL_SUN_POSITIONS)),
        )
        object.__setattr__(
            self, "skies",
            tuple(SkyCondition(s) for s in _unique("skies", self.skies, tuple(SkyCondition))),
        )
        object.__setattr__(
            self, "sea_states", _unique("sea_states", self.sea_states, SEA_STATE_CODES)
        )
        object.__setattr__(
            self, "observers", _unique("observers", self.observers, OBSERVER_IDS)
        )
        if not (0 <= self.master_seed <= _MASK64):
            raise ConfigError("master_seed must be an unsigned 64-bit integer")
        if self.zone_map is not None:
            zm = {int(h): Zone(z) for h, z in self.zone_map.items()}
            for h in self.headings:
                if h not in zm:
                    raise ConfigError(f"zone map does not cover heading {h}")
            object.__setattr__(self, "zone_map", zm)


def enumerate_sweep(cfg: SweepConfig) -> Iterator[SceneSpec]:
    """Yield the configured sweep in the fixed lexicographic order.

    Two runs over the same config produce the identical sequence.
    """
    vessels = sorted(cfg.vessels, key=int)
    headings = sorted(cfg.headings, key=heading_index)
    suns = sorted(cfg.suns)
    skies = sorted(cfg.skies, key=int)
    seas = sorted(cfg.sea_states)
    observers = sorted(cfg.observers)
    for vessel, heading, sun, sky, sea, obs in itertools.product(
        vessels, headings, suns, skies, seas, observers
    ):
        yield SceneSpec(vessel, heading, sun, sky, sea, obs)


def sweep_count(cfg: SweepConfig) -> int:
    """Number of specs the sweep will enumerate, without enumerating."""
    return (
        len(cfg.vessels)
        * len(cfg.headings)
        * len(cfg.suns)
        * len(cfg.skies)
        * len(cfg.sea_states)
        * len(cfg.observers)
    )
