"""The ten scene observers: camera geometry and degradation flags.

One human topside lookout (clean view) plus nine ship-mounted cameras in
three groups of three; cameras in a group share optics and mount but
accumulate degradations, with the third of each group at doubled grit and
grain intensity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = ["Mount", "ObserverSpec", "OBSERVERS", "observer"]


class Mount(enum.Enum):
    """Mounting station on ownship; offset is (x, y, z) meters, z forward."""

    Lookout = (0.0, 16.0, 6.0)
    Forward = (0.0, 12.0, 34.0)
    Mast = (0.0, 27.0, 2.0)
    Aft = (0.0, 11.0, -42.0)

    @property
    def offset(self) -> tuple[float, float, float]:
        return self.value


@dataclass(frozen=True)
class ObserverSpec:
    id: int
    name: str
    fov_deg: float
    focal_length_mm: float
    mount: Mount
    chromatic_aberration: bool
    lens_flare: bool
    bloom: bool
    grit_level: int
    grain_level: int

    @property
    def pristine(self) -> bool:
        return not (
            self.chromatic_aberration
            or self.lens_flare
            or self.bloom
            or self.grit_level
            or self.grain_level
        )


OBSERVERS: tuple[ObserverSpec, ...] = (
    ObserverSpec(0, "Topside Lookout", 31.0, 54.7, Mount.Lookout, False, False, False, 0, 0),
    ObserverSpec(1, "Forward Camera 1", 33.2, 58.7, Mount.Forward, True, False, False, 0, 1),
    ObserverSpec(2, "Forward Camera 2", 33.2, 58.7, Mount.Forward, True, False, True, 1, 1),
    ObserverSpec(3, "Forward Camera 3", 33.2, 58.7, Mount.Forward, True, True, True, 2, 2),
    ObserverSpec(4, "Mast Camera 1", 22.0, 58.7, Mount.Mast, True, False, False, 0, 1),
    ObserverSpec(5, "Mast Camera 2", 22.0, 58.7, Mount.Mast, True, True, True, 1, 1),
    ObserverSpec(6, "Mast Camera 3", 22.0, 58.7, Mount.Mast, True, True, True, 2, 2),
    ObserverSpec(7, "Aft Camera 1", 53.1, 35.0, Mount.Aft, True, False, False, 0, 1),
    ObserverSpec(8, "Aft Camera 2", 53.1, 35.0, Mount.Aft, True, True, True, 1, 1),
    ObserverSpec(9, "Aft Camera 3", 53.1, 35.0, Mount.Aft, True, True, True, 2, 2),
)

_BY_NAME = {o.name: o for o in OBSERVERS}


def observer(key: int | str) -> ObserverSpec:
    """Look up an observer by id or exact name."""
    if isinstance(key, str):
        try:
            return _BY_NAME[key]
        except KeyError:
            raise ValueError(f"unknown observer {key!r}") from None
    if not 0 <= key < len(OBSERVERS):
        raise ValueError(f"unknown observer id {key!r}")
    return OBSERVERS[key]
