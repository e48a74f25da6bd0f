"""Procedural hull archetypes for the ten vessel classes.

Each archetype is a closed triangle soup in vessel-local coordinates
(x forward toward the bow, y up, z to starboard, waterline at y = 0)
assembled from boxes plus a raked bow wedge, with a class-distinctive
superstructure or deck cargo.  Ballast and full-load variants of the same
hull share all geometry and differ only in how high the hull sits.

Silhouettes are deliberately exaggerated; these stand in for commercial
3-D ship models, and class identity is metadata only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import VesselClass

__all__ = ["HullGeometry", "vessel_archetype"]

# Albedos, linear RGB.
_HULL_DARK = (0.060, 0.065, 0.080)
_HULL_RUST = (0.110, 0.045, 0.035)
_DECK = (0.16, 0.17, 0.18)
_HOUSE = (0.62, 0.63, 0.65)
_TANK = (0.55, 0.50, 0.45)
_CRANE = (0.45, 0.35, 0.12)
_BOX_COLORS = (
    (0.35, 0.10, 0.08),
    (0.10, 0.22, 0.35),
    (0.30, 0.26, 0.08),
    (0.12, 0.28, 0.14),
    (0.28, 0.28, 0.28),
)


@dataclass(frozen=True)
class HullGeometry:
    vessel: VesselClass
    triangles: np.ndarray  # (M, 3, 3) float64, vessel-local meters
    albedo: np.ndarray  # (M, 3) linear RGB per triangle
    length_overall_m: float
    freeboard_m: float

    @property
    def max_height_m(self) -> float:
        return float(self.triangles[..., 1].max())


class _Mesh:
    def __init__(self) -> None:
        self.tris: list[np.ndarray] = []
        self.cols: list[tuple[float, float, float]] = []

    def add_tri(self, a, b, c, color) -> None:
        self.tris.append(np.array([a, b, c], dtype=np.float64))
        self.cols.append(color)

    def add_quad(self, a, b, c, d, color) -> None:
        self.add_tri(a, b, c, color)
        self.add_tri(a, c, d, color)

    def add_box(self, x0, x1, y0, y1, z0, z1, color) -> None:
        """Axis-aligned closed box spanning the given extents."""
        p = lambda x, y, z: (x, y, z)
        # -z / +z faces
        self.add_quad(p(x0, y0, z0), p(x1, y0, z0), p(x1, y1, z0), p(x0, y1, z0), color)
        self.add_quad(p(x0, y0, z1), p(x0, y1, z1), p(x1, y1, z1), p(x1, y0, z1), color)
        # -x / +x faces
        self.add_quad(p(x0, y0, z0), p(x0, y1, z0), p(x0, y1, z1), p(x0, y0, z1), color)
        self.add_quad(p(x1, y0, z0), p(x1, y0, z1), p(x1, y1, z1), p(x1, y1, z0), color)
        # bottom / top faces
        self.add_quad(p(x0, y0, z0), p(x0, y0, z1), p(x1, y0, z1), p(x1, y0, z0), color)
        self.add_quad(p(x0, y1, z0), p(x1, y1, z0), p(x1, y1, z1), p(x0, y1, z1), color)

    def add_bow(self, x0, y0, y1, z_half, length, rake, color) -> None:
        """Closed raked wedge from the hull shoulder at x0 to the stem."""
        tip_top = (x0 + length, y1, 0.0)
        tip_bot = (x0 + length - rake, y0, 0.0)
        sp = (x0, y0, z_half)
        st = (x0, y1, z_half)
        pp = (x0, y0, -z_half)
        pt = (x0, y1, -z_half)
        self.add_quad(sp, tip_bot, tip_top, st, color)  # starboard flank
        self.add_quad(pp, pt, tip_top, tip_bot, color)  # port flank
        self.add_tri(st, tip_top, pt, color)  # deck wedge
        self.add_tri(sp, pp, tip_bot, color)  # bottom wedge
        self.add_quad(sp, st, pt, pp, color)  # shoulder (closes the hull box)

    def build(self, vessel, loa, freeboard) -> HullGeometry:
        return HullGeometry(
            vessel,
            np.stack(self.tris),
            np.array(self.cols, dtype=np.float64),
            loa,
            freeboard,
        )


def _base_hull(m: _Mesh, loa, beam, depth, freeboard, bow_frac=0.16, rake_frac=0.6):
    """Hull box plus bow wedge; returns (x_stern, x_shoulder, deck_y)."""
    draft = depth - freeboard
    bow_len = bow_frac * loa
    x_stern = -loa / 2.0
    x_shoulder = loa / 2.0 - bow_len
    m.add_box(x_stern, x_shoulder, -draft, freeboard, -beam / 2.0, beam / 2.0, _HULL_DARK)
    m.add_bow(x_shoulder, -draft, freeboard, beam / 2.0, bow_len, rake_frac * bow_len, _HULL_RUST)
    # Thin deck slab so top-down views read as deck, not hull paint.
    m.add_box(x_stern, x_shoulder, freeboard, freeboard + 0.3, -beam / 2.0, beam / 2.0, _DECK)
    return x_stern, x_shoulder, freeboard + 0.3


def _house(m: _Mesh, x0, x1, deck, height, z_half, bridge=True):
    m.add_box(x0, x1, deck, deck + height, -z_half, z_half, _HOUSE)
    if bridge:
        w = (x1 - x0) * 0.8
        cx = (x0 + x1) / 2.0
        m.add_box(cx - w / 2, cx + w / 2, deck + height, deck + height + 2.2,
                  -z_half * 1.1, z_half * 1.1, _HOUSE)


def _crane(m: _Mesh, x, deck, post_h, boom_len, z=0.0):
    m.add_box(x - 0.9, x + 0.9, deck, deck + post_h, z - 0.9, z + 0.9, _CRANE)
    m.add_box(x - 0.7, x + boom_len, deck + post_h - 1.4, deck + post_h,
              z - 0.7, z + 0.7, _CRANE)


def _container_stacks(m: _Mesh, bays, x0, x1, deck, z_half, bay_heights):
    xs = np.linspace(x0, x1, bays + 1)
    gap = 1.2
    for i in range(bays):
        h = bay_heights[i % len(bay_heights)]
        if h <= 0:
            continue
        m.add_box(xs[i] + gap, xs[i + 1] - gap, deck, deck + h,
                  -z_half, z_half, _BOX_COLORS[i % len(_BOX_COLORS)])


@lru_cache(maxsize=None)
def vessel_archetype(vessel: VesselClass) -> HullGeometry:
    """Deterministic procedural hull for a vessel class."""
    vessel = VesselClass(vessel)
    m = _Mesh()

    if vessel is VesselClass.LngTanker:
        loa, beam, depth, fb = 150.0, 26.0, 13.0, 9.0
        xs, xsh, deck = _base_hull(m, loa, beam, depth, fb)
        for i, cx in enumerate(np.linspace(xs + 24, xsh - 14, 4)):
            r = 9.0
            m.add_box(cx - r, cx + r, deck, deck + 5.5, -r, r, _TANK)
            m.add_box(cx - r * 0.62, cx + r * 0.62, deck + 5.5, deck + 9.0,
                      -r * 0.62, r * 0.62, _TANK)
        _house(m, xs + 3, xs + 15, deck, 10.0, beam * 0.40)
        return m.build(vessel, loa, fb)

    if vessel is VesselClass.OilTanker:
        loa, beam, depth, fb = 165.0, 28.0, 12.0, 6.0
        xs, xsh, deck = _base_hull(m, loa, beam, depth, fb)
        m.add_box(xs + 20, xsh - 6, deck, deck + 1.8, -2.0, 2.0, _DECK)  # pipe run
        m.add_box(-4.0, -1.0, deck, deck + 9.0, -1.5, 1.5, _CRANE)  # kingpost
        m.add_box(24.0, 27.0, deck, deck + 9.0, -1.5, 1.5, _CRANE)
        _house(m, xs + 2, xs + 16, deck, 13.0, beam * 0.38)
        return m.build(vessel, loa, fb)

    if vessel in (VesselClass.Container1Ballast, VesselClass.Container1Full):
        loa, beam, depth = 140.0, 23.0, 12.5
        fb = 8.5 if vessel is VesselClass.Container1Ballast else 4.0
        xs, xsh, deck = _base_hull(m, loa, beam, depth, fb)
        _container_stacks(m, 5, xs + 18, xsh - 2, deck, beam * 0.42,
                          (7.5, 12.5, 15.0, 10.0, 13.0))
        _house(m, xs + 3, xs + 16, deck, 16.0, beam * 0.36)
        return m.build(vessel, loa, fb)

    if vessel in (VesselClass.Container2Ballast, VesselClass.Container2Full):
        loa, beam, depth = 105.0, 18.0, 9.5
        fb = 6.5 if vessel is VesselClass.Container2Ballast else 2.8
        xs, xsh, deck = _base_hull(m, loa, beam, depth, fb, bow_frac=0.20)
        _house(m, xsh - 16, xsh - 4, deck, 12.0, beam * 0.38)  # forward house
        _container_stacks(m, 4, xs + 4, xsh - 20, deck, beam * 0.42,
                          (10.0, 5.5, 8.5, 4.5))
        return m.build(vessel, loa, fb)

    if vessel is VesselClass.Cargo1:
        loa, beam, depth, fb = 115.0, 19.0, 9.0, 5.5
        xs, xsh, deck = _base_hull(m, loa, beam, depth, fb)
        _house(m, -8.0, 6.0, deck, 11.0, beam * 0.36)  # midship house
        _crane(m, xs + 18, deck, 15.0, 13.0)
        _crane(m, xsh - 14, deck, 15.0, -13.0)
        m.add_box(xs + 26, -12.0, deck, deck + 2.8, -beam * 0.3, beam * 0.3, _DECK)
        return m.build(vessel, loa, fb)

    if vessel is VesselClass.Cargo2:
        loa, beam, depth, fb = 92.0, 16.0, 8.0, 4.5
        xs, xsh, deck = _base_hull(m, loa, beam, depth, fb)
        _house(m, xs + 2, xs + 14, deck, 10.0, beam * 0.40)
        _crane(m, 10.0, deck, 13.0, 11.0)
        m.add_box(xsh - 12, xsh, deck, deck + 2.2, -beam * 0.42, beam * 0.42, _HULL_DARK)
        return m.build(vessel, loa, fb)

    if vessel is VesselClass.Cargo3:
        loa, beam, depth, fb = 72.0, 14.0, 7.0, 4.0
        xs, xsh, deck = _base_hull(m, loa, beam, depth, fb, bow_frac=0.18)
        _house(m, -7.0, 5.0, deck, 13.0, beam * 0.32)
        m.add_box(xs + 8, xs + 10, deck, deck + 9.5, -1.0, 1.0, _CRANE)  # derricks
        m.add_box(xsh - 8, xsh - 6, deck, deck + 9.5, -1.0, 1.0, _CRANE)
        return m.build(vessel, loa, fb)

    # Barge: low flat hull, nothing above the deck clearance threshold.
    loa, beam, depth, fb = 60.0, 16.0, 4.5, 2.2
    xs, xsh, deck = _base_hull(m, loa, beam, depth, fb, bow_frac=0.10, rake_frac=1.0)
    m.add_box(xs + 4, xsh - 2, deck, deck + 1.2, -beam * 0.44, beam * 0.44, _HULL_RUST)
    return m.build(vessel, loa, fb)
