"""Sun-position-driven sky radiance and scene lighting.

Clear sky is an elevation-dependent gradient with a warm shift that
reddens the horizon when the sun sits below 10 degrees.  Cloud conditions
modulate the clear gradient with seeded value noise; overcast and dense
fog are uniform grays (fog brighter, washing out contrast).  All colors
are linear RGB.
"""

from __future__ import annotations

import math

import numpy as np

from .grid import SkyCondition, mix64

__all__ = ["sky_radiance", "scene_lighting", "sun_direction", "fog_color", "value_noise"]

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_ZENITH = np.array([0.07, 0.32, 0.72])
_HORIZON = np.array([0.50, 0.64, 0.78])
_WARM = np.array([1.05, 0.45, 0.18])
_SUN_WHITE = np.array([1.0, 0.96, 0.88])
_SUN_LOW = np.array([1.0, 0.55, 0.25])
_OVERCAST = np.array([0.55, 0.565, 0.58])
_FOG = np.array([0.80, 0.81, 0.82])


def sun_direction(elevation_deg: float, azimuth_deg: float) -> np.ndarray:
    """Unit vector toward the sun; azimuth 0 is +z, increasing toward +x."""
    el = math.radians(elevation_deg)
    az = math.radians(azimuth_deg)
    return np.array(
        [math.sin(az) * math.cos(el), math.sin(el), math.cos(az) * math.cos(el)]
    )


def _daylight(elevation_deg: float) -> float:
    s = max(math.sin(math.radians(max(elevation_deg, 0.0))), 0.0)
    return 0.30 + 0.70 * math.sqrt(min(s / math.sin(math.radians(75.0)), 1.0))


def _warm_weight(elevation_deg: float) -> float:
    return min(max(1.0 - elevation_deg / 10.0, 0.0), 1.0)


def _hash01(ix: np.ndarray, iz: np.ndarray, seed: int) -> np.ndarray:
    h = ix.astype(np.uint64) * np.uint64(0x9E3779B97F4A7C15)
    h ^= iz.astype(np.uint64) * np.uint64(0xC2B2AE3D27D4EB4F)
    h ^= np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    with np.errstate(over="ignore"):
        h ^= h >> np.uint64(30)
        h *= np.uint64(0xBF58476D1CE4E5B9)
        h ^= h >> np.uint64(27)
        h *= np.uint64(0x94D049BB133111EB)
        h ^= h >> np.uint64(31)
    return h.astype(np.float64) * 2.0**-64


def value_noise(x: np.ndarray, y: np.ndarray, seed: int, octaves: int = 3) -> np.ndarray:
    """Seeded 2-D value noise in [0, 1], smooth-interpolated lattice hashes."""
    out = np.zeros(np.broadcast(x, y).shape)
    amp, freq, norm = 1.0, 1.0, 0.0
    for o in range(octaves):
        xs = x * freq
        ys = y * freq
        x0 = np.floor(xs)
        y0 = np.floor(ys)
        fx = xs - x0
        fy = ys - y0
        fx = fx * fx * (3.0 - 2.0 * fx)
        fy = fy * fy * (3.0 - 2.0 * fy)
        ix = x0.astype(np.int64)
        iy = y0.astype(np.int64)
        oseed = mix64(seed + o * 0x9E3779B97F4A7C15)
        n00 = _hash01(ix, iy, oseed)
        n10 = _hash01(ix + 1, iy, oseed)
        n01 = _hash01(ix, iy + 1, oseed)
        n11 = _hash01(ix + 1, iy + 1, oseed)
        n = (n00 * (1 - fx) + n10 * fx) * (1 - fy) + (n01 * (1 - fx) + n11 * fx) * fy
        out += amp * n
        norm += amp
        amp *= 0.5
        freq *= 2.0
    return out / norm


def sky_radiance(
    sun: tuple[float, float],
    sky: SkyCondition,
    view_dirs: np.ndarray,
    seed: int = 0,
) -> np.ndarray:
    """Linear RGB radiance for unit view directions, shape (..., 3)."""
    d = np.asarray(view_dirs, dtype=np.float64)
    elev, azim = sun
    sky = SkyCondition(sky)
    day = _daylight(elev)

    if sky is SkyCondition.Overcast:
        lum = 0.35 + 0.65 * day
        return np.broadcast_to(_OVERCAST * lum, d.shape).copy()
    if sky is SkyCondition.DenseFog:
        return np.broadcast_to(fog_color(elev), d.shape).copy()

    dy = np.clip(d[..., 1], -1.0, 1.0)
    t = np.clip(dy, 0.0, 1.0) ** 0.75
    base = _HORIZON + (_ZENITH - _HORIZON) * t[..., None]
    w = _warm_weight(elev)
    k = (w * (1.0 - np.clip(dy, 0.0, 1.0)) ** 3)[..., None]
    c = (base * (1.0 - k) + _WARM * k) * day

    s = sun_direction(elev, azim)
    cosg = np.clip(d @ s, 0.0, 1.0)
    sun_col = _SUN_WHITE * (1.0 - w) + _SUN_LOW * w
    glow = (np.power(cosg, 600.0) * 3.0 + np.power(cosg, 32.0) * (0.10 + 0.10 * w))[..., None]

    if sky in (SkyCondition.DynamicClouds, SkyCondition.DenseDynamicClouds):
        dense = sky is SkyCondition.DenseDynamicClouds
        az = np.arctan2(d[..., 0], d[..., 2])
        alt = np.arcsin(dy)
        n = value_noise(az * 2.2, alt * 5.0, seed, octaves=3)
        cover = 0.72 if dense else 0.45
        lo, hi = 1.0 - cover - 0.18, 1.0 - cover + 0.18
        m = np.clip((n - lo) / (hi - lo), 0.0, 1.0)
        m = m * m * (3.0 - 2.0 * m)
        m = m * np.clip((dy + 0.02) / 0.10, 0.0, 1.0)  # thin out at the horizon line
        shade = 0.52 if dense else 0.85
        cloud = (np.array([1.0, 1.0, 1.0]) * shade + _WARM * 0.25 * w) * day
        c = c * (1.0 - m[..., None]) + cloud * m[..., None]
        glow = glow * (1.0 - 0.85 * m[..., None])

    return c + sun_col * glow


def fog_color(elevation_deg: float) -> np.ndarray:
    """Uniform dense-fog radiance; also the distance-fog tint."""
    return _FOG * (0.45 + 0.55 * _daylight(elevation_deg))


def scene_lighting(
    sun: tuple[float, float], sky: SkyCondition
) -> tuple[np.ndarray, np.ndarray]:
    """(direct sun RGB, ambient RGB) used to shade ocean and hull surfaces."""
    elev, _ = sun
    sky = SkyCondition(sky)
    day = _daylight(elev)
    w = _warm_weight(elev)
    sun_col = _SUN_WHITE * (1.0 - w) + _SUN_LOW * w
    intensity = min(max(math.sin(math.radians(max(elev, 0.0))), 0.03), 1.0) * 1.15
    direct = sun_col * intensity
    ambient = (_HORIZON + _ZENITH) * 0.5 * day * 0.40
    if sky is SkyCondition.DynamicClouds:
        direct = direct * 0.75
    elif sky is SkyCondition.DenseDynamicClouds:
        direct = direct * 0.40
        ambient = ambient * 1.1
    elif sky is SkyCondition.Overcast:
        direct = _OVERCAST * 0.12 * day
        ambient = _OVERCAST * (0.35 + 0.65 * day) * 0.55
    elif sky is SkyCondition.DenseFog:
        direct = _FOG * 0.06 * day
        ambient = fog_color(elev) * 0.70
    return direct, ambient
