"""Pristine-frame renderer: ocean, sky, and hull through a pinhole camera.

A frame is produced in three passes: per-pixel intersection of view rays
with the displaced ocean surface (bisection against the analytic height
field), sky radiance for rays that clear the surface, and a z-buffered
triangle raster of the hull archetype composited against the ocean depth.
Working precision is linear float; the buffer is quantized once at the
end.  Everything is a pure function of the scene spec and master seed.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import SceneSpec, SkyCondition, derive_seed, scene_seed, sun_angles, unit_float
from .hulls import HullGeometry, vessel_archetype
from .observers import OBSERVERS
from .ocean import OceanField, ocean_field, ocean_gradient, ocean_height
from .sky import fog_color, scene_lighting, sky_radiance, sun_direction

__all__ = [
    "IMAGE_SIZE",
    "GAMMA",
    "CameraModel",
    "ImageBuffer",
    "SceneParams",
    "InternalFaultError",
    "derive_scene_params",
    "render_frame",
    "render_scene",
    "render_vessel_mask",
    "sun_screen_position",
]

IMAGE_SIZE = 384
GAMMA = 2.2

_RANGE_MIN_M = 400.0
_RANGE_MAX_M = 2000.0
_JITTER_FRAC = 0.05
_FOG_SCALE_M = 800.0
_HAZE_SCALE_M = 16000.0
_FAR_LIMIT_M = 30000.0
_TRACE_STEPS = 10

_TAG_OCEAN = 0x0CEA
_TAG_SKY = 0x5C1E
_TAG_PLACE = 0x91AC

_WATER_ALBEDO = np.array([0.02, 0.11, 0.14])


class InternalFaultError(RuntimeError):
    """A geometric invariant the generator guarantees was violated."""


@dataclass(frozen=True)
class CameraModel:
    """Pinhole camera; square pixels, so horizontal FOV equals vertical."""

    fov_deg: float
    focal_length_mm: float
    position: tuple[float, float, float]
    pitch_rad: float  # positive pitches the view down

    def __post_init__(self) -> None:
        if not 0.0 < self.fov_deg < 180.0:
            raise ValueError(f"fov_deg must be in (0, 180), got {self.fov_deg}")

    @property
    def half_tan(self) -> float:
        return math.tan(math.radians(self.fov_deg) / 2.0)


@dataclass(frozen=True)
class ImageBuffer:
    """A rendered 384 x 384 RGB frame, 8 bits per channel."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        p = self.pixels
        if p.shape != (IMAGE_SIZE, IMAGE_SIZE, 3) or p.dtype != np.uint8:
            raise ValueError("image buffer must be (384, 384, 3) uint8")
        p.flags.writeable = False

    @classmethod
    def from_unit(cls, unit: np.ndarray) -> "ImageBuffer":
        return cls((np.clip(unit, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8))

    @classmethod
    def from_linear(cls, linear: np.ndarray) -> "ImageBuffer":
        return cls.from_unit(np.clip(linear, 0.0, None) ** (1.0 / GAMMA))

    def to_unit(self) -> np.ndarray:
        return self.pixels.astype(np.float64) / 255.0

    def to_linear(self) -> np.ndarray:
        return self.to_unit() ** GAMMA

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    @property
    def width(self) -> int:
        return IMAGE_SIZE

    @property
    def height(self) -> int:
        return IMAGE_SIZE


@dataclass(frozen=True)
class SceneParams:
    """Everything render_frame needs, fully derived from a SceneSpec."""

    seed: int
    sun: tuple[float, float]
    sky: SkyCondition
    sky_seed: int
    ocean: OceanField
    hull: HullGeometry
    heading_deg: float
    range_m: float
    lateral_m: float
    camera: CameraModel
    aim_height_m: float
    specular_gain: float = 0.9
    specular_power: int = 200

    @property
    def target_z(self) -> float:
        return self.camera.position[2] + self.range_m

    def mirrored(self) -> "SceneParams":
        """Scene reflected across the vertical camera plane.

        Mirrors the dominant wave direction and the lateral jitter and
        negates heading and sun azimuth; rendering this must produce the
        horizontal mirror image of the original.
        """
        return dataclasses.replace(
            self,
            ocean=self.ocean.mirrored(),
            heading_deg=-self.heading_deg,
            lateral_m=-self.lateral_m,
            sun=(self.sun[0], -self.sun[1]),
        )


def derive_scene_params(spec: SceneSpec, master_seed: int = 0) -> SceneParams:
    seed = scene_seed(spec, master_seed)
    obs = OBSERVERS[spec.observer]
    hull = vessel_archetype(spec.vessel)
    place = derive_seed(seed, _TAG_PLACE)
    range_m = _RANGE_MIN_M + (_RANGE_MAX_M - _RANGE_MIN_M) * unit_float(place, 0)
    camera, lateral_m, aim_y = _camera_for(obs, hull, range_m, place)
    return SceneParams(
        seed=seed,
        sun=sun_angles(spec.sun),
        sky=spec.sky,
        sky_seed=derive_seed(seed, _TAG_SKY),
        ocean=ocean_field(spec.sea_state, derive_seed(seed, _TAG_OCEAN)),
        hull=hull,
        heading_deg=float(spec.heading_deg),
        range_m=range_m,
        lateral_m=lateral_m,
        camera=camera,
        aim_height_m=aim_y,
    )


def _camera_for(obs, hull: HullGeometry, range_m: float, place_seed: int):
    half = math.tan(math.radians(obs.fov_deg) / 2.0)
    jitter = _JITTER_FRAC * (2.0 * unit_float(place_seed, 1) - 1.0)
    lateral_m = jitter * 2.0 * range_m * half  # <= 5% of frame width at range
    aim_y = 0.45 * hull.max_height_m
    mount = obs.mount.offset
    pitch = math.atan2(mount[1] - aim_y, range_m)
    camera = CameraModel(obs.fov_deg, obs.focal_length_mm, mount, pitch)
    return camera, lateral_m, aim_y


def sun_screen_position(params: SceneParams) -> tuple[float, float] | None:
    """Sun position in normalized screen coordinates, or None if off-screen.

    Coordinates are in half-frame units: (0, 0) is the frame center,
    (+-1, +-1) the frame edges, y up.
    """
    s = sun_direction(*params.sun)
    th = params.camera.pitch_rad
    cy = s[1] * math.cos(th) + s[2] * math.sin(th)
    cz = -s[1] * math.sin(th) + s[2] * math.cos(th)
    cx = s[0]
    if cz <= 0.0:
        return None
    half = params.camera.half_tan
    sx = (cx / cz) / half
    sy = (cy / cz) / half
    if abs(sx) > 1.0 or abs(sy) > 1.0:
        return None
    return (float(sx), float(sy))


@lru_cache(maxsize=8)
def _ray_basis(half_tan: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-pixel camera-space ray components and inverse-z distance factors."""
    n = IMAGE_SIZE
    u = ((np.arange(n, dtype=np.float64) + 0.5) - n / 2.0) / (n / 2.0)
    v = (n / 2.0 - (np.arange(n, dtype=np.float64) + 0.5)) / (n / 2.0)
    cx = np.broadcast_to(u[None, :] * half_tan, (n, n))
    cy = np.broadcast_to(v[:, None] * half_tan, (n, n))
    dist_factor = np.sqrt(1.0 + cx * cx + cy * cy)  # distance = z_cam * factor
    return cx, cy, dist_factor


def _world_rays(camera: CameraModel) -> tuple[np.ndarray, np.ndarray]:
    cx, cy, dist_factor = _ray_basis(camera.half_tan)
    th = camera.pitch_rad
    cos_t, sin_t = math.cos(th), math.sin(th)
    wx = cx
    wy = cy * cos_t - sin_t
    wz = cy * sin_t + cos_t
    norm = dist_factor
    d = np.stack([wx / norm, wy / norm, wz / norm], axis=-1)
    return d, dist_factor


def _ipow(x: np.ndarray, n: int) -> np.ndarray:
    """x ** n for integer n via repeated squaring (fast on arrays)."""
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else result * base
        base = base * base
        n >>= 1
    return result if result is not None else np.ones_like(x)


def _trace_ocean(
    field: OceanField, origin: np.ndarray, dirs: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """First ocean-surface hit distance per ray (inf where the ray misses).

    Rays are bracketed between the planes y = +-(sum of amplitudes) and
    refined by bisection; the surface lies strictly inside the bracket, so
    every downward ray inside the far limit converges.
    """
    flat = dirs.reshape(-1, 3)
    dy = flat[:, 1]
    t_hit = np.full(flat.shape[0], np.inf)
    amp = field.amplitude_sum
    if amp == 0.0:
        amp = 1e-6
    going_down = dy < -1e-6
    oy = origin[1]
    with np.errstate(divide="ignore", invalid="ignore"):
        t_lo_all = (oy - amp) / (-dy)
        t_hi_all = (oy + amp) / (-dy)
    candidates = going_down & (t_lo_all < _FAR_LIMIT_M)
    idx = np.nonzero(candidates)[0]
    if idx.size == 0:
        return t_hit.reshape(dirs.shape[:2]), candidates.reshape(dirs.shape[:2])

    d = flat[idx]
    t_lo = t_lo_all[idx]
    t_hi = t_hi_all[idx]
    for _ in range(_TRACE_STEPS):
        t_mid = 0.5 * (t_lo + t_hi)
        px = origin[0] + t_mid * d[:, 0]
        pz = origin[2] + t_mid * d[:, 2]
        py = oy + t_mid * d[:, 1]
        above = py > ocean_height(field, px, pz)
        t_lo = np.where(above, t_mid, t_lo)
        t_hi = np.where(above, t_hi, t_mid)
    t_hit[idx] = 0.5 * (t_lo + t_hi)
    return t_hit.reshape(dirs.shape[:2]), candidates.reshape(dirs.shape[:2])


def _shade_ocean(params: SceneParams, origin, dirs, t_hit, hit_mask) -> np.ndarray:
    """Linear RGB for ocean-hit pixels (flat array over hit_mask)."""
    d = dirs[hit_mask]
    t = t_hit[hit_mask]
    px = origin[0] + t * d[:, 0]
    pz = origin[2] + t * d[:, 2]

    gx, gz = ocean_gradient(params.ocean, px, pz)
    lod = 1.0 / (1.0 + t / 4000.0)
    gx *= lod
    gz *= lod
    inv = 1.0 / np.sqrt(gx * gx + gz * gz + 1.0)
    nx, ny, nz = -gx * inv, inv, -gz * inv

    cos_i = np.clip(-(d[:, 0] * nx + d[:, 1] * ny + d[:, 2] * nz), 0.0, 1.0)
    fresnel = 0.02 + 0.98 * (1.0 - cos_i) ** 5

    dot2 = 2.0 * (d[:, 0] * nx + d[:, 1] * ny + d[:, 2] * nz)
    r = np.stack(
        [d[:, 0] - dot2 * nx, np.abs(d[:, 1] - dot2 * ny), d[:, 2] - dot2 * nz],
        axis=-1,
    )
    reflected = sky_radiance(params.sun, params.sky, r, params.sky_seed)

    direct, ambient = scene_lighting(params.sun, params.sky)
    s = sun_direction(*params.sun)
    diff = np.clip(nx * s[0] + ny * s[1] + nz * s[2], 0.0, 1.0)
    body = _WATER_ALBEDO * (ambient + direct * 0.6 * diff[:, None])

    color = body * (1.0 - fresnel[:, None]) + reflected * fresnel[:, None]
    if params.sky not in (SkyCondition.Overcast, SkyCondition.DenseFog):
        spec = _ipow(np.clip(r @ s, 0.0, 1.0), params.specular_power)
        color = color + (direct * params.specular_gain) * spec[:, None]
    return color


def _hull_world_triangles(params: SceneParams) -> tuple[np.ndarray, np.ndarray]:
    """Hull triangles in world space plus per-triangle shaded colors."""
    tris = params.hull.triangles
    # Vessel-local (x fwd, y up, z stbd); at heading 0 the bow faces the
    # camera (-z world) and starboard maps to +x world.
    wx = tris[..., 2]
    wy = tris[..., 1]
    wz = -tris[..., 0]
    psi = math.radians(params.heading_deg)
    c, s = math.cos(psi), math.sin(psi)
    rx = wx * c + wz * s
    rz = -wx * s + wz * c
    world = np.stack([rx + params.lateral_m, wy, rz + params.target_z], axis=-1)

    e1 = world[:, 1] - world[:, 0]
    e2 = world[:, 2] - world[:, 0]
    n = np.cross(e1, e2)
    n_len = np.linalg.norm(n, axis=1, keepdims=True)
    n = n / np.maximum(n_len, 1e-12)
    centroid = world.mean(axis=1)
    to_cam = np.asarray(params.camera.position) - centroid
    flip = (n * to_cam).sum(axis=1) < 0.0
    n[flip] = -n[flip]

    direct, ambient = scene_lighting(params.sun, params.sky)
    sdir = sun_direction(*params.sun)
    diff = np.clip(n @ sdir, 0.0, 1.0)
    hemi = 0.6 + 0.4 * np.clip(n[:, 1], 0.0, 1.0)
    shade = ambient[None, :] * hemi[:, None] + direct[None, :] * diff[:, None]
    colors = params.hull.albedo * shade
    return world, colors


def _rasterize_hull(params: SceneParams) -> tuple[np.ndarray, np.ndarray]:
    """(distance buffer, linear color buffer) for the hull raster."""
    world, colors = _hull_world_triangles(params)
    cam = np.asarray(params.camera.position)
    rel = world - cam
    th = params.camera.pitch_rad
    cos_t, sin_t = math.cos(th), math.sin(th)
    x = rel[..., 0]
    y = rel[..., 1] * cos_t + rel[..., 2] * sin_t
    z = -rel[..., 1] * sin_t + rel[..., 2] * cos_t

    half = params.camera.half_tan
    n = IMAGE_SIZE
    zbuf = np.full((n, n), np.inf)
    cbuf = np.zeros((n, n, 3))

    _, _, dist_factor = _ray_basis(half)

    near = 1.0
    valid_depth = z > near
    with np.errstate(divide="ignore", invalid="ignore"):
        sx = (x / z) / half * (n / 2.0) + (n - 1) / 2.0
        sy = (n - 1) / 2.0 - (y / z) / half * (n / 2.0)

    for i in range(world.shape[0]):
        if not valid_depth[i].all():
            continue  # hull never straddles the near plane at >= 400 m
        tx, ty, tz = sx[i], sy[i], z[i]
        x0 = max(int(np.floor(tx.min())), 0)
        x1 = min(int(np.ceil(tx.max())) + 1, n)
        y0 = max(int(np.floor(ty.min())), 0)
        y1 = min(int(np.ceil(ty.max())) + 1, n)
        if x0 >= x1 or y0 >= y1:
            continue
        gx, gy = np.meshgrid(
            np.arange(x0, x1, dtype=np.float64),
            np.arange(y0, y1, dtype=np.float64),
        )
        e0 = (tx[2] - tx[1]) * (gy - ty[1]) - (ty[2] - ty[1]) * (gx - tx[1])
        e1 = (tx[0] - tx[2]) * (gy - ty[2]) - (ty[0] - ty[2]) * (gx - tx[2])
        e2 = (tx[1] - tx[0]) * (gy - ty[0]) - (ty[1] - ty[0]) * (gx - tx[0])
        area = e0 + e1 + e2
        if abs(float(area.flat[0])) < 1e-12:
            continue
        inside = ((e0 >= 0) & (e1 >= 0) & (e2 >= 0)) | ((e0 <= 0) & (e1 <= 0) & (e2 <= 0))
        if not inside.any():
            continue
        w0 = e0 / area
        w1 = e1 / area
        w2 = e2 / area
        zinv = w0 / tz[0] + w1 / tz[1] + w2 / tz[2]
        depth = 1.0 / np.maximum(zinv, 1e-12)
        dist = depth * dist_factor[y0:y1, x0:x1]
        tile = zbuf[y0:y1, x0:x1]
        closer = inside & (dist < tile)
        if closer.any():
            tile[closer] = dist[closer]
            cbuf[y0:y1, x0:x1][closer] = colors[i]
    return zbuf, cbuf


def _check_target_in_frame(params: SceneParams) -> None:
    cam = params.camera
    rel = np.array([params.lateral_m - cam.position[0],
                    params.aim_height_m - cam.position[1],
                    params.target_z - cam.position[2]])
    th = cam.pitch_rad
    cy = rel[1] * math.cos(th) + rel[2] * math.sin(th)
    cz = -rel[1] * math.sin(th) + rel[2] * math.cos(th)
    if cz <= 0.0 or abs(rel[0] / cz) > 0.5 * cam.half_tan or abs(cy / cz) > 0.5 * cam.half_tan:
        raise InternalFaultError(
            f"target projected outside the central frustum: {params}"
        )


def render_frame(params: SceneParams) -> ImageBuffer:
    """Render the pristine frame for fully derived scene parameters."""
    _check_target_in_frame(params)
    origin = np.asarray(params.camera.position, dtype=np.float64)
    dirs, _ = _world_rays(params.camera)

    t_ocean, _ = _trace_ocean(params.ocean, origin, dirs)
    ocean_mask = np.isfinite(t_ocean)

    img = np.empty((IMAGE_SIZE, IMAGE_SIZE, 3))
    sky_pixels = ~ocean_mask
    if sky_pixels.any():
        img[sky_pixels] = sky_radiance(
            params.sun, params.sky, dirs[sky_pixels], params.sky_seed
        )
    if ocean_mask.any():
        img[ocean_mask] = _shade_ocean(params, origin, dirs, t_ocean, ocean_mask)

    dist = np.where(ocean_mask, t_ocean, np.inf)

    zhull, chull = _rasterize_hull(params)
    hull_mask = zhull < dist
    img[hull_mask] = chull[hull_mask]
    dist = np.where(hull_mask, zhull, dist)

    if params.sky is SkyCondition.DenseFog:
        fog = fog_color(params.sun[0])
        trans = np.exp(-np.minimum(dist, _FAR_LIMIT_M) / _FOG_SCALE_M)
        trans = np.where(np.isfinite(dist), trans, 0.0)
        img = img * trans[..., None] + fog * (1.0 - trans[..., None])
    else:
        finite = np.isfinite(dist)
        if finite.any():
            haze = np.exp(-np.where(finite, dist, 0.0) / _HAZE_SCALE_M)
            horizon = _horizon_mean(params)
            blend = np.where(finite, haze, 1.0)[..., None]
            img = img * blend + horizon * (1.0 - blend)

    return ImageBuffer.from_linear(img)


def _horizon_mean(params: SceneParams) -> np.ndarray:
    az = np.linspace(-math.pi, math.pi, 32, endpoint=False)
    dirs = np.stack([np.sin(az) * 0.9999, np.full_like(az, 0.0141), np.cos(az) * 0.9999], axis=-1)
    return sky_radiance(params.sun, params.sky, dirs, params.sky_seed).mean(axis=0)


def render_vessel_mask(params: SceneParams) -> np.ndarray:
    """Boolean visible-silhouette mask of the vessel (ocean occlusion applied)."""
    origin = np.asarray(params.camera.position, dtype=np.float64)
    dirs, _ = _world_rays(params.camera)
    zhull, _ = _rasterize_hull(params)
    covered = np.isfinite(zhull)
    if not covered.any():
        return covered
    sub_dirs = dirs[covered].reshape(-1, 1, 3)
    t_ocean, _ = _trace_ocean(params.ocean, origin, sub_dirs)
    mask = np.zeros_like(covered)
    mask[covered] = zhull[covered] < t_ocean.ravel()
    return mask


def render_scene(spec: SceneSpec, master_seed: int = 0) -> ImageBuffer:
    """Render the pristine frame for a scene spec; pure and deterministic."""
    return render_frame(derive_scene_params(spec, master_seed))
