"""Sum-of-Gerstner-waves ocean surface calibrated to sea-state bands.

A surface is eight cosine components with seed-drawn wavelengths, phases
and directions (spread about a dominant direction), globally rescaled so
the trough-to-crest significant-wave-height estimate lands exactly on the
midpoint of the sea state's wave-height band.  Heights are linear in the
global amplitude scale and zero crossings are scale-invariant, so the
rescale is exact, not iterative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .grid import ConfigError, derive_seed, hs_band, hs_midpoint, unit_float

__all__ = [
    "WaveComponent",
    "OceanField",
    "ocean_field",
    "ocean_height",
    "ocean_gradient",
    "significant_wave_height",
]

GRAVITY_M_S2 = 9.81
N_COMPONENTS = 8

# Direction spread about the dominant direction.
_SPREAD_RAD = math.radians(30.0)
# Peak wavelength per meter of target Hs; keeps component steepness mild.
_WAVELENGTH_PER_HS = 28.0
_STEEPNESS_CAP = 0.95


@dataclass(frozen=True)
class WaveComponent:
    amplitude_m: float
    wavelength_m: float
    direction: tuple[float, float]  # unit (dx, dz)
    phase_rad: float
    steepness: float

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength_m

    @property
    def angular_frequency(self) -> float:
        # Deep-water dispersion relation.
        return math.sqrt(GRAVITY_M_S2 * self.wavenumber)


@dataclass(frozen=True)
class OceanField:
    """Parameter set for one sea surface realization."""

    components: tuple[WaveComponent, ...]
    hs_target_m: float

    def __post_init__(self) -> None:
        if not self.components:
            raise ConfigError("ocean field needs at least one component")
        for c in self.components:
            if c.wavelength_m <= 0:
                raise ConfigError("wave component wavelength must be positive")
            if not 0.0 <= c.steepness < 1.0:
                raise ConfigError("wave steepness must lie in [0, 1)")
            if c.steepness * c.amplitude_m * c.wavenumber >= 1.0:
                raise ConfigError("wave component would self-intersect")

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, ...]:
        amp = np.array([c.amplitude_m for c in self.components])
        kx = np.array([c.wavenumber * c.direction[0] for c in self.components])
        kz = np.array([c.wavenumber * c.direction[1] for c in self.components])
        phase = np.array([c.phase_rad for c in self.components])
        omega = np.array([c.angular_frequency for c in self.components])
        return amp, kx, kz, phase, omega

    @cached_property
    def amplitude_sum(self) -> float:
        return float(sum(c.amplitude_m for c in self.components))

    @cached_property
    def dominant_direction(self) -> tuple[float, float]:
        """Amplitude-weighted mean travel direction (unit vector)."""
        dx = sum(c.amplitude_m * c.direction[0] for c in self.components)
        dz = sum(c.amplitude_m * c.direction[1] for c in self.components)
        norm = math.hypot(dx, dz)
        if norm == 0.0:
            return (1.0, 0.0)
        return (dx / norm, dz / norm)

    def mirrored(self) -> "OceanField":
        """The field reflected across the x = 0 plane (dx negated)."""
        comps = tuple(
            WaveComponent(
                c.amplitude_m,
                c.wavelength_m,
                (-c.direction[0], c.direction[1]),
                c.phase_rad,
                c.steepness,
            )
            for c in self.components
        )
        return OceanField(comps, self.hs_target_m)


def ocean_height(field: OceanField, x, z, t: float = 0.0) -> np.ndarray:
    """Vertical displacement of the surface at (x, z) and time t.

    Sum over components of amplitude * cos(k . (x, z) - phase(t)) with
    phase(t) = phase0 + omega * t.
    """
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    amp, kx, kz, phase, omega = field._arrays
    h = np.zeros(np.broadcast(x, z).shape)
    for i in range(len(amp)):
        h += amp[i] * np.cos(kx[i] * x + kz[i] * z - (phase[i] + omega[i] * t))
    return h


def ocean_gradient(field: OceanField, x, z, t: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """(dh/dx, dh/dz) of the surface; analytic, same broadcast as height."""
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    amp, kx, kz, phase, omega = field._arrays
    shape = np.broadcast(x, z).shape
    gx = np.zeros(shape)
    gz = np.zeros(shape)
    for i in range(len(amp)):
        s = amp[i] * np.sin(kx[i] * x + kz[i] * z - (phase[i] + omega[i] * t))
        gx -= kx[i] * s
        gz -= kz[i] * s
    return gx, gz


def significant_wave_height(field: OceanField, n_samples: int = 131_072) -> float:
    """Trough-to-crest Hs estimate.

    Samples a straight transect along the dominant travel direction and
    returns the mean height of the highest third of mean-level
    down-crossing waves.  The sampling plan is fixed, so the estimate is
    deterministic for a given field.
    """
    if field.amplitude_sum == 0.0:
        return 0.0
    dx, dz = field.dominant_direction
    lam_min = min(c.wavelength_m for c in field.components if c.amplitude_m > 0)
    ds = lam_min / 24.0
    s = np.arange(n_samples) * ds
    h = ocean_height(field, s * dx, s * dz)
    h = h - h.mean()
    down = np.nonzero((h[:-1] >= 0.0) & (h[1:] < 0.0))[0]
    if len(down) < 2:
        # Degenerate surface; fall back to the Gaussian-sea approximation.
        return float(4.0 * h.std())
    heights = []
    for a, b in zip(down[:-1], down[1:]):
        seg = h[a : b + 1]
        heights.append(float(seg.max() - seg.min()))
    heights.sort(reverse=True)
    top = heights[: max(1, len(heights) // 3)]
    return float(np.mean(top))


def ocean_field(sea_code: int, seed: int) -> OceanField:
    """Deterministic eight-component surface for a sea-state code.

    Components are drawn from `seed`, then globally rescaled so the Hs
    estimate equals the band midpoint; steepness values are clamped to
    keep every component below the self-intersection limit.
    """
    lo, hi = hs_band(sea_code)
    target = hs_midpoint(sea_code)
    lam_peak = _WAVELENGTH_PER_HS * target

    u = lambda k: unit_float(seed, k)
    theta0 = 2.0 * math.pi * u(0)

    lams, thetas, phases, weights, steeps = [], [], [], [], []
    for i in range(N_COMPONENTS):
        base = 10 + 5 * i
        lams.append(lam_peak * 2.0 ** (2.0 * u(base) - 1.0))
        thetas.append(theta0 + _SPREAD_RAD * (2.0 * u(base + 1) - 1.0))
        phases.append(2.0 * math.pi * u(base + 2))
        weights.append((lams[-1] / lam_peak) ** 1.2 * (0.4 + 0.6 * u(base + 3)))
        steeps.append(0.3 + 0.5 * u(base + 4))

    def build(scale: float) -> OceanField:
        comps = []
        for lam, th, ph, w, st in zip(lams, thetas, phases, weights, steeps):
            a = scale * w
            k = 2.0 * math.pi / lam
            if a > 0.0:
                st = min(st, _STEEPNESS_CAP / (a * k))
            comps.append(
                WaveComponent(a, lam, (math.cos(th), math.sin(th)), ph, st)
            )
        return OceanField(tuple(comps), target)

    est = significant_wave_height(build(1.0))  # estimator is exactly linear
    return build(target / est)
