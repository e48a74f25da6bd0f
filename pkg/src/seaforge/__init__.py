"""Deterministic procedural generator for labeled maritime vessel imagery."""

__version__ = "0.1.0"

from .grid import (  # noqa: F401
    ALL_SUN_POSITIONS,
    DEFAULT_ZONE_MAP,
    HEADINGS,
    OBSERVER_IDS,
    SEA_STATE_CODES,
    SEA_STATE_HS_BANDS,
    ConfigError,
    SceneSpec,
    SkyCondition,
    SunPosition,
    SweepConfig,
    VesselClass,
    Zone,
    enumerate_sweep,
    grid_seeds,
    heading_zone,
    scene_seed,
    sun_angles,
    sweep_count,
)
