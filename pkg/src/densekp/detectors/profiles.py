"""Detection threshold profiles.

Two presets exist: ``NORMAL`` for ordinary scenes and ``LOW`` with extremely
permissive thresholds for low-visibility scenes, where dense detections are
wanted. For every field where lower means more detections, the low profile
must not exceed the normal one.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class DetectorProfile:
    name: str
    fast_t: int = 30
    harris_k: float = 0.04
    harris_rel_t: float = 0.01
    shi_rel_t: float = 0.01
    dog_contrast_t: float = 8.0
    dog_edge_r: float = 10.0
    canny_lo: float = 50.0
    canny_hi: float = 150.0
    sobel_mag_t: float = 600.0
    brisk_octaves: int = 3
    orb_levels: int = 4
    orb_scale: float = 1.2
    nms_radius: int = 3

    def __post_init__(self):
        numeric = [
            self.fast_t, self.harris_k, self.harris_rel_t, self.shi_rel_t,
            self.dog_contrast_t, self.dog_edge_r, self.canny_lo, self.canny_hi,
            self.sobel_mag_t, self.nms_radius,
        ]
        if any(v < 0 for v in numeric):
            raise ValueError("thresholds must be non-negative")
        if self.brisk_octaves < 1 or self.orb_levels < 1 or self.orb_scale <= 1.0:
            raise ValueError("pyramid parameters out of range")

    def override(self, **kwargs) -> "DetectorProfile":
        unknown = set(kwargs) - {f.name for f in fields(self)}
        if unknown:
            raise ValueError(f"unknown profile fields: {sorted(unknown)}")
        return replace(self, **kwargs)


NORMAL = DetectorProfile(name="normal")

LOW = DetectorProfile(
    name="low",
    fast_t=5,
    harris_rel_t=1e-4,
    shi_rel_t=1e-4,
    dog_contrast_t=0.5,
    dog_edge_r=20.0,
    canny_lo=5.0,
    canny_hi=15.0,
    sobel_mag_t=100.0,
    nms_radius=1,
)

PROFILES = {"normal": NORMAL, "low": LOW}


def get_profile(name: str) -> DetectorProfile:
    try:
        return PROFILES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; expected one of {sorted(PROFILES)}") from None
