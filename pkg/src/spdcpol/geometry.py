"""Lab-frame geometry: pinhole position <-> internal scattering angle.

A pinhole displaced by ``offset`` in the focal plane of the collection lens
selects the external (lab) angle theta_ext = offset / f. Refraction at the
crystal exit face maps it to the internal angle used by the physics,

    theta_int = theta_ext * n_ambient / n_o(lambda_deg),

in the small-angle regime (the H photon, ordinary polarized, defines the
detected direction in the scan plane). NOTE: the conversion rescales every
angular position by a factor of about n_o ~ 1.66 for BBO; emitted tables
carry both columns so there is no ambiguity about which angle is which.
"""

from __future__ import annotations

from dataclasses import dataclass

from .crystal import UniaxialCrystal, index_ordinary

SMALL_ANGLE_LIMIT = 0.1  # |offset|/f bound for the linearized mapping


@dataclass(frozen=True)
class GeometryConfig:
    lens_focal_length: float   # m
    pinhole_diameter: float = 0.0  # m, 0 = ideal point detector
    pinhole_offset: float = 0.0    # m, transverse position in the focal plane
    ambient_index: float = 1.0

    def __post_init__(self):
        if self.lens_focal_length <= 0.0:
            raise ValueError("focal length must be > 0")
        if self.pinhole_diameter < 0.0:
            raise ValueError("pinhole diameter must be >= 0")
        if self.ambient_index <= 0.0:
            raise ValueError("ambient index must be > 0")


def external_angle(offset: float, geometry: GeometryConfig) -> float:
    """External angle selected by a pinhole at ``offset`` from the axis."""
    ratio = offset / geometry.lens_focal_length
    if abs(ratio) >= SMALL_ANGLE_LIMIT:
        raise ValueError(
            f"|offset|/f = {abs(ratio):.4g} outside the small-angle regime "
            f"(< {SMALL_ANGLE_LIMIT})")
    return ratio


def external_to_internal_angle(theta_ext: float, geometry: GeometryConfig,
                               crystal: UniaxialCrystal,
                               wavelength: float) -> float:
    return theta_ext * geometry.ambient_index / index_ordinary(crystal,
                                                               wavelength)


def internal_to_external_angle(theta_int: float, geometry: GeometryConfig,
                               crystal: UniaxialCrystal,
                               wavelength: float) -> float:
    return theta_int * index_ordinary(crystal, wavelength) / geometry.ambient_index


def pinhole_to_internal_angle(offset: float, geometry: GeometryConfig,
                              crystal: UniaxialCrystal,
                              wavelength: float) -> float:
    """Internal scattering angle selected by a pinhole at ``offset`` (meters)."""
    return external_to_internal_angle(external_angle(offset, geometry),
                                      geometry, crystal, wavelength)


def internal_angle_to_offset(theta_int: float, geometry: GeometryConfig,
                             crystal: UniaxialCrystal,
                             wavelength: float) -> float:
    """Inverse of pinhole_to_internal_angle."""
    theta_ext = internal_to_external_angle(theta_int, geometry, crystal,
                                           wavelength)
    return theta_ext * geometry.lens_focal_length
