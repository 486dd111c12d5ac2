"""Scenario files: map a tabletop layout onto emitted result tables.

A scenario is a line-oriented ``key = value`` file (see `spdcpol.config`)
with the sections below. Lab-facing quantities use nm/mm/um/mrad and
external (lab) angles; everything is converted to SI and internal angles at
this boundary. Emitted scan tables carry both angle columns.

    [scenario]   name, seed, bell_max_order (optional)
    [source]     material, pump_wavelength_nm, length_mm
    [compensator] (zero or more, in beam order)
                 material, length_mm, orientation = compensating |
                 anticompensating, cut_angle_deg (optional, defaults to the
                 production cut)
    [geometry]   lens_focal_length_mm, pinhole_diameter_um (optional),
                 ambient_index (optional)
    [scan]       theta_ext_min_mrad, theta_ext_max_mrad, points,
                 settings_deg = 45 45; 45 -45
    [visibility] points, max_halfwidth = first_singlet |
                 max_halfwidth_mrad = <external mrad>,
                 center_mrad (optional), compare_uncompensated (optional)
    [counts]     duration_s, peak_rate_hz, accidental_rate_hz (optional)

Presets ``fig2a`` (bare 1 mm BBO source, 351 nm pump), ``fig2b`` (0.5 mm
compensator), ``fig2c`` (0.5 mm anti-compensator) and ``fig3`` (visibility
vs pinhole halfwidth, compensated with uncompensated baseline) ship with the
package and can be passed to the CLI by name.

Scan rates average the two-point Gauss rule across the angular width the
pinhole diameter subtends (point evaluation for a zero-diameter pinhole).
The ``first_singlet`` halfwidth keyword resolves to the first Psi- angle of
the bare production crystal, pi / (|B| L) internal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .biphoton import (BellState, CompensatorPlacement, Orientation,
                       SourceConfig, angular_envelope, bell_angles,
                       relative_phase)
from .config import Section, parse_config
from .crystal import phase_matching_cut_angle
from .errors import ConfigError, PhaseMatchingError, UniformStateError
from .geometry import (GeometryConfig, external_to_internal_angle,
                       internal_to_external_angle)
from .materials import MaterialRecord, builtin_materials
from .measurement import (MAX_SUPPORTED_ANGLE, AngularWindow,
                          PolarizerSettings, aperture_density_matrix,
                          coincidence_rate, concurrence, simulate_counts,
                          visibility_from_counts, window_coincidences)
from .output import Table

PRESETS = ("fig2a", "fig2b", "fig2c", "fig3")

SCAN_COLUMNS = ("theta_ext_rad", "theta_int_rad", "envelope", "phase_rad",
                "rate_arb")
VISIBILITY_COLUMNS = ("halfwidth_ext_rad", "C_pp_arb", "C_pm_arb", "V",
                      "concurrence")
BELL_COLUMNS = ("theta_int_rad", "theta_ext_rad", "envelope")
COUNTS_COLUMNS = ("theta_ext_rad", "theta_int_rad", "true_rate_hz",
                  "accidental_rate_hz", "duration_s", "counts")

FIRST_SINGLET = "first_singlet"


@dataclass(frozen=True)
class ScanSpec:
    theta_ext_min: float  # rad
    theta_ext_max: float  # rad
    points: int
    settings_deg: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class VisibilitySpec:
    points: int
    max_halfwidth_ext: float | None  # rad; None = first singlet of bare crystal
    center_ext: float = 0.0
    compare_uncompensated: bool = False


@dataclass(frozen=True)
class CountsSpec:
    duration: float         # s
    peak_rate: float        # 1/s at the uncompensated (45,45) peak
    accidental_rate: float  # 1/s


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    seed: int
    source: SourceConfig
    geometry: GeometryConfig
    scan: ScanSpec | None = None
    visibility: VisibilitySpec | None = None
    counts: CountsSpec | None = None
    bell_max_order: int = 8


def preset_text(name: str) -> str:
    return resources.files("spdcpol.data.presets").joinpath(f"{name}.cfg").read_text()


def _resolve_source_text(source: str | Path) -> tuple[str, str]:
    path = Path(source)
    if path.exists():
        return path.read_text(), str(path)
    if str(source) in PRESETS:
        return preset_text(str(source)), f"<preset {source}>"
    raise ConfigError(
        f"scenario '{source}' is neither an existing file nor a preset "
        f"(presets: {', '.join(PRESETS)})")


def _pick_material(section: Section,
                   catalogue: dict[str, MaterialRecord]) -> MaterialRecord:
    name = section.get_str("material").lower()
    if name not in catalogue:
        raise section.error(
            f"unknown material '{name}' (known: {', '.join(sorted(catalogue))})",
            key="material")
    return catalogue[name]


def _parse_settings(section: Section) -> tuple[tuple[float, float], ...]:
    raw = section.get_str("settings_deg")
    pairs = []
    for chunk in raw.split(";"):
        parts = chunk.split()
        if len(parts) != 2:
            raise section.error(
                f"settings_deg expects 'T1 T2; T1 T2; ...' in degrees, "
                f"got '{raw}'", key="settings_deg")
        try:
            pairs.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise section.error(
                f"settings_deg values must be numbers, got '{chunk.strip()}'",
                key="settings_deg")
    if not pairs:
        raise section.error("settings_deg is empty", key="settings_deg")
    return tuple(pairs)


def load_scenario(source: str | Path, seed: int | None = None,
                  catalogue: dict[str, MaterialRecord] | None = None) -> ScenarioSpec:
    """Load a scenario file or preset name into a resolved ScenarioSpec."""
    text, path = _resolve_source_text(source)
    catalogue = builtin_materials() if catalogue is None else catalogue
    sections = parse_config(text, path)

    by_name: dict[str, Section] = {}
    compensator_sections: list[Section] = []
    for section in sections:
        if section.name == "compensator":
            compensator_sections.append(section)
            continue
        if section.name not in ("scenario", "source", "geometry", "scan",
                                "visibility", "counts"):
            raise ConfigError(f"unknown section [{section.name}]",
                              path=path, line=section.line)
        if section.name in by_name:
            raise ConfigError(f"duplicate section [{section.name}]",
                              path=path, line=section.line)
        by_name[section.name] = section

    for required in ("source", "geometry"):
        if required not in by_name:
            raise ConfigError(f"missing required section [{required}]",
                              path=path)

    name = str(source) if path.startswith("<preset") else Path(path).stem
    seed_value = 0
    bell_max_order = 8
    if "scenario" in by_name:
        sec = by_name["scenario"]
        sec.reject_unknown({"name", "seed", "bell_max_order"})
        name = sec.get_str("name", name)
        seed_value = sec.get_int("seed", 0)
        bell_max_order = sec.get_int("bell_max_order", 8)
    if seed is not None:
        seed_value = seed

    src = by_name["source"]
    src.reject_unknown({"material", "pump_wavelength_nm", "length_mm"})
    material = _pick_material(src, catalogue)
    pump = src.get_float("pump_wavelength_nm") * 1e-9
    length = src.get_float("length_mm") * 1e-3
    try:
        cut = phase_matching_cut_angle(
            material.crystal(cut_angle=0.0, length=length), pump)
        production = material.crystal(cut_angle=cut, length=length)
    except PhaseMatchingError as exc:
        raise src.error(f"cannot phase-match '{material.name}' at "
                        f"{pump * 1e9:.6g} nm pump: {exc}", key="material")
    except ValueError as exc:
        raise src.error(f"invalid source crystal: {exc}")

    compensators = []
    for sec in compensator_sections:
        sec.reject_unknown({"material", "length_mm", "orientation",
                            "cut_angle_deg"})
        comp_material = _pick_material(sec, catalogue)
        comp_length = sec.get_float("length_mm") * 1e-3
        orientation_raw = sec.get_str("orientation").lower()
        if orientation_raw == "compensating":
            orientation = Orientation.COMPENSATING
        elif orientation_raw == "anticompensating":
            orientation = Orientation.ANTICOMPENSATING
        else:
            raise sec.error(
                f"orientation must be compensating or anticompensating, "
                f"got '{orientation_raw}'", key="orientation")
        # Default to the production cut angle verbatim: a degrees round-trip
        # would break the exact phase cancellation of the compensated case.
        if sec.has("cut_angle_deg"):
            comp_cut = math.radians(sec.get_float("cut_angle_deg"))
        else:
            comp_cut = cut
        try:
            comp_crystal = comp_material.crystal(cut_angle=comp_cut,
                                                 length=comp_length)
        except ValueError as exc:
            raise sec.error(f"invalid compensator crystal: {exc}")
        compensators.append(CompensatorPlacement(crystal=comp_crystal,
                                                 orientation=orientation))

    source_config = SourceConfig(production=production, pump_wavelength=pump,
                                 compensators=tuple(compensators))

    geo = by_name["geometry"]
    geo.reject_unknown({"lens_focal_length_mm", "pinhole_diameter_um",
                        "ambient_index"})
    try:
        geometry = GeometryConfig(
            lens_focal_length=geo.get_float("lens_focal_length_mm") * 1e-3,
            pinhole_diameter=geo.get_float("pinhole_diameter_um", 0.0) * 1e-6,
            ambient_index=geo.get_float("ambient_index", 1.0))
    except ValueError as exc:
        raise geo.error(f"invalid geometry: {exc}")

    scan_spec = None
    if "scan" in by_name:
        sec = by_name["scan"]
        sec.reject_unknown({"theta_ext_min_mrad", "theta_ext_max_mrad",
                            "points", "settings_deg"})
        lo = sec.get_float("theta_ext_min_mrad") * 1e-3
        hi = sec.get_float("theta_ext_max_mrad") * 1e-3
        points = sec.get_int("points")
        if points < 2:
            raise sec.error("scan needs at least 2 points", key="points")
        if not lo < hi:
            raise sec.error("theta_ext_min_mrad must be below "
                            "theta_ext_max_mrad")
        scan_spec = ScanSpec(theta_ext_min=lo, theta_ext_max=hi,
                             points=points,
                             settings_deg=_parse_settings(sec))

    visibility_spec = None
    if "visibility" in by_name:
        sec = by_name["visibility"]
        sec.reject_unknown({"points", "max_halfwidth", "max_halfwidth_mrad",
                            "center_mrad", "compare_uncompensated"})
        points = sec.get_int("points")
        if points < 1:
            raise sec.error("visibility sweep needs at least 1 point",
                            key="points")
        if sec.has("max_halfwidth") and sec.has("max_halfwidth_mrad"):
            raise sec.error("give either max_halfwidth or max_halfwidth_mrad,"
                            " not both")
        max_hw: float | None
        if sec.has("max_halfwidth_mrad"):
            max_hw = sec.get_float("max_halfwidth_mrad") * 1e-3
            if max_hw <= 0.0:
                raise sec.error("max_halfwidth_mrad must be > 0",
                                key="max_halfwidth_mrad")
            center = abs(sec.get_float("center_mrad", 0.0)) * 1e-3
            internal_span = external_to_internal_angle(
                center + max_hw, geometry, production, 2.0 * pump)
            if internal_span > MAX_SUPPORTED_ANGLE:
                raise sec.error(
                    f"window reaches {internal_span:.4g} rad internal, beyond "
                    f"the supported |theta| <= {MAX_SUPPORTED_ANGLE} rad",
                    key="max_halfwidth_mrad")
        else:
            keyword = sec.get_str("max_halfwidth", FIRST_SINGLET)
            if keyword != FIRST_SINGLET:
                raise sec.error(
                    f"max_halfwidth only understands '{FIRST_SINGLET}' "
                    f"(or use max_halfwidth_mrad)", key="max_halfwidth")
            max_hw = None
        visibility_spec = VisibilitySpec(
            points=points, max_halfwidth_ext=max_hw,
            center_ext=sec.get_float("center_mrad", 0.0) * 1e-3,
            compare_uncompensated=sec.get_bool("compare_uncompensated", False))

    counts_spec = None
    if "counts" in by_name:
        sec = by_name["counts"]
        sec.reject_unknown({"duration_s", "peak_rate_hz",
                            "accidental_rate_hz"})
        counts_spec = CountsSpec(
            duration=sec.get_float("duration_s"),
            peak_rate=sec.get_float("peak_rate_hz"),
            accidental_rate=sec.get_float("accidental_rate_hz", 0.0))
        if counts_spec.duration < 0.0 or counts_spec.peak_rate < 0.0 \
                or counts_spec.accidental_rate < 0.0:
            raise sec.error("counts durations and rates must be >= 0")

    return ScenarioSpec(name=name, seed=seed_value, source=source_config,
                        geometry=geometry, scan=scan_spec,
                        visibility=visibility_spec, counts=counts_spec,
                        bell_max_order=bell_max_order)


def _settings_label(pair: tuple[float, float]) -> str:
    return f"{pair[0]:g}_{pair[1]:g}"


def _averaged_rate(theta_int: float, settings: PolarizerSettings,
                   spec: ScenarioSpec, gauss_offset: float) -> float:
    if gauss_offset == 0.0:
        return coincidence_rate(theta_int, settings, spec.source)
    return 0.5 * (coincidence_rate(theta_int - gauss_offset, settings,
                                   spec.source)
                  + coincidence_rate(theta_int + gauss_offset, settings,
                                     spec.source))


def _pinhole_gauss_offset(spec: ScenarioSpec) -> float:
    # Two-point Gauss rule across the internal angular width the pinhole
    # diameter subtends: nodes at +/- width / (2 sqrt(3)).
    if spec.geometry.pinhole_diameter == 0.0:
        return 0.0
    width_ext = spec.geometry.pinhole_diameter / spec.geometry.lens_focal_length
    width_int = external_to_internal_angle(
        width_ext, spec.geometry, spec.source.production,
        spec.source.degenerate_wavelength)
    return width_int / (2.0 * math.sqrt(3.0))


def _bare_singlet_halfwidth(spec: ScenarioSpec) -> float:
    # First Psi- angle of the bare production crystal (internal).
    return math.pi / (abs(spec.source.walkoff_B)
                      * spec.source.production.length)


def run_scenario(spec: ScenarioSpec) -> list[Table]:
    """Produce all tables the scenario asks for; deterministic per seed."""
    if spec.scan is None and spec.visibility is None:
        raise ConfigError(
            f"scenario '{spec.name}' defines neither [scan] nor [visibility]")
    tables: list[Table] = []
    crystal = spec.source.production
    wl = spec.source.degenerate_wavelength

    if spec.scan is not None:
        ext_grid = np.linspace(spec.scan.theta_ext_min,
                               spec.scan.theta_ext_max, spec.scan.points)
        int_grid = [external_to_internal_angle(float(t), spec.geometry,
                                               crystal, wl)
                    for t in ext_grid]
        gauss_offset = _pinhole_gauss_offset(spec)
        for table_index, pair in enumerate(spec.scan.settings_deg):
            settings = PolarizerSettings(math.radians(pair[0]),
                                         math.radians(pair[1]))
            rows = []
            for t_ext, t_int in zip(ext_grid, int_grid):
                rows.append((float(t_ext), t_int,
                             angular_envelope(t_int, spec.source),
                             relative_phase(t_int, spec.source),
                             _averaged_rate(t_int, settings, spec,
                                            gauss_offset)))
            tables.append(Table(
                name=f"{spec.name}_scan_{_settings_label(pair)}",
                columns=SCAN_COLUMNS, rows=rows))
            if spec.counts is not None:
                seeds = np.random.SeedSequence(
                    (spec.seed, table_index)).generate_state(
                        spec.scan.points, dtype=np.uint64)
                count_rows = []
                for k, (t_ext, t_int) in enumerate(zip(ext_grid, int_grid)):
                    true_rate = spec.counts.peak_rate * _averaged_rate(
                        t_int, settings, spec, gauss_offset)
                    record = simulate_counts(
                        true_rate, spec.counts.accidental_rate,
                        spec.counts.duration, int(seeds[k]),
                        settings=settings)
                    count_rows.append((float(t_ext), t_int, record.true_rate,
                                       record.accidental_rate,
                                       record.duration, record.counts))
                tables.append(Table(
                    name=f"{spec.name}_counts_{_settings_label(pair)}",
                    columns=COUNTS_COLUMNS, rows=count_rows))

    if spec.visibility is not None:
        vspec = spec.visibility
        center_int = external_to_internal_angle(vspec.center_ext,
                                                spec.geometry, crystal, wl)
        if vspec.max_halfwidth_ext is None:
            hmax_int = _bare_singlet_halfwidth(spec)
        else:
            hmax_int = external_to_internal_angle(vspec.max_halfwidth_ext,
                                                  spec.geometry, crystal, wl)
        variants: list[tuple[str, SourceConfig]] = [("", spec.source)]
        if vspec.compare_uncompensated:
            variants.append(("_uncompensated",
                             SourceConfig(production=crystal,
                                          pump_wavelength=spec.source.pump_wavelength)))
        for suffix, config in variants:
            rows = []
            for k in range(1, vspec.points + 1):
                halfwidth = hmax_int * k / vspec.points
                window = AngularWindow(center=center_int, halfwidth=halfwidth)
                c_pp = window_coincidences(
                    PolarizerSettings(math.pi / 4, math.pi / 4), window, config)
                c_pm = window_coincidences(
                    PolarizerSettings(math.pi / 4, -math.pi / 4), window, config)
                vis = visibility_from_counts(c_pp, c_pm)
                conc = concurrence(aperture_density_matrix(window, config))
                rows.append((internal_to_external_angle(halfwidth,
                                                        spec.geometry,
                                                        crystal, wl),
                             c_pp, c_pm, vis, conc))
            tables.append(Table(name=f"{spec.name}_visibility{suffix}",
                                columns=VISIBILITY_COLUMNS, rows=rows))

    return tables


def list_bell_angles(spec: ScenarioSpec, which: BellState) -> Table:
    """Bell-state angles of the scenario source in internal and lab coordinates."""
    suffix = "psi_plus" if which is BellState.PSI_PLUS else "psi_minus"
    name = f"{spec.name}_bell_{suffix}"
    try:
        result = bell_angles(spec.source, which, spec.bell_max_order)
    except UniformStateError as exc:
        return Table(name=name, columns=BELL_COLUMNS, rows=[], note=str(exc))
    rows = [(entry.theta,
             internal_to_external_angle(entry.theta, spec.geometry,
                                        spec.source.production,
                                        spec.source.degenerate_wavelength),
             entry.envelope)
            for entry in result.angles]
    note = ("state is uniform across the line-shape: Psi+ everywhere"
            if result.uniform else "")
    return Table(name=name, columns=BELL_COLUMNS, rows=rows, note=note)
