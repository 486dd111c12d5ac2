"""Angle-dependent two-photon polarization state of collinear type-II SPDC.

The degenerate pair emitted into the conjugate mode pair (-theta, +theta) is

    |psi(theta)> = (|HV> + e^{i phi(theta)} |VH>) / sqrt(2)

with a sinc(|B| L theta / 2) emission envelope, where B = dk_e/dtheta is the
transverse walk-off parameter of the production crystal at the degenerate
wavelength and L its length. The phase law is linear in theta:

    phi(theta) = |B| L theta  +  sum_i s_i * 2 |B_i| L_i theta

The production term carries the single birth-position-averaged factor
|B| L theta; each fully traversed downstream crystal contributes twice its
B*length product, signed s = -1 when its optic axis is rotated 180 degrees
(compensating) and s = +1 when aligned (anti-compensating). A half-length
identical compensator therefore cancels the phase exactly (uniform Psi+ over
the whole line-shape), while the aligned orientation doubles it.

Sign convention: phi(theta) >= 0 for theta >= 0 in the uncompensated case.
Only relative signs between production crystal and compensators affect any
observable in scope.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .crystal import UniaxialCrystal, phase_matching_cut_angle, transverse_walkoff_B
from .errors import PhaseMatchingError, StateInvariantError, UniformStateError

BASIS = ("HH", "HV", "VH", "VV")

_SQRT_HALF = 1.0 / math.sqrt(2.0)

CUT_ANGLE_TOLERANCE = 1e-6  # rad, production cut vs phase-matched angle


def sinc(x: float) -> float:
    """sin(x)/x with sinc(0) = 1 (unnormalized convention)."""
    if x == 0.0:
        return 1.0
    return math.sin(x) / x


class Orientation(enum.Enum):
    """Optic-axis orientation of a downstream crystal relative to the production one."""

    COMPENSATING = -1      # axis rotated 180 degrees: phase contribution subtracts
    ANTICOMPENSATING = +1  # axis aligned: phase contribution adds

    @property
    def sign(self) -> int:
        return self.value


class BellState(enum.Enum):
    PSI_PLUS = "psi+"   # (|HV> + |VH>)/sqrt(2)
    PSI_MINUS = "psi-"  # (|HV> - |VH>)/sqrt(2)


@dataclass(frozen=True)
class TwoPhotonState:
    """Normalized two-qubit pure state over the ordered basis (HH, HV, VH, VV)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (4,):
            raise StateInvariantError(
                f"expected 4 amplitudes over {BASIS}, got shape {amps.shape}")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > 1e-12:
            raise StateInvariantError(
                f"state not normalized: |psi|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", amps)

    def overlap(self, other: "TwoPhotonState") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> np.ndarray:
        """|psi><psi| as a 4x4 complex matrix."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


def bell_state(which: BellState) -> TwoPhotonState:
    sign = 1.0 if which is BellState.PSI_PLUS else -1.0
    return TwoPhotonState(np.array([0.0, _SQRT_HALF, sign * _SQRT_HALF, 0.0],
                                   dtype=complex))


@dataclass(frozen=True)
class CompensatorPlacement:
    crystal: UniaxialCrystal
    orientation: Orientation


@dataclass(frozen=True)
class SourceConfig:
    """Production crystal plus ordered downstream compensators.

    Construction verifies that the production cut angle phase-matches the
    pump (within 1e-6 rad) and caches the derived phase-law slopes. Instances
    are immutable, so all operations over them are thread-safe.

    Derived fields: ``degenerate_wavelength`` (2 lambda_p), ``walkoff_B``
    (signed production B at the degenerate wavelength), ``envelope_slope``
    (|B| L / 2, the sinc argument per radian) and ``phase_slope``
    (d phi / d theta, including compensators).
    """

    production: UniaxialCrystal
    pump_wavelength: float
    compensators: tuple[CompensatorPlacement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "compensators", tuple(self.compensators))
        matched = phase_matching_cut_angle(self.production, self.pump_wavelength)
        if abs(self.production.cut_angle - matched) > CUT_ANGLE_TOLERANCE:
            raise PhaseMatchingError(
                f"production cut angle {self.production.cut_angle:.8f} rad does "
                f"not phase-match the pump (expected {matched:.8f} rad within "
                f"{CUT_ANGLE_TOLERANCE} rad)")
        degenerate = 2.0 * self.pump_wavelength
        b_prod = transverse_walkoff_B(self.production, degenerate,
                                      self.production.cut_angle)
        slope = abs(b_prod) * self.production.length
        for placement in self.compensators:
            b_comp = transverse_walkoff_B(placement.crystal, degenerate,
                                          placement.crystal.cut_angle)
            slope += (placement.orientation.sign * 2.0 * abs(b_comp)
                      * placement.crystal.length)
        object.__setattr__(self, "degenerate_wavelength", degenerate)
        object.__setattr__(self, "walkoff_B", b_prod)
        object.__setattr__(self, "envelope_slope",
                           abs(b_prod) * self.production.length / 2.0)
        object.__setattr__(self, "phase_slope", slope)


def relative_phase(theta: float, config: SourceConfig) -> float:
    """Total relative phase phi(theta) between the HV and VH amplitudes."""
    return config.phase_slope * theta


def angular_envelope(theta: float, config: SourceConfig) -> float:
    """Emission amplitude envelope sinc(|B| L theta / 2).

    Compensators act after pair generation and never change the envelope.
    """
    return sinc(config.envelope_slope * theta)


def state_at_angle(theta: float, config: SourceConfig) -> TwoPhotonState:
    """Normalized polarization state of the mode pair (-theta, +theta).

    The overall phase is fixed so the HV amplitude is real positive; the
    angular phase attaches to the VH component.
    """
    phase = cmath.exp(1j * relative_phase(theta, config))
    return TwoPhotonState(np.array([0.0, _SQRT_HALF, phase * _SQRT_HALF, 0.0],
                                   dtype=complex))


@dataclass(frozen=True)
class AngularSample:
    theta: float     # rad, internal scattering angle
    envelope: float  # sinc amplitude
    phase: float     # rad
    state: TwoPhotonState


def sample_at(theta: float, config: SourceConfig) -> AngularSample:
    return AngularSample(theta=theta,
                         envelope=angular_envelope(theta, config),
                         phase=relative_phase(theta, config),
                         state=state_at_angle(theta, config))


@dataclass(frozen=True)
class BellAngle:
    theta: float     # rad, internal; the mirror angle -theta is implied
    envelope: float


@dataclass(frozen=True)
class BellAngleSet:
    which: BellState
    uniform: bool  # flat phase law: Psi+ everywhere, no discrete angles
    angles: tuple[BellAngle, ...]


def bell_angles(config: SourceConfig, which: BellState,
                max_order: int = 5) -> BellAngleSet:
    """Scattering angles where the state is exactly the requested Bell state.

    Solves phi(theta) = 0 mod 2 pi (Psi+) or pi mod 2 pi (Psi-) for
    theta >= 0, up to ``max_order`` solutions, with the envelope at each.
    On a fully compensated (flat-phase) configuration Psi+ returns theta = 0
    flagged uniform and Psi- raises UniformStateError.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    slope = abs(config.phase_slope)
    if slope == 0.0:
        if which is BellState.PSI_MINUS:
            raise UniformStateError(
                "state is uniform, no such angle: the compensated phase law "
                "is identically zero, Psi- never appears")
        return BellAngleSet(which=which, uniform=True,
                            angles=(BellAngle(theta=0.0, envelope=1.0),))
    if which is BellState.PSI_PLUS:
        targets = [2.0 * math.pi * k for k in range(max_order)]
    else:
        targets = [math.pi * (2 * k + 1) for k in range(max_order)]
    angles = tuple(BellAngle(theta=t / slope,
                             envelope=angular_envelope(t / slope, config))
                   for t in targets)
    return BellAngleSet(which=which, uniform=False, angles=angles)
