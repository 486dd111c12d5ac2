"""Predicted observables behind Glan-prism analyzers.

Coincidence rate at polarizer settings (Theta1, Theta2) for the mode pair at
internal angle theta:

    R(theta) = sinc^2(|B| L theta / 2) * [ sin^2(Theta1 + Theta2) cos^2(phi/2)
                                         + sin^2(Theta1 - Theta2) sin^2(phi/2) ]

in arbitrary units normalized so the uncompensated (45, 45) curve peaks at 1.
Aperture (pinhole) integration happens over a hard-edged internal-angle
window with the sinc^2 envelope as weight; the aperture-averaged density
matrix, visibility V = |(C++ - C+-)/(C++ + C+-)| and Wootters concurrence
quantify how the coherent phase spread degrades polarization interference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .biphoton import (BASIS, BellState, SourceConfig, angular_envelope,
                       bell_state, relative_phase, state_at_angle)
from .errors import StateInvariantError, UndefinedVisibilityError
from .quadrature import adaptive_simpson

# Quadrature defaults pinned by contract: smooth sinc^2 * trig integrands.
QUAD_TOL = 1e-10
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# Window edges must stay in the small-angle regime the model is built on.
MAX_SUPPORTED_ANGLE = 0.1  # rad, internal

_PLUS45 = math.pi / 4.0


@dataclass(frozen=True)
class PolarizerSettings:
    """Glan-prism analysis angles in radians, interpreted mod pi."""

    theta1: float
    theta2: float


@dataclass(frozen=True)
class AngularWindow:
    """Hard-edged internal-angle acceptance window; halfwidth 0 is a point."""

    center: float
    halfwidth: float

    def __post_init__(self):
        if self.halfwidth < 0.0:
            raise ValueError(f"halfwidth must be >= 0, got {self.halfwidth}")
        if abs(self.center) + self.halfwidth > MAX_SUPPORTED_ANGLE:
            raise ValueError(
                f"window [{self.center - self.halfwidth}, "
                f"{self.center + self.halfwidth}] rad exceeds the supported "
                f"range |theta| <= {MAX_SUPPORTED_ANGLE} rad")


def coincidence_rate(theta: float, settings: PolarizerSettings,
                     config: SourceConfig) -> float:
    """Coincidence rate (arbitrary units) at internal angle ``theta``."""
    envelope = angular_envelope(theta, config)
    phi = relative_phase(theta, config)
    s_sum = math.sin(settings.theta1 + settings.theta2)
    s_diff = math.sin(settings.theta1 - settings.theta2)
    return (envelope * envelope
            * (s_sum * s_sum * math.cos(phi / 2.0) ** 2
               + s_diff * s_diff * math.sin(phi / 2.0) ** 2))


@dataclass(frozen=True)
class AngularScan:
    """Point-sampled coincidence curve: the unit of CSV output."""

    settings: PolarizerSettings
    thetas: tuple[float, ...]
    envelopes: tuple[float, ...]
    phases: tuple[float, ...]
    rates: tuple[float, ...]


def scan(settings: PolarizerSettings, config: SourceConfig,
         grid) -> AngularScan:
    """Evaluate envelope, phase and rate on a strictly increasing theta grid."""
    thetas = tuple(float(t) for t in grid)
    if not thetas:
        raise ValueError("empty scan grid")
    if any(b <= a for a, b in zip(thetas, thetas[1:])):
        raise ValueError("scan grid must be strictly increasing")
    envelopes = tuple(angular_envelope(t, config) for t in thetas)
    phases = tuple(relative_phase(t, config) for t in thetas)
    rates = tuple(coincidence_rate(t, settings, config) for t in thetas)
    return AngularScan(settings=settings, thetas=thetas, envelopes=envelopes,
                       phases=phases, rates=rates)


@dataclass(frozen=True)
class DensityMatrix4:
    """4x4 Hermitian unit-trace positive matrix over (HH, HV, VH, VV)."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (4, 4):
            raise StateInvariantError(f"expected a 4x4 matrix, got {mat.shape}")
        object.__setattr__(self, "matrix", mat)

    def validate(self) -> "DensityMatrix4":
        mat = self.matrix
        if float(np.max(np.abs(mat - mat.conj().T))) > HERMITICITY_TOL:
            raise StateInvariantError("density matrix not Hermitian")
        if abs(float(mat.trace().real) - 1.0) > TRACE_TOL or \
                abs(float(mat.trace().imag)) > TRACE_TOL:
            raise StateInvariantError(
                f"density matrix trace {mat.trace()} != 1")
        eigenvalues = np.linalg.eigvalsh(mat)
        if float(eigenvalues.min()) < -PSD_TOL:
            raise StateInvariantError(
                f"density matrix not positive: min eigenvalue "
                f"{eigenvalues.min():.3e}")
        return self

    def element(self, row: str, col: str) -> complex:
        """Matrix element by basis labels, e.g. element('HV', 'VH')."""
        return complex(self.matrix[BASIS.index(row), BASIS.index(col)])

    def purity(self) -> float:
        return float((self.matrix @ self.matrix).trace().real)


def aperture_density_matrix(window: AngularWindow, config: SourceConfig,
                            tol: float = QUAD_TOL) -> DensityMatrix4:
    """Polarization state collected through a hard-edged angular window.

    rho = int_window w(theta) |psi(theta)><psi(theta)| dtheta / normalization
    with weight w = sinc^2(|B| L theta / 2), evaluated by a single adaptive
    Simpson pass over the matrix integrand (positive weights keep the result
    positive semidefinite by construction); halfwidth 0 returns the pure
    projector at the window center.
    """
    if window.halfwidth == 0.0:
        mat = state_at_angle(window.center, config).projector()
        return DensityMatrix4(mat).validate()

    def integrand(theta: float) -> np.ndarray:
        envelope = angular_envelope(theta, config)
        state = state_at_angle(theta, config)
        return (envelope * envelope) * state.projector()

    raw = adaptive_simpson(integrand, window.center - window.halfwidth,
                           window.center + window.halfwidth, tol=tol)
    raw = 0.5 * (raw + raw.conj().T)  # scrub rounding-level asymmetry
    rho = raw / raw.trace().real
    return DensityMatrix4(rho).validate()


def window_coincidences(settings: PolarizerSettings, window: AngularWindow,
                        config: SourceConfig, tol: float = QUAD_TOL) -> float:
    """Coincidence rate integrated over the window (point rate at halfwidth 0)."""
    if window.halfwidth == 0.0:
        return coincidence_rate(window.center, settings, config)
    return adaptive_simpson(
        lambda theta: coincidence_rate(theta, settings, config),
        window.center - window.halfwidth, window.center + window.halfwidth,
        tol=tol)


def visibility_from_counts(c_pp: float, c_pm: float) -> float:
    """|(C++ - C+-)/(C++ + C+-)|, guarding the all-zero case."""
    denominator = c_pp + c_pm
    if denominator == 0.0:
        raise UndefinedVisibilityError(
            "both coincidence counts vanish on this window")
    return abs((c_pp - c_pm) / denominator)


def visibility(window: AngularWindow, config: SourceConfig,
               tol: float = QUAD_TOL) -> float:
    """Polarization-interference visibility over the window.

    V = |(C(45,45) - C(45,-45)) / (C(45,45) + C(45,-45))| with both counts
    integrated by the same quadrature as the density matrix.
    """
    c_pp = window_coincidences(PolarizerSettings(_PLUS45, _PLUS45), window,
                               config, tol=tol)
    c_pm = window_coincidences(PolarizerSettings(_PLUS45, -_PLUS45), window,
                               config, tol=tol)
    return visibility_from_counts(c_pp, c_pm)


_SIGMA_Y_PAIR = np.kron(np.array([[0.0, -1.0j], [1.0j, 0.0]]),
                        np.array([[0.0, -1.0j], [1.0j, 0.0]]))


def concurrence(rho: DensityMatrix4) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
    eigenvalues of rho (sy x sy) rho* (sy x sy). The l_i are computed as the
    singular values of sqrt(rho) (sy x sy) sqrt(rho)* (same spectrum), which
    keeps the near-zero values at machine accuracy instead of the sqrt(eps)
    noise a direct eigenvalue square root would give.
    """
    rho.validate()
    eigenvalues, vectors = np.linalg.eigh(rho.matrix)
    # clip rounding-level negatives only after validate() accepted them
    sqrt_rho = (vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) \
        @ vectors.conj().T
    lambdas = np.linalg.svd(sqrt_rho @ _SIGMA_Y_PAIR @ sqrt_rho.conj(),
                            compute_uv=False)
    return float(max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]))


def bell_fidelity(rho: DensityMatrix4, which: BellState) -> float:
    """<Bell| rho |Bell> for Psi+ or Psi-."""
    rho.validate()
    target = bell_state(which).amplitudes
    return float(np.vdot(target, rho.matrix @ target).real)


@dataclass(frozen=True)
class CountRecord:
    settings: PolarizerSettings | None
    window: AngularWindow | None
    true_rate: float        # 1/s
    accidental_rate: float  # 1/s
    duration: float         # s
    counts: int


def simulate_counts(true_rate: float, accidental_rate: float, duration: float,
                    seed: int, settings: PolarizerSettings | None = None,
                    window: AngularWindow | None = None) -> CountRecord:
    """Poisson coincidence counts with mean (true + accidental) * duration.

    Deterministic per seed; every call owns its generator, so concurrent
    simulations never share state.
    """
    if true_rate < 0.0 or accidental_rate < 0.0:
        raise ValueError("rates must be >= 0")
    if duration < 0.0:
        raise ValueError("duration must be >= 0")
    rng = np.random.default_rng(seed)
    mean = (true_rate + accidental_rate) * duration
    counts = int(rng.poisson(mean))
    return CountRecord(settings=settings, window=window, true_rate=true_rate,
                       accidental_rate=accidental_rate, duration=duration,
                       counts=counts)
