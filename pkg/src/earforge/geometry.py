"""Blank contour synthesis, blank sizing, and scalar metrics on rim profiles.

Angles are radians, lengths millimetres throughout. Contours and profiles are
sampled on a uniform grid theta_k = 2*pi*k/n over [0, 2*pi).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidBlankError, ValidationError

#: Default full-circle sampling; 36 samples per quarter.
DEFAULT_N_POINTS = 144

#: Nodes of the quarter-domain deviation vector (35 equal-length elements).
QUARTER_NODES = 36


@dataclass(frozen=True)
class BlankSpec:
    """Cosine-lobe description of a blank: r(theta) = D/2 + A1*cos(2θ) + A2*cos(4θ)."""

    diameter: float  # D, nominal diameter, mm
    a1: float = 0.0  # two-lobe (ovalization) amplitude, mm
    a2: float = 0.0  # four-lobe amplitude, mm

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.diameter, self.a1, self.a2)):
            raise ValidationError("blank parameters must be finite")
        if self.diameter <= 0:
            raise ValidationError(f"blank diameter must be > 0, got {self.diameter}")

    def radius_at(self, theta):
        """Radius of the blank contour at angle(s) theta."""
        theta = np.asarray(theta, dtype=float)
        return (self.diameter / 2.0
                + self.a1 * np.cos(2.0 * theta)
                + self.a2 * np.cos(4.0 * theta))


@dataclass(frozen=True)
class CupSpec:
    """Target cup: flat-bottom cylinder of given inner diameter and wall height."""

    diameter: float  # mm
    height: float    # mm

    def __post_init__(self):
        if self.diameter <= 0 or self.height < 0:
            raise ValidationError("cup diameter must be > 0 and height >= 0")


def _check_uniform_theta(theta: np.ndarray, what: str) -> None:
    if theta.ndim != 1 or theta.size < 8:
        raise ValidationError(f"{what} needs at least 8 samples, got {theta.size}")
    if theta.size % 4 != 0:
        raise ValidationError(f"{what} sample count must be a multiple of 4, got {theta.size}")
    if theta[0] < 0 or theta[-1] >= 2.0 * np.pi:
        raise ValidationError(f"{what} angles must lie in [0, 2*pi)")
    d = np.diff(theta)
    if np.any(d <= 0):
        raise ValidationError(f"{what} angles must be strictly increasing")
    if not np.allclose(d, d[0], rtol=0.0, atol=1e-9):
        raise ValidationError(f"{what} angular spacing must be uniform")


@dataclass(frozen=True)
class ClosedContour:
    """Sampled closed curve: radius vs angle on a uniform grid."""

    theta: np.ndarray   # radians, uniform, strictly increasing, in [0, 2*pi)
    radius: np.ndarray  # mm, all > 0

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        radius = np.asarray(self.radius, dtype=float)
        _check_uniform_theta(theta, "contour")
        if radius.shape != theta.shape:
            raise ValidationError("contour radius and theta lengths differ")
        if not np.all(np.isfinite(radius)):
            raise ValidationError("contour radii must be finite")
        if np.any(radius <= 0):
            raise ValidationError("contour radii must be positive")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "radius", radius)

    @property
    def n(self) -> int:
        return self.theta.size


@dataclass(frozen=True)
class ContourProfile:
    """Sampled rim profile: height vs angle on a uniform grid."""

    theta: np.ndarray   # radians, uniform, strictly increasing, in [0, 2*pi)
    height: np.ndarray  # mm

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        height = np.asarray(self.height, dtype=float)
        _check_uniform_theta(theta, "profile")
        if height.shape != theta.shape:
            raise ValidationError("profile height and theta lengths differ")
        if not np.all(np.isfinite(height)):
            raise ValidationError("profile heights must be finite")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "height", height)

    @property
    def n(self) -> int:
        return self.theta.size


def uniform_theta(n_points: int) -> np.ndarray:
    """Uniform angular grid theta_k = 2*pi*k/n over [0, 2*pi)."""
    if n_points < 8 or n_points % 4 != 0:
        raise ValidationError(
            f"n_points must be >= 8 and a multiple of 4, got {n_points}")
    return 2.0 * np.pi * np.arange(n_points) / n_points


def blank_contour(spec: BlankSpec, n_points: int = DEFAULT_N_POINTS) -> ClosedContour:
    """Sample the blank contour of `spec` at n_points uniform angles.

    Raises InvalidBlankError if the radius is non-positive at any sample,
    naming the first violating angle.
    """
    theta = uniform_theta(n_points)
    radius = spec.radius_at(theta)
    bad = np.flatnonzero(radius <= 0.0)
    if bad.size:
        k = int(bad[0])
        raise InvalidBlankError(
            f"blank radius {radius[k]:.6g} mm <= 0 at theta = {theta[k]:.6g} rad "
            f"(D={spec.diameter}, A1={spec.a1}, A2={spec.a2})")
    return ClosedContour(theta, radius)


def initial_blank_diameter(cup: CupSpec) -> float:
    """Blank diameter conserving sheet area at constant thickness.

    Flat-bottom cylinder: pi*D0^2/4 = pi*d^2/4 + pi*d*h, hence
    D0 = sqrt(d^2 + 4*d*h).
    """
    d, h = cup.diameter, cup.height
    return math.sqrt(d * d + 4.0 * d * h)


def ear_amplitude(profile: ContourProfile) -> float:
    """Peak-to-peak rim height: max(height) - min(height), mm."""
    return float(np.max(profile.height) - np.min(profile.height))


def quarter_nodes(n_nodes: int = QUARTER_NODES) -> np.ndarray:
    """Node angles of the quarter domain: theta_k = (pi/2) * k/(n_nodes-1)."""
    return (np.pi / 2.0) * np.arange(n_nodes) / (n_nodes - 1)


def deviation_vector(profile: ContourProfile, target_height: float,
                     n_nodes: int = QUARTER_NODES) -> np.ndarray:
    """Per-node clearance between the rim profile and the target height.

    The profile is restricted to the quarter period [0, pi/2] (the part and
    its defects carry two mirror symmetry planes) and resampled to `n_nodes`
    equally spaced nodes. Samples landing exactly on nodes are taken as-is;
    otherwise values are linearly interpolated.

    Returns
    -------
    np.ndarray
        height(node_k) - target_height for k = 0 .. n_nodes-1, mm.
    """
    if target_height <= 0:
        raise ValidationError(f"target height must be > 0, got {target_height}")
    if n_nodes < 2:
        raise ValidationError(f"need at least 2 quarter nodes, got {n_nodes}")
    nodes = quarter_nodes(n_nodes)
    values = np.interp(nodes, profile.theta, profile.height)
    return values - target_height


def write_contour_csv(path, theta: np.ndarray, values: np.ndarray) -> None:
    """Write a contour/profile as CSV: header `theta_rad,value_mm`, LF endings."""
    path = Path(path)
    with path.open("w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["theta_rad", "value_mm"])
        for t, v in zip(theta, values):
            writer.writerow([repr(float(t)), repr(float(v))])


def read_contour_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a `theta_rad,value_mm` CSV back into (theta, values) arrays."""
    path = Path(path)
    with path.open("r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ["theta_rad", "value_mm"]:
            raise ValidationError(
                f"{path}: expected header 'theta_rad,value_mm', got {header}")
        rows = [row for row in reader if row]
    try:
        theta = np.array([float(r[0]) for r in rows])
        values = np.array([float(r[1]) for r in rows])
    except (ValueError, IndexError) as exc:
        raise ValidationError(f"{path}: malformed contour CSV row: {exc}") from exc
    return theta, values
