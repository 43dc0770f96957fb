"""Process plants: a calibrated analytic surrogate and external-data ingestion.

The surrogate replaces a full forming simulation for desk-scale runs. It maps
a blank description to a rim-height profile through a low-order cosine
superposition whose gains are configuration, calibrated so that a circular
blank on the default steel reproduces the measured initial earing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import geometry, modal
from .doe import DesignMatrix, FactorSpace, to_physical
from .errors import (AmbiguousProfileError, InsufficientDataError,
                     ValidationError)
from .geometry import BlankSpec, ContourProfile
from .rsm import ResponseTable


@dataclass(frozen=True)
class MaterialAnisotropy:
    """Lankford coefficients of the sheet at 0/45/90 deg to rolling."""

    r0: float
    r45: float
    r90: float

    def __post_init__(self):
        if min(self.r0, self.r45, self.r90) <= 0:
            raise ValidationError("Lankford coefficients must be > 0")

    @property
    def delta_r(self) -> float:
        """Planar anisotropy (r0 - 2*r45 + r90)/2; drives the four-lobe ears."""
        return (self.r0 - 2.0 * self.r45 + self.r90) / 2.0


#: DC05 deep-drawing steel (0.8 mm USB sheet); delta_r = 0.845.
DC05 = MaterialAnisotropy(r0=2.09, r45=1.56, r90=2.72)


@dataclass(frozen=True)
class SurrogateParams:
    """Gains of the analytic plant. All values are configuration.

    Rim height model:

        h(theta) = base_height + k_d*dD + k_q*dD^2
                   + g2*A1*cos(2θ)
                   + (g4*A2 + c_ear*delta_r)*cos(4θ)
                   + kappa4_6*A2*cos(6θ)
                   + c8*cos(8θ),        dD = D - ref_diameter
    """

    ref_diameter: float = 116.63  # mm, area-conserving circular blank
    base_height: float = 34.69    # mm, rim height at the reference blank
    k_d: float = 0.886            # rim height per mm of blank diameter
    k_q: float = 0.03             # quadratic diameter term, 1/mm
    g2: float = 1.0               # blank A1 -> rim cos(2θ) transmission
    g4: float = 1.066             # blank A2 -> rim cos(4θ) transmission
    c_ear: float = 1.0176         # mm of cos(4θ) ear per unit delta_r
    kappa4_6: float = 0.03        # blank A2 -> rim cos(6θ) coupling, per mm
    c8: float = -0.05             # fixed cos(8θ) residual amplitude, mm

    def __post_init__(self):
        if self.ref_diameter <= 0 or self.base_height <= 0:
            raise ValidationError("ref_diameter and base_height must be > 0")

    def cancelling_a2(self, material: MaterialAnisotropy) -> float:
        """Four-lobe blank amplitude that cancels the rim cos(4θ) term."""
        return -self.c_ear * material.delta_r / self.g4


@dataclass(frozen=True)
class PlantRun:
    """One plant evaluation: blank in, rim profile out."""

    blank: BlankSpec
    material: MaterialAnisotropy
    profile: ContourProfile
    provenance: str  # "surrogate" or "ingested:<path>"


def simulate(blank: BlankSpec, material: MaterialAnisotropy,
             params: SurrogateParams | None = None,
             n_points: int = geometry.DEFAULT_N_POINTS) -> ContourProfile:
    """Rim profile of a drawn cup for the given blank on the surrogate plant.

    Deterministic; keeps the two mirror symmetries (theta -> -theta and
    theta -> pi - theta) exactly at the sample points. Invalid blanks raise
    the same error as geometry.blank_contour.
    """
    if params is None:
        params = SurrogateParams()
    geometry.blank_contour(blank, n_points)  # validates radius positivity
    theta = geometry.uniform_theta(n_points)
    dd = blank.diameter - params.ref_diameter
    height = (params.base_height + params.k_d * dd + params.k_q * dd * dd
              + params.g2 * blank.a1 * np.cos(2.0 * theta)
              + (params.g4 * blank.a2 + params.c_ear * material.delta_r)
              * np.cos(4.0 * theta)
              + params.kappa4_6 * blank.a2 * np.cos(6.0 * theta)
              + params.c8 * np.cos(8.0 * theta))
    return ContourProfile(theta, height)


def _read_rows(path: Path) -> tuple[list[str], list[list[float]]]:
    with path.open("r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValidationError(f"{path}: empty file")
        header = [c.strip() for c in header]
        rows = []
        for row in reader:
            if not row:
                continue
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ValidationError(f"{path}: malformed row {row}: {exc}") from exc
    return header, rows


def ingest_profile(path, n_points: int = geometry.DEFAULT_N_POINTS) -> ContourProfile:
    """Load an external rim measurement or simulation export as a profile.

    Two formats are accepted, discriminated by header:

    * ``theta_rad,value_mm`` -- polar profile samples;
    * ``x_mm,y_mm,z_mm`` -- raw rim point cloud. Points are converted to
      (theta, height) about the vertical axis through the cloud centroid,
      with z as height.

    Either way the samples are sorted by angle and resampled onto the
    uniform n_points grid by periodic linear interpolation.
    """
    path = Path(path)
    header, rows = _read_rows(path)
    if header == ["theta_rad", "value_mm"]:
        if len(rows) < 8:
            raise InsufficientDataError(
                f"{path}: need at least 8 samples, got {len(rows)}")
        theta = np.array([r[0] for r in rows])
        height = np.array([r[1] for r in rows])
    elif header == ["x_mm", "y_mm", "z_mm"]:
        if len(rows) < 8:
            raise InsufficientDataError(
                f"{path}: need at least 8 points, got {len(rows)}")
        xyz = np.array(rows)
        if xyz.shape[1] != 3:
            raise ValidationError(f"{path}: point rows must have 3 columns")
        cx, cy = xyz[:, 0].mean(), xyz[:, 1].mean()
        theta = np.arctan2(xyz[:, 1] - cy, xyz[:, 0] - cx) % (2.0 * np.pi)
        height = xyz[:, 2]
    else:
        raise ValidationError(
            f"{path}: unknown header {header}; expected 'theta_rad,value_mm' "
            f"or 'x_mm,y_mm,z_mm'")
    order = np.argsort(theta, kind="stable")
    theta = theta[order]
    height = height[order]
    dup = np.flatnonzero(np.diff(theta) < 1e-12)
    if dup.size:
        angles = ", ".join(f"{theta[i]:.9g}" for i in dup[:8])
        raise AmbiguousProfileError(
            f"{path}: duplicate angular positions at theta = {angles}")
    grid = geometry.uniform_theta(n_points)
    resampled = np.interp(grid, theta, height, period=2.0 * np.pi)
    return ContourProfile(grid, resampled)


def run_design(design: DesignMatrix, space: FactorSpace,
               material: MaterialAnisotropy,
               params: SurrogateParams | None = None,
               target_height: float = 35.0,
               n_points: int = geometry.DEFAULT_N_POINTS,
               basis: modal.ModalBasis | None = None,
               n_modes: int = modal.DEFAULT_N_MODES) -> ResponseTable:
    """Run every design point through the surrogate and decompose the rims.

    Each normalized point becomes a physical blank, is formed on the
    surrogate, reduced to its quarter deviation vector against
    target_height, and projected onto the modal basis. Rows are assembled in
    design order.
    """
    if design.n_factors != 3 or space.names != ("D", "A1", "A2"):
        raise ValidationError(
            f"run_design expects factors ('D', 'A1', 'A2'), got {space.names}")
    if basis is None:
        basis = modal.build_modal_basis(n_modes=n_modes)
    physical = to_physical(space, design.points)
    values = np.empty((design.n_points, n_modes))
    for i, (d, a1, a2) in enumerate(physical):
        profile = simulate(BlankSpec(d, a1, a2), material, params, n_points)
        dev = geometry.deviation_vector(profile, target_height, basis.n_nodes)
        coords = modal.project(dev, basis, n_modes)
        values[i] = coords.lambdas
    names = tuple(f"L{i}" for i in range(1, n_modes + 1))
    return ResponseTable(names=names, values=values)
