"""Campaign orchestration: on-disk state, lifecycle, verification, reports.

A campaign lives in one directory:

    campaign.json     -- full state, schema-versioned, deterministic layout
    design.csv        -- the experiment plan in physical units
    models.json       -- fitted response surfaces
    optimum.json      -- optimization result
    runs/run_NN.csv   -- one rim profile per design point
    runs/baseline.csv, runs/optimum.csv  -- verification profiles
    reports/*.svg, reports/summary.txt

Stages advance monotonically: configured -> designed -> simulated -> fitted
-> optimized -> verified. Each command requires the previous stage and may
run once per campaign directory.
"""

from __future__ import annotations

import contextlib
import hashlib
import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import geometry, modal, plant, report
from .doe import (DesignMatrix, Factor, FactorSpace, ROLE_CENTER, ccd_design,
                  to_physical, write_design_csv)
from .errors import (CampaignLockedError, FreshStateError, LifecycleError,
                     MigrationNeededError, StateIntegrityError,
                     ValidationError)
from .geometry import BlankSpec, ContourProfile, CupSpec
from .optimizer import ConvergenceReport, ObjectiveSpec, Optimum, minimize
from .plant import DC05, MaterialAnisotropy, SurrogateParams
from .rsm import (QuadraticModel, ResponseTable, fit_quadratic,
                  models_from_dict, models_to_dict)

SCHEMA_VERSION = 1
STATE_FILE = "campaign.json"
LOCK_FILE = "campaign.lock"
DESIGN_FILE = "design.csv"
MODELS_FILE = "models.json"
OPTIMUM_FILE = "optimum.json"
RUNS_DIR = "runs"
REPORTS_DIR = "reports"

STAGES = ("configured", "designed", "simulated", "fitted", "optimized",
          "verified")

_AMPLITUDE_EPS = 1e-12


@dataclass
class CampaignConfig:
    """Everything needed to reproduce a campaign from scratch."""

    space: FactorSpace
    target_height: float = 35.0
    cup: CupSpec = field(default_factory=lambda: CupSpec(66.03, 35.0))
    material: MaterialAnisotropy = DC05
    surrogate: SurrogateParams = field(default_factory=SurrogateParams)
    n_modes: int = 5
    n_points: int = geometry.DEFAULT_N_POINTS

    def to_dict(self) -> dict:
        return {
            "factors": [
                {"name": f.name, "center": f.center, "half_range": f.half_range}
                for f in self.space.factors
            ],
            "alpha": self.space.alpha,
            "target_height": self.target_height,
            "cup": {"diameter": self.cup.diameter, "height": self.cup.height},
            "material": {"r0": self.material.r0, "r45": self.material.r45,
                         "r90": self.material.r90},
            "surrogate": {
                "ref_diameter": self.surrogate.ref_diameter,
                "base_height": self.surrogate.base_height,
                "k_d": self.surrogate.k_d,
                "k_q": self.surrogate.k_q,
                "g2": self.surrogate.g2,
                "g4": self.surrogate.g4,
                "c_ear": self.surrogate.c_ear,
                "kappa4_6": self.surrogate.kappa4_6,
                "c8": self.surrogate.c8,
            },
            "n_modes": self.n_modes,
            "n_points": self.n_points,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CampaignConfig":
        return cls(
            space=FactorSpace(
                factors=tuple(Factor(f["name"], f["center"], f["half_range"])
                              for f in d["factors"]),
                alpha=d["alpha"],
            ),
            target_height=d["target_height"],
            cup=CupSpec(d["cup"]["diameter"], d["cup"]["height"]),
            material=MaterialAnisotropy(**d["material"]),
            surrogate=SurrogateParams(**d["surrogate"]),
            n_modes=d["n_modes"],
            n_points=d["n_points"],
        )


def default_config() -> CampaignConfig:
    """Default campaign: blank factor ranges, 35 mm target, DC05 sheet."""
    from .doe import default_factor_space
    return CampaignConfig(space=default_factor_space())


@dataclass
class RunRecord:
    """One executed design point."""

    run: int              # 1-based design order
    role: str
    normalized: tuple
    blank: tuple          # (D, A1, A2), mm
    profile_file: str     # path relative to the campaign directory
    sha256: str
    provenance: str       # "surrogate" or "ingested:<name>"
    lambdas: tuple
    residue: float

    def to_dict(self) -> dict:
        return {
            "run": self.run, "role": self.role,
            "normalized": list(self.normalized), "blank": list(self.blank),
            "profile_file": self.profile_file, "sha256": self.sha256,
            "provenance": self.provenance, "lambdas": list(self.lambdas),
            "residue": self.residue,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        return cls(run=d["run"], role=d["role"],
                   normalized=tuple(d["normalized"]), blank=tuple(d["blank"]),
                   profile_file=d["profile_file"], sha256=d["sha256"],
                   provenance=d["provenance"], lambdas=tuple(d["lambdas"]),
                   residue=d["residue"])


@dataclass
class VerificationRecord:
    """Optimal blank re-simulated on the plant, against the circular baseline."""

    optimum_lambdas: tuple
    optimum_residue: float
    optimum_amplitude: float
    baseline_lambdas: tuple
    baseline_amplitude: float
    reduction_factor: float | None  # baseline/optimum amplitude; None if undefined
    status: str                     # "ok", "not_applicable", or "unbounded"
    baseline_file: str
    baseline_sha256: str
    optimum_file: str
    optimum_sha256: str

    def to_dict(self) -> dict:
        return {
            "optimum_lambdas": list(self.optimum_lambdas),
            "optimum_residue": self.optimum_residue,
            "optimum_amplitude": self.optimum_amplitude,
            "baseline_lambdas": list(self.baseline_lambdas),
            "baseline_amplitude": self.baseline_amplitude,
            "reduction_factor": self.reduction_factor,
            "status": self.status,
            "baseline_file": self.baseline_file,
            "baseline_sha256": self.baseline_sha256,
            "optimum_file": self.optimum_file,
            "optimum_sha256": self.optimum_sha256,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        return cls(
            optimum_lambdas=tuple(d["optimum_lambdas"]),
            optimum_residue=d["optimum_residue"],
            optimum_amplitude=d["optimum_amplitude"],
            baseline_lambdas=tuple(d["baseline_lambdas"]),
            baseline_amplitude=d["baseline_amplitude"],
            reduction_factor=d["reduction_factor"],
            status=d["status"],
            baseline_file=d["baseline_file"],
            baseline_sha256=d["baseline_sha256"],
            optimum_file=d["optimum_file"],
            optimum_sha256=d["optimum_sha256"],
        )


@dataclass
class CampaignState:
    config: CampaignConfig
    design: DesignMatrix | None = None
    runs: list[RunRecord] = field(default_factory=list)
    models: list[QuadraticModel] | None = None
    optimum: Optimum | None = None
    verification: VerificationRecord | None = None
    timestamps: dict = field(default_factory=dict)

    @property
    def stage(self) -> str:
        if self.verification is not None:
            return "verified"
        if self.optimum is not None:
            return "optimized"
        if self.models is not None:
            return "fitted"
        if self.runs:
            return "simulated"
        if self.design is not None:
            return "designed"
        return "configured"


def _require_stage(state: CampaignState, needed: str, command: str) -> None:
    have = state.stage
    if have != needed:
        if STAGES.index(have) > STAGES.index(needed):
            raise LifecycleError(
                f"`{command}` already done (campaign is {have}); "
                f"start a fresh campaign directory to redo it")
        raise LifecycleError(
            f"`{command}` needs a {needed} campaign, but this one is only "
            f"{have}; run the earlier stages first")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@contextlib.contextmanager
def campaign_lock(campaign_dir):
    """Advisory single-writer lock on a campaign directory."""
    campaign_dir = Path(campaign_dir)
    campaign_dir.mkdir(parents=True, exist_ok=True)
    lock_path = campaign_dir / LOCK_FILE
    try:
        fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise CampaignLockedError(
            f"{lock_path} exists; another process is writing this campaign "
            f"(remove the file if that process is gone)") from None
    try:
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        yield
    finally:
        with contextlib.suppress(FileNotFoundError):
            lock_path.unlink()


# ---------------------------------------------------------------------------
# serialization

def _optimum_to_dict(opt: Optimum, space: FactorSpace) -> dict:
    physical = opt.physical
    if physical is None:
        physical = to_physical(space, opt.point)
    return {
        "point": [float(v) for v in opt.point],
        "physical": {name: float(v) for name, v in zip(space.names, physical)},
        "f_value": float(opt.f_value),
        "predicted": {f"L{i+1}": float(v) for i, v in enumerate(opt.predicted)},
        "report": {
            "starts": opt.report.starts,
            "iterations": opt.report.iterations,
            "gradient_norm": opt.report.gradient_norm,
        },
    }


def _optimum_from_dict(d: dict, space: FactorSpace) -> Optimum:
    point = np.array(d["point"])
    return Optimum(
        point=point,
        f_value=d["f_value"],
        predicted=np.array([d["predicted"][k]
                            for k in sorted(d["predicted"],
                                            key=lambda s: int(s[1:]))]),
        report=ConvergenceReport(
            starts=d["report"]["starts"],
            iterations=d["report"]["iterations"],
            gradient_norm=d["report"]["gradient_norm"],
        ),
        physical=np.array([d["physical"][n] for n in space.names]),
    )


def state_to_dict(state: CampaignState) -> dict:
    d: dict = {
        "schema_version": SCHEMA_VERSION,
        "config": state.config.to_dict(),
        "design": None,
        "runs": [r.to_dict() for r in state.runs],
        "models": None,
        "optimum": None,
        "verification": None,
        "timestamps": dict(state.timestamps),
    }
    if state.design is not None:
        d["design"] = {
            "points": [[float(v) for v in row] for row in state.design.points],
            "roles": list(state.design.roles),
        }
    if state.models is not None:
        d["models"] = models_to_dict(state.models)
    if state.optimum is not None:
        d["optimum"] = _optimum_to_dict(state.optimum, state.config.space)
    if state.verification is not None:
        d["verification"] = state.verification.to_dict()
    return d


def state_from_dict(d: dict) -> CampaignState:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise MigrationNeededError(
            f"campaign schema {d.get('schema_version')!r} != supported "
            f"{SCHEMA_VERSION}; migrate the state file first")
    config = CampaignConfig.from_dict(d["config"])
    state = CampaignState(config=config, timestamps=dict(d.get("timestamps", {})))
    if d.get("design") is not None:
        state.design = DesignMatrix(points=np.array(d["design"]["points"]),
                                    roles=tuple(d["design"]["roles"]))
    state.runs = [RunRecord.from_dict(r) for r in d.get("runs", [])]
    if d.get("models") is not None:
        state.models = models_from_dict(d["models"])
    if d.get("optimum") is not None:
        state.optimum = _optimum_from_dict(d["optimum"], config.space)
    if d.get("verification") is not None:
        state.verification = VerificationRecord.from_dict(d["verification"])
    # lifecycle monotonicity: later stages never present without earlier ones
    present = [state.design is not None, bool(state.runs),
               state.models is not None, state.optimum is not None,
               state.verification is not None]
    seen_gap = False
    for flag in present:
        if not flag:
            seen_gap = True
        elif seen_gap:
            raise StateIntegrityError(
                "state file violates the campaign lifecycle (later stage "
                "present without its predecessor)")
    return state


def save_state(state: CampaignState, campaign_dir) -> Path:
    """Write campaign.json; byte-stable for identical states."""
    campaign_dir = Path(campaign_dir)
    campaign_dir.mkdir(parents=True, exist_ok=True)
    path = campaign_dir / STATE_FILE
    payload = json.dumps(state_to_dict(state), indent=2, sort_keys=True) + "\n"
    path.write_text(payload, encoding="utf-8", newline="\n")
    return path


def load_state(campaign_dir) -> CampaignState:
    """Read and validate campaign.json, including referenced-file hashes."""
    campaign_dir = Path(campaign_dir)
    path = campaign_dir / STATE_FILE
    if not path.exists():
        raise FreshStateError(
            f"no campaign state in {campaign_dir}; run "
            f"`earforge --campaign {campaign_dir} init` first")
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StateIntegrityError(f"{path} is not valid JSON: {exc}") from exc
    state = state_from_dict(d)
    referenced = [(f"run {r.run}", r.profile_file, r.sha256) for r in state.runs]
    if state.verification is not None:
        v = state.verification
        referenced += [("baseline", v.baseline_file, v.baseline_sha256),
                       ("optimum", v.optimum_file, v.optimum_sha256)]
    for label, rel, digest in referenced:
        fpath = campaign_dir / rel
        if not fpath.exists():
            raise StateIntegrityError(f"{label}: missing contour file {rel}")
        if _sha256(fpath) != digest:
            raise StateIntegrityError(
                f"{label}: contour file {rel} does not match its recorded hash")
    return state


# ---------------------------------------------------------------------------
# stage operations

def init_campaign(campaign_dir, config: CampaignConfig | None = None) -> CampaignState:
    """Create a fresh campaign directory with the default configuration."""
    campaign_dir = Path(campaign_dir)
    if (campaign_dir / STATE_FILE).exists():
        raise ValidationError(
            f"{campaign_dir} already holds a campaign; refusing to overwrite")
    state = CampaignState(config=config or default_config())
    state.timestamps["configured"] = _now()
    save_state(state, campaign_dir)
    return state


def design_campaign(state: CampaignState, campaign_dir) -> CampaignState:
    """Emit the central composite design and design.csv."""
    _require_stage(state, "configured", "design")
    state.design = ccd_design(state.config.space)
    state.timestamps["designed"] = _now()
    write_design_csv(Path(campaign_dir) / DESIGN_FILE, state.config.space,
                     state.design)
    save_state(state, campaign_dir)
    return state


def _record_run(state: CampaignState, campaign_dir: Path, i: int, role: str,
                normalized, blank: BlankSpec, profile: ContourProfile,
                provenance: str, basis) -> RunRecord:
    cfg = state.config
    rel = f"{RUNS_DIR}/run_{i:02d}.csv"
    fpath = campaign_dir / rel
    geometry.write_contour_csv(fpath, profile.theta, profile.height)
    dev = geometry.deviation_vector(profile, cfg.target_height, basis.n_nodes)
    coords = modal.project(dev, basis, cfg.n_modes)
    return RunRecord(
        run=i, role=role,
        normalized=tuple(float(v) for v in normalized),
        blank=(blank.diameter, blank.a1, blank.a2),
        profile_file=rel, sha256=_sha256(fpath), provenance=provenance,
        lambdas=tuple(float(v) for v in coords.lambdas),
        residue=float(coords.residue),
    )


def simulate_campaign(state: CampaignState, campaign_dir,
                      ingest_dir=None) -> CampaignState:
    """Run all pending design points on the plant (or ingest external files).

    With ingest_dir set, each design point i reads <ingest_dir>/run_NN.csv
    instead of calling the surrogate; files may be polar profiles or raw
    point clouds (see plant.ingest_profile).
    """
    _require_stage(state, "designed", "simulate")
    campaign_dir = Path(campaign_dir)
    (campaign_dir / RUNS_DIR).mkdir(parents=True, exist_ok=True)
    cfg = state.config
    basis = modal.build_modal_basis(n_modes=cfg.n_modes)
    physical = to_physical(cfg.space, state.design.points)
    records = []
    for i, (point, role, phys) in enumerate(
            zip(state.design.points, state.design.roles, physical), start=1):
        blank = BlankSpec(*phys)
        if ingest_dir is None:
            profile = plant.simulate(blank, cfg.material, cfg.surrogate,
                                     cfg.n_points)
            provenance = "surrogate"
        else:
            src = Path(ingest_dir) / f"run_{i:02d}.csv"
            if not src.exists():
                raise ValidationError(f"ingest directory misses {src.name}")
            profile = plant.ingest_profile(src, cfg.n_points)
            provenance = f"ingested:{src.name}"
        records.append(_record_run(state, campaign_dir, i, role, point, blank,
                                   profile, provenance, basis))
    state.runs = records
    state.timestamps["simulated"] = _now()
    save_state(state, campaign_dir)
    return state


def response_table(state: CampaignState) -> ResponseTable:
    """Collected modal coordinates of the executed runs, in design order."""
    names = tuple(f"L{i}" for i in range(1, state.config.n_modes + 1))
    values = np.array([r.lambdas for r in state.runs])
    return ResponseTable(names=names, values=values)


def fit_campaign(state: CampaignState, campaign_dir) -> CampaignState:
    """Fit one quadratic surface per modal coordinate; writes models.json."""
    _require_stage(state, "simulated", "fit")
    state.models = fit_quadratic(state.design, response_table(state),
                                 factor_names=state.config.space.names)
    state.timestamps["fitted"] = _now()
    payload = json.dumps(models_to_dict(state.models), indent=2,
                         sort_keys=True) + "\n"
    (Path(campaign_dir) / MODELS_FILE).write_text(payload, encoding="utf-8")
    save_state(state, campaign_dir)
    return state


def optimize_campaign(state: CampaignState, campaign_dir) -> CampaignState:
    """Minimize the summed squared modal coordinates; writes optimum.json."""
    _require_stage(state, "fitted", "optimize")
    spec = ObjectiveSpec(models=tuple(state.models))
    state.optimum = minimize(spec, space=state.config.space)
    state.timestamps["optimized"] = _now()
    payload = json.dumps(_optimum_to_dict(state.optimum, state.config.space),
                         indent=2, sort_keys=True) + "\n"
    (Path(campaign_dir) / OPTIMUM_FILE).write_text(payload, encoding="utf-8")
    save_state(state, campaign_dir)
    return state


def verify_campaign(state: CampaignState, campaign_dir) -> CampaignState:
    """Re-simulate the optimal blank and compare with the circular baseline.

    The baseline is the circular blank at the area-conserving diameter of the
    configured cup. Reduction factor = baseline amplitude / optimum amplitude;
    reported as not applicable when the baseline itself is defect-free.
    """
    _require_stage(state, "optimized", "verify")
    campaign_dir = Path(campaign_dir)
    (campaign_dir / RUNS_DIR).mkdir(parents=True, exist_ok=True)
    cfg = state.config
    basis = modal.build_modal_basis(n_modes=cfg.n_modes)

    d0 = geometry.initial_blank_diameter(cfg.cup)
    baseline_profile = plant.simulate(BlankSpec(d0), cfg.material,
                                      cfg.surrogate, cfg.n_points)
    opt_blank = BlankSpec(*state.optimum.physical)
    opt_profile = plant.simulate(opt_blank, cfg.material, cfg.surrogate,
                                 cfg.n_points)

    def decompose(profile):
        dev = geometry.deviation_vector(profile, cfg.target_height,
                                        basis.n_nodes)
        return modal.project(dev, basis, cfg.n_modes)

    base_coords = decompose(baseline_profile)
    opt_coords = decompose(opt_profile)
    base_amp = geometry.ear_amplitude(baseline_profile)
    opt_amp = geometry.ear_amplitude(opt_profile)
    if base_amp <= _AMPLITUDE_EPS:
        status, reduction = "not_applicable", None
    elif opt_amp <= _AMPLITUDE_EPS:
        status, reduction = "unbounded", None
    else:
        status, reduction = "ok", base_amp / opt_amp

    base_rel = f"{RUNS_DIR}/baseline.csv"
    opt_rel = f"{RUNS_DIR}/optimum.csv"
    geometry.write_contour_csv(campaign_dir / base_rel, baseline_profile.theta,
                               baseline_profile.height)
    geometry.write_contour_csv(campaign_dir / opt_rel, opt_profile.theta,
                               opt_profile.height)
    state.verification = VerificationRecord(
        optimum_lambdas=tuple(float(v) for v in opt_coords.lambdas),
        optimum_residue=float(opt_coords.residue),
        optimum_amplitude=opt_amp,
        baseline_lambdas=tuple(float(v) for v in base_coords.lambdas),
        baseline_amplitude=base_amp,
        reduction_factor=reduction,
        status=status,
        baseline_file=base_rel,
        baseline_sha256=_sha256(campaign_dir / base_rel),
        optimum_file=opt_rel,
        optimum_sha256=_sha256(campaign_dir / opt_rel),
    )
    state.timestamps["verified"] = _now()
    save_state(state, campaign_dir)
    return state


# ---------------------------------------------------------------------------
# reporting

def _center_run(state: CampaignState) -> RunRecord:
    for r in state.runs:
        if r.role == ROLE_CENTER:
            return r
    raise StateIntegrityError("campaign has no center run")


def _deviation_from_file(campaign_dir: Path, rel: str,
                         cfg: CampaignConfig) -> tuple[np.ndarray, np.ndarray]:
    theta, height = geometry.read_contour_csv(campaign_dir / rel)
    return theta, height - cfg.target_height


def report_campaign(state: CampaignState, campaign_dir) -> tuple[list, list]:
    """Write every report whose backing data exists.

    Returns (written, skipped) where skipped pairs each missing report with
    the stage that would produce its data. Raises LifecycleError when no
    report can be produced at all.
    """
    if state.stage in ("configured", "designed"):
        done = STAGES.index(state.stage)
        missing = STAGES[done + 1:STAGES.index("simulated") + 1]
        raise LifecycleError(
            "report needs at least a simulated campaign; missing stages: "
            + ", ".join(missing))
    campaign_dir = Path(campaign_dir)
    out_dir = campaign_dir / REPORTS_DIR
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = state.config
    written: list[str] = []
    skipped: list[tuple[str, str]] = []

    center = _center_run(state)
    theta, dev = _deviation_from_file(campaign_dir, center.profile_file, cfg)
    svg = report.polar_deviation_svg(
        theta, dev, f"Rim deviation, center run (target {cfg.target_height} mm)")
    (out_dir / "deviation_polar.svg").write_text(svg, encoding="utf-8")
    written.append(f"{REPORTS_DIR}/deviation_polar.svg")

    series = [("center run", np.array(center.lambdas))]
    if state.verification is not None:
        series.append(("optimum", np.array(state.verification.optimum_lambdas)))
    svg = report.modal_bars_svg(series, "Modal coordinates (mm)")
    (out_dir / "modal_bars.svg").write_text(svg, encoding="utf-8")
    written.append(f"{REPORTS_DIR}/modal_bars.svg")

    if state.verification is not None:
        v = state.verification
        theta_b, dev_b = _deviation_from_file(campaign_dir, v.baseline_file, cfg)
        theta_o, dev_o = _deviation_from_file(campaign_dir, v.optimum_file, cfg)
        svg = report.overlay_polar_svg(theta_b, dev_b, dev_o, "nominal blank",
                                       "optimal blank",
                                       "Nominal vs optimum rim deviation")
        (out_dir / "overlay_polar.svg").write_text(svg, encoding="utf-8")
        written.append(f"{REPORTS_DIR}/overlay_polar.svg")

        (out_dir / "summary.txt").write_text(_summary_text(state),
                                             encoding="utf-8")
        written.append(f"{REPORTS_DIR}/summary.txt")
    else:
        skipped.append((f"{REPORTS_DIR}/overlay_polar.svg", "verified"))
        skipped.append((f"{REPORTS_DIR}/summary.txt", "verified"))
    return written, skipped


def _summary_text(state: CampaignState) -> str:
    cfg = state.config
    opt = state.optimum
    v = state.verification
    names = cfg.space.names
    lines = ["Campaign summary", "================", ""]
    lines.append("Optimal blank (physical units):")
    for name, val in zip(names, opt.physical):
        lines.append(f"  {name:>3} = {val: .6f} mm")
    lines.append(f"  F   = {opt.f_value:.6e}")
    lines.append("")
    header = "  mode   predicted      verified"
    lines.append("Modal coordinates at the optimum (mm):")
    lines.append(header)
    for i, (p, w) in enumerate(zip(opt.predicted, v.optimum_lambdas), start=1):
        lines.append(f"  L{i}   {p: .6e}  {w: .6e}")
    lines.append("")
    lines.append(f"Ear amplitude, nominal blank : {v.baseline_amplitude:.6f} mm")
    lines.append(f"Ear amplitude, optimal blank : {v.optimum_amplitude:.6f} mm")
    if v.reduction_factor is None:
        lines.append(f"Amplitude reduction          : {v.status}")
    else:
        lines.append(f"Amplitude reduction          : {v.reduction_factor:.2f}x")
    lines.append("")
    return "\n".join(lines)
