//! Configuration, single runs, ν-sweeps and their report files.
//!
//! Both config kinds are TOML with unknown keys rejected. A `simulate`
//! config works in the scaled frame `(τ, y)`; a `sweep` config states the
//! domain, window and final time in the physical frame and derives each
//! run's scaled grid from `ν`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::composite::CompositeWave;
use crate::entropy::FunctionalReport;
use crate::error::{ModelError, SolverError};
use crate::gas::{GasParams, State};
use crate::riemann::RiemannSetup;
use crate::shift::ShiftTrace;
use crate::shock::ProfileOptions;
use crate::solver::{Grid1D, Perturbation, SimState, Simulation, SolverOptions};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `ε = ε₁ε₂` for which the `(1-ε)` splitting is trusted.
pub const EPS_FLAG: f64 = 0.15;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Solver(SolverError),
}

impl From<SolverError> for HarnessError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Model(ModelError::Configuration(m)) => HarnessError::Config(m),
            SolverError::Model(m) => HarnessError::Model(m),
            SolverError::Setup(m) => HarnessError::Config(m),
            other => HarnessError::Solver(other),
        }
    }
}

impl HarnessError {
    /// Process exit code: 2 for configuration problems, 3 for numerical ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } | HarnessError::Config(_) => 2,
            HarnessError::Model(ModelError::Configuration(_) | ModelError::Argument(_)) => 2,
            HarnessError::Model(_) | HarnessError::Solver(_) => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasSection {
    pub gamma: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiemannSection {
    pub v_minus: f64,
    #[serde(default)]
    pub u_minus: f64,
    pub v_mid: f64,
    pub v_plus: f64,
    /// Warn when `ε₂ > strength_threshold · ε₁`.
    #[serde(default = "default_strength")]
    pub strength_threshold: f64,
}

fn default_strength() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RarefactionSection {
    pub nu: f64,
    /// Smoothing width; `√ν` when absent.
    #[serde(default)]
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub y_left: f64,
    pub y_right: f64,
    #[serde(default)]
    pub dy: Option<f64>,
    #[serde(default)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    pub tau_end: f64,
    /// Number of uniformly spaced output checkpoints after `τ = 0`.
    #[serde(default = "default_checkpoints")]
    pub checkpoints: usize,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    #[serde(default = "default_floor")]
    pub v_floor: f64,
}

fn default_checkpoints() -> usize {
    10
}
fn default_cfl() -> f64 {
    0.4
}
fn default_floor() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSection {
    #[serde(default)]
    pub bumps: Vec<Perturbation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftSection {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// `None` means `0.25 p(v₋)`.
    #[serde(default)]
    pub delta: Option<f64>,
}

fn yes() -> bool {
    true
}
fn default_lambda() -> f64 {
    0.1
}

impl Default for ShiftSection {
    fn default() -> Self {
        Self { enabled: true, lambda: default_lambda(), delta: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    /// Write a snapshot CSV at every checkpoint.
    #[serde(default = "yes")]
    pub snapshots: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: PathBuf::from("out"), snapshots: true }
    }
}

/// Profile table options as configured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSection {
    #[serde(default = "default_dxi")]
    pub dxi: f64,
    #[serde(default = "default_max_halfwidth")]
    pub max_halfwidth: f64,
}

fn default_dxi() -> f64 {
    ProfileOptions::default().dxi
}
fn default_max_halfwidth() -> f64 {
    ProfileOptions::default().max_halfwidth
}

impl Default for ProfileSection {
    fn default() -> Self {
        Self { dxi: default_dxi(), max_halfwidth: default_max_halfwidth() }
    }
}

impl ProfileSection {
    fn options(&self) -> ProfileOptions {
        ProfileOptions { dxi: self.dxi, halfwidth: None, max_halfwidth: self.max_halfwidth }
    }
}

/// Config of one scaled-frame run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub gas: GasSection,
    pub riemann: RiemannSection,
    pub rarefaction: RarefactionSection,
    pub grid: GridSection,
    pub time: TimeSection,
    #[serde(default)]
    pub perturbation: PerturbationSection,
    #[serde(default)]
    pub shift: ShiftSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub profile: ProfileSection,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), HarnessError> {
    if cond {
        Ok(())
    } else {
        Err(HarnessError::Config(msg()))
    }
}

/// Hex SHA-256 of the canonical JSON form.
pub fn config_hash<T: Serialize>(cfg: &T) -> String {
    let json = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(io_err(path))
}

fn build_setup(gas: &GasSection, r: &RiemannSection) -> Result<(RiemannSetup, Vec<String>), HarnessError> {
    let g = GasParams::new(gas.gamma, gas.alpha).map_err(to_config)?;
    let setup =
        RiemannSetup::from_volumes(g, State::new(r.v_minus, r.u_minus), r.v_mid, r.v_plus).map_err(to_config)?;
    let mut warnings = Vec::new();
    if let Some(w) = setup.strength_warning(r.strength_threshold) {
        warnings.push(w);
    }
    if setup.eps() > EPS_FLAG {
        warnings.push(format!("eps = eps1*eps2 = {:.4} exceeds {EPS_FLAG}", setup.eps()));
    }
    Ok((setup, warnings))
}

fn to_config(e: ModelError) -> HarnessError {
    match e {
        ModelError::Domain { .. } | ModelError::Argument(_) | ModelError::Configuration(_) => {
            HarnessError::Config(e.to_string())
        }
        other => HarnessError::Model(other),
    }
}

impl SimConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let cfg: SimConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::parse(&read(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let r = &self.rarefaction;
        check(r.nu > 0.0 && r.nu.is_finite(), || format!("rarefaction.nu must be positive, got {}", r.nu))?;
        if let Some(a) = r.a {
            check(a > 0.0 && a.is_finite(), || format!("rarefaction.a must be positive, got {a}"))?;
        }
        let g = &self.grid;
        check(g.dy.is_some() != g.n.is_some(), || "grid needs exactly one of dy and n".into())?;
        self.make_grid()?;
        let t = &self.time;
        check(t.tau_end > 0.0 && t.tau_end.is_finite(), || {
            format!("time.tau_end must be positive, got {}", t.tau_end)
        })?;
        check(t.checkpoints >= 1, || "time.checkpoints must be at least 1".into())?;
        check(t.cfl > 0.0 && t.cfl <= 1.3, || format!("time.cfl must lie in (0, 1.3], got {}", t.cfl))?;
        check(t.v_floor > 0.0, || format!("time.v_floor must be positive, got {}", t.v_floor))?;
        check(self.shift.lambda > 0.0 && self.shift.lambda < 1.0, || {
            format!("shift.lambda must lie in (0, 1), got {}", self.shift.lambda)
        })?;
        if let Some(d) = self.shift.delta {
            check(d > 0.0, || format!("shift.delta must be positive, got {d}"))?;
        }
        build_setup(&self.gas, &self.riemann)?;
        Ok(())
    }

    pub fn a(&self) -> f64 {
        self.rarefaction.a.unwrap_or_else(|| self.rarefaction.nu.sqrt())
    }

    pub fn make_grid(&self) -> Result<Grid1D, HarnessError> {
        let g = &self.grid;
        let grid = match (g.dy, g.n) {
            (Some(dy), None) => Grid1D::with_spacing(g.y_left, g.y_right, dy),
            (None, Some(n)) => Grid1D::new(g.y_left, g.y_right, n),
            _ => return Err(HarnessError::Config("grid needs exactly one of dy and n".into())),
        };
        grid.map_err(to_config)
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            cfl: self.time.cfl,
            v_floor: self.time.v_floor,
            shift: self.shift.enabled,
            lambda: self.shift.lambda,
            delta: self.shift.delta,
        }
    }

    /// Builds the simulation at `τ = 0` and lists setup warnings.
    pub fn build(&self) -> Result<(Simulation, Vec<String>), HarnessError> {
        let (setup, warnings) = build_setup(&self.gas, &self.riemann)?;
        let wave = CompositeWave::new(setup, self.profile.options(), self.rarefaction.nu, self.a())?;
        let grid = self.make_grid()?;
        let sim = Simulation::new(wave, grid, &self.perturbation.bumps, self.solver_options())?;
        Ok((sim, warnings))
    }

    pub fn checkpoint_times(&self) -> Vec<f64> {
        let n = self.time.checkpoints;
        (1..=n).map(|k| self.time.tau_end * k as f64 / n as f64).collect()
    }
}

/// Read-only view handed to checkpoint callbacks.
pub struct Checkpoint<'a> {
    pub index: usize,
    pub sim: &'a Simulation,
    pub report: &'a FunctionalReport,
    pub v_tilde: &'a [f64],
    pub h_tilde: &'a [f64],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub reports: Vec<FunctionalReport>,
    pub trace: ShiftTrace,
    pub steps: u64,
    pub e0: f64,
    pub final_state: SimState,
    pub warnings: Vec<String>,
}

/// Runs `sim` to each checkpoint time, reporting at `τ = 0` and after each.
pub fn run_checkpoints(
    sim: &mut Simulation,
    times: &[f64],
    mut callback: impl FnMut(&Checkpoint<'_>) -> Result<(), HarnessError>,
) -> Result<Vec<FunctionalReport>, HarnessError> {
    let mut reports = Vec::with_capacity(times.len() + 1);
    let mut emit = |sim: &mut Simulation, index: usize| -> Result<(), HarnessError> {
        let report = sim.report()?;
        let c = sim.composite_now()?;
        let (vt, ht) = (c.v.clone(), c.h.clone());
        callback(&Checkpoint { index, sim, report: &report, v_tilde: &vt, h_tilde: &ht })?;
        reports.push(report);
        Ok(())
    };
    emit(sim, 0)?;
    for (k, &t) in times.iter().enumerate() {
        sim.advance_to(t)?;
        emit(sim, k + 1)?;
    }
    sim.record_shift_sample()?;
    Ok(reports)
}

pub fn run_simulation(
    cfg: &SimConfig,
    callback: impl FnMut(&Checkpoint<'_>) -> Result<(), HarnessError>,
) -> Result<RunSummary, HarnessError> {
    let (mut sim, warnings) = cfg.build()?;
    let reports = run_checkpoints(&mut sim, &cfg.checkpoint_times(), callback)?;
    Ok(RunSummary {
        reports,
        trace: sim.trace.clone(),
        steps: sim.steps,
        e0: sim.e0,
        final_state: sim.state.clone(),
        warnings,
    })
}

/// CSV with columns `y,v,h,v_tilde,h_tilde`.
pub fn snapshot_csv(ys: &[f64], v: &[f64], h: &[f64], vt: &[f64], ht: &[f64]) -> String {
    let mut out = String::from("y,v,h,v_tilde,h_tilde\n");
    for i in 0..ys.len() {
        let _ = writeln!(out, "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}", ys[i], v[i], h[i], vt[i], ht[i]);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedQuantities {
    pub sigma1: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub eps: f64,
    pub mid: State,
    pub plus: State,
    pub a: f64,
    pub delta: f64,
    pub nodes: usize,
    pub dy: f64,
    pub e0: f64,
    pub profile_decay_rate: f64,
    pub profile_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub config: SimConfig,
    pub config_hash: String,
    pub derived: DerivedQuantities,
    pub steps: u64,
    pub status: String,
    pub warnings: Vec<String>,
    pub files: Vec<FileDigest>,
}

/// Stored state for `check`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredSnapshot {
    pub schema_version: u32,
    pub config_hash: String,
    pub state: SimState,
}

fn write_file(dir: &Path, name: &str, bytes: &[u8], files: &mut Vec<FileDigest>) -> Result<(), HarnessError> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(io_err(&path))?;
    files.push(FileDigest { name: name.to_string(), sha256: sha256_hex(bytes) });
    Ok(())
}

/// Runs a configured simulation and writes snapshots, `functionals.json`,
/// `shift_trace.csv`, `state.json` and `manifest.json` into the output
/// directory. A numerical abort still writes the manifest, with the failure
/// as its status, before the error is returned.
pub fn simulate_to_dir(cfg: &SimConfig) -> Result<RunManifest, HarnessError> {
    let dir = cfg.output.dir.clone();
    std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let hash = config_hash(cfg);
    let (mut sim, warnings) = cfg.build()?;
    let w = &sim.wave;
    let derived = DerivedQuantities {
        sigma1: w.setup.sigma1,
        eps1: w.setup.eps1,
        eps2: w.setup.eps2,
        eps: w.setup.eps(),
        mid: w.setup.mid,
        plus: w.setup.plus,
        a: w.rare.a,
        delta: sim.delta,
        nodes: sim.grid.n,
        dy: sim.grid.dy,
        e0: sim.e0,
        profile_decay_rate: w.profile.fitted_decay_rate,
        profile_residual: w.profile.ode_residual_max(),
    };
    let mut files = Vec::new();
    let snapshots = cfg.output.snapshots;
    let result = run_checkpoints(&mut sim, &cfg.checkpoint_times(), |c| {
        if snapshots {
            let csv = snapshot_csv(&c.sim.ys, &c.sim.state.v, &c.sim.state.h, c.v_tilde, c.h_tilde);
            write_file(&dir, &format!("snapshot_{:04}.csv", c.index), csv.as_bytes(), &mut files)?;
        }
        Ok(())
    });
    let status = match &result {
        Ok(_) => "ok".to_string(),
        Err(e) => format!("aborted: {e}"),
    };
    let reports = result.as_ref().map(|r| r.as_slice()).unwrap_or(&[]);
    let json = serde_json::to_vec_pretty(reports).expect("reports serialize");
    write_file(&dir, "functionals.json", &json, &mut files)?;
    write_file(&dir, "shift_trace.csv", sim.trace.to_csv().as_bytes(), &mut files)?;
    let stored = StoredSnapshot { schema_version: SCHEMA_VERSION, config_hash: hash.clone(), state: sim.state.clone() };
    write_file(&dir, "state.json", &serde_json::to_vec(&stored).expect("state serializes"), &mut files)?;
    let manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        config_hash: hash,
        derived,
        steps: sim.steps,
        status,
        warnings,
        files,
    };
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_vec_pretty(&manifest).expect("manifest serializes")).map_err(io_err(&path))?;
    result?;
    Ok(manifest)
}

/// Outcome of the identity and nonnegativity suites on one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub tau: f64,
    pub reports: Vec<FunctionalReport>,
    pub identity_residuals: Vec<f64>,
    pub identity_tolerances: Vec<f64>,
    pub negative_parts: Vec<String>,
    pub weight_ok: bool,
    pub passed: bool,
}

pub const CHECK_DELTAS: [f64; 3] = [0.05, 0.1, 0.25];

/// Components of `G_δ` below `-1e-14 · scale`, with `scale` the largest
/// functional magnitude of the report.
pub fn negative_parts(r: &FunctionalReport) -> Vec<String> {
    let scale = r.nonnegative_parts().iter().map(|(_, x)| x.abs()).fold(r.j_good.abs(), f64::max);
    r.nonnegative_parts()
        .iter()
        .filter(|(_, val)| *val < -1e-14 * scale)
        .map(|(name, val)| format!("{name} = {val:e}"))
        .collect()
}

/// `1 - λ <= w <= 1` and `w_y <= 0` on the grid.
pub fn weight_ok(r: &FunctionalReport, lambda: f64) -> bool {
    r.w_min >= 1.0 - lambda - 1e-15 && r.w_max <= 1.0 + 1e-15 && r.w_y_max <= 0.0
}

/// Identity tolerance `1e-10 (1 + |J_bad| + |J_good|)` and nonnegativity
/// floor `-1e-14 · scale`, with `scale` the largest functional magnitude.
pub fn check_state(sim: &mut Simulation) -> Result<CheckOutcome, HarnessError> {
    let mut out = CheckOutcome {
        tau: sim.state.tau,
        reports: Vec::new(),
        identity_residuals: Vec::new(),
        identity_tolerances: Vec::new(),
        negative_parts: Vec::new(),
        weight_ok: true,
        passed: true,
    };
    let lambda = sim.entropy.weight.lambda;
    for delta in CHECK_DELTAS {
        let r = sim.report_with(delta)?;
        let tol = 1e-10 * (1.0 + r.j_bad.abs() + r.j_good.abs());
        let res = r.identity_residual();
        out.passed &= res <= tol;
        out.negative_parts.extend(negative_parts(&r).into_iter().map(|m| format!("{m} at delta = {delta}")));
        out.weight_ok &= weight_ok(&r, lambda);
        out.identity_residuals.push(res);
        out.identity_tolerances.push(tol);
        out.reports.push(r);
    }
    out.passed &= out.negative_parts.is_empty() && out.weight_ok;
    Ok(out)
}

/// Loads `state.json` written by `simulate` and checks it against `cfg`.
pub fn check_snapshot(cfg: &SimConfig, path: &Path) -> Result<CheckOutcome, HarnessError> {
    let stored: StoredSnapshot =
        serde_json::from_str(&read(path)?).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
    check(stored.schema_version == SCHEMA_VERSION, || {
        format!("snapshot schema version {} differs from {SCHEMA_VERSION}", stored.schema_version)
    })?;
    let hash = config_hash(cfg);
    check(stored.config_hash == hash, || format!("snapshot was written by config {}, not {hash}", stored.config_hash))?;
    let (mut sim, _) = cfg.build()?;
    check(stored.state.v.len() == sim.grid.n && stored.state.h.len() == sim.grid.n, || {
        format!("snapshot has {} nodes, config grid has {}", stored.state.v.len(), sim.grid.n)
    })?;
    check(stored.state.v.iter().all(|&v| v > 0.0 && v.is_finite()), || "snapshot has nonpositive v".into())?;
    sim.state = stored.state;
    check_state(&mut sim)
}

/// `ν ↦ a(ν) = coefficient · ν^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ARule {
    #[serde(default = "one")]
    pub coefficient: f64,
    #[serde(default = "half")]
    pub exponent: f64,
}

fn one() -> f64 {
    1.0
}
fn half() -> f64 {
    0.5
}

impl Default for ARule {
    fn default() -> Self {
        Self { coefficient: 1.0, exponent: 0.5 }
    }
}

impl ARule {
    pub fn a(&self, nu: f64) -> f64 {
        self.coefficient * nu.powf(self.exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub nu_list: Vec<f64>,
    #[serde(default)]
    pub a_rule: ARule,
    /// Final physical time `T`.
    pub t_final: f64,
    /// Physical domain `[x_left, x_right]`.
    pub x_left: f64,
    pub x_right: f64,
    /// Scaled-frame spacing, shared by every `ν`.
    pub dy: f64,
    /// Report window `K = [window[0], window[1]]`.
    pub window: [f64; 2],
    /// Half-width of the excluded shock neighbourhood in units of `√ν`.
    #[serde(default = "one")]
    pub away_radius: f64,
    #[serde(default = "default_sweep_checkpoints")]
    pub checkpoints: usize,
    #[serde(default = "default_sweep_cfl")]
    pub cfl: f64,
    #[serde(default = "default_floor")]
    pub v_floor: f64,
}

fn default_sweep_checkpoints() -> usize {
    50
}
fn default_sweep_cfl() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub gas: GasSection,
    pub riemann: RiemannSection,
    pub sweep: SweepSection,
    /// Bumps in scaled coordinates relative to the origin.
    #[serde(default)]
    pub perturbation: PerturbationSection,
    #[serde(default)]
    pub shift: ShiftSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub profile: ProfileSection,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::parse(&read(path)?)
    }

    /// The desk-scale default sweep on the triple `(1, 0.8, 0.7)`.
    pub fn desk_default() -> Self {
        Self {
            gas: GasSection { gamma: 1.4, alpha: 1.0 },
            riemann: RiemannSection {
                v_minus: 1.0,
                u_minus: 0.0,
                v_mid: 0.8,
                v_plus: 0.7,
                strength_threshold: default_strength(),
            },
            sweep: SweepSection {
                nu_list: vec![4e-3, 2e-3, 1e-3],
                a_rule: ARule::default(),
                t_final: 0.5,
                x_left: -1.5,
                x_right: 2.0,
                dy: 0.4,
                window: [-1.0, 1.5],
                away_radius: 1.0,
                checkpoints: default_sweep_checkpoints(),
                cfl: default_sweep_cfl(),
                v_floor: default_floor(),
            },
            perturbation: PerturbationSection::default(),
            shift: ShiftSection::default(),
            output: OutputSection { dir: PathBuf::from("sweep_out"), snapshots: false },
            profile: ProfileSection::default(),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let s = &self.sweep;
        check(!s.nu_list.is_empty(), || "sweep.nu_list is empty".into())?;
        check(s.nu_list.iter().all(|&n| n > 0.0 && n.is_finite()), || "sweep.nu_list entries must be positive".into())?;
        check(s.nu_list.windows(2).all(|w| w[1] < w[0]), || "sweep.nu_list must be strictly decreasing".into())?;
        let ratios: Vec<f64> = s.nu_list.iter().map(|&n| n / s.a_rule.a(n)).collect();
        check(s.nu_list.iter().all(|&n| s.a_rule.a(n) > 0.0), || "a_rule must give positive widths".into())?;
        check(ratios.windows(2).all(|w| w[1] < w[0]), || "nu / a(nu) must decrease along sweep.nu_list".into())?;
        check(s.t_final > 0.0 && s.t_final.is_finite(), || {
            format!("sweep.t_final must be positive, got {}", s.t_final)
        })?;
        check(s.x_left < s.x_right, || "sweep.x_left must be below sweep.x_right".into())?;
        check(s.window[0] < s.window[1] && s.window[0] >= s.x_left && s.window[1] <= s.x_right, || {
            format!("sweep.window {:?} must be a nonempty part of [x_left, x_right]", s.window)
        })?;
        check(s.dy > 0.0, || "sweep.dy must be positive".into())?;
        check(s.checkpoints >= 1, || "sweep.checkpoints must be at least 1".into())?;
        check(s.away_radius >= 0.0, || "sweep.away_radius must be nonnegative".into())?;
        check(s.cfl > 0.0 && s.cfl <= 1.3, || format!("sweep.cfl must lie in (0, 1.3], got {}", s.cfl))?;
        check(self.shift.lambda > 0.0 && self.shift.lambda < 1.0, || "shift.lambda must lie in (0, 1)".into())?;
        build_setup(&self.gas, &self.riemann)?;
        Ok(())
    }

    /// The scaled-frame config of the run at viscosity `nu`.
    pub fn run_config(&self, nu: f64) -> SimConfig {
        let s = &self.sweep;
        SimConfig {
            gas: self.gas,
            riemann: self.riemann,
            rarefaction: RarefactionSection { nu, a: Some(s.a_rule.a(nu)) },
            grid: GridSection { y_left: s.x_left / nu, y_right: s.x_right / nu, dy: Some(s.dy), n: None },
            time: TimeSection { tau_end: s.t_final / nu, checkpoints: s.checkpoints, cfl: s.cfl, v_floor: s.v_floor },
            perturbation: self.perturbation.clone(),
            shift: self.shift,
            output: OutputSection { dir: self.output.dir.join(format!("nu_{nu:e}")), snapshots: false },
            profile: self.profile,
        }
    }
}

/// Physical-frame energy quantities along one run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyRecord {
    /// `sup_t ∫ η(U|Ũ_X) dx`.
    pub sup_energy: f64,
    /// `∫∫ |∂_x ũʳ| p(v|ṽ) dx dt`.
    pub rarefaction_integral: f64,
    /// `∫∫ |∂_x ṽˢ_X| Q(v|ṽ) dx dt`.
    pub shock_integral: f64,
    /// `ν ∫∫ v^β |∂_x(p(v) - p(ṽ))|² dx dt`.
    pub dissipation_integral: f64,
}

/// Physical energy record from scaled checkpoint reports, time integrals by
/// the trapezoid rule over the checkpoints.
pub fn report_energy_lhs(reports: &[FunctionalReport], nu: f64) -> EnergyRecord {
    let mut rec = EnergyRecord::default();
    for r in reports {
        rec.sup_energy = rec.sup_energy.max(nu * r.eta_integral);
    }
    for w in reports.windows(2) {
        let dt = w[1].tau - w[0].tau;
        rec.rarefaction_integral += 0.5 * dt * (w[0].rare_pressure + w[1].rare_pressure);
        rec.shock_integral += 0.5 * dt * (w[0].shock_q + w[1].shock_q);
        rec.dissipation_integral += 0.5 * dt * (w[0].dissipation + w[1].dissipation);
    }
    rec.rarefaction_integral *= nu;
    rec.shock_integral *= nu;
    rec.dissipation_integral *= nu;
    rec
}

/// `(‖v - v̄‖_{L¹(K)}, same away from |x - σ₁T| < radius)` with `v̄` the
/// inviscid Riemann solution; trapezoid weights on the nodes inside `K`.
pub fn l1_distances(sim: &Simulation, t: f64, window: [f64; 2], radius: f64) -> (f64, f64) {
    let nu = sim.nu();
    let setup = &sim.wave.setup;
    let dx = nu * sim.grid.dy;
    let inside: Vec<usize> = (0..sim.grid.n)
        .filter(|&i| {
            let x = nu * sim.ys[i];
            x >= window[0] && x <= window[1]
        })
        .collect();
    let (mut full, mut away) = (0.0, 0.0);
    for (k, &i) in inside.iter().enumerate() {
        let x = nu * sim.ys[i];
        let wgt = if k == 0 || k + 1 == inside.len() { 0.5 * dx } else { dx };
        let e = wgt * (sim.state.v[i] - setup.sample(t, x).v).abs();
        full += e;
        if (x - setup.sigma1 * t).abs() >= radius {
            away += e;
        }
    }
    (full, away)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ShiftSummary {
    /// `X_ν(T) = ν X(T/ν)`.
    pub x_final: f64,
    pub xdot_max: f64,
    /// `max (dX/dτ) - |σ₁|/2`; nonpositive when the rate bound holds.
    pub xdot_margin: f64,
    /// `max_t (X_ν(t) - |σ₁| t / 2)`; nonpositive when the bound holds.
    pub bound_margin: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub nu: f64,
    pub a: f64,
    pub ok: bool,
    pub error: Option<String>,
    pub e0: f64,
    pub energy: EnergyRecord,
    pub l1: f64,
    pub l1_away: f64,
    pub shift: ShiftSummary,
    /// Every checkpoint passed the nonnegativity and weight checks.
    pub functionals_ok: bool,
    pub nodes: usize,
    pub steps: u64,
    pub config_hash: String,
    pub wall_clock_s: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepTrends {
    pub l1_monotone: bool,
    pub l1_away_monotone: bool,
    /// `l1_away[k] / l1_away[k+1]` for consecutive entries.
    pub l1_away_ratios: Vec<f64>,
    pub l1_ratios: Vec<f64>,
    pub sup_energy_nonincreasing: bool,
    pub shift_bound_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub config_hash: String,
    pub config: SweepConfig,
    pub records: Vec<SweepRecord>,
    pub trends: SweepTrends,
}

impl SweepReport {
    /// Copy with wall-clock fields zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.wall_clock_s = 0.0;
        }
        r
    }

    pub const CSV_HEADER: &'static str = "schema_version,nu,a,ok,e0,sup_energy,rarefaction_integral,shock_integral,\
dissipation_integral,l1,l1_away,x_final,xdot_max,shift_bound_margin,nodes,steps,wall_clock_s,config_hash";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{:e},{:e},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{},{},{:.3},{}",
                self.schema_version,
                r.nu,
                r.a,
                r.ok,
                r.e0,
                r.energy.sup_energy,
                r.energy.rarefaction_integral,
                r.energy.shock_integral,
                r.energy.dissipation_integral,
                r.l1,
                r.l1_away,
                r.shift.x_final,
                r.shift.xdot_max,
                r.shift.bound_margin,
                r.nodes,
                r.steps,
                r.wall_clock_s,
                r.config_hash
            );
        }
        out
    }

    /// Writes `sweep.csv` and `sweep.json` into `dir`.
    pub fn emit(&self, dir: &Path) -> Result<(), HarnessError> {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
        let csv = dir.join("sweep.csv");
        std::fs::write(&csv, self.to_csv()).map_err(io_err(&csv))?;
        let json = dir.join("sweep.json");
        std::fs::write(&json, serde_json::to_vec_pretty(self).expect("report serializes")).map_err(io_err(&json))?;
        Ok(())
    }

    pub fn read_json(path: &Path) -> Result<Self, HarnessError> {
        serde_json::from_str(&read(path)?).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
    }
}

/// One sweep entry; a numerical abort yields a failed record.
pub fn run_sweep_entry(cfg: &SweepConfig, nu: f64) -> Result<SweepRecord, HarnessError> {
    let started = std::time::Instant::now();
    let run = cfg.run_config(nu);
    let hash = config_hash(cfg);
    let (mut sim, _) = run.build()?;
    let s = &cfg.sweep;
    let mut rec = SweepRecord {
        nu,
        a: run.a(),
        ok: true,
        error: None,
        e0: sim.e0,
        energy: EnergyRecord::default(),
        l1: f64::NAN,
        l1_away: f64::NAN,
        shift: ShiftSummary::default(),
        functionals_ok: true,
        nodes: sim.grid.n,
        steps: 0,
        config_hash: hash,
        wall_clock_s: 0.0,
    };
    match run_checkpoints(&mut sim, &run.checkpoint_times(), |_| Ok(())) {
        Ok(reports) => {
            rec.energy = report_energy_lhs(&reports, nu);
            let lambda = sim.entropy.weight.lambda;
            rec.functionals_ok = reports.iter().all(|r| negative_parts(r).is_empty() && weight_ok(r, lambda));
            let (l1, away) = l1_distances(&sim, s.t_final, s.window, s.away_radius * nu.sqrt());
            rec.l1 = l1;
            rec.l1_away = away;
        }
        Err(HarnessError::Solver(e)) => {
            rec.ok = false;
            rec.error = Some(e.to_string());
        }
        Err(e) => return Err(e),
    }
    let half = 0.5 * sim.wave.setup.sigma1.abs();
    let phys = sim.trace.physical(nu);
    rec.shift = ShiftSummary {
        x_final: nu * sim.state.x_shift,
        xdot_max: sim.trace.samples.iter().map(|p| p.xdot).fold(f64::NEG_INFINITY, f64::max),
        xdot_margin: sim.trace.samples.iter().map(|p| p.xdot - half).fold(f64::NEG_INFINITY, f64::max),
        bound_margin: phys.iter().map(|&(t, x)| x - half * t).fold(f64::NEG_INFINITY, f64::max),
        samples: sim.trace.samples.len(),
    };
    rec.steps = sim.steps;
    rec.wall_clock_s = started.elapsed().as_secs_f64();
    Ok(rec)
}

/// Runs every `ν` of the sweep in list order and evaluates the trends.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport, HarnessError> {
    cfg.validate()?;
    let records = cfg.sweep.nu_list.iter().map(|&nu| run_sweep_entry(cfg, nu)).collect::<Result<Vec<_>, _>>()?;
    let trends = sweep_trends(&records);
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        config_hash: config_hash(cfg),
        config: cfg.clone(),
        records,
        trends,
    })
}

pub fn sweep_trends(records: &[SweepRecord]) -> SweepTrends {
    let all_ok = records.iter().all(|r| r.ok);
    let ratio = |f: fn(&SweepRecord) -> f64| -> Vec<f64> { records.windows(2).map(|w| f(&w[0]) / f(&w[1])).collect() };
    let l1_ratios = ratio(|r| r.l1);
    let l1_away_ratios = ratio(|r| r.l1_away);
    SweepTrends {
        l1_monotone: all_ok && l1_ratios.iter().all(|&q| q > 1.0),
        l1_away_monotone: all_ok && l1_away_ratios.iter().all(|&q| q > 1.0),
        sup_energy_nonincreasing: all_ok
            && records.windows(2).all(|w| w[1].energy.sup_energy <= w[0].energy.sup_energy),
        shift_bound_ok: records
            .iter()
            .filter(|r| r.shift.samples > 0)
            .all(|r| r.shift.bound_margin <= 1e-12 && r.shift.xdot_margin <= 1e-12),
        l1_ratios,
        l1_away_ratios,
    }
}
