use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use compwave::harness::{self, HarnessError, SimConfig, SweepConfig};
use compwave::rarefaction::RarefactionParams;
use compwave::riemann::{solve_intermediate, RiemannSetup};
use compwave::shock::{DerivativeBounds, ProfileOptions, ShockProfile};
use compwave::{GasParams, ModelError, State};

#[derive(Parser)]
#[command(name = "compwave", version, about = "Composite shock + rarefaction waves and their viscous approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the inviscid Riemann solution as CSV (x, v, u).
    Riemann(RiemannArgs),
    /// Tabulate the viscous 1-shock as CSV (xi, v, u, h, v') plus a JSON record.
    ShockProfile(ShockArgs),
    /// Sample the smooth 2-rarefaction as CSV (x, v, u, v_x, u_x).
    Rarefaction(RareArgs),
    /// Run a configured simulation.
    Simulate { config: PathBuf },
    /// Run the identity and nonnegativity suites on a stored state.
    Check { config: PathBuf, snapshot: PathBuf },
    /// Run a viscosity sweep; without a config the desk-scale default is used.
    Sweep {
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RiemannArgs {
    #[arg(long, default_value_t = 1.4)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    v_minus: f64,
    #[arg(long, default_value_t = 0.0)]
    u_minus: f64,
    /// Intermediate volume (0.8 when neither this nor `--u-plus` is given).
    #[arg(long)]
    v_mid: Option<f64>,
    #[arg(long, default_value_t = 0.7)]
    v_plus: f64,
    #[arg(long)]
    u_plus: Option<f64>,
    #[arg(long, default_value_t = 0.4)]
    t: f64,
    #[arg(long, default_value_t = -1.0)]
    x_min: f64,
    #[arg(long, default_value_t = 1.0)]
    x_max: f64,
    #[arg(long, default_value_t = 401)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ShockArgs {
    #[arg(long, default_value_t = 1.4)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    v_minus: f64,
    #[arg(long, default_value_t = 0.0)]
    u_minus: f64,
    #[arg(long, default_value_t = 0.8)]
    v_mid: f64,
    #[arg(long, default_value_t = 0.004)]
    dxi: f64,
    /// Keep every k-th table row.
    #[arg(long, default_value_t = 25)]
    stride: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON diagnostics; printed to stderr when absent.
    #[arg(long)]
    diag: Option<PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RareArgs {
    #[arg(long, default_value_t = 1.4)]
    gamma: f64,
    #[arg(long, default_value_t = 0.8)]
    v_mid: f64,
    #[arg(long, default_value_t = 0.7)]
    v_plus: f64,
    #[arg(long, default_value_t = -0.270_814_546_296_574_5)]
    u_mid: f64,
    #[arg(long, default_value_t = 0.05)]
    a: f64,
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    #[arg(long, default_value_t = -0.5)]
    x_min: f64,
    #[arg(long, default_value_t = 2.0)]
    x_max: f64,
    #[arg(long, default_value_t = 401)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ShockDiagnostics {
    sigma1: f64,
    eps1: f64,
    nodes: usize,
    xi_min: f64,
    xi_max: f64,
    ode_residual_max: f64,
    bounds: DerivativeBounds,
}

fn config_err(e: ModelError) -> HarnessError {
    match e {
        ModelError::Configuration(m) => HarnessError::Config(m),
        other => HarnessError::Config(other.to_string()),
    }
}

#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn grid(x_min: f64, x_max: f64, n: usize) -> Result<Vec<f64>, HarnessError> {
    if n < 2 || !(x_min < x_max) {
        return Err(HarnessError::Config(format!(
            "need x_min < x_max and at least 2 samples, got [{x_min}, {x_max}] x {n}"
        )));
    }
    Ok((0..n).map(|i| x_min + (x_max - x_min) * i as f64 / (n - 1) as f64).collect())
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), HarnessError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| HarnessError::Io { path: p.clone(), source }),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn riemann(a: &RiemannArgs) -> Result<(), HarnessError> {
    let gas = GasParams::new(a.gamma, 1.0).map_err(config_err)?;
    let minus = State::new(a.v_minus, a.u_minus);
    let setup = match (a.v_mid, a.u_plus) {
        (Some(vm), None) => RiemannSetup::from_volumes(gas, minus, vm, a.v_plus),
        (None, None) => RiemannSetup::from_volumes(gas, minus, 0.8, a.v_plus),
        (None, Some(up)) => solve_intermediate(gas, minus, State::new(a.v_plus, up)),
        _ => return Err(HarnessError::Config("give exactly one of --v-mid and --u-plus".into())),
    }
    .map_err(config_err)?;
    if a.t <= 0.0 {
        return Err(HarnessError::Config(format!("t must be positive, got {}", a.t)));
    }
    let mut csv = String::from("x,v,u\n");
    for x in grid(a.x_min, a.x_max, a.samples)? {
        let s = setup.sample(a.t, x);
        let _ = writeln!(csv, "{x:.17e},{:.17e},{:.17e}", s.v, s.u);
    }
    emit(a.out.as_ref(), &csv)
}

fn shock_profile(a: &ShockArgs) -> Result<(), HarnessError> {
    let gas = GasParams::new(a.gamma, a.alpha).map_err(config_err)?;
    let opts = ProfileOptions { dxi: a.dxi, ..Default::default() };
    let prof = ShockProfile::build(gas, State::new(a.v_minus, a.u_minus), a.v_mid, opts).map_err(config_err)?;
    let mut csv = String::from("xi,v,u,h,dv\n");
    for i in (0..prof.len()).step_by(a.stride.max(1)) {
        let _ = writeln!(
            csv,
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
            prof.xi(i),
            prof.v_tab[i],
            prof.u_tab[i],
            prof.h_tab[i],
            prof.dv_tab[i]
        );
    }
    emit(a.out.as_ref(), &csv)?;
    let diag = ShockDiagnostics {
        sigma1: prof.sigma1,
        eps1: prof.eps1(),
        nodes: prof.len(),
        xi_min: prof.xi_min,
        xi_max: prof.xi_max(),
        ode_residual_max: prof.ode_residual_max(),
        bounds: prof.derivative_bounds(),
    };
    let json = serde_json::to_string_pretty(&diag).expect("diagnostics serialize");
    match &a.diag {
        Some(p) => std::fs::write(p, json).map_err(|source| HarnessError::Io { path: p.clone(), source }),
        None => {
            eprintln!("{json}");
            Ok(())
        }
    }
}

fn rarefaction(a: &RareArgs) -> Result<(), HarnessError> {
    let gas = GasParams::new(a.gamma, 1.0).map_err(config_err)?;
    let rp = RarefactionParams::new(gas, State::new(a.v_mid, a.u_mid), a.v_plus, a.a).map_err(config_err)?;
    if a.t < 0.0 {
        return Err(HarnessError::Config(format!("t must be nonnegative, got {}", a.t)));
    }
    let xs = grid(a.x_min, a.x_max, a.samples)?;
    let mut pts = Vec::new();
    rp.eval_many(a.t, &xs, &mut pts)?;
    let mut csv = String::from("x,v,u,v_x,u_x\n");
    for (x, p) in xs.iter().zip(&pts) {
        let _ = writeln!(csv, "{x:.17e},{:.17e},{:.17e},{:.17e},{:.17e}", p.v, p.u, p.vx, p.ux);
    }
    emit(a.out.as_ref(), &csv)
}

fn simulate(path: &Path) -> Result<(), HarnessError> {
    let cfg = SimConfig::load(path)?;
    let manifest = harness::simulate_to_dir(&cfg)?;
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    println!("{} steps, E0 = {:e}, outputs in {}", manifest.steps, manifest.derived.e0, cfg.output.dir.display());
    Ok(())
}

fn check(config: &Path, snapshot: &Path) -> Result<bool, HarnessError> {
    let cfg = SimConfig::load(config)?;
    let out = harness::check_snapshot(&cfg, snapshot)?;
    println!("{}", serde_json::to_string_pretty(&out).expect("outcome serializes"));
    Ok(out.passed)
}

fn sweep(config: Option<&Path>, out: Option<&Path>) -> Result<(), HarnessError> {
    let mut cfg = match config {
        Some(p) => SweepConfig::load(p)?,
        None => SweepConfig::desk_default(),
    };
    if let Some(o) = out {
        cfg.output.dir = o.to_path_buf();
    }
    let report = harness::run_sweep(&cfg)?;
    report.emit(&cfg.output.dir)?;
    for r in &report.records {
        match &r.error {
            None => println!(
                "nu = {:e}: L1 = {:.4e}, L1 away = {:.4e}, sup energy = {:.4e}, {} steps, {:.1} s",
                r.nu, r.l1, r.l1_away, r.energy.sup_energy, r.steps, r.wall_clock_s
            ),
            Some(e) => println!("nu = {:e}: failed: {e}", r.nu),
        }
    }
    println!("trends: {}", serde_json::to_string(&report.trends).expect("trends serialize"));
    if report.records.iter().any(|r| !r.ok) {
        return Err(numerical("sweep had aborted runs"));
    }
    Ok(())
}

fn numerical(msg: &str) -> HarnessError {
    HarnessError::Model(ModelError::Internal(msg.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Riemann(a) => riemann(a),
        Command::ShockProfile(a) => shock_profile(a),
        Command::Rarefaction(a) => rarefaction(a),
        Command::Simulate { config } => simulate(config),
        Command::Check { config, snapshot } => {
            check(config, snapshot).and_then(|ok| if ok { Ok(()) } else { Err(numerical("check failed")) })
        }
        Command::Sweep { config, out } => sweep(config.as_deref(), out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
