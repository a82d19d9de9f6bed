//! Relative-entropy functionals on a perturbed state, with the balance identity and sign checks.

use compwave::composite::CompositeWave;
use compwave::harness::{negative_parts, weight_ok};
use compwave::riemann::RiemannSetup;
use compwave::shock::ProfileOptions;
use compwave::solver::{Grid1D, Perturbation, Simulation, SolverOptions, Target};
use compwave::{GasParams, SolverError, State};

fn main() -> Result<(), SolverError> {
    let nu = 0.05;
    let gas = GasParams::new(1.4, 1.0)?;
    let setup = RiemannSetup::from_volumes(gas, State::new(1.0, 0.0), 0.8, 0.7)?;
    let wave = CompositeWave::new(setup, ProfileOptions::default(), nu, nu.sqrt())?;
    let grid = Grid1D::with_spacing(-25.0, 30.0, 0.1)?;
    let bumps = [
        Perturbation::Gaussian { target: Target::V, amplitude: 0.05, center: 1.0, width: 1.5 },
        Perturbation::Compact { target: Target::H, amplitude: -0.04, center: 6.0, radius: 3.0 },
    ];
    let mut sim = Simulation::new(wave, grid, &bumps, SolverOptions::default())?;
    for delta in [0.05, 0.1, 0.25] {
        let r = sim.report_with(delta)?;
        println!(
            "delta = {delta}: J_bad = {:.5e}, J_good = {:.5e}, B_delta - G_delta = {:.5e}, residual {:.1e}",
            r.j_bad,
            r.j_good,
            r.b_delta - r.g_delta,
            r.identity_residual()
        );
        println!("  negative parts {:?}, weight ok {}", negative_parts(&r), weight_ok(&r, sim.opts.lambda));
    }
    let r = sim.report()?;
    for (name, value) in r.nonnegative_parts() {
        println!("{name:>3} = {value:.5e}");
    }
    Ok(())
}
