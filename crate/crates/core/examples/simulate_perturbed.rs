//! Perturbed composite wave advanced by the viscous solver with the shift on.

use compwave::composite::CompositeWave;
use compwave::riemann::RiemannSetup;
use compwave::shock::ProfileOptions;
use compwave::solver::{Grid1D, Perturbation, Simulation, SolverOptions, Target};
use compwave::{GasParams, SolverError, State};

fn main() -> Result<(), SolverError> {
    let nu = 0.05;
    let gas = GasParams::new(1.4, 1.0)?;
    let setup = RiemannSetup::from_volumes(gas, State::new(1.0, 0.0), 0.8, 0.7)?;
    let wave = CompositeWave::new(setup, ProfileOptions::default(), nu, nu.sqrt())?;
    let grid = Grid1D::with_spacing(-20.0, 25.0, 0.1)?;
    let bump = Perturbation::Gaussian { target: Target::H, amplitude: 0.03, center: -3.0, width: 2.0 };
    let mut sim = Simulation::new(wave, grid, &[bump], SolverOptions::default())?;
    println!("{} nodes, dtau = {:.3e}, E0 = {:.4e}", grid.n, sim.stable_dtau(), sim.e0);
    for k in 1..=5 {
        let steps = sim.advance_to(k as f64)?;
        let r = sim.report()?;
        let vmin = sim.state.v.iter().copied().fold(f64::INFINITY, f64::min);
        println!(
            "tau = {:.1}: {steps:>4} steps, X = {:>10.3e}, int eta = {:.4e}, min v = {vmin:.6}",
            sim.state.tau, sim.state.x_shift, r.eta_integral
        );
    }
    Ok(())
}
