//! Shift trajectory X(t) with its rate bound, in physical variables.

use compwave::composite::CompositeWave;
use compwave::riemann::RiemannSetup;
use compwave::shock::ProfileOptions;
use compwave::solver::{Grid1D, Perturbation, Simulation, SolverOptions, Target};
use compwave::{GasParams, SolverError, State};

fn main() -> Result<(), SolverError> {
    let nu = 0.05;
    let gas = GasParams::new(1.4, 1.0)?;
    let setup = RiemannSetup::from_volumes(gas, State::new(1.0, 0.0), 0.8, 0.7)?;
    let sigma1 = setup.sigma1;
    let wave = CompositeWave::new(setup, ProfileOptions::default(), nu, nu.sqrt())?;
    let grid = Grid1D::with_spacing(-20.0, 25.0, 0.1)?;
    let bump = Perturbation::Gaussian { target: Target::V, amplitude: 0.04, center: 0.0, width: 1.0 };
    let mut sim = Simulation::new(wave, grid, &[bump], SolverOptions::default())?;
    sim.advance_to(3.0)?;
    sim.record_shift_sample()?;
    let (rate_margin, bound_margin) = sim.trace.bound_violation(sigma1);
    println!("{} samples, rate margin {rate_margin:.4}, bound margin {bound_margin:.4}", sim.trace.samples.len());
    for (t, x) in sim.trace.physical(nu).iter().step_by(sim.trace.samples.len() / 8 + 1) {
        println!("t = {t:.4}: X_nu = {x:>11.4e}, |sigma1| t / 2 = {:.4e}", 0.5 * sigma1.abs() * t);
    }
    Ok(())
}
