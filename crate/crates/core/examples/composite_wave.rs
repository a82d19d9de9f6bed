//! Composite viscous shock + smooth rarefaction in the scaled frame.

use compwave::composite::CompositeWave;
use compwave::riemann::RiemannSetup;
use compwave::shock::ProfileOptions;
use compwave::{GasParams, ModelResult, State};

fn main() -> ModelResult<()> {
    let nu = 0.01;
    let gas = GasParams::new(1.4, 1.0)?;
    let setup = RiemannSetup::from_volumes(gas, State::new(1.0, 0.0), 0.8, 0.7)?;
    let wave = CompositeWave::new(setup, ProfileOptions::default(), nu, nu.sqrt())?;
    let tau = 20.0;
    println!("nu = {nu}, tau = {tau} (t = {})", nu * tau);
    for k in 0..=10 {
        let y = -60.0 + 20.0 * k as f64;
        let c = wave.eval(tau, y, 0.0)?;
        println!(
            "y = {y:>6.1}: v = {:.6}, u = {:>9.6}, h = {:>9.6}, shock v = {:.6}, rare v = {:.6}",
            c.v, c.u, c.h, c.shock.v, c.rare.v
        );
    }
    Ok(())
}
