//! Viscous 1-shock profile: table, ODE residual and derivative envelope.

use compwave::shock::{ProfileOptions, ShockProfile};
use compwave::{GasParams, ModelResult, State};

fn main() -> ModelResult<()> {
    let gas = GasParams::new(1.4, 1.0)?;
    let prof = ShockProfile::build(gas, State::new(1.0, 0.0), 0.8, ProfileOptions::default())?;
    println!("sigma1 = {:.10}, {} nodes on [{:.1}, {:.1}]", prof.sigma1, prof.len(), prof.xi_min, prof.xi_max());
    println!("max ODE residual {:.2e}", prof.ode_residual_max());
    let b = prof.derivative_bounds();
    println!("|v'| <= {:.4} eps1^2 exp(-{:.4} eps1 |xi|), core inf {:.4}", b.big_c1, b.small_c1, b.core_inf_scaled);
    for xi in [-40.0, -10.0, -2.0, 0.0, 2.0, 10.0, 40.0] {
        let p = prof.eval(xi);
        println!("xi = {xi:>6.1}: v = {:.8}, h = {:.8}, v' = {:.3e}", p.v, p.h, p.dv);
    }
    Ok(())
}
