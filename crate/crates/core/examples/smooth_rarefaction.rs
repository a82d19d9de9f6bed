//! Smooth 2-rarefaction from smoothed Burgers data, with its L^p approach to the fan.

use compwave::rarefaction::RarefactionParams;
use compwave::riemann::RiemannSetup;
use compwave::{GasParams, ModelResult, State};

fn main() -> ModelResult<()> {
    let gas = GasParams::new(1.4, 1.0)?;
    let setup = RiemannSetup::from_volumes(gas, State::new(1.0, 0.0), 0.8, 0.7)?;
    let rp = RarefactionParams::from_setup(&setup, 0.05)?;
    for t in [0.1, 1.0, 10.0] {
        let r = rp.lp_decay_report(t, 2.0)?;
        println!(
            "t = {t:>5}: ||d_x v||_2 = {:.4e}, ||v - fan||_2 = {:.4e}, t^(1/2) scaled {:.4}",
            r.dv, r.v_fan, r.derivative_shape
        );
    }
    let t = 0.5;
    for k in 0..=8 {
        let x = 0.5 + 0.15 * k as f64;
        let p = rp.eval(t, x)?;
        let f = rp.fan(t, x);
        println!("x = {x:.2}: v = {:.6} (fan {:.6}), u = {:.6} (fan {:.6})", p.v, f.v, p.u, f.u);
    }
    Ok(())
}
