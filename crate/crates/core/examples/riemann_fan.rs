//! Inviscid 1-shock + 2-rarefaction solution for the triple (1, 0.8, 0.7).

use compwave::riemann::RiemannSetup;
use compwave::{GasParams, ModelResult, State};

fn main() -> ModelResult<()> {
    let gas = GasParams::new(1.4, 1.0)?;
    let setup = RiemannSetup::from_volumes(gas, State::new(1.0, 0.0), 0.8, 0.7)?;
    let (rh_mass, rh_momentum) = setup.rh_residuals();
    println!("sigma1 = {:.12}, u_m = {:.12}, u_+ = {:.12}", setup.sigma1, setup.mid.u, setup.plus.u);
    println!(
        "fan speeds [{:.6}, {:.6}], RH residuals {rh_mass:.1e} {rh_momentum:.1e}",
        setup.lam2_mid(),
        setup.lam2_plus()
    );
    println!("eps1 = {:.6}, eps2 = {:.6}", setup.eps1, setup.eps2);
    let t = 0.4;
    println!("{:>8} {:>10} {:>10}", "x", "v", "u");
    for k in 0..=12 {
        let x = -0.8 + 0.15 * k as f64;
        let s = setup.sample(t, x);
        println!("{x:>8.3} {:>10.6} {:>10.6}", s.v, s.u);
    }
    Ok(())
}
