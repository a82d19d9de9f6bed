//! Small vanishing-viscosity sweep with L1 distances to the Riemann solution.

use compwave::harness::{self, HarnessError, SweepConfig};

fn main() -> Result<(), HarnessError> {
    let mut cfg = SweepConfig::desk_default();
    cfg.sweep.nu_list = vec![4e-2, 2e-2, 1e-2];
    cfg.sweep.t_final = 0.3;
    cfg.sweep.checkpoints = 10;
    let report = harness::run_sweep(&cfg)?;
    for r in &report.records {
        println!(
            "nu = {:.0e}: L1 = {:.4e}, L1 away = {:.4e}, sup energy = {:.3e}, X_nu(T) = {:.3e}",
            r.nu, r.l1, r.l1_away, r.energy.sup_energy, r.shift.x_final
        );
    }
    println!("{}", serde_json::to_string_pretty(&report.trends).expect("trends serialize"));
    Ok(())
}
