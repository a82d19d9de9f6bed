//! Dynamic shift of the reference shock.
//!
//! ```text
//!        ⎧ -σ₁/2                       Y <= -ε₁²
//! dX/dτ = ⎨ (σ₁/2) Y / ε₁²              -ε₁² < Y <= 0
//!        ⎪ -Y (2|J_bad| + 1) / ε₁⁴      0 < Y <= ε₁²
//!        ⎩ -(2|J_bad| + 1) / ε₁²        Y > ε₁²
//! ```
//!
//! with `X(0) = 0`. Since `σ₁ < 0`, `dX/dτ <= |σ₁|/2` on every branch.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftBranch {
    Saturated = 1,
    Linear = 2,
    Quadratic = 3,
    Retreat = 4,
}

impl ShiftBranch {
    pub fn index(self) -> u8 {
        self as u8
    }
}

pub fn shift_rhs(y: f64, j_bad: f64, eps1: f64, sigma1: f64) -> (f64, ShiftBranch) {
    let e2 = eps1 * eps1;
    let branch = if y <= -e2 {
        ShiftBranch::Saturated
    } else if y <= 0.0 {
        ShiftBranch::Linear
    } else if y <= e2 {
        ShiftBranch::Quadratic
    } else {
        ShiftBranch::Retreat
    };
    (branch_value(branch, y, j_bad, eps1, sigma1), branch)
}

/// Formula of one branch, evaluated regardless of where `y` lies.
pub fn branch_value(branch: ShiftBranch, y: f64, j_bad: f64, eps1: f64, sigma1: f64) -> f64 {
    let e2 = eps1 * eps1;
    match branch {
        ShiftBranch::Saturated => -0.5 * sigma1,
        ShiftBranch::Linear => 0.5 * sigma1 * y / e2,
        ShiftBranch::Quadratic => -y * (2.0 * j_bad.abs() + 1.0) / (e2 * e2),
        ShiftBranch::Retreat => -(2.0 * j_bad.abs() + 1.0) / e2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftSample {
    pub tau: f64,
    pub x: f64,
    pub xdot: f64,
    pub y: f64,
    pub j_bad: f64,
    pub branch: ShiftBranch,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ShiftTrace {
    pub samples: Vec<ShiftSample>,
}

impl ShiftTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: ShiftSample) {
        self.samples.push(s);
    }

    pub fn last(&self) -> Option<&ShiftSample> {
        self.samples.last()
    }

    /// Forward-Euler update from the last sample (or `X(0) = 0`), holding
    /// `Y` and `J_bad` over the step. The simulation itself integrates `X`
    /// together with the fields; this is the stand-alone form.
    pub fn advance(&mut self, y: f64, j_bad: f64, eps1: f64, sigma1: f64, dtau: f64) -> ShiftSample {
        let (tau, x) = self.last().map_or((0.0, 0.0), |s| (s.tau, s.x));
        if self.samples.is_empty() {
            let (xdot, branch) = shift_rhs(y, j_bad, eps1, sigma1);
            self.push(ShiftSample { tau, x, xdot, y, j_bad, branch });
        }
        let xdot = self.samples.last().map(|s| s.xdot).unwrap_or(0.0);
        let x_new = x + dtau * xdot;
        let (xdot_new, branch) = shift_rhs(y, j_bad, eps1, sigma1);
        let s = ShiftSample { tau: tau + dtau, x: x_new, xdot: xdot_new, y, j_bad, branch };
        self.push(s);
        s
    }

    /// Largest violations of `dX/dτ <= |σ₁|/2` and `X(τ) <= |σ₁|τ/2`
    /// (positive means violated).
    pub fn bound_violation(&self, sigma1: f64) -> (f64, f64) {
        let half = 0.5 * sigma1.abs();
        let mut rate: f64 = f64::NEG_INFINITY;
        let mut pos: f64 = f64::NEG_INFINITY;
        for s in &self.samples {
            rate = rate.max(s.xdot - half);
            pos = pos.max(s.x - half * s.tau);
        }
        (rate, pos)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,X,Xdot,Y,J_bad,branch\n");
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{}",
                s.tau,
                s.x,
                s.xdot,
                s.y,
                s.j_bad,
                s.branch.index()
            );
        }
        out
    }

    /// Physical-frame shift `X_ν(t) = ν X(t/ν)` as `(t, X_ν)` pairs.
    pub fn physical(&self, nu: f64) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (nu * s.tau, nu * s.x)).collect()
    }
}
