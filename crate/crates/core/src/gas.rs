//! Polytropic gas in Lagrangian variables.
//!
//! Pressure `p(v) = v^{-γ}`, viscosity `b(v) = γ v^{-α}`, and the
//! Bregman-type relative quantities built from the potential energy
//! `Q(v) = v^{1-γ} / (γ - 1)`.
//!
//! Every quantity has a checked form that rejects `v <= 0` and an
//! unchecked `#[inline]` form used by the solver hot loops, which keep
//! `v` positive themselves (see the positivity floor in `solver`).

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, ModelResult};

/// A pair of Lagrangian unknowns. The second component is the fluid
/// velocity `u` for Euler states and the BD velocity `h` when the state
/// lives in the reformulated viscous system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub v: f64,
    pub u: f64,
}

impl State {
    pub const fn new(v: f64, u: f64) -> Self {
        Self { v, u }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasParams {
    gamma: f64,
    alpha: f64,
    b_coef: f64,
    beta: f64,
}

fn check_volume(what: &'static str, v: f64) -> ModelResult<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ModelError::domain(what, format!("specific volume must be positive and finite, got {v}")))
    }
}

impl GasParams {
    /// Requires `γ > 1` and `0 < α <= γ <= α + 1`, so that `β = γ - α`
    /// lies in `[0, 1]`.
    pub fn new(gamma: f64, alpha: f64) -> ModelResult<Self> {
        if !(gamma > 1.0 && gamma.is_finite()) {
            return Err(ModelError::Argument(format!("gamma must exceed 1, got {gamma}")));
        }
        if !(alpha > 0.0 && alpha <= gamma && gamma <= alpha + 1.0) {
            return Err(ModelError::Argument(format!(
                "need 0 < alpha <= gamma <= alpha + 1, got gamma = {gamma}, alpha = {alpha}"
            )));
        }
        Ok(Self { gamma, alpha, b_coef: gamma, beta: gamma - alpha })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Viscosity amplitude `b`, fixed to `γ`.
    pub fn b_coef(&self) -> f64 {
        self.b_coef
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    // ---- unchecked closed forms -------------------------------------------------

    #[inline]
    pub fn p(&self, v: f64) -> f64 {
        v.powf(-self.gamma)
    }

    #[inline]
    pub fn dp(&self, v: f64) -> f64 {
        -self.gamma * v.powf(-self.gamma - 1.0)
    }

    #[inline]
    pub fn d2p(&self, v: f64) -> f64 {
        self.gamma * (self.gamma + 1.0) * v.powf(-self.gamma - 2.0)
    }

    /// Inverse of the pressure law.
    #[inline]
    pub fn p_inv(&self, p: f64) -> f64 {
        p.powf(-1.0 / self.gamma)
    }

    #[inline]
    pub fn lam2(&self, v: f64) -> f64 {
        self.gamma.sqrt() * v.powf(-0.5 * (self.gamma + 1.0))
    }

    /// Volume whose 2-characteristic speed is `w > 0`.
    #[inline]
    pub fn lam2_inv(&self, w: f64) -> f64 {
        (w / self.gamma.sqrt()).powf(-2.0 / (self.gamma + 1.0))
    }

    /// Antiderivative of `λ₂`: `-(2√γ/(γ-1)) s^{-(γ-1)/2}`.
    #[inline]
    pub fn lam2_antiderivative(&self, s: f64) -> f64 {
        -(2.0 * self.gamma.sqrt() / (self.gamma - 1.0)) * s.powf(-0.5 * (self.gamma - 1.0))
    }

    #[inline]
    pub fn q(&self, v: f64) -> f64 {
        v.powf(1.0 - self.gamma) / (self.gamma - 1.0)
    }

    #[inline]
    pub fn rel_q(&self, v: f64, w: f64) -> f64 {
        // Q'(w) = -p(w)
        self.q(v) - self.q(w) + self.p(w) * (v - w)
    }

    #[inline]
    pub fn rel_p(&self, v: f64, w: f64) -> f64 {
        self.p(v) - self.p(w) - self.dp(w) * (v - w)
    }

    /// `b(v)/v = γ v^{-α-1}`, the coefficient in front of `u_x` in the
    /// momentum viscosity.
    #[inline]
    pub fn visc(&self, v: f64) -> f64 {
        self.b_coef * v.powf(-self.alpha - 1.0)
    }

    // ---- checked public surface ---------------------------------------------------

    pub fn pressure(&self, v: f64) -> ModelResult<f64> {
        check_volume("pressure", v)?;
        Ok(self.p(v))
    }

    pub fn pressure_derivative(&self, v: f64) -> ModelResult<f64> {
        check_volume("pressure_derivative", v)?;
        Ok(self.dp(v))
    }

    pub fn lambda1(&self, v: f64) -> ModelResult<f64> {
        check_volume("lambda1", v)?;
        Ok(-self.lam2(v))
    }

    pub fn lambda2(&self, v: f64) -> ModelResult<f64> {
        check_volume("lambda2", v)?;
        Ok(self.lam2(v))
    }

    pub fn potential_q(&self, v: f64) -> ModelResult<f64> {
        check_volume("potential_q", v)?;
        Ok(self.q(v))
    }

    pub fn relative_q(&self, v: f64, w: f64) -> ModelResult<f64> {
        check_volume("relative_q", v)?;
        check_volume("relative_q", w)?;
        Ok(self.rel_q(v, w))
    }

    pub fn relative_p(&self, v: f64, w: f64) -> ModelResult<f64> {
        check_volume("relative_p", v)?;
        check_volume("relative_p", w)?;
        Ok(self.rel_p(v, w))
    }

    /// Relative total energy `½|u₁-u₂|² + Q(v₁|v₂)`.
    pub fn relative_eta(&self, a: State, b: State) -> ModelResult<f64> {
        Ok(0.5 * (a.u - b.u).powi(2) + self.relative_q(a.v, b.v)?)
    }
}
