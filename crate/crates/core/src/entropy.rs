//! Weighted relative-entropy functionals around the composite wave.
//!
//! With `φ = h - h̃`, `ψ = v - ṽ`, `P = p(v) - p(ṽ)` and the shock-adapted
//! weight `w = 1 - (λ/ε₁)(p(ṽˢ_X) - p(v₋))`, the weighted energy
//! `W = ∫ w η(U|Ũ)` obeys `dW/dτ = Ẋ Y + J_bad - J_good`, where
//!
//! ```text
//! Y      = ∫ -½ w_y φ² - w_y Q(v|ṽ) - w p'(ṽ) ṽˢ_y ψ + w h̃ˢ_y φ
//! J_bad  = ∫ w_y P φ + σ₁ w ṽˢ_y p(v|ṽ) - w_y v^β P P_y
//!            - w P_y (v^β - ṽ^β) p(ṽ)_y + w (P F₁ - φ F₂)
//! J_good = ∫ σ₁ w_y η + w ũʳ_y p(v|ṽ) + |w_y p(ṽ)_y P (v^β - ṽ^β)| + w v^β P_y²
//! ```
//!
//! The flux term of `J_bad` carries `w_y`: it comes from integrating the
//! relative flux `P φ` by parts against the weight.
//!
//! All integrals use the composite trapezoid rule on the solver nodes; `P_y`
//! uses centered differences.

use serde::{Deserialize, Serialize};

use crate::composite::CompositeFields;
use crate::error::{ModelError, ModelResult};
use crate::gas::GasParams;
use crate::riemann::RiemannSetup;
use crate::shock::ShockProfile;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub lambda: f64,
    pub eps1: f64,
    pub p_minus: f64,
}

impl WeightParams {
    pub fn new(lambda: f64, eps1: f64, p_minus: f64) -> ModelResult<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(ModelError::Argument(format!("weight amplitude must lie in (0, 1), got {lambda}")));
        }
        if !(eps1 > 0.0) {
            return Err(ModelError::Argument(format!("shock strength must be positive, got {eps1}")));
        }
        Ok(Self { lambda, eps1, p_minus })
    }

    /// Weight from the shock pressure `p(ṽˢ)`.
    #[inline]
    pub fn weight(&self, p_shock: f64) -> f64 {
        1.0 - self.lambda / self.eps1 * (p_shock - self.p_minus)
    }

    /// `∂w = -(λ/ε₁) p'(ṽˢ) ∂ṽˢ`.
    #[inline]
    pub fn weight_slope(&self, dp_shock: f64, dv_shock: f64) -> f64 {
        -self.lambda / self.eps1 * dp_shock * dv_shock
    }

    pub fn weight_at(&self, profile: &ShockProfile, xi: f64) -> f64 {
        self.weight(profile.eval(xi).p)
    }

    pub fn weight_derivative_at(&self, profile: &ShockProfile, xi: f64) -> f64 {
        let s = profile.eval(xi);
        self.weight_slope(profile.gas().dp(s.v), s.dv)
    }
}

/// Every functional at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub tau: f64,
    pub x_shift: f64,
    /// `W = ∫ w η(U|Ũ)`.
    pub weighted_eta: f64,
    pub y_functional: f64,
    pub j_bad: f64,
    pub j_good: f64,
    pub b1: f64,
    pub b2_minus: f64,
    /// Without the `1/(1-ε)` factor.
    pub b2_plus: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
    pub g1_plus: f64,
    pub g1_minus: f64,
    pub g2: f64,
    pub g_r: f64,
    pub g_h: f64,
    pub d: f64,
    pub g3: f64,
    pub b_delta: f64,
    pub g_delta: f64,
    pub delta: f64,
    pub eps: f64,
    pub e0: f64,
    /// `∫ η(U|Ũ)` without weight.
    pub eta_integral: f64,
    /// `∫ |ũʳ_y| p(v|ṽ)`.
    pub rare_pressure: f64,
    /// `∫ |ṽˢ_y| Q(v|ṽ)`.
    pub shock_q: f64,
    /// `∫ v^β P_y²` without weight.
    pub dissipation: f64,
    pub w_min: f64,
    pub w_max: f64,
    pub w_y_max: f64,
    /// Mass `∫ |P|` split by the indicator `{P > δ}` / `{P <= δ}`.
    pub mass_above: f64,
    pub mass_below: f64,
}

impl FunctionalReport {
    /// `|(J_bad - J_good) - (B_δ - G_δ)|`.
    pub fn identity_residual(&self) -> f64 {
        ((self.j_bad - self.j_good) - (self.b_delta - self.g_delta)).abs()
    }

    /// The components that must be nonnegative, by name.
    pub fn nonnegative_parts(&self) -> [(&'static str, f64); 6] {
        [
            ("G1+", self.g1_plus),
            ("G1-", self.g1_minus),
            ("G2", self.g2),
            ("Gr", self.g_r),
            ("Gh", self.g_h),
            ("D", self.d),
        ]
    }
}

/// Constants shared by every evaluation along one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyContext {
    pub gas: GasParams,
    pub sigma1: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub weight: WeightParams,
}

/// Pointwise error terms `(F₁, F₂)` at node `i`.
#[inline]
pub fn error_terms(gas: &GasParams, c: &CompositeFields, i: usize) -> (f64, f64) {
    let gm = gas.gamma();
    let a1 = gas.alpha() + 1.0;
    let (v, vs, vr) = (c.v[i], c.vs[i], c.vr[i]);
    // b₁(s) = s^β p'(s) = -γ s^{-α-1}, b₁'(s) = -(α+1) b₁(s)/s
    let b1 = -gm * c.vb[i] * c.p[i] / v;
    let b1s = -gm * c.vbs[i] * c.ps[i] / vs;
    let f1 =
        b1 * c.v_yy[i] - a1 * b1 / v * c.v_y[i] * c.v_y[i] - (b1s * c.vs_yy[i] - a1 * b1s / vs * c.vs_y[i] * c.vs_y[i]);
    let dp = -gm * c.p[i] / v;
    let dpr = -gm * c.pr[i] / vr;
    let dps = -gm * c.ps[i] / vs;
    let f2 = dp * c.v_y[i] - dpr * c.vr_y[i] - dps * c.vs_y[i];
    (f1, f2)
}

impl EntropyContext {
    pub fn new(setup: &RiemannSetup, lambda: f64) -> ModelResult<Self> {
        let weight = WeightParams::new(lambda, setup.eps1, setup.gas.p(setup.minus.v))?;
        Ok(Self { gas: setup.gas, sigma1: setup.sigma1, eps1: setup.eps1, eps2: setup.eps2, weight })
    }

    pub fn eps(&self) -> f64 {
        self.eps1 * self.eps2
    }

    /// Evaluates all functionals. `pv` and `vb` hold `p(v)` and `v^β` at
    /// the nodes; `scratch` is reused for `P`.
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate(
        &self,
        dy: f64,
        v: &[f64],
        h: &[f64],
        pv: &[f64],
        vb: &[f64],
        c: &CompositeFields,
        delta: f64,
        scratch: &mut Vec<f64>,
    ) -> FunctionalReport {
        let n = v.len();
        let g = &self.gas;
        let gm = g.gamma();
        let sigma = self.sigma1;
        let eps = self.eps();
        let wp = &self.weight;

        scratch.clear();
        scratch.extend((0..n).map(|i| pv[i] - c.p[i]));
        let pdiff = &scratch[..];

        let mut r = FunctionalReport {
            tau: c.tau,
            x_shift: c.x_shift,
            delta,
            eps,
            w_min: f64::INFINITY,
            w_max: f64::NEG_INFINITY,
            w_y_max: f64::NEG_INFINITY,
            ..Default::default()
        };
        let inv_2dy = 0.5 / dy;
        for i in 0..n {
            let q = if i == 0 || i == n - 1 { 0.5 * dy } else { dy };
            let (vi, vt) = (v[i], c.v[i]);
            let phi = h[i] - c.h[i];
            let psi = vi - vt;
            let p = pdiff[i];
            let p_y = if i == 0 {
                (pdiff[1] - pdiff[0]) / dy
            } else if i == n - 1 {
                (pdiff[n - 1] - pdiff[n - 2]) / dy
            } else {
                (pdiff[i + 1] - pdiff[i - 1]) * inv_2dy
            };
            let dpt = -gm * c.p[i] / vt;
            let dps = -gm * c.ps[i] / c.vs[i];
            let w = wp.weight(c.ps[i]);
            let w_y = wp.weight_slope(dps, c.vs_y[i]);
            let qrel = (vi * pv[i] - vt * c.p[i]) / (gm - 1.0) + c.p[i] * psi;
            let prel = p - dpt * psi;
            let eta = 0.5 * phi * phi + qrel;
            let pt_y = dpt * c.v_y[i];
            let dbeta = vb[i] - c.vb[i];
            let (f1, f2) = error_terms(g, c, i);

            r.w_min = r.w_min.min(w);
            r.w_max = r.w_max.max(w);
            r.w_y_max = r.w_y_max.max(w_y);

            r.weighted_eta += q * w * eta;
            r.y_functional +=
                q * (-0.5 * w_y * phi * phi - w_y * qrel - w * dpt * c.vs_y[i] * psi + w * c.hs_y[i] * phi);

            let flux = w_y * p * phi;
            let b1 = sigma * w * c.vs_y[i] * prel;
            let b3 = -w_y * vb[i] * p * p_y;
            let b4 = -w * p_y * dbeta * pt_y;
            let b5 = w * (p * f1 - phi * f2);
            r.j_bad += q * (flux + b1 + b3 + b4 + b5);

            let g2 = sigma * w_y * qrel;
            let gr = w * c.ur_y[i] * prel;
            let g3 = (w_y * pt_y * p * dbeta).abs();
            let d = w * vb[i] * p_y * p_y;
            let gh = 0.5 * sigma * w_y * phi * phi;
            r.j_good += q * (gh + g2 + gr + g3 + d);

            r.b1 += q * b1;
            r.b3 += q * b3;
            r.b4 += q * b4;
            r.b5 += q * b5;
            r.g2 += q * g2;
            r.g_r += q * gr;
            r.g3 += q * g3;
            r.d += q * d;
            r.g_h += q * gh;
            if p > delta {
                r.b2_minus += q * flux;
                r.g1_minus += q * gh;
                r.mass_above += q * p.abs();
            } else {
                r.b2_plus += q * w_y * p * p / (2.0 * sigma);
                let z = phi - p / ((1.0 - eps) * sigma);
                r.g1_plus += q * 0.5 * sigma * w_y * z * z;
                r.mass_below += q * p.abs();
            }

            r.eta_integral += q * eta;
            r.rare_pressure += q * c.ur_y[i].abs() * prel;
            r.shock_q += q * c.vs_y[i].abs() * qrel;
            r.dissipation += q * vb[i] * p_y * p_y;
        }
        r.b_delta = r.b1 + r.b2_minus + r.b2_plus / (1.0 - eps) + r.b3 + r.b4 + r.b5;
        r.g_delta = (1.0 - eps) * (r.g1_plus + r.g1_minus) + r.g2 + r.g_r + eps * r.g_h + r.d + r.g3;
        r
    }
}

/// `v̄` with `p(v̄) - p(ṽ) = clamp(p(v) - p(ṽ), -δ₁, δ₁)`.
pub fn truncate_vbar(gas: &GasParams, v: f64, vt: f64, delta1: f64) -> ModelResult<f64> {
    truncate(gas, v, vt, -delta1, delta1, "truncate_vbar")
}

/// `v_k` with `p(v_k) - p(ṽ) = clamp(p(v) - p(ṽ), -k₁, k₂)`, `k₁ = ½p(v₋)`,
/// `k₂ = 2p(v₋) + 1`.
pub fn truncate_vk(gas: &GasParams, v: f64, vt: f64, v_minus: f64) -> ModelResult<f64> {
    let pm = gas.pressure(v_minus)?;
    truncate(gas, v, vt, -0.5 * pm, 2.0 * pm + 1.0, "truncate_vk")
}

fn truncate(gas: &GasParams, v: f64, vt: f64, lo: f64, hi: f64, what: &'static str) -> ModelResult<f64> {
    let pv = gas.pressure(v)?;
    let pt = gas.pressure(vt)?;
    let d = pv - pt;
    if d >= lo && d <= hi {
        return Ok(v);
    }
    let target = pt + d.clamp(lo, hi);
    if !(target > 0.0) {
        return Err(ModelError::domain(what, format!("clamped pressure {target} is not invertible")));
    }
    Ok(gas.p_inv(target))
}

/// Sup-norms of the wave-interaction products, split at `y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InteractionRecord {
    pub tau: f64,
    /// `sup |ṽʳ - v_m| |∂ṽˢ_X|` on `y <= 0` and `y >= 0`.
    pub rare_dev_shock_slope: [f64; 2],
    /// `sup |ṽˢ_X - v_m| |∂ṽʳ|`.
    pub shock_dev_rare_slope: [f64; 2],
    /// `sup |∂ṽˢ_X ∂ṽʳ|`.
    pub slope_product: [f64; 2],
    pub shift_bound_ok: bool,
}

impl InteractionRecord {
    pub fn sups(&self) -> [f64; 3] {
        [
            self.rare_dev_shock_slope[0].max(self.rare_dev_shock_slope[1]),
            self.shock_dev_rare_slope[0].max(self.shock_dev_rare_slope[1]),
            self.slope_product[0].max(self.slope_product[1]),
        ]
    }
}

pub fn interaction_diagnostics(ys: &[f64], c: &CompositeFields, v_mid: f64, sigma1: f64) -> InteractionRecord {
    let mut r =
        InteractionRecord { tau: c.tau, shift_bound_ok: c.x_shift <= 0.5 * sigma1.abs() * c.tau, ..Default::default() };
    for (i, &y) in ys.iter().enumerate() {
        let side = usize::from(y > 0.0);
        let a = (c.vr[i] - v_mid).abs() * c.vs_y[i].abs();
        let b = (c.vs[i] - v_mid).abs() * c.vr_y[i].abs();
        let d = (c.vs_y[i] * c.vr_y[i]).abs();
        r.rare_dev_shock_slope[side] = r.rare_dev_shock_slope[side].max(a);
        r.shock_dev_rare_slope[side] = r.shock_dev_rare_slope[side].max(b);
        r.slope_product[side] = r.slope_product[side].max(d);
        if y == 0.0 {
            r.rare_dev_shock_slope[1] = r.rare_dev_shock_slope[1].max(a);
            r.shock_dev_rare_slope[1] = r.shock_dev_rare_slope[1].max(b);
            r.slope_product[1] = r.slope_product[1].max(d);
        }
    }
    r
}
