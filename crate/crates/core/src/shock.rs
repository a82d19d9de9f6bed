//! Viscous 1-shock profile.
//!
//! The traveling-wave system for `(ṽ, ũ)(ξ)`, `ξ = y - σ₁τ`,
//!
//! ```text
//! -σ₁ ṽ' - ũ' = 0,
//! -σ₁ ũ' + p(ṽ)' = (γ ṽ^{-α-1} ũ')'
//! ```
//!
//! integrates once with the far-field conditions at `ξ → -∞` to
//! `ũ = u₋ - σ₁(ṽ - v₋)` and the scalar equation
//!
//! ```text
//! ṽ' = -[σ₁²(ṽ - v₋) + p(ṽ) - p(v₋)] / (σ₁ γ ṽ^{-α-1}).
//! ```
//!
//! The numerator vanishes at `v₋` and, by Rankine–Hugoniot, at `v_m`; it is
//! negative in between because `p` is convex, so `ṽ` decreases monotonically.
//! The BD velocity `h̃ = ũ - γ ṽ^{-α-1} ṽ'` reduces to the algebraic form
//! `h̃ = u₋ + (p(ṽ) - p(v₋)) / σ₁`.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, ModelResult};
use crate::gas::{GasParams, State};
use crate::riemann::{hugoniot_state, shock_speed};

/// Right-hand side of the reduced profile equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockOde {
    gas: GasParams,
    sigma1: f64,
    v_minus: f64,
    v_mid: f64,
    p_minus: f64,
}

impl ShockOde {
    pub fn new(gas: GasParams, v_minus: f64, v_mid: f64) -> ModelResult<Self> {
        let sigma1 = shock_speed(&gas, v_minus, v_mid)?;
        Ok(Self { gas, sigma1, v_minus, v_mid, p_minus: gas.p(v_minus) })
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }

    /// Checked `dṽ/dξ`; the profile is invariant on `[v_m, v₋]`.
    pub fn rhs(&self, v: f64) -> ModelResult<f64> {
        if !(v >= self.v_mid && v <= self.v_minus) {
            return Err(ModelError::domain(
                "profile_rhs",
                format!("v = {v} outside [{}, {}]", self.v_mid, self.v_minus),
            ));
        }
        Ok(self.f(v))
    }

    #[inline]
    pub fn f(&self, v: f64) -> f64 {
        let s = self.sigma1;
        let num = s * s * (v - self.v_minus) + self.gas.p(v) - self.p_minus;
        -num / (s * self.gas.visc(v))
    }

    /// `d f / d v`, so that `ṽ'' = f'(ṽ) f(ṽ)`.
    #[inline]
    pub fn df(&self, v: f64) -> f64 {
        let s = self.sigma1;
        let g = &self.gas;
        let num = s * s * (v - self.v_minus) + g.p(v) - self.p_minus;
        let dnum = s * s + g.dp(v);
        let den = s * g.visc(v);
        let dden = -(g.alpha() + 1.0) * den / v;
        -(dnum * den - num * dden) / (den * den)
    }

    /// Linearized exponential decay rates `(left, right)` at the two
    /// equilibria.
    pub fn decay_rates(&self) -> (f64, f64) {
        (self.df(self.v_minus).abs(), self.df(self.v_mid).abs())
    }

    fn rk4(&self, v: f64, h: f64) -> f64 {
        let k1 = self.f(v);
        let k2 = self.f(v + 0.5 * h * k1);
        let k3 = self.f(v + 0.5 * h * k2);
        let k4 = self.f(v + h * k3);
        v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    }
}

/// Pointwise evaluation of the profile and its ξ-derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShockPoint {
    pub v: f64,
    pub u: f64,
    pub h: f64,
    pub dv: f64,
    pub ddv: f64,
    pub dh: f64,
    /// `p(ṽ)`.
    pub p: f64,
    /// `ṽ^β`.
    pub vbeta: f64,
}

/// Result of a log-linear fit of a tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub rate: f64,
    pub r2: f64,
    pub points: usize,
}

/// Tabulated viscous shock over a uniform ξ grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ShockProfile {
    ode: ShockOde,
    pub minus: State,
    pub mid: State,
    pub sigma1: f64,
    pub xi_min: f64,
    pub dxi: f64,
    pub v_tab: Vec<f64>,
    pub u_tab: Vec<f64>,
    pub h_tab: Vec<f64>,
    pub dv_tab: Vec<f64>,
    /// Right-tail decay rate from the log-linear fit.
    pub fitted_decay_rate: f64,
    pub right_fit: TailFit,
    pub left_fit: TailFit,
}

/// Settings for [`ShockProfile::build`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileOptions {
    pub dxi: f64,
    /// Half-width of the table; `None` picks `60 / rate` from the slowest
    /// linearized tail.
    pub halfwidth: Option<f64>,
    pub max_halfwidth: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self { dxi: 0.004, halfwidth: None, max_halfwidth: 2000.0 }
    }
}

const EQUILIBRIUM_GAP: f64 = 1e-13;

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, r2)
}

impl ShockProfile {
    pub fn build(gas: GasParams, minus: State, v_mid: f64, opts: ProfileOptions) -> ModelResult<Self> {
        let ode = ShockOde::new(gas, minus.v, v_mid)?;
        let mid = hugoniot_state(&gas, minus, v_mid)?;
        if !(opts.dxi > 0.0) {
            return Err(ModelError::Argument(format!("dxi must be positive, got {}", opts.dxi)));
        }
        let (left_rate, right_rate) = ode.decay_rates();
        let halfwidth = opts.halfwidth.unwrap_or(60.0 / left_rate.min(right_rate)).min(opts.max_halfwidth);
        let n_half = (halfwidth / opts.dxi).ceil() as usize;
        let anchor = 0.5 * (minus.v + v_mid);

        let march = |h: f64, target: f64| -> ModelResult<Vec<f64>> {
            let mut out = Vec::with_capacity(n_half);
            let mut v = anchor;
            let mut settled = false;
            for _ in 0..n_half {
                if settled || (v - target).abs() < EQUILIBRIUM_GAP {
                    settled = true;
                    out.push(target);
                    continue;
                }
                let next = ode.rk4(v, h);
                if !(next >= v_mid && next <= minus.v) {
                    return Err(ModelError::Internal(format!(
                        "profile left the invariant interval: {next} not in [{v_mid}, {}]",
                        minus.v
                    )));
                }
                v = next;
                out.push(v);
            }
            Ok(out)
        };
        let right = march(opts.dxi, v_mid)?;
        let left = march(-opts.dxi, minus.v)?;

        let mut v_tab: Vec<f64> = left.into_iter().rev().collect();
        v_tab.push(anchor);
        v_tab.extend(right);
        let xi_min = -(n_half as f64) * opts.dxi;

        let sigma1 = ode.sigma1;
        let u_tab: Vec<f64> = v_tab.iter().map(|&v| minus.u - sigma1 * (v - minus.v)).collect();
        let dv_tab: Vec<f64> = v_tab.iter().map(|&v| ode.f(v)).collect();
        let h_tab: Vec<f64> =
            v_tab.iter().zip(&u_tab).zip(&dv_tab).map(|((&v, &u), &dv)| u - gas.visc(v) * dv).collect();

        let xs: Vec<f64> = (0..v_tab.len()).map(|i| xi_min + i as f64 * opts.dxi).collect();
        let tail = |gap: &dyn Fn(f64) -> f64, right: bool| -> TailFit {
            let (mut px, mut py) = (Vec::new(), Vec::new());
            for (x, &v) in xs.iter().zip(&v_tab) {
                let d = gap(v);
                if (right && *x > 0.0 || !right && *x < 0.0) && d > 1e-10 && d < 1e-4 {
                    px.push(*x);
                    py.push(d.ln());
                }
            }
            if px.len() < 3 {
                return TailFit { rate: f64::NAN, r2: f64::NAN, points: px.len() };
            }
            let (slope, r2) = linear_fit(&px, &py);
            TailFit { rate: slope.abs(), r2, points: px.len() }
        };
        let right_fit = tail(&|v: f64| v - v_mid, true);
        let left_fit = tail(&|v: f64| minus.v - v, false);

        Ok(Self {
            ode,
            minus,
            mid,
            sigma1,
            xi_min,
            dxi: opts.dxi,
            v_tab,
            u_tab,
            h_tab,
            dv_tab,
            fitted_decay_rate: right_fit.rate,
            right_fit,
            left_fit,
        })
    }

    pub fn ode(&self) -> &ShockOde {
        &self.ode
    }

    pub fn gas(&self) -> &GasParams {
        &self.ode.gas
    }

    pub fn len(&self) -> usize {
        self.v_tab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v_tab.is_empty()
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_min + (self.len() - 1) as f64 * self.dxi
    }

    pub fn xi(&self, i: usize) -> f64 {
        self.xi_min + i as f64 * self.dxi
    }

    /// Shock strength `ε₁ = p(v_m) - p(v₋)`.
    pub fn eps1(&self) -> f64 {
        self.gas().p(self.mid.v) - self.gas().p(self.minus.v)
    }

    fn point_from_v(&self, v: f64) -> ShockPoint {
        let g = &self.ode.gas;
        let v = v.clamp(self.mid.v, self.minus.v);
        // two powers serve every derived quantity
        let p = g.p(v);
        let vbeta = v.powf(g.beta());
        let s = self.sigma1;
        let dp = -g.gamma() * p / v;
        let visc = g.gamma() * vbeta * p / v;
        let num = s * s * (v - self.minus.v) + p - self.ode.p_minus;
        let den = s * visc;
        let dv = -num / den;
        let dnum = s * s + dp;
        let dden = -(g.alpha() + 1.0) * den / v;
        let ddv = -(dnum * den - num * dden) / (den * den) * dv;
        ShockPoint {
            v,
            u: self.minus.u - s * (v - self.minus.v),
            h: self.minus.u + (p - self.ode.p_minus) / s,
            dv,
            ddv,
            dh: dp * dv / s,
            p,
            vbeta,
        }
    }

    /// Cubic Hermite interpolation of `ṽ` (nodal values and exact slopes);
    /// derivatives then follow from the autonomous equation. Outside the
    /// table the constant end state is returned.
    pub fn eval(&self, xi: f64) -> ShockPoint {
        let s = (xi - self.xi_min) / self.dxi;
        let last = self.len() - 1;
        if !(s > 0.0) {
            return if s.is_nan() { self.point_from_v(f64::NAN) } else { self.end_point(false) };
        }
        if s >= last as f64 {
            return self.end_point(true);
        }
        let i = s.floor() as usize;
        let t = s - i as f64;
        let (v0, v1) = (self.v_tab[i], self.v_tab[i + 1]);
        let (m0, m1) = (self.dv_tab[i] * self.dxi, self.dv_tab[i + 1] * self.dxi);
        let t2 = t * t;
        let t3 = t2 * t;
        let v =
            (2.0 * t3 - 3.0 * t2 + 1.0) * v0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * v1 + (t3 - t2) * m1;
        self.point_from_v(v)
    }

    fn end_point(&self, right: bool) -> ShockPoint {
        let st = if right { self.mid } else { self.minus };
        let g = &self.ode.gas;
        let p = g.p(st.v);
        ShockPoint {
            v: st.v,
            u: st.u,
            h: self.minus.u + (p - self.ode.p_minus) / self.sigma1,
            dv: 0.0,
            ddv: 0.0,
            dh: 0.0,
            p,
            vbeta: st.v.powf(g.beta()),
        }
    }

    /// Evaluation at `ξ = y - σ₁τ - X`.
    pub fn eval_shifted(&self, tau: f64, y: f64, x_shift: f64) -> ShockPoint {
        self.eval(y - self.sigma1 * tau - x_shift)
    }

    /// Max over interior nodes of `|centered difference - f(v)|`.
    pub fn ode_residual_max(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..self.len() - 1 {
            let fd = (self.v_tab[i + 1] - self.v_tab[i - 1]) / (2.0 * self.dxi);
            worst = worst.max((fd - self.dv_tab[i]).abs());
        }
        worst
    }

    /// Fits `|ṽ'| <= C₁ ε₁² exp(-c₁ ε₁ |ξ|)` and measures the core infimum of
    /// `|ṽ'| / ε₁²` over `|ξ| <= 1/ε₁`.
    pub fn derivative_bounds(&self) -> DerivativeBounds {
        let eps1 = self.eps1();
        let rate = self.right_fit.rate.min(self.left_fit.rate);
        let small_c1 = rate / eps1;
        let mut big_c1: f64 = 0.0;
        let mut core_inf = f64::INFINITY;
        for (i, &dv) in self.dv_tab.iter().enumerate() {
            let xi = self.xi(i);
            let scaled = dv.abs() / (eps1 * eps1);
            big_c1 = big_c1.max(scaled * (rate * xi.abs()).exp());
            if xi.abs() <= 1.0 / eps1 {
                core_inf = core_inf.min(scaled);
            }
        }
        DerivativeBounds {
            eps1,
            big_c1,
            small_c1,
            core_inf_scaled: core_inf,
            right_tail: self.right_fit,
            left_tail: self.left_fit,
        }
    }
}

/// Fitted constants of the derivative envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeBounds {
    pub eps1: f64,
    /// Amplitude `C₁`.
    pub big_c1: f64,
    /// Rate constant `c₁` (decay rate / ε₁).
    pub small_c1: f64,
    /// `inf_{|ξ|<=1/ε₁} |ṽ'| / ε₁²`.
    pub core_inf_scaled: f64,
    pub right_tail: TailFit,
    pub left_tail: TailFit,
}
