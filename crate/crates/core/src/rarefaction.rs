//! Smooth approximate 2-rarefaction.
//!
//! The Burgers problem `w_t + w w_x = 0`, `w(0,x) = ½(w_m+w₊) + ½(w₊-w_m) tanh(x/a)`
//! is solved exactly along characteristics, and the wave is lifted to the
//! p-system through `λ₂(ṽʳ) = w`, `ũʳ = u_m - ∫_{v_m}^{ṽʳ} λ₂(s) ds`.
//!
//! Writing `ξ*` for the foot of the characteristic through `(t, x)`:
//!
//! ```text
//! w_x  = w₀'(ξ*) / (1 + w₀'(ξ*) t)
//! w_xx = w₀''(ξ*) / (1 + w₀'(ξ*) t)³
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, ModelResult};
use crate::gas::{GasParams, State};
use crate::riemann::{rc2_velocity, RiemannSetup};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RarefactionParams {
    pub gas: GasParams,
    /// Smoothing width of the Burgers data.
    pub a: f64,
    pub w_m: f64,
    pub w_plus: f64,
    pub mid: State,
    pub plus: State,
    pub p_mid: f64,
    pub p_plus: f64,
}

/// Burgers solution, lifted wave and their x-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RarefactionPoint {
    pub w: f64,
    pub wx: f64,
    pub wxx: f64,
    pub v: f64,
    pub u: f64,
    pub vx: f64,
    pub vxx: f64,
    pub ux: f64,
    /// `p(ṽʳ)`.
    pub p: f64,
}

const SATURATION: f64 = 20.0;

/// `4 e^{-2|z|} / (1 + e^{-2|z|})²`, free of the cancellation in `1 - tanh²`.
#[inline]
fn sech2(z: f64) -> f64 {
    let e = (-2.0 * z.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

impl RarefactionParams {
    pub fn new(gas: GasParams, mid: State, v_plus: f64, a: f64) -> ModelResult<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(ModelError::Argument(format!("smoothing width a must be positive, got {a}")));
        }
        if !(mid.v > 0.0) {
            return Err(ModelError::domain("rarefaction", format!("v_mid must be positive, got {}", mid.v)));
        }
        let plus = State::new(v_plus, rc2_velocity(&gas, mid, v_plus)?);
        Ok(Self {
            gas,
            a,
            w_m: gas.lam2(mid.v),
            w_plus: gas.lam2(v_plus),
            mid,
            plus,
            p_mid: gas.p(mid.v),
            p_plus: gas.p(v_plus),
        })
    }

    pub fn from_setup(setup: &RiemannSetup, a: f64) -> ModelResult<Self> {
        Self::new(setup.gas, setup.mid, setup.plus.v, a)
    }

    pub fn is_degenerate(&self) -> bool {
        self.w_plus == self.w_m
    }

    /// Pressure jump `|p(v_m) - p(v₊)|`.
    pub fn eps2(&self) -> f64 {
        (self.gas.p(self.mid.v) - self.gas.p(self.plus.v)).abs()
    }

    #[inline]
    fn half_jump(&self) -> f64 {
        0.5 * (self.w_plus - self.w_m)
    }

    #[inline]
    fn mean(&self) -> f64 {
        0.5 * (self.w_plus + self.w_m)
    }

    pub fn burgers_initial(&self, x: f64) -> f64 {
        self.mean() + self.half_jump() * (x / self.a).tanh()
    }

    #[inline]
    fn w0_d1(&self, x: f64) -> f64 {
        self.half_jump() * sech2(x / self.a) / self.a
    }

    #[inline]
    fn w0_d2(&self, x: f64) -> f64 {
        let z = x / self.a;
        -2.0 * self.half_jump() * sech2(z) * z.tanh() / (self.a * self.a)
    }

    /// Foot of the characteristic through `(t, x)`, starting Newton from
    /// `guess`. Returns the foot and the final residual.
    pub fn characteristic_foot(&self, t: f64, x: f64, guess: Option<f64>) -> ModelResult<(f64, f64)> {
        if !(t >= 0.0) || !x.is_finite() {
            return Err(ModelError::domain("burgers_exact", format!("need t >= 0 and finite x, got t = {t}, x = {x}")));
        }
        if t == 0.0 || self.is_degenerate() {
            return Ok((x - self.w_m * t, 0.0));
        }
        if x - self.w_plus * t > SATURATION * self.a {
            return Ok((x - self.w_plus * t, 0.0));
        }
        if x - self.w_m * t < -SATURATION * self.a {
            return Ok((x - self.w_m * t, 0.0));
        }
        let g = |s: f64| s + self.burgers_initial(s) * t - x;
        // w₀ takes values in (w_m, w₊), so the root lies in this bracket.
        let mut lo = x - self.w_plus * t;
        let mut hi = x - self.w_m * t;
        let mut s = guess.unwrap_or(x - self.mean() * t).clamp(lo, hi);
        let tol = 1e-15 * (1.0 + x.abs());
        for _ in 0..200 {
            let r = g(s);
            if r.abs() <= tol {
                return Ok((s, r));
            }
            if r > 0.0 {
                hi = s;
            } else {
                lo = s;
            }
            let next = s - r / (1.0 + self.w0_d1(s) * t);
            s = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
            if hi - lo <= 4.0 * f64::EPSILON * (1.0 + s.abs()) {
                break;
            }
        }
        let r = g(s);
        if r.abs() <= 1e-12 * (1.0 + x.abs()) {
            Ok((s, r))
        } else {
            Err(ModelError::Internal(format!("characteristic foot did not converge at t = {t}, x = {x}: residual {r}")))
        }
    }

    pub fn burgers_exact(&self, t: f64, x: f64) -> ModelResult<f64> {
        let (foot, _) = self.characteristic_foot(t, x, None)?;
        Ok(self.burgers_initial(foot))
    }

    fn point_from_foot(&self, t: f64, foot: f64) -> RarefactionPoint {
        // tanh is exactly ±1 in double precision beyond this point
        if foot.abs() > SATURATION * self.a || self.is_degenerate() {
            let (st, w, p) = if foot > 0.0 && !self.is_degenerate() {
                (self.plus, self.w_plus, self.p_plus)
            } else {
                (self.mid, self.w_m, self.p_mid)
            };
            return RarefactionPoint { w, v: st.v, u: st.u, p, ..Default::default() };
        }
        let g = &self.gas;
        let w = self.burgers_initial(foot);
        let d1 = self.w0_d1(foot);
        let jac = 1.0 / (1.0 + d1 * t);
        let wx = d1 * jac;
        let wxx = self.w0_d2(foot) * jac * jac * jac;
        // v = c w^k with k = -2/(γ+1)
        let k = -2.0 / (g.gamma() + 1.0);
        let v = g.lam2_inv(w);
        let dv_dw = k * v / w;
        let d2v_dw2 = k * (k - 1.0) * v / (w * w);
        let vx = dv_dw * wx;
        let vxx = d2v_dw2 * wx * wx + dv_dw * wxx;
        let u = self.mid.u - (g.lam2_antiderivative(v) - g.lam2_antiderivative(self.mid.v));
        RarefactionPoint { w, wx, wxx, v, u, vx, vxx, ux: -w * vx, p: g.p(v) }
    }

    /// Lifted wave with physical-frame derivatives.
    pub fn eval(&self, t: f64, x: f64) -> ModelResult<RarefactionPoint> {
        let (foot, _) = self.characteristic_foot(t, x, None)?;
        Ok(self.point_from_foot(t, foot))
    }

    /// Evaluates on a nondecreasing list of abscissae, warm-starting each
    /// Newton solve from the previous foot.
    pub fn eval_many(&self, t: f64, xs: &[f64], out: &mut Vec<RarefactionPoint>) -> ModelResult<()> {
        out.clear();
        out.reserve(xs.len());
        let mut prev: Option<f64> = None;
        let mut prev_x = f64::NEG_INFINITY;
        for &x in xs {
            let guess = prev.map(|f| f + (x - prev_x) / (1.0 + self.w0_d1(f) * t));
            let (foot, _) = self.characteristic_foot(t, x, guess)?;
            out.push(self.point_from_foot(t, foot));
            prev = Some(foot);
            prev_x = x;
        }
        Ok(())
    }

    /// Evaluation in the scaled frame `(t, x) = (ντ, νy)`; derivatives are
    /// with respect to `y`.
    pub fn eval_scaled(&self, nu: f64, tau: f64, y: f64) -> ModelResult<RarefactionPoint> {
        Ok(rescale(self.eval(nu * tau, nu * y)?, nu))
    }

    /// Inviscid centered fan `(𝔳ʳ, 𝔲ʳ)(x/t)`.
    pub fn fan(&self, t: f64, x: f64) -> State {
        if t <= 0.0 {
            return if x < 0.0 { self.mid } else { self.plus };
        }
        let s = x / t;
        if s <= self.w_m {
            self.mid
        } else if s >= self.w_plus {
            self.plus
        } else {
            let g = &self.gas;
            let v = g.lam2_inv(s).clamp(self.plus.v, self.mid.v);
            State::new(v, self.mid.u - (g.lam2_antiderivative(v) - g.lam2_antiderivative(self.mid.v)))
        }
    }

    /// L^p norms of `∂x(ṽʳ, ũʳ)` and of the distance to the fan at time `t`,
    /// next to the envelope shapes they are expected to follow.
    pub fn lp_decay_report(&self, t: f64, p: f64) -> ModelResult<LpReport> {
        if !(t > 0.0) || !(p >= 1.0) {
            return Err(ModelError::Argument(format!("need t > 0 and p >= 1, got t = {t}, p = {p}")));
        }
        let eps2 = self.eps2();
        let inv_p = if p.is_infinite() { 0.0 } else { 1.0 / p };
        let mut rep = LpReport {
            t,
            p,
            dv: 0.0,
            du: 0.0,
            v_fan: 0.0,
            u_fan: 0.0,
            derivative_shape: (eps2 * self.a.powf(-1.0 + inv_p)).min(eps2.powf(inv_p) * t.powf(-1.0 + inv_p)),
            fan_shape: if inv_p == 1.0 {
                eps2 * self.a
            } else {
                (self.a.powf(inv_p) * eps2).min(self.a * eps2.powf(inv_p) * t.powf(-1.0 + inv_p))
            },
        };
        if self.is_degenerate() {
            return Ok(rep);
        }
        let pad = 40.0 * self.a;
        let (xl, xr) = (self.w_m * t - pad, self.w_plus * t + pad);
        // resolve both the smoothing width and the fan
        let dx = (self.a / 200.0).min((xr - xl) / 20_000.0);
        let n = ((xr - xl) / dx).ceil() as usize + 1;
        let xs: Vec<f64> = (0..n).map(|i| xl + i as f64 * (xr - xl) / (n - 1) as f64).collect();
        let h = (xr - xl) / (n - 1) as f64;
        let mut pts = Vec::new();
        self.eval_many(t, &xs, &mut pts)?;
        let mut acc = [0.0f64; 4];
        for (i, (pt, &x)) in pts.iter().zip(&xs).enumerate() {
            let f = self.fan(t, x);
            let vals = [pt.vx.abs(), pt.ux.abs(), (pt.v - f.v).abs(), (pt.u - f.u).abs()];
            let wt = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            for (a, val) in acc.iter_mut().zip(vals) {
                if p.is_infinite() {
                    *a = a.max(val);
                } else {
                    *a += wt * h * val.powf(p);
                }
            }
        }
        if p.is_finite() {
            for a in acc.iter_mut() {
                *a = a.powf(1.0 / p);
            }
        }
        rep.dv = acc[0];
        rep.du = acc[1];
        rep.v_fan = acc[2];
        rep.u_fan = acc[3];
        Ok(rep)
    }
}

/// Converts physical-frame x-derivatives to `y`-derivatives under `x = νy`.
pub fn rescale(mut pt: RarefactionPoint, nu: f64) -> RarefactionPoint {
    pt.wx *= nu;
    pt.wxx *= nu * nu;
    pt.vx *= nu;
    pt.vxx *= nu * nu;
    pt.ux *= nu;
    pt
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpReport {
    pub t: f64,
    pub p: f64,
    pub dv: f64,
    pub du: f64,
    pub v_fan: f64,
    pub u_fan: f64,
    pub derivative_shape: f64,
    pub fan_shape: f64,
}
