//! Composite reference wave in the scaled frame `(τ, y)`:
//! `ṽ = ṽˢ_X + ṽʳ - v_m`, `h̃ = h̃ˢ_X + ũʳ - u_m`.
//!
//! The shock part is a function of `ξ = y - σ₁τ - X`; the rarefaction is
//! evaluated at `(t, x) = (ντ, νy)` and its derivatives carry the factors
//! of `ν` from the chain rule.

use crate::error::ModelResult;
use crate::rarefaction::{rescale, RarefactionParams, RarefactionPoint};
use crate::riemann::RiemannSetup;
use crate::shock::{ProfileOptions, ShockPoint, ShockProfile};

#[derive(Debug, Clone)]
pub struct CompositeWave {
    pub setup: RiemannSetup,
    pub profile: ShockProfile,
    pub rare: RarefactionParams,
    pub nu: f64,
}

/// Composite values at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositePoint {
    pub shock: ShockPoint,
    pub rare: RarefactionPoint,
    pub v: f64,
    pub h: f64,
    pub u: f64,
    pub v_y: f64,
    pub v_yy: f64,
    pub h_y: f64,
}

/// Nodal composite fields, structure-of-arrays.
#[derive(Debug, Clone, Default)]
pub struct CompositeFields {
    pub tau: f64,
    pub x_shift: f64,
    pub vs: Vec<f64>,
    pub vs_y: Vec<f64>,
    pub vs_yy: Vec<f64>,
    pub hs_y: Vec<f64>,
    pub ps: Vec<f64>,
    pub vbs: Vec<f64>,
    pub vr: Vec<f64>,
    pub vr_y: Vec<f64>,
    pub ur_y: Vec<f64>,
    pub pr: Vec<f64>,
    pub v: Vec<f64>,
    pub v_y: Vec<f64>,
    pub v_yy: Vec<f64>,
    pub h: Vec<f64>,
    pub u: Vec<f64>,
    pub p: Vec<f64>,
    pub vb: Vec<f64>,
}

impl CompositeFields {
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    fn resize(&mut self, n: usize) {
        for f in [
            &mut self.vs,
            &mut self.vs_y,
            &mut self.vs_yy,
            &mut self.hs_y,
            &mut self.ps,
            &mut self.vbs,
            &mut self.vr,
            &mut self.vr_y,
            &mut self.ur_y,
            &mut self.pr,
            &mut self.v,
            &mut self.v_y,
            &mut self.v_yy,
            &mut self.h,
            &mut self.u,
            &mut self.p,
            &mut self.vb,
        ] {
            f.resize(n, 0.0);
        }
    }
}

impl CompositeWave {
    pub fn new(setup: RiemannSetup, profile_opts: ProfileOptions, nu: f64, a: f64) -> ModelResult<Self> {
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(crate::error::ModelError::Argument(format!("viscosity must be positive, got {nu}")));
        }
        let profile = ShockProfile::build(setup.gas, setup.minus, setup.mid.v, profile_opts)?;
        let rare = RarefactionParams::from_setup(&setup, a)?;
        Ok(Self { setup, profile, rare, nu })
    }

    pub fn v_mid(&self) -> f64 {
        self.setup.mid.v
    }

    fn combine(&self, s: ShockPoint, r: RarefactionPoint) -> CompositePoint {
        let m = self.setup.mid;
        CompositePoint {
            shock: s,
            rare: r,
            v: s.v + r.v - m.v,
            h: s.h + r.u - m.u,
            u: s.u + r.u - m.u,
            v_y: s.dv + r.vx,
            v_yy: s.ddv + r.vxx,
            h_y: s.dh + r.ux,
        }
    }

    pub fn eval(&self, tau: f64, y: f64, x_shift: f64) -> ModelResult<CompositePoint> {
        let s = self.profile.eval_shifted(tau, y, x_shift);
        let r = self.rare.eval_scaled(self.nu, tau, y)?;
        Ok(self.combine(s, r))
    }

    /// Scaled-frame rarefaction on a nondecreasing node list.
    pub fn rarefaction_nodes(&self, tau: f64, ys: &[f64], out: &mut Vec<RarefactionPoint>) -> ModelResult<()> {
        let xs: Vec<f64> = ys.iter().map(|y| self.nu * y).collect();
        self.rare.eval_many(self.nu * tau, &xs, out)?;
        for p in out.iter_mut() {
            *p = rescale(*p, self.nu);
        }
        Ok(())
    }

    /// Fills every nodal field at `(τ, X)` from precomputed rarefaction
    /// nodes at the same `τ`.
    pub fn fill(&self, tau: f64, x_shift: f64, ys: &[f64], rare: &[RarefactionPoint], out: &mut CompositeFields) {
        let n = ys.len();
        out.resize(n);
        out.tau = tau;
        out.x_shift = x_shift;
        let g = &self.setup.gas;
        let beta = g.beta();
        for i in 0..n {
            let s = self.profile.eval_shifted(tau, ys[i], x_shift);
            let c = self.combine(s, rare[i]);
            out.vs[i] = s.v;
            out.vs_y[i] = s.dv;
            out.vs_yy[i] = s.ddv;
            out.hs_y[i] = s.dh;
            out.ps[i] = s.p;
            out.vbs[i] = s.vbeta;
            out.vr[i] = c.rare.v;
            out.vr_y[i] = c.rare.vx;
            out.ur_y[i] = c.rare.ux;
            out.pr[i] = c.rare.p;
            out.v[i] = c.v;
            out.v_y[i] = c.v_y;
            out.v_yy[i] = c.v_yy;
            out.h[i] = c.h;
            out.u[i] = c.u;
            out.p[i] = g.p(c.v);
            out.vb[i] = c.v.powf(beta);
        }
    }
}
