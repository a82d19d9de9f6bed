//! Navier–Stokes in BD form on the scaled frame `(τ, y) = (t/ν, x/ν)`:
//!
//! ```text
//! v_τ = ∂_y (h - v^β ∂_y p(v)),     h_τ = -∂_y p(v),
//! ```
//!
//! with the physical velocity recovered as `u = h + γ v^{-α-1} v_y`.
//!
//! Space: the mass flux lives on half nodes with the mean of `h`, the mean
//! of `v^β` and the one-cell difference of `p`; the momentum equation uses
//! centered differences of `p`. Time: classical RK4 with both end nodes
//! pinned to the composite wave at every stage. The shift `X` is part of
//! the RK4 state, its rate coming from `Y` and `J_bad` of each stage.

use serde::{Deserialize, Serialize};

use crate::composite::{CompositeFields, CompositeWave};
use crate::entropy::{EntropyContext, FunctionalReport};
use crate::error::{ModelError, ModelResult, SolverError};
use crate::rarefaction::RarefactionPoint;
use crate::shift::{shift_rhs, ShiftBranch, ShiftSample, ShiftTrace};

/// Uniform node set on `[y_left, y_right]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub y_left: f64,
    pub y_right: f64,
    pub n: usize,
    pub dy: f64,
}

impl Grid1D {
    pub fn new(y_left: f64, y_right: f64, n: usize) -> ModelResult<Self> {
        if !(y_left < y_right) || !y_left.is_finite() || !y_right.is_finite() {
            return Err(ModelError::Argument(format!("empty domain [{y_left}, {y_right}]")));
        }
        if n < 16 {
            return Err(ModelError::Argument(format!("grid needs at least 16 nodes, got {n}")));
        }
        Ok(Self { y_left, y_right, n, dy: (y_right - y_left) / (n - 1) as f64 })
    }

    /// Grid whose spacing is `dy` up to rounding of the node count.
    pub fn with_spacing(y_left: f64, y_right: f64, dy: f64) -> ModelResult<Self> {
        if !(dy > 0.0) {
            return Err(ModelError::Argument(format!("spacing must be positive, got {dy}")));
        }
        Self::new(y_left, y_right, ((y_right - y_left) / dy).round() as usize + 1)
    }

    #[inline]
    pub fn y(&self, i: usize) -> f64 {
        self.y_left + i as f64 * self.dy
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.y(i)).collect()
    }

    /// Trapezoid weight of node `i`.
    #[inline]
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.n - 1 {
            0.5 * self.dy
        } else {
            self.dy
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    V,
    H,
    Both,
}

/// Additive perturbation of the composite initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Perturbation {
    /// `A exp(-(y - c)² / (2 s²))`.
    Gaussian { target: Target, amplitude: f64, center: f64, width: f64 },
    /// `A (1 - ((y - c)/r)²)³` on `|y - c| < r`.
    Compact { target: Target, amplitude: f64, center: f64, radius: f64 },
}

impl Perturbation {
    pub fn target(&self) -> Target {
        match *self {
            Perturbation::Gaussian { target, .. } | Perturbation::Compact { target, .. } => target,
        }
    }

    pub fn value(&self, y: f64) -> f64 {
        match *self {
            Perturbation::Gaussian { amplitude, center, width, .. } => {
                amplitude * (-(y - center).powi(2) / (2.0 * width * width)).exp()
            }
            Perturbation::Compact { amplitude, center, radius, .. } => {
                let z = (y - center) / radius;
                if z.abs() < 1.0 {
                    amplitude * (1.0 - z * z).powi(3)
                } else {
                    0.0
                }
            }
        }
    }

    fn validate(&self) -> ModelResult<()> {
        let (a, c, w) = match *self {
            Perturbation::Gaussian { amplitude, center, width, .. } => (amplitude, center, width),
            Perturbation::Compact { amplitude, center, radius, .. } => (amplitude, center, radius),
        };
        if !(a.is_finite() && c.is_finite() && w > 0.0 && w.is_finite()) {
            return Err(ModelError::Configuration(format!("invalid perturbation {self:?}")));
        }
        Ok(())
    }
}

/// Fields on the grid plus the current shift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimState {
    pub tau: f64,
    pub v: Vec<f64>,
    pub h: Vec<f64>,
    pub x_shift: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub cfl: f64,
    pub v_floor: f64,
    /// Integrate the shift; without it `X ≡ 0` and the functionals are
    /// only evaluated on request.
    pub shift: bool,
    pub lambda: f64,
    /// Indicator threshold of the B/G split; `None` means `0.25 p(v₋)`.
    pub delta: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { cfl: 0.4, v_floor: 1e-6, shift: true, lambda: 0.1, delta: None }
    }
}

/// Physical-frame view of a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSnapshot {
    pub t: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub u: Vec<f64>,
    pub h: Vec<f64>,
    pub x_shift: f64,
}

/// Semi-discrete right-hand side on interior nodes; end entries are zeroed.
pub fn bd_rhs(dy: f64, h: &[f64], pv: &[f64], vb: &[f64], dv: &mut [f64], dh: &mut [f64]) {
    let n = h.len();
    let inv = 1.0 / dy;
    let flux = |i: usize| 0.5 * (h[i] + h[i + 1]) - 0.5 * (vb[i] + vb[i + 1]) * (pv[i + 1] - pv[i]) * inv;
    let mut left = flux(0);
    for i in 1..n - 1 {
        let right = flux(i);
        dv[i] = (right - left) * inv;
        dh[i] = -(pv[i + 1] - pv[i - 1]) * 0.5 * inv;
        left = right;
    }
    dv[0] = 0.0;
    dh[0] = 0.0;
    dv[n - 1] = 0.0;
    dh[n - 1] = 0.0;
}

#[derive(Debug, Default)]
struct RareCache {
    slots: Vec<(u64, Vec<RarefactionPoint>)>,
}

impl RareCache {
    fn get(&mut self, wave: &CompositeWave, ys: &[f64], tau: f64) -> ModelResult<usize> {
        let key = tau.to_bits();
        if let Some(i) = self.slots.iter().position(|(k, _)| *k == key) {
            return Ok(i);
        }
        let mut buf = if self.slots.len() >= 3 { self.slots.remove(0).1 } else { Vec::new() };
        wave.rarefaction_nodes(tau, ys, &mut buf)?;
        self.slots.push((key, buf));
        Ok(self.slots.len() - 1)
    }
}

#[derive(Debug, Default)]
struct Work {
    rare: RareCache,
    comp: CompositeFields,
    pv: Vec<f64>,
    vb: Vec<f64>,
    scratch: Vec<f64>,
    kv: [Vec<f64>; 4],
    kh: [Vec<f64>; 4],
    sv: Vec<f64>,
    sh: Vec<f64>,
}

struct StageOut {
    xdot: f64,
    sample: Option<(f64, f64, ShiftBranch)>,
}

pub struct Simulation {
    pub wave: CompositeWave,
    pub grid: Grid1D,
    pub ys: Vec<f64>,
    pub state: SimState,
    pub opts: SolverOptions,
    pub entropy: EntropyContext,
    pub delta: f64,
    pub e0: f64,
    pub trace: ShiftTrace,
    pub steps: u64,
    work: Work,
}

impl Simulation {
    pub fn new(
        wave: CompositeWave,
        grid: Grid1D,
        perturbations: &[Perturbation],
        opts: SolverOptions,
    ) -> Result<Self, SolverError> {
        if !(opts.cfl > 0.0) || !(opts.v_floor > 0.0) {
            return Err(SolverError::Setup(format!("cfl and v_floor must be positive: {opts:?}")));
        }
        let entropy = EntropyContext::new(&wave.setup, opts.lambda)?;
        let gas = wave.setup.gas;
        let delta = opts.delta.unwrap_or(0.25 * gas.p(wave.setup.minus.v));
        if !(delta > 0.0) {
            return Err(SolverError::Setup(format!("indicator threshold must be positive, got {delta}")));
        }
        let ys = grid.nodes();
        let mut v = Vec::with_capacity(grid.n);
        let mut h = Vec::with_capacity(grid.n);
        let mut e0 = 0.0;
        for p in perturbations {
            p.validate()?;
        }
        for (i, &y) in ys.iter().enumerate() {
            let c = wave.eval(0.0, y, 0.0)?;
            let (mut dv, mut dh) = (0.0, 0.0);
            for p in perturbations {
                let val = p.value(y);
                match p.target() {
                    Target::V => dv += val,
                    Target::H => dh += val,
                    Target::Both => {
                        dv += val;
                        dh += val;
                    }
                }
            }
            let vi = c.v + dv;
            if !(vi > opts.v_floor) {
                return Err(ModelError::Configuration(format!(
                    "perturbation drives v to {vi} at y = {y}, below the floor {}",
                    opts.v_floor
                ))
                .into());
            }
            e0 += grid.weight(i) * (0.5 * dh * dh + gas.rel_q(vi, c.v));
            v.push(vi);
            h.push(c.h + dh);
        }
        let n = grid.n;
        let work = Work {
            kv: std::array::from_fn(|_| vec![0.0; n]),
            kh: std::array::from_fn(|_| vec![0.0; n]),
            sv: vec![0.0; n],
            sh: vec![0.0; n],
            pv: vec![0.0; n],
            vb: vec![0.0; n],
            ..Default::default()
        };
        Ok(Self {
            wave,
            grid,
            ys,
            state: SimState { tau: 0.0, v, h, x_shift: 0.0 },
            opts,
            entropy,
            delta,
            e0,
            trace: ShiftTrace::new(),
            steps: 0,
            work,
        })
    }

    pub fn nu(&self) -> f64 {
        self.wave.nu
    }

    /// Largest stable step for the current state.
    pub fn stable_dtau(&self) -> f64 {
        let g = &self.wave.setup.gas;
        let vmin = self.state.v.iter().copied().fold(self.wave.setup.plus.v, f64::min);
        let dy = self.grid.dy;
        self.opts.cfl * (dy / g.lam2(vmin)).min(dy * dy / (2.0 * g.visc(vmin)))
    }

    fn pin(&self, tau: f64, x_shift: f64, v: &mut [f64], h: &mut [f64]) -> ModelResult<()> {
        let n = self.grid.n;
        for i in [0, n - 1] {
            let c = self.wave.eval(tau, self.ys[i], x_shift)?;
            v[i] = c.v;
            h[i] = c.h;
        }
        Ok(())
    }

    /// Evaluates `(dv, dh)` into slot `k` of the work arrays, reading the
    /// state from the stage buffers when `stage_buf` is set.
    fn stage(&mut self, k: usize, tau: f64, x_shift: f64, stage_buf: bool) -> Result<StageOut, SolverError> {
        let g = self.wave.setup.gas;
        let beta = g.beta();
        let floor = self.opts.v_floor;
        let w = &mut self.work;
        let (v, h) = if stage_buf { (&w.sv, &w.sh) } else { (&self.state.v, &self.state.h) };
        for i in 0..v.len() {
            let vi = v[i];
            if !vi.is_finite() || !h[i].is_finite() {
                return Err(SolverError::NonFinite { tau, node: i });
            }
            if vi <= floor {
                return Err(SolverError::Positivity { tau, node: i, value: vi, floor });
            }
            w.pv[i] = g.p(vi);
            w.vb[i] = vi.powf(beta);
        }
        bd_rhs(self.grid.dy, h, &w.pv, &w.vb, &mut w.kv[k], &mut w.kh[k]);
        if !self.opts.shift {
            return Ok(StageOut { xdot: 0.0, sample: None });
        }
        let slot = w.rare.get(&self.wave, &self.ys, tau)?;
        self.wave.fill(tau, x_shift, &self.ys, &w.rare.slots[slot].1, &mut w.comp);
        let r = self.entropy.evaluate(self.grid.dy, v, h, &w.pv, &w.vb, &w.comp, self.delta, &mut w.scratch);
        let (xdot, branch) = shift_rhs(r.y_functional, r.j_bad, self.entropy.eps1, self.entropy.sigma1);
        Ok(StageOut { xdot, sample: Some((r.y_functional, r.j_bad, branch)) })
    }

    fn combine(&mut self, k: usize, c: f64) {
        let w = &mut self.work;
        for i in 0..self.grid.n {
            w.sv[i] = self.state.v[i] + c * w.kv[k][i];
            w.sh[i] = self.state.h[i] + c * w.kh[k][i];
        }
    }

    pub fn step(&mut self, dtau: f64) -> Result<(), SolverError> {
        if !(dtau > 0.0 && dtau.is_finite()) {
            return Err(SolverError::Setup(format!("step must be positive, got {dtau}")));
        }
        let t0 = self.state.tau;
        let x0 = self.state.x_shift;
        let half = t0 + 0.5 * dtau;
        let t1 = t0 + dtau;

        let s1 = self.stage(0, t0, x0, false)?;
        if let Some((y, j, branch)) = s1.sample {
            self.trace.push(ShiftSample { tau: t0, x: x0, xdot: s1.xdot, y, j_bad: j, branch });
        }
        let xa = x0 + 0.5 * dtau * s1.xdot;
        self.combine(0, 0.5 * dtau);
        self.pin_stage(half, xa)?;
        let s2 = self.stage(1, half, xa, true)?;

        let xb = x0 + 0.5 * dtau * s2.xdot;
        self.combine(1, 0.5 * dtau);
        self.pin_stage(half, xb)?;
        let s3 = self.stage(2, half, xb, true)?;

        let xc = x0 + dtau * s3.xdot;
        self.combine(2, dtau);
        self.pin_stage(t1, xc)?;
        let s4 = self.stage(3, t1, xc, true)?;

        let x1 = x0 + dtau / 6.0 * (s1.xdot + 2.0 * s2.xdot + 2.0 * s3.xdot + s4.xdot);
        {
            let w = &mut self.work;
            let c = dtau / 6.0;
            for i in 0..self.grid.n {
                self.state.v[i] += c * (w.kv[0][i] + 2.0 * w.kv[1][i] + 2.0 * w.kv[2][i] + w.kv[3][i]);
                self.state.h[i] += c * (w.kh[0][i] + 2.0 * w.kh[1][i] + 2.0 * w.kh[2][i] + w.kh[3][i]);
            }
        }
        let mut v = std::mem::take(&mut self.state.v);
        let mut h = std::mem::take(&mut self.state.h);
        let pinned = self.pin(t1, x1, &mut v, &mut h);
        self.state.v = v;
        self.state.h = h;
        pinned?;
        self.state.tau = t1;
        self.state.x_shift = x1;
        self.steps += 1;
        for (i, &vi) in self.state.v.iter().enumerate() {
            if !vi.is_finite() || !self.state.h[i].is_finite() {
                return Err(SolverError::NonFinite { tau: t1, node: i });
            }
            if vi <= self.opts.v_floor {
                return Err(SolverError::Positivity { tau: t1, node: i, value: vi, floor: self.opts.v_floor });
            }
        }
        Ok(())
    }

    fn pin_stage(&mut self, tau: f64, x_shift: f64) -> ModelResult<()> {
        let mut sv = std::mem::take(&mut self.work.sv);
        let mut sh = std::mem::take(&mut self.work.sh);
        let r = self.pin(tau, x_shift, &mut sv, &mut sh);
        self.work.sv = sv;
        self.work.sh = sh;
        r
    }

    /// Steps to exactly `tau_end` with the largest uniform step allowed by
    /// the current state. Returns the number of steps taken.
    pub fn advance_to(&mut self, tau_end: f64) -> Result<u64, SolverError> {
        let remaining = tau_end - self.state.tau;
        if remaining <= 1e-14 * tau_end.abs().max(1.0) {
            return Ok(0);
        }
        let n = (remaining / self.stable_dtau()).ceil().max(1.0) as u64;
        let dt = remaining / n as f64;
        for k in 0..n {
            if k + 1 == n {
                // land on the target without accumulated rounding
                let last = tau_end - self.state.tau;
                self.step(last)?;
            } else {
                self.step(dt)?;
            }
        }
        Ok(n)
    }

    /// Composite fields at the current `(τ, X)`.
    pub fn composite_now(&mut self) -> ModelResult<&CompositeFields> {
        let tau = self.state.tau;
        let slot = self.work.rare.get(&self.wave, &self.ys, tau)?;
        self.wave.fill(tau, self.state.x_shift, &self.ys, &self.work.rare.slots[slot].1, &mut self.work.comp);
        Ok(&self.work.comp)
    }

    /// Every functional at the current state with threshold `delta`.
    pub fn report_with(&mut self, delta: f64) -> Result<FunctionalReport, SolverError> {
        self.composite_now()?;
        let g = self.wave.setup.gas;
        let w = &mut self.work;
        for (i, &vi) in self.state.v.iter().enumerate() {
            w.pv[i] = g.p(vi);
            w.vb[i] = vi.powf(g.beta());
        }
        let mut r = self.entropy.evaluate(
            self.grid.dy,
            &self.state.v,
            &self.state.h,
            &w.pv,
            &w.vb,
            &w.comp,
            delta,
            &mut w.scratch,
        );
        r.e0 = self.e0;
        Ok(r)
    }

    pub fn report(&mut self) -> Result<FunctionalReport, SolverError> {
        self.report_with(self.delta)
    }

    /// Current shift rate from the functionals of the current state.
    pub fn shift_rate(&mut self) -> Result<(f64, FunctionalReport), SolverError> {
        let r = self.report()?;
        let (xdot, _) = shift_rhs(r.y_functional, r.j_bad, self.entropy.eps1, self.entropy.sigma1);
        Ok((if self.opts.shift { xdot } else { 0.0 }, r))
    }

    /// Appends a trace sample for the current state (end of run).
    pub fn record_shift_sample(&mut self) -> Result<(), SolverError> {
        if !self.opts.shift {
            return Ok(());
        }
        let r = self.report()?;
        let (xdot, branch) = shift_rhs(r.y_functional, r.j_bad, self.entropy.eps1, self.entropy.sigma1);
        self.trace.push(ShiftSample {
            tau: self.state.tau,
            x: self.state.x_shift,
            xdot,
            y: r.y_functional,
            j_bad: r.j_bad,
            branch,
        });
        Ok(())
    }

    /// Physical velocity `u = h + γ v^{-α-1} v_y` with centered `v_y`.
    pub fn velocity(&self) -> Vec<f64> {
        let g = &self.wave.setup.gas;
        let (v, h) = (&self.state.v, &self.state.h);
        let n = v.len();
        let dy = self.grid.dy;
        (0..n)
            .map(|i| {
                let vy = if i == 0 {
                    (v[1] - v[0]) / dy
                } else if i == n - 1 {
                    (v[n - 1] - v[n - 2]) / dy
                } else {
                    (v[i + 1] - v[i - 1]) / (2.0 * dy)
                };
                h[i] + g.visc(v[i]) * vy
            })
            .collect()
    }

    /// `(t, x) = (ντ, νy)` and `X_ν = νX`.
    pub fn scale_map(&self) -> PhysicalSnapshot {
        let nu = self.nu();
        PhysicalSnapshot {
            t: nu * self.state.tau,
            x: self.ys.iter().map(|y| nu * y).collect(),
            v: self.state.v.clone(),
            u: self.velocity(),
            h: self.state.h.clone(),
            x_shift: nu * self.state.x_shift,
        }
    }
}
