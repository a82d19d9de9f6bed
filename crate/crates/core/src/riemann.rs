//! Exact composite Riemann solution: a 1-shock from `U₋` to `U_m` followed
//! by a 2-rarefaction from `U_m` to `U₊`.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, ModelResult};
use crate::gas::{GasParams, State};

/// Immutable description of the composite wave pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannSetup {
    pub gas: GasParams,
    pub minus: State,
    pub mid: State,
    pub plus: State,
    /// 1-shock speed, negative.
    pub sigma1: f64,
    /// Pressure jump across the shock.
    pub eps1: f64,
    /// Pressure jump across the rarefaction.
    pub eps2: f64,
}

/// `σ₁ = -sqrt((p(v_m) - p(v₋)) / (v₋ - v_m))`.
pub fn shock_speed(gas: &GasParams, v_minus: f64, v_mid: f64) -> ModelResult<f64> {
    if !(v_mid > 0.0 && v_mid < v_minus) {
        return Err(ModelError::Argument(format!(
            "shock speed needs 0 < v_mid < v_minus, got v_mid = {v_mid}, v_minus = {v_minus}"
        )));
    }
    Ok(-((gas.p(v_mid) - gas.p(v_minus)) / (v_minus - v_mid)).sqrt())
}

/// Point of the 1-shock curve through `minus` with volume `v_mid`.
pub fn hugoniot_state(gas: &GasParams, minus: State, v_mid: f64) -> ModelResult<State> {
    if !(v_mid > 0.0 && v_mid <= minus.v) {
        return Err(ModelError::Argument(format!(
            "Hugoniot state needs 0 < v_mid <= v_minus, got v_mid = {v_mid}, v_minus = {}",
            minus.v
        )));
    }
    if v_mid == minus.v {
        return Ok(minus);
    }
    let sigma = shock_speed(gas, minus.v, v_mid)?;
    Ok(State::new(v_mid, minus.u - sigma * (v_mid - minus.v)))
}

/// Velocity on the 2-rarefaction curve through `mid` at volume `v <= v_mid`.
pub fn rc2_velocity(gas: &GasParams, mid: State, v: f64) -> ModelResult<f64> {
    if !(v > 0.0 && v <= mid.v) {
        return Err(ModelError::Argument(format!(
            "2-rarefaction curve needs 0 < v <= v_mid, got v = {v}, v_mid = {}",
            mid.v
        )));
    }
    Ok(mid.u - (gas.lam2_antiderivative(v) - gas.lam2_antiderivative(mid.v)))
}

/// Velocity reached at `v_plus` after a shock to `v_mid` and a rarefaction,
/// with its derivative in `v_mid`.
fn terminal_velocity(gas: &GasParams, minus: State, v_mid: f64, v_plus: f64) -> (f64, f64) {
    let dp = gas.p(v_mid) - gas.p(minus.v);
    let dv = minus.v - v_mid;
    let g = (dp * dv).max(0.0);
    let root = g.sqrt();
    let u_mid = minus.u - root;
    let u_plus = u_mid - (gas.lam2_antiderivative(v_plus) - gas.lam2_antiderivative(v_mid));
    let dg = gas.dp(v_mid) * dv - dp;
    let du_mid = if root > 0.0 { -dg / (2.0 * root) } else { 0.0 };
    (u_plus, du_mid + gas.lam2(v_mid))
}

impl RiemannSetup {
    /// Builds the pattern from the left state and the two volumes; the
    /// velocities follow from the wave curves.
    pub fn from_volumes(gas: GasParams, minus: State, v_mid: f64, v_plus: f64) -> ModelResult<Self> {
        if !(v_plus > 0.0 && v_plus <= v_mid && v_mid < minus.v) {
            return Err(ModelError::Configuration(format!(
                "composite pattern needs 0 < v_plus <= v_mid < v_minus, got ({}, {v_mid}, {v_plus})",
                minus.v
            )));
        }
        let mid = hugoniot_state(&gas, minus, v_mid)?;
        let plus = State::new(v_plus, rc2_velocity(&gas, mid, v_plus)?);
        Self::assemble(gas, minus, mid, plus)
    }

    fn assemble(gas: GasParams, minus: State, mid: State, plus: State) -> ModelResult<Self> {
        let sigma1 = shock_speed(&gas, minus.v, mid.v)?;
        Ok(Self {
            gas,
            minus,
            mid,
            plus,
            sigma1,
            eps1: (gas.p(minus.v) - gas.p(mid.v)).abs(),
            eps2: (gas.p(mid.v) - gas.p(plus.v)).abs(),
        })
    }

    /// `ε = ε₁ ε₂`.
    pub fn eps(&self) -> f64 {
        self.eps1 * self.eps2
    }

    /// Ratio `ε₂ / ε₁`; the composite regime assumes it stays bounded.
    pub fn strength_ratio(&self) -> f64 {
        self.eps2 / self.eps1
    }

    /// Returns a message when `ε₂ > threshold · ε₁`.
    pub fn strength_warning(&self, threshold: f64) -> Option<String> {
        (self.strength_ratio() > threshold).then(|| {
            format!("rarefaction strength {:.4e} exceeds {threshold} x shock strength {:.4e}", self.eps2, self.eps1)
        })
    }

    /// Rankine–Hugoniot residuals `(mass, momentum)` across the shock.
    pub fn rh_residuals(&self) -> (f64, f64) {
        let s = self.sigma1;
        let r1 = -s * (self.mid.v - self.minus.v) - (self.mid.u - self.minus.u);
        let r2 = -s * (self.mid.u - self.minus.u) - (self.gas.p(self.minus.v) - self.gas.p(self.mid.v));
        (r1, r2)
    }

    pub fn lam2_mid(&self) -> f64 {
        self.gas.lam2(self.mid.v)
    }

    pub fn lam2_plus(&self) -> f64 {
        self.gas.lam2(self.plus.v)
    }

    /// Exact self-similar solution at `(t, x)`. At `t <= 0` the raw data
    /// is returned, with `x = 0` taking the right state.
    pub fn sample(&self, t: f64, x: f64) -> State {
        if t <= 0.0 {
            return if x < 0.0 { self.minus } else { self.plus };
        }
        let s = x / t;
        if s < self.sigma1 {
            self.minus
        } else if s < self.lam2_mid() {
            self.mid
        } else if s <= self.lam2_plus() {
            let v = self.gas.lam2_inv(s).clamp(self.plus.v, self.mid.v);
            State::new(v, self.mid.u - (self.gas.lam2_antiderivative(v) - self.gas.lam2_antiderivative(self.mid.v)))
        } else {
            self.plus
        }
    }
}

/// Finds the intermediate state joining `minus` to `plus` by a 1-shock and
/// a 2-rarefaction. Bisection on `v_m ∈ [v₊, v₋]` followed by Newton polish.
pub fn solve_intermediate(gas: GasParams, minus: State, plus: State) -> ModelResult<RiemannSetup> {
    if !(plus.v > 0.0 && plus.v < minus.v) {
        return Err(ModelError::Configuration(format!(
            "composite pattern needs 0 < v_plus < v_minus, got v_minus = {}, v_plus = {}",
            minus.v, plus.v
        )));
    }
    let resid = |vm: f64| terminal_velocity(&gas, minus, vm, plus.v);
    // residual decreases as v_m decreases; r(v₋) >= 0 >= r(v₊) when reachable
    let (r_hi, _) = resid(minus.v);
    let (r_lo, _) = resid(plus.v);
    let (r_hi, r_lo) = (r_hi - plus.u, r_lo - plus.u);
    if r_hi < 0.0 {
        return Err(ModelError::Configuration(format!(
            "u_plus = {} exceeds the pure 2-rarefaction velocity {}: v_mid would be >= v_minus",
            plus.u,
            r_hi + plus.u
        )));
    }
    let round_off = 1e-13 * (1.0 + plus.u.abs());
    if r_lo > round_off {
        return Err(ModelError::Configuration(format!(
            "u_plus = {} is below the pure 1-shock velocity {}: v_mid would be <= v_plus",
            plus.u,
            r_lo + plus.u
        )));
    }
    if r_lo >= 0.0 {
        // U₊ already sits on the shock curve: degenerate rarefaction
        let mid = hugoniot_state(&gas, minus, plus.v)?;
        return RiemannSetup::assemble(gas, minus, mid, mid);
    }
    let (mut lo, mut hi) = (plus.v, minus.v);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if resid(mid).0 - plus.u >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut vm = 0.5 * (lo + hi);
    for _ in 0..4 {
        let (r, dr) = resid(vm);
        if dr == 0.0 {
            break;
        }
        let next = vm - (r - plus.u) / dr;
        if !(next >= lo && next <= hi) {
            break;
        }
        vm = next;
    }
    if vm >= minus.v {
        return Err(ModelError::Configuration("shock strength vanishes: no 1-shock in the pattern".into()));
    }
    let mid = hugoniot_state(&gas, minus, vm)?;
    RiemannSetup::assemble(gas, minus, mid, plus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn air() -> GasParams {
        GasParams::new(1.4, 1.0).unwrap()
    }

    #[test]
    fn shock_speed_values() {
        let g = air();
        let s = shock_speed(&g, 1.0, 0.8).unwrap();
        assert!((s + 1.354_072_731_482_87).abs() < 1e-12);
        assert!((s * s * 0.2 - (g.p(0.8) - g.p(1.0))).abs() < 1e-14);
        assert!(shock_speed(&g, 1.0, 1.2).is_err());
        // Lax limit
        let near = shock_speed(&g, 1.0, 1.0 - 1e-7).unwrap();
        assert!((near.abs() - 1.4f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn hugoniot_values() {
        let g = air();
        let m = State::new(1.0, 0.0);
        assert_eq!(hugoniot_state(&g, m, 1.0).unwrap(), m);
        let mid = hugoniot_state(&g, m, 0.8).unwrap();
        assert!((mid.u + 0.270_814_546_296_57).abs() < 1e-12);
        for vm in [0.3, 0.6, 0.95] {
            assert!(hugoniot_state(&g, m, vm).unwrap().u < m.u);
        }
    }

    #[test]
    fn rc2_values() {
        let g = air();
        let mid = State::new(0.8, -0.270_814_546_296_574_5);
        assert_eq!(rc2_velocity(&g, mid, 0.8).unwrap(), mid.u);
        let u = rc2_velocity(&g, mid, 0.7).unwrap();
        assert!((u + 0.103_381_376_338_759).abs() < 1e-12);
        assert!(rc2_velocity(&g, mid, 0.7).unwrap() > rc2_velocity(&g, mid, 0.75).unwrap());
        assert!(rc2_velocity(&g, mid, 0.75).unwrap() > mid.u);
        assert!(rc2_velocity(&g, mid, 0.9).is_err());
    }

    #[test]
    fn solve_default_triple() {
        let g = air();
        let s = solve_intermediate(g, State::new(1.0, 0.0), State::new(0.7, -0.10338)).unwrap();
        assert!((s.mid.v - 0.800_000_443_020_11).abs() < 1e-10);
        let exact = RiemannSetup::from_volumes(g, State::new(1.0, 0.0), 0.8, 0.7).unwrap();
        assert!((exact.eps1 - 0.366_702_592_429_10).abs() < 1e-12);
        assert!((exact.eps2 - 0.280_938_990_116_41).abs() < 1e-12);
        let back = solve_intermediate(g, exact.minus, exact.plus).unwrap();
        assert!((back.mid.v - 0.8).abs() < 1e-12);
    }

    #[test]
    fn degenerate_rarefaction() {
        let g = air();
        let minus = State::new(1.0, 0.0);
        let plus = hugoniot_state(&g, minus, 0.8).unwrap();
        let s = solve_intermediate(g, minus, plus).unwrap();
        assert!((s.mid.v - 0.8).abs() < 1e-12);
        assert!(s.eps2 < 1e-10);
    }

    #[test]
    fn unreachable_states_are_rejected() {
        let g = air();
        let minus = State::new(1.0, 0.0);
        // too fast: beyond the pure rarefaction
        let err = solve_intermediate(g, minus, State::new(0.7, 1.0)).unwrap_err();
        assert!(matches!(err, ModelError::Configuration(_)));
        // too slow: beyond the pure shock
        assert!(solve_intermediate(g, minus, State::new(0.7, -1.0)).is_err());
        assert!(solve_intermediate(g, minus, State::new(1.2, 0.0)).is_err());
    }

    #[test]
    fn sampling_regions() {
        let g = air();
        let s = RiemannSetup::from_volumes(g, State::new(1.0, 0.0), 0.8, 0.7).unwrap();
        let t = 0.5;
        assert_eq!(s.sample(t, s.sigma1 * t - 1.0), s.minus);
        assert_eq!(s.sample(t, 0.0), s.mid);
        assert_eq!(s.sample(t, s.lam2_plus() * t + 1.0), s.plus);
        let edge = s.sample(t, s.lam2_plus() * t);
        assert!((edge.v - s.plus.v).abs() < 1e-12 && (edge.u - s.plus.u).abs() < 1e-12);
        for k in 1..20 {
            let x = t * (s.lam2_mid() + (s.lam2_plus() - s.lam2_mid()) * k as f64 / 20.0);
            let st = s.sample(t, x);
            assert!((g.lam2(st.v) - x / t).abs() < 1e-10);
        }
        assert_eq!(s.sample(0.0, -0.1), s.minus);
        assert_eq!(s.sample(0.0, 0.0), s.plus);
        assert_eq!(s.sample(1.0, 0.3), s.sample(3.0, 0.9));
    }
}
