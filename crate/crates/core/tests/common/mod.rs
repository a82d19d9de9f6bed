//! Independent reference solvers shared by the integration tests.
#![allow(dead_code)]

use compwave::GasParams;

/// Lax–Friedrichs for `v_t - u_x = 0`, `u_t + p(v)_x = 0` on `[x0, x1]`
/// with cell averages of the Riemann data and zero-gradient ends.
/// Returns cell centres and `(v, u)` at time `t`.
#[allow(clippy::too_many_arguments)]
pub fn lax_friedrichs(
    gas: &GasParams,
    left: (f64, f64),
    right: (f64, f64),
    x0: f64,
    x1: f64,
    dx: f64,
    t: f64,
    cfl: f64,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = ((x1 - x0) / dx).round() as usize;
    let xs: Vec<f64> = (0..n).map(|i| x0 + (i as f64 + 0.5) * dx).collect();
    let mut v: Vec<f64> = xs.iter().map(|&x| if x < 0.0 { left.0 } else { right.0 }).collect();
    let mut u: Vec<f64> = xs.iter().map(|&x| if x < 0.0 { left.1 } else { right.1 }).collect();
    let mut time = 0.0;
    let (mut vn, mut un) = (v.clone(), u.clone());
    while time < t {
        let vmin = v.iter().copied().fold(f64::INFINITY, f64::min);
        let mut dt = cfl * dx / gas.lam2(vmin);
        if time + dt > t {
            dt = t - time;
        }
        let r = dt / dx;
        for i in 0..n {
            let (l, rr) = (i.saturating_sub(1), (i + 1).min(n - 1));
            vn[i] = 0.5 * (v[l] + v[rr]) + 0.5 * r * (u[rr] - u[l]);
            un[i] = 0.5 * (u[l] + u[rr]) - 0.5 * r * (gas.p(v[rr]) - gas.p(v[l]));
        }
        std::mem::swap(&mut v, &mut vn);
        std::mem::swap(&mut u, &mut un);
        time += dt;
    }
    (xs, v, u)
}

fn mc_limiter(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else {
        let s = a.signum();
        s * (2.0 * a.abs()).min(2.0 * b.abs()).min(0.5 * (a + b).abs())
    }
}

/// Exact Riemann flux for `f(w) = w²/2`.
fn godunov_burgers(wl: f64, wr: f64) -> f64 {
    if wl <= wr {
        if wl >= 0.0 {
            0.5 * wl * wl
        } else if wr <= 0.0 {
            0.5 * wr * wr
        } else {
            0.0
        }
    } else {
        let s = 0.5 * (wl + wr);
        if s > 0.0 {
            0.5 * wl * wl
        } else {
            0.5 * wr * wr
        }
    }
}

fn burgers_rate(w: &[f64], dx: f64, out: &mut [f64]) {
    let n = w.len();
    let at = |i: isize| w[i.clamp(0, n as isize - 1) as usize];
    let slope = |i: isize| mc_limiter(at(i) - at(i - 1), at(i + 1) - at(i));
    let mut flux = vec![0.0; n + 1];
    for (f, e) in flux.iter_mut().zip(0..=n as isize) {
        let wl = at(e - 1) + 0.5 * slope(e - 1);
        let wr = at(e) - 0.5 * slope(e);
        *f = godunov_burgers(wl, wr);
    }
    for i in 0..n {
        out[i] = -(flux[i + 1] - flux[i]) / dx;
    }
}

/// MUSCL (MC limiter) + Godunov flux + SSP-RK2 for Burgers. `init` is
/// sampled at cell centres by 3-point Gauss averaging. Calls `probe` with
/// `(t, centres, w)` after every step.
pub fn burgers_fv(
    init: impl Fn(f64) -> f64,
    x0: f64,
    x1: f64,
    dx: f64,
    t_end: f64,
    cfl: f64,
    mut probe: impl FnMut(f64, &[f64], &[f64]),
) -> (Vec<f64>, Vec<f64>) {
    let n = ((x1 - x0) / dx).round() as usize;
    let xs: Vec<f64> = (0..n).map(|i| x0 + (i as f64 + 0.5) * dx).collect();
    let g = (0.6f64).sqrt() * 0.5 * dx;
    let mut w: Vec<f64> = xs.iter().map(|&x| (5.0 * init(x - g) + 8.0 * init(x) + 5.0 * init(x + g)) / 18.0).collect();
    let (mut k, mut stage) = (vec![0.0; n], vec![0.0; n]);
    let mut t = 0.0;
    while t < t_end {
        let wmax = w.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let dt = (cfl * dx / wmax).min(t_end - t);
        burgers_rate(&w, dx, &mut k);
        for i in 0..n {
            stage[i] = w[i] + dt * k[i];
        }
        burgers_rate(&stage, dx, &mut k);
        for i in 0..n {
            w[i] = 0.5 * (w[i] + stage[i] + dt * k[i]);
        }
        t += dt;
        probe(t, &xs, &w);
    }
    (xs, w)
}

/// Composite trapezoid of `f` on a uniform grid.
pub fn trapezoid(dx: f64, f: &[f64]) -> f64 {
    let n = f.len();
    if n < 2 {
        return 0.0;
    }
    dx * (f[1..n - 1].iter().sum::<f64>() + 0.5 * (f[0] + f[n - 1]))
}
