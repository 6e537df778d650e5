//! Quadrature and series utilities on uniform time grids.
//!
//! Everything downstream (growth estimators, Riccati solutions, decay
//! budgets) consumes sampled time series. The rules here are all fourth
//! order on smooth data: cumulative composite Simpson for integrals and a
//! four-point Lagrange cubic for off-grid evaluation.

use crate::error::{Error, Result};

/// Maximum relative deviation of grid spacing tolerated by the uniform-grid
/// routines.
const GRID_TOL: f64 = 1e-9;

/// Returns the (uniform) step of `times`, or an error if the grid is not
/// uniform or too short.
pub fn uniform_step(times: &[f64]) -> Result<f64> {
    if times.len() < 2 {
        return Err(Error::InvalidEstimators(
            "time grid needs at least two points".into(),
        ));
    }
    let h = times[1] - times[0];
    if !(h > 0.0) {
        return Err(Error::InvalidEstimators(
            "time grid must be strictly increasing".into(),
        ));
    }
    let span = times[times.len() - 1] - times[0];
    for w in times.windows(2) {
        if ((w[1] - w[0]) - h).abs() > GRID_TOL * span.max(h) {
            return Err(Error::InvalidEstimators("time grid is not uniform".into()));
        }
    }
    Ok(h)
}

/// Cumulative integral of samples `f` on a uniform grid with step `h`.
///
/// Even indices follow composite Simpson; odd indices add a single-interval
/// correction from the cubic through the four nearest samples. Exact on
/// cubics, O(h⁴) globally at every grid point.
pub fn cumulative_simpson(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    if n == 3 {
        out[1] = h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0;
        out[2] = h * (f[0] + 4.0 * f[1] + f[2]) / 3.0;
        return out;
    }
    out[1] = h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
    for i in 2..n {
        if i % 2 == 0 {
            out[i] = out[i - 2] + h * (f[i - 2] + 4.0 * f[i - 1] + f[i]) / 3.0;
        } else if i + 1 < n {
            out[i] = out[i - 1] + h * (-f[i - 2] + 13.0 * f[i - 1] + 13.0 * f[i] - f[i + 1]) / 24.0;
        } else {
            out[i] = out[i - 1] + h * (f[i - 3] - 5.0 * f[i - 2] + 19.0 * f[i - 1] + 9.0 * f[i]) / 24.0;
        }
    }
    out
}

/// Cumulative Simpson with a step-halving consistency check.
///
/// The integral is recomputed on the coarsened grid (every second sample);
/// if the two disagree by more than `tol` relative to the integral scale,
/// the sampling is declared too coarse.
pub fn cumulative_simpson_checked(f: &[f64], h: f64, tol: f64, what: &'static str) -> Result<Vec<f64>> {
    let fine = cumulative_simpson(f, h);
    if f.len() >= 5 {
        let coarse_samples: Vec<f64> = f.iter().step_by(2).copied().collect();
        let coarse = cumulative_simpson(&coarse_samples, 2.0 * h);
        let scale = fine
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0_f64;
        for (j, c) in coarse.iter().enumerate() {
            let i = 2 * j;
            worst = worst.max((fine[i] - c).abs() / scale);
        }
        if worst > tol {
            return Err(Error::Refinement {
                what,
                achieved: worst,
                target: tol,
            });
        }
    }
    Ok(fine)
}

/// A sampled function on a uniform grid, evaluated off-grid by the Lagrange
/// cubic through the four nearest samples (clamped near the ends).
#[derive(Clone, Debug)]
pub struct Series {
    t0: f64,
    h: f64,
    values: Vec<f64>,
}

impl Series {
    pub fn new(times: &[f64], values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidEstimators(
                "series length does not match its time grid".into(),
            ));
        }
        let h = uniform_step(times)?;
        Ok(Series {
            t0: times[0],
            h,
            values,
        })
    }

    pub fn constant(times: &[f64], value: f64) -> Result<Self> {
        Series::new(times, vec![value; times.len()])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at_index(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Value at arbitrary `t` inside the grid span (clamped outside).
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.values.len();
        if n == 1 {
            return self.values[0];
        }
        let x = (t - self.t0) / self.h;
        let i = (x.floor() as isize).clamp(0, n as isize - 2) as usize;
        if n < 4 {
            // linear fallback for very short series
            let s = x - i as f64;
            return self.values[i] * (1.0 - s) + self.values[i + 1] * s;
        }
        // four-point stencil [j, j+3] containing the target interval
        let j = i.saturating_sub(1).min(n - 4);
        let s = x - j as f64;
        let v = &self.values[j..j + 4];
        let c0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
        let c1 = s * (s - 2.0) * (s - 3.0) / 2.0;
        let c2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
        let c3 = s * (s - 1.0) * (s - 2.0) / 6.0;
        v[0] * c0 + v[1] * c1 + v[2] * c2 + v[3] * c3
    }
}

/// Adaptive Simpson on `[a, b]`, recursion depth ≤ 30.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        m: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) * (fa + 4.0 * flm + fm) / 6.0;
        let right = (b - m) * (fm + 4.0 * frm + fb) / 6.0;
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0;
    recurse(f, a, m, b, fa, fm, fb, whole, tol, 30)
}

/// Root of a strictly increasing function `g` on `[lo, hi]` with
/// `g(lo) <= 0 <= g(hi)`, bisected to width `tol`.
pub fn bisect_increasing<F: Fn(f64) -> f64>(g: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Least-squares line through `(x, y)` pairs; returns `(intercept, slope)`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((my - slope * mx, slope))
}
