//! Pseudo-spectral fast path for the advection products.
//!
//! Transforms to a padded collocation grid, multiplies pointwise and
//! transforms back. The grid is chosen alias-free: with input cutoffs Mᵥ,
//! M_w and output cutoff C, any N > Mᵥ + M_w + C reproduces the direct
//! convolution exactly (for C = M this is the classic 3/2-style padding).
//! The direct path in [`super::direct`] is the oracle; the two must agree
//! to 1e−12 and a test pins that.

use crate::error::{Error, Result};
use crate::spectral::{canonical_modes, Coef, FieldPair, SpectralField, WaveVector};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn next_smooth(mut x: usize) -> usize {
    fn smooth(mut v: usize) -> bool {
        for f in [2, 3, 5] {
            while v % f == 0 {
                v /= f;
            }
        }
        v == 1
    }
    x = x.max(2);
    while !smooth(x) {
        x += 1;
    }
    x
}

/// Reusable transform plans and scratch for one grid size. One engine per
/// owner; construction is cheap enough to do per integration.
pub struct PseudoSpectral {
    dim: usize,
    n: usize,
    len: usize,
    strides: Vec<usize>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
    work: Vec<Complex64>,
}

impl PseudoSpectral {
    /// Engine sized for products of fields with cutoffs `in_a`, `in_b` read
    /// at modes up to `out_cutoff`.
    pub fn for_product(dim: usize, in_a: i32, in_b: i32, out_cutoff: i32) -> Self {
        let min_n = (in_a + in_b + out_cutoff + 1).max(2) as usize;
        let n = next_smooth(min_n);
        let len = n.pow(dim as u32);
        let mut strides = vec![0usize; dim];
        let mut s = 1usize;
        for axis in (0..dim).rev() {
            strides[axis] = s;
            s *= n;
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let scratch_len = fwd
            .get_inplace_scratch_len()
            .max(inv.get_inplace_scratch_len());
        PseudoSpectral {
            dim,
            n,
            len,
            strides,
            fwd,
            inv,
            scratch: vec![ZERO; scratch_len],
            work: vec![ZERO; len],
        }
    }

    pub fn grid_size(&self) -> usize {
        self.n
    }

    fn index_of(&self, k: &WaveVector) -> usize {
        let n = self.n as i32;
        k.components()
            .iter()
            .zip(&self.strides)
            .map(|(&ki, &s)| (((ki % n) + n) % n) as usize * s)
            .sum()
    }

    fn check(&self, v: &SpectralField, w: &SpectralField, out_cutoff: i32) -> Result<()> {
        if v.dim() != w.dim() {
            return Err(Error::DimensionMismatch(v.dim(), w.dim()));
        }
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(v.dim(), self.dim));
        }
        let need = (v.cutoff() + w.cutoff() + out_cutoff + 1) as usize;
        if self.n < need {
            return Err(Error::InvalidConfig(format!(
                "pseudo-spectral grid {} too small for cutoffs {}+{} at output {}",
                self.n,
                v.cutoff(),
                w.cutoff(),
                out_cutoff
            )));
        }
        Ok(())
    }

    fn transform(&mut self, data: &mut [Complex64], inverse: bool) {
        let n = self.n;
        let fft = if inverse {
            self.inv.clone()
        } else {
            self.fwd.clone()
        };
        // view the array as [pre][n][s] along each axis; lines are gathered
        // into one contiguous buffer so a single process call handles all of
        // them (per-line dispatch dominates at these tiny transform sizes)
        for axis in 0..self.dim {
            let s = self.strides[axis];
            if s == 1 {
                fft.process_with_scratch(data, &mut self.scratch);
                continue;
            }
            let pre = self.len / (n * s);
            for p in 0..pre {
                for q in 0..s {
                    let base = p * n * s + q;
                    let line = (p * s + q) * n;
                    for j in 0..n {
                        self.work[line + j] = data[base + j * s];
                    }
                }
            }
            fft.process_with_scratch(&mut self.work, &mut self.scratch);
            for p in 0..pre {
                for q in 0..s {
                    let base = p * n * s + q;
                    let line = (p * s + q) * n;
                    for j in 0..n {
                        data[base + j * s] = self.work[line + j];
                    }
                }
            }
        }
    }

    /// Collocation values of component `r` of `f` (raw scale (2π)^{d/2} f),
    /// optionally of ∂ₛ f_r instead.
    fn component_values(&mut self, f: &SpectralField, r: usize, deriv: Option<usize>) -> Vec<Complex64> {
        self.component_values_sparse(f, r, deriv)
            .unwrap_or_else(|| vec![ZERO; self.len])
    }

    /// As [`Self::component_values`], but `None` when the component is
    /// identically zero (planar flows keep whole components empty; skipping
    /// their transforms is a large win in the integrator).
    fn component_values_sparse(
        &mut self,
        f: &SpectralField,
        r: usize,
        deriv: Option<usize>,
    ) -> Option<Vec<Complex64>> {
        let mut grid = vec![ZERO; self.len];
        let mut nonzero = false;
        for (k, coef) in f.full_modes() {
            let mut z = coef[r];
            if let Some(s) = deriv {
                z *= Complex64::i() * k.components()[s] as f64;
            }
            if z != ZERO {
                nonzero = true;
                grid[self.index_of(&k)] += z;
            }
        }
        if !nonzero {
            return None;
        }
        self.transform(&mut grid, true);
        Some(grid)
    }

    /// Forward transform of a raw product grid into a field truncated at
    /// `out_cutoff`. The zero mode is dropped (it vanishes identically for
    /// solenoidal first slots).
    fn gather(&mut self, mut grids: Vec<Vec<Complex64>>, out_cutoff: i32) -> Result<SpectralField> {
        for g in grids.iter_mut() {
            self.transform(g, false);
        }
        let inv_len = 1.0 / self.len as f64;
        let mut out = SpectralField::zero(self.dim, out_cutoff)?;
        for k in canonical_modes(self.dim, out_cutoff) {
            let idx = self.index_of(&k);
            let coef: Coef = grids.iter().map(|g| g[idx] * inv_len).collect();
            out.add_to_mode(k, coef);
        }
        out.set_div_free_flag(false);
        Ok(out)
    }

    /// (v·∇)w on the padded grid, truncated at `out_cutoff`.
    pub fn advect(&mut self, v: &SpectralField, w: &SpectralField, out_cutoff: i32) -> Result<SpectralField> {
        self.check(v, w, out_cutoff)?;
        let d = self.dim;
        let norm = (2.0 * std::f64::consts::PI).powf(-(d as f64) / 2.0);
        let vvals: Vec<Vec<Complex64>> = (0..d).map(|s| self.component_values(v, s, None)).collect();
        let mut prods = Vec::with_capacity(d);
        for r in 0..d {
            let mut acc = vec![ZERO; self.len];
            for s in 0..d {
                let dw = self.component_values(w, r, Some(s));
                for (a, (vs, ws)) in acc.iter_mut().zip(vvals[s].iter().zip(dw.iter())) {
                    *a += vs * ws;
                }
            }
            for a in acc.iter_mut() {
                *a *= norm;
            }
            prods.push(acc);
        }
        self.gather(prods, out_cutoff)
    }

    /// −𝔏((v·∇)w) truncated at `out_cutoff`.
    pub fn projected_advect(
        &mut self,
        v: &SpectralField,
        w: &SpectralField,
        out_cutoff: i32,
    ) -> Result<SpectralField> {
        Ok(self.advect(v, w, out_cutoff)?.leray_project().scaled(-1.0))
    }

    /// The self-interaction 𝓑(𝐮,𝐮) = (−𝔏[(u·∇)u − (b·∇)b], −𝔏[(u·∇)b − (b·∇)u]),
    /// the integrator's hot path.
    ///
    /// Uses the difference/sum combination z± = u ± b, for which both slots
    /// come from the single product matrix P_{sr} = z⁺_s z⁻_r contracted in
    /// divergence form (valid because z± are solenoidal):
    /// (z⁺·∇)z⁻ = Σ_s ∂_s P_{sr} and (z⁻·∇)z⁺ = Σ_s ∂_s P_{rs}. This costs
    /// 2d inverse and d² forward transforms, half of the general path.
    pub fn mhd_self_advect(&mut self, u: &FieldPair, out_cutoff: i32) -> Result<FieldPair> {
        self.check(u.velocity(), u.magnetic(), out_cutoff)?;
        let d = self.dim;
        let norm = (2.0 * std::f64::consts::PI).powf(-(d as f64) / 2.0);
        let zp = u.velocity().add_scaled(u.magnetic(), 1.0);
        let zm = u.velocity().add_scaled(u.magnetic(), -1.0);
        let zp_vals: Vec<Option<Vec<Complex64>>> = (0..d)
            .map(|s| self.component_values_sparse(&zp, s, None))
            .collect();
        let zm_vals: Vec<Option<Vec<Complex64>>> = (0..d)
            .map(|s| self.component_values_sparse(&zm, s, None))
            .collect();

        // P[s][r] = norm * z⁺_s z⁻_r, forward transformed in place
        let mut prod: Vec<Vec<Option<Vec<Complex64>>>> = Vec::with_capacity(d);
        for s in 0..d {
            let mut row = Vec::with_capacity(d);
            for r in 0..d {
                row.push(match (&zp_vals[s], &zm_vals[r]) {
                    (Some(a_vals), Some(b_vals)) => {
                        let mut grid: Vec<Complex64> = a_vals
                            .iter()
                            .zip(b_vals)
                            .map(|(a, b)| a * b * norm)
                            .collect();
                        self.transform(&mut grid, false);
                        Some(grid)
                    }
                    _ => None,
                });
            }
            prod.push(row);
        }

        let inv_len = 1.0 / self.len as f64;
        let mut plus = SpectralField::zero(d, out_cutoff)?; // (z⁺·∇)z⁻
        let mut minus = SpectralField::zero(d, out_cutoff)?; // (z⁻·∇)z⁺
        for k in canonical_modes(d, out_cutoff) {
            let idx = self.index_of(&k);
            let mut a: Coef = Coef::with_capacity(d);
            let mut b: Coef = Coef::with_capacity(d);
            for r in 0..d {
                let mut acc_a = ZERO;
                let mut acc_b = ZERO;
                for (s, &ks) in k.components().iter().enumerate() {
                    let factor = Complex64::i() * ks as f64;
                    if let Some(g) = &prod[s][r] {
                        acc_a += factor * g[idx];
                    }
                    if let Some(g) = &prod[r][s] {
                        acc_b += factor * g[idx];
                    }
                }
                a.push(acc_a * inv_len);
                b.push(acc_b * inv_len);
            }
            plus.add_to_mode(k.clone(), a);
            minus.add_to_mode(k, b);
        }
        // slot1 = ((z⁺·∇)z⁻ + (z⁻·∇)z⁺)/2, slot2 = the half difference
        let slot1 = plus.add_scaled(&minus, 1.0).scaled(0.5).leray_project().scaled(-1.0);
        let slot2 = minus.add_scaled(&plus, -1.0).scaled(0.5).leray_project().scaled(-1.0);
        FieldPair::new(slot1, slot2)
    }

    /// Both slots of the coupled MHD form in one pass, sharing transforms:
    /// ( −𝔏[(v·∇)w − (c·∇)g], −𝔏[(v·∇)g − (c·∇)w] ).
    pub fn mhd_advect(&mut self, vp: &FieldPair, wp: &FieldPair, out_cutoff: i32) -> Result<FieldPair> {
        self.check(vp.velocity(), wp.velocity(), out_cutoff)?;
        let d = self.dim;
        let norm = (2.0 * std::f64::consts::PI).powf(-(d as f64) / 2.0);
        let v: Vec<Vec<Complex64>> = (0..d)
            .map(|s| self.component_values(vp.velocity(), s, None))
            .collect();
        let c: Vec<Vec<Complex64>> = (0..d)
            .map(|s| self.component_values(vp.magnetic(), s, None))
            .collect();
        let mut slot1 = Vec::with_capacity(d);
        let mut slot2 = Vec::with_capacity(d);
        for r in 0..d {
            let mut acc1 = vec![ZERO; self.len];
            let mut acc2 = vec![ZERO; self.len];
            for s in 0..d {
                let dw = self.component_values(wp.velocity(), r, Some(s));
                let dg = self.component_values(wp.magnetic(), r, Some(s));
                for i in 0..self.len {
                    acc1[i] += v[s][i] * dw[i] - c[s][i] * dg[i];
                    acc2[i] += v[s][i] * dg[i] - c[s][i] * dw[i];
                }
            }
            for i in 0..self.len {
                acc1[i] *= norm;
                acc2[i] *= norm;
            }
            slot1.push(acc1);
            slot2.push(acc2);
        }
        let f1 = self.gather(slot1, out_cutoff)?.leray_project().scaled(-1.0);
        let f2 = self.gather(slot2, out_cutoff)?.leray_project().scaled(-1.0);
        FieldPair::new(f1, f2)
    }
}
