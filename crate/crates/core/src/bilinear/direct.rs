//! Exact advection products by direct Fourier convolution.
//!
//! With the normalized basis e_k = (2π)^(−d/2) e^(i k·x), a product of two
//! basis elements is e_{k'} e_{k''} = (2π)^(−d/2) e_{k'+k''}, so
//!
//!   [(v·∇)w]_k = (2π)^(−d/2) Σ_{k'+k''=k} i (v_{k'}·k'') w_{k''} .
//!
//! Outputs carry cutoff 2M — no aliasing, which is what makes the Galerkin
//! tail (and hence the residual estimator) computable. This path is the
//! oracle the FFT fast path is tested against.

use crate::error::{Error, Result};
use crate::spectral::{Coef, FieldPair, SpectralField, WaveVector};
use num_complex::Complex64;

fn check_compatible(v: &SpectralField, w: &SpectralField) -> Result<()> {
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch(v.dim(), w.dim()));
    }
    Ok(())
}

/// (v·∇)w by exact convolution, output cutoff Mᵥ + M_w.
///
/// For divergence-free v the zero mode of the product vanishes identically;
/// otherwise it is subtracted (the representation is mean-zero) and a
/// warning is recorded.
pub fn advect(v: &SpectralField, w: &SpectralField) -> Result<SpectralField> {
    check_compatible(v, w)?;
    let d = v.dim();
    let out_cutoff = v.cutoff() + w.cutoff();
    let mut out = SpectralField::zero(d, out_cutoff)?;
    let norm = (2.0 * std::f64::consts::PI).powf(-(d as f64) / 2.0);

    let v_full: Vec<(WaveVector, Coef)> = v.full_modes().collect();
    let w_full: Vec<(WaveVector, Coef)> = w.full_modes().collect();

    let mut mean = 0.0_f64;
    for (kv, cv) in &v_full {
        for (kw, cw) in &w_full {
            // i (v_{k'} · k'') w_{k''}
            let factor: Complex64 = kw
                .components()
                .iter()
                .zip(cv.iter())
                .map(|(&ki, &vi)| vi * ki as f64)
                .sum::<Complex64>()
                * Complex64::i()
                * norm;
            let k_out = kv.add(kw);
            if k_out.is_zero() {
                mean += cw.iter().map(|z| (factor * z).norm_sqr()).sum::<f64>().sqrt();
                continue;
            }
            // accumulate canonical representatives only; mirrors are implied
            if k_out.is_canonical() {
                let coef: Coef = cw.iter().map(|&z| factor * z).collect();
                out.add_to_mode(k_out, coef);
            }
        }
    }

    if v.divergence_residual() > 1e-12 && mean > 1e-12 * out.max_coefficient().max(1e-300) {
        log::warn!(
            "advect: first slot is not divergence-free; zero mode of magnitude {mean:.3e} subtracted"
        );
    }
    out.set_div_free_flag(false);
    Ok(out)
}

/// The projected advection map −𝔏((v·∇)w): divergence-free, mean-zero.
/// Vanishes on (w, w) when w is a generalized Beltrami flow.
pub fn projected_advect(v: &SpectralField, w: &SpectralField) -> Result<SpectralField> {
    Ok(advect(v, w)?.leray_project().scaled(-1.0))
}

/// The coupled MHD form: for 𝐯 = (v, c), 𝐰 = (w, g) returns
/// (𝒬(v,w) − 𝒬(c,g), 𝒬(v,g) − 𝒬(c,w)) with 𝒬 = [`projected_advect`].
pub fn mhd_advect(vp: &FieldPair, wp: &FieldPair) -> Result<FieldPair> {
    let slot1 = projected_advect(vp.velocity(), wp.velocity())?
        .sub(&projected_advect(vp.magnetic(), wp.magnetic())?);
    let slot2 = projected_advect(vp.velocity(), wp.magnetic())?
        .sub(&projected_advect(vp.magnetic(), wp.velocity())?);
    FieldPair::new(slot1, slot2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random_field;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Two-mode representation of √2 (2π)^(−d/2) A sin(k·x + ψ).
    fn sine_field(d: usize, cutoff: i32, a: &[f64], k: &[i32], psi: f64) -> SpectralField {
        let mut f = SpectralField::zero(d, cutoff).unwrap();
        let phase = Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, psi) / 2.0_f64.sqrt();
        let coef: Coef = a.iter().map(|&ai| phase * ai).collect();
        f.set_mode(WaveVector::new(k), coef).unwrap();
        f
    }

    #[test]
    fn advect_zero_is_zero() {
        let v = random_field(1, 2, 2, 1.0).unwrap();
        let z = SpectralField::zero(2, 2).unwrap();
        let out = advect(&v, &z).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn orthogonal_sine_pair_has_zero_advection() {
        // v ∥ e3 varying along x1, w ∥ e3 varying along x2: (V·ℓ) C = 0
        let v = sine_field(3, 1, &[0.0, 0.0, 1.0], &[1, 0, 0], 0.0);
        let w = sine_field(3, 1, &[0.0, 0.0, 1.0], &[0, 1, 0], 0.0);
        let out = advect(&v, &w).unwrap();
        assert!(out.max_coefficient() < 1e-16);
    }

    #[test]
    fn matches_physical_space_pointwise_oracle() {
        // Evaluate (v·∇)w on a grid by direct trigonometric sums, project
        // back mode by mode, and compare with the convolution.
        let d = 2;
        let m = 2;
        let v = random_field(11, d, m, 1.0).unwrap();
        let w = random_field(12, d, m, 1.0).unwrap();
        let conv = advect(&v, &w).unwrap();

        let grid = 32usize;
        let npts = grid * grid;
        let two_pi = 2.0 * std::f64::consts::PI;
        let basis_norm = (two_pi as f64).powf(-(d as f64) / 2.0);
        let eval = |f: &SpectralField, deriv: Option<usize>| -> Vec<[Complex64; 2]> {
            let mut vals = vec![[Complex64::new(0.0, 0.0); 2]; npts];
            for (k, coef) in f.full_modes() {
                for ix in 0..grid {
                    for iy in 0..grid {
                        let x = two_pi * ix as f64 / grid as f64;
                        let y = two_pi * iy as f64 / grid as f64;
                        let phase = k.components()[0] as f64 * x + k.components()[1] as f64 * y;
                        let mut e = Complex64::from_polar(basis_norm, phase);
                        if let Some(s) = deriv {
                            e *= Complex64::i() * k.components()[s] as f64;
                        }
                        let idx = ix * grid + iy;
                        vals[idx][0] += coef[0] * e;
                        vals[idx][1] += coef[1] * e;
                    }
                }
            }
            vals
        };

        let vv = eval(&v, None);
        let wx = eval(&w, Some(0));
        let wy = eval(&w, Some(1));
        let mut prod = vec![[Complex64::new(0.0, 0.0); 2]; npts];
        for i in 0..npts {
            for r in 0..2 {
                prod[i][r] = vv[i][0] * wx[i][r] + vv[i][1] * wy[i][r];
            }
        }

        // f_k = (2π)^{d/2} / grid^d * Σ_j f(x_j) e^{-i k·x_j}
        let scale = (two_pi).powf(d as f64 / 2.0) / npts as f64;
        let mut worst = 0.0_f64;
        let coef_scale = conv.max_coefficient().max(1e-300);
        for (k, expected) in conv.full_modes() {
            let mut acc = [Complex64::new(0.0, 0.0); 2];
            for ix in 0..grid {
                for iy in 0..grid {
                    let x = two_pi * ix as f64 / grid as f64;
                    let y = two_pi * iy as f64 / grid as f64;
                    let phase = -(k.components()[0] as f64 * x + k.components()[1] as f64 * y);
                    let e = Complex64::from_polar(scale, phase);
                    let idx = ix * grid + iy;
                    acc[0] += prod[idx][0] * e;
                    acc[1] += prod[idx][1] * e;
                }
            }
            for r in 0..2 {
                worst = worst.max((acc[r] - expected[r]).norm() / coef_scale);
            }
        }
        assert!(worst < 1e-12, "relative deviation {worst}");
    }

    #[test]
    fn projected_advect_outputs_are_solenoidal_and_mean_zero() {
        let v = random_field(3, 2, 2, 1.0).unwrap();
        let w = random_field(4, 2, 2, 1.0).unwrap();
        let out = projected_advect(&v, &w).unwrap();
        let report = out.validate();
        assert!(report.max_divergence_residual < 1e-13);
        assert!(!report.zero_mode);
    }

    #[test]
    fn bilinearity() {
        let v1 = random_field(21, 2, 2, 1.0).unwrap();
        let v2 = random_field(22, 2, 2, 1.0).unwrap();
        let w = random_field(23, 2, 2, 1.0).unwrap();
        let lhs = projected_advect(&v1.scaled(2.0).add_scaled(&v2, -3.0), &w).unwrap();
        let rhs = projected_advect(&v1, &w)
            .unwrap()
            .scaled(2.0)
            .add_scaled(&projected_advect(&v2, &w).unwrap(), -3.0);
        let scale = rhs.max_coefficient().max(1e-300);
        assert!(lhs.sub(&rhs).max_coefficient() / scale < 1e-12);
    }

    #[test]
    fn energy_orthogonality() {
        // ⟨𝒬(v,w) | w⟩_{L²} = 0 for divergence-free v, w
        let v = random_field(31, 2, 3, 1.0).unwrap();
        let w = random_field(32, 2, 3, 1.0).unwrap();
        let q = projected_advect(&v, &w).unwrap();
        let ip = q.inner(&w, 0.0).unwrap();
        let scale = q.sobolev_norm(0.0) * w.sobolev_norm(0.0);
        assert!(ip.abs() < 1e-13 * scale.max(1e-300), "ip = {ip}");
    }

    #[test]
    fn mhd_slots_and_embeddings() {
        let d = 2;
        let m = 2;
        let v = random_field(41, d, m, 1.0).unwrap();
        let w = random_field(42, d, m, 1.0).unwrap();
        let b = random_field(43, d, m, 1.0).unwrap();
        let z = SpectralField::zero(d, m).unwrap();

        // NS embedding: ((v,0),(w,0)) -> (Q(v,w), 0)
        let p1 = mhd_advect(
            &FieldPair::new(v.clone(), z.clone()).unwrap(),
            &FieldPair::new(w.clone(), z.clone()).unwrap(),
        )
        .unwrap();
        let q = projected_advect(&v, &w).unwrap();
        assert!(p1.velocity().sub(&q).max_coefficient() < 1e-15);
        assert!(p1.magnetic().is_zero() || p1.magnetic().max_coefficient() < 1e-15);

        // magnetic-only state: ((0,b),(0,b)) -> (-Q(b,b), 0)
        let pb = FieldPair::new(z.clone(), b.clone()).unwrap();
        let p2 = mhd_advect(&pb, &pb).unwrap();
        let qbb = projected_advect(&b, &b).unwrap().scaled(-1.0);
        let scale = qbb.max_coefficient().max(1e-300);
        assert!(p2.velocity().sub(&qbb).max_coefficient() / scale < 1e-12);
        assert!(p2.magnetic().max_coefficient() < 1e-15 * scale.max(1.0));
    }

    #[test]
    fn mhd_energy_orthogonality() {
        let u = crate::spectral::random_pair(5, 2, 3, 1.0).unwrap();
        let q = mhd_advect(&u, &u).unwrap();
        let ip = q.inner(&u, 0.0).unwrap();
        let scale = q.sobolev_norm(0.0) * u.sobolev_norm(0.0);
        assert!(ip.abs() < 1e-13 * scale.max(1e-300));
    }
}
