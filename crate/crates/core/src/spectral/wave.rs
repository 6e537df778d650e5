//! Integer wavevectors on ℤᵈ.

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::fmt;

/// A wavevector k ∈ ℤᵈ. Inline storage up to d = 4; ordering is
/// lexicographic, which fixes the canonical half-space below.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WaveVector(SmallVec<[i32; 4]>);

impl WaveVector {
    pub fn new(components: &[i32]) -> Self {
        WaveVector(SmallVec::from_slice(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// |k|² as an exact integer.
    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|&c| (c as i64) * (c as i64)).sum()
    }

    /// |k|.
    pub fn modulus(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    /// |k|^p for real p (1 for the zero vector and p = 0).
    pub fn modulus_pow(&self, p: f64) -> f64 {
        (self.norm_sq() as f64).powf(0.5 * p)
    }

    /// max_i |k_i| — the cube radius used by the truncation geometry.
    pub fn sup_norm(&self) -> i32 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// A mode is canonical when its first nonzero component is positive;
    /// exactly one of {k, -k} is canonical for k ≠ 0.
    pub fn is_canonical(&self) -> bool {
        for &c in &self.0 {
            if c != 0 {
                return c > 0;
            }
        }
        false
    }

    pub fn negated(&self) -> WaveVector {
        WaveVector(self.0.iter().map(|&c| -c).collect())
    }

    pub fn add(&self, other: &WaveVector) -> WaveVector {
        debug_assert_eq!(self.dim(), other.dim());
        WaveVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() != d {
            return Err(Error::ModeDimension(self.0.to_vec(), self.dim(), d));
        }
        Ok(())
    }
}

impl fmt::Debug for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Iterator over the full mode cube {k : max_i |k_i| ≤ m} \ {0} in
/// lexicographic order, for runtime dimension d.
pub struct ModeCube {
    current: Option<SmallVec<[i32; 4]>>,
    m: i32,
}

impl ModeCube {
    pub fn new(d: usize, m: i32) -> Self {
        assert!(d >= 1 && m >= 0);
        ModeCube {
            current: Some(SmallVec::from_elem(-m, d)),
            m,
        }
    }
}

impl Iterator for ModeCube {
    type Item = WaveVector;

    fn next(&mut self) -> Option<WaveVector> {
        loop {
            let cur = self.current.as_mut()?;
            let item = WaveVector(cur.clone());
            // odometer increment, last axis fastest
            let mut i = cur.len();
            loop {
                if i == 0 {
                    self.current = None;
                    break;
                }
                i -= 1;
                if cur[i] < self.m {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = -self.m;
                    }
                    break;
                }
            }
            if !item.is_zero() {
                return Some(item);
            }
        }
    }
}

/// Canonical representatives in the cube, in sorted order.
pub fn canonical_modes(d: usize, m: i32) -> Vec<WaveVector> {
    ModeCube::new(d, m).filter(|k| k.is_canonical()).collect()
}
