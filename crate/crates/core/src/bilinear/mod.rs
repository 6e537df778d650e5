//! Advection bilinear maps for the NS/MHD systems and their inequality
//! constants.
//!
//! Two evaluation paths exist on purpose: [`direct`] computes the exact
//! convolution (the oracle, and the path whose output cutoff 2M makes the
//! Galerkin tail computable); [`PseudoSpectral`] is the padded-FFT fast
//! path, required to agree with the direct path to 1e−12.

pub mod direct;
mod constants;
mod estimate;
mod fft;

pub use constants::{ConstantsEntry, ConstantsTable};
pub use direct::{advect, mhd_advect, projected_advect};
pub use estimate::{audit_constants, estimate_constants, ConstantFloors, ConstantsAudit};
pub use fft::PseudoSpectral;
