//! Spectral toolkit for incompressible magnetohydrodynamics on the d-torus.
//!
//! What lives here:
//!
//! - [`spectral`] — truncated Fourier fields and pairs, Sobolev norms,
//!   Leray projection, fractional Laplacian.
//! - [`bilinear`] — the projected advection maps for the NS and MHD
//!   systems (exact direct convolution plus an FFT fast path that must
//!   agree with it), and the inequality-constants table they feed.
//! - [`integrate`] — integrating-factor RK4 for the Galerkin-truncated
//!   system d𝐮/dt = (νΔu, ηΔb) + 𝓑(𝐮,𝐮), trajectory recording, Galerkin
//!   residuals.
//! - [`certify`] — a-posteriori control machinery: solve the order-n
//!   Riccati inequality and order-p linear inequalities for bounds
//!   ‖𝐮(t) − 𝐮ₐ(t)‖ₚ ≤ Rₚ(t) valid up to a control horizon T_c.
//! - [`stability`] — global stability radius ρₙ, perturbation decay
//!   envelopes, small-data admissibility, decay diagnostics and budgets.
//! - [`beltrami`] — generalized Beltrami flows and pairs whose closed-form
//!   decaying solutions serve as exact oracles.
//!
//! Certificates are exact statements about the truncated (Galerkin) system;
//! for the untruncated equations they are heuristic in the cutoff M, which
//! has no continuum counterpart. Inequality constants are configuration
//! inputs (non-sharp defaults ship with the crate); see
//! [`bilinear::ConstantsTable`].

pub mod beltrami;
pub mod bilinear;
pub mod certify;
pub mod digest;
pub mod error;
pub mod integrate;
pub mod order;
pub mod quad;
pub mod spectral;
pub mod stability;

pub use error::{Error, ErrorClass, Result};
pub use order::OrderKey;
