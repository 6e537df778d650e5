//! A-posteriori certificates for approximate MHD solutions.
//!
//! Given error and growth estimators of an approximate solution, the
//! order-n Riccati control inequality bounds the Sobolev distance to the
//! exact solution up to a horizon T_c (T_c = +∞ certifies globality), and
//! linear order-p inequalities propagate the bound to higher orders. The
//! solved functions are the minimal admissible ones: equality solutions of
//! the control inequalities.

mod estimators;
mod linear;
mod pipeline;
mod riccati;

pub use estimators::EstimatorSet;
pub use linear::linear_bound;
pub use pipeline::{certify, tautological_estimators, Certificate, CertifyOptions, DifferentialError};
pub use riccati::{riccati_certify, riccati_closed_form, ClosedFormSolution, Horizon, RiccatiSolution};
