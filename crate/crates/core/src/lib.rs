//! Bounded derivations from the disc algebra `A(𝔻)` into its dual.
//!
//! Every such derivation is `D_h(f)(g) = ∫_𝕋 u·h̄ dθ` for a symbol
//! `h ∈ H¹₀`, where `u(0) = 0` and `u' = f'g`. This crate evaluates these
//! forms on analytic polynomials, recovers symbols from black-box forms,
//! bounds operator norms, and builds an explicit control measure `μ_D` on the
//! closed disc with `‖D(f)‖ ≤ ‖f‖_{L²(μ_D)}`.

#![forbid(unsafe_code)]

pub mod bmoa;
pub mod circle;
pub mod derivation;
pub mod error;
mod fft;
pub mod hardy;
pub mod measure;
pub mod pietsch;
pub mod quadrature;
pub mod sampling;

pub use circle::{AnalyticPoly, BoundaryGrid};
pub use derivation::{DerivationForm, GramMatrix};
pub use error::{Error, Result};
pub use hardy::{SquareDecomposition, SymbolH1};
pub use measure::DiscMeasure;
pub use pietsch::PietschCertificate;
