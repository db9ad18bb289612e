//! Hermite function expansions, heat kernels and Riesz transforms for the
//! harmonic oscillator built on the `Z_2^d` Dunkl operators, with the
//! numerical checks that tie the closed forms to the spectral definitions.

// `!(a > b)` is used on purpose so that NaN takes the rejecting branch;
// tabulated quadrature constants keep their published digits.
#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::excessive_precision,
    clippy::needless_range_loop
)]

pub mod error;
pub mod estimates;
pub mod harness;
pub mod scalar;
pub mod heat;
pub mod hermite_basis;
pub mod poly_dunkl;
pub mod quadrature;
pub mod riesz;
pub mod special_fn;

pub use error::{Error, Result};
pub use scalar::{Coeff, Real};

/// Double-precision instantiations of the generic core.
pub type AlphaF64 = hermite_basis::AlphaParams<f64>;
pub type CoeffsF64 = quadrature::SpectralCoeffs<f64>;
pub type RuleF64 = quadrature::QuadratureRule<f64>;
pub type RieszKernelF64 = riesz::RieszKernel<f64>;
/// Single-precision instantiations.
pub type AlphaF32 = hermite_basis::AlphaParams<f32>;
pub type CoeffsF32 = quadrature::SpectralCoeffs<f32>;
/// Exact rational coefficients for the polynomial layer.
pub type Rational = num_rational::Ratio<i64>;
pub type PolynomialQ = poly_dunkl::Polynomial<Rational>;
